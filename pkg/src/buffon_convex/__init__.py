"""Buffon needle probabilities for convex planar bodies."""
