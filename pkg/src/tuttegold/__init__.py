"""Tutte relations, golden identities and Temperley-Lieb calculus for cubic graphs."""
