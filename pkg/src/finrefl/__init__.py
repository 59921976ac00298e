"""Finite-category engine for building and verifying reflections."""
