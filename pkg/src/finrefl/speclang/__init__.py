"""Text format for categories, functors and reflection data, with its CLI."""
