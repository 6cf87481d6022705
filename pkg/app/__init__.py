"""clausetrim application package."""
