"""Output formatting, SVG rendering and experiment batteries."""
