"""Integer polynomial families with close roots: construction, exact identity checks,
certified root separations, and irreducibility certificates."""

__version__ = "0.1.0"
