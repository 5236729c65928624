"""relhyp: combinatorial and metric checks for relative hyperbolicity."""

__version__ = "0.3.0"
