"""dimforce: metric dimension, zero forcing and path cover of small graphs."""

__version__ = "0.1.0"
