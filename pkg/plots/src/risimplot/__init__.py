"""Static-figure rendering for the simulator's CSV artifacts."""

__version__ = "0.1.0"
