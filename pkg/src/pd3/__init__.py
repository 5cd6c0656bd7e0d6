"""Decision and realization tools for PD3-complexes whose fundamental group is a graph of finite groups."""

__version__ = "0.1.0"
