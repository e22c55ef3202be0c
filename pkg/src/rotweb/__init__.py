"""Exact classification of rotationally symmetric R-separable webs of flat
3-space via conformal Killing tensors and binary quartic invariants."""

__version__ = "0.1.0"
