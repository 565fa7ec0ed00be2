"""Compiled kernels.  Built from ``*.pyx`` by setup.py when Cython is present."""
