"""
Shared utilities package for cayley-spectra.
"""
