"""Symbolic ring model package for cayley-spectra."""
