"""Closed-form spectra package for cayley-spectra."""
