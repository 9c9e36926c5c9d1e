"""Brute-force verification oracle for cayley-spectra."""
