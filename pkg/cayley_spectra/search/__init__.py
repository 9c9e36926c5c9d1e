"""Enumeration, list reproduction and bundle constructions for cayley-spectra."""
