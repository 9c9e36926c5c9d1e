"""Command-line front end for cayley-spectra."""
