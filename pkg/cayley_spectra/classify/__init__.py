"""Classification predicates and theorem checks for cayley-spectra."""
