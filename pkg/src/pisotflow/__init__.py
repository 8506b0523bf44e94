"""Exact spectral data of linear flows in Pisot pseudo-Anosov directions.

Subpackages cover exact number-field arithmetic, exact linear algebra,
flat-surface models, interval exchange maps and Rauzy induction,
substitution spectra, the pseudo-Anosov eigenvalue-group pipeline, and
raster output for eigenfunctions and torus semiconjugacies.
"""

__version__ = "0.1.0"
