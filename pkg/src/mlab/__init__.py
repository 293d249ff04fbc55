"""Numerical laboratory for Lp -> Lq Fourier multiplier operators.

Modules: ``spaces`` (finite vector models), ``signal`` (grids, transforms,
norms, witnesses), ``symbols`` (symbol library and symbol-side conditions),
``multiplier`` (torus and line multiplier actions), ``probes`` (norm and
family-bound estimators), ``schur`` (Schatten-class Schur multipliers), and
``lab`` (experiments, reports, CLI backend).
"""

from . import lab, multiplier, probes, schur, signal, spaces, symbols

__all__ = ["lab", "multiplier", "probes", "schur", "signal", "spaces", "symbols"]
__version__ = "0.1.0"
