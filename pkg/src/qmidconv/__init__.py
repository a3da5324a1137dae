"""Numerics for q-convolution and q-middle convolution of linear q-difference systems.

The modules build on each other: :mod:`qseries` (q-Pochhammer, theta,
basic hypergeometric series), :mod:`qlinalg` (small dense complex linear
algebra), :mod:`qsystems` (systems, scalar equations, residuals),
:mod:`convolution` (the convolved tuple and its quotient), :mod:`jackson`
(Jackson integral solutions) and :mod:`catalog` (closed forms and the
verification registry).
"""

from .convolution import ConvolutionResult, SubspaceReport, convolve, middle_convolve, subspaces
from .errors import QMCError
from .qseries import BranchPolicy, QContext
from .qsystems import Gate, Poly, PowerTerm, ScalarQDE, SolutionFn, SystemSpec, ThetaTerm

__version__ = "0.1.0"
