"""Exact Kac-Schwarz operators, admissible bases and tau-functions.

Coefficients live in Q(q^(1/2))[T] localized at the q-integers (1 - q^k);
see :mod:`kslab.coeff`.  The main entry points are :mod:`kslab.models`
(bases and operator pairs), :mod:`kslab.kacschwarz` (checks),
:mod:`kslab.boson`, :mod:`kslab.fermion`, :mod:`kslab.grassmann` and
:mod:`kslab.oracle`.
"""

from .coeff import Scalar, parse_scalar
from .kacschwarz import CheckReport, run_suite
from .laurent import ZSeries
from .models import ModelId, build_basis, build_ks, build_phi, parse_model
from .partitions import Partition
from .qtorus import TorusOp, parse_op

__version__ = "0.1.0"

__all__ = [
    "Scalar",
    "parse_scalar",
    "ZSeries",
    "TorusOp",
    "parse_op",
    "ModelId",
    "parse_model",
    "build_phi",
    "build_basis",
    "build_ks",
    "CheckReport",
    "run_suite",
    "Partition",
]
