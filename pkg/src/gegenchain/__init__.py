"""Metrics of the Gegenbauer-solvable non-Hermitian chain model."""

from .chain import build_hamiltonian, build_hermitian_partner, build_omega0
from .dieudonne import residual, solve_banded, spectral_pseudometric
from .gegenbauer import DomainError, gegenbauer_eval, gegenbauer_zeros
from .metrics import assemble_metric, p1, p2, p_longrange_n4, p_longrange_n8, theta0
from .positivity import boundary, eigencurves, is_positive_metric

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "assemble_metric",
    "boundary",
    "build_hamiltonian",
    "build_hermitian_partner",
    "build_omega0",
    "eigencurves",
    "gegenbauer_eval",
    "gegenbauer_zeros",
    "is_positive_metric",
    "p1",
    "p2",
    "p_longrange_n4",
    "p_longrange_n8",
    "residual",
    "solve_banded",
    "spectral_pseudometric",
    "theta0",
]
