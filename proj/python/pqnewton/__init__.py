"""Inexact Newton projection onto {x >= 0 : Ax = b} and polyhedra distances."""

import json

from ._pqnewton import (
    MatrixMarketError,
    SparseMatrix,
    feasible_rhs,
    read_matrix_market,
    read_vector,
)
from . import _pqnewton

__all__ = [
    "MatrixMarketError",
    "SparseMatrix",
    "feasible_rhs",
    "polyhedra_distance",
    "project",
    "read_matrix_market",
    "read_vector",
]


def project(a, b, xhat=None, **config):
    """Projects xhat (default 0) onto {x >= 0 : A x = b}.

    Keyword arguments override solver settings (delta, eps, tau, eps_cg,
    k_max, l_max, it_max, stop_rule). Returns the run record as a dict with
    the solution under "x".
    """
    text = _pqnewton._project(a, list(b), [] if xhat is None else list(xhat),
                              json.dumps(config) if config else "")
    return json.loads(text)


def polyhedra_distance(n, epsilon=1e-4):
    """Distance between the quasirandom test polyhedra with n faces in total."""
    return json.loads(_pqnewton._distance(n, epsilon))
