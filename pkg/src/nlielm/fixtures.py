"""Small named algebras and LM structures used by the tests, the CLI and the docs."""

from __future__ import annotations

from .exactlinalg import Matrix
from .lm_core import LMAlgebra
from .lm_representations import LMRepresentation, trivial_lm_representation
from .nlie_core import NLieAlgebra
from .representations import trivial_representation

__all__ = [
    "a4",
    "h4",
    "so3",
    "heisenberg_lm",
    "heisenberg_lm_target",
    "NAMED_ALGEBRAS",
]


def so3() -> NLieAlgebra:
    """``[e1, e2] = e3``, ``[e2, e3] = e1``, ``[e3, e1] = e2``."""
    return NLieAlgebra(2, 3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}, "so3")


def a4() -> NLieAlgebra:
    """Simple 3-Lie algebra of dimension 4: ``[e_j, e_k, e_l] = ±e_i`` on complements."""
    return NLieAlgebra(3, 4, {
        (0, 1, 2): {3: 1},
        (0, 1, 3): {2: -1},
        (0, 2, 3): {1: 1},
        (1, 2, 3): {0: -1},
    }, "A4")


def h4() -> NLieAlgebra:
    """Nilpotent 3-Lie algebra ``[e1, e2, e3] = e4``."""
    return NLieAlgebra(3, 4, {(0, 1, 2): {3: 1}}, "h4")


NAMED_ALGEBRAS = {
    "so3": so3,
    "A4": a4,
    "h4": h4,
}


def heisenberg_lm() -> LMAlgebra:
    """``g = h4``, ``M`` one-dimensional with zero action and ``f(m) = e4``."""
    g = h4()
    f = Matrix.from_rows([[0], [0], [0], [1]], 1)
    return LMAlgebra(trivial_representation(g, 1), f, "h4 with central M")


def heisenberg_lm_target(a: LMAlgebra) -> LMRepresentation:
    """One-dimensional ``V = W`` with zero actions, ``phi = id`` and ``rho3 = 0``."""
    return trivial_lm_representation(a, 1, 1, Matrix.identity(1))
