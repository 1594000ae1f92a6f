"""Cochain complexes of Leibniz algebras and of n-Lie algebras.

Leibniz cochains ``CL^p(L, M) = Hom(L^{⊗p}, M)`` are flat vectors indexed by
``(a_1, …, a_p, t)`` row-major, ``a_i`` basis indices of ``L`` and ``t`` a
coordinate of ``M``.  The coboundary is

    d ω(x_1..x_{p+1}) = sum_{i<=p} (-1)^{i+1} [x_i, ω(..^x_i..)]_L
                        + (-1)^{p+1} [ω(x_1..x_p), x_{p+1}]_R
                        + sum_{i<j} (-1)^i ω(..^x_i.., x_i∘x_j, ..).

For an n-Lie algebra ``g`` with representation ``V`` the degree-``p`` cochains
are ``Hom((∧^{n-1} g)^{⊗(p-1)} ⊗ g, V)``: ``p-1`` wedge blocks, a trailing
``g`` slot, values in ``V``.  Degree 1 is ``Hom(g, V)``.  ``delta_p`` maps
degree ``p`` to degree ``p+1`` and is assembled either from its explicit
formula or as the Leibniz coboundary with coefficients in ``Hom(g, V)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from .exactlinalg import Matrix, rank
from .multilinear import (
    BlockCochain,
    CochainSpace,
    LinVec,
    SkewTensor,
    lf_add,
    lf_apply,
    lf_zero,
    sparse_add,
    sparse_apply,
    sparse_to_vector,
    wedge_basis,
    wedge_position,
)
from .nlie_core import LeibnizAlgebra, fundamental_leibniz
from .representations import LeibnizModule, Representation, hom_module
from .reports import Report

__all__ = [
    "CoboundaryMatrix",
    "CohomologyDims",
    "cochain_space",
    "cohomology_dim",
    "currying_permutation",
    "is_two_cocycle",
    "leibniz_coboundary",
    "leibniz_cochain_dim",
    "nlie_coboundary",
    "skew_embedding",
    "skew_two_cochain_space",
]


@dataclass
class CoboundaryMatrix:
    """Matrix of a coboundary map together with its source and target degrees."""

    degree: int
    matrix: Matrix
    source_dim: int
    target_dim: int


@dataclass
class CohomologyDims:
    degree: int
    cochains: int
    cocycles: int
    coboundaries: int

    @property
    def cohomology(self) -> int:
        return self.cocycles - self.coboundaries

    def as_row(self) -> Tuple[int, int, int, int, int]:
        return (self.degree, self.cochains, self.cocycles, self.coboundaries, self.cohomology)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# -- Leibniz complex --------------------------------------------------------

def leibniz_cochain_dim(alg: LeibnizAlgebra, module_dim: int, p: int) -> int:
    return alg.dim ** p * module_dim


def leibniz_coboundary(alg: LeibnizAlgebra, module: LeibnizModule, p: int) -> CoboundaryMatrix:
    """Matrix of ``d_p : CL^p(L, M) -> CL^{p+1}(L, M)``."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    N, d = alg.dim, module.dim
    P = p + 1

    def idx(args: Sequence[int]) -> int:
        k = 0
        for a in args:
            k = k * N + a
        return k * d

    def unit(args: Sequence[int]) -> LinVec:
        base = idx(args)
        return [{base + t: 1} for t in range(d)]

    rows: List[Dict[int, object]] = []
    for xs in itertools.product(range(N), repeat=P):
        acc = lf_zero(d)
        for i in range(P - 1):  # 0-based i, sign (-1)^{(i+1)+1}
            rest = xs[:i] + xs[i + 1:]
            lf_add(acc, lf_apply(module.left[xs[i]], unit(rest)), _sign(i))
        lf_add(acc, lf_apply(module.right[xs[-1]], unit(xs[:-1])), _sign(P))
        for i in range(P):
            for j in range(i + 1, P):
                for k, c in alg.circ(xs[i], xs[j]).items():
                    args = list(xs)
                    args[j] = k
                    del args[i]
                    lf_add(acc, unit(args), c * _sign(i + 1))
        rows.extend(acc)
    m = Matrix.from_sparse(N ** P * d, N ** p * d, rows)
    return CoboundaryMatrix(p, m, N ** p * d, N ** P * d)


# -- n-Lie complex ------------------------------------------------------------

def cochain_space(r: Representation, p: int) -> CochainSpace:
    """Degree-``p`` cochains: ``p-1`` wedge blocks, one trailing g-slot, values in V."""
    if p < 1:
        raise ValueError("n-Lie cochain degrees start at 1")
    a = r.algebra
    return CochainSpace(a.dim, a.n - 1, p - 1, (a.dim,), r.module_dim)


def skew_two_cochain_space(r: Representation) -> CochainSpace:
    """Totally skew 2-cochains ``Hom(∧^n g, V)``, stored as a single wedge block."""
    a = r.algebra
    return CochainSpace(a.dim, a.n, 1, (), r.module_dim)


def skew_embedding(dim: int, n: int, target_dim: int) -> Matrix:
    """Inclusion of ``Hom(∧^n g, V)`` into ``Hom(∧^{n-1} g ⊗ g, V)``."""
    src = CochainSpace(dim, n, 1, (), target_dim)
    tgt = CochainSpace(dim, n - 1, 1, (dim,), target_dim)
    rows = [dict() for _ in range(tgt.size)]
    for (X,), (z,) in tgt.argument_tuples():
        sign, base = src.locate([X + (z,)], ())
        if sign == 0:
            continue
        _, tbase = tgt.locate([X], (z,))
        for t in range(target_dim):
            rows[tbase + t][base + t] = sign
    return Matrix.from_sparse(tgt.size, src.size, rows)


def currying_permutation(r: Representation, p: int) -> List[int]:
    """Position in the Leibniz ordering of every degree-``p`` n-Lie cochain coordinate.

    n-Lie order is ``(blocks, z, a)``; the Leibniz order on ``Hom(g, V)``
    coefficients is ``(blocks, a, z)``.
    """
    dg, dv = r.algebra.dim, r.module_dim
    space = cochain_space(r, p)
    perm = []
    for k in range(space.size):
        rest, within = divmod(k, dg * dv)
        z, av = divmod(within, dv)
        perm.append(rest * dg * dv + av * dg + z)
    return perm


def _direct_coboundary(r: Representation, p: int) -> Matrix:
    a = r.algebra
    n = a.n
    L = fundamental_leibniz(a, check=False)
    labels = L.labels
    pos = wedge_position(a.dim, n - 1)
    src = cochain_space(r, p)
    tgt = cochain_space(r, p + 1)
    dv = r.module_dim
    rows: List[Dict[int, object]] = []
    for Xs, (z,) in tgt.argument_tuples():
        acc = lf_zero(dv)
        # sum_i (-1)^i ω(..^X_i.., [X_i, z])
        for i in range(p):
            rest = Xs[:i] + Xs[i + 1:]
            for k, c in a.bracket_basis(Xs[i] + (z,)).items():
                src.symbolic_into(acc, rest, (k,), c * _sign(i + 1))
        # sum_i (-1)^{i+1} rho(X_i) ω(..^X_i.., z)
        for i in range(p):
            rest = Xs[:i] + Xs[i + 1:]
            m = r.of(Xs[i])
            if not m.is_zero():
                lf_add(acc, lf_apply(m, src.symbolic(rest, (z,))), _sign(i))
        # sum_{i<n} (-1)^{n+p-i+1} rho(x^p_1..^x^p_i..x^p_{n-1}, z) ω(X_1..X_{p-1}, x^p_i)
        Xp = Xs[-1]
        for i in range(n - 1):
            m = r.of(Xp[:i] + Xp[i + 1:] + (z,))
            if not m.is_zero():
                lf_add(acc, lf_apply(m, src.symbolic(Xs[:-1], (Xp[i],))), _sign(n + p - (i + 1) + 1))
        # sum_{i<j} (-1)^i ω(..^X_i.., X_i∘X_j, .., z)
        for i in range(p):
            for j in range(i + 1, p):
                for k, c in L.circ(pos[Xs[i]], pos[Xs[j]]).items():
                    args = list(Xs)
                    args[j] = labels[k]
                    del args[i]
                    src.symbolic_into(acc, args, (z,), c * _sign(i + 1))
        rows.extend(acc)
    return Matrix.from_sparse(tgt.size, src.size, rows)


def _leibniz_assembled(r: Representation, p: int) -> Matrix:
    mod = hom_module(r)
    d = leibniz_coboundary(mod.algebra, mod, p - 1).matrix
    col_perm = currying_permutation(r, p)
    row_perm = currying_permutation(r, p + 1)
    # entry (row_perm[i], col_perm[j]) of d is entry (i, j) of the n-Lie matrix
    inv_rows = {v: k for k, v in enumerate(row_perm)}
    inv_cols = {v: k for k, v in enumerate(col_perm)}
    data = [dict() for _ in range(d.rows)]
    for i, j, x in d.iter_nonzero():
        data[inv_rows[i]][inv_cols[j]] = x
    return Matrix.from_sparse(d.rows, d.cols, data)


def nlie_coboundary(r: Representation, p: int, method: str = "direct") -> CoboundaryMatrix:
    """Matrix of ``delta_p`` from degree ``p`` to degree ``p+1`` cochains.

    ``method="direct"`` uses the explicit four-sum formula; ``method="leibniz"``
    assembles the Leibniz coboundary with ``Hom(g, V)`` coefficients and
    reorders coordinates.  Both give the same matrix.
    """
    if p < 1:
        raise ValueError("n-Lie coboundaries start in degree 1")
    if method == "direct":
        m = _direct_coboundary(r, p)
    elif method == "leibniz":
        m = _leibniz_assembled(r, p)
    else:
        raise ValueError("method must be 'direct' or 'leibniz'")
    return CoboundaryMatrix(p, m, m.cols, m.rows)


def _as_block_cochain(r: Representation, omega) -> BlockCochain:
    a = r.algebra
    if isinstance(omega, BlockCochain):
        if omega.space != cochain_space(r, 2):
            raise ValueError("cochain does not have the degree-2 shape")
        return omega
    if isinstance(omega, SkewTensor):
        if (omega.arity, omega.dim, omega.target_dim) != (a.n, a.dim, r.module_dim):
            raise ValueError("skew cochain has the wrong shape")
        return BlockCochain.from_function(
            cochain_space(r, 2), lambda bl, tr: omega.evaluate_sparse(bl[0] + tr))
    raise TypeError("expected a SkewTensor or BlockCochain")


def is_two_cocycle(r: Representation, omega: Union[SkewTensor, BlockCochain]) -> Report:
    """Residual of the 2-cocycle identity on all basis tuples.

    ``ω(x, [y]) + rho(x) ω(y) - sum_i ω(y_1..[x, y_i]..y_n)
    - sum_i (-1)^{n-i} rho(y_1..^y_i..y_n) ω(x, y_i)``, where ``ω(a_1..a_n)``
    reads the first ``n-1`` arguments as the wedge block.
    """
    a = r.algebra
    n, dv = a.n, r.module_dim
    w = _as_block_cochain(r, omega)
    rep = Report("n-Lie 2-cocycle")
    chk = rep.check("2-cocycle identity")

    def ev(args) -> dict:
        return w.evaluate_sparse((tuple(args[:-1]),), (args[-1],))

    for x in wedge_basis(a.dim, n - 1):
        rx = r.of(x)
        for yb in wedge_basis(a.dim, n - 1):
            for yn in range(a.dim):
                y = yb + (yn,)
                res: dict = {}
                for k, c in a.bracket_basis(y).items():
                    sparse_add(res, ev(x + (k,)), c)
                sparse_add(res, sparse_apply(rx, ev(y)))
                for i in range(n):
                    for k, c in a.bracket_basis(x + (y[i],)).items():
                        args = list(y)
                        args[i] = k
                        sparse_add(res, ev(args), -c)
                    yhat = y[:i] + y[i + 1:]
                    sparse_add(res, sparse_apply(r.of(yhat), ev(x + (y[i],))), -_sign(n - i - 1))
                chk.record((x, y), sparse_to_vector(res, dv))
    return rep


def cohomology_dim(r: Representation, p: int, skew: bool = False) -> CohomologyDims:
    """Dimensions of cochains, cocycles and coboundaries in degree ``p``.

    With ``skew=True`` and ``p == 2`` the cochains are the totally skew maps
    ``Hom(∧^n g, V)`` rather than the ambient block space.
    """
    if p < 1:
        raise ValueError("n-Lie cochain degrees start at 1")
    d_p = nlie_coboundary(r, p).matrix
    if skew:
        if p != 2:
            raise ValueError("the skew subspace is only defined in degree 2")
        E = skew_embedding(r.algebra.dim, r.algebra.n, r.module_dim)
        d_p = d_p @ E
    cochains = d_p.cols
    cocycles = cochains - rank(d_p)
    coboundaries = 0 if p == 1 else rank(nlie_coboundary(r, p - 1).matrix)
    return CohomologyDims(p, cochains, cocycles, coboundaries)
