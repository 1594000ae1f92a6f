"""Abelian extensions of n-Lie algebras in LM.

An extension is a pair of short exact sequences

    0 -> V --i1--> M^ --p1--> M -> 0
    0 -> W --i0--> g^ --p0--> g -> 0

intertwined by ``phi``, ``f^`` and ``f``, where ``(p0, p1)`` is a morphism of
LM algebras and the kernel ``(V, W, phi)`` is abelian.  All maps are stored as
explicit matrices, so extensions need not be in block form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exactlinalg import Matrix, rank
from .lm_cohomology import (
    LMCochain,
    _skew_inclusion,
    is_lm_two_cocycle,
    lm_coboundary,
    lm_cochain_spaces,
)
from .lm_core import LMAlgebra, LMMorphism, validate_lm, validate_lm_morphism
from .lm_representations import LMRepresentation, twisted_semidirect, validate_lm_representation
from .multilinear import BlockCochain, Sparse, expand, sparse_add, sparse_apply, sparse_to_vector, wedge_basis
from .nlie_core import ValidationError
from .reports import Report
from .representations import Representation

__all__ = [
    "AbelianExtension",
    "EquivalenceResult",
    "Section",
    "canonical_section",
    "cocycle_from_extension",
    "extension_equivalence",
    "extension_from_cocycle",
    "rep_from_extension",
    "validate_extension",
]


@dataclass
class Section:
    sigma0: Matrix  # g -> g^
    sigma1: Matrix  # M -> M^


@dataclass
class AbelianExtension:
    base: LMAlgebra
    total: LMAlgebra
    i0: Matrix  # W -> g^
    i1: Matrix  # V -> M^
    p0: Matrix  # g^ -> g
    p1: Matrix  # M^ -> M
    phi: Matrix  # V -> W

    @property
    def W_dim(self) -> int:
        return self.i0.cols

    @property
    def V_dim(self) -> int:
        return self.i1.cols


# -- helpers -------------------------------------------------------------------

def _col(m: Matrix, j: int) -> Sparse:
    return {i: x for i, x in enumerate(m.column(j)) if x}


def _act(rep: Representation, args: Sequence[Sparse]) -> Matrix:
    """``rep(a_1..a_{n-1})`` for general elements, by multilinearity."""
    out = Matrix.zeros(rep.module_dim, rep.module_dim)
    for idx, c in expand(args):
        out = out + rep.of(idx).scale(c)
    return out


def _left_inverse(i: Matrix) -> Matrix:
    """Some ``L`` with ``L i = id`` for an injective ``i``."""
    it = i.transpose()
    gram = it @ i
    cols = []
    for j in range(gram.rows):
        e = [0] * gram.rows
        e[j] = 1
        x = gram.solve(e)
        if x is None:
            raise ValueError("map is not injective")
        cols.append(x)
    return Matrix.from_columns(cols, gram.rows) @ it


def _kernel_coords(i: Matrix, vec: Sparse, what: str) -> Sparse:
    x = i.solve(sparse_to_vector(vec, i.rows))
    if x is None:
        raise ValueError(f"value does not lie in the kernel {what}")
    return {k: c for k, c in enumerate(x) if c}


def _right_inverse(p: Matrix) -> Matrix:
    cols = []
    for j in range(p.rows):
        e = [0] * p.rows
        e[j] = 1
        x = p.solve(e)
        if x is None:
            raise ValueError("projection is not surjective")
        cols.append(x)
    return Matrix.from_columns(cols, p.cols)


# -- validation ----------------------------------------------------------------

def validate_extension(e: AbelianExtension) -> Report:
    """Exactness, commuting squares, ``p`` an LM morphism and an abelian kernel."""
    a, t = e.base, e.total
    rep = Report("abelian extension")
    rep.extend(validate_lm(t, full=True), "total ")
    shapes = (
        e.i0.shape == (t.g.dim, e.W_dim), e.p0.shape == (a.g.dim, t.g.dim),
        e.i1.shape == (t.M_dim, e.V_dim), e.p1.shape == (a.M_dim, t.M_dim),
        e.phi.shape == (e.W_dim, e.V_dim),
    )
    if not all(shapes):
        raise ValueError("extension matrices have inconsistent shapes")
    chk = rep.check("exact rows")
    for i, p, label in ((e.i0, e.p0, "g"), (e.i1, e.p1, "M")):
        comp = p @ i
        ok = comp.is_zero() and rank(i) == i.cols and rank(p) == p.rows and i.cols + p.rows == i.rows
        chk.record((), (0,) if ok else (1,))
    chk = rep.check("squares commute")
    d1 = t.f @ e.i1 - e.i0 @ e.phi
    d2 = a.f @ e.p1 - e.p0 @ t.f
    for j in range(d1.cols):
        chk.record((j,), d1.column(j))
    for j in range(d2.cols):
        chk.record((j,), d2.column(j))
    rep.extend(validate_lm_morphism(LMMorphism(e.p0, e.p1), t, a), "projection ")
    _abelian_kernel(e, rep)
    return rep


def _abelian_kernel(e: AbelianExtension, rep: Report) -> None:
    t = e.total
    n, dG, dMh = t.n, t.g.dim, t.M_dim
    ws = [_col(e.i0, j) for j in range(e.W_dim)]
    vs = [_col(e.i1, j) for j in range(e.V_dim)]
    basis = [{k: 1} for k in range(dG)]
    chk = rep.check("kernel bracket vanishes")
    for j, k in itertools.combinations_with_replacement(range(e.W_dim), 2):
        for rest in itertools.combinations(range(dG), n - 2):
            val = t.g.tensor.apply([basis[x] for x in rest] + [ws[j], ws[k]])
            chk.record((rest, j, k), sparse_to_vector(val, dG))
    chk = rep.check("kernel acts trivially")
    for j in range(e.W_dim):
        for rest in itertools.combinations(range(dG), n - 2):
            mat = _act(t.rho, [basis[x] for x in rest] + [ws[j]])
            for u, v in enumerate(vs):
                chk.record((rest, j, u), sparse_to_vector(sparse_apply(mat, v), dMh))
            if n >= 3:
                for k in range(e.W_dim):
                    for rest2 in itertools.combinations(range(dG), n - 3):
                        mat2 = _act(t.rho, [basis[x] for x in rest2] + [ws[j], ws[k]])
                        for col in range(dMh):
                            chk.record((rest2, j, k, col), mat2.column(col))


def _require(rep: Report) -> None:
    if not rep.passed:
        raise ValidationError(rep)


def canonical_section(e: AbelianExtension) -> Section:
    """A section of both projections; for block-form extensions the summand inclusions."""
    return Section(_right_inverse(e.p0), _right_inverse(e.p1))


def _check_section(e: AbelianExtension, s: Section) -> None:
    if not (e.p0 @ s.sigma0 == Matrix.identity(e.base.g.dim) and
            e.p1 @ s.sigma1 == Matrix.identity(e.base.M_dim)):
        raise ValueError("not a section of the projections")


# -- representation and cocycle -------------------------------------------------

def rep_from_extension(e: AbelianExtension, s: Optional[Section] = None,
                       check: bool = True) -> LMRepresentation:
    """``rho1(x) v = rho^(s0 x) v``, ``rho2(x) w = [s0 x, w]``,
    ``rho3(x, m) w = -rho^(s0 x_1..s0 x_{n-2}, w)(s1 m)``."""
    if check:
        _require(validate_extension(e))
    s = s or canonical_section(e)
    _check_section(e, s)
    a, t = e.base, e.total
    g, n = a.g, a.n
    sig = [_col(s.sigma0, j) for j in range(g.dim)]
    ws = [_col(e.i0, j) for j in range(e.W_dim)]
    rho1, rho2, rho3 = {}, {}, {}
    for X in wedge_basis(g.dim, n - 1):
        act = _act(t.rho, [sig[x] for x in X])
        cols = [_kernel_coords(e.i1, sparse_apply(act, _col(e.i1, u)), "V") for u in range(e.V_dim)]
        rho1[X] = Matrix.from_columns([sparse_to_vector(c, e.V_dim) for c in cols], e.V_dim)
        cols = []
        for w in ws:
            val = t.g.tensor.apply([sig[x] for x in X] + [w])
            cols.append(sparse_to_vector(_kernel_coords(e.i0, val, "W"), e.W_dim))
        rho2[X] = Matrix.from_columns(cols, e.W_dim)
    for x in wedge_basis(g.dim, n - 2):
        for m in range(a.M_dim):
            sm = _col(s.sigma1, m)
            cols = []
            for w in ws:
                act = _act(t.rho, [sig[i] for i in x] + [w])
                val = {k: -c for k, c in sparse_apply(act, sm).items()}
                cols.append(sparse_to_vector(_kernel_coords(e.i1, val, "V"), e.V_dim))
            mat = Matrix.from_columns(cols, e.V_dim)
            if not mat.is_zero():
                rho3[(x, m)] = mat
    return LMRepresentation(a, Representation(g, e.V_dim, rho1, "rho1"), Representation(g, e.W_dim, rho2, "rho2"),
                            e.phi, rho3, "from extension")


def cocycle_from_extension(e: AbelianExtension, s: Optional[Section] = None,
                           r: Optional[LMRepresentation] = None, check: bool = True) -> LMCochain:
    """``theta = f^ s1 - s0 f``, ``omega = [s0 .] - s0 [.]``, ``nu = rho^(s0 .)(s1 m) - s1 rho(.) m``."""
    if check:
        _require(validate_extension(e))
    s = s or canonical_section(e)
    _check_section(e, s)
    r = r or rep_from_extension(e, s, check=False)
    a, t = e.base, e.total
    g = a.g
    sig = [_col(s.sigma0, j) for j in range(g.dim)]
    so, sn, st = lm_cochain_spaces(a, r, 2)

    def omega(bl, tr):
        x = bl[0]
        val = t.g.tensor.apply([sig[i] for i in x])
        sparse_add(val, sparse_apply(s.sigma0, g.bracket_basis(x)), -1)
        return _kernel_coords(e.i0, val, "W")

    def nu(bl, tr):
        X, m = bl[0], tr[0]
        val = sparse_apply(_act(t.rho, [sig[i] for i in X]), _col(s.sigma1, m))
        sparse_add(val, sparse_apply(s.sigma1, _col(a.rho.of(X), m)), -1)
        return _kernel_coords(e.i1, val, "V")

    def theta(bl, tr):
        m = tr[0]
        val = sparse_apply(t.f, _col(s.sigma1, m))
        sparse_add(val, sparse_apply(s.sigma0, _col(a.f, m)), -1)
        return _kernel_coords(e.i0, val, "W")

    return LMCochain(2, BlockCochain.from_function(so, omega), BlockCochain.from_function(sn, nu),
                     BlockCochain.from_function(st, theta))


def extension_from_cocycle(a: LMAlgebra, r: LMRepresentation, c: LMCochain,
                           check: bool = True) -> AbelianExtension:
    """The extension on ``(M ⊕ V, g ⊕ W)`` twisted by the 2-cocycle ``c``.

    ``f^(m + v) = f(m) + theta(m) + phi(v)``, ``omega`` shifts the bracket of
    ``g`` and ``nu`` shifts the action of ``g`` on ``M``.
    """
    if check:
        _require(validate_lm(a, full=True))
        _require(validate_lm_representation(r, a, full=True))
        _require(is_lm_two_cocycle(a, r, c))
    dg, dw, dm, dv = a.g.dim, r.W_dim, a.M_dim, r.V_dim
    theta = Matrix.from_columns([c.theta.evaluate((), (m,)) for m in range(dm)], dw)
    total = twisted_semidirect(
        a, r,
        omega=lambda x: c.omega.evaluate_sparse((x,)),
        nu=lambda X, m: c.nu.evaluate_sparse((X,), (m,)),
        theta=theta, name=f"extension of {a.name}".strip())
    i0 = Matrix.vstack([Matrix.zeros(dg, dw), Matrix.identity(dw)])
    i1 = Matrix.vstack([Matrix.zeros(dm, dv), Matrix.identity(dv)])
    p0 = Matrix.hstack([Matrix.identity(dg), Matrix.zeros(dg, dw)])
    p1 = Matrix.hstack([Matrix.identity(dm), Matrix.zeros(dm, dv)])
    return AbelianExtension(a, total, i0, i1, p0, p1, r.phi)


# -- equivalence -----------------------------------------------------------------

@dataclass
class EquivalenceResult:
    equivalent: bool
    morphism: Optional[LMMorphism] = None
    b0: Optional[Matrix] = None
    b1: Optional[Matrix] = None
    report: Report = field(default_factory=lambda: Report("extension equivalence"))


def extension_equivalence(e: AbelianExtension, e2: AbelianExtension) -> EquivalenceResult:
    """Decide equivalence by solving ``c - c' = D_1(b0, b1)`` exactly.

    On success ``F0 = s0' p0 + i0' b0 p0 + i0' k0`` and similarly ``F1``,
    where ``k0`` reads the kernel part of an element relative to the section;
    in block form this is ``F0(x + w) = x + b0(x) + w``.
    """
    if e.base != e2.base or e.W_dim != e2.W_dim or e.V_dim != e2.V_dim:
        raise ValueError("extensions are not over the same base and kernel")
    a = e.base
    rep = Report("extension equivalence")
    s, s2 = canonical_section(e), canonical_section(e2)
    r = rep_from_extension(e, s)
    r2 = rep_from_extension(e2, s2)
    same = Report("representations agree")
    chk = same.check("induced representations agree")
    chk.record((), (0,) if _same_rep(r, r2) else (1,))
    rep.extend(same)
    if not chk.passed:
        rep.notes.append("the extensions induce different representations")
        return EquivalenceResult(False, report=rep)
    c = cocycle_from_extension(e, s, r, check=False)
    c2 = cocycle_from_extension(e2, s2, r, check=False)
    diff = [x - y for x, y in zip(c.to_vector(), c2.to_vector())]
    amb = _skew_inclusion(a, r) @ diff
    D1 = lm_coboundary(a, r, 1).matrix
    b = D1.solve(list(amb))
    chk = rep.check("cocycle difference is a coboundary")
    chk.record((), (0,) if b is not None else (1,))
    if b is None:
        rep.notes.append("the cocycles lie in different cohomology classes")
        return EquivalenceResult(False, report=rep)
    dg, dw, dm, dv = a.g.dim, r.W_dim, a.M_dim, r.V_dim
    so, sn, _ = lm_cochain_spaces(a, r, 1)
    b0 = Matrix.from_columns([b[z * dw:(z + 1) * dw] for z in range(dg)], dw)
    off = so.size
    b1 = Matrix.from_columns([b[off + m * dv: off + (m + 1) * dv] for m in range(dm)], dv)
    k0 = _left_inverse(e.i0) @ (Matrix.identity(e.total.g.dim) - s.sigma0 @ e.p0)
    k1 = _left_inverse(e.i1) @ (Matrix.identity(e.total.M_dim) - s.sigma1 @ e.p1)
    F0 = s2.sigma0 @ e.p0 + e2.i0 @ b0 @ e.p0 + e2.i0 @ k0
    F1 = s2.sigma1 @ e.p1 + e2.i1 @ b1 @ e.p1 + e2.i1 @ k1
    F = LMMorphism(F0, F1)
    rep.extend(validate_lm_morphism(F, e.total, e2.total), "F ")
    chk = rep.check("F commutes with the sequences")
    ok = (F0 @ e.i0 == e2.i0 and F1 @ e.i1 == e2.i1 and e2.p0 @ F0 == e.p0 and e2.p1 @ F1 == e.p1)
    chk.record((), (0,) if ok else (1,))
    return EquivalenceResult(rep.passed, F if rep.passed else None, b0, b1, rep)


def _same_rep(r: LMRepresentation, r2: LMRepresentation) -> bool:
    g = r.base.g
    for X in wedge_basis(g.dim, g.n - 1):
        if r.rho1.of(X) != r2.rho1.of(X) or r.rho2.of(X) != r2.rho2.of(X):
            return False
    return r.rho3_entries == r2.rho3_entries and r.phi == r2.phi
