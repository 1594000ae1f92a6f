"""Deformations of 3-Lie algebras in LM and Nijenhuis operators.

A deformation of ``(M, g, f)`` perturbs the three structure maps by power series

    f_λ = f + Σ λ^i θ_i,   [x, y, z]_λ = [x, y, z] + Σ λ^i ω_i,   ρ_λ = ρ + Σ λ^i ν_i.

Everything here is for ``n = 3``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence

from .exactlinalg import Matrix, q
from .lm_cohomology import LMCochain, _skew_inclusion, is_lm_two_cocycle, lm_coboundary, lm_cochain_spaces, lm_cohomology_dim
from .lm_core import LMAlgebra, validate_lm
from .lm_representations import adjoint_lm_representation
from .multilinear import (
    BlockCochain,
    CochainSpace,
    SkewTensor,
    Sparse,
    expand,
    sparse_add,
    sparse_apply,
    sparse_to_vector,
    wedge_basis,
)
from .nlie_core import NLieAlgebra, ValidationError
from .reports import Report
from .representations import Representation

__all__ = [
    "DeformationTriple",
    "FormalDeformation",
    "NijenhuisPair",
    "PROBE_LAMBDAS",
    "deformation_as_cochain",
    "deformation_from_nijenhuis",
    "deformed_structures",
    "find_diagonal_nijenhuis",
    "first_order_terms_cohomologous",
    "is_nijenhuis",
    "nu_space",
    "probe_deformation",
    "rigidity_report",
    "triple_from_cochain",
    "triviality_witness",
    "validate_formal_deformation",
    "validate_infinitesimal_deformation",
]

PROBE_LAMBDAS = (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2))


def _require_ternary(a: LMAlgebra) -> None:
    if a.n != 3:
        raise ValueError(f"deformations are implemented for 3-Lie algebras, got arity {a.n}")


def nu_space(a: LMAlgebra) -> CochainSpace:
    """``∧^2 g ⊗ M -> M``."""
    return CochainSpace(a.g.dim, 2, 1, (a.M_dim,), a.M_dim)


@dataclass
class DeformationTriple:
    """``theta: M -> g``, ``omega: ∧^3 g -> g`` and ``nu: ∧^2 g ⊗ M -> M``."""

    theta: Matrix
    omega: SkewTensor
    nu: BlockCochain

    @classmethod
    def zero(cls, a: LMAlgebra) -> "DeformationTriple":
        _require_ternary(a)
        return cls(Matrix.zeros(a.g.dim, a.M_dim), SkewTensor(3, a.g.dim, a.g.dim), nu_space(a).zero())

    def check_shapes(self, a: LMAlgebra) -> None:
        _require_ternary(a)
        if self.theta.shape != (a.g.dim, a.M_dim):
            raise ValueError("theta must be dim g x dim M")
        if (self.omega.arity, self.omega.dim, self.omega.target_dim) != (3, a.g.dim, a.g.dim):
            raise ValueError("omega must be a skew 3-linear map on g")
        if self.nu.space != nu_space(a):
            raise ValueError("nu must have one wedge-2 block and an M slot, valued in M")

    def nu_matrix(self, a: LMAlgebra, x: Sequence[int]) -> Matrix:
        """``nu(x_1, x_2, .)`` as a ``dim M x dim M`` matrix."""
        cols = [self.nu.evaluate((tuple(x),), (m,)) for m in range(a.M_dim)]
        return Matrix.from_columns(cols, a.M_dim)


@dataclass
class NijenhuisPair:
    N0: Matrix
    N1: Matrix


@dataclass
class FormalDeformation:
    """Terms of order ``1..K``; ``terms[i-1]`` holds ``(theta_i, omega_i, nu_i)``."""

    terms: List[DeformationTriple] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.terms)


# -- single-parameter deformations ------------------------------------------------

def _with_terms(a: LMAlgebra, terms: Sequence[DeformationTriple], lam) -> LMAlgebra:
    lam = q(lam)
    g = a.g
    table = {}
    for x in wedge_basis(g.dim, 3):
        vec = dict(g.bracket_basis(x))
        p = 1
        for t in terms:
            p = p * lam
            sparse_add(vec, t.omega.evaluate_sparse(x), p)
        if vec:
            table[x] = vec
    gl = NLieAlgebra(3, g.dim, table, f"{g.name} deformed".strip())
    rho = {}
    for x in wedge_basis(g.dim, 2):
        mat = a.rho.of(x)
        p = 1
        for t in terms:
            p = p * lam
            mat = mat + t.nu_matrix(a, x).scale(p)
        rho[x] = mat
    f = a.f
    p = 1
    for t in terms:
        p = p * lam
        f = f + t.theta.scale(p)
    return LMAlgebra(Representation(gl, a.M_dim, rho, "deformed action"), f, f"{a.name} at λ={lam}".strip())


def deformed_structures(a: LMAlgebra, d, lam) -> LMAlgebra:
    """``(f + λθ, [.]+λω, ρ+λν)`` for a triple, or the polynomial in λ for a formal deformation."""
    _require_ternary(a)
    terms = d.terms if isinstance(d, FormalDeformation) else [d]
    for t in terms:
        t.check_shapes(a)
    return _with_terms(a, terms, lam)


def deformation_as_cochain(a: LMAlgebra, d: DeformationTriple) -> LMCochain:
    """The triple as a degree-2 cochain with adjoint coefficients."""
    r = adjoint_lm_representation(a, check=False)
    so, sn, st = lm_cochain_spaces(a, r, 2)
    om = BlockCochain.from_function(so, lambda bl, tr: d.omega.evaluate_sparse(bl[0]))
    th = BlockCochain.from_function(st, lambda bl, tr: d.theta.column(tr[0]))
    return LMCochain(2, om, BlockCochain(sn, d.nu.values), th)


def triple_from_cochain(a: LMAlgebra, c: LMCochain) -> DeformationTriple:
    g = a.g
    entries = {x: c.omega.evaluate_sparse((x,)) for x in wedge_basis(g.dim, 3)}
    theta = Matrix.from_columns([c.theta.evaluate((), (m,)) for m in range(a.M_dim)], g.dim)
    return DeformationTriple(theta, SkewTensor(3, g.dim, g.dim, entries), BlockCochain(nu_space(a), c.nu.values))


def _as_structure(a: LMAlgebra, d: DeformationTriple) -> LMAlgebra:
    """``(M, g, theta)`` with bracket ``omega`` and action ``nu``."""
    g = a.g
    gw = NLieAlgebra(3, g.dim, dict(d.omega.entries), "omega")
    rho = {x: d.nu_matrix(a, x) for x in wedge_basis(g.dim, 2)}
    return LMAlgebra(Representation(gw, a.M_dim, rho, "nu"), d.theta, "deformation data")


def validate_infinitesimal_deformation(a: LMAlgebra, d: DeformationTriple) -> Report:
    """Condition (i): the triple is a 2-cocycle with adjoint coefficients.
    Condition (ii): ``(M, g, theta)`` with bracket ``omega`` and action ``nu``
    is itself a 3-Lie algebra in LM.  Together they hold iff the deformed
    structure is valid for every λ."""
    d.check_shapes(a)
    rep = Report("infinitesimal deformation")
    r = adjoint_lm_representation(a, check=False)
    rep.extend(is_lm_two_cocycle(a, r, deformation_as_cochain(a, d)), "(i) ")
    rep.extend(validate_lm(_as_structure(a, d), full=True), "(ii) ")
    rep.data["first order cocycle"] = all(c.passed for c in rep.checks if c.name.startswith("(i)"))
    rep.data["deformation data is a 3-Lie algebra in LM"] = all(
        c.passed for c in rep.checks if c.name.startswith("(ii)"))
    return rep


def probe_deformation(a: LMAlgebra, d, lambdas: Sequence = PROBE_LAMBDAS) -> Report:
    """Full validation of the deformed structure at each probe value of λ."""
    rep = Report("deformed structure probes")
    for lam in lambdas:
        sub = validate_lm(deformed_structures(a, d, lam), full=True)
        chk = rep.check(f"valid at λ={lam}")
        chk.record((), (0,) if sub.passed else (1,))
    return rep


# -- Nijenhuis operators -------------------------------------------------------------

def _br(g: NLieAlgebra, *args: Sparse) -> Sparse:
    return g.tensor.apply(list(args))


def _act(a: LMAlgebra, x1: Sparse, x2: Sparse, m: Sparse) -> Sparse:
    out: Sparse = {}
    for idx, c in expand([x1, x2]):
        sparse_add(out, a.rho.apply(idx, m), c)
    return out


def _col(m: Matrix, j: int) -> Sparse:
    return {i: x for i, x in enumerate(m.column(j)) if x}


def _sum_with(g_bracket, xs: Sequence[Sparse], images: Sequence[Sparse], k: int) -> Sparse:
    """Sum of brackets with exactly ``k`` arguments replaced by their images."""
    out: Sparse = {}
    for pos in itertools.combinations(range(len(xs)), k):
        args = [images[i] if i in pos else xs[i] for i in range(len(xs))]
        sparse_add(out, g_bracket(*args))
    return out


def is_nijenhuis(a: LMAlgebra, p: NijenhuisPair) -> Report:
    """``N0 (f N1 - N0 f) = 0`` and the cubic conditions for ``N0`` on brackets
    and for ``(N0, N1)`` on the action."""
    _require_ternary(a)
    g = a.g
    N0, N1 = p.N0, p.N1
    if N0.shape != (g.dim, g.dim) or N1.shape != (a.M_dim, a.M_dim):
        raise ValueError("N0 must act on g and N1 on M")
    rep = Report("Nijenhuis pair")
    chk = rep.check("N0 (f N1 - N0 f) = 0")
    res = N0 @ (a.f @ N1 - N0 @ a.f)
    for m in range(a.M_dim):
        chk.record((m,), res.column(m))
    br = lambda *xs: _br(g, *xs)
    chk = rep.check("bracket condition")
    for x in itertools.combinations(range(g.dim), 3):
        xs = [{i: 1} for i in x]
        im = [_col(N0, i) for i in x]
        res = dict(_sum_with(br, xs, im, 3))
        sparse_add(res, sparse_apply(N0, _sum_with(br, xs, im, 2)), -1)
        sparse_add(res, sparse_apply(N0, sparse_apply(N0, _sum_with(br, xs, im, 1))))
        sparse_add(res, sparse_apply(N0, sparse_apply(N0, sparse_apply(N0, _sum_with(br, xs, im, 0)))), -1)
        chk.record((x,), sparse_to_vector(res, g.dim))
    chk = rep.check("action condition")
    act = lambda x1, x2, m: _act(a, x1, x2, m)
    for x in wedge_basis(g.dim, 2):
        for m in range(a.M_dim):
            xs = [{x[0]: 1}, {x[1]: 1}, {m: 1}]
            im = [_col(N0, x[0]), _col(N0, x[1]), _col(N1, m)]
            N = lambda v: sparse_apply(N1, v)
            res = dict(_sum_with(act, xs, im, 3))
            sparse_add(res, N(_sum_with(act, xs, im, 2)), -1)
            sparse_add(res, N(N(_sum_with(act, xs, im, 1))))
            sparse_add(res, N(N(N(_sum_with(act, xs, im, 0)))), -1)
            chk.record((x, m), sparse_to_vector(res, a.M_dim))
    return rep


def deformation_from_nijenhuis(a: LMAlgebra, p: NijenhuisPair, check: bool = True) -> FormalDeformation:
    """Second-order deformation generated by a Nijenhuis pair.

    ``theta = f N1 - N0 f``, ``omega1 = Σ[..N0 x_i..] - N0[x]``,
    ``omega2 = Σ[..N0 x_i..N0 x_j..] - N0 omega1``, and ``nu1``, ``nu2``
    likewise with ``N1`` on the module slot.
    """
    if check:
        rep = is_nijenhuis(a, p)
        if not rep.passed:
            raise ValidationError(rep)
    g = a.g
    N0, N1 = p.N0, p.N1
    br = lambda *xs: _br(g, *xs)
    act = lambda x1, x2, m: _act(a, x1, x2, m)
    om1, om2 = {}, {}
    for x in itertools.combinations(range(g.dim), 3):
        xs = [{i: 1} for i in x]
        im = [_col(N0, i) for i in x]
        w1 = _sum_with(br, xs, im, 1)
        sparse_add(w1, sparse_apply(N0, g.bracket_basis(x)), -1)
        w2 = _sum_with(br, xs, im, 2)
        sparse_add(w2, sparse_apply(N0, w1), -1)
        om1[x], om2[x] = w1, w2
    space = nu_space(a)

    def nu_k(k):
        def fn(bl, tr):
            x, m = bl[0], tr[0]
            xs = [{x[0]: 1}, {x[1]: 1}, {m: 1}]
            im = [_col(N0, x[0]), _col(N0, x[1]), _col(N1, m)]
            v1 = _sum_with(act, xs, im, 1)
            sparse_add(v1, sparse_apply(N1, a.rho.apply(x, {m: 1})), -1)
            if k == 1:
                return v1
            v2 = _sum_with(act, xs, im, 2)
            sparse_add(v2, sparse_apply(N1, v1), -1)
            return v2
        return fn

    theta = a.f @ N1 - N0 @ a.f
    t1 = DeformationTriple(theta, SkewTensor(3, g.dim, g.dim, om1), BlockCochain.from_function(space, nu_k(1)))
    t2 = DeformationTriple(Matrix.zeros(g.dim, a.M_dim), SkewTensor(3, g.dim, g.dim, om2),
                           BlockCochain.from_function(space, nu_k(2)))
    return FormalDeformation([t1, t2])


def triviality_witness(a: LMAlgebra, p: NijenhuisPair, d: FormalDeformation,
                       lambdas: Sequence = (1, 2, -1)) -> Report:
    """``T0 = id + λN0``, ``T1 = id + λN1`` is a homomorphism from the deformed structure to the original."""
    g = a.g
    rep = Report("triviality witness")
    for lam in lambdas:
        lam = q(lam)
        T0 = Matrix.identity(g.dim) + p.N0.scale(lam)
        T1 = Matrix.identity(a.M_dim) + p.N1.scale(lam)
        dl = deformed_structures(a, d, lam)
        chk = rep.check(f"f T1 = T0 f_λ at λ={lam}")
        diff = a.f @ T1 - T0 @ dl.f
        for m in range(a.M_dim):
            chk.record((m,), diff.column(m))
        chk = rep.check(f"T0 preserves brackets at λ={lam}")
        for x in itertools.combinations(range(g.dim), 3):
            lhs = sparse_apply(T0, dl.g.bracket_basis(x))
            rhs = g.tensor.apply([_col(T0, i) for i in x])
            sparse_add(lhs, rhs, -1)
            chk.record((x,), sparse_to_vector(lhs, g.dim))
        chk = rep.check(f"T1 intertwines actions at λ={lam}")
        for x in wedge_basis(g.dim, 2):
            for m in range(a.M_dim):
                lhs = sparse_apply(T1, dl.rho.apply(x, {m: 1}))
                rhs = _act(a, _col(T0, x[0]), _col(T0, x[1]), _col(T1, m))
                sparse_add(lhs, rhs, -1)
                chk.record((x, m), sparse_to_vector(lhs, a.M_dim))
    return rep


def find_diagonal_nijenhuis(a: LMAlgebra, values: Sequence = (0, 1),
                            same: bool = False) -> Iterator[NijenhuisPair]:
    """Nijenhuis pairs with diagonal ``N0``, ``N1`` drawn from ``values``.

    ``same=True`` requires ``M = g`` and uses ``N1 = N0``.  Pairs are yielded
    in lexicographic order of their diagonals.
    """
    g = a.g
    if same and a.M_dim != g.dim:
        raise ValueError("same=True needs dim M = dim g")
    m_choices = [None] if same else list(itertools.product(values, repeat=a.M_dim))
    for d0 in itertools.product(values, repeat=g.dim):
        N0 = Matrix.from_rows([[d0[i] if i == j else 0 for j in range(g.dim)] for i in range(g.dim)], g.dim)
        for d1 in m_choices:
            if d1 is None:
                N1 = N0
            else:
                N1 = Matrix.from_rows([[d1[i] if i == j else 0 for j in range(a.M_dim)]
                                       for i in range(a.M_dim)], a.M_dim)
            pair = NijenhuisPair(N0, N1)
            if is_nijenhuis(a, pair).passed:
                yield pair


# -- formal deformations -----------------------------------------------------------

def validate_formal_deformation(a: LMAlgebra, d: FormalDeformation, max_k: Optional[int] = None) -> Report:
    """Convolution identities at each order ``k`` up to ``max_k`` (default: the order).

    With ``omega_0``, ``nu_0``, ``f_0`` the original structure, for each ``k``:
    fundamental identity, the action rule ``[ν(x), ν(y)] = Σν(..ω(x, y_i)..)``,
    the bracket-slot rule for the action, and equivariance of ``f``.
    """
    _require_ternary(a)
    for t in d.terms:
        t.check_shapes(a)
    g = a.g
    K = d.order if max_k is None else max_k
    om = [lambda *xs: _br(g, *xs)] + [(lambda t: (lambda *xs: t.omega.apply(list(xs))))(t) for t in d.terms]
    nus = [a.rho.of] + [(lambda t: (lambda x: t.nu_matrix(a, x)))(t) for t in d.terms]
    fs = [a.f] + [t.theta for t in d.terms]
    L = len(fs) - 1

    def nu_gen(i, x1: Sparse, x2: Sparse) -> Matrix:
        out = Matrix.zeros(a.M_dim, a.M_dim)
        for idx, c in expand([x1, x2]):
            if idx[0] != idx[1]:
                out = out + nus[i](idx).scale(c)
        return out

    basis = [{i: 1} for i in range(g.dim)]
    rep = Report("formal deformation")
    for k in range(K + 1):
        pairs = [(i, k - i) for i in range(k + 1) if i <= L and k - i <= L]
        chk = rep.check(f"order {k}: fundamental identity")
        for x in wedge_basis(g.dim, 2):
            for y in wedge_basis(g.dim, 3):
                res: Sparse = {}
                xs = [basis[x[0]], basis[x[1]]]
                ys = [basis[j] for j in y]
                for i, j in pairs:
                    sparse_add(res, om[i](*xs, om[j](*ys)))
                    for s in range(3):
                        args = list(ys)
                        args[s] = om[j](*xs, ys[s])
                        sparse_add(res, om[i](*args), -1)
                chk.record((x, y), sparse_to_vector(res, g.dim))
        chk = rep.check(f"order {k}: action commutator")
        for x in wedge_basis(g.dim, 2):
            for y in wedge_basis(g.dim, 2):
                res = Matrix.zeros(a.M_dim, a.M_dim)
                xs = [basis[x[0]], basis[x[1]]]
                for i, j in pairs:
                    res = res + nus[i](x) @ nus[j](y) - nus[i](y) @ nus[j](x)
                    res = res - nu_gen(i, om[j](*xs, basis[y[0]]), basis[y[1]])
                    res = res - nu_gen(i, basis[y[0]], om[j](*xs, basis[y[1]]))
                _record(chk, (x, y), res)
        chk = rep.check(f"order {k}: action at a bracket")
        for x1 in range(g.dim):
            for y in wedge_basis(g.dim, 3):
                res = Matrix.zeros(a.M_dim, a.M_dim)
                ys = [basis[j] for j in y]
                for i, j in pairs:
                    res = res + nu_gen(i, basis[x1], om[j](*ys))
                    for s in range(3):
                        sign = 1 if (3 - (s + 1)) % 2 == 0 else -1
                        yhat = y[:s] + y[s + 1:]
                        res = res - (nus[i](yhat) @ nu_gen(j, basis[x1], basis[y[s]])).scale(sign)
                _record(chk, (x1, y), res)
        chk = rep.check(f"order {k}: equivariance")
        for x in wedge_basis(g.dim, 2):
            xs = [basis[x[0]], basis[x[1]]]
            for m in range(a.M_dim):
                res: Sparse = {}
                for i, j in pairs:
                    sparse_add(res, sparse_apply(fs[i], _col(nus[j](x), m)))
                    sparse_add(res, om[i](*xs, _col(fs[j], m)), -1)
                chk.record((x, m), sparse_to_vector(res, g.dim))
    return rep


def _record(chk, args, res: Matrix) -> None:
    bad = None
    for j in range(res.cols):
        col = res.column(j)
        if any(col):
            bad = col
            break
    chk.record(args, bad if bad is not None else (0,))


# -- rigidity and first-order classes ------------------------------------------------

def rigidity_report(a: LMAlgebra) -> Report:
    """``H^2 = 0`` with adjoint coefficients is sufficient for rigidity, not necessary."""
    r = adjoint_lm_representation(a, check=False)
    dims = lm_cohomology_dim(a, r, 2)
    h = dims.cohomology
    rep = Report("rigidity")
    rep.data["dim H2"] = h
    rep.data["verdict"] = "rigid (sufficient condition met)" if h == 0 else f"inconclusive (dim H2 = {h})"
    rep.notes.append("vanishing H2 is a sufficient condition for rigidity; it is not necessary")
    if a.n != 3:
        rep.notes.append("the deformation theory here is developed for arity 3")
    return rep


def first_order_terms_cohomologous(a: LMAlgebra, d: DeformationTriple, d2: DeformationTriple) -> Report:
    """Whether two first-order terms differ by a coboundary with adjoint coefficients."""
    r = adjoint_lm_representation(a, check=False)
    c, c2 = deformation_as_cochain(a, d), deformation_as_cochain(a, d2)
    diff = [x - y for x, y in zip(c.to_vector(), c2.to_vector())]
    amb = _skew_inclusion(a, r) @ diff
    b = lm_coboundary(a, r, 1).matrix.solve(list(amb))
    rep = Report("first-order terms")
    rep.check("difference is a coboundary").record((), (0,) if b is not None else (1,))
    return rep
