"""Cochain complex of an n-Lie algebra in LM with coefficients in a representation.

A degree-``d`` cochain is a triple ``(omega, nu, theta)``:

* ``omega``: ``d-1`` wedge blocks of ``∧^{n-1} g`` and one ``g`` slot, values in ``W``;
* ``nu``: ``d-1`` wedge blocks and one ``M`` slot, values in ``V``;
* ``theta``: ``d-2`` wedge blocks and one ``M`` slot, values in ``W`` (absent in degree 1).

In degree 2, ``omega`` is totally skew, ``Hom(∧^n g, W)``, stored as one block
of arity ``n``.  The coboundary is assembled from the Leibniz complex of
``L = ∧^{n-1} g`` with coefficients in

    A = Hom(g, W) ⊕ Hom(M, V)      and      B = Hom(M, W),

coupled by ``chi(N0, N1) = phi N1 - N0 f``:
``D(alpha, theta) = (d_A alpha, chi(alpha) - d_B theta)``.
The module ``A`` mixes its two summands through ``rho3``; this is what makes
the ``nu`` component of ``D`` reproduce the explicit low-degree formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .exactlinalg import Matrix, rank
from .lm_core import LMAlgebra
from .lm_representations import LMRepresentation
from .multilinear import (
    BlockCochain,
    CochainSpace,
    Sparse,
    sparse_add,
    sparse_apply,
    sparse_to_vector,
    wedge_basis,
)
from .nlie_cohomology import (
    CohomologyDims,
    is_two_cocycle,
    leibniz_coboundary,
    skew_embedding,
)
from .nlie_core import fundamental_leibniz
from .reports import Check, Report
from .representations import LeibnizModule, hom_module, validate_leibniz_module

__all__ = [
    "LMCochain",
    "LMCoboundary",
    "coupled_module",
    "h1",
    "h2",
    "is_lm_one_cocycle",
    "is_lm_two_cocycle",
    "lm_coboundary",
    "lm_coboundary_1",
    "lm_cochain_spaces",
    "lm_cochain_spaces_for_dims",
    "lm_cohomology_dim",
    "lm_raw_two_cocycle_dim",
    "two_cocycle_basis",
    "lm_two_cocycle_constraints",
    "phi_sharp",
    "target_module",
]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# -- spaces and cochains ------------------------------------------------------

def lm_cochain_spaces(a: LMAlgebra, r: LMRepresentation, degree: int,
                      skew: bool = True) -> Tuple[CochainSpace, CochainSpace, Optional[CochainSpace]]:
    """Spaces of ``(omega, nu, theta)`` in the given degree.

    ``skew=False`` gives the ambient block space for ``omega`` in degree 2.
    """
    return lm_cochain_spaces_for_dims(a.n, a.g.dim, a.M_dim, r.V_dim, r.W_dim, degree, skew)


def lm_cochain_spaces_for_dims(n: int, dg: int, dm: int, dv: int, dw: int, degree: int,
                               skew: bool = True) -> Tuple[CochainSpace, CochainSpace, Optional[CochainSpace]]:
    if degree < 1:
        raise ValueError("LM cochain degrees start at 1")
    if degree == 2 and skew:
        omega = CochainSpace(dg, n, 1, (), dw)
    else:
        omega = CochainSpace(dg, n - 1, degree - 1, (dg,), dw)
    nu = CochainSpace(dg, n - 1, degree - 1, (dm,), dv)
    theta = CochainSpace(dg, n - 1, degree - 2, (dm,), dw) if degree >= 2 else None
    return omega, nu, theta


@dataclass
class LMCochain:
    degree: int
    omega: BlockCochain
    nu: BlockCochain
    theta: Optional[BlockCochain] = None

    def __post_init__(self):
        if (self.theta is None) != (self.degree == 1):
            raise ValueError("theta is present exactly in degrees >= 2")

    @classmethod
    def from_vector(cls, a: LMAlgebra, r: LMRepresentation, degree: int, values: Sequence,
                    skew: bool = True) -> "LMCochain":
        so, sn, st = lm_cochain_spaces(a, r, degree, skew)
        total = so.size + sn.size + (st.size if st else 0)
        if len(values) != total:
            raise ValueError(f"expected {total} coordinates, got {len(values)}")
        values = list(values)
        om = BlockCochain(so, values[: so.size])
        nu = BlockCochain(sn, values[so.size: so.size + sn.size])
        th = BlockCochain(st, values[so.size + sn.size:]) if st else None
        return cls(degree, om, nu, th)

    @classmethod
    def zero(cls, a: LMAlgebra, r: LMRepresentation, degree: int, skew: bool = True) -> "LMCochain":
        so, sn, st = lm_cochain_spaces(a, r, degree, skew)
        return cls(degree, so.zero(), sn.zero(), st.zero() if st else None)

    def to_vector(self) -> tuple:
        out = self.omega.values + self.nu.values
        if self.theta is not None:
            out += self.theta.values
        return out

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.to_vector())


def one_cochain(a: LMAlgebra, r: LMRepresentation, N0: Matrix, N1: Matrix) -> LMCochain:
    """Pack ``N0: g -> W`` and ``N1: M -> V`` as a degree-1 cochain."""
    if N0.shape != (r.W_dim, a.g.dim) or N1.shape != (r.V_dim, a.M_dim):
        raise ValueError("N0 must be dim W x dim g and N1 dim V x dim M")
    so, sn, _ = lm_cochain_spaces(a, r, 1)
    om = BlockCochain.from_function(so, lambda bl, tr: N0.column(tr[0]))
    nu = BlockCochain.from_function(sn, lambda bl, tr: N1.column(tr[0]))
    return LMCochain(1, om, nu)


# -- coefficient modules ------------------------------------------------------

def coupled_module(a: LMAlgebra, r: LMRepresentation) -> LeibnizModule:
    """Leibniz module ``A = Hom(g, W) ⊕ Hom(M, V)`` over ``∧^{n-1} g``.

    ``Hom(g, W)`` carries the structure induced by ``rho2`` and ``Hom(M, V)``
    the left action ``rho1(X) N - N rho(X)`` with right action its negative,
    corrected on the ``Hom(g, W)`` summand by
    ``N1(m) -= sum_{i<n} (-1)^{n-i} rho3(^x_i, m) N0(x_i)``.
    Coordinates: ``N0[w, z]`` at ``w*dim g + z``, then ``N1[v, m]`` at
    ``dim g*dim W + v*dim M + m``.
    """
    g = a.g
    n, dg, dm, dv, dw = g.n, g.dim, a.M_dim, r.V_dim, r.W_dim
    h = hom_module(r.rho2)
    L = h.algebra
    off = dg * dw
    size = off + dv * dm
    Im, Iv = Matrix.identity(dm), Matrix.identity(dv)
    left, right = [], []
    for k, X in enumerate(L.labels):
        hom_left = r.rho1.of(X).kron(Im) - Iv.kron(a.rho.of(X).transpose())
        lx = _block_diag(h.left[k], hom_left)
        data = [dict(row) for row in _block_diag(h.right[k], hom_left.scale(-1))._data]
        for i in range(n - 1):
            xhat = X[:i] + X[i + 1:]
            s = _sign(n - (i + 1))
            for m in range(dm):
                r3 = r.rho3(xhat, m)
                for v, row in enumerate(r3._data):
                    tgt = data[off + v * dm + m]
                    for w, c in row.items():
                        key = w * dg + X[i]
                        y = tgt.get(key, 0) - s * c
                        if y:
                            tgt[key] = y
                        else:
                            tgt.pop(key, None)
        left.append(lx)
        right.append(Matrix.from_sparse(size, size, data))
    return LeibnizModule(L, size, left, right, "Hom(g, W) ⊕ Hom(M, V)")


def target_module(a: LMAlgebra, r: LMRepresentation) -> LeibnizModule:
    """Leibniz module ``B = Hom(M, W)`` with ``[X, b] = rho2(X) b - b rho(X)`` and ``[b, X] = -[X, b]``."""
    L = fundamental_leibniz(a.g, check=False)
    Im, Iw = Matrix.identity(a.M_dim), Matrix.identity(r.W_dim)
    left = [r.rho2.of(X).kron(Im) - Iw.kron(a.rho.of(X).transpose()) for X in L.labels]
    return LeibnizModule(L, a.M_dim * r.W_dim, left, [m.scale(-1) for m in left], "Hom(M, W)")


def _block_diag(x: Matrix, y: Matrix) -> Matrix:
    return Matrix.hstack([
        Matrix.vstack([x, Matrix.zeros(y.rows, x.cols)]),
        Matrix.vstack([Matrix.zeros(x.rows, y.cols), y]),
    ])


def _chi(a: LMAlgebra, r: LMRepresentation) -> Matrix:
    """``A -> B``, ``(N0, N1) -> phi N1 - N0 f`` in the coordinates above."""
    dm = a.M_dim
    Iw, Im = Matrix.identity(r.W_dim), Matrix.identity(dm)
    return Matrix.hstack([Iw.kron(a.f.transpose()).scale(-1), r.phi.kron(Im)])


def coupled_module_report(a: LMAlgebra, r: LMRepresentation) -> Report:
    """Leibniz module axioms for ``A`` and ``B``, and ``chi`` as a module map."""
    A, B = coupled_module(a, r), target_module(a, r)
    rep = Report("LM coefficient modules")
    rep.extend(validate_leibniz_module(A), "A ")
    rep.extend(validate_leibniz_module(B), "B ")
    chi = _chi(a, r)
    chk = rep.check("chi intertwines left actions")
    chk2 = rep.check("chi intertwines right actions")
    for k in range(A.algebra.dim):
        for args, res, c in ((k, chi @ A.left[k] - B.left[k] @ chi, chk), (k, chi @ A.right[k] - B.right[k] @ chi, chk2)):
            bad = next(((i, j, x) for i, j, x in res.iter_nonzero()), None)
            c.record((args,), (0,) if bad is None else (bad[2],))
    return rep


# -- coordinate changes between cochain spaces and Leibniz cochains ------------

def _alpha_positions(a: LMAlgebra, r: LMRepresentation, p: int) -> List[int]:
    """Leibniz index of every ``(omega, nu)`` coordinate with ``p`` blocks."""
    dg, dm, dv, dw = a.g.dim, a.M_dim, r.V_dim, r.W_dim
    N = len(wedge_basis(dg, a.n - 1))
    dA = dg * dw + dm * dv
    out = []
    for B in range(N ** p):
        for z in range(dg):
            for w in range(dw):
                out.append(B * dA + w * dg + z)
    for B in range(N ** p):
        for m in range(dm):
            for v in range(dv):
                out.append(B * dA + dg * dw + v * dm + m)
    return out


def _theta_positions(a: LMAlgebra, r: LMRepresentation, p: int) -> List[int]:
    dm, dw = a.M_dim, r.W_dim
    N = len(wedge_basis(a.g.dim, a.n - 1))
    return [B * dm * dw + w * dm + m for B in range(N ** p) for m in range(dm) for w in range(dw)]


def _permuted(mat: Matrix, rows: List[int], cols: List[int]) -> Matrix:
    """Entry ``(i, j)`` of the result is entry ``(rows[i], cols[j])`` of ``mat``."""
    inv_r = {v: k for k, v in enumerate(rows)}
    inv_c = {v: k for k, v in enumerate(cols)}
    data = [dict() for _ in range(len(rows))]
    for i, j, x in mat.iter_nonzero():
        data[inv_r[i]][inv_c[j]] = x
    return Matrix.from_sparse(len(rows), len(cols), data)


@dataclass
class LMCoboundary:
    degree: int
    matrix: Matrix
    source_dim: int
    target_dim: int
    notes: List[str] = field(default_factory=list)


def _ambient_coboundary(a: LMAlgebra, r: LMRepresentation, d: int) -> Matrix:
    """``D_d`` between ambient cochain spaces (no skew restriction)."""
    A, B = coupled_module(a, r), target_module(a, r)
    L = A.algebra
    p = d - 1
    dA = leibniz_coboundary(L, A, p).matrix
    dA = _permuted(dA, _alpha_positions(a, r, p + 1), _alpha_positions(a, r, p))
    chi = Matrix.identity(L.dim ** p).kron(_chi(a, r))
    chi = _permuted(chi, _theta_positions(a, r, p), _alpha_positions(a, r, p))
    if d == 1:
        return Matrix.vstack([dA, chi])
    dB = leibniz_coboundary(L, B, p - 1).matrix
    dB = _permuted(dB, _theta_positions(a, r, p), _theta_positions(a, r, p - 1))
    top = Matrix.hstack([dA, Matrix.zeros(dA.rows, dB.cols)])
    bottom = Matrix.hstack([chi, dB.scale(-1)])
    return Matrix.vstack([top, bottom])


def _skew_inclusion(a: LMAlgebra, r: LMRepresentation) -> Matrix:
    """Degree-2 skew coordinates into ambient degree-2 coordinates."""
    _, sn, st = lm_cochain_spaces(a, r, 2)
    E = skew_embedding(a.g.dim, a.n, r.W_dim)
    return _block_diag(E, Matrix.identity(sn.size + st.size))


def lm_coboundary(a: LMAlgebra, r: LMRepresentation, d: int, skew: bool = True) -> LMCoboundary:
    """Matrix of ``D_d`` from degree ``d`` to degree ``d+1`` cochains.

    With ``skew=True`` the degree-2 ``omega`` is taken totally skew.  Targets
    are ambient.  Degrees from 3 on go beyond the explicit low-degree formulas
    and are computed from the coefficient modules.
    """
    if d < 1:
        raise ValueError("LM coboundaries start in degree 1")
    m = _ambient_coboundary(a, r, d)
    if d == 2 and skew:
        m = m @ _skew_inclusion(a, r)
    notes = []
    if d >= 3:
        notes.append("computed from the coefficient modules beyond the explicit low-degree formulas")
    return LMCoboundary(d, m, m.cols, m.rows, notes)


def _ambient_to_skew_two(a: LMAlgebra, r: LMRepresentation, vec: Sequence) -> Tuple[tuple, bool]:
    """Read a skew degree-2 vector off an ambient one; also report whether it was skew."""
    E = _skew_inclusion(a, r)
    x = E.solve(list(vec))
    if x is None:
        return tuple(), False
    return tuple(x), True


def lm_coboundary_1(a: LMAlgebra, r: LMRepresentation, N0: Matrix, N1: Matrix) -> LMCochain:
    """``D_1(N0, N1)`` as a degree-2 cochain with skew ``omega``."""
    c = one_cochain(a, r, N0, N1)
    out = lm_coboundary(a, r, 1).matrix @ list(c.to_vector())
    skew, ok = _ambient_to_skew_two(a, r, out)
    if not ok:
        raise AssertionError("D_1 produced a non-skew omega component")
    return LMCochain.from_vector(a, r, 2, skew)


# -- the extra constraint and cocycle checks ------------------------------------

def lm_two_cocycle_constraints(a: LMAlgebra, r: LMRepresentation) -> Matrix:
    """Linear map on skew degree-2 cochains whose kernel encodes the bracket-slot identity

        nu(x_1..x_{n-2}, [y_1..y_n], m) - rho3(x, m) omega(y)
          = sum_i (-1)^{n-i} (nu(^y_i, rho(x, y_i) m) + rho1(^y_i) nu(x, y_i, m)).

    It is empty for ``n = 2``.  Rows are indexed by ``(x, y, m, v)``.
    """
    g = a.g
    n, dg, dm, dv = g.n, g.dim, a.M_dim, r.V_dim
    so, sn, st = lm_cochain_spaces(a, r, 2)
    size = so.size + sn.size + st.size
    if n < 3:
        return Matrix.zeros(0, size)
    rows = []
    off = so.size

    def nu_form(acc, block, m, c, left: Optional[Matrix] = None):
        """``acc += c * left . nu(block, m)`` as linear forms."""
        sign, base = sn.locate([block], (m,))
        if sign == 0:
            return
        for v in range(dv):
            if left is None:
                acc[v][off + base + v] = acc[v].get(off + base + v, 0) + sign * c
            else:
                for t, x in enumerate(left.column(v)):
                    if x:
                        acc[t][off + base + v] = acc[t].get(off + base + v, 0) + sign * c * x

    for x in wedge_basis(dg, n - 2):
        for y in wedge_basis(dg, n):
            for m in range(dm):
                acc = [dict() for _ in range(dv)]
                for k, c in g.bracket_basis(y).items():
                    nu_form(acc, x + (k,), m, c)
                # - rho3(x, m) omega(y)
                sign, base = so.locate([y], ())
                r3 = r.rho3(x, m)
                for w in range(r.W_dim):
                    for t, val in enumerate(r3.column(w)):
                        if val:
                            acc[t][base + w] = acc[t].get(base + w, 0) - sign * val
                for i in range(n):
                    s = _sign(n - (i + 1))
                    yhat = y[:i] + y[i + 1:]
                    for mm, c in enumerate(a.rho.of(x + (y[i],)).column(m)):
                        if c:
                            nu_form(acc, yhat, mm, -s * c)
                    nu_form(acc, x + (y[i],), m, -s, r.rho1.of(yhat))
                for form in acc:
                    rows.append({k: val for k, val in form.items() if val})
    return Matrix.from_sparse(len(rows), size, rows)


def _two_cocycle_matrix(a: LMAlgebra, r: LMRepresentation) -> Matrix:
    return Matrix.vstack([lm_coboundary(a, r, 2).matrix, lm_two_cocycle_constraints(a, r)])


def is_lm_one_cocycle(a: LMAlgebra, r: LMRepresentation, N0: Matrix, N1: Matrix) -> Report:
    """The three 1-cocycle conditions on ``(N0, N1)``, evaluated directly."""
    g = a.g
    n = g.n
    rep = Report("LM 1-cocycle")
    chk = rep.check("phi N1 = N0 f")
    diff = r.phi @ N1 - N0 @ a.f
    for m in range(a.M_dim):
        chk.record((m,), diff.column(m))
    chk = rep.check("N0 is a derivation into W")
    for x in wedge_basis(g.dim, n):
        res: Sparse = {}
        sparse_add(res, sparse_apply(N0, g.bracket_basis(x)), -1)
        for i in range(n):
            col = {k: c for k, c in enumerate(N0.column(x[i])) if c}
            sparse_add(res, sparse_apply(r.rho2.of(x[:i] + x[i + 1:]), col), _sign(n - (i + 1)))
        chk.record((x,), sparse_to_vector(res, r.W_dim))
    chk = rep.check("N1 compatible with the action")
    for X in wedge_basis(g.dim, n - 1):
        mat = r.rho1.of(X) @ N1 - N1 @ a.rho.of(X)
        for i in range(n - 1):
            xhat = X[:i] + X[i + 1:]
            cols = []
            for m in range(a.M_dim):
                cols.append(r.rho3(xhat, m) @ list(N0.column(X[i])))
            mat = mat + Matrix.from_columns(cols, r.V_dim).scale(_sign(n - (i + 1)))
        for m in range(a.M_dim):
            chk.record((X, m), mat.column(m))
    return rep


def is_lm_two_cocycle(a: LMAlgebra, r: LMRepresentation, c: LMCochain) -> Report:
    """Residuals of the 2-cocycle equations, evaluated directly on basis tuples.

    Checks the ``theta`` equation, the ``omega`` equation (the n-Lie 2-cocycle
    condition with ``rho2``), the ``nu`` equation and, for ``n >= 3``, the
    bracket-slot identity of :func:`lm_two_cocycle_constraints`.
    """
    if c.degree != 2:
        raise ValueError("expected a degree-2 cochain")
    so, sn, st = lm_cochain_spaces(a, r, 2)
    if c.omega.space != so or c.nu.space != sn or c.theta.space != st:
        raise ValueError("cochain shape does not match the algebra and representation")
    g = a.g
    n, dg, dm, dv, dw = g.n, g.dim, a.M_dim, r.V_dim, r.W_dim
    om, nu, th = c.omega, c.nu, c.theta

    def omega(args) -> Sparse:
        return om.evaluate_sparse((tuple(args),))

    def nu_at(block, mvec: Sparse) -> Sparse:
        out: Sparse = {}
        for k, x in mvec.items():
            sparse_add(out, nu.evaluate_sparse((tuple(block),), (k,)), x)
        return out

    def theta_at(mvec: Sparse) -> Sparse:
        out: Sparse = {}
        for k, x in mvec.items():
            sparse_add(out, th.evaluate_sparse((), (k,)), x)
        return out

    def col(mat: Matrix, j: int) -> Sparse:
        return {i: x for i, x in enumerate(mat.column(j)) if x}

    rep = Report("LM 2-cocycle")
    chk = rep.check("theta equation")
    for X in wedge_basis(dg, n - 1):
        for m in range(dm):
            res = theta_at(col(a.rho.of(X), m))
            sparse_add(res, sparse_apply(r.phi, nu_at(X, {m: 1})))
            for z, x in col(a.f, m).items():
                sparse_add(res, omega(X + (z,)), -x)
            sparse_add(res, sparse_apply(r.rho2.of(X), theta_at({m: 1})), -1)
            chk.record((X, m), sparse_to_vector(res, dw))
    sub = is_two_cocycle(r.rho2, om_as_ambient(a, r, om))
    inner = sub.checks[0]
    rep.checks.append(Check("omega equation", inner.tested, inner.violations, list(inner.witnesses)))
    chk = rep.check("nu equation")
    for X in wedge_basis(dg, n - 1):
        for Y in wedge_basis(dg, n - 1):
            for m in range(dm):
                res = nu_at(X, col(a.rho.of(Y), m))
                sparse_add(res, sparse_apply(r.rho1.of(X), nu_at(Y, {m: 1})))
                for i in range(n - 1):
                    for k, x in g.bracket_basis(X + (Y[i],)).items():
                        sparse_add(res, nu_at(Y[:i] + (k,) + Y[i + 1:], {m: 1}), -x)
                sparse_add(res, nu_at(Y, col(a.rho.of(X), m)), -1)
                for i in range(n - 1):
                    s = _sign(n - (i + 1))
                    w = omega(X + (Y[i],))
                    sparse_add(res, sparse_apply(r.rho3(Y[:i] + Y[i + 1:], m), w), -s)
                sparse_add(res, sparse_apply(r.rho1.of(Y), nu_at(X, {m: 1})), -1)
                chk.record((X, Y, m), sparse_to_vector(res, dv))
    if n >= 3:
        chk = rep.check("bracket-slot identity")
        K = lm_two_cocycle_constraints(a, r)
        vals = K @ list(c.to_vector())
        i = 0
        for x in wedge_basis(dg, n - 2):
            for y in wedge_basis(dg, n):
                for m in range(dm):
                    chk.record((x, y, m), vals[i:i + dv])
                    i += dv
    return rep


def om_as_ambient(a: LMAlgebra, r: LMRepresentation, om: BlockCochain) -> BlockCochain:
    """Skew degree-2 ``omega`` as a map ``∧^{n-1} g ⊗ g -> W``."""
    amb, _, _ = lm_cochain_spaces(a, r, 2, skew=False)
    return BlockCochain.from_function(amb, lambda bl, tr: om.evaluate_sparse((bl[0] + tr,)))


# -- components of the coboundary -----------------------------------------------

def phi_sharp(r: LMRepresentation, nu: BlockCochain) -> BlockCochain:
    """``(phi# nu)(X..)(m) = phi(nu(X..)(m))``."""
    s = nu.space
    out = CochainSpace(s.dim, s.block_arity, s.blocks, s.trailing, r.W_dim)
    return BlockCochain.from_function(out, lambda bl, tr: sparse_apply(r.phi, nu.evaluate_sparse(bl, tr)))


def h2(a: LMAlgebra, omega: BlockCochain) -> BlockCochain:
    """``(h2 omega)(X..)(m) = omega(X.., f(m))`` (the ``g`` slot filled by ``f(m)``)."""
    s = omega.space
    out = CochainSpace(s.dim, s.block_arity, s.blocks, (a.M_dim,), s.target_dim)

    def fn(bl, tr):
        acc: Sparse = {}
        for z, x in enumerate(a.f.column(tr[0])):
            if x:
                sparse_add(acc, omega.evaluate_sparse(bl, (z,)), x)
        return acc
    return BlockCochain.from_function(out, fn)


def h1(a: LMAlgebra, r: LMRepresentation, omega: BlockCochain) -> BlockCochain:
    """Contraction with ``rho3``; adds one block.

    ``(h1 omega)(X.., Y)(m) = sum_{i<n} (-1)^{n-i} rho3(^y_i, m) omega(X.., y_i)``.
    """
    s = omega.space
    n = a.n
    out = CochainSpace(s.dim, s.block_arity, s.blocks + 1, (a.M_dim,), r.V_dim)

    def fn(bl, tr):
        Y, m = bl[-1], tr[0]
        acc: Sparse = {}
        for i in range(n - 1):
            w = omega.evaluate_sparse(bl[:-1], (Y[i],))
            sparse_add(acc, sparse_apply(r.rho3(Y[:i] + Y[i + 1:], m), w), _sign(n - (i + 1)))
        return acc
    return BlockCochain.from_function(out, fn)


# -- cohomology ---------------------------------------------------------------

def lm_cohomology_dim(a: LMAlgebra, r: LMRepresentation, k: int) -> CohomologyDims:
    """Exact ``(C, Z, B)`` dimensions in degree 1 or 2.

    Degree-1 coboundaries are zero (the complex starts in degree 1).  In
    degree 2 the cocycles are the kernel of ``D_2`` together with the
    bracket-slot identity; the bare kernel of ``D_2`` is available through
    :func:`lm_raw_two_cocycle_dim`.
    """
    if k == 1:
        D1 = lm_coboundary(a, r, 1).matrix
        return CohomologyDims(1, D1.cols, D1.cols - rank(D1), 0)
    if k == 2:
        Z = _two_cocycle_matrix(a, r)
        B = rank(lm_coboundary(a, r, 1).matrix)
        return CohomologyDims(2, Z.cols, Z.cols - rank(Z), B)
    raise ValueError("cohomology dimensions are provided in degrees 1 and 2")


def lm_raw_two_cocycle_dim(a: LMAlgebra, r: LMRepresentation) -> int:
    D2 = lm_coboundary(a, r, 2).matrix
    return D2.cols - rank(D2)


def two_cocycle_basis(a: LMAlgebra, r: LMRepresentation) -> List[LMCochain]:
    return [LMCochain.from_vector(a, r, 2, v) for v in _two_cocycle_matrix(a, r).kernel_basis()]
