"""Representations of n-Lie algebras in LM and the semidirect product.

A representation of ``(M, g, f)`` is an LM object ``(V, W, phi)`` with
representations ``rho1`` of ``g`` on ``V`` and ``rho2`` on ``W``, ``phi: V -> W``
and a map ``rho3(x_1..x_{n-2}, m): W -> V`` skew in the ``x`` slots, subject
to six compatibility conditions checked by :func:`validate_lm_representation`.
"""

from __future__ import annotations

from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from .exactlinalg import Matrix
from .lm_core import LMAlgebra, validate_lm
from .multilinear import Sparse, normalize_wedge, wedge_basis
from .nlie_core import NLieAlgebra, ValidationError
from .reports import Report
from .representations import (
    Representation,
    _record_matrix,
    semidirect_product,
    trivial_representation,
    validate_representation,
)

__all__ = [
    "LMRepresentation",
    "adjoint_lm_representation",
    "lm_semidirect",
    "twisted_semidirect",
    "trivial_lm_representation",
    "validate_lm_representation",
]

CONDITIONS = (
    "phi intertwines rho1 and rho2",
    "phi rho3 = rho2(.., f m)",
    "rho1 rho3 derivation rule",
    "rho3 at rho(y) m",
    "rho3 at a bracket",
    "rho3 rho2 exchange",
)


class LMRepresentation:
    """``(V, W, phi, rho1, rho2, rho3)`` over the LM algebra ``base``.

    ``rho3`` maps keys ``(x, m)``, ``x`` an ``(n-2)``-tuple of basis indices and
    ``m`` a basis index of ``M``, to ``dim V x dim W`` matrices.  Unsorted
    keys are normalized with the wedge sign; absent keys are zero.
    """

    def __init__(self, base: LMAlgebra, rho1: Representation, rho2: Representation,
                 phi: Matrix, rho3: Optional[Mapping] = None, name: str = ""):
        g = base.g
        if rho1.algebra != g or rho2.algebra != g:
            raise ValueError("rho1 and rho2 must be representations of the base algebra")
        dv, dw = rho1.module_dim, rho2.module_dim
        if phi.shape != (dw, dv):
            raise ValueError(f"phi must be {dw}x{dv}, got {phi.shape[0]}x{phi.shape[1]}")
        self.base = base
        self.rho1 = rho1
        self.rho2 = rho2
        self.phi = phi
        self.name = name
        self._rho3: Dict[Tuple[tuple, int], Matrix] = {}
        for (x, m), mat in (rho3 or {}).items():
            x = tuple(x)
            if len(x) != g.n - 2:
                raise ValueError(f"rho3 keys need {g.n - 2} algebra indices, got {x}")
            if not 0 <= m < base.M_dim or any(not 0 <= i < g.dim for i in x):
                raise ValueError(f"rho3 key {(x, m)} out of range")
            if not isinstance(mat, Matrix):
                mat = Matrix.from_rows(mat, dw)
            if mat.shape != (dv, dw):
                raise ValueError(f"rho3 values must be {dv}x{dw}")
            sign, w = normalize_wedge(x)
            if sign == 0:
                if not mat.is_zero():
                    raise ValueError(f"rho3 at repeated indices {x} must vanish")
                continue
            key = (w, m)
            if key in self._rho3:
                raise ValueError(f"duplicate rho3 entry for {key}")
            if not mat.is_zero():
                self._rho3[key] = mat.scale(sign)

    def __eq__(self, other) -> bool:
        return isinstance(other, LMRepresentation) and self.base == other.base \
            and self.rho1 == other.rho1 and self.rho2 == other.rho2 \
            and self.phi == other.phi and self._rho3 == other._rho3

    @property
    def V_dim(self) -> int:
        return self.rho1.module_dim

    @property
    def W_dim(self) -> int:
        return self.rho2.module_dim

    @property
    def rho3_entries(self) -> Dict[Tuple[tuple, int], Matrix]:
        return dict(self._rho3)

    def rho3(self, x: Sequence[int], m: int) -> Matrix:
        sign, w = normalize_wedge(x)
        mat = self._rho3.get((w, m)) if sign else None
        if mat is None:
            return Matrix.zeros(self.V_dim, self.W_dim)
        return mat if sign == 1 else mat.scale(-1)

    def rho3_sparse(self, x: Sequence[int], m: Sparse) -> Matrix:
        out = Matrix.zeros(self.V_dim, self.W_dim)
        for k, c in m.items():
            out = out + self.rho3(x, k).scale(c)
        return out

    def __repr__(self) -> str:
        return f"LMRepresentation(dim V={self.V_dim}, dim W={self.W_dim}, name={self.name!r})"


def trivial_lm_representation(a: LMAlgebra, V_dim: int, W_dim: int,
                              phi: Optional[Matrix] = None) -> LMRepresentation:
    """Zero actions on ``(V, W)``; ``phi`` defaults to zero."""
    phi = phi if phi is not None else Matrix.zeros(W_dim, V_dim)
    return LMRepresentation(a, trivial_representation(a.g, V_dim), trivial_representation(a.g, W_dim),
                            phi, {}, "trivial")


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def validate_lm_representation(r: LMRepresentation, base: Optional[LMAlgebra] = None,
                               full: bool = False) -> Report:
    """Check the six compatibility conditions exhaustively on basis tuples.

    With ``full=True`` the representations ``rho1`` and ``rho2`` are validated too.
    """
    a = base or r.base
    g, n = a.g, a.n
    rep = Report(f"LM representation {r.name}".strip())
    if full:
        rep.extend(validate_representation(r.rho1), "rho1 ")
        rep.extend(validate_representation(r.rho2), "rho2 ")
    for name in CONDITIONS:
        rep.check(name)
    phi = r.phi
    L1 = wedge_basis(g.dim, n - 1)
    L2 = wedge_basis(g.dim, n - 2)
    fcols = [{i: c for i, c in enumerate(a.f.column(m)) if c} for m in range(a.M_dim)]
    rhom = {X: a.rho.of(X) for X in L1}

    def at_vector(x, mvec) -> Matrix:
        return r.rho3_sparse(x, mvec)

    def col(mat: Matrix, m: int) -> Sparse:
        return {i: c for i, c in enumerate(mat.column(m)) if c}

    # phi rho1(X) = rho2(X) phi
    chk = rep.get(CONDITIONS[0])
    for X in L1:
        _record_matrix(chk, (X,), phi @ r.rho1.of(X) - r.rho2.of(X) @ phi)
    # phi rho3(z, m) = rho2(z, f m)
    chk = rep.get(CONDITIONS[1])
    for z in L2:
        for m in range(a.M_dim):
            _record_matrix(chk, (z, m), phi @ r.rho3(z, m) - r.rho2.of_sparse(z, fcols[m]))
    # rho1(X) rho3(y, m) = rho3(y, rho(X) m) + rho3(y, m) rho2(X) + sum rho3(..[X, y_i].., m)
    chk = rep.get(CONDITIONS[2])
    for X in L1:
        for y in L2:
            for m in range(a.M_dim):
                res = r.rho1.of(X) @ r.rho3(y, m) - at_vector(y, col(rhom[X], m)) - r.rho3(y, m) @ r.rho2.of(X)
                for i in range(n - 2):
                    for k, c in g.bracket_basis(X + (y[i],)).items():
                        res = res - r.rho3(y[:i] + (k,) + y[i + 1:], m).scale(c)
                _record_matrix(chk, (X, y, m), res)
    # rho3(x, rho(y) m) = rho1(y) rho3(x, m) + sum_{i<n} (-1)^{n-i} rho3(^y_i, m) rho2(x, y_i)
    chk = rep.get(CONDITIONS[3])
    for x in L2:
        for y in L1:
            for m in range(a.M_dim):
                res = at_vector(x, col(rhom[y], m)) - r.rho1.of(y) @ r.rho3(x, m)
                for i in range(n - 1):
                    s = _sign(n - (i + 1))
                    res = res - (r.rho3(y[:i] + y[i + 1:], m) @ r.rho2.of(x + (y[i],))).scale(s)
                _record_matrix(chk, (x, y, m), res)
    # rho3(x', [y], m) = sum_i (-1)^{n-i} rho1(^y_i) rho3(x', y_i, m), x' of length n-3
    chk = rep.get(CONDITIONS[4])
    if n >= 3:
        for x in wedge_basis(g.dim, n - 3):
            for y in wedge_basis(g.dim, n):
                for m in range(a.M_dim):
                    res = Matrix.zeros(r.V_dim, r.W_dim)
                    for k, c in g.bracket_basis(y).items():
                        res = res + r.rho3(x + (k,), m).scale(c)
                    for i in range(n):
                        s = _sign(n - (i + 1))
                        res = res - (r.rho1.of(y[:i] + y[i + 1:]) @ r.rho3(x + (y[i],), m)).scale(s)
                    _record_matrix(chk, (x, y, m), res)
    # rho3(x, m) rho2(y) = rho1(y) rho3(x, m) + sum_{i<n} (-1)^{n-i} rho3(^y_i, rho(x, y_i) m)
    chk = rep.get(CONDITIONS[5])
    for x in L2:
        for y in L1:
            for m in range(a.M_dim):
                res = r.rho3(x, m) @ r.rho2.of(y) - r.rho1.of(y) @ r.rho3(x, m)
                for i in range(n - 1):
                    s = _sign(n - (i + 1))
                    mv = col(a.rho.of(x + (y[i],)), m)
                    res = res - at_vector(y[:i] + y[i + 1:], mv).scale(s)
                _record_matrix(chk, (x, y, m), res)
    return rep


def _require(rep: Report) -> None:
    if not rep.passed:
        raise ValidationError(rep)


def adjoint_lm_representation(a: LMAlgebra, check: bool = True) -> LMRepresentation:
    """``(V, W, phi) = (M, g, f)`` with ``rho1 = rho``, ``rho2 = ad`` and
    ``rho3(x_1..x_{n-2}, m)(w) = -rho(x_1..x_{n-2}, w)(m)``."""
    if check:
        _require(validate_lm(a))
    g = a.g
    from .representations import adjoint_representation

    rho3 = {}
    for x in wedge_basis(g.dim, g.n - 2):
        for m in range(a.M_dim):
            cols = []
            for w in range(g.dim):
                cols.append([-c for c in a.rho.of(x + (w,)).column(m)])
            mat = Matrix.from_columns(cols, a.M_dim)
            if not mat.is_zero():
                rho3[(x, m)] = mat
    return LMRepresentation(a, a.rho, adjoint_representation(g), a.f, rho3, f"adjoint {a.name}".strip())


def lm_semidirect(a: LMAlgebra, r: LMRepresentation, check: bool = True) -> LMAlgebra:
    """The LM algebra ``(M ⊕ V, g ⊕ W, f + phi)``.

    ``[x_1 + w_1, .., x_n + w_n] = [x] + sum_i (-1)^{n-i} rho2(^x_i) w_i`` and
    ``x + w`` acts on ``m + v`` by
    ``rho(x) m + rho1(x) v + sum_{i<n} (-1)^{n-i} rho3(^x_i, m) w_i``.
    Basis order puts ``g`` before ``W`` and ``M`` before ``V``.
    """
    if check:
        _require(validate_lm(a))
        _require(validate_lm_representation(r, a))
    return twisted_semidirect(a, r, name=f"{a.name} ⋉ {r.name}".strip())


def twisted_semidirect(a: LMAlgebra, r: LMRepresentation,
                       omega: Optional[Callable[[tuple], Sparse]] = None,
                       nu: Optional[Callable[[tuple, int], Sparse]] = None,
                       theta: Optional[Matrix] = None, name: str = "") -> LMAlgebra:
    """Semidirect product structure with the ``g``-parts shifted by a 2-cochain.

    ``omega(x)`` (sorted ``n``-tuple) is added to ``[x]``, ``nu(X, m)`` to
    ``rho(X) m`` and ``theta(m)`` to ``f(m)``, all landing in the kernel.
    """
    g, n = a.g, a.n
    dg, dw, dm, dv = g.dim, r.W_dim, a.M_dim, r.V_dim
    base = semidirect_product(r.rho2, check=False)
    table = {k: dict(v) for k, v in base.tensor.entries.items()}
    if omega is not None:
        for x in wedge_basis(dg, n):
            extra = {dg + k: c for k, c in omega(x).items() if c}
            if extra:
                vec = table.setdefault(x, {})
                for k, c in extra.items():
                    vec[k] = vec.get(k, 0) + c
    gh = NLieAlgebra(n, dg + dw, table, base.name)
    rho = {}
    for X in wedge_basis(dg + dw, n - 1):
        k = sum(1 for i in X if i >= dg)
        if k == 0:
            data = [dict(row) for row in a.rho.of(X)._data] + [dict() for _ in range(dv)]
            for j, row in enumerate(r.rho1.of(X)._data):
                data[dm + j] = {dm + c: x for c, x in row.items()}
            if nu is not None:
                for m in range(dm):
                    for j, c in nu(X, m).items():
                        if c:
                            data[dm + j][m] = data[dm + j].get(m, 0) + c
        elif k == 1:
            # the W index sorts last, so only the i = n-1 term survives, sign -1
            u = X[-1] - dg
            xhat = X[:-1]
            data = [dict() for _ in range(dm + dv)]
            for m in range(dm):
                for row, c in enumerate(r.rho3(xhat, m).column(u)):
                    if c:
                        data[dm + row][m] = -c
        else:
            continue
        mat = Matrix.from_sparse(dm + dv, dm + dv, data)
        if not mat.is_zero():
            rho[X] = mat
    bottom_left = theta if theta is not None else Matrix.zeros(dw, dm)
    fh = Matrix.hstack([
        Matrix.vstack([a.f, bottom_left]),
        Matrix.vstack([Matrix.zeros(dg, dv), r.phi]),
    ])
    return LMAlgebra(Representation(gh, dm + dv, rho, "semidirect action"), fh, name)
