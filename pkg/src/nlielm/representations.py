"""Representations of n-Lie algebras and Leibniz modules.

A representation ``rho`` assigns to every ``(n-1)``-tuple of elements of ``g``
an endomorphism of ``V``, skew in the tuple, subject to

    (R1)  [rho(x), rho(y)] = rho(x∘y)
    (R2)  rho(x_1..x_{n-2}, [y_1..y_n]) = sum_i (-1)^{n-i} rho(y_1..^y_i..y_n) rho(x_1..x_{n-2}, y_i)

Equivalently, ``Hom(g, V)`` with the actions built in :func:`hom_module` is a
Leibniz module over the fundamental objects ``∧^{n-1} g``.
"""

from __future__ import annotations

import itertools
from typing import Dict, Mapping, Optional, Sequence

from .exactlinalg import Matrix
from .multilinear import (
    Sparse,
    Wedge,
    normalize_wedge,
    sparse_apply,
    wedge_basis,
)
from .nlie_core import (
    LeibnizAlgebra,
    LeibnizNAlgebra,
    NLieAlgebra,
    ValidationError,
    fundamental_leibniz,
)
from .reports import Report

__all__ = [
    "LeibnizModule",
    "Representation",
    "adjoint_representation",
    "hemisemidirect_product",
    "hom_module",
    "semidirect_product",
    "trivial_representation",
    "validate_leibniz_module",
    "validate_representation",
]


class Representation:
    """``rho`` stored on increasing ``(n-1)``-tuples as ``module_dim`` square matrices."""

    def __init__(self, algebra: NLieAlgebra, module_dim: int, rho: Optional[Mapping] = None, name: str = ""):
        self.algebra = algebra
        self.module_dim = module_dim
        self.name = name
        self.n = algebra.n
        self.rho: Dict[Wedge, Matrix] = {}
        for key, mat in (rho or {}).items():
            key = tuple(key)
            if len(key) != self.n - 1 or any(not 0 <= i < algebra.dim for i in key):
                raise ValueError(f"bad action key {key!r}")
            if not isinstance(mat, Matrix):
                mat = Matrix.from_rows(mat, module_dim)
            if mat.shape != (module_dim, module_dim):
                raise ValueError(f"action matrix for {key!r} must be {module_dim}x{module_dim}")
            sign, w = normalize_wedge(key)
            if sign == 0:
                if not mat.is_zero():
                    raise ValueError(f"action on repeated arguments {key!r} must vanish")
                continue
            if w in self.rho:
                raise ValueError(f"duplicate action key {key!r}")
            if not mat.is_zero():
                self.rho[w] = mat if sign == 1 else mat.scale(-1)
        self._zero = Matrix.zeros(module_dim, module_dim)

    def __eq__(self, other) -> bool:
        return isinstance(other, Representation) and self.algebra == other.algebra \
            and self.module_dim == other.module_dim and self.rho == other.rho

    def __repr__(self) -> str:
        return f"Representation(dim V={self.module_dim}, {self.algebra!r})"

    def of(self, x: Sequence[int]) -> Matrix:
        """``rho(x_1..x_{n-1})`` for basis indices in any order."""
        sign, w = normalize_wedge(x)
        if sign == 0:
            return self._zero
        m = self.rho.get(w)
        if m is None:
            return self._zero
        return m if sign == 1 else m.scale(-1)

    def of_sparse(self, x: Sequence[int], last: Sparse) -> Matrix:
        """``rho(x_1..x_{n-2}, last)`` with a general last argument."""
        out = self._zero
        for k, c in last.items():
            out = out + self.of(tuple(x) + (k,)).scale(c)
        return out

    def apply(self, x: Sequence[int], v: Sparse) -> Sparse:
        sign, w = normalize_wedge(x)
        if sign == 0 or w not in self.rho:
            return {}
        out = sparse_apply(self.rho[w], v)
        return out if sign == 1 else {k: -c for k, c in out.items()}


def trivial_representation(a: NLieAlgebra, module_dim: int) -> Representation:
    return Representation(a, module_dim, {}, f"trivial dim {module_dim}")


def adjoint_representation(a: NLieAlgebra) -> Representation:
    rho = {w: a.ad(w) for w in wedge_basis(a.dim, a.n - 1)}
    return Representation(a, a.dim, rho, "adjoint")


def _r1_residuals(r: Representation, L: LeibnizAlgebra):
    basis = L.labels
    for i, x in enumerate(basis):
        rx = r.of(x)
        for j, y in enumerate(basis):
            ry = r.of(y)
            res = rx @ ry - ry @ rx
            for k, c in L.circ(i, j).items():
                res = res - r.of(basis[k]).scale(c)
            yield (x, y), res


def _r1_bracketed_residuals(r: Representation):
    """Weak form: rho(x)rho(y) - rho(y)rho(x) - sum_i rho(y_1..[x, y_i]..y_{n-1})."""
    a = r.algebra
    basis = wedge_basis(a.dim, a.n - 1)
    for x in basis:
        rx = r.of(x)
        for y in basis:
            ry = r.of(y)
            res = rx @ ry - ry @ rx
            for s in range(len(y)):
                for k, c in a.bracket_basis(x + (y[s],)).items():
                    args = list(y)
                    args[s] = k
                    res = res - r.of(args).scale(c)
            yield (x, y), res


def _r2_residuals(r: Representation):
    a = r.algebra
    n = a.n
    for x in wedge_basis(a.dim, n - 2):
        for y in wedge_basis(a.dim, n):
            res = r.of_sparse(x, a.bracket_basis(y))
            for i in range(n):
                yhat = y[:i] + y[i + 1:]
                sign = -1 if (n - 1 - i) % 2 else 1  # (-1)^{n-i} with 1-based i
                res = res - (r.of(yhat) @ r.of(x + (y[i],))).scale(sign)
            yield (x, y), res


def _record_matrix(chk, args, res: Matrix) -> None:
    """Record a matrix identity; the witness names the first failing column."""
    if res.is_zero():
        chk.record(args, ())
        return
    for j in range(res.cols):
        col = res.column(j)
        if any(col):
            chk.record(tuple(args) + (j,), col)
            return


def validate_representation(r: Representation, mode: str = "full") -> Report:
    """Check (R1) and, in ``full`` mode, (R2) on all basis tuples."""
    if mode not in ("full", "weak"):
        raise ValueError("mode must be 'full' or 'weak'")
    rep = Report(f"representation {r.name}".strip() + f" ({mode})")
    if mode == "weak":
        chk = rep.check("R1")
        for args, res in _r1_bracketed_residuals(r):
            _record_matrix(chk, args, res)
        return rep
    L = fundamental_leibniz(r.algebra, check=False)
    chk = rep.check("R1")
    for args, res in _r1_residuals(r, L):
        _record_matrix(chk, args, res)
    chk = rep.check("R2")
    for args, res in _r2_residuals(r):
        _record_matrix(chk, args, res)
    return rep


def _require(rep: Report) -> None:
    if not rep.passed:
        raise ValidationError(rep)


def semidirect_product(r: Representation, check: bool = True) -> NLieAlgebra:
    """n-Lie algebra on ``g ⊕ V``: ``[x + u] = [x] + sum_i (-1)^{n-i} rho(x_1..^x_i..x_n) u_i``."""
    a = r.algebra
    if check:
        _require(validate_representation(r, "full"))
    dg, n = a.dim, a.n
    table = {}
    for idx, v in a.structure.items():
        table[idx] = v
    # a V-index sorts last, so the only surviving term is rho(x_1..x_{n-1}) u_n
    for x in wedge_basis(dg, n - 1):
        m = r.of(x)
        for u in range(r.module_dim):
            col = m.column(u)
            vec = {dg + k: c for k, c in enumerate(col) if c}
            if vec:
                table[x + (dg + u,)] = vec
    return NLieAlgebra(n, dg + r.module_dim, table, f"{a.name} ⋉ V".strip())


def hemisemidirect_product(r: Representation, check: bool = True) -> LeibnizNAlgebra:
    """Leibniz n-algebra on ``g ⊕ V``: ``[x + u]_H = [x] + rho(x_1..x_{n-1}) u_n``."""
    a = r.algebra
    if check:
        _require(validate_representation(r, "full"))
    dg, n = a.dim, a.n
    table = {}
    for idx in itertools.product(range(dg), repeat=n):
        v = a.bracket_basis(idx)
        if v:
            table[idx] = v
    for x in itertools.product(range(dg), repeat=n - 1):
        m = r.of(x)
        for u in range(r.module_dim):
            vec = {dg + k: c for k, c in enumerate(m.column(u)) if c}
            if vec:
                table[x + (dg + u,)] = vec
    return LeibnizNAlgebra(n, dg + r.module_dim, table, f"{a.name} ⋉_H V".strip())


# -- Leibniz modules ----------------------------------------------------------

class LeibnizModule:
    """Left and right actions of a Leibniz algebra, one matrix per basis element.

    ``left[x] m = [x, m]_L`` and ``right[x] m = [m, x]_R``.
    """

    def __init__(self, algebra: LeibnizAlgebra, dim: int, left: Sequence[Matrix], right: Sequence[Matrix],
                 name: str = ""):
        if len(left) != algebra.dim or len(right) != algebra.dim:
            raise ValueError("need one left and one right matrix per basis element")
        for m in list(left) + list(right):
            if m.shape != (dim, dim):
                raise ValueError("action matrices must be square of the module dimension")
        self.algebra = algebra
        self.dim = dim
        self.left = list(left)
        self.right = list(right)
        self.name = name

    def left_of(self, x: Sparse) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for k, c in x.items():
            out = out + self.left[k].scale(c)
        return out

    def right_of(self, x: Sparse) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for k, c in x.items():
            out = out + self.right[k].scale(c)
        return out


def validate_leibniz_module(m: LeibnizModule, axioms: Sequence[str] = ("LLM", "LML", "MLL", "MMM")) -> Report:
    """Check the Leibniz module axioms as matrix identities on basis pairs."""
    rep = Report(f"Leibniz module {m.name}".strip())
    alg = m.algebra
    labels = alg.labels
    checks = {ax: rep.check(ax) for ax in axioms}
    for i in range(alg.dim):
        Li, Ri = m.left[i], m.right[i]
        for j in range(alg.dim):
            Lj, Rj = m.left[j], m.right[j]
            xy = alg.circ(i, j)
            args = (labels[i], labels[j])
            if "LLM" in checks:
                _record_matrix(checks["LLM"], args, m.left_of(xy) - (Li @ Lj - Lj @ Li))
            if "LML" in checks or "MLL" in checks:
                Rxy = m.right_of(xy)
                if "LML" in checks:
                    _record_matrix(checks["LML"], args, Rxy - (Rj @ Ri + Li @ Rj))
                if "MLL" in checks:
                    _record_matrix(checks["MLL"], args, Rxy - (Li @ Rj - Rj @ Li))
            if "MMM" in checks:
                _record_matrix(checks["MMM"], args, Rj @ Ri + Rj @ Li)
    return rep


def hom_module(r: Representation) -> LeibnizModule:
    """Leibniz module structure on ``Hom(g, V)`` over ``L = ∧^{n-1} g``.

    ``Phi`` is flattened row-major as a ``dim V x dim g`` matrix.  The actions are

        [X, Phi]_L = rho(X) Phi - Phi ad(X)
        [Phi, X]_R(z) = Phi([X, z]) - sum_{i=1}^{n} (-1)^{n-i} rho(x_1..^x_i..x_n) Phi(x_i),  x_n = z.
    """
    a = r.algebra
    n, dg, dv = a.n, a.dim, r.module_dim
    L = fundamental_leibniz(a, check=False)
    Ig, Iv = Matrix.identity(dg), Matrix.identity(dv)
    left, right = [], []
    for X in L.labels:
        adX = a.ad(X)
        rhoX = r.of(X)
        left.append(rhoX.kron(Ig) - Iv.kron(adX.transpose()))
        R = Iv.kron(adX.transpose()) - rhoX.kron(Ig)
        data = [dict() for _ in range(dv * dg)]
        for i in range(n - 1):
            xhat = X[:i] + X[i + 1:]
            sign = -1 if (n - 1 - i) % 2 else 1
            for z in range(dg):
                mz = r.of(xhat + (z,))
                for aa, row in enumerate(mz._data):
                    for b, c in row.items():
                        key = b * dg + X[i]
                        tgt = data[aa * dg + z]
                        tgt[key] = tgt.get(key, 0) - sign * c
        R = R + Matrix.from_sparse(dv * dg, dv * dg, data)
        right.append(R)
    return LeibnizModule(L, dv * dg, left, right, f"Hom(g, V) for {r.name}".strip())
