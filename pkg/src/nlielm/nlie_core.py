"""n-Lie algebras, Leibniz n-algebras and the Leibniz algebra of fundamental objects.

An n-Lie algebra is a totally skew n-ary bracket obeying the fundamental identity

    [x_1..x_{n-1}, [y_1..y_n]] = sum_i [y_1.., [x_1..x_{n-1}, y_i], ..y_n].

Dropping skew-symmetry gives a Leibniz n-algebra.  Elements are sparse dicts
``{basis index: coefficient}``; brackets of basis elements are looked up from
structure constants.
"""

from __future__ import annotations

import itertools
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .exactlinalg import Matrix, q
from .multilinear import (
    SkewTensor,
    Sparse,
    Wedge,
    expand,
    normalize_wedge,
    sparse_add,
    sparse_apply,
    sparse_scale,
    sparse_to_vector,
    vector_to_sparse,
    wedge_basis,
    wedge_position,
)
from .reports import Report

__all__ = [
    "LeibnizAlgebra",
    "LeibnizNAlgebra",
    "NLieAlgebra",
    "ValidationError",
    "abelian",
    "ad",
    "fundamental_leibniz",
    "is_nlie_homomorphism",
    "validate_leibniz_algebra",
    "validate_leibniz_n",
    "validate_n_lie",
]


class ValidationError(ValueError):
    """Raised when an operation needs a validated input and validation fails."""

    def __init__(self, report: Report):
        self.report = report
        super().__init__(f"{report.title} failed: {', '.join(report.failed_checks())}")


def _coerce_sparse(value, dim: int) -> Sparse:
    if isinstance(value, Mapping):
        vec = {int(k): q(x) for k, x in value.items() if x != 0}
    else:
        if len(value) != dim:
            raise ValueError(f"vector of length {len(value)} in a space of dimension {dim}")
        vec = vector_to_sparse(value)
    for k in vec:
        if not 0 <= k < dim:
            raise IndexError(f"component {k} out of range for dimension {dim}")
    return vec


class NLieAlgebra:
    """Skew-symmetric n-bracket on ``k^dim`` given by structure constants.

    ``brackets`` maps index tuples (any order) to the bracket value; the
    entry is normalized to increasing order with the sorting sign.
    """

    def __init__(self, n: int, dim: int, brackets: Optional[Mapping] = None, name: str = ""):
        if n < 2:
            raise ValueError("arity must be at least 2")
        if dim < 0:
            raise ValueError("negative dimension")
        self.n = n
        self.dim = dim
        self.name = name
        entries = {}
        for key, value in (brackets or {}).items():
            key = tuple(key)
            if len(key) != n:
                raise ValueError(f"bracket key {key!r} does not have {n} entries")
            entries[key] = _coerce_sparse(value, dim)
        self.tensor = SkewTensor(n, dim, dim, entries)
        self._ad_cache: Dict[Wedge, Matrix] = {}

    @property
    def structure(self) -> Dict[Wedge, Sparse]:
        return self.tensor.entries

    def __eq__(self, other) -> bool:
        return isinstance(other, NLieAlgebra) and (self.n, self.dim) == (other.n, other.dim) \
            and self.tensor == other.tensor

    def __repr__(self) -> str:
        return f"NLieAlgebra(n={self.n}, dim={self.dim}, name={self.name!r})"

    def bracket_basis(self, idx: Sequence[int]) -> Sparse:
        return self.tensor.evaluate_sparse(idx)

    def bracket(self, *elements) -> Sparse:
        """Bracket of general elements (sparse dicts or dense sequences)."""
        if len(elements) != self.n:
            raise ValueError(f"expected {self.n} arguments")
        args = [_coerce_sparse(e, self.dim) for e in elements]
        return self.tensor.apply(args)

    def ad(self, x: Sequence[int]) -> Matrix:
        """Matrix of ``y -> [x_1..x_{n-1}, y]`` for basis indices ``x``."""
        sign, w = normalize_wedge(x)
        if sign == 0:
            return Matrix.zeros(self.dim, self.dim)
        m = self._ad_cache.get(w)
        if m is None:
            cols = [sparse_to_vector(self.bracket_basis(w + (j,)), self.dim) for j in range(self.dim)]
            m = Matrix.from_columns(cols, self.dim)
            self._ad_cache[w] = m
        return m if sign == 1 else m.scale(-1)

    def ad_apply(self, x: Sequence[int], y: Sparse) -> Sparse:
        """``[x_1..x_{n-1}, y]`` for basis ``x`` and sparse ``y``."""
        out: Sparse = {}
        for j, c in y.items():
            sparse_add(out, self.bracket_basis(tuple(x) + (j,)), c)
        return out

    def as_leibniz_n(self) -> "LeibnizNAlgebra":
        table = {}
        for idx in itertools.product(range(self.dim), repeat=self.n):
            v = self.bracket_basis(idx)
            if v:
                table[idx] = v
        return LeibnizNAlgebra(self.n, self.dim, table, self.name)

    def is_abelian(self) -> bool:
        return not self.structure


def abelian(n: int, dim: int, name: str = "") -> NLieAlgebra:
    return NLieAlgebra(n, dim, {}, name or f"abelian n={n} dim={dim}")


def ad(a: NLieAlgebra, x) -> Matrix:
    """``ad`` of a basis tuple, or of a combination ``{wedge tuple: coeff}``."""
    if isinstance(x, Mapping):
        m = Matrix.zeros(a.dim, a.dim)
        for w, c in x.items():
            m = m + a.ad(w).scale(c)
        return m
    return a.ad(tuple(x))


class LeibnizNAlgebra:
    """n-bracket without symmetry, given on every ordered basis tuple."""

    def __init__(self, n: int, dim: int, brackets: Optional[Mapping] = None, name: str = ""):
        self.n = n
        self.dim = dim
        self.name = name
        self.table: Dict[Tuple[int, ...], Sparse] = {}
        for key, value in (brackets or {}).items():
            key = tuple(key)
            if len(key) != n or any(not 0 <= i < dim for i in key):
                raise ValueError(f"bad bracket key {key!r}")
            if key in self.table:
                raise ValueError(f"duplicate bracket key {key!r}")
            vec = _coerce_sparse(value, dim)
            if vec:
                self.table[key] = vec

    def __eq__(self, other) -> bool:
        return isinstance(other, LeibnizNAlgebra) and (self.n, self.dim) == (other.n, other.dim) \
            and self.table == other.table

    def bracket_basis(self, idx: Sequence[int]) -> Sparse:
        return self.table.get(tuple(idx), {})

    def bracket(self, *elements) -> Sparse:
        args = [_coerce_sparse(e, self.dim) for e in elements]
        out: Sparse = {}
        for idx, c in expand(args):
            sparse_add(out, self.bracket_basis(idx), c)
        return out

    def is_skew(self) -> bool:
        for idx, v in self.table.items():
            sign, _ = normalize_wedge(idx)
            if sign == 0:
                return False
            # every reordering of a stored key must carry the permutation sign
            for perm in itertools.permutations(range(self.n)):
                other = tuple(idx[i] for i in perm)
                s, _ = normalize_wedge(perm)
                if self.table.get(other, {}) != sparse_scale(s, v):
                    return False
        return True

    def skew_violation(self) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """Some tuple whose value changes sign-inconsistently under a transposition."""
        for idx in itertools.product(range(self.dim), repeat=self.n):
            for i, j in itertools.combinations(range(self.n), 2):
                swapped = list(idx)
                swapped[i], swapped[j] = swapped[j], swapped[i]
                a = self.bracket_basis(idx)
                b = self.bracket_basis(tuple(swapped))
                if sparse_add(dict(a), b) != {}:
                    return idx, tuple(swapped)
        return None


def _fi_residual(br, ad_apply, x: Sequence[int], y: Sequence[int], n: int) -> Sparse:
    """``[x, [y]] - sum_i [y_1.. [x, y_i] ..y_n]`` for basis tuples."""
    inner = br(tuple(y))
    res = {}
    for k, c in inner.items():
        sparse_add(res, br(tuple(x) + (k,)), c)
    for i in range(n):
        for k, c in br(tuple(x) + (y[i],)).items():
            args = list(y)
            args[i] = k
            sparse_add(res, br(tuple(args)), -c)
    return res


def validate_n_lie(a: NLieAlgebra) -> Report:
    """Fundamental identity on all increasing basis tuples ``x`` and ``y``."""
    rep = Report(f"n-Lie algebra {a.name}".strip())
    chk = rep.check("fundamental identity")
    for x in wedge_basis(a.dim, a.n - 1):
        for y in wedge_basis(a.dim, a.n):
            r = _fi_residual(a.bracket_basis, None, x, y, a.n)
            chk.record((x, y), sparse_to_vector(r, a.dim))
    return rep


def validate_leibniz_n(a) -> Report:
    """Fundamental identity on all ordered basis tuples, no skew-symmetry assumed."""
    rep = Report(f"Leibniz n-algebra {getattr(a, 'name', '')}".strip())
    chk = rep.check("fundamental identity")
    br = a.bracket_basis
    for x in itertools.product(range(a.dim), repeat=a.n - 1):
        for y in itertools.product(range(a.dim), repeat=a.n):
            chk.record((x, y), sparse_to_vector(_fi_residual(br, None, x, y, a.n), a.dim))
    return rep


def is_nlie_homomorphism(phi: Matrix, a: NLieAlgebra, b: NLieAlgebra) -> Report:
    """``phi([x_1..x_n]) = [phi x_1..phi x_n]'`` on all increasing basis tuples."""
    if phi.shape != (b.dim, a.dim):
        raise ValueError(f"map must be {b.dim}x{a.dim}, got {phi.shape[0]}x{phi.shape[1]}")
    if a.n != b.n:
        raise ValueError("algebras have different arities")
    rep = Report("n-Lie homomorphism")
    chk = rep.check("bracket preserved")
    images = [vector_to_sparse(phi.column(j)) for j in range(a.dim)]
    for idx in wedge_basis(a.dim, a.n):
        lhs = sparse_apply(phi, a.bracket_basis(idx))
        rhs = b.tensor.apply([images[i] for i in idx])
        chk.record(idx, sparse_to_vector(sparse_add(lhs, rhs, -1), b.dim))
    return rep


# -- Leibniz algebras ---------------------------------------------------------

class LeibnizAlgebra:
    """Binary algebra on a finite basis with ``x∘(y∘z) = (x∘y)∘z + y∘(x∘z)``.

    ``products[(a, b)]`` is the sparse product of basis elements ``a``, ``b``;
    ``labels`` names the basis (wedge tuples for fundamental objects).
    """

    def __init__(self, dim: int, products: Mapping, labels: Optional[Sequence] = None, name: str = ""):
        self.dim = dim
        self.products: Dict[Tuple[int, int], Sparse] = {
            (int(a), int(b)): dict(v) for (a, b), v in products.items() if v
        }
        self.labels = list(labels) if labels is not None else list(range(dim))
        self.name = name

    def circ(self, a: int, b: int) -> Sparse:
        return self.products.get((a, b), {})

    def circ_sparse(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for a, c in x.items():
            for b, d in y.items():
                sparse_add(out, self.circ(a, b), c * d)
        return out


def validate_leibniz_algebra(alg: LeibnizAlgebra) -> Report:
    rep = Report(f"Leibniz algebra {alg.name}".strip())
    chk = rep.check("Leibniz rule")
    for a in range(alg.dim):
        for b in range(alg.dim):
            ab = alg.circ(a, b)
            for c in range(alg.dim):
                bc = alg.circ(b, c)
                ac = alg.circ(a, c)
                lhs = alg.circ_sparse({a: 1}, bc)
                rhs = alg.circ_sparse(ab, {c: 1})
                sparse_add(rhs, alg.circ_sparse({b: 1}, ac))
                res = sparse_add(lhs, rhs, -1)
                chk.record((alg.labels[a], alg.labels[b], alg.labels[c]), sparse_to_vector(res, alg.dim))
    return rep


def fundamental_leibniz(a: NLieAlgebra, check: bool = True) -> LeibnizAlgebra:
    """Leibniz algebra on ``L = ∧^{n-1} g`` with ``X∘Y = sum_i (y_1..[X, y_i]..y_{n-1})``.

    Basis element ``k`` of the result is ``wedge_basis(dim, n-1)[k]``.
    """
    if check:
        rep = validate_n_lie(a)
        if not rep.passed:
            raise ValidationError(rep)
    cached = getattr(a, "_fundamental", None)
    if cached is not None:
        return cached
    basis = wedge_basis(a.dim, a.n - 1)
    pos = wedge_position(a.dim, a.n - 1)
    products = {}
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            out: Sparse = {}
            for s in range(len(y)):
                for k, c in a.bracket_basis(x + (y[s],)).items():
                    args = list(y)
                    args[s] = k
                    sign, w = normalize_wedge(args)
                    if sign:
                        sparse_add(out, {pos[w]: sign * c})
            if out:
                products[(i, j)] = out
    alg = LeibnizAlgebra(len(basis), products, basis, f"fundamental objects of {a.name}".strip())
    a._fundamental = alg
    return alg
