"""Wedge-power bookkeeping, skew tensors and block cochains.

Indices are 0-based in memory (files and reports use 1-based indices).  A
*wedge index* is a strictly increasing tuple; the canonical basis of
``∧^k g`` is :func:`wedge_basis` in lexicographic order.

Cochain spaces are products of slots: ``p`` wedge blocks of a fixed arity,
then plain trailing slots, then the target coordinate.  Elements are flat
tuples in row-major order over exactly that slot sequence.

Coboundary matrices are assembled by evaluating formulas on a *symbolic*
cochain: evaluation returns, per target coordinate, a sparse linear form
``{flat input index: coefficient}``.  The helpers ``lf_*`` manipulate such
linear-form vectors.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, prod
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exactlinalg import Matrix, q

Wedge = Tuple[int, ...]
Sparse = Dict[int, object]  # index -> exact rational
LinForm = Dict[int, object]
LinVec = List[LinForm]

__all__ = [
    "BlockCochain",
    "CochainSpace",
    "SkewTensor",
    "expand",
    "lf_add",
    "lf_apply",
    "lf_is_zero",
    "lf_to_matrix_rows",
    "lf_zero",
    "normalize_wedge",
    "sparse_add",
    "sparse_apply",
    "sparse_scale",
    "sparse_to_vector",
    "vector_to_sparse",
    "wedge_basis",
    "wedge_position",
]


# -- wedge indices ----------------------------------------------------------

@lru_cache(maxsize=None)
def _wedge_basis(dim: int, arity: int) -> Tuple[Wedge, ...]:
    if arity < 0 or arity > dim:
        return ((),) if arity == 0 else ()
    return tuple(itertools.combinations(range(dim), arity))


def wedge_basis(dim: int, arity: int) -> List[Wedge]:
    """All strictly increasing ``arity``-tuples from ``range(dim)``, lexicographic."""
    return list(_wedge_basis(dim, arity))


@lru_cache(maxsize=None)
def wedge_position(dim: int, arity: int) -> Dict[Wedge, int]:
    """Map from wedge index to its position in :func:`wedge_basis`."""
    return {w: k for k, w in enumerate(_wedge_basis(dim, arity))}


def normalize_wedge(indices: Sequence[int]) -> Tuple[int, Optional[Wedge]]:
    """Sort ``indices`` and return ``(sign, sorted tuple)``; ``(0, None)`` on a repeat."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


# -- sparse vectors ---------------------------------------------------------

def sparse_add(acc: Sparse, vec: Sparse, c=1) -> Sparse:
    """``acc += c * vec`` in place; returns ``acc``."""
    if c == 0:
        return acc
    for k, x in vec.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def sparse_scale(c, vec: Sparse) -> Sparse:
    if c == 0:
        return {}
    return {k: c * x for k, x in vec.items()}


def sparse_apply(m: Matrix, vec: Sparse) -> Sparse:
    """Matrix times a sparse column vector."""
    out: Sparse = {}
    if not vec:
        return out
    for i in range(m.rows):
        row = m._data[i]
        s = 0
        if len(row) < len(vec):
            for j, a in row.items():
                b = vec.get(j)
                if b:
                    s += a * b
        else:
            for j, b in vec.items():
                a = row.get(j)
                if a:
                    s += a * b
        if s:
            out[i] = s
    return out


def sparse_to_vector(vec: Sparse, n: int) -> tuple:
    return tuple(q(vec.get(i, 0)) for i in range(n))


def vector_to_sparse(v: Sequence) -> Sparse:
    return {i: q(x) for i, x in enumerate(v) if x != 0}


def expand(args: Sequence[Sparse]) -> Iterator[Tuple[Tuple[int, ...], object]]:
    """Multilinear expansion: yield ``(index tuple, product of coefficients)``."""
    if not args:
        yield (), 1
        return
    items = [list(a.items()) for a in args]
    for combo in itertools.product(*items):
        c = 1
        for _, x in combo:
            c *= x
        if c:
            yield tuple(i for i, _ in combo), c


# -- linear-form vectors ----------------------------------------------------

def lf_zero(n: int) -> LinVec:
    return [dict() for _ in range(n)]


def lf_add(acc: LinVec, vec: LinVec, c=1) -> LinVec:
    """``acc += c * vec`` coordinate-wise, in place."""
    if c == 0:
        return acc
    for a, v in zip(acc, vec):
        for k, x in v.items():
            y = a.get(k, 0) + c * x
            if y:
                a[k] = y
            else:
                a.pop(k, None)
    return acc


def lf_apply(m: Matrix, vec: LinVec, c=1) -> LinVec:
    """``c * m @ vec`` where ``vec`` holds one linear form per coordinate."""
    out = lf_zero(m.rows)
    if c == 0:
        return out
    for i in range(m.rows):
        acc = out[i]
        for j, a in m._data[i].items():
            form = vec[j]
            if not form:
                continue
            s = c * a
            for k, x in form.items():
                y = acc.get(k, 0) + s * x
                if y:
                    acc[k] = y
                else:
                    acc.pop(k, None)
    return out


def lf_is_zero(vec: LinVec) -> bool:
    return all(not form for form in vec)


def lf_to_matrix_rows(vecs: Iterable[LinVec]) -> List[Dict[int, object]]:
    rows: List[Dict[int, object]] = []
    for vec in vecs:
        rows.extend(vec)
    return rows


# -- tensors ------------------------------------------------------------------

class SkewTensor:
    """Totally skew-symmetric multilinear map ``∧^arity k^dim -> k^target_dim``.

    ``entries`` maps strictly increasing index tuples to sparse target vectors.
    """

    __slots__ = ("arity", "dim", "target_dim", "entries")

    def __init__(self, arity: int, dim: int, target_dim: int, entries=None):
        self.arity = arity
        self.dim = dim
        self.target_dim = target_dim
        self.entries: Dict[Wedge, Sparse] = {}
        for key, value in (entries or {}).items():
            sign, w = normalize_wedge(key)
            if sign == 0 or len(key) != arity:
                raise ValueError(f"bad skew key {key!r}")
            if any(not 0 <= i < dim for i in w):
                raise IndexError(f"index out of range in {key!r}")
            if isinstance(value, dict):
                vec = {k: q(x) for k, x in value.items() if x != 0}
            else:
                vec = vector_to_sparse(value)
            if any(not 0 <= k < target_dim for k in vec):
                raise IndexError(f"target index out of range in {key!r}")
            if w in self.entries:
                raise ValueError(f"duplicate skew key {key!r}")
            if vec:
                self.entries[w] = sparse_scale(sign, vec)

    def evaluate_sparse(self, args: Sequence[int]) -> Sparse:
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        sign, w = normalize_wedge(args)
        if sign == 0:
            return {}
        vec = self.entries.get(w)
        if not vec:
            return {}
        return vec if sign == 1 else sparse_scale(-1, vec)

    def evaluate(self, args: Sequence[int]) -> tuple:
        """Value on basis arguments, as a dense tuple."""
        return sparse_to_vector(self.evaluate_sparse(args), self.target_dim)

    def apply(self, elements: Sequence[Sparse]) -> Sparse:
        """Value on general (sparse) arguments, by multilinearity."""
        out: Sparse = {}
        for idx, c in expand(elements):
            sparse_add(out, self.evaluate_sparse(idx), c)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SkewTensor)
            and (self.arity, self.dim, self.target_dim) == (other.arity, other.dim, other.target_dim)
            and self.entries == other.entries
        )


class CochainSpace:
    """Slot layout ``(∧^a)^{⊗p} ⊗ trailing slots -> target``.

    Flat index order is row-major over ``(block_1, …, block_p, t_1, …, t_r, target)``
    with blocks indexed by their position in the wedge basis.
    """

    def __init__(self, dim: int, block_arity: int, blocks: int,
                 trailing: Sequence[int] = (), target_dim: int = 1):
        self.dim = dim
        self.block_arity = block_arity
        self.blocks = blocks
        self.trailing = tuple(trailing)
        self.target_dim = target_dim
        self.wbasis = _wedge_basis(dim, block_arity)
        self.wpos = wedge_position(dim, block_arity)
        self.nw = len(self.wbasis)
        self.shape = (self.nw,) * blocks + self.trailing + (target_dim,)
        self.strides = []
        s = 1
        for extent in reversed(self.shape):
            self.strides.append(s)
            s *= extent
        self.strides.reverse()
        self.size = s

    def __eq__(self, other) -> bool:
        return isinstance(other, CochainSpace) and (
            self.dim, self.block_arity, self.blocks, self.trailing, self.target_dim
        ) == (other.dim, other.block_arity, other.blocks, other.trailing, other.target_dim)

    def __repr__(self) -> str:
        return (f"CochainSpace(dim={self.dim}, block_arity={self.block_arity}, "
                f"blocks={self.blocks}, trailing={self.trailing}, target={self.target_dim})")

    def expected_size(self) -> int:
        return comb(self.dim, self.block_arity) ** self.blocks * prod(self.trailing) * self.target_dim

    def argument_tuples(self) -> Iterator[Tuple[Tuple[Wedge, ...], Tuple[int, ...]]]:
        """All basis arguments ``(blocks, trailing)`` in flat order."""
        for bl in itertools.product(self.wbasis, repeat=self.blocks):
            for tr in itertools.product(*(range(d) for d in self.trailing)):
                yield bl, tr

    def base_index(self, block_pos: Sequence[int], trailing: Sequence[int]) -> int:
        k = 0
        for i, b in enumerate(block_pos):
            k += b * self.strides[i]
        off = self.blocks
        for i, t in enumerate(trailing):
            k += t * self.strides[off + i]
        return k

    def locate(self, blocks: Sequence[Sequence[int]], trailing: Sequence[int]) -> Tuple[int, int]:
        """``(sign, base flat index)`` for arbitrary block tuples; sign 0 on a repeat."""
        sign = 1
        pos = []
        for b in blocks:
            s, w = normalize_wedge(b)
            if s == 0:
                return 0, -1
            sign *= s
            pos.append(self.wpos[w])
        return sign, self.base_index(pos, trailing)

    def unflatten(self, k: int) -> Tuple[Tuple[Wedge, ...], Tuple[int, ...], int]:
        coords = []
        for s in self.strides:
            coords.append(k // s)
            k %= s
        blocks = tuple(self.wbasis[c] for c in coords[: self.blocks])
        trailing = tuple(coords[self.blocks: self.blocks + len(self.trailing)])
        return blocks, trailing, coords[-1]

    def symbolic(self, blocks: Sequence[Sequence[int]], trailing: Sequence[int], c=1) -> LinVec:
        """Linear forms giving the value of a generic cochain at basis arguments."""
        out = lf_zero(self.target_dim)
        sign, base = self.locate(blocks, trailing)
        if sign == 0 or c == 0:
            return out
        for t in range(self.target_dim):
            out[t][base + t] = sign * c
        return out

    def symbolic_into(self, acc: LinVec, blocks, trailing, c=1) -> None:
        """``acc += c * (generic cochain at basis arguments)``."""
        if c == 0:
            return
        sign, base = self.locate(blocks, trailing)
        if sign == 0:
            return
        c = sign * c
        for t in range(self.target_dim):
            form = acc[t]
            y = form.get(base + t, 0) + c
            if y:
                form[base + t] = y
            else:
                form.pop(base + t, None)

    def zero(self) -> "BlockCochain":
        return BlockCochain(self, (0,) * self.size)


class BlockCochain:
    """Element of a :class:`CochainSpace`, stored as a flat exact vector.

    Skew within each wedge block; no symmetry across blocks.
    """

    __slots__ = ("space", "values")

    def __init__(self, space: CochainSpace, values: Sequence):
        if len(values) != space.size:
            raise ValueError(f"expected {space.size} values, got {len(values)}")
        self.space = space
        self.values = tuple(q(x) for x in values)

    @classmethod
    def from_function(cls, space: CochainSpace, fn) -> "BlockCochain":
        """Build from ``fn(blocks, trailing) -> target vector`` on basis arguments."""
        vals = [0] * space.size
        for bl, tr in space.argument_tuples():
            _, base = space.locate(bl, tr)
            vec = fn(bl, tr)
            if isinstance(vec, dict):
                vec = sparse_to_vector(vec, space.target_dim)
            for t, x in enumerate(vec):
                vals[base + t] = x
        return cls(space, vals)

    def evaluate_sparse(self, blocks, trailing=()) -> Sparse:
        sign, base = self.space.locate(blocks, trailing)
        if sign == 0:
            return {}
        out = {}
        for t in range(self.space.target_dim):
            x = self.values[base + t]
            if x:
                out[t] = sign * x
        return out

    def evaluate(self, blocks, trailing=()) -> tuple:
        if len(blocks) != self.space.blocks or len(trailing) != len(self.space.trailing):
            raise ValueError("argument shape does not match the cochain's slots")
        for b in blocks:
            if len(b) != self.space.block_arity:
                raise ValueError("wedge block of the wrong arity")
        return sparse_to_vector(self.evaluate_sparse(blocks, trailing), self.space.target_dim)

    def __add__(self, other: "BlockCochain") -> "BlockCochain":
        if self.space != other.space:
            raise ValueError("cochains live in different spaces")
        return BlockCochain(self.space, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "BlockCochain") -> "BlockCochain":
        if self.space != other.space:
            raise ValueError("cochains live in different spaces")
        return BlockCochain(self.space, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c) -> "BlockCochain":
        return BlockCochain(self.space, [c * a for a in self.values])

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, BlockCochain) and self.space == other.space and self.values == other.values
