"""n-Lie algebras in the Loday–Pirashvili category.

Such an object is a triple ``(M, g, f)``: an n-Lie algebra ``g``, a
representation ``rho`` of ``g`` on ``M`` and a linear map ``f: M -> g`` with

    f(rho(x_1..x_{n-1}) m) = [x_1..x_{n-1}, f(m)].

Every such triple induces a Leibniz n-bracket on ``M``,
``[m_1..m_n] = rho(f m_1..f m_{n-1}) m_n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional

from .exactlinalg import Matrix, _rref, rank
from .multilinear import (
    Sparse,
    expand,
    normalize_wedge,
    sparse_add,
    sparse_apply,
    sparse_to_vector,
    vector_to_sparse,
    wedge_basis,
    wedge_position,
)
from .nlie_core import (
    LeibnizNAlgebra,
    NLieAlgebra,
    ValidationError,
    is_nlie_homomorphism,
    validate_n_lie,
)
from .representations import (
    Representation,
    adjoint_representation,
    semidirect_product,
    validate_representation,
)
from .reports import Report

__all__ = [
    "LMAlgebra",
    "LMMorphism",
    "adjoint_lm",
    "f_intertwines",
    "hemisemidirect_projection",
    "id_plus_f_check",
    "induced_leibniz_bracket",
    "is_embedding_tensor",
    "leibniz_kernel",
    "validate_lm",
    "validate_lm_morphism",
    "wedge_power_example",
]


class LMAlgebra:
    """Triple ``(M, g, f)`` with ``rho`` a representation of ``g`` on ``M``.

    ``f`` is a ``dim g x dim M`` matrix.
    """

    def __init__(self, rho: Representation, f: Matrix, name: str = ""):
        g = rho.algebra
        if f.shape != (g.dim, rho.module_dim):
            raise ValueError(f"f must be {g.dim}x{rho.module_dim}, got {f.shape[0]}x{f.shape[1]}")
        self.rho = rho
        self.f = f
        self.name = name

    @property
    def g(self) -> NLieAlgebra:
        return self.rho.algebra

    @property
    def n(self) -> int:
        return self.rho.algebra.n

    @property
    def M_dim(self) -> int:
        return self.rho.module_dim

    def f_of(self, m: Sparse) -> Sparse:
        return sparse_apply(self.f, m)

    def __eq__(self, other) -> bool:
        return isinstance(other, LMAlgebra) and self.rho == other.rho and self.f == other.f

    def __repr__(self) -> str:
        return f"LMAlgebra(n={self.n}, dim g={self.g.dim}, dim M={self.M_dim}, name={self.name!r})"


def _equivariance(a: LMAlgebra, rep: Report, name: str = "equivariance of f") -> None:
    g, f = a.g, a.f
    chk = rep.check(name)
    for x in wedge_basis(g.dim, a.n - 1):
        rx = a.rho.of(x)
        for m in range(a.M_dim):
            lhs = sparse_apply(f, vector_to_sparse(rx.column(m)))
            rhs = g.ad_apply(x, vector_to_sparse(f.column(m)))
            chk.record((x, m), sparse_to_vector(sparse_add(lhs, rhs, -1), g.dim))


def validate_lm(a: LMAlgebra, full: bool = False) -> Report:
    """Check the equivariance of ``f``.

    With ``full=True`` also check the fundamental identity of ``g`` and
    (R1), (R2) for ``rho``, so the report certifies the whole structure.
    """
    rep = Report(f"n-Lie algebra in LM {a.name}".strip())
    if full:
        rep.extend(validate_n_lie(a.g))
        rep.extend(validate_representation(a.rho, "full"), "action ")
    _equivariance(a, rep)
    return rep


def _require(rep: Report) -> None:
    if not rep.passed:
        raise ValidationError(rep)


def is_embedding_tensor(a: LMAlgebra) -> Report:
    """``f(rho(f m_1..f m_{n-1}) m_n) = [f m_1..f m_n]``; ``data['surjective']`` records rank f."""
    g, f, n = a.g, a.f, a.n
    rep = Report("embedding tensor")
    chk = rep.check("embedding tensor identity")
    images = [vector_to_sparse(f.column(m)) for m in range(a.M_dim)]
    for ms in itertools.product(range(a.M_dim), repeat=n):
        lhs: Sparse = {}
        for idx, c in expand([images[m] for m in ms[:-1]]):
            sparse_add(lhs, sparse_apply(f, a.rho.apply(idx, {ms[-1]: 1})), c)
        rhs = g.tensor.apply([images[m] for m in ms])
        chk.record(ms, sparse_to_vector(sparse_add(lhs, rhs, -1), g.dim))
    surjective = rank(f) == g.dim
    rep.data["surjective"] = surjective
    if not surjective:
        rep.notes.append("f is not surjective; the identity is then weaker than equivariance")
    return rep


def induced_leibniz_bracket(a: LMAlgebra, check: bool = True) -> LeibnizNAlgebra:
    """Leibniz n-bracket ``[m_1..m_n] = rho(f m_1..f m_{n-1}) m_n`` on ``M``."""
    if check:
        _require(validate_lm(a))
    n = a.n
    images = [vector_to_sparse(a.f.column(m)) for m in range(a.M_dim)]
    table = {}
    for ms in itertools.product(range(a.M_dim), repeat=n):
        out: Sparse = {}
        for idx, c in expand([images[m] for m in ms[:-1]]):
            sparse_add(out, a.rho.apply(idx, {ms[-1]: 1}), c)
        if out:
            table[ms] = out
    return LeibnizNAlgebra(n, a.M_dim, table, f"induced on M of {a.name}".strip())


def f_intertwines(a: LMAlgebra, bracket: Optional[LeibnizNAlgebra] = None) -> Report:
    """``f([m_1..m_n]) = [f m_1..f m_n]`` on all basis tuples."""
    br = bracket or induced_leibniz_bracket(a, check=False)
    images = [vector_to_sparse(a.f.column(m)) for m in range(a.M_dim)]
    rep = Report("f intertwines brackets")
    chk = rep.check("f is a bracket homomorphism")
    for ms in itertools.product(range(a.M_dim), repeat=a.n):
        lhs = sparse_apply(a.f, br.bracket_basis(ms))
        rhs = a.g.tensor.apply([images[m] for m in ms])
        chk.record(ms, sparse_to_vector(sparse_add(lhs, rhs, -1), a.g.dim))
    return rep


@dataclass
class LMMorphism:
    phi0: Matrix  # g -> g'
    phi1: Matrix  # M -> M'


def validate_lm_morphism(m: LMMorphism, a: LMAlgebra, b: LMAlgebra) -> Report:
    """``f' phi1 = phi0 f``, ``phi0`` a bracket homomorphism, ``phi1`` equivariant along ``phi0``."""
    if m.phi0.shape != (b.g.dim, a.g.dim) or m.phi1.shape != (b.M_dim, a.M_dim):
        raise ValueError("morphism matrices have the wrong shape")
    rep = Report("LM morphism")
    chk = rep.check("f' phi1 = phi0 f")
    diff = b.f @ m.phi1 - m.phi0 @ a.f
    for j in range(a.M_dim):
        chk.record((j,), diff.column(j))
    hom = is_nlie_homomorphism(m.phi0, a.g, b.g)
    rep.extend(hom, "phi0 ")
    chk = rep.check("phi1 equivariant")
    images = [vector_to_sparse(m.phi0.column(j)) for j in range(a.g.dim)]
    for x in wedge_basis(a.g.dim, a.n - 1):
        for j in range(a.M_dim):
            lhs = sparse_apply(m.phi1, a.rho.apply(x, {j: 1}))
            rhs: Sparse = {}
            target = vector_to_sparse(m.phi1.column(j))
            for idx, c in expand([images[i] for i in x]):
                sparse_add(rhs, b.rho.apply(idx, target), c)
            chk.record((x, j), sparse_to_vector(sparse_add(lhs, rhs, -1), b.M_dim))
    return rep


def id_plus_f_check(a: LMAlgebra) -> Report:
    """Whether ``(x, m) -> (x, f m)`` is a homomorphism ``g ⋉ M -> g ⋉ g``."""
    g = a.g
    src = semidirect_product(a.rho, check=False)
    tgt = semidirect_product(adjoint_representation(g), check=False)
    dg, dm = g.dim, a.M_dim
    rows = []
    for i in range(2 * dg):
        row = [0] * (dg + dm)
        if i < dg:
            row[i] = 1
        else:
            for j in range(dm):
                row[dg + j] = a.f[i - dg, j]
        rows.append(row)
    phi = Matrix.from_rows(rows, dg + dm)
    rep = is_nlie_homomorphism(phi, src, tgt)
    rep.title = "id + f homomorphism of semidirect products"
    return rep


def adjoint_lm(g: NLieAlgebra) -> LMAlgebra:
    """``(g, g, id)`` with the adjoint action."""
    return LMAlgebra(adjoint_representation(g), Matrix.identity(g.dim), f"adjoint {g.name}".strip())


def hemisemidirect_projection(r: Representation) -> LMAlgebra:
    """``pi: g ⊕ V -> g`` with ``g`` acting by ``rho(x)(y + v) = [x, y] + rho(x) v``."""
    g = r.algebra
    dg, dv = g.dim, r.module_dim
    rho = {}
    for x in wedge_basis(dg, g.n - 1):
        rho[x] = Matrix.hstack([
            Matrix.vstack([g.ad(x), Matrix.zeros(dv, dg)]),
            Matrix.vstack([Matrix.zeros(dg, dv), r.of(x)]),
        ])
    act = Representation(g, dg + dv, rho, "ad ⊕ rho")
    pi = Matrix.hstack([Matrix.identity(dg), Matrix.zeros(dg, dv)])
    return LMAlgebra(act, pi, f"projection of {g.name} ⋉_H V".strip())


def wedge_power_example(g: NLieAlgebra) -> LMAlgebra:
    """``f = [·..·]: ∧^n g -> g`` with ``g`` acting on ``∧^n g`` as a derivation."""
    n, dg = g.n, g.dim
    basis = wedge_basis(dg, n)
    pos = wedge_position(dg, n)
    dm = len(basis)
    rho = {}
    for x in wedge_basis(dg, n - 1):
        data = [dict() for _ in range(dm)]
        for col, y in enumerate(basis):
            for s in range(n):
                for k, c in g.bracket_basis(x + (y[s],)).items():
                    args = list(y)
                    args[s] = k
                    sign, w = normalize_wedge(args)
                    if sign:
                        row = data[pos[w]]
                        row[col] = row.get(col, 0) + sign * c
        rho[x] = Matrix.from_sparse(dm, dm, data)
    f = Matrix.from_columns([sparse_to_vector(g.bracket_basis(y), dg) for y in basis], dg)
    return LMAlgebra(Representation(g, dm, rho, "derivation action"), f, f"wedge power of {g.name}".strip())


def leibniz_kernel(h: LeibnizNAlgebra) -> List[tuple]:
    """Basis of ``span{[x_1..x_n] : some x_i = x_j}`` (the Leibniz kernel).

    By polarization this is spanned by the brackets with two slots
    symmetrized, evaluated on basis vectors.
    """
    vectors = []
    for idx in itertools.product(range(h.dim), repeat=h.n):
        for i, j in itertools.combinations(range(h.n), 2):
            if idx[i] > idx[j]:
                continue
            swapped = list(idx)
            swapped[i], swapped[j] = idx[j], idx[i]
            v = dict(h.bracket_basis(idx))
            if idx[i] != idx[j]:
                for k, c in h.bracket_basis(tuple(swapped)).items():
                    v[k] = v.get(k, 0) + c
            if any(v.values()):
                vectors.append(sparse_to_vector(v, h.dim))
    if not vectors:
        return []
    piv = _rref([vector_to_sparse(v) for v in vectors])
    return [sparse_to_vector(piv[c], h.dim) for c in sorted(piv)]
