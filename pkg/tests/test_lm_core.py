import itertools

import pytest

from nlielm.exactlinalg import Matrix
from nlielm.fixtures import a4, h4, heisenberg_lm, so3
from nlielm.multilinear import wedge_basis
from nlielm.nlie_core import ValidationError, abelian, validate_leibniz_n
from nlielm.lm_core import (
    LMAlgebra,
    LMMorphism,
    adjoint_lm,
    f_intertwines,
    hemisemidirect_projection,
    id_plus_f_check,
    induced_leibniz_bracket,
    is_embedding_tensor,
    leibniz_kernel,
    validate_lm,
    validate_lm_morphism,
    wedge_power_example,
)
from nlielm.representations import (
    adjoint_representation,
    hemisemidirect_product,
    trivial_representation,
)

from oracles import RawAction, RawNLie, mat_vec, perm_sign, unit

SCALE = Matrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]], 4)
SHEAR = Matrix.from_rows([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 4)


def valid_corpus():
    g = a4()
    return [
        LMAlgebra(adjoint_representation(g), Matrix.zeros(4, 4), "f = 0"),
        adjoint_lm(g),
        adjoint_lm(so3()),
        hemisemidirect_projection(adjoint_representation(h4())),
        hemisemidirect_projection(trivial_representation(so3(), 2)),
        wedge_power_example(so3()),
        wedge_power_example(a4()),
        heisenberg_lm(),
    ]


def broken_corpus():
    g = a4()
    return [
        LMAlgebra(adjoint_representation(g), SCALE, "scaled f"),
        LMAlgebra(adjoint_representation(g), SHEAR, "sheared f"),
        LMAlgebra(trivial_representation(h4(), 1), Matrix.from_rows([[1], [0], [0], [0]], 1), "f hits e1"),
    ]


def equivariance_oracle(a: LMAlgebra) -> bool:
    """``f(rho(x) m) = [x, f(m)]`` on every ordered basis tuple, by hand."""
    g, rho = RawNLie.of(a.g), RawAction.of(a.rho)
    f = a.f.to_lists()
    for xs in itertools.product(range(g.dim), repeat=g.n - 1):
        for m in range(a.M_dim):
            lhs = mat_vec(f, mat_vec(rho.basis(xs), unit(a.M_dim, m)))
            rhs = g.bracket([unit(g.dim, k) for k in xs] + [[row[m] for row in f]])
            if lhs != rhs:
                return False
    return True


def test_validate_lm_matches_oracle():
    for a in valid_corpus():
        assert validate_lm(a).passed and equivariance_oracle(a), a
        assert validate_lm(a, full=True).passed
    for a in broken_corpus():
        report = validate_lm(a)
        assert not report.passed and not equivariance_oracle(a)
        assert report.checks[0].witnesses


def test_full_validation_adds_algebra_and_action_checks():
    names = [c.name for c in validate_lm(adjoint_lm(a4()), full=True).checks]
    assert names == ["fundamental identity", "action R1", "action R2", "equivariance of f"]


def test_embedding_tensor_follows_from_equivariance():
    for a in valid_corpus():
        assert is_embedding_tensor(a).passed
    assert is_embedding_tensor(adjoint_lm(a4())).data["surjective"] is True
    zero = LMAlgebra(adjoint_representation(a4()), Matrix.zeros(4, 4))
    report = is_embedding_tensor(zero)
    assert report.passed and report.data["surjective"] is False


def test_induced_bracket_is_leibniz_and_f_intertwines():
    for a in valid_corpus():
        h = induced_leibniz_bracket(a)
        assert validate_leibniz_n(h).passed
        assert f_intertwines(a, h).passed


def test_induced_bracket_examples():
    g = a4()
    zero = LMAlgebra(adjoint_representation(g), Matrix.zeros(4, 4))
    h = induced_leibniz_bracket(zero)
    assert all(not h.bracket_basis(idx) for idx in itertools.product(range(4), repeat=3))
    h = induced_leibniz_bracket(adjoint_lm(g))
    for idx in itertools.product(range(4), repeat=3):
        assert h.bracket_basis(idx) == g.bracket_basis(idx)


def test_hemisemidirect_projection_reproduces_the_hemisemidirect_bracket():
    for r in (adjoint_representation(h4()), adjoint_representation(so3()), trivial_representation(a4(), 2)):
        a = hemisemidirect_projection(r)
        induced = induced_leibniz_bracket(a)
        direct = hemisemidirect_product(r)
        dim = r.algebra.dim + r.module_dim
        for idx in itertools.product(range(dim), repeat=r.algebra.n):
            assert induced.bracket_basis(idx) == direct.bracket_basis(idx)


def test_wedge_power_bracket_matches_displayed_formula():
    for alg in (so3(), a4()):
        a = wedge_power_example(alg)
        g = RawNLie.of(alg)
        n, basis = alg.n, wedge_basis(alg.dim, alg.n)
        pos = {w: k for k, w in enumerate(basis)}
        h = induced_leibniz_bracket(a)
        for idx in itertools.product(range(len(basis)), repeat=n):
            fs = [g.bracket_basis(basis[k]) for k in idx[:-1]]
            ys = basis[idx[-1]]
            expected = [0] * len(basis)
            for i in range(n):
                inner = g.bracket(fs + [unit(alg.dim, ys[i])])
                for t, c in enumerate(inner):
                    if c:
                        w = list(ys)
                        w[i] = t
                        s = perm_sign(w)
                        if s:
                            expected[pos[tuple(sorted(w))]] += s * c
            got = h.bracket_basis(idx)
            assert [got.get(k, 0) for k in range(len(basis))] == expected


def test_wedge_power_abelian_is_zero():
    a = wedge_power_example(abelian(3, 4))
    assert a.f.is_zero() and validate_lm(a).passed
    assert all(a.rho.of(x).is_zero() for x in wedge_basis(4, 2))


def test_induced_bracket_rejects_invalid_input():
    with pytest.raises(ValidationError):
        induced_leibniz_bracket(broken_corpus()[0])


def test_id_plus_f_biconditional():
    for a in valid_corpus() + broken_corpus():
        assert validate_lm(a).passed == id_plus_f_check(a).passed


def test_morphism_examples():
    a = adjoint_lm(a4())
    ident = LMMorphism(Matrix.identity(4), Matrix.identity(4))
    assert validate_lm_morphism(ident, a, a).passed
    zero_obj = LMAlgebra(trivial_representation(abelian(3, 0), 0), Matrix.zeros(0, 0))
    assert validate_lm_morphism(LMMorphism(Matrix.zeros(0, 4), Matrix.zeros(0, 4)), a, zero_obj).passed
    doubled = LMMorphism(Matrix.identity(4), Matrix.identity(4).scale(2))
    report = validate_lm_morphism(doubled, a, a)
    assert not next(c for c in report.checks if c.name == "f' phi1 = phi0 f").passed
    with pytest.raises(ValueError):
        validate_lm_morphism(LMMorphism(Matrix.identity(3), Matrix.identity(4)), a, a)


def test_leibniz_kernel():
    assert leibniz_kernel(induced_leibniz_bracket(adjoint_lm(a4()))) == []
    a = hemisemidirect_projection(adjoint_representation(so3()))
    # [x + u, x + u] = rho(x) u, so the kernel is rho(g) V = V for so3
    kernel = leibniz_kernel(induced_leibniz_bracket(a))
    assert len(kernel) == 3
    assert all(v[:3] == (0, 0, 0) for v in kernel)
