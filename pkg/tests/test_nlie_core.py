import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlielm.exactlinalg import Matrix
from nlielm.fixtures import a4, h4, so3
from nlielm.multilinear import wedge_basis
from nlielm.nlie_core import (
    LeibnizNAlgebra,
    NLieAlgebra,
    ValidationError,
    abelian,
    ad,
    fundamental_leibniz,
    is_nlie_homomorphism,
    validate_leibniz_algebra,
    validate_leibniz_n,
    validate_n_lie,
)

from oracles import RawNLie, fundamental_identity_holds


def epsilon_bracket() -> NLieAlgebra:
    """``[e_i, e_j, e_k] = eps_{ijkl} e_l`` on a 4-dimensional space."""
    table = {}
    for w in wedge_basis(4, 3):
        (l,) = set(range(4)) - set(w)
        perm = list(w) + [l]
        sign = 1
        for i, j in itertools.combinations(range(4), 2):
            if perm[i] > perm[j]:
                sign = -sign
        table[w] = {l: sign}
    return NLieAlgebra(3, 4, table, "epsilon")


def test_standard_algebras_pass_and_agree_with_oracle():
    for alg in (so3(), a4(), h4(), epsilon_bracket(), abelian(3, 4), abelian(2, 1)):
        report = validate_n_lie(alg)
        assert report.passed
        assert fundamental_identity_holds(RawNLie.of(alg))


def test_broken_bracket_fails_with_witness():
    bad = NLieAlgebra(3, 4, {(0, 1, 2): {3: 1}, (0, 1, 3): {0: 1}})
    report = validate_n_lie(bad)
    assert not report.passed
    assert report.checks[0].witnesses
    assert not fundamental_identity_holds(RawNLie.of(bad))


def test_ad_on_so3():
    m = ad(so3(), (0,))
    # e1 -> 0, e2 -> e3, e3 -> -e2
    assert m.column(0) == (0, 0, 0)
    assert m.column(1) == (0, 0, 1)
    assert m.column(2) == (0, -1, 0)


def test_ad_degenerate_cases():
    assert ad(abelian(3, 4), (0, 1)).is_zero()
    assert ad(a4(), (2, 2)).is_zero()
    assert ad(a4(), {(0, 1): 1, (1, 0): 1}).is_zero()


def test_fundamental_leibniz_examples():
    L = fundamental_leibniz(a4())
    pos = {w: k for k, w in enumerate(wedge_basis(4, 2))}
    assert L.circ(pos[0, 1], pos[2, 3]) == {}
    assert L.circ(pos[0, 1], pos[0, 1]) == {}
    assert all(not fundamental_leibniz(abelian(3, 4)).circ(i, j)
               for i in range(6) for j in range(6))


def test_fundamental_leibniz_is_leibniz_and_ad_is_a_morphism():
    for alg in (so3(), a4(), h4()):
        L = fundamental_leibniz(alg)
        assert validate_leibniz_algebra(L).passed
        basis = wedge_basis(alg.dim, alg.n - 1)
        for i, j in itertools.product(range(L.dim), repeat=2):
            lhs = ad(alg, basis[i]) @ ad(alg, basis[j]) - ad(alg, basis[j]) @ ad(alg, basis[i])
            rhs = ad(alg, {basis[k]: c for k, c in L.circ(i, j).items()})
            assert lhs == rhs


def test_fundamental_leibniz_rejects_invalid_algebra():
    bad = NLieAlgebra(3, 4, {(0, 1, 2): {3: 1}, (0, 1, 3): {0: 1}})
    with pytest.raises(ValidationError):
        fundamental_leibniz(bad)


def test_validate_leibniz_n_examples():
    assert validate_leibniz_n(LeibnizNAlgebra(3, 2, {})).passed
    bad = LeibnizNAlgebra(2, 2, {(0, 0): {1: 1}, (0, 1): {0: 1}})
    report = validate_leibniz_n(bad)
    assert not report.passed
    assert report.checks[0].witnesses[0].args


def test_skew_case_agrees_between_validators():
    for alg in (so3(), a4(), h4(), NLieAlgebra(3, 4, {(0, 1, 2): {3: 1}, (0, 1, 3): {0: 1}})):
        assert validate_n_lie(alg).passed == validate_leibniz_n(alg.as_leibniz_n()).passed


def test_homomorphism_examples():
    g = a4()
    assert is_nlie_homomorphism(Matrix.identity(4), g, g).passed
    assert is_nlie_homomorphism(Matrix.zeros(4, 4), g, g).passed
    scale = Matrix.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]], 4)
    assert not is_nlie_homomorphism(scale, g, g).passed
    with pytest.raises(ValueError):
        is_nlie_homomorphism(Matrix.identity(3), g, g)


def test_skew_storage_rejects_conflicting_keys():
    with pytest.raises(ValueError):
        NLieAlgebra(3, 4, {(0, 1, 2): {3: 1}, (1, 0, 2): {3: 1}})


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_validator_matches_oracle_on_random_brackets(data):
    n = data.draw(st.sampled_from([2, 3]))
    dim = data.draw(st.integers(n, 4))
    table = {}
    for w in wedge_basis(dim, n):
        if data.draw(st.integers(0, 3)) == 0:
            table[w] = {data.draw(st.integers(0, dim - 1)): data.draw(st.integers(-1, 1)) or 1}
    alg = NLieAlgebra(n, dim, table)
    assert validate_n_lie(alg).passed == fundamental_identity_holds(RawNLie.of(alg))
