import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlielm.multilinear import (
    BlockCochain,
    CochainSpace,
    SkewTensor,
    expand,
    normalize_wedge,
    wedge_basis,
    wedge_position,
)

from oracles import perm_sign


def test_wedge_basis_examples():
    assert wedge_basis(3, 2) == [(0, 1), (0, 2), (1, 2)]
    w = wedge_basis(4, 3)
    assert len(w) == 4 and w[0] == (0, 1, 2)
    assert wedge_basis(2, 1) == [(0,), (1,)]


def test_wedge_basis_degenerate_arities():
    assert wedge_basis(2, 3) == []
    assert wedge_basis(3, 0) == [()]


def test_wedge_position_inverts_basis():
    for dim, k in [(4, 2), (5, 3), (3, 3)]:
        pos = wedge_position(dim, k)
        assert [w for w, _ in sorted(pos.items(), key=lambda kv: kv[1])] == wedge_basis(dim, k)


def test_normalize_wedge_examples():
    assert normalize_wedge((1, 0)) == (-1, (0, 1))
    assert normalize_wedge((0, 0))[0] == 0
    assert normalize_wedge((2, 0, 1)) == (1, (0, 1, 2))


def test_skew_tensor_sign_rule():
    t = SkewTensor(3, 4, 4, {(0, 1, 2): {3: 1}})
    assert t.evaluate((1, 0, 2)) == (0, 0, 0, -1)
    assert t.evaluate((2, 0, 1)) == (0, 0, 0, 1)
    assert t.evaluate((0, 0, 2)) == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        t.evaluate((0, 1))


def test_block_cochain_has_no_cross_block_symmetry():
    s = CochainSpace(4, 2, 2, (4,), 1)
    c = BlockCochain.from_function(s, lambda bl, tr: (bl[0][0] + 2 * bl[1][1] + tr[0],))
    assert c.evaluate([(0, 1), (2, 3)], (0,)) == (6,)
    assert c.evaluate([(2, 3), (0, 1)], (0,)) == (4,)
    assert c.evaluate([(1, 0), (2, 3)], (0,)) == (-6,)
    with pytest.raises(ValueError):
        c.evaluate([(0, 1)], (0,))


def test_block_cochain_equal_entries_are_block_order_independent():
    s = CochainSpace(3, 1, 2, (), 1)
    c = BlockCochain.from_function(s, lambda bl, tr: (bl[0][0] + bl[1][0],))
    for a, b in itertools.product(range(3), repeat=2):
        assert c.evaluate([(a,), (b,)]) == c.evaluate([(b,), (a,)])


def test_cochain_space_counts():
    for dim, k, p, tr, t in [(4, 2, 2, (4,), 1), (3, 1, 0, (3,), 2), (5, 3, 1, (2, 3), 4)]:
        s = CochainSpace(dim, k, p, tr, t)
        assert s.size == s.expected_size() == comb(dim, k) ** p * (tr[0] * (tr[1] if len(tr) > 1 else 1)) * t
        assert sum(1 for _ in s.argument_tuples()) * t == s.size


def test_expand_is_multilinear_expansion():
    assert list(expand([{0: 2, 1: 1}, {2: 3}])) == [((0, 2), 6), ((1, 2), 3)]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=5))
def test_normalize_wedge_matches_permutation_sign(idx):
    sign, w = normalize_wedge(tuple(idx))
    assert sign == perm_sign(idx)
    if sign:
        assert list(w) == sorted(idx)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_skew_tensor_antisymmetry(data):
    dim = data.draw(st.integers(3, 5))
    arity = data.draw(st.integers(1, 3))
    entries = {}
    for w in wedge_basis(dim, arity):
        if data.draw(st.booleans()):
            entries[w] = {data.draw(st.integers(0, 1)): data.draw(st.integers(-3, 3))}
    t = SkewTensor(arity, dim, 2, entries)
    args = tuple(data.draw(st.lists(st.integers(0, dim - 1), min_size=arity, max_size=arity)))
    perm = data.draw(st.permutations(range(arity)))
    permuted = tuple(args[i] for i in perm)
    s = perm_sign(perm)
    assert t.evaluate(permuted) == tuple(s * x for x in t.evaluate(args))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_skew_tensor_is_multilinear(data):
    dim, arity = 4, 2
    entries = {w: {0: data.draw(st.integers(-3, 3))} for w in wedge_basis(dim, arity)}
    t = SkewTensor(arity, dim, 1, entries)
    u = {data.draw(st.integers(0, 3)): data.draw(st.integers(-2, 2))}
    v = {data.draw(st.integers(0, 3)): data.draw(st.integers(-2, 2))}
    z = data.draw(st.integers(0, 3))
    a, b = data.draw(st.integers(-3, 3)), data.draw(st.integers(-3, 3))
    combo = {}
    for k, c in u.items():
        combo[k] = combo.get(k, 0) + a * c
    for k, c in v.items():
        combo[k] = combo.get(k, 0) + b * c

    def ev(vec):
        return sum(c * t.evaluate((k, z))[0] for k, c in vec.items())

    assert ev(combo) == a * ev(u) + b * ev(v)
