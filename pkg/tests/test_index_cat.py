import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dukan import index_cat as ic
from dukan.index_cat import Degeneracy, Face, Flavor, GeneratorWord, Shift, XiMap


@st.composite
def xi_maps(draw, max_degree=6):
    m = draw(st.integers(0, max_degree))
    n = draw(st.integers(0, max_degree))
    v0 = draw(st.integers(0, 10))
    rest = draw(st.lists(st.integers(v0, v0 + n + 1), min_size=m, max_size=m))
    return XiMap(m, n, (v0,) + tuple(sorted(rest)))


@st.composite
def composable_pairs(draw):
    f = draw(xi_maps())
    n = f.tgt
    p = draw(st.integers(0, 6))
    v0 = draw(st.integers(0, 6))
    rest = draw(st.lists(st.integers(v0, v0 + p + 1), min_size=n, max_size=n))
    return XiMap(n, p, (v0,) + tuple(sorted(rest))), f


def test_validation():
    with pytest.raises(ValueError):
        XiMap(1, 1, (1, 0))
    with pytest.raises(ValueError):
        XiMap(1, 1, (0, 3))
    with pytest.raises(ValueError):
        XiMap(0, 1, (-1,))
    with pytest.raises(ValueError):
        XiMap(1, 1, (0, 2), Flavor.DELTA)
    with pytest.raises(ValueError):
        XiMap(1, 1, (0,))
    assert XiMap(0, 1, (-1,), Flavor.PARACYCLIC).values == (-1,)


def test_periodic_evaluation():
    t1 = XiMap(1, 1, (1, 2))
    assert t1(2) == 3
    assert ic.identity(3)(-4) == -4
    assert XiMap(1, 2, (0, 2))(3) == 5
    assert XiMap(1, 2, (0, 2))(-1) == -1


def test_flavor_not_part_of_equality():
    a = XiMap(1, 1, (0, 1), Flavor.DELTA)
    b = XiMap(1, 1, (0, 1), Flavor.XI)
    assert a == b and hash(a) == hash(b)
    assert ic.compose(ic.shift(1, 1), a).flavor == Flavor.XI


def test_generators():
    assert ic.face(2, 0).values == (1, 2)
    assert (ic.face(2, 0).src, ic.face(2, 0).tgt) == (1, 2)
    assert ic.degeneracy(1, 2).values == (0, 1, 2)
    assert ic.degeneracy(1, 2).flavor == Flavor.XI
    assert ic.shift(1, 1).values == (1, 2)
    assert ic.shift(2, -1).flavor == Flavor.PARACYCLIC
    with pytest.raises(ValueError):
        ic.degeneracy(1, 3)
    with pytest.raises(ValueError):
        ic.face(0, 0)


def test_shift_from_extra_degeneracy_and_face():
    assert ic.compose(ic.degeneracy(1, 2), ic.face(2, 0)) == ic.shift(1, 1)
    for n in range(6):
        assert ic.compose(ic.degeneracy(n, n + 1), ic.face(n + 1, 0)) == ic.shift(n, 1)


def test_simplicial_identities():
    for n in range(1, 6):
        for i in range(n):
            assert ic.compose(ic.degeneracy(n - 1, i), ic.face(n, i)) == ic.identity(n - 1)
            assert ic.compose(ic.degeneracy(n - 1, i), ic.face(n, i + 1)) == ic.identity(n - 1)
        for i in range(n + 1):
            for j in range(i + 1, n + 2):
                # d_j d_i = d_i d_(j-1) read covariantly
                assert ic.compose(ic.face(n + 1, j), ic.face(n, i)) == ic.compose(ic.face(n + 1, i), ic.face(n, j - 1))


def test_two_morphisms_and_adjunctions():
    f = XiMap(1, 1, (0, 1))
    assert ic.two_morphism_leq(f, f)
    assert ic.two_morphism_leq(XiMap(1, 1, (0, 0)), XiMap(1, 1, (0, 1)))
    for n in range(1, 5):
        for i in range(n):
            assert ic.two_morphism_leq(ic.identity(n), ic.compose(ic.face(n, i), ic.degeneracy(n - 1, i)))
            assert ic.verify_adjunction(ic.degeneracy(n - 1, i), ic.face(n, i))
            assert ic.verify_adjunction(ic.face(n, i + 1), ic.degeneracy(n - 1, i))
    assert not ic.verify_adjunction(ic.face(2, 0), ic.degeneracy(1, 1))
    with pytest.raises(ValueError):
        ic.verify_adjunction(ic.face(2, 0), ic.face(2, 1))


def test_predicates():
    assert ic.is_injective_on_fd(ic.identity(2)) and ic.is_delta(ic.identity(2))
    s0 = ic.degeneracy(0, 0)
    assert not ic.is_injective_on_fd(s0) and ic.is_delta(s0)
    t1 = ic.shift(1, 1)
    assert ic.is_injective_on_fd(t1) and not ic.is_delta(t1)


def test_cube_vertices():
    assert ic.cube_f(1, (0,)) == ic.identity(1)
    assert ic.cube_f(1, (1,)).values == (1, 1)
    assert ic.cube_f(2, (1, 0)).values == (1, 1, 2)
    with pytest.raises(ValueError):
        ic.cube_f(2, (1,))


def test_factorize_examples():
    assert ic.factorize(XiMap(1, 0, (0, 0))).tokens == (Degeneracy(0, 0),)
    assert ic.factorize(ic.shift(1, 1)).compose() == ic.shift(1, 1)
    assert ic.factorize(ic.identity(3)).tokens == ()
    word = ic.factorize(XiMap(1, 2, (0, 2)))
    assert all(isinstance(t, Face) for t in word.tokens)
    with pytest.raises(ValueError):
        GeneratorWord(1, 1, (Face(2, 0),))
    assert GeneratorWord(1, 1, (Face(2, 0), Degeneracy(1, 2))).compose() == ic.shift(1, 1)
    assert GeneratorWord(2, 2, (Shift(2, 2),)).compose().values == (2, 3, 4)


@settings(max_examples=300, deadline=None)
@given(xi_maps())
def test_factorize_roundtrip(f):
    word = ic.factorize(f)
    assert (word.src, word.tgt) == (f.src, f.tgt)
    assert word.compose() == f
    if ic.is_delta(f):
        assert not any(isinstance(t, Shift) for t in word.tokens)
        assert all(not (isinstance(t, Degeneracy) and t.i > t.n) for t in word.tokens)


@settings(max_examples=200, deadline=None)
@given(composable_pairs())
def test_composition_is_periodic_composition(pair):
    g, f = pair
    h = ic.compose(g, f)
    for a in range(-2 * (f.src + 1), 2 * (f.src + 1)):
        assert h(a) == g(f(a))


@settings(max_examples=200, deadline=None)
@given(xi_maps())
def test_shift_naturality(f):
    assert ic.compose(f, ic.shift(f.src, f.src + 1)) == ic.compose(ic.shift(f.tgt, f.tgt + 1), f)


def test_enumeration_counts():
    from math import comb

    for m in range(4):
        for n in range(4):
            assert len(list(ic.delta_maps(m, n))) == comb(n + m + 1, m + 1)
            assert len(list(ic.injective_delta_maps(m, n))) == comb(n + 1, m + 1)
    assert all(ic.is_injective_on_fd(f) for f in ic.injective_xi_maps(2, 2, 6))


def test_json_roundtrip():
    f = XiMap(2, 1, (1, 2, 3))
    assert XiMap.from_json(f.to_json()) == f
    assert f.to_json() == {"flavor": "xi", "src": 2, "tgt": 1, "values": [1, 2, 3]}
