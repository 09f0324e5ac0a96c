import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropmat.matroid import (
    IndependenceFamily,
    Matroid,
    builtin,
    complete_graph_edges,
    find_isomorphism,
    from_matrix,
    graphic_from_edges,
    is_matroid,
    iter_subsets,
    matroid_from_json,
    matroid_to_json,
    uniform,
    vamos,
)
from tropmat import linalg


def brute_rank(m: Matroid, s) -> int:
    s = frozenset(s)
    return max(len(b & s) for b in m.bases)


@st.composite
def matrix_matroids(draw, max_rows=3, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    a = [[draw(st.integers(-2, 2)) for _ in range(c)] for _ in range(r)]
    return a, from_matrix(a)


# --- rank / closure ---------------------------------------------------------


def test_rank_examples():
    assert uniform(2, 3).rank_of({1, 2}) == 2
    assert vamos().rank_of({1, 2, 3, 4}) == 3
    assert brute_rank(vamos(), {1, 2, 3, 4}) == 3
    assert vamos().rank_of(set()) == 0
    with pytest.raises(ValueError):
        uniform(2, 3).rank_of({4})


def test_closure_examples():
    assert uniform(2, 3).closure({1}) == {1}
    assert vamos().closure({1, 2, 3}) == {1, 2, 3, 4}
    assert uniform(2, 4).closure(set()) == frozenset()
    with pytest.raises(ValueError):
        uniform(2, 3).closure({0})


@settings(max_examples=40, deadline=None)
@given(matrix_matroids())
def test_rank_axioms(pair):
    _, m = pair
    subsets = list(iter_subsets(m.n))
    for s in subsets:
        r = m.rank_of(s)
        assert r == brute_rank(m, s)
        assert 0 <= r <= len(s)
        for e in range(1, m.n + 1):
            assert m.rank_of(s | {e}) - r in (0, 1)
    for s, t in itertools.combinations(subsets, 2):
        assert m.rank_of(s | t) + m.rank_of(s & t) <= m.rank_of(s) + m.rank_of(t)


@settings(max_examples=40, deadline=None)
@given(matrix_matroids())
def test_closure_axioms(pair):
    _, m = pair
    flats = set(m.flats())
    for s in iter_subsets(m.n):
        c = m.closure(s)
        assert s <= c
        assert m.closure(c) == c
        assert (c == s) == (s in flats)
        for e in range(1, m.n + 1):
            assert c <= m.closure(s | {e})


# --- flats and chains -------------------------------------------------------


def test_flats_examples():
    assert uniform(2, 3).flats() == [frozenset(), frozenset({1}), frozenset({2}), frozenset({3}), frozenset({1, 2, 3})]
    assert uniform(1, 2).flats() == [frozenset(), frozenset({1, 2})]
    assert Matroid.from_bases(3, [[]]).flats() == [frozenset({1, 2, 3})]


def brute_chain_count(m: Matroid) -> int:
    """Count chains by walking the flat poset directly."""
    by_rank = {}
    for f in m.flats():
        by_rank.setdefault(m.rank_of(f), []).append(f)
    count = {f: 1 for f in by_rank.get(1, [])}
    for k in range(2, m.rank):
        count = {f: sum(c for g, c in count.items() if g < f) for f in by_rank.get(k, [])}
    return sum(count.values()) if m.rank > 1 else 1


def test_maximal_chains_examples():
    chains = uniform(2, 3).maximal_flat_chains()
    assert [c.flats for c in chains] == [(frozenset({1}),), (frozenset({2}),), (frozenset({3}),)]
    assert [c.flats for c in uniform(1, 5).maximal_flat_chains()] == [()]
    assert len(uniform(3, 4).maximal_flat_chains()) == 12
    assert brute_chain_count(uniform(3, 4)) == 12
    assert len(vamos().maximal_flat_chains()) == brute_chain_count(vamos())


def test_maximal_chains_rejects_loops():
    with pytest.raises(ValueError):
        uniform(0, 2).maximal_flat_chains()


@settings(max_examples=30, deadline=None)
@given(matrix_matroids())
def test_chain_count_matches_poset_walk(pair):
    _, m = pair
    if not m.is_loop_free() or m.rank == 0:
        return
    chains = m.maximal_flat_chains()
    assert len(chains) == brute_chain_count(m)
    for c in chains:
        assert [m.rank_of(f) for f in c.flats] == list(range(1, m.rank))
        assert all(a < b for a, b in zip(c.flats, c.flats[1:]))


# --- independence complexes --------------------------------------------------


def test_independence_complex_examples():
    assert uniform(2, 3).independence_complex().maximal_members == {
        frozenset({1, 2}),
        frozenset({1, 3}),
        frozenset({2, 3}),
    }
    assert len(vamos().independence_complex().maximal_members) == 70 - 5
    assert uniform(0, 3).independence_complex().maximal_members == {frozenset()}


def test_family_members_and_containment():
    fam = IndependenceFamily.from_sets(3, [{1, 2}, {1}, {3}])
    assert fam.maximal_members == {frozenset({1, 2}), frozenset({3})}
    assert {2} in fam and {1, 3} not in fam
    assert len(fam.members()) == 5


def test_is_matroid_examples():
    assert is_matroid(uniform(2, 3).independence_complex()) == (True, None)
    ok, cert = is_matroid(IndependenceFamily.from_sets(3, [{1, 2}, {3}]))
    assert not ok
    assert cert == (frozenset({3}), frozenset({1, 2}))
    assert is_matroid(IndependenceFamily(3, frozenset({frozenset()}))) == (True, None)
    assert is_matroid(IndependenceFamily(3, frozenset())) == (False, None)


@pytest.mark.parametrize("m", [uniform(0, 3), uniform(2, 5), vamos(), builtin("k4")], ids=repr)
def test_constructor_outputs_are_matroids(m):
    assert is_matroid(m.independence_complex())[0]


# --- minors and duality -------------------------------------------------------


def test_minor_examples():
    assert uniform(2, 3).dual() == uniform(1, 3)
    assert uniform(2, 3).deletion(3) == uniform(2, 2)
    assert uniform(2, 3).contraction(3) == uniform(1, 2)
    # coloop deletion and loop contraction keep the other rank
    assert uniform(2, 2).deletion(1) == uniform(1, 1)
    assert uniform(0, 2).contraction(2) == uniform(0, 1)


@settings(max_examples=40, deadline=None)
@given(matrix_matroids())
def test_dual_involution_and_rank(pair):
    _, m = pair
    d = m.dual()
    assert d.dual() == m
    assert d.rank == m.n - m.rank
    # dual rank formula r*(S) = |S| - r(E) + r(E - S)
    e = m.ground_set
    for s in iter_subsets(m.n):
        assert d.rank_of(s) == len(s) - m.rank + m.rank_of(e - s)


@settings(max_examples=30, deadline=None)
@given(matrix_matroids(), st.data())
def test_deletion_contraction_duality(pair, data):
    _, m = pair
    e = data.draw(st.integers(1, m.n))
    if m.n == 1:
        return
    assert m.deletion(e).dual() == m.dual().contraction(e)


@settings(max_examples=40, deadline=None)
@given(matrix_matroids(max_rows=3, max_cols=5), st.integers(-2, 2), st.data())
def test_from_matrix_invariant_under_row_operations(pair, scale, data):
    a, m = pair
    if len(a) < 2:
        return
    i, j = data.draw(st.sampled_from([(i, j) for i in range(len(a)) for j in range(len(a)) if i != j]))
    b = [list(r) for r in a]
    b[i] = [x + scale * y for x, y in zip(b[i], b[j])]
    assert from_matrix(b) == m


def test_from_matrix_example():
    assert from_matrix([[1, 0, 1], [0, 1, 1]]) == uniform(2, 3)


# --- named matroids ---------------------------------------------------------


def test_vamos_properties():
    v = vamos()
    assert (v.n, v.rank, len(v.bases)) == (8, 4, 65)
    assert not v.loops() and not v.coloops()
    assert frozenset({5, 6, 7, 8}) in v.bases
    for s in [{1, 2, 3, 4}, {1, 2, 5, 6}, {3, 4, 5, 6}, {1, 2, 7, 8}, {3, 4, 7, 8}]:
        assert frozenset(s) not in v.bases
    assert v.is_connected()


def test_vamos_is_isomorphic_to_its_dual():
    v = vamos()
    perm = find_isomorphism(v, v.dual())
    assert perm is not None
    assert v.relabel(perm) == v.dual()


def test_find_isomorphism_negative():
    assert find_isomorphism(uniform(2, 4), from_matrix([[1, 1, 0, 0], [0, 0, 1, 1]])) is None


def test_graphic_k4():
    k4 = graphic_from_edges(complete_graph_edges(4))
    assert (k4.n, k4.rank, len(k4.bases)) == (6, 3, 16)  # Cayley: 4^(4-2) spanning trees
    assert k4.is_connected()


def test_graphic_with_self_loop():
    m = graphic_from_edges([(1, 2), (2, 2), (2, 3)])
    assert m.loops() == {2}
    assert m.simplify() == uniform(2, 2)


def test_components():
    m = from_matrix([[1, 1, 0, 0], [0, 0, 1, 1]])
    assert m.components() == [frozenset({1, 2}), frozenset({3, 4})]
    assert not m.is_connected()
    assert uniform(2, 4).is_connected()


def test_uniform_rejects_bad_parameters():
    with pytest.raises(ValueError):
        uniform(3, 2)


def test_matroid_rejects_unequal_bases():
    with pytest.raises(ValueError):
        Matroid.from_bases(3, [[1, 2], [3]])


# --- file format --------------------------------------------------------------


def test_json_roundtrip():
    for m in [uniform(2, 4), vamos()]:
        obj = matroid_to_json(m)
        assert obj["bases"] == sorted(obj["bases"])
        assert matroid_from_json(obj) == m


def test_json_alternative_forms():
    assert matroid_from_json({"uniform": [2, 3]}) == uniform(2, 3)
    assert matroid_from_json({"matrix": [["1", "0", "1/2"], ["0", "1", "1"]]}) == uniform(2, 3)
    assert matroid_from_json({"builtin": "vamos"}) == vamos()
    with pytest.raises(ValueError):
        matroid_from_json({"foo": 1})


def test_linalg_used_for_matrix_bases():
    a = [[1, 2, 3], [2, 4, 6]]
    m = from_matrix(a)
    assert m.rank == linalg.rank(a) == 1
    assert len(m.bases) == 3
