import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropmat.bergman import (
    bergman_fan,
    chain_cone,
    indicator,
    realizability_witness_check,
    ridge_count_from_chains,
    span_chain,
    verify_lemma_bergman,
)
from tropmat.fan import balancing_weight_space, cone_dim, is_balanced, project_cone, ridge_incidences
from tropmat.groebner import Ideal, Polynomial, linear_ideal_from_matrix, parse_ideal
from tropmat.matroid import builtin, from_matrix, is_matroid, uniform


@st.composite
def loop_free_matrices(draw, max_rows=3, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    col = st.lists(st.integers(-2, 2), min_size=r, max_size=r).filter(any)
    cols = draw(st.lists(col, min_size=c, max_size=c))
    return [[v[i] for v in cols] for i in range(r)]


def test_indicator():
    assert indicator({1, 3}, 4) == (1, 0, 1, 0)
    assert indicator(set(), 2) == (0, 0)


def test_bergman_fan_of_u23():
    b = bergman_fan(uniform(2, 3))
    f = b.fan
    assert f.lineality == ((1, 1, 1),)
    assert [c.rays for c in f.cones] == [((1, 0, 0),), ((0, 1, 0),), ((0, 0, 1),)]
    assert f.dim == 2
    assert f.labels == ("{1}", "{2}", "{3}")


def test_bergman_fan_of_rank_one_is_the_line():
    f = bergman_fan(uniform(1, 3)).fan
    assert len(f.cones) == 1 and f.cones[0].rays == ()
    assert f.dim == 1


@pytest.mark.parametrize("m", [uniform(3, 4), uniform(2, 5), builtin("k4"), builtin("vamos")], ids=repr)
def test_bergman_fan_shape(m):
    b = bergman_fan(m)
    assert len(b.fan.cones) == len(m.maximal_flat_chains())
    assert b.fan.dim == m.rank
    assert all(cone_dim(b.fan.cone(i)) == m.rank for i in range(len(b.fan.cones)))


def test_bergman_fan_preconditions():
    with pytest.raises(ValueError):
        bergman_fan(from_matrix([[1, 0, 1]]))  # element 2 is a loop
    with pytest.raises(ValueError):
        bergman_fan(uniform(0, 0))


def test_span_chain_and_projection():
    m = uniform(3, 4)
    chain = span_chain(m, {2, 4})
    assert chain == [frozenset({2}), frozenset({2, 4})]
    assert cone_dim(project_cone(chain_cone(chain, 4), {2, 4})) == 2
    # a dependent set repeats a flat
    v = builtin("vamos")
    chain = span_chain(v, {1, 2, 3, 4})
    assert chain[2] == chain[3]


@pytest.mark.parametrize(
    "m", [uniform(2, 3), uniform(3, 5), uniform(1, 4), builtin("k4"), builtin("vamos")], ids=repr
)
def test_lemma_examples(m):
    rep = verify_lemma_bergman(m)
    assert rep.equal and rep.witness is None
    assert rep.chain_witnesses_ok and rep.trace_bounds_ok
    assert rep.ok


@settings(max_examples=25, deadline=None)
@given(loop_free_matrices())
def test_lemma_on_random_vector_matroids(a):
    m = from_matrix(a)
    if m.rank == 0:
        return
    assert verify_lemma_bergman(m).ok


def test_bergman_fans_are_balanced_with_rigid_weights():
    for m in [uniform(2, 3), uniform(3, 4), builtin("k4")]:
        f = bergman_fan(m).fan
        assert is_balanced(f).balanced
        ws = balancing_weight_space(f)
        assert ws.dim == 1 and ws.basis == [(1,) * len(f.cones)]


def test_disconnected_matroid_fan_still_balanced():
    m = from_matrix([[1, 1, 0, 0], [0, 0, 1, 1]])
    assert not m.is_connected()
    f = bergman_fan(m).fan
    assert is_balanced(f).balanced
    ws = balancing_weight_space(f)
    assert ws.dim >= 1


def test_ridge_counts_agree():
    for m in [uniform(3, 4), builtin("k4"), uniform(4, 5)]:
        assert len(ridge_incidences(bergman_fan(m).fan)) == ridge_count_from_chains(m)


# --- realizability ------------------------------------------------------------


def test_realizability_examples():
    ideal, _ = parse_ideal("vars 3\nx1 + x2 - x3\n")
    rep = realizability_witness_check(uniform(2, 3), ideal)
    assert rep.match and rep.conclusive
    ideal, _ = parse_ideal("vars 3\nx1 - x2\n")
    rep = realizability_witness_check(uniform(2, 3), ideal)
    assert not rep.match
    assert rep.witness == frozenset({1, 2})


def test_realizability_preconditions():
    with pytest.raises(ValueError):
        realizability_witness_check(uniform(2, 3), Ideal(3, (Polynomial.variable(1, 3),)))
    with pytest.raises(ValueError):
        realizability_witness_check(uniform(2, 4), Ideal(3, ()))


@settings(max_examples=25, deadline=None)
@given(loop_free_matrices(max_rows=3, max_cols=5))
def test_linear_ideal_realizes_its_column_matroid(a):
    m = from_matrix(a)
    rep = realizability_witness_check(m, linear_ideal_from_matrix(a))
    assert rep.conclusive and rep.match
    assert is_matroid(rep.ideal_family)[0]
