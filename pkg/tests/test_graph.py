from __future__ import annotations

from itertools import combinations

import pytest
from conftest import complete, path, uniform
from hypothesis import given, settings
from hypothesis import strategies as st

from antifactor.graph import (
    DegreeConstraints,
    InputError,
    Instance,
    MultiGraph,
    degree_vector,
    factor_to_antifactor,
    format_constraints,
    format_graph,
    is_solution,
    parse_constraints,
    parse_graph,
)


def test_isolated_vertex_is_trivially_fine():
    assert is_solution(uniform(MultiGraph(1, ()), [1]), [])


def test_empty_selection_violates_zero():
    assert not is_solution(uniform(MultiGraph(2, ((0, 1),)), [0]), [])


def test_two_triangle_edges_cover(k3_cover):
    assert is_solution(k3_cover, [0, 1])
    assert not is_solution(k3_cover, [0])


def test_bad_edge_id_rejected(k3_cover):
    with pytest.raises(InputError):
        is_solution(k3_cover, [3])


def test_self_loop_rejected():
    with pytest.raises(InputError):
        MultiGraph(2, ((1, 1),))


def test_endpoint_out_of_range():
    with pytest.raises(InputError):
        MultiGraph(2, ((0, 2),))


def test_constraint_length_must_match():
    with pytest.raises(InputError):
        Instance(complete(3), DegreeConstraints.uniform(2, [0]))


def test_factor_conversion_examples():
    assert factor_to_antifactor(complete(4), [1]).excluded == ((0, 2, 3),) * 4
    assert factor_to_antifactor(path(3), [0, 1]).excluded == ((), (2,), ())
    star = MultiGraph(4, ((0, 1), (0, 2), (0, 3)))
    assert factor_to_antifactor(star, [0, 3]).excluded == ((1, 2), (1,), (1,), (1,))


def test_factor_conversion_needs_allowed_values():
    with pytest.raises(InputError):
        factor_to_antifactor(complete(3), [])


def test_degree_vector_examples():
    g = complete(3)
    assert degree_vector(g, [0], [0, 1, 2]) == [1, 1, 0]
    assert degree_vector(g, [], [0, 1, 2]) == [0, 0, 0]
    double = MultiGraph(2, ((0, 1), (0, 1)))
    assert degree_vector(double, [0, 1], [0, 1]) == [2, 2]


def test_normalized_drops_unreachable_degrees():
    inst = uniform(path(3), [0, 2, 5])
    assert inst.constraints.normalized(inst.graph).excluded == ((0,), (0, 2), (0,))


def test_graph_file_round_trip():
    g = MultiGraph(4, ((0, 1), (0, 1), (2, 3)))
    text = format_graph(g)
    assert text.splitlines()[0] == "p af 4 3"
    assert parse_graph(text) == g


def test_graph_parser_skips_comments_and_reports_lines():
    assert parse_graph("c hi\np af 2 1\ne 1 2\n").edges == ((0, 1),)
    with pytest.raises(InputError, match="line 3"):
        parse_graph("p af 2 2\ne 1 2\ne 1 x\n")
    with pytest.raises(InputError):
        parse_graph("p af 2 2\ne 1 2\n")


def test_constraints_round_trip_and_defaults():
    cons = parse_constraints("x 2 2 0 3\n", 3)
    assert cons.excluded == ((), (0, 3), ())
    assert parse_constraints(format_constraints(cons), 3) == cons
    with pytest.raises(InputError, match="line 1"):
        parse_constraints("x 2 3 0 3\n", 3)


@st.composite
def small_instance(draw):
    n = draw(st.integers(2, 5))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]), max_size=7))
    exs = draw(st.lists(st.sets(st.integers(0, 3), max_size=3), min_size=n, max_size=n))
    return Instance(MultiGraph(n, tuple(edges)), DegreeConstraints(tuple(tuple(x) for x in exs)))


@settings(max_examples=60, deadline=None)
@given(small_instance(), st.sets(st.integers(0, 3), min_size=1))
def test_factor_round_trip(inst, allowed):
    g = inst.graph
    conv = Instance(g, factor_to_antifactor(g, allowed))
    for size in range(g.m + 1):
        for S in combinations(range(g.m), size):
            degs = degree_vector(g, S, range(g.n))
            assert all(d in allowed for d in degs) == is_solution(conv, S)
            assert all(d <= g.degree(v) for v, d in enumerate(degs))
