"""Face classification of polytope pairs and the separating complex."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from maxtope.polytope import conv_union, f_vector, hull, translate
from maxtope.separate import (
    classify_faces,
    in_general_position,
    perturb_to_general_position,
    separating_complex_stats,
    separating_fan,
)

seeds = st.integers(min_value=0, max_value=10_000)


def square():
    return hull([(-1, -1), (-1, 1), (1, -1), (1, 1)])


def box(rx, ry, rz):
    return hull(list(itertools.product((-rx, rx), (-ry, ry), (-rz, rz))))


def square_pair():
    P1 = square()
    return P1, translate(P1, (10, 1))


def test_square_pair_is_in_general_position():
    assert in_general_position(*square_pair())
    # a pure x-translate ties on the whole vertical axis of directions
    assert not in_general_position(square(), translate(square(), (10, 0)))


def test_square_pair_vertex_labels():
    typing = classify_faces(*square_pair())
    assert sorted(typing.vertex_labels) == ["a", "b", "split", "split"]
    assert sorted(typing.ray_labels) == ["a", "a", "b", "b"]
    assert typing.label_counts() == {"a": 3, "b": 3, "split": 2}


def test_split_count_predicts_union_vertices():
    # translate: a-vertices survive once, b-vertices once, splits twice
    P1, P2 = square_pair()
    typing = classify_faces(P1, P2)
    a = typing.vertex_labels.count("a")
    b = typing.vertex_labels.count("b")
    s = typing.vertex_labels.count("split")
    assert conv_union(P1, P2).vertex_count() == a + b + 2 * s


def test_square_pair_complex_is_two_points():
    fv, components, euler = separating_complex_stats(*square_pair())
    assert fv == (2,)
    assert components == 2
    assert euler == 2


def test_box_pair_complex_is_two_cycles():
    # the separating structure of the two elongated boxes is a pair of
    # disjoint 8-cycles girdling the hull
    P1, P2 = box(2, 2, 1), box(1, 1, 2)
    assert in_general_position(P1, P2)
    fv, components, euler = separating_complex_stats(P1, P2)
    assert fv == (8, 8)
    assert components == 2
    assert euler == 0
    complex_ = separating_fan(P1, P2)
    assert complex_.component_count() == 2
    assert complex_.component_euler(0) == 0
    assert complex_.component_euler(1) == 0


def test_box_pair_label_counts():
    typing = classify_faces(box(2, 2, 1), box(1, 1, 2))
    counts = typing.label_counts()
    assert counts["split"] == 16
    assert sum(counts.values()) == 26


def test_separating_fan_needs_equivalent_fans():
    P = square()
    T = hull([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(ValueError):
        separating_fan(P, T)


def test_stats_reject_degenerate_pairs():
    with pytest.raises(ValueError):
        separating_complex_stats(square(), translate(square(), (10, 0)))


@settings(deadline=None, max_examples=15)
@given(seeds)
def test_perturbation_restores_general_position(seed):
    P1 = square()
    P2 = translate(P1, (10, 0))
    assert not in_general_position(P1, P2)
    Q1, Q2 = perturb_to_general_position(P1, P2, seed)
    assert in_general_position(Q1, Q2)
    # perturbation must not change either combinatorial type
    assert f_vector(Q1) == f_vector(P1)
    assert f_vector(Q2) == f_vector(P2)


def test_labels_come_from_the_known_alphabet():
    typing = classify_faces(box(2, 2, 1), box(1, 1, 2))
    assert set(typing.labels) <= {"a", "b", "c", "d", "split", None}


def test_self_pair_has_no_split_faces():
    P = square()
    typing = classify_faces(P, P)
    assert typing.vertex_labels.count("split") == 0
