"""Candidate zonotope-pair data and the realizability rank test."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from maxtope.candidate import (
    CandidateParams,
    build_candidate,
    candidate_space_dim,
    condition_matrix,
    fiber_dim,
    make_candidate,
    normalize_scaling,
    phi,
    rank_condition,
    realizability,
    weight_space_dim,
)
from maxtope.network import build_polytope, sample_network
from maxtope.polytope import f_vector, support
from maxtope.ratgeom import matrix

seeds = st.integers(min_value=0, max_value=10_000)


def square_candidate():
    # one pair in the plane: zonotopes {0} and a unit square, no shift
    return make_candidate(
        2,
        2,
        1,
        [[1, 0], [0, 1]],
        [[0], [0]],
        [[0], [0]],
        [[0, 0]],
        [[1, 1]],
    )


def test_params_validate_shapes():
    with pytest.raises(ValueError):
        make_candidate(2, 2, 1, [[1, 0]], [[0], [0]], [[0], [0]], [[0, 0]], [[1, 1]])
    with pytest.raises(ValueError):
        make_candidate(
            2, 2, 1, [[1, 0], [0, 1]], [[0], [0]], [[0], [0]], [[0, -1]], [[1, 1]]
        )


def test_build_candidate_square():
    P = build_candidate(square_candidate())
    assert f_vector(P) == (4, 4)
    assert set(P.vertices) == {(0, 0), (1, 0), (0, 1), (1, 1)}


@settings(deadline=None, max_examples=30)
@given(seeds)
def test_phi_image_builds_the_network_polytope(seed):
    net = sample_network((2, 2, 2), seed)
    p = phi(net)
    P = build_candidate(p)
    Q = build_polytope(net)
    for u in [(1, 0), (0, 1), (1, 1), (-1, 2), (3, -2)]:
        assert support(P, u)[0] == support(Q, u)[0]


def test_phi_rejects_deep_networks():
    with pytest.raises(ValueError):
        phi(sample_network((2, 2, 1, 1), 0))


def test_condition_matrix_shape():
    p = square_candidate()
    M = condition_matrix(p)
    assert len(M) == p.n + p.d
    assert len(M[0]) == 2 * p.m


@settings(deadline=None, max_examples=30)
@given(seeds)
def test_phi_images_satisfy_the_rank_condition(seed):
    p = phi(sample_network((2, 1, 2), seed))
    holds, r = rank_condition(p)
    assert holds
    assert r == 1


@settings(deadline=None, max_examples=20)
@given(seeds)
def test_generic_candidates_fail_the_rank_condition(seed):
    # a (2,1,2) candidate has a 3 x 4 condition matrix, generically rank 3 > n
    import random

    rng = random.Random(seed)

    def draw(rows, cols):
        return [
            [Fraction(rng.randint(1, 1000), 1000) for _ in range(cols)]
            for _ in range(rows)
        ]

    p = make_candidate(2, 1, 2, draw(2, 1), draw(2, 2), draw(2, 2), draw(2, 1), draw(2, 1))
    holds, r = rank_condition(p)
    assert not holds
    assert r == 3


def test_dimension_counts():
    assert candidate_space_dim(2, 1, 2) == 13
    assert weight_space_dim(2, 1, 2) == 7
    assert candidate_space_dim(2, 2, 1) == 10
    assert fiber_dim(2, 2, 1) == 0
    assert fiber_dim(3, 4, 1) == 6


def test_normalize_scaling_fixes_first_t_row():
    p = phi(sample_network((2, 2, 2), 4))
    q = normalize_scaling(p)
    assert all(x == 1 for x in q.t[0])
    # the candidate polytope is unchanged by the rescaling
    P, Q = build_candidate(p), build_candidate(q)
    assert set(P.vertices) == set(Q.vertices)


@settings(deadline=None, max_examples=15)
@given(seeds)
def test_phi_images_are_reported_realized(seed):
    p = phi(sample_network((2, 1, 2), seed))
    tier, net = realizability(p)
    assert tier == "realized"
    assert net is not None
    back = phi(net)
    assert back == p


def test_generic_candidate_fails_necessary_condition():
    import random

    rng = random.Random(99)

    def draw(rows, cols):
        return [
            [Fraction(rng.randint(1, 1000), 1000) for _ in range(cols)]
            for _ in range(rows)
        ]

    p = make_candidate(2, 1, 2, draw(2, 1), draw(2, 2), draw(2, 2), draw(2, 1), draw(2, 1))
    tier, net = realizability(p)
    assert tier == "fails_necessary_condition"
    assert net is None
