"""Maxout networks: evaluation, polytope building, cube lifts, sampling."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from maxtope.network import (
    MaxoutNetwork,
    NetworkType,
    boxtope_network,
    build_big_cube,
    build_polytope,
    edge_independence_check,
    first_layer_cone_pointed,
    generic_dimension,
    has_zero_weight,
    make_network,
    sample_generic_network,
    sample_network,
    support_eval,
    validate,
)
from maxtope.polytope import f_vector, face_lattice, is_combinatorial_cube, project, support
from maxtope.bicolor import build_zonoboxtope

from oracles import support_oracle

seeds = st.integers(min_value=0, max_value=10_000)


def tiny_net():
    # one layer, two units in the plane: P = conv(a1, b1) + conv(a2, b2)
    return make_network(
        (2, 2),
        [[[1, 0], [0, 1]]],
        [[[-1, 0], [0, -1]]],
        [1, 1],
    )


def test_network_type_dims():
    t = NetworkType((3, 4, 2))
    assert t.input_dim == 3
    assert t.depth == 2
    assert t.hidden == (4, 2)
    assert t.total_hidden == 6


def test_tiny_net_builds_a_square():
    P = build_polytope(tiny_net())
    assert f_vector(P) == (4, 4)
    assert set(P.vertices) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}


@settings(deadline=None, max_examples=25)
@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3, 1), (2, 2, 2)]))
def test_polytope_support_agrees_with_network_evaluation(seed, dims):
    net = sample_network(dims, seed)
    P = build_polytope(net)
    for u in itertools.product((-1, 0, 1, 2), repeat=dims[0]):
        if not any(u):
            continue
        assert support(P, u)[0] == support_oracle(net, u)


@settings(deadline=None, max_examples=25)
@given(seeds)
def test_support_eval_matches_oracle(seed):
    net = sample_network((3, 2, 2), seed)
    for u in [(1, 0, 0), (0, -1, 2), (5, 5, 5), (-3, 1, -1)]:
        assert support_eval(net, u) == support_oracle(net, u)


def test_validate_flags_negative_deep_weights():
    bad = make_network(
        (2, 2, 1),
        [[[1, 0], [0, 1]], [[1, -1]]],
        [[[-1, 0], [0, -1]], [[2, 1]]],
        [1],
    )
    msgs = validate(bad)
    assert any("< 0" in m for m in msgs)
    assert validate(sample_network((2, 2, 1), 7)) == []


def test_make_network_coerces_to_fractions():
    net = tiny_net()
    assert isinstance(net.A[0][0][0], Fraction)
    assert isinstance(net.C[0], Fraction)


@settings(deadline=None, max_examples=20)
@given(seeds)
def test_sampling_is_deterministic(seed):
    a = sample_network((3, 3, 2), seed)
    b = sample_network((3, 3, 2), seed)
    assert a == b


def test_sample_generic_network_reports_attempts():
    net, used_seed, attempt = sample_generic_network((2, 2), 5)
    assert attempt == 0
    assert used_seed == 5
    assert net == sample_network((2, 2), 5)


def test_sample_generic_network_retries_until_predicate():
    calls = []

    def wants_third(net):
        calls.append(net)
        return len(calls) >= 3

    net, used_seed, attempt = sample_generic_network((2, 2), 11, predicate=wants_third)
    assert attempt == 2
    assert used_seed == 13
    assert net == sample_network((2, 2), 13)


def test_sample_generic_network_exhausts():
    with pytest.raises(RuntimeError):
        sample_generic_network((2, 2), 0, predicate=lambda net: False, max_retries=4)


def test_has_zero_weight():
    net = make_network((2, 1), [[[0, 1]]], [[[1, 0]]], [1])
    assert has_zero_weight(net)
    dense = make_network((2, 1), [[[2, 1]]], [[[1, 3]]], [2])
    assert not has_zero_weight(dense)


def test_big_cube_is_a_cube_projecting_onto_the_polytope():
    net = sample_network((2, 2, 1), 3)
    assert not has_zero_weight(net)
    B = build_big_cube(net)
    M = net.net_type.total_hidden
    assert B.vertex_count() == 2**M
    lat = face_lattice(B)
    assert is_combinatorial_cube(lat, lat.faces_of_dim(B.dim)[0])
    shadow = project(B, tuple(range(2)))
    assert set(shadow.vertices) == set(build_polytope(net).vertices)


def test_big_cube_rejects_zero_weights():
    net = make_network((2, 1), [[[0, 1]]], [[[1, 0]]], [1])
    with pytest.raises(ValueError):
        build_big_cube(net)


@settings(deadline=None, max_examples=10)
@given(seeds)
def test_generic_networks_pass_edge_independence(seed):
    net = sample_network((2, 2), seed)
    assert edge_independence_check(net)


def test_generic_dimension_small_cases():
    # a width bottleneck caps the dimension at min(d, 2n, n + m)
    assert generic_dimension(2, 2, 1, 0) == 2
    assert generic_dimension(3, 1, 1, 0) == 2
    assert generic_dimension(4, 2, 2, 0) == 4


def test_first_layer_cone_pointedness():
    pointed = make_network(
        (2, 2),
        [[[1, 0], [0, 1]]],
        [[[1, 1], [1, 2]]],
        [1, 1],
    )
    assert first_layer_cone_pointed(pointed)
    spanning = make_network(
        (2, 2),
        [[[1, 0], [-1, -1]]],
        [[[0, 1], [1, 1]]],
        [1, 1],
    )
    assert not first_layer_cone_pointed(spanning)


def test_boxtope_network_matches_direct_build():
    segments = [
        (( -1, 0), (1, 0)),
        ((0, -1), (0, 1)),
        ((-1, -1), (1, 1)),
    ]
    segs = [tuple(tuple(Fraction(x) for x in p) for p in s) for s in segments]
    a = [Fraction(2), Fraction(1), Fraction(1)]
    b = [Fraction(1), Fraction(1), Fraction(1)]
    net = boxtope_network(segs, a, b)
    P = build_polytope(net)
    Q = build_zonoboxtope(segs, a, b)
    assert set(P.vertices) == set(Q.vertices)
