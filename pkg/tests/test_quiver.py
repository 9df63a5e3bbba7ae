import json

import pytest

from qtilt.quiver import (
    Quiver,
    QuiverError,
    a1_witness,
    a2_witness,
    check_a1,
    check_a2,
    classify_type,
    euler_form,
    parse_quiver,
)

from oracles import linear_a, star_d4, oriented_e6, orientations, A_EDGES, D4_EDGES


def test_parse_roundtrip():
    q = parse_quiver(json.dumps({"mu": 3, "arrows": [[1, 2], [2, 3]]}))
    assert q == linear_a(3)


def test_ordering_convention_enforced():
    with pytest.raises(QuiverError):
        Quiver(2, ((2, 1),))
    with pytest.raises(QuiverError):
        Quiver(2, ((1, 1),))
    with pytest.raises(QuiverError):
        Quiver(2, ((1, 3),))


def test_a1_multiple_arrows():
    q = Quiver(2, ((1, 2), (1, 2)))
    assert not check_a1(q)
    assert a1_witness(q) == (1, 2)
    assert check_a1(linear_a(4))


def test_a2_shortcut_triangle():
    tri = Quiver(3, ((1, 2), (2, 3), (1, 3)))
    assert not check_a2(tri)
    assert a2_witness(tri) == (1, 2, 3)
    assert check_a2(linear_a(4))
    assert check_a2(star_d4())


def test_euler_form_values():
    e = euler_form(linear_a(2))
    assert e.pair((1, 0), (1, 0)) == 1
    assert e.pair((1, 0), (0, 1)) == -1
    assert e.pair((0, 1), (1, 0)) == 0


def test_classification_families():
    assert classify_type(linear_a(2)).name == "A2"
    assert classify_type(linear_a(4)).name == "A4"
    assert classify_type(star_d4()).name == "D4"
    assert classify_type(oriented_e6()).name == "E6"
    assert classify_type(star_d4()).is_dynkin
    kron = Quiver(2, ((1, 2), (1, 2)))
    assert not classify_type(kron).is_dynkin


def test_classification_stable_across_orientations():
    for q in orientations(4, A_EDGES[4]):
        assert classify_type(q).name == "A4"
    for q in orientations(4, D4_EDGES):
        assert classify_type(q).name == "D4"


def test_arrow_adjacency_helpers():
    q = linear_a(3)
    assert list(q.arrows_from(1)) == [0]
    assert list(q.arrows_into(3)) == [1]
    assert not list(q.arrows_from(3))
