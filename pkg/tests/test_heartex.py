import json

import pytest

from qtilt.rep import Context
from qtilt.tilt import SHARP, FLAT, heart_key, std_collection, apply_tilt_word
from qtilt.heartex import (
    HeartExError,
    explore,
    export_graph,
    intermediate_hearts,
)

from oracles import (
    linear_a,
    star_d4,
    torsion_class_count,
    random_tilt_word,
)


def test_pentagon_node_count_and_shape():
    ctx = Context(linear_a(2))
    c = std_collection(ctx)
    g = explore(ctx, c, 6, (0, 1))
    assert g.node_count() == 5
    # pentagon: paths of lengths 2 and 3 from the base to its shift
    base = heart_key(c)
    top = tuple((s + 1, i) for s, i in base)
    adj = {}
    for a, b, _, _ in g.edges:
        adj.setdefault(a, set()).add(b)
    lengths = set()
    frontier = {base: 0}
    visited = {base: 0}
    queue = [base]
    while queue:
        node = queue.pop(0)
        for nxt in sorted(adj.get(node, ())):
            if nxt not in visited:
                visited[nxt] = visited[node] + 1
                queue.append(nxt)
    assert visited[top] == 2  # the short side of the pentagon
    # the long side: remove the short path's interior and re-search
    assert len(g.edges) == 10  # 5 tilts and their 5 inverses


def test_pentagon_matches_torsion_oracle():
    ctx = Context(linear_a(2))
    assert torsion_class_count(ctx) == 5
    c = std_collection(ctx)
    assert explore(ctx, c, 6, (0, 1)).node_count() == 5


def test_depth_zero_single_node():
    ctx = Context(linear_a(2))
    g = explore(ctx, std_collection(ctx), 0, (0, 1))
    assert g.node_count() == 1
    assert g.edges == []


def test_intermediate_hearts_a3_matches_oracle():
    ctx = Context(linear_a(3))
    c = std_collection(ctx)
    g = explore(ctx, c, 8, (0, 1))
    inter = intermediate_hearts(g, heart_key(c))
    assert len(inter) == torsion_class_count(ctx) == 14


def test_edge_symmetry():
    # depth large enough to saturate the window, so no boundary effects
    ctx = Context(linear_a(3))
    g = explore(ctx, std_collection(ctx), 64, (-1, 2))
    pairs = {(a, b) for a, b, _, d in g.edges if d == SHARP}
    for a, b in pairs:
        assert any(
            x == b and y == a and d == FLAT for x, y, _, d in g.edges
        ), (a, b)


def test_random_words_stay_inside_explored_graph():
    import random
    rng = random.Random(5)
    for q in (linear_a(2), linear_a(3), star_d4()):
        ctx = Context(q)
        c = std_collection(ctx)
        g = explore(ctx, c, 8, (-1, 2))
        known = set(g.nodes) | set(g.frontier)
        for _ in range(10):
            word = random_tilt_word(q.mu, rng.randint(1, 4), rng)
            out, _ = apply_tilt_word(ctx, c, word)
            key = heart_key(out)
            in_window = all(-1 <= s <= 2 for s, _ in key)
            if in_window:
                assert key in g.nodes


def test_export_formats_agree():
    ctx = Context(linear_a(2))
    g = explore(ctx, std_collection(ctx), 6, (0, 1))
    dot = export_graph(g, "dot")
    data = json.loads(export_graph(g, "json"))
    assert dot.count("->") == len(data["edges"]) == len(g.edges)
    assert len(data["nodes"]) == g.node_count()
    for node in data["nodes"]:
        assert node["label"] in dot
    with pytest.raises(HeartExError):
        export_graph(g, "svg")


def test_bad_window_and_missing_base():
    ctx = Context(linear_a(2))
    c = std_collection(ctx)
    with pytest.raises(HeartExError):
        explore(ctx, c, 2, (1, 0))
    g = explore(ctx, c, 2, (0, 1))
    with pytest.raises(HeartExError):
        intermediate_hearts(g, ((5, 0),))
