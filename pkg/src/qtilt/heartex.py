"""Bounded exploration of the exchange graph of hearts.

Hearts are identified by the unordered multiset of their simples
(as shifted registry indecomposables).  Exploration is a breadth-first
search applying every simple tilt in both directions, bounded by a
depth and by a shift window so runs stay finite and reproducible.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .tilt import TiltError, heart_key, tilt, SHARP, FLAT


class HeartExError(ValueError):
    pass


@dataclass
class ExchangeGraph:
    nodes: dict = field(default_factory=dict)  # key -> witness collection
    node_order: list = field(default_factory=list)
    node_labels: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)  # (from key, to key, i, dir)
    frontier: dict = field(default_factory=dict)  # out-of-window hearts
    errors: list = field(default_factory=list)

    def node_count(self):
        return len(self.node_order)


def _key_label(ctx, key):
    parts = []
    for s, idx in key:
        name = ctx.registry.key(idx)
        parts.append(name if s == 0 else f"{name}[{s}]")
    return "{" + ", ".join(parts) + "}"


def _in_window(key, window):
    lo, hi = window
    return all(lo <= s <= hi for s, _ in key)


def explore(ctx, start, max_depth, window):
    """BFS over simple tilts from a starting collection.

    Hearts whose simples leave the shift window are kept on the
    frontier for auditability but are neither counted as nodes nor
    expanded.  Tilt failures are recorded per edge and exploration
    continues.  Node and edge order is deterministic.
    """
    lo, hi = window
    if lo > hi:
        raise HeartExError(f"empty shift window [{lo}, {hi}]")
    start_key = heart_key(start)
    if not _in_window(start_key, window):
        raise HeartExError("start collection lies outside the shift window")
    g = ExchangeGraph()
    g.nodes[start_key] = start
    g.node_order.append(start_key)
    g.node_labels[start_key] = _key_label(ctx, start_key)
    seen_edges = set()
    queue = [(start_key, 0)]
    qpos = 0
    while qpos < len(queue):
        key, depth = queue[qpos]
        qpos += 1
        if depth >= max_depth:
            continue
        c = g.nodes[key]
        for i in range(1, len(c) + 1):
            for direction in (SHARP, FLAT):
                try:
                    nxt, _ = tilt(ctx, c, i, direction)
                except TiltError as exc:
                    g.errors.append((key, i, direction, str(exc)))
                    continue
                nkey = heart_key(nxt)
                if not _in_window(nkey, window):
                    g.frontier.setdefault(nkey, nxt)
                    continue
                if nkey not in g.nodes:
                    g.nodes[nkey] = nxt
                    g.node_order.append(nkey)
                    g.node_labels[nkey] = _key_label(ctx, nkey)
                    queue.append((nkey, depth + 1))
                edge = (key, nkey, i, direction)
                if edge not in seen_edges:
                    seen_edges.add(edge)
                    g.edges.append(edge)
    return g


def intermediate_hearts(g, base):
    """Nodes whose simples sit within one shift above the base grading."""
    if base not in g.nodes:
        raise HeartExError("base heart not present in the graph")
    base_floor = min((s for s, _ in base), default=0)
    out = []
    for key in g.node_order:
        if all(s in (base_floor, base_floor + 1) for s, _ in key):
            out.append(key)
    return out


def _edge_token(i, direction):
    return f"{i}{'+' if direction == SHARP else '-'}"


def export_graph(g, fmt):
    if fmt == "json":
        index = {key: n for n, key in enumerate(g.node_order)}
        payload = {
            "nodes": [
                {"id": n, "label": g.node_labels[key]}
                for n, key in enumerate(g.node_order)
            ],
            "edges": [
                {"from": index[a], "to": index[b], "token": _edge_token(i, d)}
                for a, b, i, d in g.edges
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "dot":
        index = {key: n for n, key in enumerate(g.node_order)}
        lines = ["digraph hearts {"]
        for n, key in enumerate(g.node_order):
            lines.append(f'  n{n} [label="{g.node_labels[key]}"];')
        for a, b, i, d in g.edges:
            lines.append(
                f'  n{index[a]} -> n{index[b]} '
                f'[label="{_edge_token(i, d)}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise HeartExError(f"unknown export format {fmt!r}")
