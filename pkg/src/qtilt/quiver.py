"""Quiver data: ordering convention, input format, (A1)/(A2), Euler form.

Vertices are labelled 1..mu and every arrow must go from a smaller
label to a larger one, so acyclicity is structural.  Arrows form a
multiset (parallel arrows are representable even though condition (A1)
rejects them for the tilting calculus).
"""
from __future__ import annotations

import json
from dataclasses import dataclass


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Quiver:
    mu: int
    arrows: tuple  # tuple of (source, target), 1-based, source < target

    def __post_init__(self):
        if self.mu < 1:
            raise QuiverError("vertex count must be >= 1")
        for s, t in self.arrows:
            if not (1 <= s <= self.mu and 1 <= t <= self.mu):
                raise QuiverError(f"arrow ({s},{t}) out of vertex range")
            if s >= t:
                raise QuiverError(
                    f"ordering violation: arrow ({s},{t}) must have "
                    "source < target"
                )

    def arrow_count(self, i, j):
        return sum(1 for s, t in self.arrows if s == i and t == j)

    def arrows_from(self, i):
        return [k for k, (s, _) in enumerate(self.arrows) if s == i]

    def arrows_into(self, j):
        return [k for k, (_, t) in enumerate(self.arrows) if t == j]


def parse_quiver(text):
    """Parse the canonical JSON quiver format.

    ``{"mu": <int>, "arrows": [[s, t], ...]}`` with ``s < t``; arrows may
    repeat for multiplicity.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverError(f"malformed quiver file: {exc}") from exc
    if not isinstance(obj, dict) or "mu" not in obj:
        raise QuiverError("quiver file must be an object with 'mu'")
    mu = obj["mu"]
    if not isinstance(mu, int):
        raise QuiverError("'mu' must be an integer")
    raw = obj.get("arrows", [])
    arrows = []
    for a in raw:
        if (not isinstance(a, (list, tuple)) or len(a) != 2
                or not all(isinstance(x, int) for x in a)):
            raise QuiverError(f"malformed arrow entry {a!r}")
        arrows.append((a[0], a[1]))
    return Quiver(mu, tuple(arrows))


def check_a1(q):
    """(A1): at most one arrow between each ordered vertex pair."""
    seen = set()
    for a in q.arrows:
        if a in seen:
            return False
        seen.add(a)
    return True


def a1_witness(q):
    seen = set()
    for a in q.arrows:
        if a in seen:
            return a
        seen.add(a)
    return None


def check_a2(q):
    """(A2): no arrow k->l when arrows k->i and i->l exist (k < i < l)."""
    return a2_witness(q) is None


def a2_witness(q):
    pairs = set(q.arrows)
    for k, i in pairs:
        for i2, l in pairs:
            if i2 == i and (k, l) in pairs:
                return (k, i, l)
    return None


@dataclass(frozen=True)
class EulerForm:
    """Integer matrix of <e_i, e_j> = delta_ij - #arrows(i -> j)."""

    matrix: tuple  # tuple of tuples, mu x mu

    def pair(self, a, b):
        m = self.matrix
        return sum(
            m[i][j] * a[i] * b[j]
            for i in range(len(m)) for j in range(len(m))
        )


def euler_form(q):
    mu = q.mu
    rows = []
    for i in range(1, mu + 1):
        row = []
        for j in range(1, mu + 1):
            row.append((1 if i == j else 0) - q.arrow_count(i, j))
        rows.append(tuple(row))
    return EulerForm(tuple(rows))


@dataclass(frozen=True)
class QuiverType:
    kind: str  # "dynkin" | "extended" | "other"
    name: str

    @property
    def is_dynkin(self):
        return self.kind == "dynkin"


def classify_type(q):
    """Classify the underlying undirected graph (multiplicities count)."""
    mu = q.mu
    deg = [0] * (mu + 1)
    adj = {v: [] for v in range(1, mu + 1)}
    multi = False
    seen = set()
    for s, t in q.arrows:
        deg[s] += 1
        deg[t] += 1
        adj[s].append(t)
        adj[t].append(s)
        if (s, t) in seen:
            multi = True
        seen.add((s, t))
    # connectivity
    if mu > 0:
        reached = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in reached:
                    reached.add(w)
                    stack.append(w)
        if len(reached) != mu:
            return QuiverType("other", "disconnected")
    e = len(q.arrows)
    if multi:
        if mu == 2 and e == 2:
            # Kronecker: affine A1
            return QuiverType("extended", "A1~")
        return QuiverType("other", "multigraph")
    if e == mu:
        # exactly one cycle; the affine A-type diagram is the pure cycle
        if all(deg[v] == 2 for v in range(1, mu + 1)):
            return QuiverType("extended", f"A{mu - 1}~")
        return QuiverType("other", "unicyclic")
    if e != mu - 1:
        return QuiverType("other", "not a tree")
    # tree cases
    degs = sorted(deg[1:], reverse=True)
    if mu == 1:
        return QuiverType("dynkin", "A1")
    if degs[0] <= 2:
        return QuiverType("dynkin", f"A{mu}")
    if degs[0] == 4 and degs[1] <= 2:
        if mu == 5:
            return QuiverType("extended", "D4~")
        return QuiverType("other", "tree with degree-4 vertex")
    if degs[0] == 3 and degs[1] == 3 and degs[2] <= 2:
        # two branch vertices: affine D-type when all four outer branches
        # are single edges
        centers = [v for v in range(1, mu + 1) if deg[v] == 3]
        if len(centers) == 2 and _is_affine_d(q, adj, deg, centers):
            return QuiverType("extended", f"D{mu - 1}~")
        return QuiverType("other", "tree with two branch vertices")
    if degs[0] == 3 and degs[1] <= 2:
        center = next(v for v in range(1, mu + 1) if deg[v] == 3)
        lengths = sorted(_branch_lengths(adj, deg, center))
        if lengths[:2] == [1, 1]:
            return QuiverType("dynkin", f"D{mu}")
        if lengths == [1, 2, 2]:
            return QuiverType("dynkin", "E6")
        if lengths == [1, 2, 3]:
            return QuiverType("dynkin", "E7")
        if lengths == [1, 2, 4]:
            return QuiverType("dynkin", "E8")
        if lengths == [2, 2, 2]:
            return QuiverType("extended", "E6~")
        if lengths == [1, 3, 3]:
            return QuiverType("extended", "E7~")
        if lengths == [1, 2, 5]:
            return QuiverType("extended", "E8~")
        return QuiverType("other", "star tree")
    return QuiverType("other", "tree")


def _branch_lengths(adj, deg, center):
    lengths = []
    for start in adj[center]:
        length = 1
        prev, cur = center, start
        while deg[cur] == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        lengths.append(length)
    return lengths


def _is_affine_d(q, adj, deg, centers):
    # both degree-3 vertices must carry two pendant leaves each, with a
    # plain path between the centers
    for c in centers:
        leaves = [w for w in adj[c] if deg[w] == 1]
        if len(leaves) != 2:
            return False
    return True
