"""Simple tilts on symbolic collections of heart simples.

A heart of the bounded t-structure is carried around as the ordered
collection of its simples, each remembered three ways: a symbolic
degree table (where the nonzero graded Homs sit), a K0 class, and an
exact object handle for oracle cross-checks.  Tilting is performed on
the degree table by closed-form update rules; the handles are updated
independently through twist triangles so the two books can be compared.
"""
from __future__ import annotations

from dataclasses import dataclass

from .quiver import QuiverError, check_a1, check_a2, a1_witness, a2_witness
from .derived import derived_object, graded_hom, k0_class, shift
from .rep import _middle_term, morphism_cokernel, morphism_kernel


class TiltError(ValueError):
    pass


class InternalInconsistencyError(TiltError):
    """The engine produced data that violates its own invariants."""


SHARP = "sharp"
FLAT = "flat"


@dataclass(frozen=True)
class CollectionItem:
    handle: object  # DerivedObject
    k0: tuple
    label: str


@dataclass(frozen=True)
class SymbolicCollection:
    """Ordered simples with a degree table over 0-based position pairs."""

    items: tuple
    degrees: dict  # (i, j) -> (degree, dim), entries only for i < j

    def __len__(self):
        return len(self.items)

    def entry(self, i, j):
        return self.degrees.get((i, j))


@dataclass(frozen=True)
class TiltStep:
    index: int  # 1-based tilted slot, position in the reordered input
    direction: str
    pivot: int  # 1-based i-sharp / i-flat
    reorder_perm: tuple  # new pos -> old pos, applied before tilting
    placements: tuple  # per output slot: (role, input pos, d) with
    # role in {"keep", "shift", "twist"} and d the twist multiplicity


def _item_label(ctx, handle):
    parts = []
    for s, idx in handle.summands:
        key = ctx.registry.key(idx)
        parts.append(key if s == 0 else f"{key}[{s}]")
    return " + ".join(parts) if parts else "0"


def _make_item(ctx, handle):
    return CollectionItem(handle, k0_class(ctx, handle), _item_label(ctx, handle))


def std_collection(ctx):
    """The simples of the module category in vertex order."""
    q = ctx.quiver
    if not check_a1(q):
        raise QuiverError(f"(A1) violated at {a1_witness(q)}")
    if not check_a2(q):
        raise QuiverError(f"(A2) violated at {a2_witness(q)}")
    items = []
    for i in range(1, q.mu + 1):
        handle = derived_object([(0, ctx.simple_id(i))])
        items.append(_make_item(ctx, handle))
    degrees = {}
    for s, t in q.arrows:
        degrees[(s - 1, t - 1)] = (1, 1)
    return SymbolicCollection(tuple(items), degrees)


@dataclass(frozen=True)
class E1E2Report:
    e1_witnesses: tuple  # pairs (i, j) with dimension > 1 (0-based)
    e2_witnesses: tuple  # triples (k, i, l) breaking additivity

    @property
    def ok(self):
        return not self.e1_witnesses and not self.e2_witnesses


def check_e1_e2(c):
    n = len(c)
    e1 = [key for key, (p, d) in sorted(c.degrees.items()) if d > 1]
    e2 = []
    for k in range(n):
        for i in range(k + 1, n):
            for l in range(i + 1, n):
                a, b, ab = c.entry(k, i), c.entry(i, l), c.entry(k, l)
                if a and b and ab and ab[0] != a[0] + b[0]:
                    e2.append((k, i, l))
    return E1E2Report(tuple(e1), tuple(e2))


# -- reordering --------------------------------------------------------


def _apply_permutation(c, perm):
    """Reindex a collection by perm (new pos -> old pos)."""
    inv = [0] * len(perm)
    for new, old in enumerate(perm):
        inv[old] = new
    items = tuple(c.items[old] for old in perm)
    degrees = {}
    for (i, j), val in c.degrees.items():
        u, v = inv[i], inv[j]
        if u > v:
            raise InternalInconsistencyError(
                f"reordering would move the degree-{val[0]} entry "
                f"({i},{j}) backward"
            )
        degrees[(u, v)] = val
    return SymbolicCollection(items, degrees)


def reorder_for_tilt(c, i, direction):
    """Normalize the order around slot i before tilting.

    Sharp: among predecessors of i, every degree >= 2 entry into i must
    end up before every degree-1 entry; flat is mirrored among the
    successors (degree-1 entries from i first).  Pairs connected by a
    degree entry may never flip, so the new order is a topological sort
    of the affected segment with the entry pairs as hard constraints
    and the degree class as a greedy preference.  If the two are
    incompatible the input was corrupt and an internal error is raised.
    """
    idx = i - 1
    n = len(c)
    if direction == SHARP:
        segment = list(range(idx))

        def klass(k):
            e = c.entry(k, idx)
            if e is None:
                return 1
            return 0 if e[0] >= 2 else 2
    elif direction == FLAT:
        segment = list(range(idx + 1, n))

        def klass(l):
            e = c.entry(idx, l)
            if e is None:
                return 1
            return 0 if e[0] == 1 else 2
    else:
        raise TiltError(f"unknown direction {direction!r}")
    ordered = _constrained_order(c, segment, klass)
    perm = list(range(n))
    for slot, old in zip(segment, ordered):
        perm[slot] = old
    return _apply_permutation(c, perm), tuple(perm)


def _constrained_order(c, segment, klass):
    """Topological order of a slot segment.

    Degree entries within the segment are hard before/after
    constraints; among the available slots the smallest (class,
    original position) is taken, so class-0 slots drift to the front
    and class-2 slots to the back as far as the entries allow.  A
    forced class inversion (a class-2 slot that must precede a class-0
    one) means the collection violates its own additivity constraints.
    """
    remaining = set(segment)
    indeg = {k: 0 for k in segment}
    for x in segment:
        for y in segment:
            if x < y and c.entry(x, y):
                indeg[y] += 1
    out = []
    while remaining:
        ready = [k for k in remaining if indeg[k] == 0]
        pick = min(ready, key=lambda k: (klass(k), k))
        if klass(pick) == 2 and any(klass(k) == 0 for k in remaining):
            raise InternalInconsistencyError(
                "entry constraints force a low-degree slot before a "
                "high-degree one; (E2) should have excluded this"
            )
        out.append(pick)
        remaining.discard(pick)
        for y in remaining:
            if pick < y and c.entry(pick, y):
                indeg[y] -= 1
            elif y < pick and c.entry(y, pick):
                raise InternalInconsistencyError(
                    "topological order tried to flip an entry pair"
                )
    return out


def tilt_index(c, i, direction):
    """The pivot i-sharp (min) or i-flat (max); slot i itself qualifies."""
    idx = i - 1
    if direction == SHARP:
        for j in range(idx):
            e = c.entry(j, idx)
            if e and e[0] <= 1:
                return j + 1
        return i
    if direction == FLAT:
        for l in range(len(c) - 1, idx, -1):
            e = c.entry(idx, l)
            if e and e[0] <= 1:
                return l + 1
        return i
    raise TiltError(f"unknown direction {direction!r}")


# -- twist oracle ------------------------------------------------------


def psi_twist_oracle(ctx, s, t, direction):
    """Twist of t through s, via the defining triangle.

    Sharp: fiber of t -> Hom^1(t, s)* tensor s[1]; flat: cone of
    Hom^1(s, t) tensor s[-1] -> t.  Returns t unchanged when the
    relevant Hom^1 vanishes; the dimension must be at most 1.
    """
    b, ids = s.single()
    a, idt = t.single()
    key = (direction, ids, idt, a - b)
    cached = ctx._twist_cache.get(key)
    if cached is not None:
        return shift(cached, b)
    base = _twist_base(ctx, ids, idt, a - b, direction)
    ctx._twist_cache[key] = base
    return shift(base, b)


def _twist_base(ctx, ids, idt, rel, direction):
    """Twist with s placed at shift 0 and t at shift rel."""
    s = derived_object([(0, ids)])
    t = derived_object([(rel, idt)])
    if direction == SHARP:
        d = graded_hom(ctx, t, s).get(1, 0)
    elif direction == FLAT:
        d = graded_hom(ctx, s, t).get(1, 0)
    else:
        raise TiltError(f"unknown direction {direction!r}")
    if d == 0:
        return t
    if d > 1:
        raise TiltError(
            f"twist multiplicity {d} > 1: input violates the "
            "one-dimensionality hypothesis"
        )
    srep = ctx.registry.rep(ids)
    trep = ctx.registry.rep(idt)
    if direction == SHARP:
        # map t -> s[1]; rel == 0 gives an extension class, rel == 1
        # an honest module map whose fiber splits as coker + ker[1]
        if rel == 0:
            cls = ctx.ext_basis(idt, ids)[0]
            mid = _middle_term(trep, srep, cls.cocycle)
            return _decompose_at(ctx, mid, 0)
        if rel == 1:
            g = ctx.hom_basis(idt, ids)[0]
            return _cone_pair(ctx, g, trep, srep, at_shift=0)
    else:
        # map s[-1] -> t; rel == 0 gives an extension class of s by t,
        # rel == -1 a module map t <- s whose cone splits
        if rel == 0:
            cls = ctx.ext_basis(ids, idt)[0]
            mid = _middle_term(srep, trep, cls.cocycle)
            return _decompose_at(ctx, mid, 0)
        if rel == -1:
            h = ctx.hom_basis(ids, idt)[0]
            return _cone_pair(ctx, h, srep, trep, at_shift=-1)
    raise InternalInconsistencyError(
        f"nonzero Hom^1 at relative shift {rel}: outside the "
        "hereditary window"
    )


def _decompose_at(ctx, rep, at_shift):
    pairs = []
    for idx, mult in sorted(ctx.decompose(rep).items()):
        pairs.extend([(at_shift, idx)] * mult)
    return derived_object(pairs)


def _cone_pair(ctx, f, m, n, at_shift):
    coker = morphism_cokernel(f, m, n)
    ker = morphism_kernel(f, m, n)
    pairs = []
    if coker.total_dim:
        pairs.extend(_decompose_at(ctx, coker, at_shift).summands)
    if ker.total_dim:
        pairs.extend(_decompose_at(ctx, ker, at_shift + 1).summands)
    return derived_object(pairs)


# -- the tilt itself ---------------------------------------------------


def tilt(ctx, c, i, direction):
    """Simple tilt at slot i (1-based); returns (collection, TiltStep)."""
    if not (1 <= i <= len(c)):
        raise TiltError(f"tilt index {i} out of range")
    if direction not in (SHARP, FLAT):
        raise TiltError(f"unknown direction {direction!r}")
    c, perm = reorder_for_tilt(c, i, direction)
    pivot = tilt_index(c, i, direction)
    idx, pv = i - 1, pivot - 1
    n = len(c)
    if direction == SHARP:
        # new order: 0..pv-1, E_i[1], twisted pv..idx-1, idx+1..
        placements = (
            [("keep", k, 0) for k in range(pv)]
            + [("shift", idx, 0)]
            + [("twist", j, _d_sharp(c, j, idx)) for j in range(pv, idx)]
            + [("keep", l, 0) for l in range(idx + 1, n)]
        )
    else:
        # new order: 0..idx-1, twisted idx+1..pv, E_i[-1], pv+1..
        placements = (
            [("keep", k, 0) for k in range(idx)]
            + [("twist", j, _d_flat(c, idx, j)) for j in range(idx + 1, pv + 1)]
            + [("shift", idx, 0)]
            + [("keep", l, 0) for l in range(pv + 1, n)]
        )
    items = tuple(
        _tilted_item(ctx, c, idx, role, src, d, direction)
        for role, src, d in placements
    )
    degrees = _tilted_degrees(c, idx, placements, direction)
    out = SymbolicCollection(items, degrees)
    report = check_e1_e2(out)
    if not report.ok:
        raise InternalInconsistencyError(
            f"tilt output violates (E1)/(E2): {report}"
        )
    step = TiltStep(i, direction, pivot, perm, tuple(placements))
    return out, step


def _d_sharp(c, j, idx):
    e = c.entry(j, idx)
    if e is None:
        return 0
    p, dim = e
    if p != 1 or dim != 1:
        raise InternalInconsistencyError(
            f"twisted predecessor {j} has entry {e}, expected degree 1"
        )
    return 1


def _d_flat(c, idx, j):
    e = c.entry(idx, j)
    if e is None:
        return 0
    p, dim = e
    if p != 1 or dim != 1:
        raise InternalInconsistencyError(
            f"twisted successor {j} has entry {e}, expected degree 1"
        )
    return 1


def _tilted_item(ctx, c, idx, role, src, d, direction):
    item = c.items[src]
    if role == "keep":
        return item
    if role == "shift":
        delta = 1 if direction == SHARP else -1
        return _make_item(ctx, shift(item.handle, delta))
    if d == 0:
        return item
    handle = psi_twist_oracle(ctx, c.items[idx].handle, item.handle, direction)
    new_item = _make_item(ctx, handle)
    expected = tuple(
        a + b for a, b in zip(item.k0, c.items[idx].k0)
    )
    if new_item.k0 != expected:
        raise InternalInconsistencyError(
            f"twist class {new_item.k0} != triangle prediction {expected}"
        )
    return new_item


def _tilted_degrees(c, idx, placements, direction):
    degrees = {}
    for u in range(len(placements)):
        for v in range(u + 1, len(placements)):
            val = _pair_degree(
                c, idx, placements[u], placements[v], direction
            )
            if val is not None:
                degrees[(u, v)] = val
    return degrees


def _pair_degree(c, idx, pu, pv, direction):
    """Degree table entry for an ordered pair of output slots."""
    (ru, su, du), (rv, sv, dv) = pu, pv
    old = c.entry(su, sv)
    if ru == "keep" and rv == "keep":
        return old
    if ru == "twist" and rv == "twist":
        return old
    sharp = direction == SHARP
    if ru == "keep" and rv == "shift":
        # sharp: k < pivot, entry degree drops; flat: k < i, it rises
        if old is None:
            return None
        p, dim = old
        return (p - 1, dim) if sharp else (p + 1, dim)
    if ru == "shift" and rv == "keep":
        if old is None:
            return None
        p, dim = old
        return (p + 1, dim) if sharp else (p - 1, dim)
    if (ru, rv) == ("shift", "twist") or (ru, rv) == ("twist", "shift"):
        d = dv if ru == "shift" else du
        return (1, 1) if d else None
    if ru == "keep" and rv == "twist":
        # trichotomy on (twist multiplicity, entry to the tilted slot,
        # entry to the twisted slot)
        d = dv
        via = c.entry(su, idx)
        if d == 0 or via is None:
            return old
        if old is None:
            return via
        return None
    if ru == "twist" and rv == "keep":
        d = du
        via = c.entry(idx, sv)
        if d == 0 or via is None:
            return old
        if old is None:
            return via
        return None
    raise InternalInconsistencyError(f"unhandled pair roles {ru}, {rv}")


# -- oracle comparison -------------------------------------------------


def cross_check(ctx, c_after, step=None, c_before=None):
    """Compare the symbolic books against the exact oracle.

    Recomputes every pairwise graded Hom on the object handles and the
    K0 class of every item; returns a list of mismatch strings (empty
    when the books agree).
    """
    mismatches = []
    n = len(c_after)
    for u, item in enumerate(c_after.items):
        oracle = k0_class(ctx, item.handle)
        if oracle != item.k0:
            mismatches.append(
                f"slot {u}: symbolic class {item.k0} != oracle {oracle}"
            )
        self_hom = graded_hom(ctx, item.handle, item.handle)
        if self_hom != {0: 1}:
            mismatches.append(f"slot {u}: not exceptional, End = {self_hom}")
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            gh = graded_hom(ctx, c_after.items[u].handle, c_after.items[v].handle)
            entry = c_after.entry(u, v) if u < v else None
            expected = {entry[0]: entry[1]} if entry else {}
            if gh != expected:
                mismatches.append(
                    f"pair ({u},{v}): symbolic {expected} != oracle {gh}"
                )
    return mismatches


# -- words and dumps ---------------------------------------------------


def parse_tilt_word(text):
    """Tokens "<index>+" (sharp) or "<index>-" (flat)."""
    word = []
    for tok in text.split():
        if len(tok) < 2 or tok[-1] not in "+-" or not tok[:-1].isdigit():
            raise TiltError(f"bad tilt token {tok!r}")
        word.append((int(tok[:-1]), SHARP if tok[-1] == "+" else FLAT))
    return word


def apply_tilt_word(ctx, c, word):
    steps = []
    for i, direction in word:
        c, step = tilt(ctx, c, i, direction)
        steps.append(step)
    return c, steps


def heart_key(c):
    """Canonical unordered key of the heart: sorted (shift, id) pairs."""
    return tuple(sorted(
        pair for item in c.items for pair in item.handle.summands
    ))


def dump_collection(ctx, c):
    items = []
    for item in c.items:
        items.append({
            "summands": [
                [ctx.registry.key(idx), s] for s, idx in item.handle.summands
            ],
            "class": list(item.k0),
            "label": item.label,
        })
    table = {
        f"{i + 1},{j + 1}": [p, d]
        for (i, j), (p, d) in sorted(c.degrees.items())
    }
    return {"items": items, "degrees": table}
