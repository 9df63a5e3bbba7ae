"""Model of the bounded derived category of a hereditary path algebra.

Objects are stored fully decomposed as multisets of (shift, indec id)
pairs; hereditary splitting makes this lossless.  Graded Hom between
shifted indecomposables is supported in at most two consecutive degrees,
which is what makes single-degree cones (and hence mutations and
psi-twists) computable exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import RatMatrix, hstack, vstack
from .rep import (
    direct_sum,
    morphism_cokernel,
    morphism_kernel,
    _middle_term,
)


class DerivedError(ValueError):
    pass


class UnsupportedMapError(DerivedError):
    """A cone/mutation was requested outside the single-degree regime."""


@dataclass(frozen=True, order=True)
class DerivedObject:
    """Formal direct sum of shifted indecomposables, canonically sorted."""

    summands: tuple  # sorted tuple of (shift, indec id)

    def is_zero(self):
        return not self.summands

    def shifts(self):
        return [s for s, _ in self.summands]

    def single(self):
        """The unique (shift, id) pair, for indecomposable objects."""
        if len(self.summands) != 1:
            raise DerivedError("object is not a shifted indecomposable")
        return self.summands[0]


ZERO_OBJECT = DerivedObject(())


def derived_object(pairs):
    return DerivedObject(tuple(sorted(pairs)))


def object_of_rep(ctx, rep, shift_by=0):
    """Canonical DerivedObject of a module placed in degree -shift_by."""
    pairs = []
    for idx, mult in sorted(ctx.decompose(rep).items()):
        pairs.extend([(shift_by, idx)] * mult)
    return derived_object(pairs)


def simple_object(ctx, i, shift_by=0):
    return derived_object([(shift_by, ctx.simple_id(i))])


def shift(x, n):
    return derived_object([(s + n, i) for s, i in x.summands])


def k0_class(ctx, x):
    """Class in K0 with [M[n]] = (-1)^n dim M, over the vertex basis."""
    mu = ctx.quiver.mu
    out = [0] * mu
    for s, idx in x.summands:
        sign = -1 if s % 2 else 1
        dims = ctx.registry.rep(idx).dims
        for v in range(mu):
            out[v] += sign * dims[v]
    return tuple(out)


def graded_hom(ctx, x, y):
    """Degree -> dimension of Hom between derived objects; exact ints."""
    out = {}
    for a, ida in x.summands:
        for b, idb in y.summands:
            h, e = ctx.pair_dims(ida, idb)
            if h:
                out[a - b] = out.get(a - b, 0) + h
            if e:
                out[a - b + 1] = out.get(a - b + 1, 0) + e
    return {p: d for p, d in sorted(out.items()) if d}


def tensor_graded(v, e):
    """Graded vector space V tensor object E: degree p gives E[-p]^dim."""
    if e.is_zero():
        raise DerivedError("tensor with the zero object")
    pairs = []
    for p, d in v.items():
        if d < 0:
            raise DerivedError("negative graded dimension")
        for s, idx in e.summands:
            pairs.extend([(s - p, idx)] * d)
    return derived_object(pairs)


def is_exceptional(ctx, x):
    if x.is_zero():
        return False
    return graded_hom(ctx, x, x) == {0: 1}


# -- cones -------------------------------------------------------------


def _uniform_shift(x):
    shifts = set(x.shifts())
    if len(shifts) != 1:
        raise UnsupportedMapError(
            "cone source/target must sit in a single shift"
        )
    return shifts.pop()


def _collapse(ctx, x):
    """(shift, representation) pair for a single-shift object."""
    a = _uniform_shift(x)
    reps = [ctx.registry.rep(idx) for _, idx in x.summands]
    return a, direct_sum(reps)


def cone_single_degree(ctx, x, y, blocks):
    """Cone of a map x -> y given block components.

    ``x`` and ``y`` must each be concentrated in one shift.  When the
    shifts agree, ``blocks[(i, j)]`` is a tuple of per-vertex matrices
    (a module map from summand i of x to summand j of y); when y sits
    one shift higher, blocks are per-arrow cocycle tuples (Ext classes).
    Missing blocks are zero.  The result is returned canonically
    decomposed.
    """
    if x.is_zero():
        return y
    if y.is_zero():
        return shift(x, 1)
    a, xrep = _collapse(ctx, x)
    b, yrep = _collapse(ctx, y)
    q = ctx.quiver
    x_reps = [ctx.registry.rep(idx) for _, idx in x.summands]
    y_reps = [ctx.registry.rep(idx) for _, idx in y.summands]
    if b == a:
        f = _assemble_module_map(q, x_reps, y_reps, blocks)
        return _cone_of_module_map(ctx, f, xrep, yrep, a)
    if b == a + 1:
        z = _assemble_cocycle(q, x_reps, y_reps, blocks)
        mid = _middle_term(xrep, yrep, z)
        return object_of_rep(ctx, mid, a + 1)
    raise UnsupportedMapError(
        f"shift gap {b - a}: only module maps (0) and Ext classes (1) "
        "are supported"
    )


def _assemble_module_map(q, x_reps, y_reps, blocks):
    f = []
    for v in range(q.mu):
        rows = []
        for j, yr in enumerate(y_reps):
            cols = []
            for i, xr in enumerate(x_reps):
                blk = blocks.get((i, j))
                if blk is None:
                    cols.append(RatMatrix.zero(yr.dims[v], xr.dims[v]))
                else:
                    cols.append(blk[v])
            rows.append(hstack(cols) if cols else RatMatrix.zero(yr.dims[v], 0))
        f.append(vstack(rows))
    return tuple(f)


def _assemble_cocycle(q, x_reps, y_reps, blocks):
    z = []
    for k, (s, t) in enumerate(q.arrows):
        s -= 1
        t -= 1
        rows = []
        for j, yr in enumerate(y_reps):
            cols = []
            for i, xr in enumerate(x_reps):
                blk = blocks.get((i, j))
                if blk is None:
                    cols.append(RatMatrix.zero(yr.dims[t], xr.dims[s]))
                else:
                    cols.append(blk[k])
            rows.append(hstack(cols))
        z.append(vstack(rows))
    return tuple(z)


def _cone_of_module_map(ctx, f, xrep, yrep, at_shift):
    coker = morphism_cokernel(f, xrep, yrep)
    ker = morphism_kernel(f, xrep, yrep)
    pairs = []
    if coker.total_dim:
        pairs.extend(object_of_rep(ctx, coker, at_shift).summands)
    if ker.total_dim:
        pairs.extend(object_of_rep(ctx, ker, at_shift + 1).summands)
    return derived_object(pairs)


def _stacked_hom_map(ctx, idm, idn):
    """Coevaluation M -> N^d from the full Hom basis (d = dim Hom)."""
    basis = ctx.hom_basis(idm, idn)
    mu = ctx.quiver.mu
    return tuple(
        vstack([phi[v] for phi in basis]) for v in range(mu)
    )


def _stacked_hom_map_sources(ctx, idm, idn):
    """Evaluation M^d -> N from the full Hom basis."""
    basis = ctx.hom_basis(idm, idn)
    mu = ctx.quiver.mu
    return tuple(
        hstack([phi[v] for phi in basis]) for v in range(mu)
    )


def _stacked_ext_cocycle(ctx, idm, idn):
    """Cocycle of the universal extension of M by N^d (d = dim Ext^1)."""
    classes = ctx.ext_basis(idm, idn)
    arrows = ctx.quiver.arrows
    return tuple(
        vstack([cls.cocycle[k] for cls in classes]) for k in range(len(arrows))
    )


def _stacked_ext_cocycle_sources(ctx, idm, idn):
    """Cocycle of the universal extension of M^d by N."""
    classes = ctx.ext_basis(idm, idn)
    arrows = ctx.quiver.arrows
    return tuple(
        hstack([cls.cocycle[k] for cls in classes]) for k in range(len(arrows))
    )


def _single_degree(ctx, e, f):
    gh = graded_hom(ctx, e, f)
    if not gh:
        return None
    if len(gh) > 1:
        raise UnsupportedMapError(
            f"Hom spread over degrees {sorted(gh)}: mutation needs a "
            "single degree"
        )
    [(p, d)] = gh.items()
    return p, d


def right_mutation(ctx, e, f):
    """Fiber of the coevaluation e -> Hom(e,f)* tensor f."""
    deg = _single_degree(ctx, e, f)
    if deg is None:
        return e
    p, d = deg
    a, idm = e.single()
    b, idn = f.single()
    mod_degree = b + p - a  # degree at module level
    if mod_degree == 0:
        m = ctx.registry.rep(idm)
        n = ctx.registry.rep(idn)
        g = _stacked_hom_map(ctx, idm, idn)
        nd = direct_sum([n] * d)
        cone = _cone_of_module_map(ctx, g, m, nd, a)
        return shift(cone, -1)
    if mod_degree == 1:
        m = ctx.registry.rep(idm)
        n = ctx.registry.rep(idn)
        z = _stacked_ext_cocycle(ctx, idm, idn)
        nd = direct_sum([n] * d)
        mid = _middle_term(m, nd, z)
        return object_of_rep(ctx, mid, a)
    raise UnsupportedMapError("graded Hom outside the hereditary window")


def left_mutation(ctx, e, f):
    """Cone of the evaluation Hom(e,f) tensor e -> f."""
    deg = _single_degree(ctx, e, f)
    if deg is None:
        return f
    p, d = deg
    a, idm = e.single()
    b, idn = f.single()
    mod_degree = b + p - a
    if mod_degree == 0:
        m = ctx.registry.rep(idm)
        n = ctx.registry.rep(idn)
        h = _stacked_hom_map_sources(ctx, idm, idn)
        md = direct_sum([m] * d)
        return _cone_of_module_map(ctx, h, md, n, b)
    if mod_degree == 1:
        m = ctx.registry.rep(idm)
        n = ctx.registry.rep(idn)
        z = _stacked_ext_cocycle_sources(ctx, idm, idn)
        md = direct_sum([m] * d)
        mid = _middle_term(md, n, z)
        return object_of_rep(ctx, mid, b)
    raise UnsupportedMapError("graded Hom outside the hereditary window")


# -- collections -------------------------------------------------------


@dataclass(frozen=True)
class CollectionFlags:
    is_exceptional_collection: bool
    is_ext: bool
    is_monochromatic: bool
    degree_table: dict  # (i, j) 0-based -> (degree, dim)


def collection_flags(ctx, items):
    """Exceptional / Ext / monochromatic verdicts plus the degree table."""
    n = len(items)
    grids = {}
    for i in range(n):
        for j in range(n):
            grids[(i, j)] = graded_hom(ctx, items[i], items[j])
    exc = all(is_exceptional(ctx, x) for x in items) and all(
        not grids[(i, j)] for i in range(n) for j in range(n) if i > j
    )
    ext = all(
        all(p >= 1 for p in grids[(i, j)])
        for i in range(n) for j in range(n) if i != j
    )
    mono = all(
        (not g) or (len(g) == 1 and min(g) >= 0)
        for g in grids.values()
    )
    table = {}
    for (i, j), g in grids.items():
        if i != j and len(g) == 1:
            [(p, d)] = g.items()
            table[(i, j)] = (p, d)
    return CollectionFlags(exc, ext, mono, table)


def ext_normalize(ctx, items):
    """Shift each item so the collection becomes Ext.

    Greedy left to right: the first item is fixed; each later item gets
    the largest shift for which every incoming Hom from earlier items
    lands in degree >= 1 (the tightest constraint becomes degree 1).
    """
    n = len(items)
    qs = [0] * n
    for j in range(1, n):
        bound = None
        for i in range(j):
            gh = graded_hom(ctx, items[i], items[j])
            if not gh:
                continue
            # degrees after shifting: p + q_i - q_j; need min >= 1
            c = qs[i] + min(gh) - 1
            bound = c if bound is None else min(bound, c)
        qs[j] = 0 if bound is None else bound
    return [shift(items[j], qs[j]) for j in range(n)]


# -- braid action ------------------------------------------------------


def mutate(ctx, items, i, direction):
    """Mutation at slot i (1-based), direction "right" or "left".

    right: (..., E_{i+1}, R_{E_{i+1}} E_i, ...);
    left:  (..., L_{E_i} E_{i+1}, E_i, ...).
    """
    if not (1 <= i <= len(items) - 1):
        raise DerivedError(f"mutation index {i} out of range")
    items = list(items)
    e, f = items[i - 1], items[i]
    if direction == "right":
        items[i - 1], items[i] = f, right_mutation(ctx, e, f)
    elif direction == "left":
        items[i - 1], items[i] = left_mutation(ctx, e, f), e
    else:
        raise DerivedError(f"unknown mutation direction {direction!r}")
    return items


def parse_braid_word(text):
    """Tokens like "b1 b2^-1 e3 e1^-1" -> [(kind, index, exp), ...]."""
    word = []
    for tok in text.split():
        body = tok
        exp = 1
        if "^" in tok:
            body, _, e = tok.partition("^")
            exp = int(e)
        kind = body[0]
        if kind not in ("b", "e") or not body[1:].isdigit():
            raise DerivedError(f"bad braid token {tok!r}")
        word.append((kind, int(body[1:]), exp))
    return word


def braid_act(ctx, word, items):
    """Apply a word in the braid-and-shift generators to a collection."""
    items = list(items)
    for kind, i, exp in word:
        if kind == "b":
            steps = abs(exp)
            direction = "right" if exp > 0 else "left"
            for _ in range(steps):
                items = mutate(ctx, items, i, direction)
        elif kind == "e":
            if not (1 <= i <= len(items)):
                raise DerivedError(f"shift index {i} out of range")
            items[i - 1] = shift(items[i - 1], exp)
        else:
            raise DerivedError(f"unknown generator kind {kind!r}")
    return items


def objects_isomorphic(x, y):
    """Slot objects are equal iff their canonical forms coincide."""
    return x == y


def collections_isomorphic(cols_a, cols_b):
    return len(cols_a) == len(cols_b) and all(
        objects_isomorphic(a, b) for a, b in zip(cols_a, cols_b)
    )
