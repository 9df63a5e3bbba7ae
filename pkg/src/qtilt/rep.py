"""Concrete model of the module category of a path algebra over Q.

A representation assigns a Q-vector space to each vertex and a matrix to
each arrow.  Hom spaces are kernels of the intertwiner system; Ext^1
spaces are cokernels of the same system (which is exactly the map
induced by the standard projective resolution, so cocycles live in
Hom(P_1, N) as per-arrow blocks).  Decomposition into indecomposables
uses Fitting's lemma with deterministically enumerated endomorphisms.

The :class:`Context` bundles a quiver with the shared indecomposable
registry and the dimension caches used by the derived layer.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import RatMatrix, columns_matrix, block_diag
from .quiver import classify_type, euler_form


class RepError(ValueError):
    pass


class NonBrickError(RepError):
    """A summand with endomorphism dimension > 1 could not be split."""


class ZeroExtensionError(RepError):
    """extension_middle_term was handed a split (zero) class."""


@dataclass(frozen=True)
class Representation:
    quiver: object
    dims: tuple  # mu nonnegative ints
    maps: tuple  # one RatMatrix per arrow, shape dims[t] x dims[s]

    def __post_init__(self):
        q = self.quiver
        if len(self.dims) != q.mu:
            raise RepError("dimension vector length mismatch")
        if any(d < 0 for d in self.dims):
            raise RepError("negative dimension")
        if len(self.maps) != len(q.arrows):
            raise RepError("arrow map count mismatch")
        for k, (s, t) in enumerate(q.arrows):
            m = self.maps[k]
            if m.rows != self.dims[t - 1] or m.cols != self.dims[s - 1]:
                raise RepError(
                    f"arrow {k} ({s}->{t}): map is {m.rows}x{m.cols}, "
                    f"expected {self.dims[t - 1]}x{self.dims[s - 1]}"
                )

    @property
    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return self.total_dim == 0


def make_rep(q, dims, maps=None):
    """Representation with given dims; missing maps default to zero."""
    dims = tuple(dims)
    out_maps = []
    for k, (s, t) in enumerate(q.arrows):
        if maps is not None and k in (maps if isinstance(maps, dict) else {}):
            out_maps.append(maps[k])
        elif maps is not None and not isinstance(maps, dict):
            out_maps.append(maps[k])
        else:
            out_maps.append(RatMatrix.zero(dims[t - 1], dims[s - 1]))
    return Representation(q, dims, tuple(out_maps))


def simple_rep(q, i):
    if not (1 <= i <= q.mu):
        raise RepError(f"vertex {i} out of range 1..{q.mu}")
    dims = tuple(1 if v == i else 0 for v in range(1, q.mu + 1))
    return make_rep(q, dims)


def projective_rep(q, i):
    """Indecomposable projective at vertex i: basis = paths starting at i."""
    if not (1 <= i <= q.mu):
        raise RepError(f"vertex {i} out of range 1..{q.mu}")
    # enumerate paths as arrow-index tuples, grouped by endpoint
    paths = {v: [] for v in range(1, q.mu + 1)}
    paths[i].append(())
    # vertices in increasing order: arrows only increase labels
    for v in range(i, q.mu + 1):
        for p in list(paths[v]):
            for k, (s, t) in enumerate(q.arrows):
                if s == v:
                    paths[t].append(p + (k,))
    for v in paths:
        paths[v].sort()
    index = {v: {p: n for n, p in enumerate(paths[v])} for v in paths}
    dims = tuple(len(paths[v]) for v in range(1, q.mu + 1))
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        m = RatMatrix.zero(dims[t - 1], dims[s - 1])
        for p, col in index[s].items():
            m._set(index[t][p + (k,)], col, 1)
        maps.append(m)
    return Representation(q, dims, tuple(maps))


def direct_sum(reps):
    reps = list(reps)
    if not reps:
        raise RepError("direct sum of nothing")
    q = reps[0].quiver
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(q.mu))
    maps = tuple(
        block_diag([r.maps[k] for r in reps]) for k in range(len(q.arrows))
    )
    return Representation(q, dims, maps)


# -- Hom and Ext ------------------------------------------------------


@dataclass(frozen=True)
class HomSpace:
    source: Representation
    target: Representation
    basis: tuple  # tuple of morphisms; each is a tuple of per-vertex RatMatrix

    @property
    def dim(self):
        return len(self.basis)


@dataclass(frozen=True)
class ExtClass:
    """Ext^1 cocycle in Hom(P_1, N): one block per arrow.

    Block k has shape dims(N)[target(k)] x dims(M)[source(k)]; the class
    is taken modulo coboundaries (the image of Hom(P_0, N)).
    """

    source: Representation  # M
    target: Representation  # N
    cocycle: tuple  # per-arrow RatMatrix


def _intertwiner_matrix(m, n):
    """Matrix of phi |-> (N_a phi_s - phi_t M_a)_a on flattened entries.

    Unknown layout: per-vertex matrices phi_v (dims_n[v] x dims_m[v]),
    flattened row-major, concatenated over vertices.  Kernel = Hom(M, N),
    cokernel = Ext^1(M, N).
    """
    q = m.quiver
    mu = q.mu
    col_off = []
    off = 0
    for v in range(mu):
        col_off.append(off)
        off += n.dims[v] * m.dims[v]
    ncols = off
    row_off = []
    off = 0
    for k, (s, t) in enumerate(q.arrows):
        row_off.append(off)
        off += n.dims[t - 1] * m.dims[s - 1]
    nrows = off
    big = RatMatrix.zero(nrows, ncols)
    for k, (s, t) in enumerate(q.arrows):
        s -= 1
        t -= 1
        Ma = m.maps[k]
        Na = n.maps[k]
        # equation block rows: (r, c) over dims_n[t] x dims_m[s]
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                row = row_off[k] + r * m.dims[s] + c
                # + N_a[r, x] * phi_s[x, c]
                for x in range(n.dims[s]):
                    col = col_off[s] + x * m.dims[s] + c
                    big.data[row * ncols + col] += Na[r, x]
                # - phi_t[r, y] * M_a[y, c]
                for y in range(m.dims[t]):
                    col = col_off[t] + r * m.dims[t] + y
                    big.data[row * ncols + col] -= Ma[y, c]
    return big, col_off, row_off


def _unflatten_morphism(m, n, vec, col_off):
    q = m.quiver
    parts = []
    for v in range(q.mu):
        rows, cols = n.dims[v], m.dims[v]
        block = RatMatrix(
            rows, cols,
            vec[col_off[v]:col_off[v] + rows * cols],
        )
        parts.append(block)
    return tuple(parts)


def _unflatten_cocycle(m, n, vec, row_off):
    q = m.quiver
    parts = []
    for k, (s, t) in enumerate(q.arrows):
        rows, cols = n.dims[t - 1], m.dims[s - 1]
        block = RatMatrix(
            rows, cols,
            vec[row_off[k]:row_off[k] + rows * cols],
        )
        parts.append(block)
    return tuple(parts)


def hom_space(m, n):
    if m.quiver is not n.quiver and m.quiver != n.quiver:
        raise RepError("representations over different quivers")
    big, col_off, _ = _intertwiner_matrix(m, n)
    basis = tuple(
        _unflatten_morphism(m, n, v, col_off) for v in big.kernel_basis()
    )
    return HomSpace(m, n, basis)


def ext_space(m, n):
    """Dimension and cocycle basis of Ext^1(M, N)."""
    if m.quiver is not n.quiver and m.quiver != n.quiver:
        raise RepError("representations over different quivers")
    big, _, row_off = _intertwiner_matrix(m, n)
    # cokernel: rows of Q span the annihilator of the image of `big`
    left_kernel = big.transpose().kernel_basis()
    qmat = columns_matrix(left_kernel, big.rows).transpose()  # q x nrows
    dim = qmat.rows
    classes = []
    if dim:
        # representatives v_k with Q v_k = e_k
        for k in range(dim):
            e = [Fraction(1) if r == k else Fraction(0) for r in range(dim)]
            v = qmat.solve(e)
            classes.append(ExtClass(m, n, _unflatten_cocycle(m, n, v, row_off)))
    return dim, classes


def ext_class_is_zero(e):
    """True iff the cocycle is a coboundary (split extension)."""
    big, _, row_off = _intertwiner_matrix(e.source, e.target)
    vec = []
    for block in e.cocycle:
        vec.extend(block.data)
    return big.solve(vec) is not None


def extension_middle_term(e):
    """Representation X with 0 -> N -> X -> M -> 0 classified by ``e``.

    X is returned in block coordinates: the first dims(N) coordinates at
    each vertex are the copy of N, the rest the copy of M.
    """
    if ext_class_is_zero(e):
        raise ZeroExtensionError(
            "zero class: build the direct sum N + M instead"
        )
    return _middle_term(e.source, e.target, e.cocycle)


def _middle_term(m, n, cocycle):
    q = m.quiver
    dims = tuple(n.dims[v] + m.dims[v] for v in range(q.mu))
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        s -= 1
        t -= 1
        z = cocycle[k]
        block = RatMatrix.zero(dims[t], dims[s])
        Na = n.maps[k]
        Ma = m.maps[k]
        for r in range(n.dims[t]):
            for c in range(n.dims[s]):
                block._set(r, c, Na[r, c])
            for c in range(m.dims[s]):
                block._set(r, n.dims[s] + c, z[r, c])
        for r in range(m.dims[t]):
            for c in range(m.dims[s]):
                block._set(n.dims[t] + r, n.dims[s] + c, Ma[r, c])
        maps.append(block)
    return Representation(q, dims, tuple(maps))


# -- kernels / cokernels of morphisms ---------------------------------


def morphism_kernel(f, m, n):
    """Kernel subrepresentation of a morphism f: M -> N.

    ``f`` is a tuple of per-vertex matrices.  Returns the kernel rep in
    the coordinates given by the deterministic kernel bases.
    """
    q = m.quiver
    kbases = [columns_matrix(f[v].kernel_basis(), m.dims[v])
              for v in range(q.mu)]
    dims = tuple(kb.cols for kb in kbases)
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        s -= 1
        t -= 1
        prod = m.maps[k] @ kbases[s]
        block = RatMatrix.zero(dims[t], dims[s])
        for c in range(dims[s]):
            sol = kbases[t].solve(prod.col(c))
            if sol is None:
                raise RepError("kernel is not a subrepresentation (bug)")
            for r in range(dims[t]):
                block._set(r, c, sol[r])
        maps.append(block)
    return Representation(q, dims, tuple(maps))


def morphism_cokernel(f, m, n):
    """Cokernel representation of a morphism f: M -> N."""
    q = m.quiver
    qmats = []
    for v in range(q.mu):
        left = f[v].transpose().kernel_basis()
        qmats.append(columns_matrix(left, n.dims[v]).transpose())
    dims = tuple(qm.rows for qm in qmats)
    # right inverses of the surjections
    sections = []
    for v in range(q.mu):
        qm = qmats[v]
        cols = []
        for r in range(qm.rows):
            e = [Fraction(1) if x == r else Fraction(0) for x in range(qm.rows)]
            cols.append(qm.solve(e))
        sections.append(columns_matrix(cols, qm.cols))
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        s -= 1
        t -= 1
        induced = qmats[t] @ n.maps[k] @ sections[s]
        maps.append(induced)
    return Representation(q, dims, tuple(maps))


def restrict_to_image(f, m, n):
    """Image of f: M -> N as a subrepresentation of N."""
    q = m.quiver
    ibases = []
    for v in range(q.mu):
        cols = [f[v].col(c) for c in f[v].column_space_pivots()]
        ibases.append(columns_matrix(cols, n.dims[v]))
    dims = tuple(ib.cols for ib in ibases)
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        s -= 1
        t -= 1
        prod = n.maps[k] @ ibases[s]
        block = RatMatrix.zero(dims[t], dims[s])
        for c in range(dims[s]):
            sol = ibases[t].solve(prod.col(c))
            if sol is None:
                raise RepError("image is not a subrepresentation (bug)")
            for r in range(dims[t]):
                block._set(r, c, sol[r])
        maps.append(block)
    return Representation(q, dims, tuple(maps))


# -- decomposition ----------------------------------------------------


def _endo_power(phi, n_power):
    return tuple(p.matpow(n_power) for p in phi)


def _identity_endo(m):
    return tuple(RatMatrix.identity(d) for d in m.dims)


def _endo_combine(a, b, ca, cb):
    return tuple(
        a[v].scale(ca) + b[v].scale(cb) for v in range(len(a))
    )


def _splitting_candidates(m, basis):
    ident = _identity_endo(m)
    for phi in basis:
        yield phi
    for phi in basis:
        for lam in (-2, -1, 1, 2):
            yield _endo_combine(phi, ident, 1, -lam)
    nb = len(basis)
    for i in range(nb):
        for j in range(i + 1, nb):
            for c in (-2, -1, 1, 2):
                yield _endo_combine(basis[i], basis[j], 1, c)


def _try_split(m, phi):
    """Fitting splitting M = ker(phi^N) + im(phi^N), or None."""
    total = m.total_dim
    stable = _endo_power(phi, max(total, 1))
    ker = morphism_kernel(stable, m, m)
    if ker.total_dim == 0 or ker.total_dim == total:
        return None
    img = restrict_to_image(stable, m, m)
    if ker.total_dim + img.total_dim != total:
        return None
    return ker, img


def split_indecomposables(m):
    """List of indecomposable summands of M (Fitting's lemma)."""
    if m.total_dim == 0:
        return []
    hs = hom_space(m, m)
    if hs.dim == 1:
        return [m]
    for phi in _splitting_candidates(m, hs.basis):
        parts = _try_split(m, phi)
        if parts is not None:
            out = []
            for part in parts:
                out.extend(split_indecomposables(part))
            return out
    raise NonBrickError(
        f"representation with dims {m.dims} has endomorphism dimension "
        f"{hs.dim} but no splitting was found; object is outside the "
        "supported brick class"
    )


# -- registry and context ---------------------------------------------


class IndecRegistry:
    """Canonical ids for pairwise non-isomorphic indecomposable bricks."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.entries = []
        self._by_dims = {}

    def __len__(self):
        return len(self.entries)

    def rep(self, idx):
        return self.entries[idx]

    def register(self, rep):
        if rep.total_dim == 0:
            raise RepError("the zero representation has no registry id")
        hs_dim = hom_space(rep, rep).dim
        if hs_dim != 1:
            raise NonBrickError(
                f"registry accepts bricks only; dims {rep.dims} has "
                f"endomorphism dimension {hs_dim}"
            )
        candidates = self._by_dims.get(rep.dims, [])
        if self.ctx.is_dynkin:
            # Gabriel: the dimension vector is a canonical key
            if candidates:
                return candidates[0]
        else:
            for idx in candidates:
                if _bricks_isomorphic(rep, self.entries[idx]):
                    return idx
        idx = len(self.entries)
        self.entries.append(rep)
        self._by_dims.setdefault(rep.dims, []).append(idx)
        return idx

    def key(self, idx):
        """Stable printable key: the dimension vector, disambiguated."""
        rep = self.entries[idx]
        peers = self._by_dims[rep.dims]
        base = ",".join(str(d) for d in rep.dims)
        if len(peers) == 1:
            return base
        return f"{base}#{peers.index(idx)}"


def _bricks_isomorphic(a, b):
    if a.dims != b.dims:
        return False
    hs = hom_space(a, b)
    if hs.dim != 1:
        return False
    phi = hs.basis[0]
    return all(
        phi[v].rows == phi[v].cols and phi[v].rank() == phi[v].rows
        for v in range(len(a.dims))
    )


class Context:
    """Quiver plus shared registry and Hom/Ext dimension caches."""

    def __init__(self, quiver):
        self.quiver = quiver
        self.euler = euler_form(quiver)
        self.qtype = classify_type(quiver)
        self.is_dynkin = self.qtype.is_dynkin
        self.registry = IndecRegistry(self)
        self._pair_dims = {}
        self._hom_bases = {}
        self._ext_bases = {}
        self._twist_cache = {}
        self._simple_ids = None

    def simple_id(self, i):
        if self._simple_ids is None:
            self._simple_ids = tuple(
                self.registry.register(simple_rep(self.quiver, v))
                for v in range(1, self.quiver.mu + 1)
            )
        return self._simple_ids[i - 1]

    def pair_dims(self, ida, idb):
        """(dim Hom, dim Ext^1) between registered indecomposables."""
        key = (ida, idb)
        hit = self._pair_dims.get(key)
        if hit is not None:
            return hit
        a = self.registry.rep(ida)
        b = self.registry.rep(idb)
        h = len(self.hom_basis(ida, idb))
        e = h - self.euler.pair(a.dims, b.dims)
        if e < 0:
            raise RepError("negative Ext dimension (bug)")
        self._pair_dims[key] = (h, e)
        return (h, e)

    def hom_basis(self, ida, idb):
        key = (ida, idb)
        hit = self._hom_bases.get(key)
        if hit is None:
            hit = hom_space(self.registry.rep(ida),
                            self.registry.rep(idb)).basis
            self._hom_bases[key] = hit
        return hit

    def ext_basis(self, ida, idb):
        key = (ida, idb)
        hit = self._ext_bases.get(key)
        if hit is None:
            hit = ext_space(self.registry.rep(ida),
                            self.registry.rep(idb))[1]
            self._ext_bases[key] = tuple(hit)
        return hit

    def decompose(self, rep):
        """Multiset {registry id: multiplicity} of indec summands."""
        out = {}
        for part in split_indecomposables(rep):
            idx = self.registry.register(part)
            out[idx] = out.get(idx, 0) + 1
        return out


def decompose(ctx, m):
    return ctx.decompose(m)


def is_isomorphic(ctx, m, n):
    if m.quiver != n.quiver:
        raise RepError("representations over different quivers")
    return ctx.decompose(m) == ctx.decompose(n)


def indecomposable_closure(ctx, max_rounds=32):
    """Close {simples} under extensions and decomposition.

    Returns the sorted list of registry ids discovered.  This is the
    exhaustive-closure counting oracle; no AR-theory shortcuts.
    """
    q = ctx.quiver
    known = [ctx.simple_id(i) for i in range(1, q.mu + 1)]
    seen = set(known)
    for _ in range(max_rounds):
        new = []
        ids = sorted(seen)
        for ida in ids:
            for idb in ids:
                for cls in ctx.ext_basis(ida, idb):
                    mid = _middle_term(cls.source, cls.target, cls.cocycle)
                    for idx in ctx.decompose(mid):
                        if idx not in seen:
                            seen.add(idx)
                            new.append(idx)
        if not new:
            break
    return sorted(seen)


# -- dump format -------------------------------------------------------


def dump_representation(rep):
    """Golden-test dump: dims plus per-arrow rational-string matrices."""
    maps = {}
    counts = {}
    for k, (s, t) in enumerate(rep.quiver.arrows):
        n = counts.get((s, t), 0)
        counts[(s, t)] = n + 1
        m = rep.maps[k]
        maps[f"{s}->{t}#{n}"] = [
            [str(m[r, c]) for c in range(m.cols)] for r in range(m.rows)
        ]
    return {"dims": list(rep.dims), "maps": maps}
