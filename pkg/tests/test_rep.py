import random
from fractions import Fraction

import pytest

from qtilt.linalg import RatMatrix
from qtilt.quiver import Quiver
from qtilt.rep import (
    Context,
    NonBrickError,
    ZeroExtensionError,
    direct_sum,
    ext_class_is_zero,
    ext_space,
    extension_middle_term,
    hom_space,
    indecomposable_closure,
    is_isomorphic,
    make_rep,
    morphism_cokernel,
    morphism_kernel,
    projective_rep,
    simple_rep,
    split_indecomposables,
)

from oracles import linear_a, star_d4, random_rep


def a2():
    return linear_a(2)


def m11(q):
    """The sincere thin module over A2: identity along the arrow."""
    return make_rep(q, (1, 1), [RatMatrix.identity(1)])


def test_simple_and_projective_dims():
    q = linear_a(3)
    assert simple_rep(q, 2).dims == (0, 1, 0)
    assert projective_rep(q, 1).dims == (1, 1, 1)
    assert projective_rep(q, 3).dims == (0, 0, 1)


def test_projective_has_no_ext():
    q = linear_a(3)
    ctx = Context(q)
    p1 = projective_rep(q, 1)
    for i in (1, 2, 3):
        dim, _ = ext_space(p1, simple_rep(q, i))
        assert dim == 0


def test_hom_ext_basic_a2():
    q = a2()
    s1, s2, m = simple_rep(q, 1), simple_rep(q, 2), m11(q)
    assert hom_space(s1, s2).dim == 0
    assert ext_space(s1, s2)[0] == 1
    assert ext_space(s2, s1)[0] == 0
    assert hom_space(s2, m).dim == 1
    assert hom_space(m, s1).dim == 1
    assert hom_space(m, m).dim == 1


def test_euler_identity_random():
    rng = random.Random(7)
    for q in (a2(), linear_a(3), star_d4()):
        ctx = Context(q)
        for _ in range(25):
            m, n = random_rep(q, rng), random_rep(q, rng)
            h = hom_space(m, n).dim
            e = ext_space(m, n)[0]
            assert h - e == ctx.euler.pair(m.dims, n.dims)


def test_extension_middle_term_a2():
    q = a2()
    _, classes = ext_space(simple_rep(q, 1), simple_rep(q, 2))
    mid = extension_middle_term(classes[0])
    ctx = Context(q)
    assert is_isomorphic(ctx, mid, m11(q))


def test_zero_class_rejected():
    q = a2()
    from qtilt.rep import ExtClass
    zero = ExtClass(simple_rep(q, 1), simple_rep(q, 2),
                    (RatMatrix.zero(1, 1),))
    assert ext_class_is_zero(zero)
    with pytest.raises(ZeroExtensionError):
        extension_middle_term(zero)


def test_kernel_cokernel_of_inclusion():
    q = a2()
    s2, m = simple_rep(q, 2), m11(q)
    phi = hom_space(s2, m).basis[0]
    ker = morphism_kernel(phi, s2, m)
    coker = morphism_cokernel(phi, s2, m)
    assert ker.total_dim == 0
    assert coker.dims == (1, 0)


def test_split_indecomposables_on_sums():
    q = linear_a(3)
    ctx = Context(q)
    reps = [simple_rep(q, 1), simple_rep(q, 1), projective_rep(q, 2)]
    summed = direct_sum(reps)
    parts = split_indecomposables(summed)
    assert sorted(p.dims for p in parts) == sorted(r.dims for r in reps)
    counts = ctx.decompose(summed)
    assert counts[ctx.simple_id(1)] == 2


def test_registry_dedups_isomorphic_bricks():
    q = a2()
    ctx = Context(q)
    a = ctx.registry.register(m11(q))
    twisted = make_rep(q, (1, 1), [RatMatrix.from_rows([[Fraction(5)]])])
    b = ctx.registry.register(twisted)
    assert a == b


def test_registry_rejects_non_bricks():
    q = a2()
    ctx = Context(q)
    with pytest.raises(NonBrickError):
        ctx.registry.register(direct_sum([simple_rep(q, 1)] * 2))


def test_indecomposable_closure_counts():
    assert len(indecomposable_closure(Context(a2()))) == 3
    assert len(indecomposable_closure(Context(linear_a(3)))) == 6


def test_pair_dims_matches_direct_computation():
    q = linear_a(3)
    ctx = Context(q)
    ids = indecomposable_closure(ctx)
    for a in ids:
        for b in ids:
            h, e = ctx.pair_dims(a, b)
            ra, rb = ctx.registry.rep(a), ctx.registry.rep(b)
            assert h == hom_space(ra, rb).dim
            assert e == ext_space(ra, rb)[0]
