import cmath
import math
import random

import pytest

from qtilt.rep import Context
from qtilt.derived import shift, simple_object
from qtilt.tilt import SHARP, heart_key, std_collection, tilt
from qtilt.stab import (
    CertificationError,
    ChargeError,
    GenericityError,
    StabError,
    advance_heart,
    c_action,
    in_left_half_plane,
    make_stability,
    phase_of,
    sigma_exceptional_check,
    stability_key,
    validate_charge,
)

from oracles import linear_a, random_charges


def charge(phi, mass=1.0):
    return mass * cmath.exp(1j * math.pi * phi)


@pytest.fixture
def a2ctx():
    return Context(linear_a(2))


def test_validate_charge_examples():
    assert validate_charge([1j, -1.0]) == []
    assert validate_charge([1.0]) == [0]
    assert validate_charge([0.0]) == [0]
    assert in_left_half_plane(complex(-2, 0))
    assert not in_left_half_plane(complex(2, -1))


def test_make_stability_and_phases(a2ctx):
    c = std_collection(a2ctx)
    s = make_stability(c, [1j, 1j])
    assert s.phases == (0.5, 0.5)
    s2 = make_stability(c, [charge(0.9), charge(0.1)])
    assert s2.phases[0] == pytest.approx(0.9)
    assert s2.phases[1] == pytest.approx(0.1)
    with pytest.raises(ChargeError):
        make_stability(c, [1.0, 1j])
    with pytest.raises(ChargeError):
        make_stability(c, [1j])


def test_phase_of_shift_rule(a2ctx):
    c = std_collection(a2ctx)
    s = make_stability(c, [1j, complex(-2, 0)])
    phi, mass = phase_of(s, c.items[0].handle)
    assert (phi, mass) == (0.5, 1.0)
    phi2, mass2 = phase_of(s, c.items[1].handle)
    assert (phi2, mass2) == (1.0, 2.0)
    phi3, _ = phase_of(s, shift(c.items[0].handle, 3))
    assert phi3 == 3.5
    m = simple_object(a2ctx, 1)  # S1 is a simple here, so certifiable
    phase_of(s, m)
    with pytest.raises(CertificationError):
        phase_of(s, simple_object(a2ctx, 1, shift_by=0).__class__(()))


def test_sigma_check_own_heart_passes(a2ctx):
    c = std_collection(a2ctx)
    s = make_stability(c, [1j, 1j])
    verdict = sigma_exceptional_check(a2ctx, s, c)
    assert verdict.overall is True
    assert verdict.r == 0.0


def test_sigma_check_window_failure(a2ctx):
    c = std_collection(a2ctx)
    s = make_stability(c, [1j, 1j])  # both phases 0.5
    objs = [shift(c.items[0].handle, 1), c.items[1].handle]
    verdict = sigma_exceptional_check(a2ctx, s, objs)
    assert verdict.window_ok is False
    assert verdict.overall is False


def test_sigma_check_unknown_for_foreign_object(a2ctx):
    c = std_collection(a2ctx)
    tilted, _ = tilt(a2ctx, c, 2, SHARP)
    m = tilted.items[1].handle  # not a simple of the standard heart
    s = make_stability(c, [1j, 1j])
    verdict = sigma_exceptional_check(a2ctx, s, [m])
    assert verdict.semistable[0] == "unknown"
    assert verdict.overall == "unknown"


def test_advance_heart_examples(a2ctx):
    c = std_collection(a2ctx)
    s = make_stability(c, [charge(0.9), charge(0.1)])
    same = advance_heart(a2ctx, s, 0.05)
    assert heart_key(same.heart) == heart_key(c)
    moved = advance_heart(a2ctx, s, 0.2)
    want, _ = tilt(a2ctx, c, 2, SHARP)
    assert heart_key(moved.heart) == heart_key(want)
    assert validate_charge(moved.charge) == []
    with pytest.raises(GenericityError):
        advance_heart(a2ctx, s, 0.1)
    with pytest.raises(StabError):
        advance_heart(a2ctx, s, 1.5)


def test_c_action_integer_params(a2ctx):
    c = std_collection(a2ctx)
    s = make_stability(c, [charge(0.9), charge(0.1)])
    ident = c_action(a2ctx, s, 0)
    assert stability_key(ident) == stability_key(s)
    one = c_action(a2ctx, s, 1)
    assert heart_key(one.heart) == tuple(
        (sh + 1, i) for sh, i in heart_key(c)
    )
    assert one.charge == s.charge  # sign of class and charge cancel
    two = c_action(a2ctx, s, 2)
    assert heart_key(two.heart) == tuple(
        (sh + 2, i) for sh, i in heart_key(c)
    )


def test_c_action_composition(a2ctx):
    c = std_collection(a2ctx)
    rng = random.Random(17)
    trials = 0
    while trials < 20:
        s = make_stability(c, random_charges(2, rng))
        p1 = rng.uniform(0.1, 0.9) + rng.uniform(-0.2, 0.2) * 1j
        p2 = rng.uniform(0.1, 0.9) + rng.uniform(-0.2, 0.2) * 1j
        try:
            lhs = c_action(a2ctx, c_action(a2ctx, s, p1), p2)
            rhs = c_action(a2ctx, s, p1 + p2)
        except GenericityError:
            continue
        assert heart_key(lhs.heart) == heart_key(rhs.heart)
        for a, b in zip(lhs.charge, rhs.charge):
            assert abs(a - b) < 1e-9
        trials += 1


def test_imaginary_part_scales_masses_only(a2ctx):
    c = std_collection(a2ctx)
    s = make_stability(c, [charge(0.5), charge(0.25)])
    out = c_action(a2ctx, s, 0.5j)
    assert heart_key(out.heart) == heart_key(c)
    for a, b in zip(out.charge, s.charge):
        assert abs(a - b * math.exp(math.pi * 0.5)) < 1e-12
