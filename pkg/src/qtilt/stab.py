"""Stability conditions supported on finite-length hearts.

A stability condition is stored as a heart (an ordered collection of
simples) together with one complex charge per simple.  Phases are
tracked as honest real numbers, not arguments mod 2, so that the
rotation action can walk through consecutive hearts without losing the
branch of the logarithm.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .derived import collection_flags, shift
from .tilt import SymbolicCollection, SHARP, _make_item, heart_key, tilt

TOL = 1e-9


class StabError(ValueError):
    pass


class ChargeError(StabError):
    pass


class CertificationError(StabError):
    pass


class GenericityError(StabError):
    pass


class IterationLimitError(StabError):
    pass


def in_left_half_plane(z, tol=TOL):
    """Membership in the semiclosed upper half plane (phase in (0, 1])."""
    if z.imag > tol:
        return True
    return abs(z.imag) <= tol and z.real < -tol


def validate_charge(values, tol=TOL):
    """Indices of entries outside the allowed half plane (empty = pass)."""
    return [k for k, z in enumerate(values) if not in_left_half_plane(z, tol)]


def _unit_phase(z):
    """arg(z)/pi normalized into (0, 1] for an admissible charge value."""
    if abs(z.imag) <= TOL:
        return 1.0
    phi = math.atan2(z.imag, z.real) / math.pi
    return phi if phi > 0 else phi + 2.0


@dataclass(frozen=True)
class StabilityCondition:
    heart: SymbolicCollection
    charge: tuple  # complex, one per heart item
    phases: tuple  # true phase of each simple, phases[k] in its window


def make_stability(heart, values):
    values = tuple(complex(z) for z in values)
    if len(values) != len(heart):
        raise ChargeError(
            f"{len(values)} charges for {len(heart)} simples"
        )
    bad = validate_charge(values)
    if bad:
        raise ChargeError(f"charge outside the half plane at indices {bad}")
    return StabilityCondition(heart, values, tuple(map(_unit_phase, values)))


def phase_of(s, obj):
    """(phase, mass) of a certified object: a heart simple or a shift.

    Raises CertificationError when the object is not recognizably a
    shift of one of the heart's simples.
    """
    for k, item in enumerate(s.heart.items):
        n = _shift_offset(item.handle, obj)
        if n is not None:
            return s.phases[k] + n, abs(s.charge[k])
    raise CertificationError(f"object {obj} is not a shifted heart simple")


def _shift_offset(base, obj):
    """n with obj == base[n], or None."""
    if len(base.summands) != len(obj.summands) or not base.summands:
        return None
    offsets = {
        so - sb
        for (sb, ib), (so, io) in zip(base.summands, obj.summands)
        if ib == io
    }
    if len(offsets) != 1:
        return None
    n = offsets.pop()
    return n if shift(base, n) == obj else None


@dataclass(frozen=True)
class SigmaVerdict:
    overall: object  # True, False, or "unknown"
    semistable: tuple  # per item: phase value or "unknown"
    ext_ok: bool
    window_ok: object  # True, False, or None when nothing is certified
    r: object  # a witness r when the window clause holds
    witnesses: tuple

    def as_json(self):
        return {
            "pass": self.overall,
            "witnesses": list(self.witnesses),
            "r": self.r,
        }


def sigma_exceptional_check(ctx, s, objects):
    """Three-clause check of a collection against a stability condition.

    Clause one (semistability) is certified by membership: items that
    are shifts of the heart's simples are semistable at the shifted
    phase, anything else is honestly "unknown".  Clause two is the
    Ext-exceptionality of the collection.  Clause three asks for a
    phase window (r, r + 1] containing every certified phase.
    """
    if isinstance(objects, SymbolicCollection):
        objects = [item.handle for item in objects.items]
    witnesses = []
    semi = []
    for k, obj in enumerate(objects):
        try:
            phi, _ = phase_of(s, obj)
            semi.append(phi)
        except CertificationError:
            semi.append("unknown")
            witnesses.append(f"item {k}: semistability not certifiable")
    flags = collection_flags(ctx, list(objects))
    ext_ok = flags.is_exceptional_collection and flags.is_ext
    if not ext_ok:
        witnesses.append("collection is not Ext-exceptional")
    known = [p for p in semi if p != "unknown"]
    if known:
        span = max(known) - min(known)
        window_ok = span < 1.0 - TOL
        if not window_ok:
            witnesses.append(f"phase span {span} admits no unit window")
    else:
        window_ok = None
    if window_ok:
        r = max(known) - 1.0
        if r <= 0.0 < min(known):
            r = 0.0
    else:
        r = None
    if not ext_ok or window_ok is False:
        overall = False
    elif "unknown" in semi or window_ok is None:
        overall = "unknown"
    else:
        overall = True
    return SigmaVerdict(
        overall, tuple(semi), ext_ok, window_ok, r, tuple(witnesses)
    )


def _shift_collection(ctx, c, n):
    items = tuple(
        _make_item(ctx, shift(item.handle, n)) for item in c.items
    )
    return SymbolicCollection(items, dict(c.degrees))


def _advance(ctx, heart, values, phases, r, max_iter):
    """Tilt forward until every simple phase exceeds r."""
    for _ in range(max_iter):
        for phi in phases:
            if abs(phi - r) <= TOL:
                raise GenericityError(
                    f"phase {phi} collides with the rotation parameter {r}"
                )
        low = [k for k, phi in enumerate(phases) if phi < r]
        if not low:
            return heart, values, phases
        k = min(low, key=lambda k: (phases[k], k))
        heart, values, phases = _tilt_tracked(
            ctx, heart, values, phases, k + 1
        )
    raise IterationLimitError(
        f"no heart with phases in ({r}, {r} + 1] found in {max_iter} tilts"
    )


def _tilt_tracked(ctx, heart, values, phases, i):
    """Sharp tilt carrying charge values and true phases along."""
    new_heart, step = tilt(ctx, heart, i, SHARP)
    vals = [values[o] for o in step.reorder_perm]
    phis = [phases[o] for o in step.reorder_perm]
    zi = vals[step.index - 1]
    phi_i = phis[step.index - 1]
    new_vals, new_phis = [], []
    for role, src, d in step.placements:
        if role == "keep" or (role == "twist" and d == 0):
            new_vals.append(vals[src])
            new_phis.append(phis[src])
        elif role == "shift":
            new_vals.append(-vals[src])
            new_phis.append(phis[src] + 1.0)
        else:
            z = vals[src] + zi
            lo, hi = sorted((phis[src], phi_i))
            new_vals.append(z)
            new_phis.append(_phase_in_window(z, lo, hi))
    return new_heart, tuple(new_vals), tuple(new_phis)


def _phase_in_window(z, lo, hi):
    """The branch of arg(z)/pi lying in [lo, hi] (window shorter than 2)."""
    if abs(z) <= TOL:
        raise StabError("zero charge on a twisted simple")
    raw = math.atan2(z.imag, z.real) / math.pi
    m = math.floor(((lo + hi) / 2.0 - raw) / 2.0 + 0.5)
    phi = raw + 2.0 * m
    if not (lo - TOL <= phi <= hi + TOL):
        raise StabError(
            f"twisted charge phase {phi} escapes the window [{lo}, {hi}]"
        )
    return phi


def advance_heart(ctx, s, r, max_iter=None):
    """The stability condition rotated by r in (0, 1), new heart included."""
    if not (0.0 < r < 1.0):
        raise StabError(f"rotation parameter {r} outside (0, 1)")
    if max_iter is None:
        max_iter = 32 * len(s.heart)
    heart, values, phases = _advance(
        ctx, s.heart, s.charge, s.phases, r, max_iter
    )
    factor = cmath.exp(-1j * math.pi * r)
    rotated = tuple(z * factor for z in values)
    out = StabilityCondition(
        heart, rotated, tuple(phi - r for phi in phases)
    )
    bad = validate_charge(out.charge)
    if bad:
        raise StabError(f"rotated charge left the half plane at {bad}")
    return out


def c_action(ctx, s, param):
    """Action of a complex parameter: rotate charges, advance the heart.

    The stored charge tuple always lists the values on the current
    heart's simples, so the integer part of the parameter shifts the
    heart while leaving the tuple alone (the sign of the rotated charge
    cancels against the sign of the shifted class).  The imaginary part
    only rescales masses.
    """
    param = complex(param)
    n = math.floor(param.real + TOL)
    r = param.real - n
    if r <= TOL:
        r = 0.0
    cur = s if r == 0.0 else advance_heart(ctx, s, r)
    heart = _shift_collection(ctx, cur.heart, n) if n else cur.heart
    scale = math.exp(math.pi * param.imag)
    values = tuple(z * scale for z in cur.charge)
    return StabilityCondition(heart, values, cur.phases)


def stability_key(s, digits=9):
    """Hashable fingerprint used by coherence tests."""
    return (
        heart_key(s.heart),
        tuple((round(z.real, digits), round(z.imag, digits)) for z in s.charge),
    )
