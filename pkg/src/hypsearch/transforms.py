"""The transformation group acting on a family together with its argument.

Any one exact evaluation spawns a cluster of equivalent ones under the
classical rational transformations (argument x -> x/(x-1), parameter
reflections through the lower slot, swapping the symmetric upper slots) and
the standard quadratic transformations.  Deduplication and chaff detection
both work on the bounded closure of a (family, x) pair under these maps.

Applicability is checked carefully: for terminating series with a degenerate
lower slot (non-positive-integer values, exactly the interesting cases), the
textbook identities can silently fail once a lower-slot Pochhammer vanishes
below the preserved cut-off.  Each generator therefore carries an exact
arithmetic safety predicate, and the closure only ever applies safe
generators.  This can under-merge orbits (two equivalent identities both
survive) but never merges families that are not provably equivalent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactalg import QuadExt, sqrt_rational
from .hyperseries import (FamilySpec, HALF_SLOT, LinearSlot, ONE_SLOT,
                          exists_nonneg_n)

Argument = Union[Fraction, QuadExt]

TRANSFORM_LIST_VERSION = "qt1"

GAUSS = "Gauss"
KUMMER = "Kummer"
GAUSS_HALF = "GaussHalf"


class PoleAtOneError(ValueError):
    """x = 1 is a pole of the x/(x-1) substitution."""


class _Inapplicable:
    def __repr__(self):
        return "Inapplicable"


INAPPLICABLE = _Inapplicable()


@dataclass(frozen=True)
class FamilyX:
    """A family together with a fixed argument (rational or quadratic)."""

    family: FamilySpec
    x: Argument

    def __post_init__(self):
        x = self.x
        if isinstance(x, QuadExt) and x.is_rational():
            object.__setattr__(self, "x", x.to_fraction())
        elif isinstance(x, int):
            object.__setattr__(self, "x", Fraction(x))

    def serialize(self) -> str:
        f = self.family
        slots = ";".join("%s,%s" % (s.slope, s.intercept)
                         for s in (f.upper1, f.upper2, f.lower))
        if isinstance(self.x, QuadExt):
            xs = "q:%s,%s,%d" % (self.x.a, self.x.b, self.x.radicand)
        else:
            xs = "r:%s" % self.x
        return "%s|%s" % (slots, xs)


def _witness_cut(slot: LinearSlot) -> LinearSlot:
    """m(n) = -slot(n), the term count a witness slot enforces."""
    return -slot


def _pochhammer_clash(lower: LinearSlot, cut: LinearSlot) -> bool:
    """True when (lower(n))_k hits zero for some k <= cut(n), some n >= 0.

    That happens iff lower(n) is a non-positive integer with
    -lower(n) < cut(n)."""
    return exists_nonneg_n(lower, [(lower, "le0"), (lower + cut, "gt0")])


def pfaff_safe(fx: FamilyX, which_upper: int) -> bool:
    """The x/(x-1) substitution preserving the given upper slot is a valid
    identity for the whole family: the preserved slot must be a termination
    witness and the lower slot must avoid Pochhammer zeros up to its cut."""
    if fx.x == 1:
        return False
    preserved = fx.family.upper1 if which_upper == 1 else fx.family.upper2
    if not preserved.is_termination_witness():
        return False
    return not _pochhammer_clash(fx.family.lower, _witness_cut(preserved))


def pfaff(fx: FamilyX, which_upper: int) -> FamilyX:
    """Argument moves to x/(x-1); the non-preserved upper slot reflects
    through the lower slot.  The suppressed prefactor (1-x)^{-preserved(n)}
    is itself hypergeometric in n, so needle-ness is unchanged."""
    if which_upper not in (1, 2):
        raise ValueError("which_upper must be 1 or 2")
    if fx.x == 1:
        raise PoleAtOneError("pfaff is undefined at x = 1")
    x_new = fx.x / (fx.x - 1)
    f = fx.family
    if which_upper == 1:
        family = FamilySpec(f.upper1, f.lower - f.upper2, f.lower)
    else:
        family = FamilySpec(f.lower - f.upper1, f.upper2, f.lower)
    return FamilyX(family, x_new)


def pfaff_prefactor_slot(fx: FamilyX, which_upper: int) -> LinearSlot:
    """Exponent slot e(n) with original(x) = (1-x)^{e(n)} * image(x')."""
    preserved = fx.family.upper1 if which_upper == 1 else fx.family.upper2
    return -preserved


def euler_applicable(fx: FamilyX) -> bool:
    """The doubly-reflected image stays in the terminating class."""
    f = fx.family
    return ((f.lower - f.upper1).is_termination_witness()
            or (f.lower - f.upper2).is_termination_witness())


def euler_safe(fx: FamilyX) -> bool:
    """Valid as a chain of two safe x/(x-1) substitutions.

    Preserve one upper slot, then preserve the reflected other slot; both
    steps need their safety predicate.  (The raw applicability test above is
    not enough: with a degenerate lower slot the reflected identity can be
    plainly false, e.g. F(-1, -4; -2; x) versus (1-x)^3 F(-1, 2; -2; x).)"""
    if fx.x == 1:
        return False
    f = fx.family
    for keep, other in ((1, f.upper2), (2, f.upper1)):
        if not pfaff_safe(fx, keep):
            continue
        mid = pfaff(fx, keep)
        reflected = 2 if keep == 1 else 1
        if not (f.lower - other).is_termination_witness():
            continue
        if pfaff_safe(mid, reflected):
            return True
    return False


def euler(fx: FamilyX) -> Union[FamilyX, _Inapplicable]:
    """Both upper slots reflect through the lower slot; x is unchanged.

    The prefactor (1-x)^{lower-upper1-upper2} is recorded by
    euler_prefactor_slot.  Inapplicable when the image does not terminate."""
    if not euler_applicable(fx):
        return INAPPLICABLE
    f = fx.family
    return FamilyX(FamilySpec(f.lower - f.upper1, f.lower - f.upper2, f.lower), fx.x)


def euler_prefactor_slot(fx: FamilyX) -> LinearSlot:
    f = fx.family
    return f.lower - f.upper1 - f.upper2


def swap_upper(fx: FamilyX) -> FamilyX:
    """The series is symmetric in its two upper slots."""
    return FamilyX(fx.family.swap_uppers(), fx.x)


def _nondegenerate_lower(f: FamilySpec) -> bool:
    """Lower slot never a non-positive integer: classical identities apply
    without Pochhammer caveats."""
    return not exists_nonneg_n(f.lower, [(f.lower, "le0")])


def _terminating_image(f: FamilySpec) -> bool:
    return f.has_termination_witness()


def _sqrt_images(value: Fraction) -> list[Argument]:
    """Both square roots of a rational, staying inside Q or one quadratic
    extension."""
    if value == 0:
        return [Fraction(0)]
    root = sqrt_rational(value)
    if isinstance(root, QuadExt):
        return [root, -root]
    return [root, -root]


def quad_transforms(fx: FamilyX) -> list[FamilyX]:
    """Images under the configured quadratic transformation list (version
    qt1): the lower = 2*upper2 transformation and the
    lower = upper1 + upper2 + 1/2 transformation, each in both directions
    whenever the argument map stays rational or lands in one quadratic
    extension.

    All quadratic applications additionally require nondegenerate lower
    slots on both sides; Pochhammer-zero bookkeeping under quadratic
    argument maps is not worth the risk of a false merge."""
    f = fx.family
    x = fx.x
    out: list[FamilyX] = []

    def push(img_family: FamilySpec, img_x: Argument):
        if not _terminating_image(img_family):
            return
        if not _nondegenerate_lower(img_family):
            return
        img = FamilyX(img_family, img_x)
        out.append(img)

    if not _nondegenerate_lower(f):
        return out

    # lower = 2*upper2: F(a, b; 2b; x) = (1-x/2)^{-a} F(a/2, a/2+1/2; b+1/2; (x/(2-x))^2)
    if f.lower == f.upper2 + f.upper2 and x != 2:
        half_u1 = f.upper1.scale(Fraction(1, 2))
        img_family = FamilySpec(half_u1, half_u1 + HALF_SLOT, f.upper2 + HALF_SLOT)
        w = x / (2 - x)
        push(img_family, w * w)

    # the inverse direction: upper2 = upper1 + 1/2 and x a square
    if f.upper2 == f.upper1 + HALF_SLOT and isinstance(x, Fraction):
        b_slot = f.lower - HALF_SLOT
        img_family = FamilySpec(f.upper1.scale(2), b_slot, b_slot + b_slot)
        for w in _sqrt_images(x):
            if w == -1:
                continue
            push(img_family, 2 * w / (1 + w))

    # lower = upper1 + upper2 + 1/2: F(a, b; a+b+1/2; x) = F(2a, 2b; a+b+1/2; (1-sqrt(1-x))/2)
    if f.lower == f.upper1 + f.upper2 + HALF_SLOT and isinstance(x, Fraction):
        img_family = FamilySpec(f.upper1.scale(2), f.upper2.scale(2), f.lower)
        for w in _sqrt_images(1 - x):
            push(img_family, (1 - w) / 2)

    # the inverse direction: lower = (upper1 + upper2)/2 + 1/2, map x -> 4x(1-x)
    if (f.lower + f.lower == f.upper1 + f.upper2 + ONE_SLOT):
        img_family = FamilySpec(f.upper1.scale(Fraction(1, 2)),
                                f.upper2.scale(Fraction(1, 2)), f.lower)
        push(img_family, 4 * x * (1 - x))

    return out


def _neighbors(fx: FamilyX) -> list[FamilyX]:
    out = [swap_upper(fx)]
    for which in (1, 2):
        if pfaff_safe(fx, which):
            out.append(pfaff(fx, which))
    if euler_safe(fx):
        img = euler(fx)
        if img is not INAPPLICABLE:
            out.append(img)
    out.extend(quad_transforms(fx))
    return [n for n in out if n.x != 0 and n.family.has_termination_witness()]


def orbit(fx: FamilyX, max_nodes: int = 200, max_depth: int = 6) -> list[FamilyX]:
    """Bounded breadth-first closure under the safe generators."""
    seen = {fx.serialize(): fx}
    frontier = [fx]
    depth = 0
    while frontier and depth < max_depth and len(seen) < max_nodes:
        new_frontier = []
        for node in frontier:
            for img in _neighbors(node):
                key = img.serialize()
                if key not in seen:
                    seen[key] = img
                    new_frontier.append(img)
                    if len(seen) >= max_nodes:
                        break
            if len(seen) >= max_nodes:
                break
        frontier = new_frontier
        depth += 1
    return list(seen.values())


def canonical_key(fx: FamilyX) -> str:
    """Deterministic orbit representative: the least serialized member."""
    keys = sorted(node.serialize() for node in orbit(fx))
    return "%s:%s" % (TRANSFORM_LIST_VERSION, keys[0])


def _is_kummer_pattern(f: FamilySpec) -> bool:
    # F(a, b; 1 + a - b; -1)
    return (f.lower == ONE_SLOT + f.upper1 - f.upper2
            or f.lower == ONE_SLOT + f.upper2 - f.upper1)


def _is_gauss_half_pattern(f: FamilySpec) -> bool:
    # F(a, b; (a+b+1)/2; 1/2)  or  F(a, 1-a; c; 1/2)
    if f.lower + f.lower == f.upper1 + f.upper2 + ONE_SLOT:
        return True
    return (f.upper2 == ONE_SLOT - f.upper1) or (f.upper1 == ONE_SLOT - f.upper2)


def is_chaff(fx: FamilyX) -> Optional[str]:
    """Classify against the classical evaluations, over the whole orbit.

    Gauss when any orbit member sits at x = 1; Kummer when a member sits at
    x = -1 with the 1 + a - b lower pattern; the x = 1/2 evaluations
    likewise.  None means the pair is not explained by the classics."""
    members = orbit(fx)
    for node in members:
        if node.x == 1:
            return GAUSS
    for node in members:
        if node.x == -1 and _is_kummer_pattern(node.family):
            return KUMMER
    for node in members:
        if node.x == Fraction(1, 2) and _is_gauss_half_pattern(node.family):
            return GAUSS_HALF
    return None
