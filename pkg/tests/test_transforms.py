import random
from fractions import Fraction

import pytest

from hypsearch.exactalg import QuadExt
from hypsearch.hyperseries import (FamilySpec, HALF_SLOT, LinearSlot,
                                   eval_terminating)
from hypsearch.transforms import (FamilyX, GAUSS, GAUSS_HALF, INAPPLICABLE,
                                  KUMMER, PoleAtOneError, canonical_key,
                                  euler, euler_prefactor_slot, euler_safe,
                                  is_chaff, orbit, pfaff, pfaff_prefactor_slot,
                                  pfaff_safe, quad_transforms, swap_upper)
from conftest import random_search_family


def F(a, b, c, b0, c0):
    return FamilySpec.search_form(a, b, c, Fraction(b0), Fraction(c0))


def FX(a, b, c, b0, c0, x):
    return FamilyX(F(a, b, c, b0, c0), Fraction(x))


class TestPfaff:
    def test_argument_map(self):
        fx = FX(1, 0, 0, 2, 5, -1)
        assert pfaff(fx, 1).x == Fraction(1, 2)

    def test_slot_arithmetic(self):
        img = pfaff(FX(1, 0, 0, 2, 5, -1), 1)
        assert img.family.upper2 == LinearSlot.of(0, 3)
        assert img.family.lower == LinearSlot.of(0, 5)
        assert img.family.upper1 == LinearSlot.of(-1, 0)

    def test_involution(self, rng):
        done = 0
        while done < 20:
            fx = FamilyX(random_search_family(rng),
                         Fraction(rng.randint(2, 9), rng.randint(1, 3)))
            if fx.x == 1:
                continue
            for which in (1, 2):
                assert pfaff(pfaff(fx, which), which) == fx
            done += 1

    def test_pole_at_one(self):
        with pytest.raises(PoleAtOneError):
            pfaff(FX(1, 0, 0, 2, 5, 1), 1)

    def test_value_identity(self, rng):
        checked = 0
        while checked < 30:
            fx = FamilyX(random_search_family(rng),
                         Fraction(rng.randint(-9, 9) or 2, rng.randint(1, 4)))
            if fx.x in (0, 1) or not pfaff_safe(fx, 1):
                continue
            img = pfaff(fx, 1)
            expo = pfaff_prefactor_slot(fx, 1)
            for n in range(6):
                lhs = eval_terminating(fx.family, n, fx.x)
                rhs = eval_terminating(img.family, n, img.x)
                if lhs is None or rhs is None:
                    continue
                e = expo.at(n)
                assert e.denominator == 1
                assert lhs == (1 - fx.x) ** int(e) * rhs
                checked += 1


class TestEuler:
    def test_inapplicable_when_image_does_not_terminate(self):
        assert euler(FX(1, 0, 0, 2, 5, -1)) is INAPPLICABLE

    def test_applicability_by_intercept(self):
        # upper1' = (c+a) n + c0 terminates only for non-positive integer c0
        good = FamilyX(F(2, 0, -3, Fraction(1, 2), -1), Fraction(2))
        assert euler(good) is not INAPPLICABLE
        # neither reflected slot lands on integers: no witness either way
        bad = FamilyX(F(2, 0, -3, Fraction(1, 4), Fraction(1, 2)), Fraction(2))
        assert euler(bad) is INAPPLICABLE

    def test_involution_on_domain(self, rng):
        seen = 0
        while seen < 10:
            fx = FamilyX(random_search_family(rng),
                         Fraction(rng.randint(2, 9), rng.randint(1, 3)))
            img = euler(fx)
            if img is INAPPLICABLE:
                continue
            back = euler(img)
            if back is INAPPLICABLE:
                continue
            assert back == fx
            seen += 1

    def test_value_identity_on_safe_domain(self, rng):
        checked = 0
        while checked < 12:
            fx = FamilyX(random_search_family(rng),
                         Fraction(rng.randint(-9, 9) or 3, rng.randint(1, 4)))
            if fx.x in (0, 1) or not euler_safe(fx):
                continue
            img = euler(fx)
            expo = euler_prefactor_slot(fx)
            for n in range(5):
                lhs = eval_terminating(fx.family, n, fx.x)
                rhs = eval_terminating(img.family, n, img.x)
                if lhs is None or rhs is None:
                    continue
                e = expo.at(n)
                assert e.denominator == 1
                assert lhs == (1 - fx.x) ** int(e) * rhs
                checked += 1

    def test_unsafe_reflection_counterexample(self):
        # F(-1, -4; -2; x) != (1-x)^3 F(-1, 2; -2; x): the raw reflection
        # must stay out of the safe orbit
        fx = FamilyX(F(1, -4, -2, 0, 0), Fraction(3))
        assert not euler_safe(fx)
        img = euler(fx)
        assert img is not INAPPLICABLE
        lhs = eval_terminating(fx.family, 1, fx.x)
        rhs = eval_terminating(img.family, 1, img.x)
        e = euler_prefactor_slot(fx).at(1)
        assert lhs != (1 - fx.x) ** int(e) * rhs


class TestSwap:
    def test_involution_and_slots(self):
        fx = FX(1, 0, 0, 2, 5, -1)
        img = swap_upper(fx)
        assert img.family.upper1 == LinearSlot.of(0, 2)
        assert img.family.upper2 == LinearSlot.of(-1, 0)
        assert swap_upper(img) == fx

    def test_key_equal_on_swap(self):
        fx = FX(1, -2, 1, Fraction(1, 2), Fraction(3, 2), -3)
        assert canonical_key(fx) == canonical_key(swap_upper(fx))


class TestQuadTransforms:
    def test_lower_twice_upper2(self):
        # F(-2n, b; 2b; x) with b = n + 1/2 keeps the lower nondegenerate
        fam = FamilySpec(LinearSlot.of(-2, 0), LinearSlot.of(1, Fraction(1, 2)),
                         LinearSlot.of(2, 1))
        fx = FamilyX(fam, Fraction(-3))
        images = quad_transforms(fx)
        assert any(img.x == Fraction(9, 25) for img in images)  # (x/(2-x))^2

    def test_no_precondition_no_images(self):
        assert quad_transforms(FX(1, 0, 0, 2, 5, -1)) == []

    def test_value_identity_q1(self):
        fam = FamilySpec(LinearSlot.of(-2, 0), LinearSlot.of(1, Fraction(1, 2)),
                         LinearSlot.of(2, 1))
        fx = FamilyX(fam, Fraction(-3))
        img = [i for i in quad_transforms(fx) if i.x == Fraction(9, 25)][0]
        for n in range(5):
            lhs = eval_terminating(fx.family, n, fx.x)
            rhs = eval_terminating(img.family, n, img.x)
            prefactor = (1 - fx.x / 2) ** (2 * n)
            assert lhs == prefactor * rhs

    def test_value_identity_q2_backward(self):
        # lower = (u1+u2)/2 + 1/2 maps x -> 4x(1-x) with no prefactor
        fam = FamilySpec(LinearSlot.of(-2, 0), LinearSlot.of(0, 3),
                         LinearSlot.of(-1, Fraction(2)))
        fx = FamilyX(fam, Fraction(1, 5))
        images = [i for i in quad_transforms(fx) if i.x == Fraction(16, 25)]
        assert images
        img = images[0]
        for n in range(5):
            lhs = eval_terminating(fx.family, n, fx.x)
            rhs = eval_terminating(img.family, n, img.x)
            if lhs is None or rhs is None:
                continue
            assert lhs == rhs

    def test_quadratic_extension_argument(self):
        # lower = u1 + u2 + 1/2 with 1 - x not a square: images live in Q(sqrt)
        fam = FamilySpec(LinearSlot.of(-1, 0), LinearSlot.of(0, 1),
                         LinearSlot.of(-1, Fraction(3, 2)))
        fx = FamilyX(fam, Fraction(-1))
        images = quad_transforms(fx)
        assert any(isinstance(img.x, QuadExt) for img in images)


class TestOrbitAndKey:
    def test_key_constant_on_generators(self, rng):
        tested = 0
        while tested < 25:
            fx = FamilyX(random_search_family(rng),
                         Fraction(rng.randint(-6, 6) or 3, rng.randint(1, 3)))
            if fx.x == 0:
                continue
            base = canonical_key(fx)
            neighbors = [swap_upper(fx)]
            for which in (1, 2):
                if pfaff_safe(fx, which):
                    neighbors.append(pfaff(fx, which))
            if euler_safe(fx):
                neighbors.append(euler(fx))
            neighbors.extend(quad_transforms(fx))
            for img in neighbors:
                assert canonical_key(img) == base
            tested += 1

    def test_distinct_families_distinct_keys(self):
        k1 = canonical_key(FX(1, 0, 0, 2, 5, 1))
        k2 = canonical_key(FX(1, 0, 0, 3, 7, 1))
        assert k1 != k2

    def test_orbit_contains_conjugate_argument(self):
        # pfaff sends (1+sqrt(-3))/2 to its conjugate for the flagship family
        x = QuadExt(Fraction(1, 2), Fraction(1, 2), -3)
        fx = FamilyX(F(1, -3, -2, -1, 0), x)
        members = orbit(fx)
        assert any(isinstance(m.x, QuadExt) and m.x == x.conjugate()
                   for m in members)
        assert canonical_key(fx) == canonical_key(FamilyX(fx.family, x.conjugate()))


class TestChaff:
    def test_x_one_is_gauss(self, rng):
        for _ in range(5):
            fx = FamilyX(random_search_family(rng), Fraction(1))
            assert is_chaff(fx) == GAUSS

    def test_kummer_pattern(self):
        b0 = Fraction(1, 3)
        fam = FamilySpec(LinearSlot.of(-2, 0), LinearSlot.of(0, b0),
                         LinearSlot.of(-2, 1 - b0))
        assert is_chaff(FamilyX(fam, Fraction(-1))) == KUMMER

    def test_gauss_half_pattern(self):
        # F(a, 1-a; c; 1/2)
        fam = FamilySpec(LinearSlot.of(-2, 0), LinearSlot.of(2, 1),
                         LinearSlot.of(0, Fraction(7, 2)))
        assert is_chaff(FamilyX(fam, Fraction(1, 2))) == GAUSS_HALF

    def test_flagship_is_not_chaff(self):
        x = QuadExt(Fraction(1, 2), Fraction(1, 2), -3)
        assert is_chaff(FamilyX(F(1, -3, -2, -1, 0), x)) is None

    def test_chaff_is_orbit_invariant(self, rng):
        tested = 0
        while tested < 10:
            fx = FamilyX(random_search_family(rng),
                         Fraction(rng.randint(-4, 4) or 2, rng.randint(1, 2)))
            if fx.x == 0:
                continue
            cls = is_chaff(fx)
            for member in orbit(fx)[:8]:
                assert is_chaff(member) == cls
            tested += 1
