import random
from fractions import Fraction

import pytest

from chainscope import (PseudoOrbit, SftPoint, estimate_slimit_modulus,
                        find_shadowing_point, sft_distance, sft_shift, slimit_splice,
                        sft_shadow, validate_limit_pseudo_orbit, validate_pseudo_orbit)
from chainscope.errors import ClassMismatch, NotIrreducible, PrecisionViolation, SpecError, StepViolation
from chainscope.sft import SftGraph, shift_by
from chainscope.shadowing import default_schedule

from conftest import random_point, random_pseudo_orbit


def test_validate_true_orbit_is_zero_error(sys3):
    po = validate_pseudo_orbit(sys3, ["a", "b", "c", "a"], 0)
    assert po.errors == (Fraction(0),) * 3


def test_validate_rejects_oversized_step(sys2id):
    with pytest.raises(StepViolation) as exc:
        validate_pseudo_orbit(sys2id, ["p", "q"], Fraction(1, 2))
    assert exc.value.index == 0 and exc.value.error == 1


def test_validate_sft_steps(full2):
    x = SftPoint((), (0,))
    y = SftPoint((0, 0, 0), (1,))  # agrees with shift(x) on 3 symbols
    po = validate_pseudo_orbit(full2, [x, y], Fraction(1, 8))
    assert po.errors[0] == Fraction(1, 8)


def test_limit_validation_checkpoints(full2):
    # constant positive error beyond every checkpoint fails the tail bound
    states = ["a"]
    po = PseudoOrbit(tuple("aaaaaaaa"), (Fraction(1, 8),) * 7)
    verdict = validate_limit_pseudo_orbit(po, Fraction(1, 4),
                                          [Fraction(1, 4), Fraction(1, 16)])
    assert not verdict.ok and verdict.failing_checkpoint == 1
    decaying = PseudoOrbit(tuple(range(9)),
                           tuple(Fraction(1, 2**(k + 2)) for k in range(8)))
    assert validate_limit_pseudo_orbit(
        decaying, Fraction(1, 4),
        [Fraction(1, 4), Fraction(1, 16), Fraction(1, 64)]).ok
    with pytest.raises(SpecError):
        validate_limit_pseudo_orbit(decaying, Fraction(1, 4), [Fraction(1, 4), Fraction(1, 2)])


def test_find_shadowing_point_examples(sys3, sys2id):
    po = validate_pseudo_orbit(sys3, ["a", "b", "c", "a"], 0)
    res = find_shadowing_point(sys3, po, 0)
    assert res.point == "a" and res.epsilon == 0
    po_id = validate_pseudo_orbit(sys2id, ["p", "p", "p"], 0)
    assert find_shadowing_point(sys2id, po_id, 0).point == "p"
    # jumping orbit at delta=1 is unshadowable within 1/2
    po_jump = validate_pseudo_orbit(sys3, ["a", "a", "a"], 1)
    assert find_shadowing_point(sys3, po_jump, Fraction(1, 2)).point is None


def test_sft_shadow_true_orbit(full2):
    x = SftPoint((), (0, 1))
    states = [x]
    for _ in range(9):
        states.append(sft_shift(full2, states[-1]))
    po = validate_pseudo_orbit(full2, states, 0)
    res = sft_shadow(full2, po, 3)
    assert res.point == x and res.epsilon == 0


def test_sft_shadow_depth_bound(full2, goldenmean):
    rng = random.Random(31)
    for g in (full2, goldenmean):
        for depth in (2, 3, 4):
            states = random_pseudo_orbit(g, rng, depth, 60)
            po = validate_pseudo_orbit(g, states, Fraction(1, 2**depth))
            res = sft_shadow(g, po, depth)
            assert res.epsilon <= Fraction(1, 2**(depth + 1))
            # independent recheck of the tracking bound
            z = res.point
            for i, s in enumerate(states):
                assert sft_distance(g, shift_by(z, i), s) <= Fraction(1, 2**(depth + 1))


def test_sft_shadow_rejects_coarse_orbit(full2):
    x = SftPoint((), (0,))
    y = SftPoint((), (1,))
    po = PseudoOrbit((x, y), (sft_distance(full2, sft_shift(full2, x), y),))
    with pytest.raises(PrecisionViolation):
        sft_shadow(full2, po, 2)


def test_sft_shadow_increasing_depths_decay(full2, goldenmean):
    # agreement depths n, n+1, n+2, ... along the orbit force the tracking
    # error at step i down to 2^-(n+i+1)
    from conftest import _close_walk

    rng = random.Random(32)
    n = 2
    for g in (full2, goldenmean):
        for _ in range(10):
            states = [random_point(g, rng)]
            for i in range(30):
                prev = shift_by(states[-1], 1)
                walk = prev.expand(n + i)
                walk.append(rng.choice(g.successors(walk[-1])))
                states.append(_close_walk(g, walk))
            po = validate_pseudo_orbit(g, states, Fraction(1, 2**n))
            res = sft_shadow(g, po, n)
            z = res.point
            for i, s in enumerate(states):
                assert sft_distance(g, shift_by(z, i), s) <= Fraction(1, 2**(n + i + 1))


def test_slimit_splice_full_shift(full2):
    x = SftPoint((), (1,))
    y = SftPoint((), (0,))
    z = slimit_splice(full2, x, y, Fraction(1, 8))
    assert sft_distance(full2, y, z) <= Fraction(1, 8)
    # tail merges exactly with x's tail at its own coordinates
    k = len(z.head)
    assert shift_by(z, k) == shift_by(x, k)
    assert z.expand(3) == y.expand(3)


def test_slimit_splice_identity_case(full2):
    y = SftPoint((), (0, 1))
    assert slimit_splice(full2, y, y, Fraction(1, 4)) == y


def test_slimit_splice_golden_mean(goldenmean):
    x = SftPoint((), (0,))
    y = SftPoint((), (0, 1))
    z = slimit_splice(goldenmean, x, y, Fraction(1, 4))
    assert sft_distance(goldenmean, y, z) <= Fraction(1, 4)
    word = z.expand(32)
    assert all(not (a == 1 and b == 1) for a, b in zip(word, word[1:]))
    k = len(z.head)
    assert shift_by(z, k) == shift_by(x, k)


def test_slimit_splice_random_sweep(full2, goldenmean):
    rng = random.Random(33)
    for g in (full2, goldenmean):
        for _ in range(40):
            x = random_point(g, rng)
            y = random_point(g, rng)
            n = rng.randint(1, 6)
            z = slimit_splice(g, x, y, Fraction(1, 2**n))
            assert sft_distance(g, y, z) <= Fraction(1, 2**n)
            k = max(len(z.head), len(x.head)) + 1
            assert shift_by(z, k) == shift_by(x, k)


def test_slimit_splice_class_mismatch():
    four_cycle = SftGraph((
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
        (1, 0, 0, 0),
    ))
    x = SftPoint((), (0, 1, 2, 3))
    y = SftPoint((), (1, 2, 3, 0))
    with pytest.raises(ClassMismatch):
        slimit_splice(four_cycle, x, y, Fraction(1, 4))
    # same class works
    z = slimit_splice(four_cycle, x, x, Fraction(1, 4))
    assert z == x


def test_slimit_splice_requires_irreducible():
    g = SftGraph((
        (1, 1, 0),
        (0, 1, 1),
        (0, 0, 1),
    ))
    with pytest.raises(NotIrreducible):
        slimit_splice(g, SftPoint((), (0,)), SftPoint((), (2,)), Fraction(1, 2))


def test_estimate_slimit_modulus_examples(sys2id, sys3, rotation4):
    assert estimate_slimit_modulus(sys2id, Fraction(1, 2), 6) == 0
    assert estimate_slimit_modulus(sys3, Fraction(0), 6) == 0
    assert estimate_slimit_modulus(rotation4, Fraction(1, 4), 8) == 0


def test_estimate_slimit_modulus_positive_case():
    # contractive-to-fixed-point system: every jump within delta=1 is
    # shadowed by the fixed point itself when epsilon covers the radius
    from chainscope import finite_system

    sys = finite_system(
        ["o", "r"],
        {"o": "o", "r": "o"},
        {("o", "r"): 1},
    )
    assert estimate_slimit_modulus(sys, Fraction(1), 6) == 1


def test_default_schedule_shape():
    sched = default_schedule(Fraction(1, 4))
    assert sched == (Fraction(1, 4), Fraction(1, 16), Fraction(1, 64), Fraction(1, 256))


def test_find_shadowing_point_independent_recheck():
    from conftest import random_system
    from chainscope import critical_deltas

    rng = random.Random(34)
    for _ in range(25):
        sys = random_system(rng, max_points=7)
        crits = critical_deltas(sys)
        delta = crits[len(crits) // 2]
        start = rng.choice(sys.points)
        states = [start]
        for _ in range(5):
            states.append(rng.choice([v for v in sys.points
                                      if sys.distance(sys.apply(states[-1]), v) <= delta]))
        po = validate_pseudo_orbit(sys, states, delta)
        eps = rng.choice(crits)
        res = find_shadowing_point(sys, po, eps)
        if res.point is not None:
            u = res.point
            for s in states:
                assert sys.distance(u, s) <= eps
                u = sys.apply(u)
