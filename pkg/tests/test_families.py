import math
import random
from fractions import Fraction
from itertools import product

import pytest

from chainscope import (EventuallyPeriodicSet, TimeSetWindow, WindowParams, family_member,
                        inclusion_audit, rotation_time_set, upper_density,
                        window_family_member)
from chainscope.errors import HorizonTooSmall, SpecError
from chainscope.families import rle_to_window, window_to_rle

from oracles import brute_iapstar, brute_thick


def eps(pre, pat):
    return EventuallyPeriodicSet(tuple(pre), tuple(pat))


def test_upper_density():
    assert upper_density(eps([], [1])) == 1
    assert upper_density(eps([], [1, 0])) == Fraction(1, 2)
    assert upper_density(eps([0, 0, 0, 0], [1, 1, 0])) == Fraction(2, 3)


def test_family_member_full_set():
    full = eps([], [1])
    for fam in ("UD1", "THICK", "IAPSTAR", "INFINITE"):
        assert family_member(full, fam).member


def test_family_member_evens():
    evens = eps([], [1, 0])
    assert not family_member(evens, "UD1").member
    assert not family_member(evens, "THICK").member
    v = family_member(evens, "IAPSTAR")
    assert not v.member
    assert v.certificate["failing_progression"] == {"p": 1, "m": 2}
    assert family_member(evens, "INFINITE").member


def test_family_member_cofinite():
    cof = eps([0], [1])
    assert all(family_member(cof, fam).member
               for fam in ("UD1", "THICK", "IAPSTAR", "INFINITE"))


def test_family_member_empty_tail():
    dead = eps([1, 1], [0])
    assert not family_member(dead, "INFINITE").member
    assert family_member(dead, "INFINITE").certificate["tail_element"] is None


def test_iapstar_failing_progression_is_genuinely_disjoint():
    a = eps([1, 0], [1, 1, 0, 1])
    verdict = family_member(a, "IAPSTAR")
    if not verdict.member:
        cert = verdict.certificate["failing_progression"]
        p, m = cert["p"], cert["m"]
        assert not any(a.contains(p + q * m) for q in range(200))


def test_exact_deciders_match_brute_force_exhaustively_small():
    for L in range(0, 4):
        for P in range(1, 6):
            for pre in product((0, 1), repeat=L):
                for pat in product((0, 1), repeat=P):
                    a = eps(pre, pat)
                    want_iap, _ = brute_iapstar(pre, pat)
                    assert family_member(a, "IAPSTAR").member == want_iap
                    assert family_member(a, "THICK").member == brute_thick(pre, pat)
                    # derived characterization: both collapse to all-ones
                    assert want_iap == all(pat)


def test_windowed_full_and_evens():
    full = eps([], [1]).window(1024)
    for fam in ("UD1", "THICK", "IAPSTAR", "INFINITE"):
        v = window_family_member(full, fam)
        assert v.member and v.mode == "windowed"
    evens = eps([], [1, 0]).window(1024)
    assert not window_family_member(evens, "UD1").member
    thick = window_family_member(evens, "THICK")
    assert not thick.member and thick.certificate["longest_run"] == 1
    iap = window_family_member(evens, "IAPSTAR")
    assert not iap.member
    assert iap.certificate["failing_progression"] == {"p": 1, "m": 2}
    assert window_family_member(evens, "INFINITE").member


def test_windowed_factorial_blocks():
    blocks = set()
    for k in range(1, 7):
        blocks.update(range(math.factorial(k), math.factorial(k) + k + 1))
    w = TimeSetWindow.from_indices(1024, blocks)
    assert window_family_member(w, "THICK", WindowParams(run_req=6)).member
    assert not window_family_member(w, "UD1").member


def test_horizon_guards():
    w = eps([], [1]).window(64)
    with pytest.raises(HorizonTooSmall):
        window_family_member(w, "THICK", WindowParams(run_req=32))
    with pytest.raises(HorizonTooSmall):
        window_family_member(w, "IAPSTAR", WindowParams(m_max=20))
    # defaults clamp instead of failing
    assert window_family_member(w, "IAPSTAR").member


def test_inclusion_audit_exact_and_windowed():
    assert inclusion_audit(eps([], [1])).members() == (True, True, True, True)
    assert inclusion_audit(eps([], [1, 0])).members() == (False, False, False, True)
    w = eps([], [1]).window(512)
    assert inclusion_audit(w).members() == (True, True, True, True)


def test_inclusion_audit_monotone_random_sweep():
    rng = random.Random(13)
    for _ in range(300):
        L = rng.randint(0, 8)
        P = rng.randint(1, 10)
        a = eps([rng.randrange(2) for _ in range(L)],
                [rng.randrange(2) for _ in range(P)])
        assert inclusion_audit(a).monotone


def test_windowed_testers_converge_to_exact():
    rng = random.Random(14)
    for _ in range(40):
        L = rng.randint(0, 5)
        P = rng.randint(1, 6)
        pat = [rng.randrange(2) for _ in range(P)]
        if not any(pat) and rng.random() < 0.5:
            pat[0] = 1
        a = eps([rng.randrange(2) for _ in range(L)], pat)
        H = max(4 * (L + 2 * P) ** 2, 8 * P * (L + P), 4 * P * P, 256)
        w = a.window(H)
        params = WindowParams(theta=Fraction(1, 4 * P), m_max=max(P, 2))
        assert window_family_member(w, "UD1", params).member == family_member(a, "UD1").member
        assert window_family_member(w, "THICK", params).member == family_member(a, "THICK").member
        assert window_family_member(w, "IAPSTAR", params).member == family_member(a, "IAPSTAR").member
        assert window_family_member(w, "INFINITE", params).member == family_member(a, "INFINITE").member


def test_rotation_time_set_properties():
    alpha = (math.sqrt(5) - 1) / 2
    w = rotation_time_set(alpha, 10_000)
    assert window_family_member(w, "IAPSTAR", WindowParams(m_max=20)).member
    assert not window_family_member(w, "THICK", WindowParams(run_req=100)).member
    density = sum(w.members) / w.horizon
    assert abs(density - 0.5) <= 0.02


def test_rotation_rejects_rational_alpha():
    with pytest.raises(SpecError):
        rotation_time_set(0.25, 100)


def test_rle_round_trip():
    w = eps([1, 0], [1, 1, 0]).window(64)
    assert rle_to_window(window_to_rle(w)) == w
    assert window_to_rle(TimeSetWindow(4, (1, 1, 0, 1))) == "1x2 0x1 1x1"
