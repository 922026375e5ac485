"""Time sets and membership tests for four Furstenberg families.

Families, strongest first: UD1 (upper density one), THICK (arbitrarily long
runs), IAPSTAR (meets every infinite arithmetic progression; the dual of the
contains-a-progression family), INFINITE.  Membership is decided exactly for
eventually periodic sets and estimated by windowed testers for finite
observation windows; every windowed verdict carries its truncation
parameters, since the defining quantifiers are unbounded and truncation must
stay visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HorizonTooSmall, MonotonicityBug, SpecError

FAMILIES = ("UD1", "THICK", "IAPSTAR", "INFINITE")


@dataclass(frozen=True)
class TimeSetWindow:
    """A time set observed on the window [0, horizon)."""

    horizon: int
    members: tuple[int, ...]  # bits

    def __post_init__(self):
        if self.horizon < 1 or len(self.members) != self.horizon:
            raise SpecError("window bits must match the horizon")
        if any(b not in (0, 1) for b in self.members):
            raise SpecError("window entries must be bits")

    @classmethod
    def from_indices(cls, horizon: int, indices) -> "TimeSetWindow":
        bits = [0] * horizon
        for i in indices:
            if 0 <= i < horizon:
                bits[i] = 1
        return cls(horizon, tuple(bits))

    def indices(self) -> list[int]:
        return [i for i, b in enumerate(self.members) if b]


@dataclass(frozen=True)
class EventuallyPeriodicSet:
    """Subset of the naturals: explicit preperiod bits, then a repeating
    pattern."""

    preperiod: tuple[int, ...]
    pattern: tuple[int, ...]

    def __post_init__(self):
        if len(self.pattern) < 1:
            raise SpecError("pattern must be nonempty")
        if any(b not in (0, 1) for b in self.preperiod + self.pattern):
            raise SpecError("set entries must be bits")

    def contains(self, i: int) -> bool:
        if i < len(self.preperiod):
            return bool(self.preperiod[i])
        return bool(self.pattern[(i - len(self.preperiod)) % len(self.pattern)])

    def window(self, horizon: int) -> TimeSetWindow:
        return TimeSetWindow(horizon, tuple(int(self.contains(i)) for i in range(horizon)))


@dataclass(frozen=True)
class FamilyVerdict:
    family: str
    member: bool
    mode: str  # "exact" | "windowed"
    certificate: dict = field(default_factory=dict)


def upper_density(A: EventuallyPeriodicSet) -> Fraction:
    """limsup of prefix densities; the periodic part dominates, so the value
    is (set bits in pattern) / period."""
    ones = sum(A.pattern)
    value = Fraction(ones, len(A.pattern))
    return value


def _longest_run(bits) -> tuple[int, int]:
    """(length, start) of the longest run of ones."""
    best = (0, 0)
    run = 0
    for i, b in enumerate(bits):
        run = run + 1 if b else 0
        if run > best[0]:
            best = (run, i - run + 1)
    return best


def family_member(A: EventuallyPeriodicSet, family: str) -> FamilyVerdict:
    """Exact membership decision for an eventually periodic set."""
    if family not in FAMILIES:
        raise SpecError(f"unknown family {family!r}")
    L, P = len(A.preperiod), len(A.pattern)
    if family == "UD1":
        dens = upper_density(A)
        return FamilyVerdict("UD1", dens == 1, "exact",
                             {"upper_density": str(dens)})
    if family == "THICK":
        if all(A.pattern):
            return FamilyVerdict("THICK", True, "exact",
                                 {"run": "cofinite tail"})
        # runs in the tail never cover a full period; the preperiod adds a
        # bounded amount only
        run, start = _longest_run([int(A.contains(i)) for i in range(L + 3 * P)])
        return FamilyVerdict("THICK", False, "exact",
                             {"longest_run_bound": max(run, L + P), "run_start": start})
    if family == "IAPSTAR":
        # meets every progression <p, m> iff, for every divisor g of the
        # period, the pattern meets every residue class mod g; the residues
        # visited by p + q*m settle onto a coset of gcd(m, P) mod P
        for g in sorted(d for d in range(1, P + 1) if P % d == 0):
            hit = {i % g for i, b in enumerate(A.pattern) if b}
            for r in range(g):
                if r not in hit:
                    return FamilyVerdict(
                        "IAPSTAR", False, "exact",
                        {"failing_progression": {"p": L + r, "m": g}})
        return FamilyVerdict("IAPSTAR", True, "exact", {})
    ones = [i for i, b in enumerate(A.pattern) if b]
    if ones:
        return FamilyVerdict("INFINITE", True, "exact",
                             {"tail_element": L + ones[0]})
    return FamilyVerdict("INFINITE", False, "exact", {"tail_element": None})


@dataclass(frozen=True)
class WindowParams:
    """Truncation constants for the windowed testers.

    ``run_req`` defaults to floor(sqrt(H)) and ``m_max`` to the largest value
    the horizon supports (at most 20); explicitly requested values that the
    horizon cannot support raise HorizonTooSmall.
    """

    theta: Fraction = Fraction(1, 100)
    run_req: int | None = None
    m_max: int | None = None
    tail_start: int | None = None

    def resolve(self, horizon: int, family: str) -> tuple[Fraction, int, int, int]:
        run_req = self.run_req if self.run_req is not None else max(1, math.isqrt(horizon))
        m_max = self.m_max if self.m_max is not None else max(1, min(20, math.isqrt(horizon // 4)))
        tail_start = self.tail_start if self.tail_start is not None else horizon // 2
        if family == "THICK" and horizon < 4 * run_req:
            raise HorizonTooSmall(f"H={horizon} < 4*run_req={4 * run_req}")
        if family == "IAPSTAR" and horizon < 4 * m_max * m_max:
            raise HorizonTooSmall(f"H={horizon} < 4*m_max^2={4 * m_max * m_max}")
        if not 0 <= tail_start < horizon:
            raise HorizonTooSmall(f"tail_start={tail_start} outside window")
        return self.theta, run_req, m_max, tail_start


def window_family_member(A: TimeSetWindow, family: str,
                         params: WindowParams = WindowParams()) -> FamilyVerdict:
    """Windowed membership test; the unbounded quantifiers of each family
    become bounded loops over the observation window."""
    if family not in FAMILIES:
        raise SpecError(f"unknown family {family!r}")
    H = A.horizon
    theta, run_req, m_max, tail_start = params.resolve(H, family)
    meta = {"H": H, "theta": str(theta), "run_req": run_req,
            "m_max": m_max, "tail_start": tail_start}
    if family == "UD1":
        best = Fraction(0)
        best_n = 0
        count = sum(A.members[: H // 2])
        for n in range(H // 2, H + 1):
            if n > H // 2:
                count += A.members[n - 1]
            if n and Fraction(count, n) > best:
                best, best_n = Fraction(count, n), n
        member = best >= 1 - theta
        return FamilyVerdict("UD1", member, "windowed",
                             dict(meta, best_prefix_density=str(best), best_prefix=best_n))
    if family == "THICK":
        run, start = _longest_run(A.members)
        return FamilyVerdict("THICK", run >= run_req, "windowed",
                             dict(meta, longest_run=run, run_start=start))
    if family == "IAPSTAR":
        tail = [i for i in range(tail_start, H) if A.members[i]]
        residues_hit: dict[int, set[int]] = {m: set() for m in range(1, m_max + 1)}
        for i in tail:
            for m in range(1, m_max + 1):
                residues_hit[m].add(i % m)
        for m in range(1, m_max + 1):
            for p in range(m):
                if p not in residues_hit[m]:
                    return FamilyVerdict(
                        "IAPSTAR", False, "windowed",
                        dict(meta, failing_progression={"p": p, "m": m}))
        return FamilyVerdict("IAPSTAR", True, "windowed", meta)
    tail_members = [i for i in range(tail_start, H) if A.members[i]]
    return FamilyVerdict("INFINITE", bool(tail_members), "windowed",
                         dict(meta, tail_element=tail_members[0] if tail_members else None))


@dataclass(frozen=True)
class InclusionAudit:
    """Verdicts for all four families plus the monotonicity status."""

    verdicts: tuple[FamilyVerdict, FamilyVerdict, FamilyVerdict, FamilyVerdict]
    monotone: bool
    warnings: tuple[str, ...] = ()

    def members(self) -> tuple[bool, bool, bool, bool]:
        return tuple(v.member for v in self.verdicts)  # type: ignore[return-value]


def inclusion_audit(A, params: WindowParams = WindowParams()) -> InclusionAudit:
    """Test all four families, strongest first, and check that membership
    only weakens along the chain UD1, THICK, IAPSTAR, INFINITE.

    An exact-mode violation is an internal bug; windowed violations are
    reported as truncation artifacts.
    """
    if isinstance(A, EventuallyPeriodicSet):
        verdicts = tuple(family_member(A, f) for f in FAMILIES)
    else:
        verdicts = tuple(window_family_member(A, f, params) for f in FAMILIES)
    monotone = True
    warnings: list[str] = []
    for stronger, weaker in zip(verdicts, verdicts[1:]):
        if stronger.member and not weaker.member:
            monotone = False
            if stronger.mode == "exact":
                raise MonotonicityBug(
                    f"{stronger.family} member but {weaker.family} is not")
            warnings.append(
                f"windowed artifact: {stronger.family} true, {weaker.family} false")
    return InclusionAudit(verdicts, monotone, tuple(warnings))


def rotation_time_set(alpha: float, horizon: int) -> TimeSetWindow:
    """Visit times of the left half-circle under the circle rotation by alpha.

    Bit i is set iff the fractional part of i*alpha lies in (1/4, 3/4), the
    arc where the real part of the rotated unit point is negative.  alpha is
    only validated as non-rational within float precision: values within
    1e-12 of a fraction with denominator <= 1000 are rejected.
    """
    if horizon < 1:
        raise SpecError("horizon must be positive")
    a = float(alpha) % 1.0
    for q in range(1, 1001):
        if abs(a * q - round(a * q)) < 1e-12:
            raise SpecError(f"alpha={alpha} is rational within float precision (q={q})")
    bits = tuple(1 if 0.25 < (i * a) % 1.0 < 0.75 else 0 for i in range(horizon))
    return TimeSetWindow(horizon, bits)


# -- run-length text encoding ----------------------------------------------------

def window_to_rle(A: TimeSetWindow) -> str:
    """'1x5 0x3 ...' run-length encoding of the window bits."""
    parts = []
    i = 0
    while i < A.horizon:
        j = i
        while j < A.horizon and A.members[j] == A.members[i]:
            j += 1
        parts.append(f"{A.members[i]}x{j - i}")
        i = j
    return " ".join(parts)


def rle_to_window(text: str) -> TimeSetWindow:
    bits: list[int] = []
    for token in text.split():
        try:
            b, n = token.split("x")
            bits.extend([int(b)] * int(n))
        except ValueError as exc:
            raise SpecError(f"bad run-length token {token!r}") from exc
    if not bits:
        raise SpecError("empty run-length text")
    return TimeSetWindow(len(bits), tuple(bits))
