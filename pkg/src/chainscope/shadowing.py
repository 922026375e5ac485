"""Pseudo-orbits, shadowing search and exact splice constructions.

On finite systems shadowing is decided by brute force over candidate start
points.  On vertex shifts the shadow of a pseudo-orbit whose steps agree to
depth n is constructed exactly by splicing first symbols: consecutive states
overlap in n symbols, so adjacent spliced symbols are admissible pairs and
the spliced point tracks every state to depth n+1.

The splice toward a target tail realizes the asymptotic-merge construction:
keep a prefix of one point, connect admissibly, then copy the other point's
tail at its original coordinates, which drives the tracking error to
exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chains import critical_deltas
from .errors import (AdmissibilityBug, BudgetExceeded, ClassMismatch, NotIrreducible,
                     PrecisionViolation, SpecError, StepViolation)
from .sft import (SftGraph, SftPoint, first_difference, graph_period, is_irreducible,
                  sft_distance, sft_shift, shift_by, validate_point, vertex_classes)
from .systems import FiniteSystem


class _FiniteDynamics:
    def __init__(self, sys: FiniteSystem):
        self.sys = sys

    def apply(self, x):
        return self.sys.apply(x)

    def distance(self, x, y):
        return self.sys.distance(x, y)


class _ShiftDynamics:
    def __init__(self, g: SftGraph):
        self.g = g

    def apply(self, x):
        return sft_shift(self.g, x)

    def distance(self, x, y):
        return sft_distance(self.g, x, y)


def dynamics(model):
    if isinstance(model, FiniteSystem):
        return _FiniteDynamics(model)
    if isinstance(model, SftGraph):
        return _ShiftDynamics(model)
    raise SpecError(f"unsupported model {type(model).__name__}")


@dataclass(frozen=True)
class PseudoOrbit:
    """A finite state sequence with its per-step errors e_i = d(f(x_i), x_{i+1})."""

    states: tuple
    errors: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.errors) != len(self.states) - 1:
            raise SpecError("errors must have one entry per step")


def validate_pseudo_orbit(model, xs: Sequence, delta) -> PseudoOrbit:
    """Accept xs as a delta-pseudo-orbit; reject at the first oversized step."""
    delta = Fraction(delta)
    states = tuple(xs)
    if len(states) < 2:
        raise SpecError("a pseudo-orbit needs at least two states")
    dyn = dynamics(model)
    errors = []
    for i in range(len(states) - 1):
        e = dyn.distance(dyn.apply(states[i]), states[i + 1])
        if e > delta:
            raise StepViolation(i, e)
        errors.append(e)
    return PseudoOrbit(states, tuple(errors))


@dataclass(frozen=True)
class LimitVerdict:
    ok: bool
    failing_checkpoint: int | None = None
    checkpoint_bounds: tuple[Fraction, ...] = ()


def validate_limit_pseudo_orbit(po: PseudoOrbit, delta,
                                schedule: Sequence) -> LimitVerdict:
    """Finitized error-decay check for a pseudo-orbit.

    The decay requirement becomes a checkpoint schedule: for the j-th entry
    t_j of the (strictly decreasing, positive) schedule, the suffix maximum
    of the errors beyond checkpoint j*(len/|schedule|) must be <= t_j.
    """
    delta = Fraction(delta)
    sched = [Fraction(t) for t in schedule]
    if not sched or sched[-1] <= 0 or any(a <= b for a, b in zip(sched, sched[1:])):
        raise SpecError("schedule must be strictly decreasing and end positive")
    nerr = len(po.errors)
    suffix_max: list[Fraction] = [Fraction(0)] * (nerr + 1)
    for i in range(nerr - 1, -1, -1):
        suffix_max[i] = max(po.errors[i], suffix_max[i + 1])
    if any(e > delta for e in po.errors):
        return LimitVerdict(False, 0, ())
    bounds = []
    for j, tj in enumerate(sched):
        cp = (j * nerr) // len(sched)
        bounds.append(suffix_max[cp])
        if suffix_max[cp] > tj:
            return LimitVerdict(False, j, tuple(bounds))
    return LimitVerdict(True, None, tuple(bounds))


def default_schedule(delta) -> tuple[Fraction, ...]:
    d = Fraction(delta)
    if d <= 0:
        d = Fraction(1, 64)
    return (d, d / 4, d / 16, d / 64)


@dataclass(frozen=True)
class ShadowResult:
    point: object | None
    epsilon: Fraction | None
    tail_profile: tuple[Fraction, ...] = ()


def find_shadowing_point(sys: FiniteSystem, po: PseudoOrbit, epsilon) -> ShadowResult:
    """Brute-force search for z with d(f^i(z), x_i) <= epsilon for all i.

    Returns the smallest witness by node id, or an absent result; exact.
    """
    epsilon = Fraction(epsilon)
    horizon = len(po.states)
    for z in sorted(sys.points):
        u = z
        track = []
        for i in range(horizon):
            d = sys.distance(u, po.states[i])
            if d > epsilon:
                break
            track.append(d)
            u = sys.apply(u)
        else:
            suffix = [Fraction(0)] * (horizon + 1)
            for i in range(horizon - 1, -1, -1):
                suffix[i] = max(track[i], suffix[i + 1])
            return ShadowResult(z, max(track), tuple(suffix[:horizon]))
    return ShadowResult(None, None, ())


def sft_shadow(g: SftGraph, po: PseudoOrbit, n: int) -> ShadowResult:
    """Exact shadow of a depth-n pseudo-orbit on a vertex shift.

    Requires every step error <= 2^(-n) with n >= 1.  The shadow reads the
    first symbol of each state and then follows the final state; the result
    is admissible and tracks every state within 2^(-(n+1)).  Decaying step
    errors therefore yield decaying tracking errors: the construction is the
    asymptotic-tracking mechanism on shifts.
    """
    if n < 1:
        raise SpecError("agreement depth n must be at least 1")
    bound = Fraction(1, 2**n)
    for i, e in enumerate(po.errors):
        if e > bound:
            raise PrecisionViolation(i, e)
    states = po.states
    for x in states:
        validate_point(g, x)
    last = states[-1]
    head = tuple(x.symbol(0) for x in states[:-1]) + last.head
    z = SftPoint(head, last.cycle)
    try:
        validate_point(g, z)
    except Exception as exc:  # pragma: no cover - construction invariant
        raise AdmissibilityBug(f"spliced shadow is not admissible: {exc}") from exc
    target = Fraction(1, 2**(n + 1))
    track = []
    zi = z
    for i in range(len(states)):
        k = first_difference(zi, states[i])
        d = Fraction(0) if k is None else Fraction(1, 2**k)
        if d > target:
            raise AdmissibilityBug(
                f"tracking bound 2^-(n+1) fails at step {i}: {d}")
        track.append(d)
        zi = shift_by(zi, 1)
    suffix = [Fraction(0)] * (len(track) + 1)
    for i in range(len(track) - 1, -1, -1):
        suffix[i] = max(track[i], suffix[i + 1])
    return ShadowResult(z, max(track), tuple(suffix[:len(track)]))


def _epsilon_exponent(epsilon) -> int:
    eps = Fraction(epsilon)
    if eps <= 0 or eps > 1:
        raise SpecError("epsilon must be a dyadic rational in (0, 1]")
    n = (eps.denominator).bit_length() - 1
    if eps.numerator != 1 or (1 << n) != eps.denominator:
        raise SpecError(f"epsilon must be a power of two, got {eps}")
    return n


def slimit_splice(g: SftGraph, x: SftPoint, y: SftPoint, epsilon) -> SftPoint:
    """Point z with d(y, z) <= epsilon whose tail equals x's tail exactly.

    z copies the first n symbols of y (epsilon = 2^-n), runs through an
    admissible connecting word, and then coincides with x from coordinate K
    onward at the original phase, so the tracking error against x's orbit is
    eventually exactly zero.  Requires an irreducible graph; when the graph
    has period > 1 the initial vertices of x and y must lie in the same
    cyclic class, otherwise no phase-aligned connection exists.
    """
    if not is_irreducible(g):
        raise NotIrreducible("splice construction needs an irreducible graph")
    validate_point(g, x)
    validate_point(g, y)
    n = _epsilon_exponent(epsilon)
    if n == 0 or x == y:
        return x
    period = graph_period(g)
    classes = vertex_classes(g)
    if period > 1 and classes[x.symbol(0)] != classes[y.symbol(0)]:
        raise ClassMismatch(
            "x and y start in different cyclic classes; tails cannot align")
    start = y.symbol(n - 1)
    # exact-length frontier search: z = y[0..n) + interior + x[K..), where the
    # connector has length K - n + 1, keeping x's tail at its own coordinates
    reach = {start: None}
    layers = [dict(reach)]
    cap = n + graph_period(g) * ((g.vertex_count - 1) ** 2 + 2) + g.vertex_count + 2
    K = None
    for length in range(1, cap - n + 2):
        nxt: dict[int, int] = {}
        for v in layers[-1]:
            for w in g.successors(v):
                nxt.setdefault(w, v)
        layers.append(nxt)
        k_candidate = n + length - 1
        if x.symbol(k_candidate) in nxt:
            K = k_candidate
            break
    if K is None:  # pragma: no cover - irreducibility guarantees a connector
        raise AdmissibilityBug("no phase-aligned connector found under the cap")
    length = K - n + 1
    # lexicographically smallest path of that exact length
    path = _lex_path(g, start, x.symbol(K), length)
    interior = path[1:-1]
    tail = shift_by(x, K)
    z = SftPoint(tuple(y.expand(n)) + tuple(interior) + tail.head, tail.cycle)
    validate_point(g, z)
    if sft_distance(g, z, y) > Fraction(epsilon):
        raise AdmissibilityBug("splice failed the prefix-distance bound")
    if shift_by(z, n + len(interior) + 1) != shift_by(x, K + 1):
        raise AdmissibilityBug("splice tail does not coincide with the target tail")
    return z


def _lex_path(g: SftGraph, a: int, b: int, length: int) -> list[int]:
    from .sft import find_exact_path

    path = find_exact_path(g, a, b, length)
    if path is None:  # pragma: no cover - existence established by caller
        raise AdmissibilityBug("exact-length path vanished during reconstruction")
    return path


def _limit_shadowed_by(sys: FiniteSystem, states, epsilon, z) -> bool:
    """Does z epsilon-track the pseudo-orbit and merge with its true tail?

    The pseudo-orbit is extended beyond its last state by the true map; the
    pair (orbit of z, extended orbit) is eventually periodic, so the check
    is exact: all pairwise distances <= epsilon and distance zero on the
    repeating part.
    """
    u = z
    for s in states[:-1]:
        if sys.distance(u, s) > epsilon:
            return False
        u = sys.apply(u)
    pair = (u, states[-1])
    seen = set()
    while pair not in seen:
        seen.add(pair)
        if sys.distance(pair[0], pair[1]) > epsilon:
            return False
        pair = (sys.apply(pair[0]), sys.apply(pair[1]))
    # walk the repeating part: distances there must vanish
    start = pair
    while True:
        if pair[0] != pair[1]:
            return False
        pair = (sys.apply(pair[0]), sys.apply(pair[1]))
        if pair == start:
            return True


def estimate_slimit_modulus(sys: FiniteSystem, epsilon, length_cap: int,
                            budget: int = 10**7) -> Fraction:
    """Largest critical resolution at which every enumerated decaying
    pseudo-orbit is epsilon-tracked with eventually-exact merge.

    Enumerates pseudo-orbits of length <= length_cap whose errors vanish
    beyond the first half (their tails are true orbits, which is the general
    case on a finite system once errors drop below the minimum positive
    distance).
    """
    epsilon = Fraction(epsilon)
    spent = 0

    def orbits_ok(delta: Fraction) -> bool:
        nonlocal spent
        succ = {u: tuple(v for v in sorted(sys.points)
                         if sys.distance(sys.apply(u), v) <= delta)
                for u in sys.points}
        for k in range(2, length_cap + 1):
            free = k // 2  # steps with a free (<= delta) error
            stack = [[u] for u in sorted(sys.points)]
            while stack:
                seq = stack.pop()
                if len(seq) == k:
                    spent += 1
                    if spent > budget:
                        raise BudgetExceeded("pseudo-orbit enumeration budget", spent=spent)
                    if not any(_limit_shadowed_by(sys, seq, epsilon, z)
                               for z in sys.points):
                        return False
                    continue
                if len(seq) <= free:
                    for v in succ[seq[-1]]:
                        stack.append(seq + [v])
                else:
                    stack.append(seq + [sys.apply(seq[-1])])
        return True

    for delta in sorted(critical_deltas(sys), reverse=True):
        if orbits_ok(delta):
            return delta
    return Fraction(0)
