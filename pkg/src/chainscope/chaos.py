"""Separation/proximality statistics of orbit tuples and the chaos hierarchy.

For an orbit tuple, the separation window S(r) collects the times at which
all pairwise distances exceed r, and the proximity window T(eps) the times at
which all pairwise distances fall below eps.  The hierarchy levels classify a
chain component by which structural test passes:

  DC1      a distal tuple inside one cyclic class (strongest),
  IAPSTAR  every class n-dispersed (the min-over-classes dispersion > 0),
  LIYORKE  some class with at least n elements,
  NONE     none of the above.

Witness tuples corroborating the corresponding window conditions are built
on vertex shifts by block splicing: long blocks tracking a distal tuple,
separated by short admissible connectors, with a final merge onto one common
tail.  All-singleton classes mark the degenerate components (periodic-orbit
or odometer-like), which sit at level NONE for every n.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .cyclic import CyclicDecomposition, ProximalPartition
from .errors import BudgetExceeded, NotIrreducible, SpecError
from .families import FamilyVerdict, TimeSetWindow, WindowParams, window_family_member
from .sft import (SftGraph, SftPoint, find_connecting_path, find_exact_path, graph_period,
                  is_irreducible, sft_entropy, validate_point, vertex_classes)
from .systems import FiniteSystem

LEVELS = ("DC1", "IAPSTAR", "LIYORKE", "NONE")
LEVEL_S_FAMILY = {"DC1": "THICK", "IAPSTAR": "IAPSTAR", "LIYORKE": "INFINITE"}


# -- exact orbit distance profiles ------------------------------------------------

def _pair_profile_sft(x: SftPoint, y: SftPoint, horizon: int) -> list[Fraction]:
    """d(shift^i x, shift^i y) for i in [0, horizon), exact.

    Profiles of eventually periodic points are eventually periodic: beyond
    the longer head both sequences repeat with the lcm of the cycle lengths,
    so the profile is computed on one fundamental window and tiled.
    """
    M = max(len(x.head), len(y.head))
    Q = math.lcm(len(x.cycle), len(y.cycle))
    N = M + 2 * Q
    xs = x.expand(N)
    ys = y.expand(N)
    nxt_diff = [None] * (N + 1)
    for j in range(N - 1, -1, -1):
        nxt_diff[j] = j if xs[j] != ys[j] else nxt_diff[j + 1]
    base: list[Fraction] = []
    for i in range(min(horizon, M + Q)):
        j = nxt_diff[i]
        base.append(Fraction(0) if j is None else Fraction(1, 2 ** (j - i)))
    if horizon <= M + Q:
        return base[:horizon]
    out = base
    for i in range(M + Q, horizon):
        out.append(base[M + (i - M) % Q])
    return out


def _pair_profile_finite(sys: FiniteSystem, x: str, y: str, horizon: int) -> list[Fraction]:
    out = []
    u, v = x, y
    for _ in range(horizon):
        out.append(sys.distance(u, v))
        u, v = sys.apply(u), sys.apply(v)
    return out


def pair_profile(model, x, y, horizon: int) -> list[Fraction]:
    if isinstance(model, SftGraph):
        return _pair_profile_sft(x, y, horizon)
    return _pair_profile_finite(model, x, y, horizon)


@dataclass(frozen=True)
class TupleStats:
    """Separation and proximity windows of one orbit tuple."""

    n: int
    horizon: int
    s_sets: dict[Fraction, TimeSetWindow]
    t_sets: dict[Fraction, TimeSetWindow]


def tuple_stats(model, points, r_list, eps_list, horizon: int) -> TupleStats:
    """Windows S(r) (min pairwise distance > r, strict) and T(eps)
    (max pairwise distance < eps, strict) over [0, horizon)."""
    pts = tuple(points)
    if len(pts) < 2:
        raise SpecError("tuples need at least two coordinates")
    if horizon < 1:
        raise SpecError("horizon must be positive")
    profiles = [pair_profile(model, a, b, horizon)
                for a, b in combinations(pts, 2)]
    mins = [min(p[i] for p in profiles) for i in range(horizon)]
    maxs = [max(p[i] for p in profiles) for i in range(horizon)]
    s_sets = {Fraction(r): TimeSetWindow(horizon, tuple(int(m > Fraction(r)) for m in mins))
              for r in r_list}
    t_sets = {Fraction(e): TimeSetWindow(horizon, tuple(int(m < Fraction(e)) for m in maxs))
              for e in eps_list}
    return TupleStats(len(pts), horizon, s_sets, t_sets)


# -- distal tuple search -----------------------------------------------------------

def _orbit_min_separation(sys: FiniteSystem, pts: tuple[str, ...]) -> Fraction:
    """Exact inf over all times of the min pairwise distance of a joint orbit."""
    state = pts
    seen = set()
    best = None
    while state not in seen:
        seen.add(state)
        cur = min(sys.distance(a, b) for a, b in combinations(state, 2))
        best = cur if best is None else min(best, cur)
        if best == 0:
            return Fraction(0)
        state = tuple(sys.apply(u) for u in state)
    return best


def find_distal_tuple(model, D, n: int, delta_n, budget: int = 10**6):
    """Search for an n-tuple whose orbit stays pairwise separated beyond
    delta_n at every time.

    Finite systems: exhaustive over n-subsets of D (returns None only after
    complete enumeration, i.e. exact absence).  Vertex shifts: exact cycle
    search in the window product graph; D names a cyclic vertex class (or
    None for aperiodic graphs).  Raises BudgetExceeded when the enumeration
    cap is hit before a definite answer.
    """
    if n < 2:
        raise SpecError("distal tuples need n >= 2")
    delta_n = Fraction(delta_n)
    if isinstance(model, FiniteSystem):
        spent = 0
        for combo in combinations(sorted(D), n):
            spent += 1
            if spent > budget:
                raise BudgetExceeded("distal tuple enumeration budget", spent=spent)
            if _orbit_min_separation(model, combo) > delta_n:
                return combo
        return None
    if not isinstance(model, SftGraph):
        raise SpecError(f"unsupported model {type(model).__name__}")
    if delta_n >= 1:
        return None  # distances never exceed 1
    t = 0
    while Fraction(1, 2 ** (t + 1)) > delta_n:
        t += 1
    return _sft_distal_search(model, n, t, class_id=D, budget=budget)


def _admissible_words(g: SftGraph, length: int) -> list[tuple[int, ...]]:
    words = [(v,) for v in range(g.vertex_count)]
    for _ in range(length - 1):
        words = [w + (a,) for w in words for a in g.successors(w[-1])]
    return sorted(words)


def _sft_distal_search(g: SftGraph, n: int, t: int, class_id: int | None,
                       budget: int = 10**6):
    """Exact distal search at separation 2^(-t): find a cycle among n-tuples
    of pairwise distinct (t+1)-windows with synchronized initial classes.

    Any n points with all synchronized pairwise distances >= 2^(-t) walk this
    product graph forever, and an infinite walk in a finite graph yields a
    cycle; conversely a cycle spells out purely periodic witness points.  So
    a cycle exists iff a distal tuple exists, and absence is exact.  The
    cycle's classes rotate through all cyclic classes, so a witness can be
    reported in any requested class.
    """
    words = _admissible_words(g, t + 1)
    if len(words) ** n > budget:
        raise BudgetExceeded("window product graph exceeds budget",
                             spent=len(words) ** n)
    classes = vertex_classes(g)
    word_succ = {w: tuple(sorted(w[1:] + (a,) for a in g.successors(w[-1])))
                 for w in words}

    def valid(state) -> bool:
        if any(a == b for a, b in combinations(state, 2)):
            return False
        return len({classes[w[0]] for w in state}) == 1

    states = [s for s in product(words, repeat=n) if valid(s)]
    color = {s: 0 for s in states}  # 0 white, 1 gray, 2 black
    for root in states:
        if color[root]:
            continue
        stack = [(root, iter(tuple(s for s in product(*(word_succ[w] for w in root))
                                   if s in color)))]
        color[root] = 1
        path = [root]
        while stack:
            state, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 1:
                    cycle = path[path.index(nxt):]
                    return _points_from_cycle(g, cycle, n, t, class_id)
                if color[nxt] == 0:
                    color[nxt] = 1
                    path.append(nxt)
                    stack.append((nxt, iter(tuple(
                        s for s in product(*(word_succ[w] for w in nxt)) if s in color))))
                    advanced = True
                    break
            if not advanced:
                color[state] = 2
                path.pop()
                stack.pop()
    return None


def _points_from_cycle(g: SftGraph, cycle, n: int, t: int,
                       class_id: int | None) -> tuple[SftPoint, ...]:
    classes = vertex_classes(g)
    if class_id is not None:
        # a product cycle advances the class by one per step and closes, so
        # its length is a multiple of the period and every class occurs
        shift = next(k for k, state in enumerate(cycle)
                     if classes[state[0][0]] == class_id)
        cycle = cycle[shift:] + cycle[:shift]
    pts = []
    for j in range(n):
        stream = tuple(state[j][0] for state in cycle)
        pts.append(SftPoint((), stream))
    for p in pts:
        validate_point(g, p)
    period = len(cycle)
    floor = Fraction(1, 2**t)
    prof_min = [min(_pair_profile_sft(a, b, period)[i]
                    for a, b in combinations(pts, 2)) for i in range(period)]
    if min(prof_min) < floor:  # pragma: no cover - construction invariant
        raise AssertionError("distal cycle lost its separation floor")
    return tuple(sorted(pts, key=lambda p: (p.head, p.cycle)))


# -- dispersion ---------------------------------------------------------------------

def compute_delta_n(decomp, n: int, budget: int = 10**6) -> Fraction:
    """Min over classes of the best min-pairwise spread of n class elements.

    Classes with fewer than n elements contribute 0 (the spread of an empty
    family), so the value is positive exactly when every class holds n
    genuinely separated points.
    """
    if n < 2:
        raise SpecError("dispersion needs n >= 2")
    if isinstance(decomp, CyclicDecomposition):
        sys = decomp.system
        classes = decomp.classes()
    elif isinstance(decomp, ProximalPartition):
        if not decomp.per_delta:
            raise SpecError("proximal partition carries no decompositions")
        sys = decomp.per_delta[0].system
        classes = decomp.classes
    else:
        raise SpecError(f"unsupported decomposition {type(decomp).__name__}")
    worst: Fraction | None = None
    spent = 0
    for cls in classes:
        if len(cls) < n:
            return Fraction(0)
        best = Fraction(0)
        for combo in combinations(sorted(cls), n):
            spent += 1
            if spent > budget:
                raise BudgetExceeded("dispersion enumeration budget", spent=spent)
            cur = min(sys.distance(a, b) for a, b in combinations(combo, 2))
            best = max(best, cur)
        worst = best if worst is None else min(worst, best)
    return worst if worst is not None else Fraction(0)


def sft_delta_n(g: SftGraph, n: int) -> tuple[Fraction, bool]:
    """(dispersion, some-class-has-n-points) for a vertex shift.

    Within one cyclic class, n points can be pairwise separated by 2^(-j)
    exactly when n distinct admissible (j+1)-prefixes start in the class, so
    the per-class term is 2^(-j*) for the smallest such j*, and 0 when the
    class never branches into n prefixes (fewer than n points).
    """
    if n < 2:
        raise SpecError("dispersion needs n >= 2")
    period = graph_period(g)
    classes = vertex_classes(g)
    worst: Fraction | None = None
    any_card = False
    cap = g.vertex_count * (n + 1) + 2
    for c in range(period):
        words = {(v,) for v in range(g.vertex_count) if classes[v] == c}
        ell = 1
        while len(words) < n and ell <= cap:
            words = {w + (a,) for w in words for a in g.successors(w[-1])}
            ell += 1
        if len(words) >= n:
            any_card = True
            term = Fraction(1, 2 ** (ell - 1))
        else:
            term = Fraction(0)
        worst = term if worst is None else min(worst, term)
    return (worst if worst is not None else Fraction(0)), any_card


# -- windowed corroboration ----------------------------------------------------------

def dyadic_ladder(depth: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1, 2**k) for k in range(1, depth + 1))


@dataclass(frozen=True)
class Condition3Verdict:
    level: str
    delta_n: Fraction
    s_verdict: FamilyVerdict
    t_verdicts: tuple[tuple[Fraction, FamilyVerdict], ...]
    ok: bool


def check_condition3(model, points, delta_n, level: str, horizon: int,
                     eps_depth: int = 6,
                     params: WindowParams = WindowParams()) -> Condition3Verdict:
    """Windowed test: S(delta_n) in the level's family and T(eps) infinite
    for every eps on the dyadic ladder."""
    if level not in LEVEL_S_FAMILY:
        raise SpecError(f"unknown level {level!r}")
    delta_n = Fraction(delta_n)
    ladder = dyadic_ladder(eps_depth)
    stats = tuple_stats(model, points, [delta_n], ladder, horizon)
    s_v = window_family_member(stats.s_sets[delta_n], LEVEL_S_FAMILY[level], params)
    t_vs = tuple((eps, window_family_member(stats.t_sets[eps], "INFINITE", params))
                 for eps in ladder)
    ok = s_v.member and all(v.member for _, v in t_vs)
    return Condition3Verdict(level, delta_n, s_v, t_vs, ok)


# -- witness construction -------------------------------------------------------------

def _lex_point_from(g: SftGraph, v: int) -> SftPoint:
    """Smallest eventually periodic point starting at v (greedy min successor)."""
    seen = {v: 0}
    seq = [v]
    while True:
        nxt = min(g.successors(seq[-1]))
        if nxt in seen:
            k = seen[nxt]
            return SftPoint(tuple(seq[:k]), tuple(seq[k:]))
        seen[nxt] = len(seq)
        seq.append(nxt)


def _common_connector(g: SftGraph, currents: list[int], targets: list[int]) -> list[list[int]]:
    """Equal-length connecting paths current_j -> target_j (interiors returned).

    All coordinates sit at one synchronized position, so the class offsets
    agree and a common exact length exists; start from the longest shortest
    path and grow by the graph period until every coordinate connects.
    """
    period = graph_period(g)
    classes = vertex_classes(g)
    offsets = {(classes[t] - classes[c]) % period
               for c, t in zip(currents, targets)}
    if len(offsets) > 1:
        raise SpecError("connector targets sit at incompatible phases")
    shortest = []
    for c, t in zip(currents, targets):
        p = find_connecting_path(g, c, t, min_length=1)
        shortest.append(len(p) - 1)
    length = max(shortest)
    cap = length + graph_period(g) * ((g.vertex_count - 1) ** 2 + 2) + 2
    while length <= cap:
        paths = [find_exact_path(g, c, t, length) for c, t in zip(currents, targets)]
        if all(p is not None for p in paths):
            return [p[1:-1] for p in paths]
        length += period if period > 1 else 1
    raise SpecError("no common-length connector found")  # pragma: no cover


def _witness_schedule(level: str, horizon: int) -> list[tuple[str, int]]:
    reserve = max(48, horizon // 32)
    ops: list[tuple[str, int]] = []
    pos = 0
    if level in ("DC1", "IAPSTAR"):
        size, k = 64, 0
        while pos + size <= horizon - reserve:
            ops.append(("distal", size))
            pos += size
            k += 1
            if level == "IAPSTAR" and k == 2:
                ops.append(("common", 16))
                pos += 16
            size *= 2
    elif level == "LIYORKE":
        while pos + 88 <= horizon - reserve:
            ops.append(("distal", 64))
            ops.append(("common", 24))
            pos += 88
    else:
        raise SpecError(f"unknown level {level!r}")
    if not ops:
        raise SpecError(f"horizon {horizon} too small for a {level} schedule")
    # doubling may stop well short of the merge reserve: top up with one
    # final separation block so the observation tail stays separated
    remaining = (horizon - reserve) - pos
    if remaining >= 32:
        ops.append(("distal", remaining))
    return ops


@dataclass(frozen=True)
class WitnessConstruction:
    points: tuple[SftPoint, ...]
    level: str
    n: int
    horizon: int
    delta_n: Fraction
    distal_tuple: tuple[SftPoint, ...]
    merge_position: int


def construct_witness(g: SftGraph, n: int, level: str, horizon: int, *,
                      class_id: int | None = None,
                      prefixes: tuple[tuple[int, ...], ...] | None = None,
                      t_cap: int = 8, budget: int = 10**6) -> WitnessConstruction:
    """Build n eventually periodic points whose separation window matches the
    requested level over [0, horizon) and whose tails merge exactly.

    Block layout per coordinate: optional prefix, then distal blocks playing
    the coordinates of a genuinely distal tuple (re-entered at phase zero),
    short equal-length connectors, optional common blocks, and a final merge
    onto one shared tail.  Admissibility is enforced by connector search;
    every point is validated before returning.
    """
    if n < 2:
        raise SpecError("witness tuples need n >= 2")
    if not is_irreducible(g):
        raise NotIrreducible("witness construction needs an irreducible graph")
    if level == "NONE":
        raise SpecError("no witness exists at level NONE")
    period = graph_period(g)
    classes = vertex_classes(g)
    if class_id is None:
        class_id = 0 if period > 1 else None
    distal = None
    for t in range(t_cap + 1):
        distal = _sft_distal_search(g, n, t, class_id, budget=budget)
        if distal is not None:
            delta_n = Fraction(1, 2 ** (t + 1))
            break
    if distal is None:
        raise BudgetExceeded(f"no distal {n}-tuple found up to window {t_cap + 1}")
    if prefixes is not None:
        if len(prefixes) != n or len({len(p) for p in prefixes}) != 1:
            raise SpecError("prefixes must give one equal-length word per coordinate")
        if period > 1 and len({classes[p[0]] % period for p in prefixes if p}) > 1:
            raise SpecError("prefix words must start in one cyclic class")
    symbols: list[list[int]] = [[] for _ in range(n)]

    def emit_connectors(targets: list[int]) -> None:
        currents = [symbols[j][-1] for j in range(n)]
        for j, interior in enumerate(_common_connector(g, currents, targets)):
            symbols[j].extend(interior)

    if prefixes is not None and prefixes[0]:
        for j in range(n):
            for a, b in zip(prefixes[j], prefixes[j][1:]):
                if not g.is_edge(a, b):
                    raise SpecError(f"prefix word {prefixes[j]} is not admissible")
            symbols[j].extend(prefixes[j])
    merge_vertex = min(range(g.vertex_count))
    tail_point = _lex_point_from(g, merge_vertex)
    for op, size in _witness_schedule(level, horizon):
        if op == "distal":
            targets = [distal[j].symbol(0) for j in range(n)]
            if symbols[0]:
                emit_connectors(targets)
            for j in range(n):
                symbols[j].extend(distal[j].expand(size))
        else:
            emit_connectors([merge_vertex] * n)
            segment = tail_point.expand(size)
            for j in range(n):
                symbols[j].extend(segment)
    emit_connectors([merge_vertex] * n)
    merge_position = len(symbols[0])
    points = []
    for j in range(n):
        p = SftPoint(tuple(symbols[j]) + tail_point.head, tail_point.cycle)
        validate_point(g, p)
        points.append(p)
    return WitnessConstruction(tuple(points), level, n, horizon, delta_n,
                               distal, merge_position)


def perturbed_witness_trials(g: SftGraph, n: int, level: str, horizon: int,
                             trials: int, seed: int,
                             eps_depth: int = 6) -> tuple[int, int]:
    """Re-run the witness construction from random perturbed prefixes and
    count how many constructions still pass their own windowed test."""
    rng = random.Random(seed)
    period = graph_period(g)
    classes = vertex_classes(g)
    successes = 0
    for _ in range(trials):
        length = rng.randint(1, 8)
        if period > 1:
            starts = [v for v in range(g.vertex_count) if classes[v] == 0]
        else:
            starts = list(range(g.vertex_count))
        prefixes = []
        for _ in range(n):
            word = [rng.choice(starts)]
            while len(word) < length:
                word.append(rng.choice(g.successors(word[-1])))
            prefixes.append(tuple(word))
        built = construct_witness(g, n, level, horizon, prefixes=tuple(prefixes))
        verdict = check_condition3(g, built.points, built.delta_n, level,
                                   horizon, eps_depth=eps_depth)
        if verdict.ok:
            successes += 1
    return successes, trials


# -- component classification ----------------------------------------------------------

@dataclass(frozen=True)
class TierReport:
    n: int
    tier: str
    distal_witness: tuple | None
    distal_delta: Fraction | None
    upgrade_audit_ok: bool | None
    delta_n_value: Fraction
    class_cardinality_ok: bool
    condition3: Condition3Verdict | None = None
    condition3_agrees: bool | None = None
    budget_exceeded: bool = False


@dataclass(frozen=True)
class ComponentChaosReport:
    component_id: str
    n_range: tuple[int, ...]
    per_n: tuple[TierReport, ...]
    level: str
    all_classes_singleton: bool
    entropy: float | None = None
    audit_flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class ClassifyParams:
    n_max: int = 3
    horizon: int = 512
    eps_depth: int = 6
    with_witness: bool = False
    t_cap: int = 8
    budget: int = 10**6
    window: WindowParams = field(default_factory=WindowParams)


def _tier_of(distal_found: bool, delta_n_value: Fraction, card_ok: bool) -> str:
    if distal_found:
        return "DC1"
    if delta_n_value > 0:
        return "IAPSTAR"
    if card_ok:
        return "LIYORKE"
    return "NONE"


def classify_finite_component(decomp: CyclicDecomposition, n_max: int,
                              params: ClassifyParams = ClassifyParams()) -> ComponentChaosReport:
    """Classify one chain component of a finite system at its resolution."""
    sys = decomp.system
    flags: list[str] = []
    reports: list[TierReport] = []
    classes = decomp.classes()
    for n in range(2, n_max + 1):
        budget_hit = False
        per_class_sep: list[Fraction] = []
        witness = None
        witness_sep = Fraction(0)
        spent = 0
        try:
            for cls in classes:
                best = Fraction(0)
                best_combo = None
                for combo in combinations(cls, n):
                    spent += 1
                    if spent > params.budget:
                        raise BudgetExceeded("distal tuple enumeration budget",
                                             spent=spent)
                    sep = _orbit_min_separation(sys, combo)
                    if sep > best:
                        best, best_combo = sep, combo
                per_class_sep.append(best)
                if best > 0 and witness is None:
                    witness, witness_sep = best_combo, best
        except BudgetExceeded:
            budget_hit = True
        found = witness is not None
        upgrade_ok = None
        if found and not budget_hit:
            upgrade_ok = all(s > 0 for s in per_class_sep)
            if not upgrade_ok:
                flags.append(f"n={n}: distal witness in one class but not in every class")
        try:
            delta_val = compute_delta_n(decomp, n, budget=params.budget)
        except BudgetExceeded:
            budget_hit = True
            delta_val = Fraction(0)  # partial report: see the budget marker
        card_ok = any(len(c) >= n for c in classes)
        tier = _tier_of(found, delta_val, card_ok)
        reports.append(TierReport(
            n, tier, witness, witness_sep / 2 if found else None,
            upgrade_ok, delta_val, card_ok, budget_exceeded=budget_hit))
    singleton = all(len(c) == 1 for c in classes)
    if singleton and any(r.tier != "NONE" for r in reports):
        flags.append("all-singleton classes must sit at level NONE")
    level = reports[0].tier if reports else "NONE"
    comp_id = ",".join(sorted(decomp.component))
    return ComponentChaosReport(comp_id, tuple(range(2, n_max + 1)),
                                tuple(reports), level, singleton, None, tuple(flags))


def classify_sft(g: SftGraph, n_max: int,
                 params: ClassifyParams = ClassifyParams()) -> ComponentChaosReport:
    """Classify the whole vertex shift of an irreducible graph.

    The cyclic classes are the vertex classes of the graph; a distal search
    per class is exact, so the one-class-implies-every-class upgrade is
    audited rather than assumed.
    """
    if not is_irreducible(g):
        raise NotIrreducible("classification needs an irreducible graph")
    period = graph_period(g)
    class_ids = list(range(period)) if period > 1 else [None]
    flags: list[str] = []
    reports: list[TierReport] = []
    for n in range(2, n_max + 1):
        witness = None
        delta_n = None
        upgrade_ok = None
        budget_hit = False
        try:
            for t in range(params.t_cap + 1):
                per_class = [_sft_distal_search(g, n, t, cid, budget=params.budget)
                             for cid in class_ids]
                found_any = any(w is not None for w in per_class)
                if found_any:
                    upgrade_ok = all(w is not None for w in per_class)
                    witness = next(w for w in per_class if w is not None)
                    delta_n = Fraction(1, 2 ** (t + 1))
                    if not upgrade_ok:
                        flags.append(
                            f"n={n}: distal witness in one class but not in every class")
                    break
        except BudgetExceeded:
            budget_hit = True
        delta_val, card_ok = sft_delta_n(g, n)
        tier = _tier_of(witness is not None, delta_val, card_ok)
        cond3 = None
        agrees = None
        if params.with_witness and tier == "DC1":
            if params.horizon >= 160:
                built = construct_witness(g, n, "DC1", params.horizon,
                                          t_cap=params.t_cap, budget=params.budget)
                cond3 = check_condition3(g, built.points, built.delta_n, "DC1",
                                         params.horizon, eps_depth=params.eps_depth,
                                         params=params.window)
                agrees = cond3.ok
                if not agrees:
                    flags.append(f"n={n}: structural tier DC1 but windowed test failed")
            else:
                flags.append(f"n={n}: horizon too small for witness corroboration")
        reports.append(TierReport(n, tier, witness, delta_n, upgrade_ok,
                                  delta_val, card_ok, cond3, agrees, budget_hit))
    singleton = all(len(g.successors(v)) == 1 for v in range(g.vertex_count))
    level = reports[0].tier if reports else "NONE"
    return ComponentChaosReport("shift", tuple(range(2, n_max + 1)), tuple(reports),
                                level, singleton, sft_entropy(g, 1e-9), tuple(flags))


def classify_component(model, C=None, n_max: int = 3,
                       params: ClassifyParams = ClassifyParams(), *,
                       delta=None) -> ComponentChaosReport:
    """Classify one chain component of a finite system, or a whole vertex
    shift, on the chaos hierarchy.

    For finite systems, C is the component's node set and ``delta`` the
    analysis resolution (default: the true-orbit digraph at resolution 0).
    For vertex shifts, the irreducible graph is the component.
    """
    if isinstance(model, SftGraph):
        return classify_sft(model, n_max, params)
    if not isinstance(model, FiniteSystem):
        raise SpecError(f"unsupported model {type(model).__name__}")
    if C is None:
        raise SpecError("finite classification needs a component node set")
    from .chains import build_chain_digraph
    from .cyclic import cyclic_classes

    dg = build_chain_digraph(model, Fraction(delta) if delta is not None else Fraction(0))
    dec = cyclic_classes(dg, frozenset(C), p2="record")
    return classify_finite_component(dec, n_max, params)
