"""Forward-orbit limit sets and basin partitions at a fixed resolution.

Every point's forward orbit in a finite system enters a cycle; that cycle
is chain transitive, hence contained in a single chain component.  The
component basin of x is the component holding its limit cycle; the class
basin refines this by the phase at which the orbit tracks the moving cyclic
classes.  The phase is computed at the orbit's settle time (first index from
which the orbit stays inside the component) and is settle-time independent,
because each in-component step advances the class by one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .chains import ChainDigraph, chain_components
from .cyclic import CyclicDecomposition, cyclic_classes
from .errors import ModelInconsistency, OmegaNotInComponent
from .systems import FiniteSystem


def _orbit_prefix(sys: FiniteSystem, x: str) -> tuple[list[str], int]:
    """Orbit until the first repeated point; returns (prefix, cycle_start)."""
    seen: dict[str, int] = {}
    orbit: list[str] = []
    u = x
    while u not in seen:
        seen[u] = len(orbit)
        orbit.append(u)
        u = sys.apply(u)
    return orbit, seen[u]


def omega_limit(sys: FiniteSystem, x: str) -> frozenset[str]:
    """The cycle the forward orbit of x eventually enters."""
    orbit, start = _orbit_prefix(sys, x)
    return frozenset(orbit[start:])


@dataclass(frozen=True)
class BasinAssignment:
    """Component and class basin membership for every node at one resolution."""

    digraph: ChainDigraph
    delta: Fraction
    components: tuple[frozenset[str], ...]
    decompositions: tuple[CyclicDecomposition, ...]
    component_of: Mapping[str, int]
    class_of_basin: Mapping[str, tuple[int, int]]
    omega: Mapping[str, frozenset[str]]
    settle_time: Mapping[str, int]


def assign_basins(sys: FiniteSystem, dg: ChainDigraph) -> BasinAssignment:
    """Assign every node to its component basin and class basin.

    The class phase of x is (class(orbit[T]) - T) mod m, with T the settle
    time; consistency of the value at T and T+1 is asserted and any
    discrepancy reported as a model inconsistency.
    """
    comps = chain_components(dg)
    decomps = tuple(cyclic_classes(dg, c, compute_transient=False, p2="record")
                    for c in comps)
    comp_index = {c: i for i, c in enumerate(comps)}
    component_of: dict[str, int] = {}
    class_of_basin: dict[str, tuple[int, int]] = {}
    omega: dict[str, frozenset[str]] = {}
    settle: dict[str, int] = {}
    for x in sys.points:
        orbit, cyc_start = _orbit_prefix(sys, x)
        limit = frozenset(orbit[cyc_start:])
        omega[x] = limit
        target = None
        for comp in comps:
            if limit <= comp:
                target = comp
                break
        if target is None:
            raise OmegaNotInComponent(f"omega set of {x!r} is split across components")
        ci = comp_index[target]
        component_of[x] = ci
        # settle time: last exit from the component, scanned backwards from
        # the cycle (the cycle itself always lies inside)
        T = cyc_start
        while T > 0 and orbit[T - 1] in target:
            T -= 1
        settle[x] = T
        dec = decomps[ci]
        m = dec.period
        phase = (dec.class_of[orbit[T]] - T) % m
        nxt = orbit[T + 1] if T + 1 < len(orbit) else sys.apply(orbit[-1])
        if nxt in target:
            phase2 = (dec.class_of[nxt] - (T + 1)) % m
            if phase2 != phase:
                raise ModelInconsistency("class phase law", (x, orbit[T], nxt))
        class_of_basin[x] = (ci, phase)
    return BasinAssignment(dg, dg.delta, comps, decomps, component_of,
                           class_of_basin, omega, settle)


@dataclass(frozen=True)
class PartitionReport:
    ok: bool
    violations: tuple[str, ...]


def verify_partition_laws(ba: BasinAssignment, phase_horizon: int = 0) -> PartitionReport:
    """Check the basin partition laws directly.

    (a) component basins partition the nodes; (b) class basins partition each
    component basin; (c) phase law: beyond the settle time, the orbit's class
    advances by one per step from the assigned phase.
    """
    sys = ba.digraph.system
    violations: list[str] = []
    assigned = set(ba.component_of)
    if assigned != set(sys.points):
        violations.append(f"(a) unassigned nodes: {sorted(set(sys.points) - assigned)}")
    for x, ci in ba.component_of.items():
        cj, phase = ba.class_of_basin[x]
        if ci != cj:
            violations.append(f"(b) {x!r} has component {ci} but class basin in {cj}")
        dec = ba.decompositions[ci]
        if not 0 <= phase < dec.period:
            violations.append(f"(b) {x!r} phase {phase} outside 0..{dec.period - 1}")
    for x in sys.points:
        ci, phase = ba.class_of_basin[x]
        comp = ba.components[ci]
        dec = ba.decompositions[ci]
        T = ba.settle_time[x]
        horizon = phase_horizon or (T + len(comp) + dec.period + 2)
        u = x
        for _ in range(T):
            u = sys.apply(u)
        for i in range(T, horizon):
            if u not in comp:
                violations.append(f"(c) orbit of {x!r} leaves its component at step {i}")
                break
            if dec.class_of[u] != (phase + i) % dec.period:
                violations.append(f"(c) phase law fails for {x!r} at step {i}")
                break
            u = sys.apply(u)
    return PartitionReport(not violations, tuple(violations))
