from __future__ import annotations

import random
from fractions import Fraction

import pytest

from chainscope import SftGraph, SftPoint, finite_system, load_corpus
from chainscope.sft import shift_by


@pytest.fixture
def sys3():
    return load_corpus("sys3")


@pytest.fixture
def sysns():
    return load_corpus("sysns")


@pytest.fixture
def sys2id():
    return load_corpus("sys2id")


@pytest.fixture
def full2():
    return load_corpus("full2")


@pytest.fixture
def goldenmean():
    return load_corpus("goldenmean")


@pytest.fixture
def rotation4():
    return load_corpus("rotation4")


def random_system(rng: random.Random, max_points: int = 12, min_points: int = 2):
    """Random finite system: random map, random rational distances repaired
    into a metric by shortest-path closure."""
    k = rng.randint(min_points, max_points)
    pts = [f"p{i}" for i in range(k)]
    mapping = {u: rng.choice(pts) for u in pts}
    d = {}
    for i in range(k):
        for j in range(k):
            if i == j:
                d[(pts[i], pts[j])] = Fraction(0)
            elif i < j:
                val = Fraction(rng.randint(1, 16), rng.choice((1, 2, 3, 4)))
                d[(pts[i], pts[j])] = val
                d[(pts[j], pts[i])] = val
    # shortest-path repair keeps symmetry and positivity, forces the triangle
    for m in pts:
        for u in pts:
            for v in pts:
                via = d[(u, m)] + d[(m, v)]
                if via < d[(u, v)]:
                    d[(u, v)] = via
    metric = {(u, v): d[(u, v)] for i, u in enumerate(pts) for v in pts[i + 1:]}
    return finite_system(pts, mapping, metric)


def random_digraph(rng: random.Random, max_nodes: int = 12):
    """Random digraph with every node given at least one successor."""
    k = rng.randint(2, max_nodes)
    nodes = [f"v{i}" for i in range(k)]
    succ = {}
    for u in nodes:
        out = {v for v in nodes if rng.random() < 0.25}
        out.add(rng.choice(nodes))
        succ[u] = tuple(sorted(out))
    return nodes, succ


def random_point(g: SftGraph, rng: random.Random, head_max: int = 3,
                 cycle_max: int = 5) -> SftPoint:
    """Random admissible eventually periodic point."""
    walk = [rng.randrange(g.vertex_count)]
    for _ in range(rng.randint(0, head_max) + rng.randint(1, cycle_max)):
        walk.append(rng.choice(g.successors(walk[-1])))
    return _close_walk(g, walk)


def _close_walk(g: SftGraph, walk: list[int]) -> SftPoint:
    """Extend a walk by min successors until a vertex repeats, then fold the
    repeat into head + cycle."""
    seen = {}
    i = 0
    while True:
        while i < len(walk):
            if walk[i] in seen:
                return SftPoint(tuple(walk[:seen[walk[i]]]),
                                tuple(walk[seen[walk[i]]:i]))
            seen[walk[i]] = i
            i += 1
        walk.append(min(g.successors(walk[-1])))


def random_pseudo_orbit(g: SftGraph, rng: random.Random, depth: int,
                        length: int) -> list[SftPoint]:
    """Pseudo-orbit whose every step agrees with the shifted predecessor on
    exactly >= depth symbols (step errors <= 2^-depth)."""
    states = [random_point(g, rng)]
    while len(states) < length:
        prev = shift_by(states[-1], 1)
        walk = prev.expand(depth)
        for _ in range(rng.randint(1, 3)):
            walk.append(rng.choice(g.successors(walk[-1])))
        states.append(_close_walk(g, walk))
    return states
