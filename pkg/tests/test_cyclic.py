import math
import random
from fractions import Fraction

import pytest

from chainscope import (build_chain_digraph, chain_components, chain_proximal_at,
                        component_period, critical_deltas, cyclic_classes,
                        digraph_from_edges, finite_system, proximal_partition,
                        transient_index)
from chainscope.errors import (CapExceeded, EmptyLadder, ModelInconsistency,
                               NotAComponent, NotInComponent)

from conftest import random_digraph, random_system
from oracles import brute_proximal, cycle_gcd, path_length_sets


def test_period_sys3(sys3):
    dg_half = build_chain_digraph(sys3, Fraction(1, 2))
    comp = chain_components(dg_half)[0]
    assert component_period(dg_half, comp) == 3
    dg_one = build_chain_digraph(sys3, 1)
    assert component_period(dg_one, chain_components(dg_one)[0]) == 1


def test_period_two_and_three_cycles_sharing_a_node(sys3):
    edges = [("a", "b"), ("b", "a"), ("a", "c"), ("c", "d"), ("d", "a")]
    sys = finite_system(
        ["a", "b", "c", "d"],
        {"a": "b", "b": "a", "c": "d", "d": "a"},
        {(u, v): 1 for u in "abcd" for v in "abcd" if u < v},
    )
    dg = digraph_from_edges(sys, Fraction(1, 2), edges)
    comp = chain_components(dg)[0]
    assert comp == frozenset("abcd")
    assert component_period(dg, comp) == 1
    assert cycle_gcd(sys.points, dg.succ) == math.gcd(2, 3)


def test_not_a_component_rejected(sys3):
    dg = build_chain_digraph(sys3, Fraction(1, 2))
    with pytest.raises(NotAComponent):
        component_period(dg, {"a", "b"})


def test_cyclic_classes_sys3(sys3):
    dg = build_chain_digraph(sys3, Fraction(1, 2))
    comp = chain_components(dg)[0]
    dec = cyclic_classes(dg, comp)
    assert dec.period == 3
    assert dec.classes() == (("a",), ("b",), ("c",))
    for u in comp:
        assert dec.class_of[sys3.apply(u)] == (dec.class_of[u] + 1) % 3
    dg1 = build_chain_digraph(sys3, 1)
    dec1 = cyclic_classes(dg1, chain_components(dg1)[0])
    assert dec1.period == 1
    assert dec1.classes() == (("a", "b", "c"),)


def test_cyclic_classes_singleton(sys2id):
    dg = build_chain_digraph(sys2id, Fraction(1, 2))
    dec = cyclic_classes(dg, frozenset({"p"}))
    assert dec.period == 1 and dec.classes() == (("p",),)


def test_class_merge_violation_on_injected_digraph(sys3):
    # injected period-2 digraph a<->b<->c: b and c sit at opposite classes
    # while the metric keeps them within delta
    sys = finite_system(
        ["a", "b", "c"],
        {"a": "b", "b": "a", "c": "b"},
        {("a", "b"): 2, ("a", "c"): 2, ("b", "c"): 1},
    )
    edges = [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b")]
    dg = digraph_from_edges(sys, 1, edges)
    comp = chain_components(dg)[0]
    assert comp == frozenset("abc")
    assert component_period(dg, comp) == 2
    with pytest.raises(ModelInconsistency):
        cyclic_classes(dg, comp)
    dec = cyclic_classes(dg, comp, p2="record")
    assert dec.p2_violations == (("b", "c"),)


def test_class_merge_can_fail_even_for_metric_built_digraphs():
    # six-point system whose delta-digraph has one period-2 component with
    # u, v at distance exactly delta but opposite classes
    delta = Fraction(1)
    big = Fraction(2)
    pts = ["a", "a2", "b", "b2", "u", "v"]
    close = {("a2", "u"), ("b2", "v"), ("u", "v"), ("a2", "b")}
    metric = {}
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            metric[(x, y)] = delta if ((x, y) in close or (y, x) in close) else big
    sys = finite_system(
        pts,
        {"u": "a", "a": "a2", "a2": "a", "v": "b", "b": "b2", "b2": "b"},
        metric,
    )
    dg = build_chain_digraph(sys, delta)
    comps = chain_components(dg)
    assert len(comps) == 1 and comps[0] == frozenset(pts)
    assert component_period(dg, comps[0]) == 2
    with pytest.raises(ModelInconsistency):
        cyclic_classes(dg, comps[0])
    dec = cyclic_classes(dg, comps[0], p2="record")
    assert ("u", "v") in dec.p2_violations


def test_transient_index_examples(sys3):
    dg = build_chain_digraph(sys3, Fraction(1, 2))
    comp = chain_components(dg)[0]
    assert transient_index(dg, comp) == 1
    dg1 = build_chain_digraph(sys3, 1)
    assert transient_index(dg1, chain_components(dg1)[0]) == 1


def test_transient_index_matches_brute_force_lengths():
    # one SCC with cycles of lengths 2 and 3 sharing node a: period 1,
    # saturation at the point where every pair realizes every length
    sys = finite_system(
        ["a", "b", "c", "d"],
        {"a": "b", "b": "a", "c": "d", "d": "a"},
        {(u, v): 1 for u in "abcd" for v in "abcd" if u < v},
    )
    edges = [("a", "b"), ("b", "a"), ("a", "c"), ("c", "d"), ("d", "a")]
    dg = digraph_from_edges(sys, Fraction(1, 2), edges)
    comp = chain_components(dg)[0]
    cap = (len(comp) - 1) ** 2 + 2
    n_star = transient_index(dg, comp)
    lengths = path_length_sets(sys.points, dg.succ, comp, cap)
    brute = next(
        n for n in range(1, cap + 1)
        if all(all(m in lengths[u][v] for m in range(n, cap + 1))
               for u in comp for v in comp))
    assert n_star == brute
    # minimality: some pair misses length n_star - 1
    if n_star > 1:
        assert any(n_star - 1 not in lengths[u][v] for u in comp for v in comp)


def test_transient_index_cap_exceeded(sys3):
    dg = build_chain_digraph(sys3, Fraction(1, 2))
    comp = chain_components(dg)[0]
    with pytest.raises(CapExceeded):
        transient_index(dg, comp, cap=0)


def test_saturation_persists_to_cap_on_corpus(sys3, sysns, rotation4):
    # every same-class pair realizes every multiple-length up to the default
    # cap once the transient index is reached
    for sys in (sys3, sysns, rotation4):
        for delta in critical_deltas(sys):
            dg = build_chain_digraph(sys, delta)
            for comp in chain_components(dg):
                dec = cyclic_classes(dg, comp, p2="record")
                n_star = dec.transient_index
                assert n_star is not None
                cap = (len(comp) - 1) ** 2 + 2
                lengths = path_length_sets(sys.points, dg.succ, comp,
                                           dec.period * cap)
                for u in comp:
                    for v in comp:
                        if dec.class_of[u] != dec.class_of[v]:
                            continue
                        for n in range(n_star, cap + 1):
                            assert dec.period * n in lengths[u][v]


def test_chain_proximal_examples(sys3):
    dg = build_chain_digraph(sys3, Fraction(1, 2))
    comp = chain_components(dg)[0]
    assert not chain_proximal_at(dg, comp, "a", "b")
    assert chain_proximal_at(dg, comp, "a", "a")
    dg1 = build_chain_digraph(sys3, 1)
    comp1 = chain_components(dg1)[0]
    assert chain_proximal_at(dg1, comp1, "a", "b")
    with pytest.raises(NotInComponent):
        chain_proximal_at(dg, comp, "a", "zz")


def test_proximal_agrees_with_class_and_brute_force():
    rng = random.Random(7)
    for _ in range(25):
        sys = random_system(rng, max_points=8)
        for delta in critical_deltas(sys):
            dg = build_chain_digraph(sys, delta)
            for comp in chain_components(dg):
                dec = cyclic_classes(dg, comp, compute_transient=False, p2="record")
                for x in sorted(comp):
                    for y in sorted(comp):
                        got = chain_proximal_at(dg, comp, x, y)
                        assert got == brute_proximal(sys.points, dg.succ, comp, x, y)
                        assert got == (dec.class_of[x] == dec.class_of[y])


def test_period_matches_cycle_gcd_on_random_digraphs(sys3):
    rng = random.Random(8)
    for _ in range(40):
        nodes, succ = random_digraph(rng, max_nodes=9)
        metric = {(u, v): 1 for i, u in enumerate(sorted(nodes)) for v in sorted(nodes)[i + 1:]}
        mapping = {u: succ[u][0] for u in nodes}
        sys = finite_system(nodes, mapping, metric)
        dg = digraph_from_edges(sys, Fraction(1, 2), [(u, v) for u in nodes for v in succ[u]])
        for comp in chain_components(dg):
            sub_succ = {u: tuple(v for v in dg.succ[u] if v in comp) for u in comp}
            expected = cycle_gcd(comp, sub_succ, max_len=len(comp))
            assert component_period(dg, comp) == expected


def test_class_shift_law_random_sweep():
    rng = random.Random(9)
    for _ in range(30):
        sys = random_system(rng, max_points=8)
        for delta in critical_deltas(sys):
            dg = build_chain_digraph(sys, delta)
            for comp in chain_components(dg):
                dec = cyclic_classes(dg, comp, compute_transient=False, p2="record")
                for u in comp:
                    if sys.apply(u) in comp:
                        assert dec.class_of[sys.apply(u)] == (
                            dec.class_of[u] + 1) % dec.period


def test_proximal_partition_sys3(sys3):
    dg = build_chain_digraph(sys3, Fraction(1, 2))
    comp = chain_components(dg)[0]
    pp = proximal_partition(sys3, comp, [Fraction(1), Fraction(1, 2)])
    assert pp.classes == (("a",), ("b",), ("c",))
    assert pp.split_at is None
    assert [d.period for d in pp.per_delta] == [1, 3]


def test_proximal_partition_singleton(sys2id):
    pp = proximal_partition(sys2id, {"p"}, [Fraction(1, 2)])
    assert pp.classes == (("p",),)


def test_proximal_partition_rotation(rotation4):
    # with the closed step threshold, delta=1/4 still admits neighbor-cell
    # jumps (centers are exactly 1/4 apart); the pure 4-cycle digraph lives
    # strictly below the first positive critical value
    dg = build_chain_digraph(rotation4, Fraction(1, 2))
    comp = chain_components(dg)[0]
    coarse = proximal_partition(rotation4, comp, [Fraction(1, 2), Fraction(1, 4)])
    assert coarse.classes == (("c0", "c1", "c2", "c3"),)
    pp = proximal_partition(rotation4, comp, [Fraction(1, 2), Fraction(0)])
    assert len(pp.classes) == 4
    assert all(len(c) == 1 for c in pp.classes)
    assert pp.per_delta[1].period == 4


def test_proximal_partition_split_marker(sysns):
    # {n} and {s} split immediately below delta=1; the component {n,s,t}
    # only exists at delta=1
    dg1 = build_chain_digraph(sysns, 1)
    comp = chain_components(dg1)[0]
    assert comp == frozenset({"n", "s", "t"})
    pp = proximal_partition(sysns, comp, [Fraction(1), Fraction(1, 2)])
    assert pp.split_at == Fraction(1, 2)
    assert pp.ladder == (Fraction(1),)


def test_proximal_partition_refinement_monotone():
    rng = random.Random(10)
    for _ in range(15):
        sys = random_system(rng, max_points=7)
        crits = critical_deltas(sys)
        ladder = sorted(crits, reverse=True)
        dg = build_chain_digraph(sys, ladder[0])
        for comp in chain_components(dg):
            full = proximal_partition(sys, comp, ladder, p2="record")
            for cut in range(1, len(full.ladder) + 1):
                pref = proximal_partition(sys, comp, ladder[:cut], p2="record")
                # the longer-prefix partition refines the shorter one
                for cls in full.classes:
                    assert any(set(cls) <= set(big) for big in pref.classes)


def test_proximal_partition_validation(sys3):
    with pytest.raises(EmptyLadder):
        proximal_partition(sys3, {"a", "b", "c"}, [])
    with pytest.raises(EmptyLadder):
        proximal_partition(sys3, {"a", "b", "c"}, [Fraction(1, 2), Fraction(1)])
    with pytest.raises(NotAComponent):
        proximal_partition(sys3, {"a", "b"}, [Fraction(1, 2)])
