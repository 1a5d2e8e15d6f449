"""The ten acceptance criteria, one test each.

Every test records a ``criterion N: PASS|FAIL`` line, printed in the
terminal summary (and directly when this file is run as a script).
"""
import random
import time
from functools import lru_cache

import pytest

from conftest import ACCEPTANCE_LINES
from generators import HEXAGON, RANGES, TRIANGLE, random_family, random_points, random_realizer
from oracles import dual_grid_oracle, primal_grid_oracle
from polycolor.coloring import degeneracy_order, is_proper, list_color_planar_5, planarity_check
from polycolor.conflict_free import (cf_color, dominance_instance, dual_instance, k_strong_cf_color,
                                     log_bound, strong_bound, verify_cf)
from polycolor.dominance import (build_Gk, color_k, enumerate_hyperedges, extreme_stats,
                                 verify_polychromatic)
from polycolor.dual import build_dual_graph, color_dual, contained_set, verify_dual
from polycolor.geometry import contained_in
from polycolor.lowerbound import check_lowerbound, gen_lowerbound_dual, gen_lowerbound_primal
from polycolor.primal import build_delaunay, color_primal, verify_primal

NAMES = sorted(RANGES)
KS = (2, 3, 5)


def record(number, ok, detail):
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def primal_suite():
    rnd = random.Random(1001)
    return [(NAMES[i % 3], random_points(rnd, rnd.randint(2, 50))) for i in range(100)]


@lru_cache(maxsize=None)
def dual_suite():
    rnd = random.Random(2002)
    return [(NAMES[i % 3], random_family(rnd, RANGES[NAMES[i % 3]], rnd.randint(2, 30)))
            for i in range(100)]


@lru_cache(maxsize=None)
def realizer_suite():
    rnd = random.Random(3003)
    sizes = (5, 50, 1000)
    return [random_realizer(rnd, rnd.randint(3, 60), sizes[i % 3]) for i in range(50)]


def test_criterion_01_primal_four_coloring():
    start, bad, worst = time.perf_counter(), [], 0
    for i, (name, pts) in enumerate(primal_suite()):
        c = color_primal(RANGES[name], pts)
        worst = max(worst, c.num_colors)
        if c.num_colors > 4 or not verify_primal(RANGES[name], pts, c):
            bad.append(i)
    elapsed = time.perf_counter() - start
    record(1, not bad and elapsed < 60,
           f"100 primal instances, max {worst} colors, {len(bad)} failures, {elapsed:.1f}s (< 60s)")


def test_criterion_02_dual_four_coloring():
    start, bad, worst, with_i = time.perf_counter(), [], 0, 0
    for i, (name, fam) in enumerate(dual_suite()):
        with_i += bool(contained_set(dict(enumerate(fam)))[0])
        c = color_dual(fam)
        worst = max(worst, c.num_colors)
        if c.num_colors > 4 or not verify_dual(fam, c):
            bad.append(i)
    elapsed = time.perf_counter() - start
    record(2, not bad and elapsed < 120 and with_i > 0,
           f"100 dual families ({with_i} with contained homothets), max {worst} colors, "
           f"{len(bad)} failures, {elapsed:.1f}s (< 120s)")


def test_criterion_03_planarity():
    failures, count = 0, 0
    for name, pts in primal_suite():
        count += 1
        failures += not planarity_check(build_delaunay(RANGES[name], pts).graph)
    for name, fam in dual_suite():
        inside, _ = contained_set(dict(enumerate(fam)))
        outer = {i: h for i, h in enumerate(fam) if i not in inside}
        count += 1
        failures += not planarity_check(build_dual_graph(outer).graph)
    for pts in realizer_suite():
        count += 1
        failures += not planarity_check(build_Gk(pts, 2).graph)
    record(3, failures == 0, f"{count} graphs (primal, dual, G_2), {failures} non-planar")


def test_criterion_04_edge_bound():
    worst, bad = 0.0, 0
    for pts in realizer_suite():
        n = len(pts)
        for k in KS:
            m = len(build_Gk(pts, k).edges)
            bound = 3 * (k - 1) * n - 6
            worst = max(worst, m / bound)
            bad += m > bound
    tight = len(build_Gk([(1, 2, 3), (2, 3, 1), (3, 1, 2)], 2).edges) == 3
    record(4, bad == 0 and tight,
           f"150 (realizer, k) pairs, worst |E_k| / (3(k-1)n-6) = {worst:.3f}; "
           f"cyclic antichain meets the bound: {tight}")


def test_criterion_05_polychromatic_bound():
    bad = 0
    for pts in realizer_suite():
        hg = enumerate_hyperedges(pts)
        for k in KS:
            _, d = degeneracy_order(build_Gk(pts, k).graph)
            c = color_k(pts, k)
            bad += d > 6 * (k - 1) - 1 or c.num_colors > 6 * (k - 1) or not verify_polychromatic(hg, c, k)
    record(5, bad == 0, f"150 (realizer, k) pairs, {bad} violations of 6(k-1) colors / degeneracy / verify")


def test_criterion_06_extreme_hyperedges():
    worst, bad = 0.0, 0
    for pts in realizer_suite():
        hg = enumerate_hyperedges(pts)
        for k in KS:
            e = extreme_stats(hg, k)
            worst = max(worst, e / len(pts))
            bad += e > 3 * len(pts)
    record(6, bad == 0, f"150 (realizer, k) pairs, worst extreme count / n = {worst:.2f} (<= 3)")


def test_criterion_07_lower_bound_sandwich():
    start, ok, parts = time.perf_counter(), True, []
    for gen in (gen_lowerbound_primal, gen_lowerbound_dual):
        for rng in (TRIANGLE, HEXAGON):
            lb = gen(rng, 2)
            r3, r4 = check_lowerbound(lb, 3), check_lowerbound(lb, 4)
            ok &= r3 and not r4
            parts.append(f"{lb.kind} k=2 3:{'rejected' if r3 else 'accepted'} 4:{'rejected' if r4 else 'accepted'}")
        lb = gen(HEXAGON, 4)
        r7 = check_lowerbound(lb, 7)
        ok &= r7 and len(lb.items) == 8
        parts.append(f"{lb.kind} k=4 ({len(lb.items)} points) 7:{'rejected' if r7 else 'accepted'}")
    elapsed = time.perf_counter() - start
    record(7, ok and elapsed < 600, "; ".join(parts) + f"; {elapsed:.1f}s")


def test_criterion_08_conflict_free_bounds():
    rnd = random.Random(4004)
    bad, worst = 0, None
    for i in range(50):
        rng = RANGES[NAMES[i % 3]]
        n = rnd.randint(2, 64)
        fam = random_family(rnd, rng, n, size=24)
        inst = dual_instance(fam)
        c = cf_color(inst)
        gap = c.num_colors - log_bound(n, 4 / 3)
        worst = gap if worst is None else max(worst, gap)
        bad += c.num_colors > log_bound(n, 4 / 3) or not verify_cf(inst, c)
    strong_bad = 0
    for k in (2, 3):
        for _ in range(15):
            pts = random_realizer(rnd, rnd.randint(2, 60), 40)
            inst = dominance_instance(pts, k)
            c = k_strong_cf_color(inst, k)
            strong_bad += c.num_colors > strong_bound(len(pts), k) or not verify_cf(inst, c, k)
    record(8, bad == 0 and strong_bad == 0,
           f"50 dual CF instances ({bad} failures, colors minus bound at most {worst}); "
           f"30 k-strong dominance instances k=2,3 ({strong_bad} failures)")


def test_criterion_09_oracle_equivalence():
    rnd = random.Random(5005)
    mismatches, count, perturbed = 0, 0, 0
    for i in range(30):
        rng = RANGES[NAMES[i % 3]]
        pts = random_points(rnd, rnd.randint(2, 10), 6)
        dg = build_delaunay(rng, pts)
        exact, tied = primal_grid_oracle(rng, pts)
        ex = {e for e, w in dg.witness.items() if w.kind == "exact"}
        pe = {e for e, w in dg.witness.items() if w.kind == "perturbed"}
        perturbed += len(pe)
        mismatches += ex != exact or not pe <= tied
        count += 1
    for i in range(30):
        rng = RANGES[NAMES[i % 3]]
        fam = random_family(rnd, rng, rnd.randint(2, 10), size=6, max_scale=3, nested=0)
        fam = [h for j, h in enumerate(fam)
               if not any(contained_in(h, g) and (g != h or m < j) for m, g in enumerate(fam) if m != j)]
        dg = build_dual_graph(fam)
        exact, tied = dual_grid_oracle(rng, fam)
        ex = {e for e, (kind, _) in dg.witness.items() if kind == "exact"}
        pe = {e for e, (kind, _) in dg.witness.items() if kind == "perturbed"}
        perturbed += len(pe)
        mismatches += ex != exact or not pe <= tied
        count += 1
    record(9, mismatches == 0,
           f"{count} integer instances (n <= 10), {mismatches} mismatches; "
           f"{perturbed} tie-broken edges all on oracle ties")


def test_criterion_10_choosability():
    rnd = random.Random(6006)
    bad, sizes = 0, []
    for i in range(50):
        rng = RANGES[NAMES[i % 3]]
        fam = random_family(rnd, rng, rnd.randint(5, 40), nested=0)
        inside, _ = contained_set(dict(enumerate(fam)))
        g = build_dual_graph({j: h for j, h in enumerate(fam) if j not in inside}).graph
        sizes.append(g.num_edges())
        # adversarial: few colors overall, so neighbouring lists overlap heavily
        pool = list(range(rnd.choice((5, 6, 7))))
        lists = {v: rnd.sample(pool, 5) for v in g.vertices}
        c = list_color_planar_5(g, lists)
        bad += not is_proper(g, c) or any(c[v] not in lists[v] for v in g.vertices)
    record(10, bad == 0, f"50 dual graphs (up to {max(sizes)} edges), {bad} invalid list colorings")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
