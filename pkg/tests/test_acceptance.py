"""Acceptance suite.

Every check is exact (rational arithmetic, tolerance 0). Each test prints a
single PASS or FAIL line; run with ``pytest tests/test_acceptance.py -v -s``
to see them.
"""

import random
import time
from functools import cache

from rumid import (
    build_flow_diagram,
    enumerate_representations,
    find_branching_pair,
    greedy_representation,
    induce_choice_system,
    is_unique,
    reduced_diagram,
    scrum_check,
    support_identified,
    theorem2_check,
)
from rumid.core import Universe, members, nonempty_menus, order_to_path
from rumid.decomposition import is_single_crossing_ordering
from rumid.flow import bm_polynomial, bm_table, contour_mass
from rumid.identification import unique_by_restrictions
from rumid.oracle import (
    exhaustive_uniqueness,
    point_masses,
    random_mixture,
    scrum_brute_force,
    uniform_mixture,
)

from conftest import HALF, mixture


def report(number, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def fishburn_pair():
    nu1 = mixture("abcd", ("abcd", HALF), ("badc", HALF))
    nu2 = mixture("abcd", ("abdc", HALF), ("bacd", HALF))
    return nu1, nu2


@cache
def small_instances():
    rng = random.Random(2)
    mixes = [random_mixture(rng, 3) for _ in range(1000)]
    for n in range(1, 6):
        mixes.extend(point_masses(n))
    return tuple(mixes)


@cache
def cross_instances():
    out = []
    for n in (4, 5):
        rng = random.Random(40 + n)
        out.extend(random_mixture(rng, n) for _ in range(1000))
    return tuple(out)


def test_criterion_1_fishburn():
    start = time.perf_counter()
    nu1, nu2 = fishburn_pair()
    sys1, sys2 = induce_choice_system(nu1), induce_choice_system(nu2)
    diag = build_flow_diagram(sys1)
    view = reduced_diagram(diag)
    verdict = is_unique(sys1)
    cd = nu1.universe.menu("cd")
    elapsed = time.perf_counter() - start
    ok = (
        sys1 == sys2
        and len(view.edges) == 8
        and all(diag.weight(*e) == HALF for e in view.edges)
        and not verdict.unique
        and verdict.witness.merge_node == cd == verdict.witness.split_node
        and elapsed < 1
    )
    report(1, "Fishburn reproduction", ok, f"{elapsed:.3f}s")


def test_criterion_2_small_universes():
    start = time.perf_counter()
    bad = 0
    for mix in small_instances():
        sys = induce_choice_system(mix)
        if not (is_unique(sys).unique and theorem2_check(mix).unique and support_identified(sys).identified):
            bad += 1
    elapsed = time.perf_counter() - start
    report(2, "small-universe uniqueness", bad == 0 and elapsed < 10, f"{bad} failures, {elapsed:.2f}s")


def test_criterion_3_full_support():
    start = time.perf_counter()
    ok = True
    for n in (4, 5):
        mix = uniform_mixture(n)
        assert len(mix.atoms) == (24 if n == 4 else 120)
        sys = induce_choice_system(mix)
        ok &= not is_unique(sys).unique
        ok &= not theorem2_check(mix).unique
        ok &= all(q > 0 for q in bm_table(sys).values())
    elapsed = time.perf_counter() - start
    report(3, "full-support non-uniqueness", ok and elapsed < 10, f"{elapsed:.2f}s")


def test_criterion_4_cross_agreement():
    start = time.perf_counter()
    disagree = bad_witness = non_unique = 0
    for mix in cross_instances():
        sys = induce_choice_system(mix)
        t1 = is_unique(sys).unique
        t2 = theorem2_check(mix).unique
        t3 = support_identified(sys)
        if not (t1 == t2 == t3.identified):
            disagree += 1
            continue
        if not t1:
            non_unique += 1
            a, b = t3.representations
            if not (induce_choice_system(a) == induce_choice_system(b) and a != b and a.support != b.support):
                bad_witness += 1
    elapsed = time.perf_counter() - start
    ok = disagree == 0 and bad_witness == 0 and elapsed < 120
    report(4, "cross-agreement of the three tests", ok,
           f"{disagree} disagreements, {bad_witness} bad witnesses, {non_unique} non-unique, {elapsed:.1f}s")


def test_criterion_5_oracle_equivalence():
    start = time.perf_counter()
    mixes = [fishburn_pair()[0], uniform_mixture(4), uniform_mixture(5)]
    mixes += list(small_instances()) + list(cross_instances())
    mismatches = 0
    for mix in mixes:
        diag = build_flow_diagram(induce_choice_system(mix))
        if (find_branching_pair(diag) is None) != exhaustive_uniqueness(diag):
            mismatches += 1
    elapsed = time.perf_counter() - start
    report(5, "oracle equivalence", mismatches == 0 and elapsed < 300,
           f"{len(mixes)} instances, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_6_round_trip():
    failures = 0
    for mix in cross_instances():
        sys = induce_choice_system(mix)
        diag = build_flow_diagram(sys)
        rep, trace = greedy_representation(diag)
        if induce_choice_system(rep) != sys or not trace.residual_zero():
            failures += 1
            continue
        for order in mix.atoms:
            path = order_to_path(order)
            seeded, seeded_trace = greedy_representation(diag, seed=path)
            floor = min(diag.weight(*e) for e in path.edges())
            if seeded.weight(order) < floor or not seeded_trace.residual_zero():
                failures += 1
            if induce_choice_system(seeded) != sys:
                failures += 1
    report(6, "decomposition round trip", failures == 0, f"{failures} failures")


def test_criterion_7_fishburn_extreme_points():
    start = time.perf_counter()
    nu1, nu2 = fishburn_pair()
    result = enumerate_representations(build_flow_diagram(induce_choice_system(nu1)))
    elapsed = time.perf_counter() - start
    ok = (
        result.orderings_tried == 24
        and result.supported_path_count == 4
        and set(result.representations) == {nu1, nu2}
        and len(result.representations) == 2
        and elapsed < 1
    )
    report(7, "Fishburn extreme points", ok, f"{elapsed:.3f}s")


def test_criterion_8_scrum():
    nu1, nu2 = fishburn_pair()
    u = nu1.universe
    ok = (
        scrum_check(nu1, u.order("abcd")).single_crossing
        and scrum_check(nu2, u.order("abdc")).single_crossing
        and not scrum_check(nu2, u.order("abcd")).single_crossing
    )
    rng = random.Random(8)
    mismatches = 0
    for _ in range(200):
        n = rng.randint(2, 5)
        mix = random_mixture(rng, n, max_support=6)
        exo = mix.universe.order(rng.sample(mix.universe.labels, n))
        verdict = scrum_check(mix, exo)
        brute = scrum_brute_force(mix, exo)
        if verdict.single_crossing != (brute is not None):
            mismatches += 1
        elif verdict.ordering is not None and not is_single_crossing_ordering(verdict.ordering, exo):
            mismatches += 1
    report(8, "single-crossing checks", ok and mismatches == 0, f"{mismatches} mismatches against brute force")


def test_criterion_9_size_four_reduction():
    rng = random.Random(9)
    counterexamples = []
    for _ in range(200):
        mix = random_mixture(rng, 5)
        sys = induce_choice_system(mix)
        full_non_unique = not is_unique(sys).unique
        some_restriction_non_unique = not unique_by_restrictions(sys, 4)
        if full_non_unique != some_restriction_non_unique:
            counterexamples.append(mix)
    forward_broken = sum(1 for mix in counterexamples if not is_unique(induce_choice_system(mix)).unique)
    report(9, "size-four reduction (iff)", not counterexamples,
           f"{len(counterexamples)} of 200 violate the equivalence, {forward_broken} of them in the forward direction")


def test_criterion_10_falmagne_identity():
    rng = random.Random(10)
    failures = 0
    for _ in range(500):
        n = rng.randint(1, 5)
        mix = random_mixture(rng, n)
        sys = induce_choice_system(mix)
        table = bm_table(sys)
        for menu in nonempty_menus(n):
            for x in members(menu):
                q = table[(menu, x)]
                if q != contour_mass(mix, x, menu) or q != bm_polynomial(sys, x, menu, "mobius"):
                    failures += 1
    report(10, "Falmagne identity and BM forms", failures == 0, f"{failures} mismatches")


def test_universe_labels_are_consistent():
    # guards the shared fixtures used above
    assert fishburn_pair()[0].universe == Universe(tuple("abcd"))
