"""Brute-force reference implementations for the test suite.

These walk the raw definitions over every path or ordering and refuse
inputs that are too large rather than sampling.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations, permutations

from rumid.core import LinearOrder, Mixture, Path, Universe, all_orders, order_to_path
from rumid.decomposition import is_single_crossing_ordering
from rumid.errors import CapExceededError
from rumid.flow import FlowDiagram, path_supported

MAX_PATH_ORACLE_N = 6
MAX_UNIQUENESS_ORACLE_N = 5


def all_paths(universe: Universe | int) -> list[Path]:
    """Every maximal chain, in lexicographic order of the matching orders."""
    n = universe if isinstance(universe, int) else universe.n
    if n > MAX_PATH_ORACLE_N:
        raise CapExceededError(f"all_paths refuses n = {n} > {MAX_PATH_ORACLE_N}")
    return [order_to_path(order) for order in all_orders(n)]


def branching_by_definition(p: Path, q: Path) -> bool:
    """Literal quantifier check over every ``1 <= i <= j <= n - 1``."""
    if p.n != q.n:
        raise ValueError("paths over different universes")
    a, b = p.nodes, q.nodes
    n = p.n
    for i in range(1, n):
        for j in range(i, n):
            if a[i - 1] != b[i - 1] and a[j + 1] != b[j + 1] and all(a[m] == b[m] for m in range(i, j + 1)):
                return True
    return False


def exhaustive_uniqueness(diag: FlowDiagram) -> bool:
    """True iff no two supported paths are branching."""
    if diag.n > MAX_UNIQUENESS_ORACLE_N:
        raise CapExceededError(f"exhaustive_uniqueness refuses n = {diag.n} > {MAX_UNIQUENESS_ORACLE_N}")
    supported = [p for p in all_paths(diag.n) if path_supported(diag, p)]
    return not any(branching_by_definition(p, q) for p, q in combinations(supported, 2))


def scrum_brute_force(mix: Mixture, exo: LinearOrder, max_support: int = 6) -> tuple[LinearOrder, ...] | None:
    """First single-crossing ordering of the support found by trying them all."""
    support = sorted(mix.atoms)
    if len(support) > max_support:
        raise CapExceededError(f"support of size {len(support)} exceeds {max_support}")
    for ordering in permutations(support):
        if is_single_crossing_ordering(ordering, exo):
            return ordering
    return None


def default_universe(n: int) -> Universe:
    return Universe(tuple("abcdefghijklmnop"[:n]))


def random_mixture(rng: random.Random, n: int, max_support: int = 8) -> Mixture:
    """Seeded random mixture.

    Support size is uniform on ``[1, min(n!, max_support)]``; weights are
    random rationals with denominators at most 120, then normalized.
    """
    universe = default_universe(n)
    k = rng.randint(1, min(math.factorial(n), max_support))
    orders: set[tuple[int, ...]] = set()
    while len(orders) < k:
        ranking = list(range(n))
        rng.shuffle(ranking)
        orders.add(tuple(ranking))
    raw = {LinearOrder(r, n): Fraction(rng.randint(1, 120), rng.randint(1, 120)) for r in sorted(orders)}
    total = sum(raw.values())
    return Mixture(universe, {o: w / total for o, w in raw.items()})


def uniform_mixture(n: int) -> Mixture:
    """Equal weight on every order of ``n`` alternatives."""
    orders = list(all_orders(n))
    w = Fraction(1, len(orders))
    return Mixture(default_universe(n), {o: w for o in orders})


def point_masses(n: int) -> list[Mixture]:
    universe = default_universe(n)
    return [Mixture.point_mass(universe, o) for o in all_orders(n)]
