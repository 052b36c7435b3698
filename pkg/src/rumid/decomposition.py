"""Constructing representations by decomposing the flow diagram into path flows.

Every routine here works on a private residual copy of the edge weights and
peels off whole paths, which keeps inflow equal to outflow at every stage.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from itertools import combinations, permutations
from typing import Iterable, Sequence

from rumid.core import (
    ZERO,
    LinearOrder,
    Mixture,
    Path,
    menu_sort_key,
    order_to_path,
    path_to_order,
)
from rumid.errors import DomainError
from rumid.flow import Edge, FlowDiagram, path_supported
from rumid.identification import BranchingWitness, complete_path

log = logging.getLogger(__name__)

DEFAULT_ORDERING_CAP = 5040


@dataclass
class DecompositionTrace:
    """Paths peeled off by a decomposition run, with the final residual."""

    steps: list[tuple[Path, Fraction]] = field(default_factory=list)
    residual: dict[Edge, Fraction] = field(default_factory=dict)

    @property
    def total_flow(self) -> Fraction:
        return sum((flow for _, flow in self.steps), ZERO)

    def residual_zero(self) -> bool:
        return not any(self.residual.values())

    def residual_after(self, diag: FlowDiagram, k: int) -> FlowDiagram:
        """Residual diagram after the first ``k`` steps."""
        weights = dict(diag.weights)
        for path, flow in self.steps[:k]:
            for e in path.edges():
                weights[e] -= flow
        return FlowDiagram(diag.universe, weights)


def _check_decomposable(diag: FlowDiagram) -> None:
    diag.require_nonnegative()
    bad = diag.conservation_violations()
    if bad:
        menu, inflow, outflow = bad[0]
        raise DomainError(
            f"flow not conserved at {diag.universe.format_menu(menu)}: inflow {inflow}, outflow {outflow}"
        )


def _greedy_edge_key(edge: Edge) -> tuple[int, int, int]:
    menu, x = edge
    return (*menu_sort_key(menu), x)


def _subtract(residual: dict[Edge, Fraction], path: Path, flow: Fraction) -> None:
    for e in path.edges():
        residual[e] -= flow
        if residual[e] < 0:
            raise DomainError(f"path flow {flow} exceeds residual capacity on edge {e}")


def greedy_representation(
    diag: FlowDiagram,
    seed: Path | None = None,
    seed_flow: Fraction | None = None,
) -> tuple[Mixture, DecompositionTrace]:
    """Decompose ``diag`` into path flows, smallest positive edge first.

    Each round takes the smallest strictly positive residual weight ``s``,
    completes a positive path through an edge carrying it and assigns ``s``
    to the matching order. Ties between edges go to the larger source set,
    then the smaller bit pattern, then the smaller removed index.

    If ``seed`` is given, that path is first assigned ``seed_flow``, which
    defaults to its minimum edge weight.

    Raises:
        NotRationalizableError: a weight is negative.
        DomainError: flow is not conserved, or the seed is not supported or
            cannot carry ``seed_flow``.
    """
    _check_decomposable(diag)
    residual = dict(diag.weights)
    view = FlowDiagram(diag.universe, residual)
    trace = DecompositionTrace()
    atoms: dict[LinearOrder, Fraction] = {}

    def take(path: Path, flow: Fraction) -> None:
        _subtract(residual, path, flow)
        order = path_to_order(path)
        atoms[order] = atoms.get(order, ZERO) + flow
        trace.steps.append((path, flow))

    if seed is not None:
        if not path_supported(diag, seed):
            raise DomainError("seed path is not supported")
        cap = min(diag.weights[e] for e in seed.edges())
        flow = cap if seed_flow is None else Fraction(seed_flow)
        if not 0 < flow <= cap:
            raise DomainError(f"seed flow {flow} outside (0, {cap}]")
        take(seed, flow)

    # every round zeroes at least one edge
    for _ in range(len(residual) + 1):
        positive = [(w, e) for e, w in residual.items() if w > 0]
        if not positive:
            break
        s = min(w for w, _ in positive)
        edge = min((e for w, e in positive if w == s), key=_greedy_edge_key)
        take(complete_path(view, edge), s)
    else:  # pragma: no cover - guarded by the zeroing argument above
        raise DomainError("decomposition did not terminate")

    trace.residual = residual
    return Mixture(diag.universe, atoms), trace


def _min_edge(diag: FlowDiagram, paths: Iterable[Path]) -> tuple[Fraction, Edge]:
    edges = {e for p in paths for e in p.edges()}
    weight, _, edge = min((diag.weights[e], _greedy_edge_key(e), e) for e in edges)
    return weight, edge


def alternative_representations(diag: FlowDiagram, w: BranchingWitness) -> tuple[Mixture, Mixture]:
    """Two representations of ``diag`` with different supports.

    With ``r`` the smallest weight on ``rho ∪ rho_prime``, the paths are
    relabelled so that an edge of weight ``r`` lies on both ``rho`` and
    ``rho2``. Seeding the greedy decomposition with ``rho`` then leaves
    ``rho2`` unsupported, while seeding with ``rho2`` gives it weight ``r``.
    """
    w.validate(diag)
    rho, rho_p, rho2, rho3 = w.rho, w.rho_prime, w.rho2, w.rho3
    j = w.split_level
    r, edge = _min_edge(diag, (rho, rho_p))

    head = set(rho.edges()[:j])
    tail = set(rho.edges()[j:])
    head_p = set(rho_p.edges()[:j])
    if edge in head:
        pass
    elif edge in tail:
        rho2, rho3 = rho3, rho2
    elif edge in head_p:
        rho, rho_p, rho2, rho3 = rho_p, rho, rho3, rho2
    else:
        rho, rho_p = rho_p, rho
    assert edge in rho.edges() and edge in rho2.edges()

    nu1, _ = greedy_representation(diag, seed=rho, seed_flow=r)
    nu2, _ = greedy_representation(diag, seed=rho2, seed_flow=r)
    target = path_to_order(rho2)
    if not (nu1.weight(target) == 0 < r <= nu2.weight(target)):
        raise DomainError("witness does not separate the two representations")
    return nu1, nu2


def supported_paths(diag: FlowDiagram) -> list[Path]:
    """All supported paths, in lexicographic order of their orders."""
    out: list[Path] = []
    nodes = [diag.full]

    def walk(menu: int) -> None:
        if not menu:
            out.append(Path(tuple(nodes)))
            return
        for x in diag.positive_children(menu):
            nodes.append(menu & ~(1 << x))
            walk(nodes[-1])
            nodes.pop()

    walk(diag.full)
    return out


def priority_decomposition(diag: FlowDiagram, priority: Sequence[Path]) -> Mixture:
    """Give each path, in priority order, its minimum remaining edge capacity."""
    residual = dict(diag.weights)
    atoms: dict[LinearOrder, Fraction] = {}
    for path in priority:
        flow = min(residual[e] for e in path.edges())
        if flow > 0:
            _subtract(residual, path, flow)
            atoms[path_to_order(path)] = flow
    if any(residual.values()):
        raise DomainError("priority list does not cover the positive edges")
    return Mixture(diag.universe, atoms)


def is_vertex(diag: FlowDiagram, mix: Mixture) -> bool:
    """Whether ``mix`` is an extreme point of the representation polytope.

    A feasible point is a vertex exactly when the edge-incidence vectors of
    its support paths are linearly independent.
    """
    index = {e: i for i, e in enumerate(diag.edges())}
    rows = []
    for order in mix.atoms:
        row = [ZERO] * len(index)
        for e in order_to_path(order).edges():
            row[index[e]] = Fraction(1)
        rows.append(row)
    return _rank(rows) == len(rows)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col] / rows[rank][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class Enumeration:
    """Candidate extreme points found by varying the path priority.

    No completeness claim is made: other vertices may exist.
    """

    representations: tuple[Mixture, ...]
    vertex: tuple[bool, ...]
    orderings_tried: int
    exhaustive: bool
    supported_path_count: int


def enumerate_representations(
    diag: FlowDiagram,
    cap: int = DEFAULT_ORDERING_CAP,
    rng_seed: int = 0,
) -> Enumeration:
    """Run the priority decomposition over many orderings of the supported paths.

    All ``k!`` orderings are tried when ``k! <= cap``; otherwise ``cap``
    orderings are drawn from ``random.Random(rng_seed)``.
    """
    if cap < 1:
        raise DomainError("cap must be positive")
    _check_decomposable(diag)
    paths = supported_paths(diag)
    k = len(paths)
    exhaustive = math.factorial(k) <= cap
    if exhaustive:
        orderings: Iterable[Sequence[Path]] = permutations(paths)
    else:
        rng = random.Random(rng_seed)
        orderings = (rng.sample(paths, k) for _ in range(cap))
        log.info("%d supported paths: sampling %d of %d! orderings", k, cap, k)
    found: dict[Mixture, None] = {}
    tried = 0
    for ordering in orderings:
        found.setdefault(priority_decomposition(diag, ordering))
        tried += 1
    reps = tuple(sorted(found, key=lambda m: m.key()))
    return Enumeration(
        representations=reps,
        vertex=tuple(is_vertex(diag, m) for m in reps),
        orderings_tried=tried,
        exhaustive=exhaustive,
        supported_path_count=k,
    )


# -- single crossing ---------------------------------------------------------


def _agreements(order: LinearOrder, exo: LinearOrder) -> frozenset[tuple[int, int]]:
    """Pairs ``x ▷ y`` (``x`` before ``y`` in ``exo``) that ``order`` ranks the same way."""
    pos = {x: i for i, x in enumerate(order.ranking)}
    return frozenset((x, y) for x, y in combinations(exo.ranking, 2) if pos[x] < pos[y])


def is_single_crossing_ordering(ordering: Sequence[LinearOrder], exo: LinearOrder) -> bool:
    """Literal check: once an order agrees with ``x ▷ y``, every later one does too."""
    for x, y in combinations(exo.ranking, 2):
        agreed = False
        for order in ordering:
            agrees = order.prefers(x, y)
            if agreed and not agrees:
                return False
            agreed = agreed or agrees
    return True


@dataclass(frozen=True)
class ScrumVerdict:
    """Outcome of the single-crossing test.

    ``conflict`` holds ``(pi, pi_prime, pair, pair_prime)``: ``pi`` agrees
    with ``pair`` and ``pi_prime`` does not, while ``pi_prime`` agrees with
    ``pair_prime`` and ``pi`` does not, so neither can come first.
    """

    single_crossing: bool
    ordering: tuple[LinearOrder, ...] | None = None
    conflict: tuple[LinearOrder, LinearOrder, tuple[int, int], tuple[int, int]] | None = None

    def __bool__(self) -> bool:
        return self.single_crossing


def scrum_check(mix: Mixture, exo: LinearOrder) -> ScrumVerdict:
    """Whether the support of ``mix`` can be ordered to be single crossing for ``exo``.

    ``pi_prime`` must come before ``pi`` whenever ``pi`` agrees with some pair
    ``x ▷ y`` that ``pi_prime`` does not; an ordering exists iff this relation
    is acyclic.
    """
    if exo.n != mix.universe.n:
        raise DomainError(f"exogenous order has {exo.n} alternatives, universe has {mix.universe.n}")
    support = sorted(mix.atoms)
    agree = {pi: _agreements(pi, exo) for pi in support}
    sorter: TopologicalSorter[LinearOrder] = TopologicalSorter()
    for pi in support:
        sorter.add(pi)
        for pp in support:
            if pp != pi and agree[pi] - agree[pp]:
                sorter.add(pi, pp)
    try:
        ordering = tuple(sorter.static_order())
    except CycleError:
        for pi, pp in combinations(support, 2):
            only_pi, only_pp = agree[pi] - agree[pp], agree[pp] - agree[pi]
            if only_pi and only_pp:
                return ScrumVerdict(False, conflict=(pi, pp, min(only_pi), min(only_pp)))
        raise  # pragma: no cover - any cycle contains an incomparable pair
    if not is_single_crossing_ordering(ordering, exo):  # pragma: no cover
        raise AssertionError("topological order failed direct verification")
    return ScrumVerdict(True, ordering=ordering)
