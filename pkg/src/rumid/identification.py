"""Uniqueness tests for random utility representations.

Three routes to the same verdict:

* graph route (:func:`is_unique`): look for two supported paths that merge
  into a common chain and later split apart;
* representation route (:func:`theorem2_check`): look for two support orders
  sharing an upper contour set with different pivots and disagreeing below;
* support route (:func:`support_identified`): exhibit two representations with
  different supports.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from rumid.core import (
    ChoiceSystem,
    LinearOrder,
    Mixture,
    Path,
    Universe,
    members,
    menu_sort_key,
    path_to_order,
    subsets_of_size,
    upper_contour_set,
)
from rumid.errors import DomainError
from rumid.flow import Edge, FlowDiagram, build_flow_diagram


@dataclass(frozen=True)
class BranchingWitness:
    """Two supported branching paths plus their tail-exchanged twins.

    ``rho`` and ``rho_prime`` enter ``merge_node`` along different edges,
    share the chain down to ``split_node`` and leave it along different
    edges. ``rho2`` is the head of ``rho`` joined to the tail of
    ``rho_prime``; ``rho3`` the other way round.
    """

    rho: Path
    rho_prime: Path
    merge_node: int
    split_node: int
    in_edges: tuple[Edge, Edge]
    out_edges: tuple[Edge, Edge]
    rho2: Path
    rho3: Path

    @property
    def merge_level(self) -> int:
        return self.rho.n - bin(self.merge_node).count("1")

    @property
    def split_level(self) -> int:
        return self.rho.n - bin(self.split_node).count("1")

    def orders(self) -> tuple[LinearOrder, LinearOrder, LinearOrder, LinearOrder]:
        return tuple(path_to_order(p) for p in (self.rho, self.rho_prime, self.rho2, self.rho3))  # type: ignore[return-value]

    def validate(self, diag: FlowDiagram) -> None:
        """Raise :class:`DomainError` unless the witness is consistent with ``diag``."""
        paths = (self.rho, self.rho_prime, self.rho2, self.rho3)
        for p in paths:
            if p.n != diag.n or any(diag.weights[e] <= 0 for e in p.edges()):
                raise DomainError("witness path is not supported in this diagram")
        i, j = self.merge_level, self.split_level
        if not 1 <= i <= j <= diag.n - 1:
            raise DomainError("merge/split levels out of range")
        a, b = self.rho.nodes, self.rho_prime.nodes
        if a[i] != self.merge_node or a[j] != self.split_node:
            raise DomainError("merge/split nodes are not on rho")
        if a[i - 1] == b[i - 1] or a[j + 1] == b[j + 1] or a[i:j + 1] != b[i:j + 1]:
            raise DomainError("rho and rho_prime are not branching at the recorded chain")
        if self.rho2.nodes != a[:j + 1] + b[j + 1:] or self.rho3.nodes != b[:j + 1] + a[j + 1:]:
            raise DomainError("rho2/rho3 are not the tail exchange of rho/rho_prime")


def _extend_up(diag: FlowDiagram, menu: int) -> list[int]:
    """Chain from the full set down to ``menu`` along smallest positive parents."""
    chain = [menu]
    while menu != diag.full:
        parents = diag.positive_parents(menu)
        if not parents:
            raise DomainError(f"flow not conserved: no positive in-edge at {diag.universe.format_menu(menu)}")
        menu |= 1 << parents[0]
        chain.append(menu)
    chain.reverse()
    return chain


def _extend_down(diag: FlowDiagram, menu: int) -> list[int]:
    """Chain from ``menu`` down to the empty set along smallest positive children."""
    chain = [menu]
    while menu:
        children = diag.positive_children(menu)
        if not children:
            raise DomainError(f"flow not conserved: no positive out-edge at {diag.universe.format_menu(menu)}")
        menu &= ~(1 << children[0])
        chain.append(menu)
    return chain


def complete_path(diag: FlowDiagram, edge: Edge) -> Path:
    """Supported path through ``edge``, extended by smallest positive edges."""
    menu, x = edge
    return Path(tuple(_extend_up(diag, menu) + _extend_down(diag, menu & ~(1 << x))))


def _positive_chain(diag: FlowDiagram, start: int, goal: int) -> list[int] | None:
    """Shortest positive-edge chain from ``start`` down to ``goal`` (BFS, smallest index first)."""
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            chain = []
            while node is not None:
                chain.append(node)
                node = parent[node]
            return chain[::-1]
        for x in diag.positive_children(node):
            child = node & ~(1 << x)
            if child not in parent and child & goal == goal:
                parent[child] = node
                queue.append(child)
    return None


def find_branching_pair(diag: FlowDiagram) -> BranchingWitness | None:
    """A pair of supported branching paths, or ``None`` if none exists.

    Merge nodes have at least two positive in-edges, split nodes at least two
    positive out-edges. Such a pair exists exactly when some split node is
    reachable from some merge node through positive edges (the two may
    coincide). The witness paths are completed upward and downward along
    positive edges, which flow conservation guarantees.
    """
    diag.require_nonnegative()
    nodes = sorted(range(1, diag.full), key=menu_sort_key)
    splits = {c for c in nodes if len(diag.positive_children(c)) >= 2}
    if not splits:
        return None
    for b in nodes:
        parents = diag.positive_parents(b)
        if len(parents) < 2:
            continue
        reachable = _reachable(diag, b)
        for c in sorted(splits & reachable, key=menu_sort_key):
            chain = _positive_chain(diag, b, c)
            assert chain is not None
            y1, y2 = parents[:2]
            x1, x2 = diag.positive_children(c)[:2]
            head1 = _extend_up(diag, b | 1 << y1)
            head2 = _extend_up(diag, b | 1 << y2)
            tail1 = _extend_down(diag, c & ~(1 << x1))
            tail2 = _extend_down(diag, c & ~(1 << x2))
            rho = Path(tuple(head1 + chain + tail1))
            rho_prime = Path(tuple(head2 + chain + tail2))
            return BranchingWitness(
                rho=rho,
                rho_prime=rho_prime,
                merge_node=b,
                split_node=c,
                in_edges=((b | 1 << y1, y1), (b | 1 << y2, y2)),
                out_edges=((c, x1), (c, x2)),
                rho2=Path(tuple(head1 + chain + tail2)),
                rho3=Path(tuple(head2 + chain + tail1)),
            )
    return None


def _reachable(diag: FlowDiagram, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for x in diag.positive_children(node):
            child = node & ~(1 << x)
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return seen


@dataclass(frozen=True)
class UniquenessVerdict:
    unique: bool
    witness: BranchingWitness | None = None
    diagram: FlowDiagram | None = None

    def __bool__(self) -> bool:
        return self.unique


def is_unique(sys: ChoiceSystem | FlowDiagram) -> UniquenessVerdict:
    """Whether the rationalizing distribution is unique.

    Raises:
        NotRationalizableError: some BM-polynomial is negative.
    """
    diag = sys if isinstance(sys, FlowDiagram) else build_flow_diagram(sys)
    witness = find_branching_pair(diag)
    return UniquenessVerdict(witness is None, witness, diag)


@dataclass(frozen=True)
class ContourWitness:
    """Two support orders and alternatives ``x, y, z`` certifying non-uniqueness.

    ``U_pi(x) == U_pi_prime(y)`` with ``x != y``, both orders rank ``x`` and
    ``y`` above ``z``, and ``U_pi(z) != U_pi_prime(z)``.
    """

    pi: LinearOrder
    pi_prime: LinearOrder
    x: int
    y: int
    z: int

    def holds(self, mix: Mixture) -> bool:
        pi, pp, x, y, z = self.pi, self.pi_prime, self.x, self.y, self.z
        return (
            mix.weight(pi) > 0
            and mix.weight(pp) > 0
            and x != y
            and upper_contour_set(pi, x) == upper_contour_set(pp, y)
            and upper_contour_set(pi, z) != upper_contour_set(pp, z)
            and pi.prefers(x, z) and pi.prefers(y, z)
            and pp.prefers(x, z) and pp.prefers(y, z)
        )


Theorem2Witness = ContourWitness


@dataclass(frozen=True)
class ContourVerdict:
    unique: bool
    witness: ContourWitness | None = None

    def __bool__(self) -> bool:
        return self.unique


def _contour_witness(pi: LinearOrder, pp: LinearOrder) -> ContourWitness | None:
    n = pi.n
    prefix_a = prefix_b = 0
    for k in range(n - 1):
        x, y = pi.ranking[k], pp.ranking[k]
        prefix_a |= 1 << x
        prefix_b |= 1 << y
        if prefix_a != prefix_b or x == y:
            continue
        # any z outside the shared prefix sits below both x and y in both orders
        for z in range(n):
            if prefix_a >> z & 1:
                continue
            if upper_contour_set(pi, z) != upper_contour_set(pp, z):
                return ContourWitness(pi, pp, x, y, z)
    return None


def theorem2_check(mix: Mixture) -> ContourVerdict:
    """Uniqueness test phrased on the representation itself.

    Scans support pairs in lexicographic order of rankings; for each pair,
    coincidence levels top-down; for each level, ``z`` by universe index.
    The first witness found is returned.
    """
    support = sorted(mix.atoms)
    for pi, pp in combinations(support, 2):
        witness = _contour_witness(pi, pp)
        if witness is not None:
            return ContourVerdict(False, witness)
    return ContourVerdict(True)


@dataclass(frozen=True)
class SupportVerdict:
    identified: bool
    representations: tuple[Mixture, Mixture] | None = None

    def __bool__(self) -> bool:
        return self.identified


def support_identified(sys: ChoiceSystem | FlowDiagram) -> SupportVerdict:
    """Whether every rationalizing distribution has the same support.

    When not, returns two representations whose supports differ.
    """
    from rumid.decomposition import alternative_representations

    verdict = is_unique(sys)
    if verdict.unique:
        return SupportVerdict(True)
    assert verdict.diagram is not None and verdict.witness is not None
    return SupportVerdict(False, alternative_representations(verdict.diagram, verdict.witness))


def restrict_system(sys: ChoiceSystem, subset: int) -> ChoiceSystem:
    """The choice system on ``subset`` keeping the original probabilities.

    The restricted universe lists the kept alternatives in their original order.
    """
    if not subset:
        raise DomainError("cannot restrict to the empty set")
    if subset & ~sys.universe.full:
        raise DomainError(f"subset {subset:#b} is outside the universe")
    kept = members(subset)
    universe = Universe(tuple(sys.universe.labels[i] for i in kept))
    probs = {}
    for new_menu in range(1, 1 << len(kept)):
        old_menu = 0
        for new_i, old_i in enumerate(kept):
            if new_menu >> new_i & 1:
                old_menu |= 1 << old_i
        for new_i, old_i in enumerate(kept):
            if new_menu >> new_i & 1:
                probs[(new_menu, new_i)] = sys.p(old_menu, old_i)
    return ChoiceSystem(universe, probs)


def unique_by_restrictions(sys: ChoiceSystem, k: int = 4) -> bool:
    """Uniqueness decided on every ``k``-element restriction (``k = 4`` suffices)."""
    if sys.universe.n <= k:
        return is_unique(sys).unique
    return all(is_unique(restrict_system(sys, y)).unique for y in subsets_of_size(sys.universe.n, k))
