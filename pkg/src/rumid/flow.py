"""Block-Marschak polynomials and the probability flow diagram.

The flow diagram lives on the subset lattice of the universe: every
non-empty menu ``A`` has one out-edge per member ``x``, leading to
``A - {x}`` and weighted by the BM-polynomial ``q(x, A)``. Edges are
addressed as ``(A, x)`` pairs throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping

from rumid.core import (
    ZERO,
    ChoiceSystem,
    Mixture,
    Path,
    Universe,
    format_fraction,
    members,
    menu_sort_key,
    nonempty_menus,
    upper_contour_set,
)
from rumid.errors import DomainError, NotRationalizableError

Edge = tuple[int, int]


def _check_member(x: int, menu: int) -> None:
    if not menu >> x & 1:
        raise DomainError(f"alternative {x} is not in menu {menu:#b}")


def _strict_supersets(menu: int, full: int) -> Iterator[int]:
    rest = full & ~menu
    sub = rest
    while sub:
        yield menu | sub
        sub = (sub - 1) & rest


def bm_table(sys: ChoiceSystem) -> dict[Edge, Fraction]:
    """Every BM-polynomial, computed top-down by the defining recursion.

    Menus are visited by decreasing cardinality, so when ``q(x, A)`` is
    computed every ``q(x, A')`` with ``A ⊊ A'`` is already in the table.
    """
    full = sys.universe.full
    q: dict[Edge, Fraction] = {}
    for menu in nonempty_menus(sys.universe.n):
        for x in members(menu):
            above = sum((q[(sup, x)] for sup in _strict_supersets(menu, full)), ZERO)
            q[(menu, x)] = sys.p(menu, x) - above
    return q


def bm_mobius(sys: ChoiceSystem, x: int, menu: int) -> Fraction:
    """Alternating superset sum ``Σ_{A ⊆ A'} (-1)^|A' - A| P_A'(x)``."""
    _check_member(x, menu)
    full = sys.universe.full
    total = sys.p(menu, x)
    for sup in _strict_supersets(menu, full):
        term = sys.p(sup, x)
        total += -term if bin(sup ^ menu).count("1") & 1 else term
    return total


def bm_polynomial(sys: ChoiceSystem, x: int, menu: int, method: str = "recursive") -> Fraction:
    """BM-polynomial ``q(x, A)``.

    Args:
        sys: a complete choice system.
        x: alternative index, must belong to ``menu``.
        menu: non-empty bit set.
        method: ``"recursive"`` (memoized top-down recursion) or ``"mobius"``
            (direct alternating sum).
    """
    _check_member(x, menu)
    if method == "mobius":
        return bm_mobius(sys, x, menu)
    if method != "recursive":
        raise DomainError(f"unknown method {method!r}")
    memo: dict[Edge, Fraction] = {}
    full = sys.universe.full

    def q(a: int) -> Fraction:
        if (a, x) not in memo:
            memo[(a, x)] = sys.p(a, x) - sum((q(sup) for sup in _strict_supersets(a, full)), ZERO)
        return memo[(a, x)]

    return q(menu)


def contour_mass(mix: Mixture, x: int, menu: int) -> Fraction:
    """Weight of orders ranking all of ``X - A`` above ``x`` and ``x`` above ``A - {x}``."""
    _check_member(x, menu)
    target = (mix.universe.full & ~menu) | (1 << x)
    return sum((w for order, w in mix.atoms.items() if upper_contour_set(order, x) == target), ZERO)


@dataclass(frozen=True)
class FlowDiagram:
    """Subset lattice with BM-polynomial edge weights.

    ``weights[(A, x)]`` is the weight on the edge ``A -> A - {x}``; all
    ``n * 2^(n-1)`` edges are stored, zero and negative ones included.
    """

    universe: Universe
    weights: Mapping[Edge, Fraction]

    @property
    def n(self) -> int:
        return self.universe.n

    @property
    def full(self) -> int:
        return self.universe.full

    def weight(self, menu: int, x: int) -> Fraction:
        return self.weights[(menu, x)]

    def edges(self) -> list[Edge]:
        """All edges in canonical order."""
        return [(menu, x) for menu in nonempty_menus(self.n) for x in members(menu)]

    def out_edges(self, menu: int) -> list[Edge]:
        return [(menu, x) for x in members(menu)]

    def in_edges(self, menu: int) -> list[Edge]:
        return [(menu | 1 << y, y) for y in members(self.full & ~menu)]

    def positive_children(self, menu: int) -> list[int]:
        """Removed indices ``x`` with ``q(x, menu) > 0``, ascending."""
        return [x for x in members(menu) if self.weights[(menu, x)] > 0]

    def positive_parents(self, menu: int) -> list[int]:
        """Added indices ``y`` with ``q(y, menu + y) > 0``, ascending."""
        return [y for y in members(self.full & ~menu) if self.weights[(menu | 1 << y, y)] > 0]

    def inflow(self, menu: int) -> Fraction:
        return sum((self.weights[e] for e in self.in_edges(menu)), ZERO)

    def outflow(self, menu: int) -> Fraction:
        return sum((self.weights[e] for e in self.out_edges(menu)), ZERO)

    def conservation_violations(self) -> list[tuple[int, Fraction, Fraction]]:
        """Nodes whose inflow and outflow disagree, as ``(node, inflow, outflow)``.

        The full set must emit exactly 1 and the empty set absorb exactly 1.
        """
        bad = []
        for menu in range(1 << self.n):
            inflow = self.inflow(menu) if menu != self.full else Fraction(1)
            outflow = self.outflow(menu) if menu else Fraction(1)
            if inflow != outflow:
                bad.append((menu, inflow, outflow))
        return bad

    def first_negative(self) -> tuple[int, int, Fraction] | None:
        """Lexicographically first ``(x, A, q)`` with ``q < 0``."""
        for menu, x in self.edges():
            value = self.weights[(menu, x)]
            if value < 0:
                return (x, menu, value)
        return None

    def require_nonnegative(self) -> None:
        bad = self.first_negative()
        if bad is not None:
            x, menu, value = bad
            raise NotRationalizableError(
                x, menu, value,
                f"not rationalizable: q({self.universe.labels[x]}, {self.universe.format_menu(menu)}) = {value}",
            )

    def reduced(self) -> ReducedDiagram:
        return reduced_diagram(self)

    def to_dot(self, reduced: bool = True) -> str:
        return to_dot(self, reduced=reduced)


def build_flow_diagram(sys: ChoiceSystem) -> FlowDiagram:
    return FlowDiagram(sys.universe, bm_table(sys))


@dataclass(frozen=True)
class Rationalizability:
    rationalizable: bool
    violation: tuple[int, int, Fraction] | None = None

    def __bool__(self) -> bool:
        return self.rationalizable


def is_rationalizable(sys: ChoiceSystem | FlowDiagram) -> Rationalizability:
    """Falmagne's test: every BM-polynomial is non-negative.

    The reported violation is the first ``(x, A, q)`` under the canonical
    menu order (size descending, bit pattern ascending), then by index.
    """
    diag = sys if isinstance(sys, FlowDiagram) else build_flow_diagram(sys)
    bad = diag.first_negative()
    return Rationalizability(bad is None, bad)


def path_supported(diag: FlowDiagram, path: Path) -> bool:
    if path.n != diag.n:
        raise DomainError("path and diagram have different universes")
    return all(diag.weights[e] > 0 for e in path.edges())


@dataclass(frozen=True)
class ReducedDiagram:
    """Filtered view of a diagram keeping only strictly positive edges."""

    diagram: FlowDiagram

    @cached_property
    def edges(self) -> list[Edge]:
        return [e for e in self.diagram.edges() if self.diagram.weights[e] > 0]

    @cached_property
    def nodes(self) -> list[int]:
        seen = set()
        for menu, x in self.edges:
            seen.add(menu)
            seen.add(menu & ~(1 << x))
        return sorted(seen, key=menu_sort_key)

    def weight(self, menu: int, x: int) -> Fraction:
        return self.diagram.weights[(menu, x)]


def reduced_diagram(diag: FlowDiagram) -> ReducedDiagram:
    diag.require_nonnegative()
    return ReducedDiagram(diag)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(diag: FlowDiagram, reduced: bool = True) -> str:
    """Graphviz source; ``reduced=False`` draws every edge including zeros."""
    if reduced:
        view = reduced_diagram(diag)
        nodes, edges = view.nodes, view.edges
    else:
        nodes = sorted(range(1 << diag.n), key=menu_sort_key)
        edges = diag.edges()
    lines = ["digraph flow {", "  rankdir=TB;", "  node [shape=box];"]
    for menu in nodes:
        lines.append(f"  n{menu} [label={_dot_quote(diag.universe.format_menu(menu))}];")
    for menu, x in edges:
        w = diag.weights[(menu, x)]
        lines.append(f"  n{menu} -> n{menu & ~(1 << x)} [label={_dot_quote(format_fraction(w))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

