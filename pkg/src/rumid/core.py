"""Ground types: universes, menus, linear orders, mixtures and choice systems.

Menus are plain ``int`` bit sets indexed by universe position, so
``{a, c}`` over ``(a, b, c)`` is ``0b101``. Every probability is a
:class:`fractions.Fraction`; nothing in the package touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Iterator, Mapping, Sequence

from rumid.errors import CapExceededError, DomainError

MAX_ALTERNATIVES = 16

ZERO = Fraction(0)
ONE = Fraction(1)


# -- bit set helpers ---------------------------------------------------------


def members(mask: int) -> list[int]:
    """Indices set in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def size(mask: int) -> int:
    return bin(mask).count("1")


def menu_sort_key(mask: int) -> tuple[int, int]:
    """Canonical menu order: cardinality descending, then bit pattern ascending."""
    return (-size(mask), mask)


def nonempty_menus(n: int) -> list[int]:
    """All non-empty subsets of an ``n``-element universe in canonical order."""
    return sorted(range(1, 1 << n), key=menu_sort_key)


def subsets_of_size(n: int, k: int) -> Iterator[int]:
    for combo in combinations(range(n), k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        yield mask


def format_fraction(value: Fraction) -> str:
    """``"p/q"`` in lowest terms, or ``"p"`` for integers."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


# -- universe ----------------------------------------------------------------


@dataclass(frozen=True)
class Universe:
    """Finite ordered set of named alternatives."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not 1 <= len(labels) <= MAX_ALTERNATIVES:
            raise CapExceededError(
                f"universe must have between 1 and {MAX_ALTERNATIVES} alternatives, got {len(labels)}"
            )
        for label in labels:
            if not isinstance(label, str) or not label:
                raise DomainError(f"alternative labels must be non-empty strings, got {label!r}")
        if len(set(labels)) != len(labels):
            raise DomainError(f"duplicate alternative labels in {labels}")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        """Bit set of the whole universe."""
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"unknown alternative {label!r}") from None

    def menu(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            bit = 1 << self.index(label)
            if mask & bit:
                raise DomainError(f"alternative {label!r} listed twice in menu")
            mask |= bit
        return mask

    def menu_labels(self, mask: int) -> list[str]:
        return [self.labels[i] for i in members(mask)]

    def format_menu(self, mask: int) -> str:
        return "{" + ",".join(self.menu_labels(mask)) + "}"

    def order(self, labels: Sequence[str]) -> LinearOrder:
        return LinearOrder(tuple(self.index(label) for label in labels), self.n)

    def order_labels(self, order: LinearOrder) -> list[str]:
        return [self.labels[i] for i in order.ranking]

    def format_order(self, order: LinearOrder) -> str:
        return "≻".join(self.order_labels(order))


# -- linear orders and paths -------------------------------------------------


@dataclass(frozen=True, order=True)
class LinearOrder:
    """Strict total order stored as a ranking of indices, best first.

    Orders compare lexicographically by ranking, which is the scan order
    used wherever the package needs a deterministic tie-break.
    """

    ranking: tuple[int, ...]
    n: int = field(default=-1, compare=False)

    def __post_init__(self) -> None:
        ranking = tuple(self.ranking)
        object.__setattr__(self, "ranking", ranking)
        if self.n == -1:
            object.__setattr__(self, "n", len(ranking))
        if sorted(ranking) != list(range(self.n)):
            raise DomainError(f"ranking {ranking} is not a permutation of range({self.n})")

    def __len__(self) -> int:
        return len(self.ranking)

    def position(self, x: int) -> int:
        """Rank of ``x``; 0 is the top."""
        return self.ranking.index(x)

    def prefers(self, x: int, y: int) -> bool:
        return self.position(x) < self.position(y)


@dataclass(frozen=True)
class Path:
    """Maximal chain ``X = A_0 ⊋ A_1 ⊋ ... ⊋ A_n = ∅`` of the subset lattice."""

    nodes: tuple[int, ...]

    def __post_init__(self) -> None:
        nodes = tuple(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        n = len(nodes) - 1
        if n < 1 or nodes[0] != (1 << n) - 1 or nodes[-1] != 0:
            raise DomainError(f"path must run from the full set to the empty set: {nodes}")
        for upper, lower in zip(nodes, nodes[1:]):
            diff = upper ^ lower
            if lower & ~upper or diff & (diff - 1):
                raise DomainError(f"path step {upper:#b} -> {lower:#b} does not remove exactly one element")

    @property
    def n(self) -> int:
        return len(self.nodes) - 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(source_set, removed_index)`` pairs, top to bottom."""
        return [(upper, (upper ^ lower).bit_length() - 1) for upper, lower in zip(self.nodes, self.nodes[1:])]


def order_to_path(order: LinearOrder) -> Path:
    """Chain obtained by deleting the best remaining alternative at each step."""
    current = (1 << order.n) - 1
    nodes = [current]
    for x in order.ranking:
        current &= ~(1 << x)
        nodes.append(current)
    return Path(tuple(nodes))


def path_to_order(path: Path) -> LinearOrder:
    return LinearOrder(tuple(x for _, x in path.edges()), path.n)


def best_in_menu(order: LinearOrder, menu: int) -> int:
    """The highest-ranked member of ``menu``."""
    if not menu:
        raise DomainError("best_in_menu: empty menu")
    for x in order.ranking:
        if menu >> x & 1:
            return x
    raise DomainError(f"menu {menu:#b} is outside the universe of the order")


def upper_contour_set(order: LinearOrder, x: int) -> int:
    """Weak upper contour set of ``x``: everything ranked at or above it."""
    mask = 0
    for y in order.ranking:
        mask |= 1 << y
        if y == x:
            return mask
    raise DomainError(f"alternative {x} is not ranked by the order")


# -- mixtures ----------------------------------------------------------------


def _as_fraction(value: object) -> Fraction:
    if isinstance(value, float):
        raise DomainError("floats are not accepted; convert at the parsing boundary")
    return Fraction(value)  # type: ignore[arg-type]


@dataclass(frozen=True)
class Mixture:
    """Finitely supported distribution over linear orders.

    Zero weights are dropped on construction and the remaining weights must
    be positive and sum to exactly one.
    """

    universe: Universe
    atoms: Mapping[LinearOrder, Fraction]

    def __post_init__(self) -> None:
        cleaned: dict[LinearOrder, Fraction] = {}
        for order, weight in self.atoms.items():
            if order.n != self.universe.n:
                raise DomainError(f"order {order.ranking} does not match universe size {self.universe.n}")
            weight = _as_fraction(weight)
            if weight < 0:
                raise DomainError(f"negative weight {weight} on {order.ranking}")
            if weight:
                cleaned[order] = cleaned.get(order, ZERO) + weight
        total = sum(cleaned.values(), ZERO)
        if total != 1:
            raise DomainError(f"mixture weights sum to {total}, not 1")
        object.__setattr__(self, "atoms", dict(sorted(cleaned.items())))

    @classmethod
    def point_mass(cls, universe: Universe, order: LinearOrder) -> Mixture:
        return cls(universe, {order: ONE})

    @classmethod
    def from_labels(cls, universe: Universe, weighted: Iterable[tuple[Sequence[str], object]]) -> Mixture:
        atoms: dict[LinearOrder, Fraction] = {}
        for labels, weight in weighted:
            order = universe.order(labels)
            atoms[order] = atoms.get(order, ZERO) + _as_fraction(weight)
        return cls(universe, atoms)

    @property
    def support(self) -> frozenset[LinearOrder]:
        return frozenset(self.atoms)

    def weight(self, order: LinearOrder) -> Fraction:
        return self.atoms.get(order, ZERO)

    def key(self) -> tuple:
        """Hashable canonical form, usable for deduplication."""
        return (self.universe.labels, tuple((o.ranking, w) for o, w in self.atoms.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mixture):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def combine(self, other: Mixture, t: Fraction) -> Mixture:
        """The convex combination ``t*self + (1 - t)*other``."""
        t = _as_fraction(t)
        if not 0 <= t <= 1:
            raise DomainError(f"mixing weight {t} outside [0, 1]")
        atoms: dict[LinearOrder, Fraction] = {}
        for order, w in self.atoms.items():
            atoms[order] = atoms.get(order, ZERO) + t * w
        for order, w in other.atoms.items():
            atoms[order] = atoms.get(order, ZERO) + (1 - t) * w
        return Mixture(self.universe, atoms)


# -- choice systems ----------------------------------------------------------


@dataclass(frozen=True)
class ChoiceSystem:
    """Choice probabilities ``P_A(x)`` on every non-empty menu.

    ``probs`` maps ``(menu, x)`` to a fraction. Construction checks that the
    domain is complete, every value lies in [0, 1] and each menu sums to 1.
    """

    universe: Universe
    probs: Mapping[tuple[int, int], Fraction]

    def __post_init__(self) -> None:
        n = self.universe.n
        probs: dict[tuple[int, int], Fraction] = {}
        for (menu, x), p in self.probs.items():
            if not 0 < menu < 1 << n or not menu >> x & 1:
                raise DomainError(f"entry ({menu:#b}, {x}) is not an alternative of a non-empty menu")
            p = _as_fraction(p)
            if not 0 <= p <= 1:
                raise DomainError(f"P_{menu:#b}({x}) = {p} outside [0, 1]")
            probs[(menu, x)] = p
        for menu in range(1, 1 << n):
            total = ZERO
            for x in members(menu):
                if (menu, x) not in probs:
                    raise DomainError(f"missing P_{self.universe.format_menu(menu)}({self.universe.labels[x]})")
                total += probs[(menu, x)]
            if total != 1:
                raise DomainError(f"probabilities on {self.universe.format_menu(menu)} sum to {total}")
        object.__setattr__(self, "probs", probs)

    def p(self, menu: int, x: int) -> Fraction:
        return self.probs[(menu, x)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChoiceSystem):
            return NotImplemented
        return self.universe == other.universe and self.probs == other.probs

    def __hash__(self) -> int:
        return hash((self.universe, frozenset(self.probs.items())))


def induce_choice_system(mix: Mixture) -> ChoiceSystem:
    """Choice probabilities generated by drawing an order and choosing its best."""
    n = mix.universe.n
    probs: dict[tuple[int, int], Fraction] = {}
    for menu in range(1, 1 << n):
        for x in members(menu):
            probs[(menu, x)] = ZERO
    for order, weight in mix.atoms.items():
        for menu in range(1, 1 << n):
            x = best_in_menu(order, menu)
            probs[(menu, x)] += weight
    return ChoiceSystem(mix.universe, probs)


def all_orders(n: int) -> Iterator[LinearOrder]:
    """Every linear order on ``n`` alternatives, in lexicographic order."""
    for ranking in permutations(range(n)):
        yield LinearOrder(ranking, n)
