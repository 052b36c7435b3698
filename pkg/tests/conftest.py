from fractions import Fraction

import pytest

from rumid import ChoiceSystem, Mixture, Universe, build_flow_diagram, induce_choice_system

HALF = Fraction(1, 2)


def mixture(labels, *weighted):
    """``mixture("abcd", ("abcd", "1/2"), ...)`` with orders given as strings."""
    universe = Universe(tuple(labels))
    return Mixture.from_labels(universe, [(list(order), w) for order, w in weighted])


@pytest.fixture
def abcd():
    return Universe(("a", "b", "c", "d"))


@pytest.fixture
def nu1():
    return mixture("abcd", ("abcd", HALF), ("badc", HALF))


@pytest.fixture
def nu2():
    return mixture("abcd", ("abdc", HALF), ("bacd", HALF))


@pytest.fixture
def fishburn(nu1):
    return induce_choice_system(nu1)


@pytest.fixture
def fishburn_diagram(fishburn):
    return build_flow_diagram(fishburn)


def violator_system() -> ChoiceSystem:
    """P_{abc}(a) = 1 but P_{ab}(a) = 0: q(a, {a,b}) = 0 - 1 = -1."""
    u = Universe(("a", "b", "c"))
    m = u.menu
    probs = {
        (m("abc"), 0): 1, (m("abc"), 1): 0, (m("abc"), 2): 0,
        (m("ab"), 0): 0, (m("ab"), 1): 1,
        (m("ac"), 0): 1, (m("ac"), 2): 0,
        (m("bc"), 1): 1, (m("bc"), 2): 0,
        (m("a"), 0): 1, (m("b"), 1): 1, (m("c"), 2): 1,
    }
    return ChoiceSystem(u, probs)
