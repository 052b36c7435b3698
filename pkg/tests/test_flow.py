import random
from fractions import Fraction
from itertools import permutations

import pytest

from rumid import (
    DomainError,
    Mixture,
    NotRationalizableError,
    Universe,
    bm_polynomial,
    build_flow_diagram,
    contour_mass,
    induce_choice_system,
    is_rationalizable,
    order_to_path,
    path_supported,
    reduced_diagram,
)
from rumid.core import all_orders, members, nonempty_menus
from rumid.flow import bm_table, to_dot
from rumid.oracle import random_mixture, uniform_mixture

from conftest import HALF, violator_system


def test_bm_fishburn_positive_edges(fishburn, abcd):
    m, i = abcd.menu, abcd.index
    for method in ("recursive", "mobius"):
        assert bm_polynomial(fishburn, i("a"), m("acd"), method) == HALF
        assert bm_polynomial(fishburn, i("d"), m("cd"), method) == HALF


def test_bm_point_mass():
    u = Universe(("a", "b", "c"))
    sys = induce_choice_system(Mixture.point_mass(u, u.order("abc")))
    assert bm_polynomial(sys, 1, u.menu("bc")) == 1
    assert bm_polynomial(sys, 1, u.menu("abc")) == 0


def test_bm_uniform_top_of_full_set():
    # count orders with a on top, by enumeration
    expected = Fraction(sum(1 for p in permutations("abcd") if p[0] == "a"), 24)
    assert expected == Fraction(1, 4)
    sys = induce_choice_system(uniform_mixture(4))
    assert bm_polynomial(sys, 0, 0b1111) == expected


def test_bm_requires_membership(fishburn):
    with pytest.raises(DomainError):
        bm_polynomial(fishburn, 0, 0b1100)
    with pytest.raises(DomainError):
        bm_polynomial(fishburn, 0, 0b0011, method="nope")


def test_contour_mass_examples(nu1, abcd):
    m, i = abcd.menu, abcd.index
    assert contour_mass(nu1, i("c"), m("cd")) == HALF
    assert contour_mass(nu1, i("b"), m("abcd")) == HALF
    with pytest.raises(DomainError):
        contour_mass(nu1, i("a"), m("cd"))


def test_contour_mass_point_mass_is_indicator():
    u = Universe(("a", "b", "c", "d"))
    for order in all_orders(4):
        mix = Mixture.point_mass(u, order)
        for menu in nonempty_menus(4):
            for x in members(menu):
                above = [y for y in order.ranking[: order.position(x)]]
                in_m = set(above) == set(range(4)) - set(members(menu))
                assert contour_mass(mix, x, menu) == (1 if in_m else 0)


@pytest.mark.parametrize("seed", range(40))
def test_dual_forms_and_falmagne_identity(seed):
    rng = random.Random(seed)
    mix = random_mixture(rng, rng.randint(1, 5))
    sys = induce_choice_system(mix)
    table = bm_table(sys)
    for (menu, x), q in table.items():
        assert q == bm_polynomial(sys, x, menu, "mobius")
        assert q == contour_mass(mix, x, menu)
    assert bm_polynomial(sys, 0, sys.universe.full) == table[(sys.universe.full, 0)]


@pytest.mark.parametrize("seed", range(40))
def test_flow_conservation(seed):
    rng = random.Random(500 + seed)
    diag = build_flow_diagram(induce_choice_system(random_mixture(rng, rng.randint(1, 5))))
    assert diag.conservation_violations() == []
    assert diag.outflow(diag.full) == 1
    for menu in range(1, diag.full):
        assert sum(diag.weight(menu, x) for x in members(menu)) == diag.inflow(menu)


def test_conservation_holds_for_non_rationalizable_data():
    diag = build_flow_diagram(violator_system())
    assert diag.conservation_violations() == []


def test_diagram_shape_n3():
    u = Universe(("a", "b", "c"))
    diag = build_flow_diagram(induce_choice_system(Mixture.point_mass(u, u.order("abc"))))
    assert len(diag.edges()) == 12
    assert len({e[0] for e in diag.edges()} | {0}) == 8


def test_fishburn_reduced_diagram(fishburn_diagram, abcd):
    view = reduced_diagram(fishburn_diagram)
    assert len(view.nodes) == 7
    assert len(view.edges) == 8
    assert {view.weight(*e) for e in view.edges} == {HALF}
    m = abcd.menu
    assert set(view.nodes) == {m("abcd"), m("bcd"), m("acd"), m("cd"), m("c"), m("d"), 0}


def test_point_mass_reduced_is_chain():
    u = Universe(tuple("abcde"))
    order = u.order("cadbe")
    diag = build_flow_diagram(induce_choice_system(Mixture.point_mass(u, order)))
    view = reduced_diagram(diag)
    path = order_to_path(order)
    assert set(view.edges) == set(path.edges())
    assert view.nodes == list(path.nodes)
    assert all(diag.weight(*e) == 1 for e in view.edges)


def test_uniform_keeps_full_lattice():
    diag = build_flow_diagram(induce_choice_system(uniform_mixture(4)))
    view = reduced_diagram(diag)
    assert len(view.edges) == 4 * 2**3
    assert len(view.nodes) == 16


def test_rationalizability_verdicts(fishburn):
    assert is_rationalizable(fishburn)
    bad = is_rationalizable(violator_system())
    assert not bad
    x, menu, value = bad.violation
    assert (x, menu, value) == (0, 0b011, Fraction(-1))


def test_reduced_rejects_negative_weights():
    with pytest.raises(NotRationalizableError):
        reduced_diagram(build_flow_diagram(violator_system()))


def test_path_supported(fishburn_diagram, abcd):
    assert path_supported(fishburn_diagram, order_to_path(abcd.order("abcd")))
    assert not path_supported(fishburn_diagram, order_to_path(abcd.order("cabd")))


def test_point_mass_supports_only_its_path():
    u = Universe(("a", "b", "c", "d"))
    target = u.order("dbca")
    diag = build_flow_diagram(induce_choice_system(Mixture.point_mass(u, target)))
    for order in all_orders(4):
        assert path_supported(diag, order_to_path(order)) == (order == target)


@pytest.mark.parametrize("seed", range(30))
def test_support_atoms_have_supported_paths(seed):
    rng = random.Random(900 + seed)
    mix = random_mixture(rng, rng.randint(2, 5))
    diag = build_flow_diagram(induce_choice_system(mix))
    for order in mix.atoms:
        assert path_supported(diag, order_to_path(order))


def test_dot_export(fishburn_diagram):
    dot = to_dot(fishburn_diagram, reduced=True)
    assert dot.count("->") == 8
    assert dot.count("[label=") == 7 + 8
    assert '"{c,d}"' in dot and '"1/2"' in dot and '"{}"' in dot
    full = to_dot(fishburn_diagram, reduced=False)
    assert full.count("->") == 4 * 2**3
