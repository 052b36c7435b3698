import random

import pytest

from rumid import (
    CapExceededError,
    Universe,
    build_flow_diagram,
    find_branching_pair,
    induce_choice_system,
    order_to_path,
)
from rumid.core import path_to_order
from rumid.oracle import (
    all_paths,
    branching_by_definition,
    exhaustive_uniqueness,
    point_masses,
    random_mixture,
    uniform_mixture,
)


def test_all_paths_counts():
    assert len(all_paths(3)) == 6
    assert len(all_paths(Universe(tuple("abcd")))) == 24
    assert path_to_order(all_paths(3)[0]).ranking == (0, 1, 2)
    with pytest.raises(CapExceededError):
        all_paths(7)


def test_branching_by_definition_examples(abcd):
    p = order_to_path(abcd.order("abcd"))
    q = order_to_path(abcd.order("badc"))
    assert branching_by_definition(p, q)
    assert not branching_by_definition(p, p)
    u = Universe(tuple("abc"))
    assert not branching_by_definition(order_to_path(u.order("abc")), order_to_path(u.order("bac")))


def test_exhaustive_uniqueness_examples(fishburn_diagram):
    assert not exhaustive_uniqueness(fishburn_diagram)
    assert exhaustive_uniqueness(build_flow_diagram(induce_choice_system(point_masses(4)[5])))
    assert not exhaustive_uniqueness(build_flow_diagram(induce_choice_system(uniform_mixture(4))))


def test_exhaustive_uniqueness_refuses_large():
    rng = random.Random(0)
    diag = build_flow_diagram(induce_choice_system(random_mixture(rng, 6, max_support=2)))
    with pytest.raises(CapExceededError):
        exhaustive_uniqueness(diag)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_detector_matches_oracle(n):
    rng = random.Random(50 + n)
    for _ in range(60):
        diag = build_flow_diagram(induce_choice_system(random_mixture(rng, n)))
        assert (find_branching_pair(diag) is None) == exhaustive_uniqueness(diag)


def test_random_mixture_is_deterministic():
    a = random_mixture(random.Random(9), 5)
    b = random_mixture(random.Random(9), 5)
    assert a == b
    assert 1 <= len(a.atoms) <= 8
    assert all(w.denominator > 0 for w in a.atoms.values())
