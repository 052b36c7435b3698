"""JSON file formats for mixtures, choice systems, witnesses and traces.

Rationals travel as strings, ``"p/q"`` in lowest terms or ``"p"`` for
integers. Decimal strings such as ``"0.25"`` are read exactly. Bare JSON
floats are only accepted together with a declared denominator, and are
rounded to the nearest multiple of ``1/denominator``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from rumid.core import (
    ChoiceSystem,
    LinearOrder,
    Mixture,
    Universe,
    format_fraction,
    members,
    nonempty_menus,
    path_to_order,
)
from rumid.decomposition import DecompositionTrace, Enumeration, ScrumVerdict
from rumid.errors import DomainError, ParseError
from rumid.identification import BranchingWitness, ContourWitness


def parse_rational(value: Any, denominator: int | None = None) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if denominator is None:
            raise ParseError(f"float {value!r} needs a declared denominator")
        return Fraction(round(value * denominator), denominator)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {value!r}") from None
    raise ParseError(f"not a rational: {value!r}")


def _universe(doc: dict) -> Universe:
    labels = doc.get("alternatives")
    if not isinstance(labels, list):
        raise ParseError('missing "alternatives" list')
    try:
        return Universe(tuple(labels))
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def _denominator(doc: dict, denominator: int | None) -> int | None:
    declared = doc.get("denominator", denominator)
    if declared is not None and (not isinstance(declared, int) or declared <= 0):
        raise ParseError(f"bad denominator {declared!r}")
    return declared


def mixture_from_dict(doc: Any, denominator: int | None = None) -> Mixture:
    if not isinstance(doc, dict):
        raise ParseError("mixture file must be a JSON object")
    universe = _universe(doc)
    denominator = _denominator(doc, denominator)
    atoms = doc.get("atoms")
    if not isinstance(atoms, list):
        raise ParseError('missing "atoms" list')
    weighted = {}
    try:
        for atom in atoms:
            order = universe.order(atom["order"])
            if order in weighted:
                raise ParseError(f"order {atom['order']} listed twice")
            weighted[order] = parse_rational(atom["weight"], denominator)
        return Mixture(universe, weighted)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed atom: {exc}") from exc
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def mixture_to_dict(mix: Mixture) -> dict:
    u = mix.universe
    return {
        "alternatives": list(u.labels),
        "atoms": [{"order": u.order_labels(o), "weight": format_fraction(w)} for o, w in mix.atoms.items()],
    }


def system_from_dict(doc: Any, denominator: int | None = None) -> ChoiceSystem:
    if not isinstance(doc, dict):
        raise ParseError("choice system file must be a JSON object")
    universe = _universe(doc)
    denominator = _denominator(doc, denominator)
    menus = doc.get("menus")
    if not isinstance(menus, list):
        raise ParseError('missing "menus" list')
    probs: dict[tuple[int, int], Fraction] = {}
    seen: set[int] = set()
    try:
        for entry in menus:
            menu = universe.menu(entry["menu"])
            if not menu:
                raise ParseError("empty menu")
            if menu in seen:
                raise ParseError(f"menu {entry['menu']} listed twice")
            seen.add(menu)
            listed = entry["probs"]
            if not isinstance(listed, dict):
                raise ParseError(f"probs of menu {entry['menu']} must be an object")
            for label, value in listed.items():
                x = universe.index(label)
                if not menu >> x & 1:
                    raise ParseError(f"{label!r} is not in menu {entry['menu']}")
                probs[(menu, x)] = parse_rational(value, denominator)
        if len(seen) != (1 << universe.n) - 1:
            missing = [universe.format_menu(m) for m in nonempty_menus(universe.n) if m not in seen]
            raise ParseError(f"missing menus: {', '.join(missing[:5])}{' ...' if len(missing) > 5 else ''}")
        return ChoiceSystem(universe, probs)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed menu entry: {exc}") from exc
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def system_to_dict(sys: ChoiceSystem) -> dict:
    u = sys.universe
    return {
        "alternatives": list(u.labels),
        "menus": [
            {
                "menu": u.menu_labels(menu),
                "probs": {u.labels[x]: format_fraction(sys.p(menu, x)) for x in members(menu)},
            }
            for menu in nonempty_menus(u.n)
        ],
    }


def dumps(doc: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def branching_witness_to_dict(universe: Universe, w: BranchingWitness) -> dict:
    rho, rho_p, rho2, rho3 = w.orders()
    return {
        "rho": universe.order_labels(rho),
        "rho_prime": universe.order_labels(rho_p),
        "rho2": universe.order_labels(rho2),
        "rho3": universe.order_labels(rho3),
        "merge_node": universe.menu_labels(w.merge_node),
        "split_node": universe.menu_labels(w.split_node),
        "in_edges": [{"from": universe.menu_labels(a), "remove": universe.labels[x]} for a, x in w.in_edges],
        "out_edges": [{"from": universe.menu_labels(a), "remove": universe.labels[x]} for a, x in w.out_edges],
    }


def contour_witness_to_dict(universe: Universe, w: ContourWitness) -> dict:
    label = universe.labels
    return {
        "pi": universe.order_labels(w.pi),
        "pi_prime": universe.order_labels(w.pi_prime),
        "x": label[w.x],
        "y": label[w.y],
        "z": label[w.z],
    }


def trace_to_list(universe: Universe, trace: DecompositionTrace) -> list[dict]:
    return [
        {"order": universe.order_labels(path_to_order(p)), "flow": format_fraction(f)}
        for p, f in trace.steps
    ]


def enumeration_to_dict(e: Enumeration) -> dict:
    return {
        "representations": [mixture_to_dict(m) for m in e.representations],
        "vertex": list(e.vertex),
        "orderings_tried": e.orderings_tried,
        "exhaustive": e.exhaustive,
        "supported_paths": e.supported_path_count,
    }


def scrum_to_dict(universe: Universe, v: ScrumVerdict) -> dict:
    out: dict[str, Any] = {"single_crossing": v.single_crossing}
    if v.ordering is not None:
        out["ordering"] = [universe.order_labels(o) for o in v.ordering]
    if v.conflict is not None:
        pi, pp, pair, pair_p = v.conflict
        out["conflict"] = {
            "pi": universe.order_labels(pi),
            "pi_prime": universe.order_labels(pp),
            "pi_only_pair": [universe.labels[i] for i in pair],
            "pi_prime_only_pair": [universe.labels[i] for i in pair_p],
        }
    return out


def parse_order_flag(universe: Universe, text: str) -> LinearOrder:
    """``"a,b,c,d"`` to an order; every label exactly once."""
    labels = [s.strip() for s in text.split(",") if s.strip()]
    try:
        return universe.order(labels)
    except DomainError as exc:
        raise ParseError(f"bad order {text!r}: {exc}") from exc
