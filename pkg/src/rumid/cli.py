"""Command-line interface.

Machine-readable JSON goes to stdout (or ``-o``), a one-line human summary to
stderr. Exit codes: 0 success (any verdict), 2 malformed input, 3 input not
rationalizable where that is required, 4 cap exceeded or refusal.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path as FilePath
from typing import Any, Callable, Sequence

from rumid import serialize as ser
from rumid.core import ChoiceSystem, Mixture, format_fraction, induce_choice_system, order_to_path
from rumid.decomposition import (
    DEFAULT_ORDERING_CAP,
    alternative_representations,
    enumerate_representations,
    greedy_representation,
    scrum_check,
)
from rumid.errors import CapExceededError, DomainError, NotRationalizableError, ParseError
from rumid.flow import build_flow_diagram, is_rationalizable, to_dot
from rumid.identification import is_unique, support_identified, theorem2_check

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_NOT_RATIONALIZABLE = 3
EXIT_REFUSED = 4

log = logging.getLogger("rumid")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _load_mixture(args: argparse.Namespace) -> Mixture:
    return ser.mixture_from_dict(ser.loads(_read(args.dist)), args.denominator)


def _load_system(args: argparse.Namespace) -> ChoiceSystem:
    return ser.system_from_dict(ser.loads(_read(args.system)), args.denominator)


def _emit(doc: Any, out: str | None = None) -> None:
    text = ser.dumps(doc) if not isinstance(doc, str) else doc
    if out and out != "-":
        FilePath(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _say(message: str) -> None:
    print(message, file=sys.stderr)


def cmd_induce(args: argparse.Namespace) -> int:
    mix = _load_mixture(args)
    _emit(ser.system_to_dict(induce_choice_system(mix)), args.output)
    _say(f"induced choice system on {mix.universe.n} alternatives from {len(mix.atoms)} orders")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    sys_ = _load_system(args)
    verdict = is_rationalizable(sys_)
    doc: dict[str, Any] = {"rationalizable": verdict.rationalizable}
    if verdict.violation is not None:
        x, menu, value = verdict.violation
        u = sys_.universe
        doc["violation"] = {"x": u.labels[x], "menu": u.menu_labels(menu), "q": format_fraction(value)}
        _say(f"not rationalizable: q({u.labels[x]}, {u.format_menu(menu)}) = {format_fraction(value)}")
        _emit(doc)
        return EXIT_NOT_RATIONALIZABLE
    _say("rationalizable: every BM-polynomial is non-negative")
    _emit(doc)
    return EXIT_OK


def cmd_unique(args: argparse.Namespace) -> int:
    sys_ = _load_system(args)
    verdict = is_unique(sys_)
    doc: dict[str, Any] = {"unique": verdict.unique}
    if verdict.witness is not None:
        doc["witness"] = ser.branching_witness_to_dict(sys_.universe, verdict.witness)
    if args.oracle:
        from rumid.oracle import exhaustive_uniqueness

        assert verdict.diagram is not None
        doc["oracle_unique"] = exhaustive_uniqueness(verdict.diagram)
    _say("unique representation" if verdict.unique else "representation is NOT unique")
    _emit(doc)
    return EXIT_OK


def cmd_theorem2(args: argparse.Namespace) -> int:
    mix = _load_mixture(args)
    verdict = theorem2_check(mix)
    doc: dict[str, Any] = {"unique": verdict.unique}
    if verdict.witness is not None:
        doc["witness"] = ser.contour_witness_to_dict(mix.universe, verdict.witness)
    _say("unique representation" if verdict.unique else "representation is NOT unique")
    _emit(doc)
    return EXIT_OK


def cmd_support(args: argparse.Namespace) -> int:
    sys_ = _load_system(args)
    verdict = support_identified(sys_)
    doc: dict[str, Any] = {"identified": verdict.identified}
    if verdict.representations is not None:
        doc["representations"] = [ser.mixture_to_dict(m) for m in verdict.representations]
    _say("support identified" if verdict.identified else "support NOT identified")
    _emit(doc)
    return EXIT_OK


def cmd_represent(args: argparse.Namespace) -> int:
    sys_ = _load_system(args)
    diag = build_flow_diagram(sys_)
    seed = None
    if args.seed_order:
        seed = order_to_path(ser.parse_order_flag(sys_.universe, args.seed_order))
    mix, trace = greedy_representation(diag, seed=seed)
    doc: dict[str, Any] = {"representation": ser.mixture_to_dict(mix)}
    if args.trace:
        doc["trace"] = ser.trace_to_list(sys_.universe, trace)
    _say(f"representation with {len(mix.atoms)} orders")
    _emit(doc, args.output)
    return EXIT_OK


def cmd_alternatives(args: argparse.Namespace) -> int:
    sys_ = _load_system(args)
    verdict = is_unique(sys_)
    if verdict.unique:
        _say("representation is unique: no alternative exists")
        _emit({"unique": True})
        return EXIT_OK
    assert verdict.diagram is not None and verdict.witness is not None
    nu1, nu2 = alternative_representations(verdict.diagram, verdict.witness)
    if args.out1:
        _emit(ser.mixture_to_dict(nu1), args.out1)
    if args.out2:
        _emit(ser.mixture_to_dict(nu2), args.out2)
    _say("two representations with different supports")
    _emit({"unique": False, "nu1": ser.mixture_to_dict(nu1), "nu2": ser.mixture_to_dict(nu2)})
    return EXIT_OK


def cmd_extreme(args: argparse.Namespace) -> int:
    sys_ = _load_system(args)
    result = enumerate_representations(build_flow_diagram(sys_), cap=args.cap, rng_seed=args.rng_seed)
    _say(
        f"{len(result.representations)} distinct representations from {result.orderings_tried} orderings"
        f" of {result.supported_path_count} supported paths"
        + ("" if result.exhaustive else " (sampled)")
    )
    _emit(ser.enumeration_to_dict(result), args.output)
    return EXIT_OK


def cmd_scrum(args: argparse.Namespace) -> int:
    mix = _load_mixture(args)
    exo = ser.parse_order_flag(mix.universe, args.order)
    verdict = scrum_check(mix, exo)
    _say("single crossing" if verdict.single_crossing else "NOT single crossing")
    _emit(ser.scrum_to_dict(mix.universe, verdict))
    return EXIT_OK


def cmd_dot(args: argparse.Namespace) -> int:
    sys_ = _load_system(args)
    _emit(to_dot(build_flow_diagram(sys_), reduced=args.reduced), args.output)
    _say("wrote reduced flow diagram" if args.reduced else "wrote full flow diagram")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rumid", description="Identification tools for the random utility model.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    parser.add_argument(
        "--denominator", type=int, default=None,
        help="accept bare JSON floats, rounding them to multiples of 1/DENOMINATOR",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable[[argparse.Namespace], int], help_: str, *, dist: bool = False,
            system: bool = False, output: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        if dist:
            p.add_argument("--dist", required=True, help="mixture JSON file, or - for stdin")
        if system:
            p.add_argument("--system", required=True, help="choice system JSON file, or - for stdin")
        if output:
            p.add_argument("-o", "--output", default=None, help="write to FILE instead of stdout")
        p.set_defaults(func=func)
        return p

    add("induce", cmd_induce, "choice system induced by a mixture", dist=True, output=True)
    add("check", cmd_check, "rationalizability test", system=True)
    p = add("unique", cmd_unique, "uniqueness via branching paths", system=True)
    p.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)
    add("theorem2", cmd_theorem2, "uniqueness via upper contour sets of a given mixture", dist=True)
    add("support", cmd_support, "is the support of the representation identified", system=True)
    p = add("represent", cmd_represent, "greedy path-flow representation", system=True, output=True)
    p.add_argument("--seed-order", default=None, help="comma-separated order to assign first")
    p.add_argument("--trace", action="store_true", help="include the decomposition steps")
    p = add("alternatives", cmd_alternatives, "two representations with different supports", system=True)
    p.add_argument("--out1", default=None, help="also write the first mixture to FILE")
    p.add_argument("--out2", default=None, help="also write the second mixture to FILE")
    p = add("extreme", cmd_extreme, "candidate extreme-point representations", system=True, output=True)
    p.add_argument("--cap", type=int, default=DEFAULT_ORDERING_CAP, help="maximum number of path orderings")
    p.add_argument("--rng-seed", type=int, default=0, help="seed for sampled orderings")
    p = add("scrum", cmd_scrum, "single-crossing test against an exogenous order", dist=True)
    p.add_argument("--order", required=True, help="exogenous order, comma-separated")
    p = add("dot", cmd_dot, "Graphviz export of the flow diagram", system=True, output=True)
    p.add_argument("--reduced", action="store_true", help="keep only positive edges and their nodes")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except NotRationalizableError as exc:
        _say(str(exc))
        return EXIT_NOT_RATIONALIZABLE
    except CapExceededError as exc:
        _say(f"refused: {exc}")
        return EXIT_REFUSED
    except (ParseError, DomainError) as exc:
        _say(f"error: {exc}")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
