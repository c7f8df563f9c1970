"""Command-line front end.

Subcommands: ``contexts build``, ``born``, ``sections search``,
``qubit table``, ``fixtures generate``. Observable files are JSON; outputs
are JSON (canonical key order) or CSV where the data is tabular. Exit
codes: 0 success, 1 I/O or parse failure, 2 domain validation failure,
3 numerical failure (iteration budget exhausted).

Flags ``--tol``, ``--eigengap``, ``--seed``, ``--format``, ``--out`` may
also be set through environment variables with the ``QBORN_`` prefix
(``QBORN_TOL``, ...); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from qborn.born import born_csv, born_report, born_table, coherence_check
from qborn.errors import NumericalError, QbornError, ValidationError
from qborn.fixtures import (
    fixture_from_json,
    fixture_to_json,
    mermin_peres_fixture,
    random_bloch_poset,
    random_commuting_fixture,
)
from qborn.linalg import Tolerance, matrix_from_json
from qborn.poset import build_poset, poset_from_json, poset_to_json
from qborn.qubit import bloch_unit, qubit_born_closed_form, qubit_context
from qborn.sections import count_report, report_to_json, search_global_section

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

BLOCH_NORM_ATOL = 1e-6


class ParseFailure(Exception):
    """File-level failure: unreadable, not JSON, or not the expected shape."""


@dataclass(frozen=True)
class RunConfig:
    tol: Tolerance
    seed: int
    format: str
    out: str | None


def _env_default(name: str, fallback):
    return os.environ.get(f"QBORN_{name}", fallback)


def _build_config(args) -> RunConfig:
    try:
        eps = float(args.tol if args.tol is not None else _env_default("TOL", 1e-9))
        eigengap = float(
            args.eigengap if args.eigengap is not None else _env_default("EIGENGAP", 1e-8)
        )
        seed = int(args.seed if args.seed is not None else _env_default("SEED", 0))
    except ValueError as exc:
        raise ValidationError(f"bad numeric option: {exc}") from exc
    fmt = str(args.format if args.format is not None else _env_default("FORMAT", "json"))
    if fmt not in ("json", "csv"):
        raise ValidationError(f"format must be 'json' or 'csv', got {fmt!r}")
    out = args.out if args.out is not None else _env_default("OUT", None)
    return RunConfig(Tolerance(eps=eps, eigengap=eigengap), seed, fmt, out)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{path} is not valid JSON: {exc}") from exc


def _parse_families(path: str, obj) -> list[list[np.ndarray]]:
    """A file holds one family ({'observables': [...]} or a bare list) or
    several (fixture files with 'families')."""
    try:
        if isinstance(obj, dict) and "families" in obj:
            return [list(fam) for fam in fixture_from_json(obj).families]
        if isinstance(obj, dict) and "observables" in obj:
            return [[matrix_from_json(m) for m in obj["observables"]]]
        if isinstance(obj, list):
            return [[matrix_from_json(m) for m in obj]]
    except (ValidationError, TypeError, KeyError) as exc:
        raise ParseFailure(f"{path} does not parse as observable families: {exc}") from exc
    raise ParseFailure(
        f"{path} must be a fixture object, an {{'observables': [...]}} object, or a list of matrices"
    )


def _emit(text: str, config: RunConfig) -> None:
    if config.out is None:
        sys.stdout.write(text)
    else:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit_json(obj, config: RunConfig) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", config)


def _cmd_contexts_build(args, config: RunConfig) -> int:
    families: list[list[np.ndarray]] = []
    for path in args.files:
        families.extend(_parse_families(path, _load_json(path)))
    if config.format != "json":
        raise ValidationError("contexts build emits JSON only")
    poset = build_poset(families, config.tol)
    _emit_json(poset_to_json(poset), config)
    return EXIT_OK


def _cmd_born(args, config: RunConfig) -> int:
    poset = poset_from_json(_load_json(args.poset), config.tol)
    for cid in (args.left, args.right):
        if cid not in poset.contexts:
            raise ValidationError(f"unknown context id {cid!r}")
    left = poset.get(args.left)
    right = poset.get(args.right)
    table = born_table(left, right, config.tol)
    if config.format == "csv":
        _emit(born_csv(table), config)
        return EXIT_OK
    report = born_report(table)
    if args.check_coherence:
        checks = []
        for clow in poset.ids():
            for dlow in poset.ids():
                if not (poset.leq(clow, args.left) and poset.leq(dlow, args.right)):
                    continue
                ok = coherence_check(
                    (left, right),
                    (poset.get(clow), poset.get(dlow)),
                    (poset.refinement(clow, args.left), poset.refinement(dlow, args.right)),
                    config.tol,
                )
                checks.append({"left": clow, "right": dlow, "ok": ok})
        report["coherence"] = {
            "checks": checks,
            "coherent": all(c["ok"] for c in checks),
        }
    _emit_json(report, config)
    return EXIT_OK


def _cmd_sections_search(args, config: RunConfig) -> int:
    poset = poset_from_json(_load_json(args.poset), config.tol)
    if config.format != "json":
        raise ValidationError("sections search emits JSON only")
    if args.count is not None:
        report = count_report(poset, args.count)
    else:
        report = search_global_section(poset)
    _emit_json(report_to_json(report), config)
    return EXIT_OK


def _cmd_qubit_table(args, config: RunConfig) -> int:
    a = bloch_unit(args.ax, args.ay, args.az, atol=BLOCH_NORM_ATOL)
    b = bloch_unit(args.bx, args.by, args.bz, atol=BLOCH_NORM_ATOL)
    table = born_table(qubit_context(a), qubit_context(b), config.tol)
    if config.format == "csv":
        _emit(born_csv(table), config)
        return EXIT_OK
    closed = qubit_born_closed_form(a, b)
    report = born_report(table)
    report["closed_form_rows"] = [[float(x) for x in row] for row in closed]
    report["closed_form_max_diff"] = float(np.max(np.abs(table.as_array() - closed)))
    _emit_json(report, config)
    return EXIT_OK


def _cmd_fixtures_generate(args, config: RunConfig) -> int:
    if config.format != "json":
        raise ValidationError("fixtures generate emits JSON only")
    if args.kind == "mermin-peres":
        fixture = mermin_peres_fixture()
    elif args.kind == "random-bloch":
        fixture = random_bloch_poset(args.count, config.seed)
    else:
        fixture = random_commuting_fixture(args.dim, args.members, config.seed)
    _emit_json(fixture_to_json(fixture), config)
    return EXIT_OK


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None, help="validation tolerance (default 1e-9)")
    p.add_argument("--eigengap", type=float, default=None, help="eigenvalue grouping gap (default 1e-8)")
    p.add_argument("--seed", type=int, default=None, help="random seed for generators (default 0)")
    p.add_argument("--format", choices=("json", "csv"), default=None, help="output format")
    p.add_argument("--out", default=None, help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qborn",
        description="Contexts, pairing tables and global-section search for M_n(C)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    contexts = sub.add_parser("contexts", help="context poset operations")
    csub = contexts.add_subparsers(dest="subcommand", required=True)
    cbuild = csub.add_parser("build", help="build a context poset from observable files")
    cbuild.add_argument("files", nargs="+", help="JSON observable family files")
    _add_common_flags(cbuild)
    cbuild.set_defaults(handler=_cmd_contexts_build)

    born = sub.add_parser("born", help="pairing table between two contexts of a poset")
    born.add_argument("poset", help="poset JSON file")
    born.add_argument("--left", required=True, help="left context id")
    born.add_argument("--right", required=True, help="right context id")
    born.add_argument(
        "--check-coherence",
        action="store_true",
        help="also push the table onto every common coarsening and compare",
    )
    _add_common_flags(born)
    born.set_defaults(handler=_cmd_born)

    sections = sub.add_parser("sections", help="global-section search")
    ssub = sections.add_subparsers(dest="subcommand", required=True)
    ssearch = ssub.add_parser("search", help="search a poset for a global section")
    ssearch.add_argument("poset", help="poset JSON file")
    ssearch.add_argument("--count", type=int, default=None, help="count sections up to this cap")
    _add_common_flags(ssearch)
    ssearch.set_defaults(handler=_cmd_sections_search)

    qubit = sub.add_parser("qubit", help="dimension-2 closed-form checks")
    qsub = qubit.add_subparsers(dest="subcommand", required=True)
    qtable = qsub.add_parser("table", help="pairing table of two Bloch-vector contexts")
    for name in ("ax", "ay", "az", "bx", "by", "bz"):
        qtable.add_argument(name, type=float)
    _add_common_flags(qtable)
    qtable.set_defaults(handler=_cmd_qubit_table)

    fixtures = sub.add_parser("fixtures", help="deterministic fixture generators")
    fsub = fixtures.add_subparsers(dest="subcommand", required=True)
    fgen = fsub.add_parser("generate", help="emit a fixture as JSON")
    fgen.add_argument("kind", choices=("mermin-peres", "random-bloch", "random-commuting"))
    fgen.add_argument("--count", type=int, default=20, help="contexts for random-bloch")
    fgen.add_argument("--dim", type=int, default=4, help="dimension for random-commuting")
    fgen.add_argument("--members", type=int, default=2, help="family size for random-commuting")
    _add_common_flags(fgen)
    fgen.set_defaults(handler=_cmd_fixtures_generate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _build_config(args)
        return args.handler(args, config)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except QbornError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
