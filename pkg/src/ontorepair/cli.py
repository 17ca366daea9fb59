"""Command-line access to every capability, plus the HTTP service.

Subcommands: `check`, `justify`, `mups`, `mips`, `hst`, `debug`, `complete`,
`repair`, `compare`, `network check|repair`, `serve`. Every subcommand
honours `--json` (stable, schema-versioned machine output) and `--seed`
(feeds the erroneous oracle; batch runs are otherwise deterministic).

Exit codes: 0 success; 1 defects found or no valid repair; 2 usage or parse
error; 3 resource limits exceeded.

Oracles on the command line are always file backed so batch runs stay
reproducible: `truth:PATH` (a reference TBox; a bare path means the same),
`erroneous:PATH:RATE` (a reference TBox with seeded verdict flips), or
`log:PATH` (a recorded query log replayed as a limited oracle). Missing and
wrong axioms come from text files with one axiom per line and `#` comments;
when no wrong file is given, every unsatisfiable concept contributes its
unsatisfiability as an implicit wrong entailment.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .core import (
    Atomic,
    BOTTOM,
    GCI,
    ParseError,
    TBox,
    axiom_str,
    parse_axiom,
    parse_tbox,
    serialize_tbox,
)
from .diagnosis import (
    NotEntailed,
    NotUnsatisfiable,
    all_justifications,
    minimal_hitting_sets,
    mips,
    mups,
)
from .oracle import (
    ErroneousOracle,
    LimitedOracle,
    Oracle,
    QueryLog,
    TruthTBoxOracle,
    Verdict,
)
from .preferences import PREFERENCES, PreferenceContext
from .reasoner import ResourceExceeded, is_consistent, unsatisfiable_concepts
from .repair import (
    HITTING_SETS,
    REMOVE_ALL_FALSE,
    NoRepairWithoutCorrectRemoval,
    Repair,
    RepairFailed,
    combined_repair,
    complete_repair,
    debug_repairs,
    load_repairs,
    make_cdp,
    verify_repair,
)

SCHEMA = "ontorepair/1"

_MODES = {"hs": HITTING_SETS, "all-false": REMOVE_ALL_FALSE}


class _Usage(Exception):
    """Bad invocation discovered after argparse: reported with exit code 2."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc}") from None


def _load_tbox(path: str) -> TBox:
    return parse_tbox(_read(path))


def _load_axiom_lines(path: str) -> list[GCI]:
    axioms: list[GCI] = []
    for line_no, raw in enumerate(_read(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        ax = parse_axiom(line)
        if not isinstance(ax, GCI):
            raise _Usage(f"{path}:{line_no}: expected a concept inclusion")
        axioms.append(ax)
    return axioms


def _oracle_from_spec(spec: str, seed: int) -> Oracle:
    if spec == "interactive":
        raise _Usage(
            "interactive oracles are a service feature; use truth:PATH, "
            "erroneous:PATH:RATE, or log:PATH here"
        )
    if spec.startswith("truth:"):
        return TruthTBoxOracle(_load_tbox(spec.split(":", 1)[1]))
    if spec.startswith("erroneous:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise _Usage("erroneous oracle spec must be erroneous:PATH:RATE")
        try:
            rate = float(parts[2])
        except ValueError:
            raise _Usage(f"bad flip rate: {parts[2]!r}") from None
        return ErroneousOracle(_load_tbox(parts[1]), rate, seed)
    if spec.startswith("log:"):
        log = QueryLog.loads(_read(spec.split(":", 1)[1]))
        true_axioms = []
        false_axioms = []
        for key in sorted({entry.axiom for entry in log.entries}):
            verdict = log.effective(key)
            if verdict is Verdict.TRUE:
                true_axioms.append(parse_axiom(key))
            elif verdict is Verdict.FALSE:
                false_axioms.append(parse_axiom(key))
        return LimitedOracle(true_axioms, false_axioms)
    return TruthTBoxOracle(_load_tbox(spec))


def _implicit_wrong(tbox: TBox, wrong: list[GCI]) -> list[GCI]:
    if wrong:
        return wrong
    return [GCI(Atomic(name), BOTTOM) for name in unsatisfiable_concepts(tbox)]


def _emit(args: argparse.Namespace, payload: dict, human: list[str]) -> None:
    if args.json:
        payload = {"schema": SCHEMA, "command": args.command, **payload}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human:
            print(line)


def _axiom_ref(tbox: TBox, axiom_id: int) -> dict:
    return {"id": axiom_id, "axiom": axiom_str(tbox.axiom(axiom_id))}


def _id_sets(tbox: TBox, sets) -> tuple[list[list[dict]], list[str]]:
    as_json = [[_axiom_ref(tbox, i) for i in sorted(s)] for s in sets]
    human = [
        "{" + ", ".join(f"ax{i}" for i in sorted(s)) + "}" for s in sets
    ]
    return as_json, human


def _repair_json(repair: Repair, report=None) -> dict:
    body = repair.to_json()
    if report is not None:
        body["verification"] = report.to_json()
    return body


# ---------------------------------------------------------------------------
# subcommands


def _cmd_check(args: argparse.Namespace) -> int:
    tbox = _load_tbox(args.tbox)
    consistent = is_consistent(tbox)
    unsat = unsatisfiable_concepts(tbox) if consistent else []
    _emit(
        args,
        {"consistent": consistent, "unsatisfiable": unsat},
        [
            f"consistent: {'yes' if consistent else 'no'}",
            "unsatisfiable: " + (", ".join(unsat) if unsat else "none"),
        ],
    )
    return 0 if consistent and not unsat else 1


def _cmd_justify(args: argparse.Namespace) -> int:
    tbox = _load_tbox(args.tbox)
    axiom = parse_axiom(args.axiom)
    try:
        justs = all_justifications(tbox, axiom)
    except NotEntailed:
        _emit(
            args,
            {"axiom": axiom_str(axiom), "entailed": False, "justifications": []},
            [f"not entailed: {axiom_str(axiom)}"],
        )
        return 1
    as_json, human = _id_sets(tbox, justs)
    _emit(
        args,
        {"axiom": axiom_str(axiom), "entailed": True, "justifications": as_json},
        human,
    )
    return 0


def _cmd_mups(args: argparse.Namespace) -> int:
    tbox = _load_tbox(args.tbox)
    try:
        sets = mups(tbox, args.concept)
    except NotUnsatisfiable:
        _emit(
            args,
            {"concept": args.concept, "unsatisfiable": False, "mups": []},
            [f"satisfiable concept: {args.concept}"],
        )
        return 1
    as_json, human = _id_sets(tbox, sets)
    _emit(args, {"concept": args.concept, "unsatisfiable": True, "mups": as_json}, human)
    return 0


def _cmd_mips(args: argparse.Namespace) -> int:
    tbox = _load_tbox(args.tbox)
    sets = mips(tbox)
    as_json, human = _id_sets(tbox, sets)
    _emit(args, {"mips": as_json}, human if human else ["coherent: no MIPS"])
    return 0


def _cmd_hst(args: argparse.Namespace) -> int:
    tbox = _load_tbox(args.tbox)
    sets = mips(tbox)
    if not sets:
        _emit(args, {"mips": [], "hittingSets": []}, ["coherent: nothing to hit"])
        return 0
    hits = minimal_hitting_sets(sets)
    as_json, human = _id_sets(tbox, hits)
    _emit(args, {"hittingSets": as_json}, human)
    return 0


def _cmd_debug(args: argparse.Namespace) -> int:
    tbox = _load_tbox(args.tbox)
    oracle = _oracle_from_spec(args.oracle, args.seed)
    missing = _load_axiom_lines(args.missing) if args.missing else []
    wrong = _implicit_wrong(
        tbox, _load_axiom_lines(args.wrong) if args.wrong else []
    )
    cdp = make_cdp(tbox, oracle, missing, wrong)
    try:
        repairs = debug_repairs(cdp, _MODES[args.mode])
    except NoRepairWithoutCorrectRemoval as exc:
        _emit(args, {"error": str(exc), "repairs": []}, [f"no repair: {exc}"])
        return 1
    bodies = []
    human = []
    for repair in repairs:
        report = verify_repair(cdp, repair)
        bodies.append(_repair_json(repair, report))
        human.append(
            "delete {"
            + ", ".join(axiom_str(d) for d in repair.deletes)
            + "}"
            + ("" if report.holds else "  (does not verify)")
        )
    _emit(args, {"mode": args.mode, "repairs": bodies}, human)
    return 0


def _cmd_complete(args: argparse.Namespace) -> int:
    tbox = _load_tbox(args.tbox)
    oracle = _oracle_from_spec(args.oracle, args.seed)
    missing = _load_axiom_lines(args.missing)
    cdp = make_cdp(tbox, oracle, missing)
    try:
        repair = complete_repair(cdp)
    except RepairFailed as exc:
        _emit(
            args,
            {"error": "completion failed", "verification": exc.report.to_json()},
            ["completion failed: some missing axiom stayed unentailed"],
        )
        return 1
    report = verify_repair(cdp, repair)
    _emit(
        args,
        {"repair": _repair_json(repair, report)},
        ["add " + axiom_str(a) for a in repair.adds] or ["nothing to add"],
    )
    return 0


def _cmd_repair(args: argparse.Namespace) -> int:
    tbox = _load_tbox(args.tbox)
    oracle = _oracle_from_spec(args.oracle, args.seed)
    missing = _load_axiom_lines(args.missing) if args.missing else []
    wrong = _implicit_wrong(
        tbox, _load_axiom_lines(args.wrong) if args.wrong else []
    )
    cdp = make_cdp(tbox, oracle, missing, wrong)
    try:
        repair = combined_repair(cdp, _MODES[args.mode])
    except (NoRepairWithoutCorrectRemoval, RepairFailed) as exc:
        _emit(args, {"error": str(exc)}, [f"no repair: {exc}"])
        return 1
    report = verify_repair(cdp, repair)
    human = ["add " + axiom_str(a) for a in repair.adds]
    human += ["delete " + axiom_str(d) for d in repair.deletes]
    human.append(f"verified: {'yes' if report.holds else 'no'}")
    if args.output:
        from .repair import apply_repair

        Path(args.output).write_text(
            serialize_tbox(apply_repair(tbox, repair)), encoding="utf-8"
        )
        human.append(f"wrote {args.output}")
    _emit(args, {"repair": _repair_json(repair, report)}, human)
    return 0 if report.holds else 1


def _cmd_compare(args: argparse.Namespace) -> int:
    tbox = _load_tbox(args.tbox)
    oracle = _oracle_from_spec(args.oracle, args.seed)
    missing = _load_axiom_lines(args.missing) if args.missing else []
    wrong = _load_axiom_lines(args.wrong) if args.wrong else []
    repairs = load_repairs(_read(args.repairs))
    cdp = make_cdp(tbox, oracle, missing, wrong)
    universe = None
    if args.universe != "auto":
        universe = _load_axiom_lines(args.universe)
    context = PreferenceContext(cdp, universe)
    names = sorted(repairs)
    matrix: dict[str, dict[str, dict]] = {}
    for a in names:
        row = {}
        for b in names:
            if a == b:
                continue
            row[b] = context.relate(repairs[a], repairs[b]).to_json()
        matrix[a] = row
    certificates = {}
    for name in names:
        complete, missing_wit = context.maximally_complete(repairs[name])
        incorrect, false_wit = context.minimally_incorrect(repairs[name])
        certificates[name] = {
            "maximallyComplete": complete,
            "missingTrue": [axiom_str(a) for a in missing_wit],
            "minimallyIncorrect": incorrect,
            "falseEntailed": [axiom_str(a) for a in false_wit],
        }
    pool = [repairs[n] for n in names]
    by_identity = {id(repairs[n]): n for n in names}
    skyline = [
        by_identity[id(r)] for r in context.skyline_within(pool, list(PREFERENCES))
    ]
    optimal = {
        pref: [
            by_identity[id(r)]
            for r in context.optimal_within(
                pool, pref, [p for p in PREFERENCES if p != pref]
            )
        ]
        for pref in PREFERENCES
    }
    profiles = {
        name: context.profile(repairs[name]).to_json() for name in names
    }
    human = []
    for a in names:
        for b in names:
            if a < b:
                comparison = matrix[a][b]
                human.append(
                    f"{a} vs {b}: completeness={comparison['completeness']}"
                    f" correctness={comparison['correctness']}"
                    f" subset={comparison['subset']}"
                )
    human.append("skyline: " + (", ".join(skyline) if skyline else "none"))
    _emit(
        args,
        {
            "universe": len(context.universe),
            "profiles": profiles,
            "matrix": matrix,
            "certificates": certificates,
            "skyline": skyline,
            "optimal": optimal,
        },
        human,
    )
    return 0


def _cmd_network(args: argparse.Namespace) -> int:
    from .network import (
        conservativity_violations,
        detect_candidate_missing_isa,
        load_network,
        mapping_repair,
        network_to_tbox,
    )

    network = load_network(args.manifest)
    if args.network_command == "check":
        union = network_to_tbox(network)
        consistent = is_consistent(union)
        unsat = unsatisfiable_concepts(union) if consistent else []
        violations = conservativity_violations(network) if consistent else ()
        candidates = detect_candidate_missing_isa(network)
        _emit(
            args,
            {
                "consistent": consistent,
                "unsatisfiable": unsat,
                "conservativityViolations": [
                    {"ontology": oid, "axiom": axiom_str(ax)}
                    for oid, ax in violations
                ],
                "missingIsaCandidates": [
                    {"ontology": oid, "axiom": axiom_str(ax)}
                    for oid, ax in candidates
                ],
            },
            [
                f"consistent: {'yes' if consistent else 'no'}",
                "unsatisfiable: " + (", ".join(unsat) if unsat else "none"),
                f"conservativity violations: {len(violations)}",
                f"missing is-a candidates: {len(candidates)}",
            ],
        )
        return 0 if consistent and not unsat and not violations else 1
    oracle = (
        _oracle_from_spec(args.oracle, args.seed) if args.oracle else None
    )
    wrong = _load_axiom_lines(args.wrong) if args.wrong else []
    try:
        result = mapping_repair(network, oracle, wrong)
    except NoRepairWithoutCorrectRemoval as exc:
        _emit(args, {"error": str(exc)}, [f"no repair: {exc}"])
        return 1
    human = ["delete " + axiom_str(d) for d in result.repair.deletes] or [
        "nothing to delete"
    ]
    if result.ontology_edit_required:
        human.append("note: some conflict lies entirely inside one ontology")
    _emit(args, result.to_json(), human)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.data_dir, args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontorepair",
        description="check, debug, complete, repair, and compare TBoxes",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine output")
    common.add_argument(
        "--seed", type=int, default=0, help="seed for seeded oracles"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="consistency and coherence")
    p.add_argument("tbox")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("justify", parents=[common], help="all justifications")
    p.add_argument("tbox")
    p.add_argument("--axiom", required=True)
    p.set_defaults(func=_cmd_justify)

    p = sub.add_parser("mups", parents=[common], help="unsatisfiability witnesses")
    p.add_argument("tbox")
    p.add_argument("--concept", required=True)
    p.set_defaults(func=_cmd_mups)

    p = sub.add_parser("mips", parents=[common], help="incoherence witnesses")
    p.add_argument("tbox")
    p.set_defaults(func=_cmd_mips)

    p = sub.add_parser("hst", parents=[common], help="minimal hitting sets")
    p.add_argument("tbox")
    p.set_defaults(func=_cmd_hst)

    p = sub.add_parser("debug", parents=[common], help="delete-only repairs")
    p.add_argument("tbox")
    p.add_argument("--oracle", required=True)
    p.add_argument("--mode", choices=sorted(_MODES), default="hs")
    p.add_argument("--missing")
    p.add_argument("--wrong")
    p.set_defaults(func=_cmd_debug)

    p = sub.add_parser("complete", parents=[common], help="add-only repair")
    p.add_argument("tbox")
    p.add_argument("--oracle", required=True)
    p.add_argument("--missing", required=True)
    p.set_defaults(func=_cmd_complete)

    p = sub.add_parser("repair", parents=[common], help="combined repair")
    p.add_argument("tbox")
    p.add_argument("--oracle", required=True)
    p.add_argument("--mode", choices=sorted(_MODES), default="all-false")
    p.add_argument("--missing")
    p.add_argument("--wrong")
    p.add_argument("--output", help="write the repaired TBox here")
    p.set_defaults(func=_cmd_repair)

    p = sub.add_parser("compare", parents=[common], help="preference analysis")
    p.add_argument("tbox")
    p.add_argument("--repairs", required=True)
    p.add_argument("--oracle", required=True)
    p.add_argument("--missing")
    p.add_argument("--wrong")
    p.add_argument("--universe", default="auto")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("network", parents=[common], help="ontology networks")
    network_sub = p.add_subparsers(dest="network_command", required=True)
    for name in ("check", "repair"):
        np = network_sub.add_parser(name, parents=[common])
        np.add_argument("--manifest", required=True)
        if name == "repair":
            np.add_argument("--oracle")
            np.add_argument("--wrong")
        np.set_defaults(func=_cmd_network)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", default=None)
    p.add_argument("--static-dir", default=None)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: line {exc.line}: {exc.message}", file=sys.stderr)
        return 2
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
