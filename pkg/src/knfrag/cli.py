"""Command-line front end.

Verbs: parse, classify, check, sat, translate, equiv, search, verify-paper,
hierarchy.  Formulas come from the command line or stdin; models come from
JSON files.  `--json` switches every verb to machine-readable output.

Exit codes: 64 usage, 65 bad formula or model data, 66 unreadable file,
69 resource cap.  `sat` exits 0/1/2 for satisfiable / unsatisfiable /
unknown at the bound; `check` exits 0/1 for true/false; `equiv` and
`search` exit 0/1 for found/not.
"""

from __future__ import annotations

import argparse
import json
import sys

from .expressiveness import (
    EQUIVALENT_UP_TO_BOUND,
    THEOREM_IDS,
    replay_theorem,
    search_weak_translation,
    strong_translation_check,
    weak_equiv_check,
)
from .hierarchy import hierarchy_dot
from .semantics import check, model_from_json, model_to_json
from .solver import (
    CapExceeded,
    DEFAULT_MODEL_CAP,
    DEFAULT_NODE_CAP,
    SAT,
    UNKNOWN_AT_BOUND,
    UNSAT,
    sat_bruteforce,
    sat_tableau,
    tree_model_bound,
)
from .syntax import (
    NotClausalError,
    ParseError,
    classify,
    formula_modalities,
    letters,
    parse,
    recognize_clausal,
    to_text,
)
from .translate import fresh_letters_of, krom_to_krom_box, krom_to_krom_diamond

EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66
EX_UNAVAILABLE = 69


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EX_USAGE)


def _read_formula(text: str | None) -> str:
    if text is None or text == "-":
        return sys.stdin.read()
    return text


def _load_model(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as e:
        sys.stderr.write(f"cannot read {path}: {e}\n")
        raise SystemExit(EX_NOINPUT)
    except json.JSONDecodeError as e:
        sys.stderr.write(f"bad JSON in {path}: {e}\n")
        raise SystemExit(EX_DATAERR)
    return model_from_json(data)


def _emit(args, payload: dict, plain: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(plain)


def _cmd_parse(args) -> int:
    f = parse(_read_formula(args.formula))
    payload = {
        "formula": to_text(f),
        "letters": sorted(letters(f)),
        "modalities": sorted(str(m) for m in formula_modalities(f)),
    }
    _emit(args, payload, to_text(f))
    return 0


def _cmd_classify(args) -> int:
    f = parse(_read_formula(args.formula))
    cf = recognize_clausal(f)
    d = classify(cf)
    payload = dict(d.as_dict(), clauses=len(cf.clauses))
    plain = ", ".join(f"{k}={v}" for k, v in payload.items())
    _emit(args, payload, plain)
    return 0


def _cmd_check(args) -> int:
    model, designated = _load_model(args.model)
    world = args.world or designated
    if world is None:
        sys.stderr.write("no world: the model has no designated world and --world was not given\n")
        return EX_DATAERR
    f = parse(_read_formula(args.formula))
    result = check(model, world, f)
    _emit(args, {"result": result, "world": world}, "true" if result else "false")
    return 0 if result else 1


def _cmd_sat(args) -> int:
    f = parse(_read_formula(args.formula))
    if args.engine == "brute":
        cap = args.cap if args.cap is not None else DEFAULT_MODEL_CAP
        max_worlds = args.max_worlds or tree_model_bound(f, cap)
        result = sat_bruteforce(f, max_worlds, model_cap=cap)
    else:
        cap = args.cap if args.cap is not None else DEFAULT_NODE_CAP
        result = sat_tableau(f, node_cap=cap)
    payload = {"status": result.status}
    if result.witness is not None:
        payload["witness"] = model_to_json(result.witness.model, result.witness.world)
    plain = result.status
    if result.witness is not None:
        plain += "\n" + json.dumps(payload["witness"], sort_keys=True)
    _emit(args, payload, plain)
    return {SAT: 0, UNSAT: 1, UNKNOWN_AT_BOUND: 2}[result.status]


def _cmd_translate(args) -> int:
    f = parse(_read_formula(args.formula))
    cf = recognize_clausal(f)
    translated = krom_to_krom_box(cf) if args.to == "box" else krom_to_krom_diamond(cf)
    fresh = fresh_letters_of(cf, translated)
    sidecar = {"to": args.to, "formula": str(translated), "fresh_letters": fresh}
    if args.sidecar:
        with open(args.sidecar, "w", encoding="utf-8") as handle:
            json.dump(sidecar, handle, sort_keys=True)
            handle.write("\n")
    _emit(args, sidecar, str(translated))
    return 0


def _cmd_equiv(args) -> int:
    f = parse(_read_formula(args.left))
    g = parse(args.right)
    if args.mode == "weak":
        verdict = weak_equiv_check(f, g, max_worlds=args.max_worlds)
    else:
        verdict = strong_translation_check(f, g, max_worlds=args.max_worlds)
    payload = {"status": verdict.status}
    if verdict.counterexample is not None:
        ce = verdict.counterexample
        payload["counterexample"] = model_to_json(ce.pointed.model, ce.pointed.world)
        payload["details"] = ce.details
    plain = verdict.status
    if "counterexample" in payload:
        plain += "\n" + json.dumps(payload["counterexample"], sort_keys=True)
    _emit(args, payload, plain)
    return 0 if verdict.status == EQUIVALENT_UP_TO_BOUND else 1


def _cmd_search(args) -> int:
    target = parse(_read_formula(args.target))
    found = search_weak_translation(
        target,
        args.fragment,
        letters(target) if args.alphabet is None else set(args.alphabet.split(",")),
        args.size,
        max_worlds=args.max_worlds,
    )
    if found is None:
        _emit(args, {"found": None}, "not found")
        return 1
    _emit(args, {"found": str(found)}, str(found))
    return 0


def _cmd_verify_paper(args) -> int:
    ids = [args.id] if args.id else list(THEOREM_IDS)
    all_pass = True
    for theorem_id in ids:
        report = replay_theorem(theorem_id)
        for description, ok in report.steps:
            print(json.dumps(
                {"theorem": report.theorem, "step": description, "pass": ok},
                sort_keys=True,
            ))
        print(json.dumps(
            {"theorem": report.theorem, "overall": report.overall}, sort_keys=True
        ))
        all_pass = all_pass and report.overall
    return 0 if all_pass else 1


def _cmd_hierarchy(args) -> int:
    dot = hierarchy_dot()
    if args.json:
        print(json.dumps({"dot": dot}, sort_keys=True))
    else:
        sys.stdout.write(dot)
    return 0


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="knfrag", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument(
        "--cap",
        type=int,
        default=None,
        help="resource ceiling for the solvers (models or tableau nodes)",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("parse", help="parse a formula and print its canonical form")
    p.add_argument("formula", nargs="?", help="formula text (stdin when omitted)")
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("classify", help="fragment membership of a clausal formula")
    p.add_argument("formula", nargs="?")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("check", help="truth of a formula at a world of a model")
    p.add_argument("model", help="model JSON file")
    p.add_argument("formula", nargs="?")
    p.add_argument("--world", help="world to check at (default: the designated one)")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("sat", help="satisfiability")
    p.add_argument("formula", nargs="?")
    p.add_argument("--engine", choices=("brute", "tableau"), default="tableau")
    p.add_argument("--max-worlds", type=int, default=None, dest="max_worlds")
    p.set_defaults(func=_cmd_sat)

    p = sub.add_parser("translate", help="rewrite a Krom formula into a restricted fragment")
    p.add_argument("formula", nargs="?")
    p.add_argument("--to", choices=("box", "diamond"), required=True)
    p.add_argument("--sidecar", help="write a JSON sidecar with the fresh letters here")
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("equiv", help="bounded equivalence of two formulas")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--mode", choices=("weak", "strong"), default="weak")
    p.add_argument("--max-worlds", type=int, default=3, dest="max_worlds")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("search", help="bounded search for a weak translation")
    p.add_argument("target", nargs="?")
    p.add_argument("--fragment", required=True, help="horn, krom, core, horn-box, ...")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--max-worlds", type=int, default=3, dest="max_worlds")
    p.add_argument("--alphabet", help="comma-separated letters (default: the target's)")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("verify-paper", help="replay the catalogued results")
    p.add_argument("--id", choices=THEOREM_IDS, help="replay one result only")
    p.set_defaults(func=_cmd_verify_paper)

    p = sub.add_parser("hierarchy", help="print the fragment hierarchy as DOT")
    p.set_defaults(func=_cmd_hierarchy)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EX_DATAERR
    except NotClausalError as e:
        sys.stderr.write(f"not in clausal form: {e}\n")
        return EX_DATAERR
    except CapExceeded as e:
        sys.stderr.write(f"resource cap exceeded: {e}\n")
        return EX_UNAVAILABLE
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
