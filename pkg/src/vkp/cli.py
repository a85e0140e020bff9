"""Command-line front end: check, normalize, extract, prove.

Exit codes: 0 success, 1 type/parse/precondition failure, 2 I/O or usage
error.  VKP_BUDGET overrides the default reduction budget.  Files given to
`check` are processed concurrently; declarations within a file in order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .syntax import CALCULI
from .typecheck import TypeCheckError, check
from .parser import ParseError, parse_formula, parse_script, print_formula, print_term
from .normalize import (
    DEFAULT_BUDGET, BudgetExceeded, PreconditionViolation, eval_v,
    extract_disjunct, normalize_full, weak_head_normalize,
)
from .oracle import NotProvable, Provable, SearchBudgetExceeded, ipc_provable


def _budget() -> int:
    raw = os.environ.get("VKP_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        n = int(raw)
        if n <= 0:
            raise ValueError
        return n
    except ValueError:
        raise SystemExit(f"vkp: VKP_BUDGET must be a positive integer, got {raw!r}")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _check_file(path: str, calculus: str | None) -> tuple[list[str], bool]:
    """Report lines and a pass flag for one script file."""
    lines = []
    ok = True
    script = parse_script(_read(path))
    if not script:
        lines.append(f"{path}: OK, 0 declarations")
        return lines, ok
    for d in script:
        cal = calculus or d.calculus
        try:
            check({}, d.body, d.formula, cal)
        except TypeCheckError as e:
            lines.append(
                f"{d.name} : error at line {d.line}, column {d.col}: {e}"
            )
            ok = False
            continue
        lines.append(f"{d.name} : OK ({print_formula(d.formula)})")
    return lines, ok


def _cmd_check(args) -> int:
    code = 0
    results = []
    with ThreadPoolExecutor(max_workers=min(8, max(1, len(args.files)))) as pool:
        futures = [pool.submit(_check_file, f, args.calculus) for f in args.files]
        for path, fut in zip(args.files, futures):
            try:
                results.append((path, fut.result()))
            except OSError as e:
                print(f"vkp: cannot read {path}: {e}", file=sys.stderr)
                return 2
            except ParseError as e:
                print(f"{path}: {e}", file=sys.stderr)
                code = 1
                results.append((path, None))
    for path, res in results:
        if res is None:
            continue
        lines, ok = res
        for line in lines:
            print(line)
        if not ok:
            code = 1
    return code


def _load_declaration(path: str, name: str):
    script = parse_script(_read(path))
    for d in script:
        if d.name == name:
            return d
    raise SystemExit(f"vkp: no declaration named {name!r} in {path}")


def _cmd_normalize(args) -> int:
    budget = _budget()
    d = _load_declaration(args.file, args.name)
    try:
        check({}, d.body, d.formula, d.calculus)
    except TypeCheckError as e:
        print(f"{d.name} : error at line {d.line}, column {d.col}: {e}",
              file=sys.stderr)
        return 1
    trace = [] if args.trace else None
    try:
        if args.strategy == "full":
            nf = normalize_full(d.body, d.calculus, {}, budget, trace)
        elif args.strategy == "weakhead":
            if d.calculus == "V":
                print("vkp: weakhead is the KP head strategy; "
                      f"{d.name} is a V declaration", file=sys.stderr)
                return 1
            nf = weak_head_normalize(d.body, {}, budget, trace)
        else:
            if d.calculus != "V":
                print(f"vkp: evalV needs a V declaration, {d.name} is {d.calculus}",
                      file=sys.stderr)
                return 1
            nf = eval_v(d.body, {}, budget)
    except BudgetExceeded as e:
        print(f"vkp: budget of {budget} steps exceeded after {e.steps} steps",
              file=sys.stderr)
        print(f"last term: {print_term(e.last)}", file=sys.stderr)
        return 1
    except PreconditionViolation as e:
        print(f"vkp: {e}", file=sys.stderr)
        return 1

    if args.json:
        payload: dict = {"normalForm": print_term(nf)}
        if args.trace:
            payload["steps"] = [
                {"path": list(s.path), "rule": s.rule,
                 "before": print_term(s.before), "after": print_term(s.after)}
                for s in (trace or [])
            ]
        print(json.dumps(payload, indent=2))
        return 0
    if args.trace:
        for s in trace or []:
            loc = ".".join(str(i) for i in s.path) or "root"
            print(f"{s.rule} at {loc}")
        if args.strategy == "evalV":
            print("(structural evaluation: no step trace)")
    print(print_term(nf))
    return 0


def _cmd_extract(args) -> int:
    budget = _budget()
    d = _load_declaration(args.file, args.name)
    try:
        check({}, d.body, d.formula, d.calculus)
    except TypeCheckError as e:
        print(f"{d.name} : error at line {d.line}, column {d.col}: {e}",
              file=sys.stderr)
        return 1
    try:
        side, witness = extract_disjunct(d.body, d.calculus, budget)
    except (PreconditionViolation, BudgetExceeded) as e:
        print(f"vkp: {e}", file=sys.stderr)
        return 1
    print(f"{side}: {print_term(witness)}")
    return 0


def _cmd_prove(args) -> int:
    try:
        a = parse_formula(args.formula)
    except ParseError as e:
        print(f"vkp: {e}", file=sys.stderr)
        return 2
    try:
        result = ipc_provable(a)
    except SearchBudgetExceeded as e:
        print(f"vkp: {e}", file=sys.stderr)
        return 2
    if isinstance(result, Provable):
        print(print_term(result.witness))
        return 0
    print("not provable; countermodel:")
    print(result.countermodel.describe())
    return 1


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="vkp",
        description="Proof-term kernel for intuitionistic logic "
                    "with admissible-rule constructs.",
    )
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized operations (reproducibility)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="type-check every declaration in each file")
    c.add_argument("files", nargs="+")
    c.add_argument("--calculus", choices=CALCULI, default=None,
                   help="override the calculus pragma of the scripts")
    c.set_defaults(run=_cmd_check)

    n = sub.add_parser("normalize", help="normalize one declaration")
    n.add_argument("file")
    n.add_argument("name")
    n.add_argument("--strategy", choices=("full", "weakhead", "evalV"),
                   default="full")
    n.add_argument("--trace", action="store_true",
                   help="show each reduction step (rule and path)")
    n.add_argument("--json", action="store_true",
                   help="machine-readable output")
    n.set_defaults(run=_cmd_normalize)

    e = sub.add_parser("extract", help="extract a disjunct from a closed proof")
    e.add_argument("file")
    e.add_argument("name")
    e.set_defaults(run=_cmd_extract)

    v = sub.add_parser("prove", help="decide an IPC formula")
    v.add_argument("formula")
    v.set_defaults(run=_cmd_prove)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.run(args)
    except OSError as e:
        print(f"vkp: {e}", file=sys.stderr)
        return 2
    except ParseError as e:
        print(f"vkp: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
