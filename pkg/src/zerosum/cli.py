"""Command-line front end: constants, enumeration, classification, suites."""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional

from . import families as fam
from .errors import BudgetExceededError, ZerosumError
from .groups import GroupSpec
from .kernel import BACKEND
from .search import (
    EquivalenceMode,
    compute_s_L,
    davenport_constant,
    enumerate_avoiding,
    enumerate_max_minimal_zero_sum,
)
from .sequences import LengthSet, Sequence
from .verify import DEFAULT_SEED, run_suite, suite_oracle

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parse_group(text: str) -> GroupSpec:
    return GroupSpec(int(o) for o in text.split(","))


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _mode_for(args, length_set: LengthSet, group: GroupSpec) -> EquivalenceMode:
    if args.mode:
        return EquivalenceMode.parse(args.mode)
    if length_set.is_exact_exponent(group):
        return EquivalenceMode.AUTOMORPHISM_TRANSLATION
    return EquivalenceMode.AUTOMORPHISM


def cmd_constants(args) -> int:
    group = _parse_group(args.group)
    which = args.which
    if which == "davenport":
        result = davenport_constant(group, jobs=args.jobs)
    else:
        if which == "eta":
            length_set = LengthSet.short()
        elif which == "s":
            length_set = LengthSet.exact_exponent()
        else:
            length_set = LengthSet.parse(args.lengths)
        mode = _mode_for(args, length_set, group)
        result = compute_s_L(group, length_set, mode, jobs=args.jobs)
    if args.json:
        _write(args, json.dumps({
            "group": list(group.orders),
            "which": which,
            "lengths": result.length_set.describe(),
            "value": result.value,
            "class_count": result.extremal_count_up_to_symmetry,
            "node_count": result.node_count,
            "wall_time": round(result.wall_time, 3),
        }, separators=(",", ":")))
    else:
        _write(args, str(result.value))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    group = _parse_group(args.group)
    length_set = LengthSet.parse(args.lengths)
    mode = _mode_for(args, length_set, group)
    start = time.monotonic()
    if args.problem == "davenport-max":
        seqs = enumerate_max_minimal_zero_sum(group, jobs=args.jobs)
        value = seqs[0].length if seqs else None
        nodes = None
    elif args.length is not None:
        seqs = enumerate_avoiding(group, length_set, args.length, mode,
                                  jobs=args.jobs)
        value = None
        nodes = None
    else:
        result = compute_s_L(group, length_set, mode, jobs=args.jobs)
        seqs = result.extremal_classes
        value = result.value
        nodes = result.node_count
    lines = [s.to_json() for s in seqs]
    summary = {
        "value": value,
        "class_count": len(seqs),
        "node_count": nodes,
        "wall_time": round(time.monotonic() - start, 3),
    }
    lines.append(json.dumps(summary, separators=(",", ":")))
    _write(args, "\n".join(lines))
    return EXIT_OK


def cmd_classify(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        seq = Sequence.from_json(fh.read())
    witnesses = fam.classify(seq, args.problem, first_only=args.first_only)
    _write(args, "\n".join(w.to_json() for w in witnesses) if witnesses else "[]")
    return EXIT_OK


def cmd_generate(args) -> int:
    group = _parse_group(args.group)
    if args.witness:
        with open(args.witness, encoding="utf-8") as fh:
            witness = fam.FamilyWitness.from_json_dict(json.load(fh), group)
    else:
        params = json.loads(args.params) if args.params else {}
        witness = fam.FamilyWitness.from_json_dict(
            {"label": args.label, "basis": None, "params": params,
             "translation": json.loads(args.translation) if args.translation else None},
            group,
        )
    seq = fam.generate(witness, group)
    _write(args, seq.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, n=args.n, seed=args.seed, jobs=args.jobs)
    if args.json:
        _write(args, json.dumps([r.to_json_dict() for r in reports], indent=2))
    else:
        _write(args, "\n".join(r.render() for r in reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_oracle_check(args) -> int:
    report = suite_oracle(samples=args.samples, seed=args.seed,
                          exhaustive=not args.skip_exhaustive)
    if args.json:
        _write(args, report.to_json())
    else:
        _write(args, report.render())
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zerosum",
        description="Exact zero-sum constants, extremal sequence enumeration, "
                    f"and verification suites (kernel: {BACKEND}). "
                    "ZS_NODE_BUDGET overrides the search node budget.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=True):
        if group:
            p.add_argument("--group", required=True,
                           help="comma-separated cyclic factor orders, e.g. 2,2,4")
        p.add_argument("--jobs", type=int, default=1,
                       help="parallel subtree tasks for searches")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--out", help="write output to a file instead of stdout")

    p = sub.add_parser("constants", help="compute D(G), eta(G), s(G) or s_L(G)")
    common(p)
    p.add_argument("--which", choices=("davenport", "eta", "s", "sL"),
                   required=True)
    p.add_argument("--lengths", default="any",
                   help="length set for --which sL: short|exp|any|a..b|list")
    p.add_argument("--mode", choices=[m.value for m in EquivalenceMode])
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("enumerate",
                       help="canonical extremal (or fixed-length) classes as JSON lines")
    common(p)
    p.add_argument("--lengths", default="any",
                   help="length set: short|exp|any|a..b|list")
    p.add_argument("--mode", choices=[m.value for m in EquivalenceMode])
    p.add_argument("--length", type=int,
                   help="enumerate avoiding sequences of this length instead "
                        "of the extremal length")
    p.add_argument("--problem", choices=("avoiding", "davenport-max"),
                   default="avoiding")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="match a sequence against the families")
    common(p, group=False)
    p.add_argument("--problem", choices=fam.PROBLEMS, required=True)
    p.add_argument("--input", required=True, help="sequence JSON file")
    p.add_argument("--first-only", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", help="build a family instance sequence")
    common(p)
    p.add_argument("--witness", help="witness JSON file")
    p.add_argument("--label", choices=fam.ALL_LABELS)
    p.add_argument("--params", help="inline params JSON for --label")
    p.add_argument("--translation", help="inline translation JSON, e.g. [0,0,1]")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run a verification suite")
    common(p, group=False)
    p.add_argument("--suite", default="paper",
                   choices=("paper", "constants", "davenport", "eta", "s",
                            "corollaries", "cyclic", "lemmas", "oracle", "all"))
    p.add_argument("--n", type=int, help="restrict to one n of C2+C2+C2n")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle-check",
                       help="layered table vs brute-force subset enumeration")
    common(p, group=False)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--skip-exhaustive", action="store_true")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ZerosumError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
