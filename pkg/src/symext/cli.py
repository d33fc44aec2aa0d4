"""Command line entry point.

    symext --script checks.wb [--seed N] [--bounds tiny|small|full|N,M,K,B] [--report out.txt]
    symext lemma-check instance.wb [--width W]

``lemma-check`` reads a script declaring exactly one ``lemma`` and prints
the witness report and the constructed permutation.
"""
from __future__ import annotations

import argparse
import sys

from .dsl import DslError, Lit, Ref, parse_script
from .names import Bounds
from .runner import PRESETS, _Env, lemma_check, print_report, run_script


def _bounds_arg(text: str):
    if text in PRESETS:
        return text, None
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 4 or min(vals) < 1:
        raise argparse.ArgumentTypeError(
            f"expected one of {', '.join(PRESETS)} or four positive integers N,M,K,B")
    return None, Bounds(*vals)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _parse(path: str):
    try:
        return parse_script(_read(path))
    except DslError as e:
        print(f"{path}: {e}", file=sys.stderr)
        return None


def run_main(argv) -> int:
    ap = argparse.ArgumentParser(prog="symext", description="Run a workbench script.")
    ap.add_argument("--script", required=True, help="script path, or - for stdin")
    ap.add_argument("--seed", type=int, default=None, help="override the script seed")
    ap.add_argument("--bounds", type=_bounds_arg, default=(None, None),
                    help="preset (tiny, small, full) or N,M,K,B for checks without explicit bounds")
    ap.add_argument("--report", default=None, help="write the report here instead of stdout")
    ap.add_argument("--timing", action="store_true", help="append elapsed time to each line")
    args = ap.parse_args(argv)
    ws = _parse(args.script)
    if ws is None:
        return 2
    preset, bounds = args.bounds
    rep = run_script(ws, seed=args.seed, preset=preset, bounds=bounds)
    text = print_report(rep, timing=args.timing)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return rep.exit_code()


def lemma_main(argv) -> int:
    ap = argparse.ArgumentParser(prog="symext lemma-check",
                                 description="Build and verify the permutation for one lemma instance.")
    ap.add_argument("path", help="script declaring one lemma, or - for stdin")
    ap.add_argument("--width", type=int, default=None, help="search width for the brute-force oracle")
    args = ap.parse_args(argv)
    ws = _parse(args.path)
    if ws is None:
        return 2
    lemmas = [k for k, v in ws.declarations if isinstance(v, Lit) and v.kind == "lemma"]
    if len(lemmas) != 1:
        print(f"{args.path}: expected exactly one lemma declaration, found {len(lemmas)}", file=sys.stderr)
        return 2
    env = _Env(ws, None, None)
    L = env.get(Ref(lemmas[0]))
    verdict, detail = lemma_check(L, args.width)
    print(f"LEMMA {lemmas[0]} {verdict} {detail}")
    return 1 if verdict == "FAIL" else 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv and argv[0] == "lemma-check":
        return lemma_main(argv[1:])
    return run_main(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
