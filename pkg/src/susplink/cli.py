"""Command line driver.

Subcommands mirror the pipeline stages and compose through files:

    susplink step1 data/ex1.txt -o mp.json
    susplink nielsen mp.json -o n.json
    susplink power n.json -r 3 -o n3.json
    susplink waldhausen n3.json -o w.json
    susplink plumbing w.json -o tree.json
    susplink invariants tree.json

is equivalent to ``susplink pipeline data/ex1.txt -r 3``.  Diagnostics go to
stderr, results to stdout or ``-o``; the exit code is 0 iff no stage failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import InputError, PlumbingError
from .graphs import (
    MultPlumbing,
    NielsenGraph,
    PlumbingTree,
    ResolutionGraph,
    WaldhausenGraph,
)
from .invariants import (
    canonical_class,
    chi_resolution,
    determinant,
    is_num_gorenstein,
    k_squared,
    negative_definite,
)
from .nielsen import build_nielsen
from .pipeline import StageError, run_pipeline
from .power import power_nielsen
from .report import render_graph_text, render_json_dict, render_text
from .resolve import parse_resolution, subtract_and_normalize
from .serialize import frac_str, from_json, to_dot, to_json
from .synthesis import blow_down, normalize_edge_signs, strip_decorations, synth_plumbing
from .waldhausen import nielsen_to_waldhausen


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _load(path: str, want, stage: str):
    """Load a stage input: JSON documents by schema, text otherwise."""
    text = _read(path)
    if text.lstrip().startswith("{"):
        graph = from_json(text)
    else:
        graph = parse_resolution(text)
    if not isinstance(graph, want):
        raise StageError(stage, InputError(
            f"expected {want.__name__} input, got {type(graph).__name__}"))
    return graph


def _emit(text: str, out: str | None):
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _graph_output(graph, fmt: str) -> str:
    if fmt == "dot":
        return to_dot(graph)
    if fmt == "text":
        return render_graph_text(graph)
    return to_json(graph) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="susplink",
        description="plumbing description and obstruction invariants of "
                    "suspension singularity links")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, include_format=True):
        p.add_argument("input", help="input file ('-' for stdin)")
        p.add_argument("-o", "--output", default=None, help="output file")
        if include_format:
            p.add_argument("--format", choices=("text", "json", "dot"),
                           default="json", help="output format")

    p = sub.add_parser("step1", help="multiplicity tree of the decorated input")
    common(p)
    p.add_argument("--side", choices=("fg", "f", "g"), default="fg")

    p = sub.add_parser("nielsen", help="Nielsen graph of the monodromy")
    common(p)

    p = sub.add_parser("power", help="Nielsen graph of the r-th power")
    common(p)
    p.add_argument("-r", type=int, default=2, help="exponent (default 2)")

    p = sub.add_parser("waldhausen", help="Waldhausen graph of the open book")
    common(p)

    p = sub.add_parser("plumbing", help="plumbing tree of the open book")
    common(p)
    p.add_argument("--keep-arrows", action="store_true")
    p.add_argument("--blow-down", action="store_true")

    p = sub.add_parser("invariants", help="obstruction invariants of a plumbing tree")
    common(p, include_format=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--blow-down", action="store_true")

    p = sub.add_parser("pipeline", help="run every stage and report")
    p.add_argument("inputs", nargs="+", help="input file(s)")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("-r", type=int, default=2, help="suspension exponent (default 2)")
    p.add_argument("--side", choices=("fg", "f", "g"), default="fg")
    p.add_argument("--keep-arrows", action="store_true")
    p.add_argument("--blow-down", action="store_true")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers for batch inputs")
    return parser


def _cmd_step1(args) -> str:
    graph = _load(args.input, ResolutionGraph, "step1")
    mp = subtract_and_normalize(graph, args.side)
    return _graph_output(mp, args.format)


def _cmd_nielsen(args) -> str:
    mp = _load(args.input, MultPlumbing, "nielsen")
    return _graph_output(build_nielsen(mp), args.format)


def _cmd_power(args) -> str:
    n = _load(args.input, NielsenGraph, "power")
    return _graph_output(power_nielsen(n, args.r), args.format)


def _cmd_waldhausen(args) -> str:
    n = _load(args.input, NielsenGraph, "waldhausen")
    return _graph_output(nielsen_to_waldhausen(n), args.format)


def _cmd_plumbing(args) -> str:
    w = _load(args.input, WaldhausenGraph, "plumbing")
    tree = synth_plumbing(w, keep_arrows=args.keep_arrows)
    if args.blow_down:
        if tree.is_tree():
            tree = normalize_edge_signs(tree)
        tree = blow_down(tree)
    return _graph_output(tree, args.format)


def _cmd_invariants(args) -> str:
    tree = _load(args.input, PlumbingTree, "invariants")
    tree = strip_decorations(tree, keep_mults=True)
    if args.blow_down:
        if tree.is_tree():
            tree = normalize_edge_signs(tree)
        tree = blow_down(tree)
    K = canonical_class(tree)
    data = {
        "schema": "susplink/invariants:1",
        "K": [frac_str(k) for k in K],
        "K_squared": frac_str(k_squared(tree, K)),
        "numerically_gorenstein": is_num_gorenstein(K),
        "chi_resolution": chi_resolution(tree),
        "determinant": determinant(tree),
        "negative_definite": negative_definite(tree),
    }
    if args.format == "json":
        return json.dumps(data, indent=2) + "\n"
    data["K"] = "(" + ", ".join(data["K"]) + ")"
    lines = [f"{key} = {value}" for key, value in data.items() if key != "schema"]
    return "\n".join(lines) + "\n"


def _run_one_pipeline(path: str, args) -> str:
    result = run_pipeline(_read(path), args.r, side=args.side,
                          keep_arrows=args.keep_arrows, reduce=args.blow_down)
    if args.format == "json":
        return json.dumps(render_json_dict(result), indent=2) + "\n"
    if args.format == "dot":
        final = result.blowdown if result.blowdown is not None else result.plumbing
        return to_dot(final)
    return render_text(result)


def _cmd_pipeline(args) -> str:
    if len(args.inputs) == 1:
        return _run_one_pipeline(args.inputs[0], args)
    jobs = max(1, args.jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        outputs = list(pool.map(lambda p: _run_one_pipeline(p, args), args.inputs))
    chunks = []
    for path, text in zip(args.inputs, outputs):
        chunks.append(f"== {path}\n{text}")
    return "".join(chunks)


_COMMANDS = {
    "step1": _cmd_step1,
    "nielsen": _cmd_nielsen,
    "power": _cmd_power,
    "waldhausen": _cmd_waldhausen,
    "plumbing": _cmd_plumbing,
    "invariants": _cmd_invariants,
    "pipeline": _cmd_pipeline,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _COMMANDS[args.command](args)
    except StageError as exc:
        print(f"error {exc}", file=sys.stderr)
        return 1
    except PlumbingError as exc:
        print(f"error [{args.command}] {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(text, args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
