"""Command line interface.

Subcommands: gen, check, spectrum, numrange, cheeger, verify, infinity.
All outputs are plain data (JSON or CSV) written atomically; floats use
their shortest round-trip representation. Exit codes: 0 on success, 1 when
`verify` found a failing report, 2 on input errors (bad files, bad flags,
schema violations).
"""

from __future__ import annotations

import argparse
import json
import sys

from ._io import dump_json, write_text_atomic
from .errors import DirlapError, InputParseError
from .generators import (
    corpus,
    gen_cycle,
    gen_layered_heavy,
    gen_opposing_cycles,
    gen_random_circulation,
    gen_symmetric_tree,
)
from .graph import check_kirchhoff, graph_from_json_obj, load_graph, save_graph
from .isoperimetric import (
    build_filtration,
    cheeger_exact,
    cheeger_heuristic,
    infinity_profile,
    MAX_EXACT_SUBSET,
)
from .operators import (
    assemble,
    dirichlet,
    operator_from_json_obj,
    operator_to_csv_text,
    operator_to_json_obj,
)
from .spectral import eig, numerical_range_boundary
from .verify import verify_graph

_OP_CHOICES = {
    "delta": "delta",
    "delta-prime": "delta_prime",
    "h": "h",
    "normalized": "normalized_delta",
    "normalized-prime": "normalized_delta_prime",
    "normalized-h": "normalized_h",
}


def _fmt(x: float) -> str:
    return repr(float(x))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_text_atomic(out, text)


def _parse_omega(args) -> list[int] | None:
    if getattr(args, "omega", None) is not None:
        raw = args.omega
    elif getattr(args, "omega_file", None) is not None:
        try:
            with open(args.omega_file) as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputParseError(f"cannot read {args.omega_file}: {exc}") from exc
    else:
        return None
    try:
        ids = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputParseError(f"omega must be a JSON array of ids: {exc}") from exc
    if not isinstance(ids, list) or not all(isinstance(v, int) for v in ids):
        raise InputParseError("omega must be a JSON array of integer ids")
    return ids


def _load_graph_or_operator(path: str):
    """Return ('graph', g) or ('operator', op) depending on the JSON shape."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputParseError(f"{path} is not valid JSON: {exc}") from exc
    if isinstance(obj, dict) and "matrix" in obj:
        return "operator", operator_from_json_obj(obj)
    return "graph", graph_from_json_obj(obj)


def _resolve_operator(args):
    """Build the operator a spectrum/numrange invocation refers to."""
    what, loaded = _load_graph_or_operator(args.input)
    if what == "operator":
        op = loaded
    else:
        op = assemble(loaded, _OP_CHOICES[args.op])
    omega = _parse_omega(args)
    if omega is not None:
        op = dirichlet(op, omega)
    return op


def _cmd_gen(args) -> int:
    if args.family == "cycle":
        g = gen_cycle(args.n, args.w)
    elif args.family == "opposing":
        g = gen_opposing_cycles(args.n, args.w_forward, args.w_backward)
    elif args.family == "circulation":
        g = gen_random_circulation(
            args.n, args.cycles, args.seed, (args.wmin, args.wmax)
        )
    elif args.family == "layered":
        g = gen_layered_heavy(args.layers, args.width, args.gamma, args.radial)
    else:  # tree
        g = gen_symmetric_tree(args.depth, args.branching, args.growth)
    save_graph(g, args.out)
    return 0


def _cmd_check(args) -> int:
    g = load_graph(args.input)
    report = check_kirchhoff(g, args.tol)
    _emit(dump_json(report.to_json_obj()), args.out)
    return 0


def _cmd_spectrum(args) -> int:
    op = _resolve_operator(args)
    if args.dump_operator:
        _dump_operator(op, args.dump_operator)
    values = eig(op.matrix).eigenvalues
    lines = ["re,im"]
    lines += [f"{_fmt(v.real)},{_fmt(v.imag)}" for v in values]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_numrange(args) -> int:
    op = _resolve_operator(args)
    if args.dump_operator:
        _dump_operator(op, args.dump_operator)
    boundary = numerical_range_boundary(op, args.angles)
    lines = ["theta,re,im"]
    lines += [
        f"{_fmt(t)},{_fmt(p.real)},{_fmt(p.imag)}"
        for t, p in zip(boundary.angles, boundary.points)
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _dump_operator(op, path: str) -> None:
    if path.endswith(".json"):
        write_text_atomic(path, dump_json(operator_to_json_obj(op)))
    else:
        write_text_atomic(path, operator_to_csv_text(op))


def _cmd_cheeger(args) -> int:
    g = load_graph(args.input)
    omega = _parse_omega(args)
    if omega is None:
        omega = list(range(g.n))
    if args.mode == "exact":
        result = cheeger_exact(g, omega, args.normalization)
    elif args.mode == "heuristic":
        result = cheeger_heuristic(g, omega, args.normalization)
    else:  # auto
        solve = cheeger_exact if len(set(omega)) <= MAX_EXACT_SUBSET else cheeger_heuristic
        result = solve(g, omega, args.normalization)
    _emit(dump_json(result.to_json_obj()), args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.family is not None:
        if args.family != "corpus":
            raise InputParseError(f"unknown family {args.family!r}, expected 'corpus'")
        reports = []
        for name, g in corpus():
            reports.extend(verify_graph(g, name))
    else:
        if args.input is None:
            raise InputParseError("verify needs a graph file or --family corpus")
        g = load_graph(args.input)
        reports = verify_graph(g, args.input)
    _emit(dump_json([r.to_json_obj() for r in reports]), args.out)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_infinity(args) -> int:
    g = load_graph(args.input)
    filt = build_filtration(g, args.root)
    profile = infinity_profile(g, filt, args.budget)
    lines = ["level,m_c,M_c,h_c,h_tilde_c,nu_dirichlet,ess_lower_bound"]
    for row in profile.levels:
        lines.append(
            ",".join(
                [str(row.level)]
                + [
                    _fmt(v)
                    for v in (
                        row.m_c,
                        row.M_c,
                        row.h_c,
                        row.h_tilde_c,
                        row.nu_dirichlet,
                        row.ess_lower_bound,
                    )
                ]
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirlap",
        description="Laplacians, numerical ranges and Cheeger constants on directed weighted graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph from a named family")
    fam = p.add_subparsers(dest="family", required=True)
    f = fam.add_parser("cycle", help="directed n-cycle")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--w", type=float, default=1.0)
    f = fam.add_parser("opposing", help="two opposing weighted cycles")
    f.add_argument("--n", type=int, default=3)
    f.add_argument("--w-forward", type=float, default=2.0)
    f.add_argument("--w-backward", type=float, default=1.0)
    f = fam.add_parser("circulation", help="superposition of random cycles")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--cycles", type=int, default=3)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--wmin", type=float, default=0.25)
    f.add_argument("--wmax", type=float, default=4.0)
    f = fam.add_parser("layered", help="concentric cycles with growing weights")
    f.add_argument("--layers", type=int, required=True)
    f.add_argument("--width", type=int, required=True)
    f.add_argument("--gamma", type=float, default=2.0)
    f.add_argument("--radial", type=float, default=1.0)
    f = fam.add_parser("tree", help="symmetric-weight rooted tree")
    f.add_argument("--depth", type=int, default=2)
    f.add_argument("--branching", type=int, default=2)
    f.add_argument("--growth", type=float, default=1.0)
    for f in fam.choices.values():
        f.add_argument("--out", required=True, help="output graph JSON path")

    p = sub.add_parser("check", help="report flow balance of a graph")
    p.add_argument("input", help="graph JSON file")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", default=None)

    for name, help_text in (
        ("spectrum", "eigenvalues as CSV (re,im)"),
        ("numrange", "numerical range boundary as CSV (theta,re,im)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="graph JSON or exported operator JSON")
        p.add_argument("--op", choices=sorted(_OP_CHOICES), default="delta")
        p.add_argument("--omega", default=None, help="JSON array of vertex ids")
        p.add_argument("--omega-file", default=None)
        p.add_argument("--dump-operator", default=None, help="also export the operator (.json or CSV)")
        p.add_argument("--out", default=None)
        if name == "numrange":
            p.add_argument("--angles", type=int, default=360)

    p = sub.add_parser("cheeger", help="isoperimetric constant of a subset")
    p.add_argument("input", help="graph JSON file")
    p.add_argument("--omega", default=None, help="JSON array of vertex ids (default: all)")
    p.add_argument("--omega-file", default=None)
    p.add_argument("--normalization", choices=["measure", "beta_plus"], default="measure")
    p.add_argument("--mode", choices=["auto", "exact", "heuristic"], default="auto")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run the inequality suite, exit 1 on failure")
    p.add_argument("input", nargs="?", default=None, help="graph JSON file")
    p.add_argument("--family", default=None, help="'corpus' to run the built-in corpus")
    p.add_argument("--out", default=None)

    p = sub.add_parser("infinity", help="filtration complement profile as CSV")
    p.add_argument("input", help="graph JSON file")
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--budget", type=int, default=MAX_EXACT_SUBSET)
    p.add_argument("--out", default=None)
    return parser


_COMMANDS = {
    "gen": _cmd_gen,
    "check": _cmd_check,
    "spectrum": _cmd_spectrum,
    "numrange": _cmd_numrange,
    "cheeger": _cmd_cheeger,
    "verify": _cmd_verify,
    "infinity": _cmd_infinity,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DirlapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
