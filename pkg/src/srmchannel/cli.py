"""Command-line workbench.

Subcommands: ``c1`` (single-use quantities), ``sweep`` (figure-reproduction
tables), ``threshold`` (superadditivity onset), ``synthesize`` (decoder
unitary, factors, and gate network), ``gatecheck`` (pulse-sequence solve).

Exit status: 0 success, 2 usage/domain error, 3 verification or search
failure, 4 resource limit.
"""

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from . import binary_channel, codebook as cb_mod, sqrm, sweep, synthesis
from . import cavityqed
from .exceptions import (
    DomainError,
    ResourceError,
    SearchFailureError,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_RESOURCE = 4


def _fmt(value):
    return f"{value:.9g}"


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_grid(spec):
    try:
        start, end, step = (float(tok) for tok in spec.split(":"))
    except ValueError as exc:
        raise DomainError(f"bad grid spec {spec!r}, expected start:end:step") from exc
    if step <= 0 or end < start:
        raise DomainError(f"bad grid spec {spec!r}")
    count = int(round((end - start) / step))
    grid = [start + k * step for k in range(count + 1)]
    if grid[-1] > end + 1e-12:
        grid.pop()
    grid[-1] = min(grid[-1], end)
    return grid


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        _atomic_write(out, text)


def _cmd_c1(args):
    if args.kappa is not None:
        grid = [args.kappa]
    else:
        grid = _parse_grid(args.grid)
    rows = []
    for kappa in grid:
        rows.append(
            (
                kappa,
                binary_channel.crossover_probability(kappa),
                binary_channel.capacity_c1(kappa),
                binary_channel.holevo_limit(kappa),
            )
        )
    if args.json:
        lines = [
            json.dumps({"kappa": k, "p": p, "c1": c, "holevo": h})
            for k, p, c, h in rows
        ]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = ["kappa,p,c1,holevo"]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_sweep(args):
    n_list = [int(tok) for tok in args.n.split(",")]
    grid = _parse_grid(args.grid)
    rows = sweep.sweep_table(n_list, grid, codebook_choice=args.codebook)
    if args.json:
        keys = sweep.CSV_HEADER.split(",")
        lines = [
            json.dumps(dict(zip(keys, (r.n, r.kappa, r.c1, r.per_letter_info,
                                       r.margin, r.pe_block, r.p_single, r.holevo))))
            for r in rows
        ]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(sweep.rows_to_csv(rows), args.out)
    return EXIT_OK


def _cmd_threshold(args):
    result = sweep.threshold_kappa(args.n, args.tol)
    if args.json:
        payload = {
            "n": result.n,
            "kappa_star": result.kappa_star,
            "bracket_width": result.bracket_width,
        }
        print(json.dumps(payload))
    else:
        print("none" if result.kappa_star is None else _fmt(result.kappa_star))
    return EXIT_OK


def _cmd_synthesize(args):
    if not 0.0 < args.kappa < 1.0:
        raise DomainError("synthesis requires 0 < kappa < 1")
    book = cb_mod.even_weight_codebook(args.n)
    v, d, factors, gates = synthesis.decoder_network(book, args.kappa)
    dim = 2**args.n
    recomposed = synthesis.recompose(d, factors, dim)
    if np.max(np.abs(recomposed - v)) > 1e-10:
        print("verification failed: two-level recomposition mismatch", file=sys.stderr)
        return EXIT_VERIFY
    simulated = synthesis.simulate_network(gates, args.n)
    if np.max(np.abs(simulated - v)) > 1e-9:
        print("verification failed: gate network does not match V", file=sys.stderr)
        return EXIT_VERIFY
    os.makedirs(args.out, exist_ok=True)
    _atomic_write(
        os.path.join(args.out, "v.txt"),
        "\n".join(" ".join(f"{x:.17g}" for x in row) for row in v) + "\n",
    )
    _atomic_write(
        os.path.join(args.out, "factors.txt"),
        "\n".join(f"{f.i} {f.j} {f.gamma:.17g}" for f in factors) + "\n",
    )
    _atomic_write(os.path.join(args.out, "network.txt"), synthesis.network_to_text(gates))
    x = sqrm.principal_sqrt(cb_mod.gram_matrix(book, args.kappa))
    pe = sqrm.average_error_probability(book.priors, x)
    print(f"P_e {_fmt(pe)}")
    for m, w in enumerate(book.words):
        print(f"P({w}|{w}) {_fmt(x[m, m] ** 2)}")
    return EXIT_OK


def _cmd_gatecheck(args):
    if args.delta == 0.0:
        raise DomainError("zero detuning: the dispersive interaction is undefined")
    try:
        result = cavityqed.solve_sequence_params(args.g, args.delta, args.nu)
    except SearchFailureError as exc:
        best = exc.best
        print(f"search failure: {exc}", file=sys.stderr)
        if best is not None:
            print(best["params"].to_text(), end="")
            print(f"fidelity {best['fidelity']:.9g}")
            print(f"invariant_distance {best['invariant_distance']:.3e}")
        return EXIT_VERIFY
    print(result["params"].to_text(), end="")
    print(f"fidelity {result['fidelity']:.9g}")
    print(f"invariant_distance {result['invariant_distance']:.3e}")
    print(f"leakage {result['leakage']:.3e}")
    ok = (
        result["fidelity"] >= 0.999
        and result["invariant_distance"] < 1e-6
        and result["leakage"] < 1e-8
    )
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="srmchannel",
        description="Binary pure-state channel capacities, square-root-measurement "
        "decoding, and decoder synthesis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("c1", help="single-use channel quantities")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--kappa", type=float)
    group.add_argument("--grid", help="start:end:step")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_c1)

    p = sub.add_parser("sweep", help="figure-reproduction tables")
    p.add_argument("--n", required=True, help="comma-separated block lengths")
    p.add_argument("--grid", required=True, help="start:end:step")
    p.add_argument("--codebook", choices=("even", "alt"), default="even")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("threshold", help="superadditivity onset")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("synthesize", help="decoder unitary and gate network")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_synthesize)

    p = sub.add_parser("gatecheck", help="solve and verify the pulse sequence")
    p.add_argument("--g", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=5.0)
    p.add_argument("--nu", type=float, default=7.0)
    p.set_defaults(func=_cmd_gatecheck)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SearchFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
