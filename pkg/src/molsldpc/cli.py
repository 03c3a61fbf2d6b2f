"""``mols`` command line front end."""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from itertools import combinations
from pathlib import Path

import numpy as np

from . import __version__
from .constraints import CONSTRAINTS, check_constraints, find_good_tuples
from .design import (
    ParityCheckMatrix,
    incidence_matrix,
    read_alist,
    td_from_mols,
    to_alist,
    truncate,
    with_meta,
)
from .errors import MolsError
from .gf import field_new
from .gf2 import build_encoder, write_generator
from .latin import are_orthogonal, build_mols, class_representative
from .qc import qc_column_order, qc_matrix
from .sim import DEFAULT_SEED, SimConfig, parse_eps, run_simulation
from .stopping.enumerate import enumerate_stopping_sets

log = logging.getLogger("molsldpc")


# --- argument helpers -------------------------------------------------------------

def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        a, _, b = item.partition(":")
        out.append((int(a), int(b) if b else 1))
    if not out:
        raise argparse.ArgumentTypeError("no scale pairs given")
    return out


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _eps(text: str) -> list[float]:
    try:
        return parse_eps(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _params(args) -> dict:
    skip = {"func", "command"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        if isinstance(v, list):
            v = [list(x) if isinstance(x, tuple) else x for x in v]
        out[k] = v
    return out


def write_manifest(args, outputs: list, inputs: list = (), matrix_meta: dict | None = None) -> None:
    """Sidecar ``<out>.manifest.json`` next to the primary output."""
    if not outputs:
        return
    manifest = {
        "subcommand": args.command,
        "parameters": _params(args),
        "version": __version__,
        "seed": getattr(args, "seed", None),
        "inputs": {str(p): _sha256(p) for p in inputs},
        "outputs": {str(p): _sha256(p) for p in outputs},
    }
    if matrix_meta is not None:
        manifest["matrix"] = matrix_meta
    Path(f"{outputs[0]}.manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def cells_for(q: int, order: str | None, n_cols: int):
    if order == "design":
        cells = np.stack(np.divmod(np.arange(q * q), q), axis=1)
    elif order == "qc":
        cells = np.array(qc_column_order(q), dtype=np.int64)
    else:
        return None
    return cells[:n_cols]


def load_matrix(path) -> ParityCheckMatrix:
    """Read an alist file, restoring code metadata from its manifest when it matches."""
    h = read_alist(path)
    side = Path(f"{path}.manifest.json")
    if side.exists():
        try:
            man = json.loads(side.read_text())
        except json.JSONDecodeError:
            return h
        meta = man.get("matrix")
        digest = man.get("outputs", {}).get(str(path))
        if meta and digest == _sha256(path) and meta.get("q"):
            q, order = int(meta["q"]), meta.get("order")
            h = with_meta(
                h, q=q, m=meta.get("m"), pairs=tuple(tuple(p) for p in meta.get("pairs", ())),
                order=order, truncated=meta.get("truncate"), cells=cells_for(q, order, h.n_cols),
            )
    return h


def _code_from_args(args) -> ParityCheckMatrix:
    ctx = field_new(args.q)
    if args.qc:
        if args.pairs and any(b != 1 for _, b in args.pairs):
            raise MolsError("the diagonal layout takes reduced factors; pass --alphas")
        alphas = args.alphas or [a for a, _ in args.pairs]
        h = qc_matrix(ctx, alphas)
    else:
        pairs = args.pairs or [(a, 1) for a in args.alphas]
        h = incidence_matrix(td_from_mols(build_mols(ctx, pairs)))
    if args.truncate is not None:
        h = truncate(h, args.truncate)
    return h


# --- subcommands --------------------------------------------------------------------

def cmd_inspect(args) -> int:
    ctx = field_new(args.q)
    mols = build_mols(ctx, args.pairs)
    buf = io.StringIO()
    if args.format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "alpha", "beta", "rep_alpha", "rep_beta"])
        for i, sq in enumerate(mols.squares):
            w.writerow([i, sq.alpha, sq.beta, *class_representative(ctx, sq.alpha, sq.beta)])
        w.writerow([])
        w.writerow(["i", "j", "orthogonal"])
        for (i, a), (j, b) in combinations(enumerate(mols.squares), 2):
            w.writerow([i, j, int(are_orthogonal(a, b))])
    else:
        width = len(str(args.q - 1))
        for i, sq in enumerate(mols.squares):
            rep = class_representative(ctx, sq.alpha, sq.beta)
            buf.write(f"square {i}: (alpha, beta) = ({sq.alpha}, {sq.beta}), "
                      f"class representative ({rep[0]}, {rep[1]})\n")
            for row in sq.array:
                buf.write(" ".join(f"{v:>{width}}" for v in row) + "\n")
            buf.write("\n")
        for (i, a), (j, b) in combinations(enumerate(mols.squares), 2):
            buf.write(f"squares {i} and {j}: {'orthogonal' if are_orthogonal(a, b) else 'NOT orthogonal'}\n")
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_check(args) -> int:
    ctx = field_new(args.q)
    if len(args.alphas) < 2:
        raise MolsError("need at least two scale factors")
    buf = io.StringIO()
    rows = [check_constraints(ctx, a, b).as_row() for a, b in combinations(args.alphas, 2)]
    if args.format == "csv":
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        head = ["alpha1", "alpha2", *CONSTRAINTS, "violations"]
        buf.write("  ".join(f"{h:>8}" for h in head) + "\n")
        for r in rows:
            cells = [r["alpha1"], r["alpha2"], *(r[c] for c in CONSTRAINTS), r["violations"] or "-"]
            buf.write("  ".join(f"{str(v):>8}" for v in cells) + "\n")
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_search(args) -> int:
    ctx = field_new(args.q)
    tuples = find_good_tuples(ctx, args.m, args.limit)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"alpha{i + 1}" for i in range(args.m)])
    w.writerows(tuples)
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_build(args) -> int:
    h = _code_from_args(args)
    Path(args.out).write_text(to_alist(h))
    outputs = [args.out]
    if args.generator:
        write_generator(build_encoder(h), args.generator)
        outputs.append(args.generator)
    write_manifest(args, outputs, matrix_meta=h.meta())
    log.info("wrote %s (%dx%d)", args.out, *h.shape)
    return 0


def cmd_export_alist(args) -> int:
    if args.input:
        h = load_matrix(args.input)
        inputs = [args.input]
    else:
        if args.q is None or not (args.pairs or args.alphas):
            raise argparse.ArgumentTypeError("give --in or --q with --pairs/--alphas")
        h = _code_from_args(args)
        inputs = []
    Path(args.out).write_text(to_alist(h))
    write_manifest(args, [args.out], inputs, matrix_meta=h.meta())
    print(h.digest())
    return 0


def cmd_stopsets(args) -> int:
    h = load_matrix(args.input)
    rep = enumerate_stopping_sets(
        h, args.cap, witnesses=args.witnesses, minimal=True, symmetry=args.symmetry,
        workers=args.workers, max_cap=args.max_cap,
    )
    text = rep.to_json(minimal_only=args.minimal_only)
    _emit(text, args.out)
    if args.out:
        write_manifest(args, [args.out], [args.input])
    return 0


def cmd_simulate(args) -> int:
    h = load_matrix(args.input)
    cfg = SimConfig(tuple(args.eps), args.trials, args.seed, args.det_cap, workers=args.workers)
    res = run_simulation(h, cfg)
    _emit(res.to_csv(), args.out)
    if args.out:
        write_manifest(args, [args.out], [args.input])
    return 0


# --- parser ---------------------------------------------------------------------------

def _add_code_args(p, required=True):
    p.add_argument("--q", type=int, required=required, help="field order")
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--pairs", type=_pairs, help="scale pairs a1:b1,a2:b2,...")
    g.add_argument("--alphas", type=_ints, help="reduced scale factors a1,a2,...")
    p.add_argument("--qc", action="store_true", help="diagonal quasi-cyclic column order (prime q)")
    p.add_argument("--truncate", type=int, default=None, metavar="A", help="keep A column groups")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mols", description="LDPC codes from MOLS over GF(q)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="print squares, class representatives, orthogonality")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--pairs", type=_pairs, required=True)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("check", help="constraint table for every pair of factors")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--alphas", type=_ints, required=True)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="admissible tuples as CSV")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("build", help="write a parity-check matrix as alist")
    _add_code_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--generator", help="also write the systematic generator here")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("export-alist", help="write a code (or re-export an alist) and print its digest")
    p.add_argument("--in", dest="input")
    _add_code_args(p, required=False)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_alist)

    p = sub.add_parser("stopsets", help="exhaustive stopping-set histogram as JSON")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--minimal-only", action="store_true")
    p.add_argument("--witnesses", type=int, default=5)
    p.add_argument("--symmetry", choices=("auto", "orbit", "none"), default="auto")
    p.add_argument("--max-cap", type=int, default=12)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stopsets)

    p = sub.add_parser("simulate", help="BEC Monte Carlo with the peeling decoder, CSV out")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--eps", type=_eps, required=True, help="value, list, or start:stop:step")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--det-cap", type=int, default=12)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("MOLS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"mols: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else ""
        name = type(exc).__name__
        if not msg.startswith(name):
            msg = f"{name}: {msg}"
        print(f"mols: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
