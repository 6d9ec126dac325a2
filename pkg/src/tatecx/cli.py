"""Command line interface: ``tatecx homology | tate | verify | pinch | fixtures``.

Exit status is 0 when everything checked passes, 1 on a verification
failure and 2 on bad input.  The default internal-degree bound comes from
``TATECX_DEGREE_BOUND`` (6 if unset).
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from importlib import resources
from pathlib import Path

from .complexes import ComplexError, HomologyTable, UndeterminedDegreeError, homology
from .constructions import PinchedHom, PinchedTensor, TensorComplex
from .fileformat import FormatError, dump_complex, load_complex
from .matrix import ShapeError
from .reports import SUITES, Claim, claims_document, dumps, run_suites
from .rings import RingError
from .tate import (
    CompleteResolution,
    TateError,
    compare_tables,
    tate_cohomology,
    tate_cohomology_pinched,
    tate_homology,
    tate_homology_pinched,
    tensor_cycle_witness,
    validate_complete_resolution,
    zeroth_cokernel,
    zeroth_cycles,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_WINDOW = (-4, 4)
DEFAULT_BOUND = 6
INPUT_ERRORS = (FormatError, RingError, ComplexError, ShapeError, TateError, OSError)


class InputError(ValueError):
    pass


def default_bound() -> int:
    raw = os.environ.get("TATECX_DEGREE_BOUND")
    if raw is None:
        return DEFAULT_BOUND
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"TATECX_DEGREE_BOUND must be an integer, got {raw!r}") from None


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a range like -3..3, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _join_negative_ranges(argv: list[str]) -> list[str]:
    """Let ``--range -3..3`` through; argparse would read ``-3..3`` as an option."""
    out, k = [], 0
    while k < len(argv):
        a = argv[k]
        if a in ("--range", "-r") and k + 1 < len(argv) and re.fullmatch(r"-\d+\.\.-?\d+", argv[k + 1]):
            out.append(f"{a}={argv[k + 1]}" if a == "--range" else f"--range={argv[k + 1]}")
            k += 2
            continue
        out.append(a)
        k += 1
    return out


def _emit(args, text: str, doc: dict) -> None:
    if args.json:
        print(dumps(doc))
    else:
        print(text)
    if getattr(args, "report", None):
        Path(args.report).write_text(dumps(doc) + "\n")


def _bound(args) -> int:
    return args.degree_bound if args.degree_bound is not None else default_bound()


# -- homology -----------------------------------------------------------------


def _unbounded_tensor(c) -> bool:
    if not isinstance(c, TensorComplex):
        return False
    (a, b), (x, y) = c.M.bounds(), c.N.bounds()
    return (a is None and x is None) or (b is None and y is None)


def _witness_search(c: TensorComplex, lo: int, hi: int, bound: int, support: int):
    """Look for rank-one cycles ``f * e[i, n-i]`` that are not boundaries."""
    R = c.ring
    coefficients = ["1", *R.names] if R.is_graded else ["1"] + [str(k) for k in range(2, R.q)]
    rows = {}
    for n in range(lo, hi + 1):
        found = None
        for i0 in (0, -1, 1):
            if c.M.module(i0).rank != 1 or c.N.module(n - i0).rank != 1:
                raise InputError("witness search needs rank-one terms")
            for f in coefficients:
                w = tensor_cycle_witness(c.M, c.N, n, i0, f, support, bound)
                if w["cycle"] and not w["boundary"]:
                    found = w
                    break
            if found:
                break
        rows[str(n)] = found
    return rows


def cmd_homology(args) -> int:
    c = load_complex(args.file)
    lo, hi = args.range
    bound = _bound(args)
    if _unbounded_tensor(c):
        rows = _witness_search(c, lo, hi, bound, args.support)
        lines = [f"homology of an unbounded tensor product; witnesses among candidate preimages supported on |i| <= {args.support}"]
        for n in range(lo, hi + 1):
            w = rows[str(n)]
            lines.append(f"H_{n}: " + (f"nonzero, witness {w['element']} (internal degree {w['internal_degree']})" if w else "no witness found"))
        _emit(args, "\n".join(lines), {"file": str(args.file), "range": [lo, hi], "bound": bound, "support": args.support, "witnesses": rows})
        return EXIT_OK
    h = homology(c, range(lo, hi + 1), bound)
    _emit(args, h.format_text() or "(empty table)", {"file": str(args.file), "range": [lo, hi], "table": h.to_dict()})
    return EXIT_OK


# -- tate ---------------------------------------------------------------------


def cmd_tate(args) -> int:
    T = load_complex(args.resolution)
    A = load_complex(args.second)
    if T.ring != A.ring:
        raise InputError("the two files describe complexes over different rings")
    cr = CompleteResolution.from_totally_acyclic(T, str(args.resolution))
    lo, hi = args.range
    bound = _bound(args) if T.ring.is_graded else None
    degrees = range(lo, hi + 1)
    tables: dict[str, HomologyTable] = {}
    if args.mode == "tor":
        if args.route in ("direct", "both"):
            tables["direct"] = tate_homology(cr, zeroth_cokernel(A), degrees, bound)
        if args.route in ("pinched", "both"):
            tables["pinched"] = tate_homology_pinched(cr, A, degrees, bound)
    else:
        if args.route in ("direct", "both"):
            tables["direct"] = tate_cohomology(cr, zeroth_cycles(A), degrees, bound)
        if args.route in ("pinched", "both"):
            tables["pinched"] = tate_cohomology_pinched(cr, A, degrees, bound)
    doc = {"mode": args.mode, "route": args.route, "range": [lo, hi], "tables": {k: v.to_dict() for k, v in tables.items()}}
    label = "Ttor_i" if args.mode == "tor" else "Text^i"
    lines = []
    for k, t in tables.items():
        lines.append(f"[{k}] {label}")
        lines.append(t.format_text())
    status = EXIT_OK
    if args.route == "both":
        rep = compare_tables(tables["direct"], tables["pinched"], "direct vs pinched")
        doc["agree"] = rep.ok
        doc["failures"] = [{"where": w, "message": m} for w, m in rep.failures]
        lines.append("routes agree" if rep.ok else "routes DISAGREE: " + "; ".join(m for _, m in rep.failures))
        status = EXIT_OK if rep.ok else EXIT_FAIL
    _emit(args, "\n".join(lines), doc)
    return status


# -- verify -------------------------------------------------------------------


def cmd_verify(args) -> int:
    claims: list[Claim] = []
    if args.file:
        for path in args.file:
            T = load_complex(path)
            cr = CompleteResolution.from_totally_acyclic(T, str(path))
            bound = _bound(args) if T.ring.is_graded else None
            rep = validate_complete_resolution(cr, tuple(args.range), bound)
            claims.append(Claim("file", "valid complete resolution", "complete resolution data", str(path), rep.ok, list(args.range), bound, list(rep.failures)))
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "none":
        claims.extend(run_suites(names))
    doc = claims_document(claims)
    lines = []
    for c in claims:
        mark = "PASS" if c.ok else "FAIL"
        lines.append(f"{mark} [{c.suite}] {c.fixture}: {c.claim}")
        for w, m in c.failures:
            lines.append(f"     at {w}: {m}")
    lines.append(f"{doc['passed']} passed, {doc['failed']} failed")
    _emit(args, "\n".join(lines), doc)
    return EXIT_OK if doc["ok"] else EXIT_FAIL


# -- pinch --------------------------------------------------------------------


def cmd_pinch(args) -> int:
    T = load_complex(args.first)
    A = load_complex(args.second)
    if T.ring != A.ring:
        raise InputError("the two files describe complexes over different rings")
    c = PinchedTensor(T, A) if args.kind == "tensor" else PinchedHom(T, A)
    lo, hi = args.range
    name = f"pinched {args.kind}"
    dump_complex(c, args.out, (lo, hi), name)
    ranks = c.ranks(lo, hi)
    _emit(args, f"wrote {args.out}: ranks " + ", ".join(f"{i}:{r}" for i, r in ranks.items()), {"out": str(args.out), "range": [lo, hi], "ranks": {str(i): r for i, r in ranks.items()}})
    return EXIT_OK


# -- fixtures -----------------------------------------------------------------


def fixture_dir():
    return resources.files("tatecx") / "data"


def cmd_fixtures(args) -> int:
    d = fixture_dir()
    names = sorted(p.name for p in d.iterdir() if p.name.endswith(".yaml"))
    if args.name:
        if args.name not in names:
            raise InputError(f"no fixture {args.name!r}; available: {', '.join(names)}")
        sys.stdout.write((d / args.name).read_text())
        return EXIT_OK
    for n in names:
        print(n)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tatecx", description="Exact Tate homology over small rings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, rng=True):
        if rng:
            sp.add_argument("--range", type=parse_range, default=DEFAULT_WINDOW, help="homological degrees a..b (default -4..4)")
        sp.add_argument("--degree-bound", type=int, default=None, help="internal-degree bound (default $TATECX_DEGREE_BOUND or 6)")
        sp.add_argument("--json", action="store_true", help="print the machine-readable document instead of text")
        sp.add_argument("--report", help="also write the JSON document to this file")

    sp = sub.add_parser("homology", help="homology table of a complex file")
    sp.add_argument("file")
    sp.add_argument("--support", type=int, default=8, help="support bound for unbounded tensor products")
    common(sp)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("tate", help="Tate homology or cohomology from a resolution file and a second complex")
    sp.add_argument("resolution", help="totally acyclic complex T resolving M = C_0(T)")
    sp.add_argument("second", help="acyclic complex A (N = C_0(A) for tor, Z_0(A) for ext)")
    sp.add_argument("--mode", choices=("tor", "ext"), default="tor")
    sp.add_argument("--route", choices=("direct", "pinched", "both"), default="both")
    common(sp)
    sp.set_defaults(func=cmd_tate)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("suite", nargs="?", default="all", choices=["all", "none", *sorted(SUITES)])
    sp.add_argument("--file", action="append", help="also validate this resolution file (repeatable)")
    sp.add_argument("--range", type=parse_range, default=(-6, 6), help="window for --file checks (default -6..6)")
    common(sp, rng=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("pinch", help="write the pinched tensor product or pinched Hom of two files")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--kind", choices=("tensor", "hom"), default="tensor")
    sp.add_argument("--out", required=True)
    common(sp)
    sp.set_defaults(func=cmd_pinch)

    sp = sub.add_parser("fixtures", help="list shipped fixture files or print one")
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_fixtures, json=False)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = _join_negative_ranges(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.func(args)
    except UndeterminedDegreeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, *INPUT_ERRORS) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
