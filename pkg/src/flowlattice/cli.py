"""Command-line front end: parse graphs, matrices, and Gram files, run
the pipeline, and emit human or machine reports.

Exit status: 0 = affirmative/success, 1 = negative decision,
2 = input or bound error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import flows, gram, intmat, matroid, rebuild
from .errors import (
    BoundExceededError,
    FlowLatticeError,
    FormatError,
    MembershipError,
    NotABaseError,
)

_BOUND_FLAGS = {
    "tu_bound": "FLOWLAT_TU_BOUND",
    "circuit_bound": "FLOWLAT_CIRCUIT_BOUND",
    "iso_bound": "FLOWLAT_ISO_BOUND",
    "subset_bound": "FLOWLAT_SUBSET_BOUND",
}


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise FormatError(f"no such file: {path}")
    return p.read_text()


def load_matroid(path: str) -> matroid.RegularMatroid:
    """Matroid file if the header says so, otherwise a graph edge list."""
    text = _read(path)
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.split()[0] == "matroid":
            return matroid.parse_matroid(text)
        break
    return matroid.from_graph(matroid.parse_graph(text))


def load_vector(spec: str) -> flows.FlowVector:
    if Path(spec).is_file():
        return flows.parse_flow_vector(_read(spec))
    return flows.parse_flow_vector(spec)


def _parse_base(spec: str | None, m: matroid.RegularMatroid):
    if spec is None:
        return None
    try:
        idx = tuple(int(t) - 1 for t in spec.replace(",", " ").split())
    except ValueError as exc:
        raise FormatError(f"base must be 1-based indices: {spec!r}") from exc
    if any(not 0 <= i < m.size for i in idx):
        raise FormatError(f"base index out of range in {spec!r}")
    return idx


def _subset_labels(m: matroid.RegularMatroid, subset) -> str:
    return "{" + ",".join(m.ground[i] for i in subset) + "}"


def _emit_witness(check: intmat.UnimodularityCheck) -> str:
    return (
        f"witness rows={list(check.witness_rows)} cols={list(check.witness_cols)} "
        f"det={check.witness_det}"
    )


def cmd_tu_check(args) -> int:
    m = intmat.parse_matrix(_read(args.file))
    tu = intmat.is_totally_unimodular(m)
    wu = intmat.is_weakly_unimodular(m)
    print(f"TU {'yes' if tu else 'no'}" + ("" if tu else "  " + _emit_witness(tu)))
    print(f"WU {'yes' if wu else 'no'}" + ("" if wu else "  " + _emit_witness(wu)))
    return 0 if tu else 1


def cmd_circuits(args) -> int:
    m = load_matroid(args.file)
    cs = matroid.circuits(m)
    print(f"circuits {len(cs)}")
    for c in cs:
        print(_subset_labels(m, c))
    return 0


def cmd_coloops(args) -> int:
    m = load_matroid(args.file)
    loops, coloops = matroid.loops_and_coloops(m)
    print(f"loops {_subset_labels(m, loops)}")
    print(f"coloops {_subset_labels(m, coloops)}")
    return 0


def _print_lattice(lat: flows.FlowLattice, porcelain: bool) -> None:
    if not porcelain:
        print("basis columns (rows = ground elements):")
    print(lat.basis.text(), end="")
    if not porcelain:
        print("gram:")
    print(lat.gram.text(), end="")


def cmd_flows(args) -> int:
    m = load_matroid(args.file)
    lat = flows.fundamental_basis(m, _parse_base(args.base, m))
    _print_lattice(lat, args.porcelain)
    return 0


def cmd_cuts(args) -> int:
    m = load_matroid(args.file)
    lat = flows.cut_basis(m, _parse_base(args.base, m))
    _print_lattice(lat, args.porcelain)
    return 0


def cmd_decompose(args) -> int:
    m = load_matroid(args.file)
    lat = flows.fundamental_basis(m)
    beta = load_vector(args.vector)
    parts = flows.consistent_decompose(lat, beta)
    for p in parts:
        print(p.text())
    total = flows.FlowVector.of([0] * m.size)
    for p in parts:
        total = total + p
    print("sum OK" if total == beta else "sum MISMATCH")
    return 0 if total == beta else 1


def cmd_simple(args) -> int:
    m = load_matroid(args.file)
    lat = flows.fundamental_basis(m)
    alpha = load_vector(args.vector)
    res = flows.is_simple_metric(lat, alpha)
    if res:
        print("SIMPLE")
        return 0
    b, c = res.witness
    print("NOT-SIMPLE")
    print(f"witness beta  {b.text()}")
    print(f"witness gamma {c.text()}")
    print(f"inner {res.witness_inner}")
    return 1


def cmd_gtest(args) -> int:
    a = gram.parse_gram(_read(args.file))
    cls = gram.classify(a)
    if not cls.g_nonnegative:
        print(f"NOT-G-NONNEGATIVE S={{{','.join(str(i + 1) for i in cls.witness)}}}")
        return 1
    print("G-POSITIVE" if cls.g_positive else "G-NONNEGATIVE")
    table = gram.g_table(a)
    ftab = gram.f_table(a)
    for mask in range(1, 1 << a.order):
        if table[mask] or ftab[mask]:
            subset = [i + 1 for i in range(a.order) if mask >> i & 1]
            body = "{" + ",".join(str(i) for i in subset) + "}"
            print(f"f{body} = {ftab[mask]}  g{body} = {table[mask]}")
    print(f"k = {-table[0]}")
    return 0


def cmd_xmatrix(args) -> int:
    a = gram.parse_gram(_read(args.file))
    x = gram.build_x(a)
    print(x.text(), end="")
    return 0


def cmd_signing(args) -> int:
    x = intmat.parse_matrix(_read(args.file))
    u = gram.tu_signing(x)
    if u is None:
        print("NO-TU-SIGNING")
        return 1
    print("TU-SIGNING")
    print(u.text(), end="")
    return 0


def cmd_reconstruct(args) -> int:
    a = gram.parse_gram(_read(args.file))
    out = rebuild.reconstruct_matroid(a)
    if not out:
        print(f"VERDICT NOT-G-FEASIBLE {out.reason}")
        return 1
    rep = out.report
    print("VERDICT G-FEASIBLE")
    print("GRAM")
    print(rep.gram.text(), end="")
    print("X")
    print(gram.build_x(a).text(), end="")
    print("CERTIFICATE")
    print(rep.certificate.text(), end="")
    print("STANDARD-FORM")
    print(rep.standard_form.text(), end="")
    print("MATROID")
    print(rep.matroid.text(), end="")
    return 0


def cmd_isometric(args) -> int:
    m = load_matroid(args.file1)
    n = load_matroid(args.file2)
    decide = {
        "flow": rebuild.flow_lattices_isometric,
        "cut": rebuild.cut_lattices_isometric,
        "mixed": rebuild.mixed_isometric,
    }[args.mode]
    res = decide(m, n)
    if res:
        print("ISOMETRIC")
        for a, b in res.witness.label_map:
            print(f"{a} -> {b}")
        return 0
    print("NOT-ISOMETRIC")
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="flowlat",
        description="Exact flow/cut lattices of regular matroids.",
    )
    p.add_argument("--porcelain", action="store_true",
                   help="stable machine-readable output")
    for flag in _BOUND_FLAGS:
        p.add_argument(f"--{flag.replace('_', '-')}", type=int, default=None)
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, *specs):
        sp = sub.add_parser(name)
        for spec in specs:
            sp.add_argument(*spec[0], **spec[1])
        sp.set_defaults(fn=fn)

    farg = (("file",), {})
    add("tu-check", cmd_tu_check, farg)
    add("circuits", cmd_circuits, farg)
    add("coloops", cmd_coloops, farg)
    add("flows", cmd_flows, farg, (("--base",), {"default": None}))
    add("cuts", cmd_cuts, farg, (("--base",), {"default": None}))
    add("decompose", cmd_decompose, farg, (("vector",), {}))
    add("simple", cmd_simple, farg, (("vector",), {}))
    add("gtest", cmd_gtest, farg)
    add("xmatrix", cmd_xmatrix, farg)
    add("signing", cmd_signing, farg)
    add("reconstruct", cmd_reconstruct, farg)
    add("isometric", cmd_isometric, (("file1",), {}), (("file2",), {}),
        (("--mode",), {"choices": ["flow", "cut", "mixed"], "default": "flow"}))
    return p


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    for flag, env in _BOUND_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            if value <= 0:
                print("ERROR BAD-BOUND: bounds must be positive")
                return 2
            os.environ[env] = str(value)
    try:
        return args.fn(args)
    except BoundExceededError as exc:
        print(f"ERROR BOUND-EXCEEDED: {exc}")
        return 2
    except NotABaseError as exc:
        print(f"ERROR NOT-A-BASE: {exc}")
        return 2
    except MembershipError as exc:
        print(f"ERROR NOT-IN-LATTICE: {exc}")
        return 2
    except FlowLatticeError as exc:
        print(f"ERROR BAD-INPUT: {exc}")
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
