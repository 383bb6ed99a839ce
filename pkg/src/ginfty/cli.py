"""Command line driver: ``ginfty boundary``, ``ginfty verify`` and ``ginfty hh``.

Exit codes: 0 everything passed, 1 some check failed, 2 bad input, 3 the
requested size is beyond what is supported.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path
from typing import List, Optional

from .core import InvalidArgument, Unsupported
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_SCALE = 0, 1, 2, 3

DEFAULT_ALGEBRAS = ["rationals", "dual_numbers", "truncated_cubic", "upper_triangular", "group_algebra_z2"]
DEFAULT_LIE = ["sl2", "heisenberg3"]


class InputError(Exception):
    pass


def fixture_path(name: str) -> Path:
    """A path as given, or else the bundled fixture of that name (with or without .json)."""
    p = Path(name)
    if p.exists():
        return p
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    bundled = resources.files("ginfty") / "data" / f"{stem}.json"
    if bundled.is_file():
        return Path(str(bundled))
    raise InputError(f"no such file or bundled fixture: {name}")


def load_algebra(name: str):
    from .hochschild import AlgebraPresentation, InvalidPresentation
    path = fixture_path(name)
    try:
        return AlgebraPresentation.load(path)
    except InvalidPresentation as exc:
        w = f" (violating tuple {list(exc.witness)})" if exc.witness else ""
        raise InputError(f"{path}: {exc}{w}") from exc
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_lie(name: str):
    from .galgebras import LieAlgebraPresentation
    from .hochschild import InvalidPresentation
    path = fixture_path(name)
    try:
        return LieAlgebraPresentation.load(path)
    except InvalidPresentation as exc:
        w = f" (violating tuple {list(exc.witness)})" if exc.witness else ""
        raise InputError(f"{path}: {exc}{w}") from exc
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


# ---------------------------------------------------------------- boundary

def cmd_boundary(args) -> int:
    from .cells import ParseError, boundary, boundary_chain, parse_cell
    try:
        cell = parse_cell(args.cell)
    except (ParseError, InvalidArgument) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        chain = boundary(cell)
    except Unsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    print(chain)
    if args.check_d2:
        ok = boundary_chain(chain).is_zero()
        print("d^2 = 0: " + ("PASS" if ok else "FAIL"))
        return EXIT_PASS if ok else EXIT_FAIL
    return EXIT_PASS


# ---------------------------------------------------------------- suites

def _hochschild_one(name: str, max_arity: int, max_inputs: int):
    from .hochschild import verify_braces_identities
    return verify_braces_identities(load_algebra(name), max_arity=max_arity, max_inputs=max_inputs).entries


def suite_hochschild(args) -> Report:
    from .hochschild import Cochain, coderivation_bracket_oracle, gerst_bracket, ORACLE_SIGN
    from .report import entry
    names = args.algebra or DEFAULT_ALGEBRAS
    max_arity = args.max_arity or 2
    max_inputs = args.max_inputs or 5
    if max_arity > 2 or max_inputs > 5:
        _warn("bounds above max-arity 2 / max-inputs 5 can take a long time")
    for n in names:  # fail early on bad input
        load_algebra(n)
    rep = Report()
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            for es in pool.map(_hochschild_one, names, [max_arity] * len(names), [max_inputs] * len(names)):
                rep.entries.extend(es)
    else:
        for n in names:
            rep.entries.extend(_hochschild_one(n, max_arity, max_inputs))
    for n in names:
        A = load_algebra(n)
        bad = None
        basis = [b for k in range(max_arity + 1) for b in Cochain.basis(A, k)]
        for x in basis:
            for y in basis:
                if coderivation_bracket_oracle(x, y) != gerst_bracket(x, y).scale(ORACLE_SIGN):
                    bad = [str(x.entries), str(y.entries)]
                    break
            if bad:
                break
        rep.add(entry("braces.bracket_oracle", {"algebra": A.name, "max_arity": max_arity}, bad))
    return rep


def suite_ginf(args) -> Report:
    from . import ginf
    name = (args.algebra or ["dual_numbers"])[0]
    A = load_algebra(name)
    max_degree = args.max_arity or 2
    max_total = (args.max_inputs or 5) - 1
    if max_degree > 2 or max_total > 4:
        _warn("bounds above max-arity 2 / max-inputs 5 can take a long time")
    smap = ginf.hochschild_structure_map(A, N=max_total + 1, twist=True)
    rep = ginf.check_all_identities(smap, max_degree, max_total)
    rep.extend(ginf.check_all_intertwining(smap, 3, 2, max_degree, max_total))
    ls = ginf.symmetrized_brackets(smap, 3)
    rep.extend(ginf.check_l_infinity(smap.space, ls, 3, max_degree, max_total))
    return rep


def suite_galgebra(args) -> Report:
    from . import galgebras as g
    D = args.trunc or g.DEFAULT_TRUNCATION
    if D > g.DEFAULT_TRUNCATION:
        _warn(f"truncation degree {D} can take a long time")
    rep = Report()
    for name in (args.lie or DEFAULT_LIE):
        rep.extend(g.check_g_algebra(g.exterior_bracket(load_lie(name))))
    if not args.lie:
        for n in (1, 2):
            rep.extend(g.check_g_algebra(g.polyvector_instance(n, D)))
        rep.extend(g.check_poisson(g.parse_polyvector("d1^d2", 2, D)))
        rep.extend(g.check_poisson(g.find_non_poisson(3, D)))
    return rep


def suite_cells(args) -> Report:
    from .cells import MAX_ARITY, UnsupportedArity, check_d_squared, check_equivariance, check_leibniz
    n = args.max_arity or MAX_ARITY
    if n > MAX_ARITY:
        raise UnsupportedArity(f"arity {n} exceeds the supported bound {MAX_ARITY}")
    rep = check_d_squared(n)
    rep.extend(check_equivariance(n))
    rep.extend(check_leibniz(n))
    return rep


SUITES = {"hochschild": suite_hochschild, "ginf": suite_ginf, "galgebra": suite_galgebra, "cells": suite_cells}


def _finish(rep: Report, out: Optional[str]) -> int:
    print(rep.text())
    if out:
        Path(out).write_text(rep.dumps() + "\n")
    return EXIT_PASS if rep.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        rep = SUITES[args.suite](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Unsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    return _finish(rep, args.out)


def cmd_hh(args) -> int:
    from .hochschild import hh_cohomology, induced_structure_on_hh
    try:
        A = load_algebra((args.algebra or ["dual_numbers"])[0])
        H = hh_cohomology(A, args.max_degree)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Unsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    for n, k in enumerate(H.dims()):
        print(f"HH^{n}({A.name}) has dimension {k}")
    return _finish(induced_structure_on_hh(A, args.max_degree, H), args.out)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ginfty", description="Exact checks for G-infinity structures.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("boundary", help="print the cellular boundary of a cell")
    b.add_argument("cell", help='cell text such as "d2;1|2" or "d3;123"')
    b.add_argument("--check-d2", action="store_true", help="also check that the boundary squares to zero")
    b.set_defaults(func=cmd_boundary)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--algebra", action="append", help="algebra file or bundled fixture name (repeatable)")
    v.add_argument("--lie", action="append", help="Lie algebra file or bundled fixture name (repeatable)")
    v.add_argument("--max-arity", type=_positive, help="cochain arity bound, or cell arity for the cells suite")
    v.add_argument("--max-inputs", type=_positive, help="bound on the total number of algebra inputs")
    v.add_argument("--trunc", type=_positive, help="polynomial truncation degree for polyvector fields")
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("hh", help="Hochschild cohomology dimensions and the induced structure")
    h.add_argument("--algebra", action="append", help="algebra file or bundled fixture name")
    h.add_argument("--max-degree", type=int, default=4)
    h.add_argument("--out", help="write the JSON report here")
    h.set_defaults(func=cmd_hh)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
