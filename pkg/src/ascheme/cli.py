"""Command-line interface: ascheme <subcommand> ...

Exit status: 0 success, 1 domain failure (violation, nothing found, failed
precondition), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

import numpy as np

from . import constructions as C
from .errors import IrrationalSpectrumError, PreconditionError, SchemeError, TheoremFalsified
from .fusion import (
    amorphic_check,
    common_fission,
    format_blocks,
    is_fusion_scheme,
    parse_blocks,
    relation_types,
    theorem_main_check,
)
from .graph import Graph
from .io import ParseError, format_eigenmatrix, read_scheme, read_witness, write_clique, write_scheme, write_spread
from .quotient import proposition_reports, quotient_scheme
from .scheme import Scheme, Violation, distance_colors, scheme_verify
from .spreads import (
    FOUND,
    Spread,
    bp_spread_family,
    find_clique,
    find_spread,
    fission_by_spreads,
    remove_spread,
)
from .srg import SrgParams, classify_type, is_ls_inclusive, is_nls_inclusive, srg_params

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _load(path) -> Scheme:
    result = scheme_verify(read_scheme(path))
    if isinstance(result, Violation):
        raise _DomainFailure(f"{path} is not an association scheme: {result}")
    return result


class _DomainFailure(Exception):
    pass


def _summary(s: Scheme) -> str:
    return f"v={s.v} d={s.d} valencies={list(s.valencies[1:])}"


def _parse_params(tokens: list[str], allowed: set[str]) -> dict[str, str]:
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not value:
            raise UsageError(f"expected key=value, got {tok!r}")
        if key not in allowed:
            raise UsageError(f"unknown parameter {key!r}; expected one of {sorted(allowed)}")
        out[key] = value
    return out


def _int(params: dict[str, str], key: str, default: int | None = None) -> int:
    if key not in params:
        if default is None:
            raise UsageError(f"missing parameter {key}=")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise UsageError(f"parameter {key} must be an integer, got {params[key]!r}") from None


def read_latin_squares(path) -> list[np.ndarray]:
    """Squares as blocks of whitespace-separated rows, separated by blank lines."""
    squares, rows = [], []
    for line in Path(path).read_text(encoding="utf-8").splitlines() + [""]:
        line = line.strip()
        if line.startswith("#"):
            continue
        if line:
            rows.append([int(tok) for tok in line.split()])
        elif rows:
            squares.append(np.array(rows))
            rows = []
    return squares


def _build(name: str, tokens: list[str]) -> Scheme:
    if name == "sylvester":
        _parse_params(tokens, set())
        return C.build_sylvester()
    if name == "bilinear":
        p = _parse_params(tokens, {"q", "classes"})
        classes = _int(p, "classes", 3)
        if classes not in (3, 4):
            raise UsageError("classes must be 3 or 4")
        three, four = C.build_bilinear_forms(_int(p, "q"))
        return three if classes == 3 else four
    if name == "brouwer-pasechnik":
        p = _parse_params(tokens, {"q"})
        return C.build_brouwer_pasechnik(_int(p, "q"))[0]
    if name == "hamming":
        p = _parse_params(tokens, {"D", "q"})
        return C.build_hamming(_int(p, "D"), _int(p, "q"))
    if name == "decaen-vandam":
        _parse_params(tokens, set())
        return C.build_decaen_vandam()
    if name == "cyclotomic":
        p = _parse_params(tokens, {"q", "e"})
        return C.build_cyclotomic(_int(p, "q"), _int(p, "e"))
    if name == "ag28":
        _parse_params(tokens, set())
        return C.build_ag28_scheme()
    if name == "polhill":
        _parse_params(tokens, set())
        return C.build_polhill_product()
    if name == "folded-halved-12":
        _parse_params(tokens, set())
        return C.build_folded_halved_cube()
    if name == "wreath":
        p = _parse_params(tokens, {"n", "outer", "inner"})
        if "n" in p:
            return C.build_wreath_family(_int(p, "n"))
        if "inner" not in p:
            raise UsageError("wreath needs n= or outer=<m|file> inner=<file>")
        inner = _load(p["inner"])
        outer_spec = p.get("outer", "1")
        outer = int(outer_spec) if outer_spec.isdigit() else _load(outer_spec)
        return C.build_wreath(outer, inner)
    if name == "knn-matching":
        p = _parse_params(tokens, {"n"})
        return C.build_knn_minus_matching(_int(p, "n"))
    if name == "lattice":
        p = _parse_params(tokens, {"n"})
        return C.build_lattice_scheme(_int(p, "n"))
    if name == "latin-squares":
        p = _parse_params(tokens, {"file", "n", "count"})
        if "file" in p:
            squares = read_latin_squares(p["file"])
        else:
            squares = C.mols_from_field(_int(p, "n"), _int(p, "count", 1))
        return C.build_latin_square_scheme(squares)
    if name == "complete":
        p = _parse_params(tokens, {"m"})
        return C.build_complete(_int(p, "m"))
    raise UsageError(f"unknown construction {name!r}")


BUILD_NAMES = (
    "sylvester, bilinear q= [classes=3|4], brouwer-pasechnik q=, hamming D= q=, decaen-vandam, "
    "cyclotomic q= e=, ag28, polhill, folded-halved-12, wreath n= | outer= inner=, knn-matching n=, "
    "lattice n=, latin-squares file= | n= count=, complete m="
)


def _tensor_digest(s: Scheme) -> str:
    text = "\n".join(" ".join(map(str, row)) for row in s.p.reshape(-1, s.d + 1).tolist())
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _relation_lines(s: Scheme) -> tuple[list[str], list]:
    lines, params = [], []
    try:
        types = relation_types(s)
    except IrrationalSpectrumError:
        types = []
        for i in range(1, s.d + 1):
            try:
                prm = srg_params(s.graph(i))
            except PreconditionError as exc:
                prm = f"not-srg: {exc}"
            types.append((prm, classify_type(prm) if isinstance(prm, SrgParams) else None))
    for i, (prm, typ) in enumerate(types, start=1):
        params.append(prm)
        lines.append(f"relation {i}: k={s.valencies[i]} {prm} type={typ if typ else 'not-srg'}")
    return lines, params


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(args) -> int:
    s = _build(args.name, args.params)
    write_scheme(s.colors, args.output)
    print(f"wrote {args.output}: {_summary(s)}")
    return OK


def cmd_verify(args) -> int:
    result = scheme_verify(read_scheme(args.path))
    if isinstance(result, Violation):
        print(result)
        return FAIL
    print(f"OK {_summary(result)}")
    print(f"intersection tensor sha256/16: {_tensor_digest(result)}")
    return OK


def cmd_eigen(args) -> int:
    s = _load(args.path)
    text = format_eigenmatrix(s.spectrum)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return OK


def cmd_classify(args) -> int:
    s = _load(args.path)
    lines, params = _relation_lines(s)
    print("\n".join(lines))
    srgs = [p for p in params if isinstance(p, SrgParams)]
    ls = sum(1 for p in srgs if classify_type(p).is_ls)
    nls = sum(1 for p in srgs if classify_type(p).is_nls)
    print(f"strictly-LS: {ls}  strictly-NLS: {nls}  other: {s.d - ls - nls}")
    if len(srgs) == s.d and s.d >= 2:
        if all(is_ls_inclusive(p) for p in srgs) or all(is_nls_inclusive(p) for p in srgs):
            print("note: all relations share one Latin square type; eligible to be amorphic (run 'amorphic')")
    return OK


def cmd_fuse(args) -> int:
    s = _load(args.path)
    try:
        blocks = parse_blocks(args.blocks, s.d)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    result = is_fusion_scheme(s, blocks)
    if isinstance(result, Violation):
        print(f"fusion {format_blocks(blocks)} is not a scheme: {result}")
        return FAIL
    if args.output:
        write_scheme(result.colors, args.output)
        print(f"wrote {args.output}")
    print(f"fusion {format_blocks(blocks)}: {_summary(result)}")
    return OK


def cmd_amorphic(args) -> int:
    s = _load(args.path)
    verdict = amorphic_check(s, force=args.force)
    print(verdict)
    return OK if verdict.amorphic else FAIL


def _status(result) -> int:
    print(f"nodes={result.nodes}")
    print(result.status)
    return OK if result.status == FOUND else FAIL


def _relation(s: Scheme, idx: int) -> Graph:
    if not 1 <= idx <= s.d:
        raise UsageError(f"relation {idx} outside 1..{s.d}")
    return s.graph(idx)


def cmd_spread(args) -> int:
    s = _load(args.path)
    g = _relation(s, args.relation)
    if args.find:
        result = find_spread(g, size=args.size, limit=args.budget)
        if result.found:
            sp = result.witness
            print(f"found {sp.count} cliques of size {sp.size}")
            if args.output:
                write_spread(sp.cliques(), args.output)
                print(f"wrote {args.output}")
        return _status(result)

    if args.remove:
        sp = Spread.from_cliques(s.v, read_witness(args.remove))
        removal = remove_spread(g, sp)
        print(removal.note)
        fission = fission_by_spreads(s, args.relation, [sp])
        if isinstance(fission, Violation):
            print(f"re-fission of the host scheme fails: {fission}")
            if removal.drg is None:
                return FAIL
            print(f"using the distance scheme of the distance-regular remainder {removal.drg}")
            fission = scheme_verify(distance_colors(removal.graph))
            if isinstance(fission, Violation):
                print(fission)
                return FAIL
        print(f"residual scheme: {_summary(fission)}")
        if args.output:
            write_scheme(fission.colors, args.output)
            print(f"wrote {args.output}")
        return OK

    # --family
    if not args.clique:
        raise UsageError("--family needs --clique FILE")
    blocks = read_witness(args.clique)
    if len(blocks) != 1:
        raise UsageError("clique file must hold a single clique")
    spreads = bp_spread_family(args.family, blocks[0])
    print(f"{len(spreads)} spreads; cliques from different spreads meet in exactly one vertex")
    status = OK
    for used in range(len(spreads) + 1):
        fission = fission_by_spreads(s, args.relation, spreads[:used])
        if isinstance(fission, Violation):
            print(f"{used} spreads: {fission}")
            status = FAIL
            continue
        types = [t for _, t in relation_types(fission)]
        ls = sum(1 for t in types if t is not None and t.is_ls)
        print(f"d={fission.d}: {_summary(fission)}; strictly-LS relations: {ls}")
        if args.output:
            write_scheme(fission.colors, f"{args.output}.d{fission.d}")
    if args.output:
        for a, sp in enumerate(spreads):
            write_spread(sp.cliques(), f"{args.output}.S{a}")
        print(f"wrote {args.output}.S* and {args.output}.d*")
    return status


def cmd_clique(args) -> int:
    s = _load(args.path)
    g = _relation(s, args.relation)
    if args.minus:
        minus = Spread.from_cliques(s.v, read_witness(args.minus)).graph()
        if not minus.is_subgraph_of(g):
            raise PreconditionError("--minus spread is not inside the relation")
        g = g.difference(minus)
    result = find_clique(g, args.size, limit=args.budget)
    if result.found:
        print("clique: " + " ".join(map(str, result.witness)))
        if args.output:
            write_clique(result.witness, args.output)
            print(f"wrote {args.output}")
    return _status(result)


def cmd_common_fission(args) -> int:
    a, b = _load(args.a), _load(args.b)
    if a.v != b.v:
        raise UsageError(f"vertex counts differ: {a.v} vs {b.v}")
    split = None
    if args.split:
        try:
            split = tuple(int(x) for x in args.split.split(","))
        except ValueError:
            raise UsageError("--split expects 'ca,cb'") from None
    report = common_fission(a, b, split)
    print(report)
    if not report.ok:
        return FAIL
    if args.output:
        write_scheme(report.scheme.colors, args.output)
        print(f"wrote {args.output}")
    return OK


def _part_graph(s: Scheme, spec: str) -> Graph:
    path, sep, rel = spec.partition("@")
    if sep:
        return read_scheme(path).graph(int(rel))
    cliques = read_witness(path)
    return Spread.from_cliques(s.v, cliques).graph()


def cmd_theorem_main(args) -> int:
    s = _load(args.path)
    b = _relation(s, args.relation)
    parts: list[Graph] = []
    rest_slot = None
    for spec in args.parts:
        if spec == "rest":
            rest_slot = len(parts)
            parts.append(None)
        else:
            parts.append(_part_graph(s, spec))
    if rest_slot is not None:
        rest = b
        for g in parts:
            if g is not None:
                rest = rest.difference(g)
        parts[rest_slot] = rest
    report = theorem_main_check(s, args.relation, parts)
    print(report)
    if not report.passed:
        print("failed preconditions: " + ", ".join(report.failed()))
        return FAIL
    if args.output:
        write_scheme(report.scheme.colors, args.output)
        print(f"wrote {args.output}")
    return OK


def cmd_quotient(args) -> int:
    s = _load(args.path)
    _relation(s, args.spread_relation)
    try:
        qs = quotient_scheme(s, args.spread_relation)
    except PreconditionError as exc:
        print(f"error: {exc}")
        return FAIL
    for rep in qs.reports:
        print(rep)
    print(f"quotient scheme: {_summary(qs.scheme)}; class map {list(qs.class_map[1:])}")
    for pr in proposition_reports(s, args.spread_relation):
        print(pr)
    if args.output:
        write_scheme(qs.scheme.colors, args.output)
        print(f"wrote {args.output}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ascheme", description="Association schemes with Latin square type relations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a named scheme", description=f"Constructions: {BUILD_NAMES}")
    p.add_argument("name")
    p.add_argument("params", nargs="*", help="key=value parameters")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check the scheme axioms")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eigen", help="eigenmatrices P, Q and multiplicities as TSV")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("classify", help="SRG parameters and Latin square type per relation")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fuse", help="fuse classes, e.g. --blocks '1,2|3|4,5'")
    p.add_argument("path")
    p.add_argument("--blocks", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("amorphic", help="test every fusion")
    p.add_argument("path")
    p.add_argument("--force", action="store_true", help="allow more than 10 classes")
    p.set_defaults(func=cmd_amorphic)

    p = sub.add_parser("spread", help="find, remove, or build spreads in a relation")
    p.add_argument("path")
    p.add_argument("--relation", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--find", action="store_true")
    mode.add_argument("--remove", metavar="WITNESS")
    mode.add_argument("--family", type=int, metavar="Q")
    p.add_argument("--clique", help="clique witness for --family")
    p.add_argument("--size", type=int, help="clique size for --find (default sqrt(v))")
    p.add_argument("--budget", type=int, help="node budget (default $ASCHEME_BUDGET or 10^7)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_spread)

    p = sub.add_parser("clique", help="search a clique of given size in a relation")
    p.add_argument("path")
    p.add_argument("--relation", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--minus", metavar="WITNESS", help="first delete the edges of this spread")
    p.add_argument("--budget", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_clique)

    p = sub.add_parser("common-fission", help="union of two fissions of a 2-class scheme")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--split", help="'ca,cb': class ca of A equals the complement of class cb of B")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_common_fission)

    p = sub.add_parser("theorem-main", help="check the hypotheses for splitting a Latin square type relation")
    p.add_argument("path")
    p.add_argument("--relation", type=int, required=True)
    p.add_argument("--parts", nargs="+", required=True, help="witness files, FILE@i scheme relations, or 'rest'")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_theorem_main)

    p = sub.add_parser("quotient", help="quotient over a square-spread relation")
    p.add_argument("path")
    p.add_argument("--spread-relation", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_quotient)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except _DomainFailure as exc:
        print(exc)
        return FAIL
    except TheoremFalsified as exc:
        print(f"THEOREM FALSIFIED (implementation bug): {exc}")
        return FAIL
    except SchemeError as exc:
        print(f"error: {exc}")
        return FAIL
    except ValueError as exc:
        # malformed numbers or field sizes in user input
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
