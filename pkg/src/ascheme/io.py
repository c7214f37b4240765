"""Text formats: scheme files, eigenmatrix TSV, clique and spread witnesses."""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ColorMatrixError, SchemeError
from .scheme import ColorMatrix, Spectrum

HEADER = re.compile(r"^ASCHEME v=(\d+) d=(\d+)$")


class ParseError(SchemeError, ValueError):
    def __init__(self, path, line: int, column: int | None, message: str):
        loc = f"{path}:{line}" + (f":{column}" if column is not None else "")
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.column = column


def format_scheme(c: ColorMatrix) -> str:
    lines = [f"ASCHEME v={c.v} d={c.d}"]
    lines.extend(" ".join(map(str, row)) for row in c.cells.tolist())
    return "\n".join(lines) + "\n"


def write_scheme(c: ColorMatrix, path) -> None:
    Path(path).write_text(format_scheme(c), encoding="utf-8", newline="\n")


def parse_scheme(text: str, path="<string>") -> ColorMatrix:
    """Parse a scheme file; every error names the line (and column when relevant)."""
    rows: list[tuple[int, list[str]]] = []
    header = None
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            m = HEADER.match(line)
            if not m:
                raise ParseError(path, lineno, None, f"expected header 'ASCHEME v=<int> d=<int>', got {line!r}")
            header = (int(m.group(1)), int(m.group(2)), lineno)
            continue
        rows.append((lineno, line.split()))
    if header is None:
        raise ParseError(path, 1, None, "missing header")
    v, d, header_line = header
    if len(rows) != v:
        where = rows[-1][0] if rows else header_line
        raise ParseError(path, where, None, f"header says v={v} but found {len(rows)} rows")
    cells = np.zeros((v, v), dtype=np.int64)
    line_of = []
    for r, (lineno, toks) in enumerate(rows):
        if len(toks) != v:
            raise ParseError(path, lineno, None, f"row {r} has {len(toks)} entries, expected {v}")
        try:
            cells[r] = np.array(toks, dtype=np.int64)
        except ValueError:
            col = next(i for i, tok in enumerate(toks) if not re.fullmatch(r"-?\d+", tok))
            raise ParseError(path, lineno, col + 1, f"not an integer: {toks[col]!r}") from None
        line_of.append(lineno)
    bad = np.argwhere((cells < 0) | (cells > d))
    if bad.size:
        r, col = (int(x) for x in bad[0])
        raise ParseError(path, line_of[r], col + 1, f"class index {cells[r, col]} outside 0..{d}")
    asym = np.argwhere(cells != cells.T)
    if asym.size:
        r, col = (int(x) for x in asym[0])
        raise ParseError(path, line_of[r], col + 1, f"not symmetric: cell ({r},{col})={cells[r, col]} but ({col},{r})={cells[col, r]}")
    try:
        return ColorMatrix(cells, d)
    except ColorMatrixError as exc:
        raise ParseError(path, header_line, None, str(exc)) from exc


def read_scheme(path) -> ColorMatrix:
    return parse_scheme(Path(path).read_text(encoding="utf-8"), path)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_eigenmatrix(spec: Spectrum) -> str:
    out = ["[P]"]
    out.extend("\t".join(_fmt(x) for x in row) for row in spec.P.tolist())
    out.append("")
    out.append("[Q]")
    out.extend("\t".join(_fmt(x) for x in row) for row in spec.Q.tolist())
    out.append("")
    out.append("[multiplicities]")
    out.append("\t".join(map(str, spec.multiplicities)))
    return "\n".join(out) + "\n"


def write_eigenmatrix(spec: Spectrum, path) -> None:
    Path(path).write_text(format_eigenmatrix(spec), encoding="utf-8", newline="\n")


def parse_eigenmatrix(text: str) -> dict[str, list[list[Fraction]]]:
    blocks: dict[str, list[list[Fraction]]] = {}
    current = None
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            blocks[current] = []
        elif current is not None:
            blocks[current].append([Fraction(tok) for tok in line.split("\t")])
    return blocks


def format_cliques(cliques: Sequence[Sequence[int]], labelled: bool) -> str:
    out = []
    for i, clique in enumerate(cliques):
        if labelled:
            out.append(f"# clique {i}")
        out.extend(str(x) for x in clique)
    return "\n".join(out) + "\n"


def write_clique(vertices: Sequence[int], path) -> None:
    Path(path).write_text(format_cliques([vertices], labelled=False), encoding="utf-8", newline="\n")


def write_spread(cliques: Sequence[Sequence[int]], path) -> None:
    Path(path).write_text(format_cliques(cliques, labelled=True), encoding="utf-8", newline="\n")


def parse_witness(text: str, path="<string>") -> list[list[int]]:
    """Blocks of vertex indices; '# clique i' lines start new blocks."""
    blocks: list[list[int]] = []
    current: list[int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if re.fullmatch(r"#\s*clique\s+\d+", line):
                current = []
                blocks.append(current)
            continue
        if not re.fullmatch(r"\d+", line):
            raise ParseError(path, lineno, 1, f"expected a vertex index, got {line!r}")
        if current is None:
            current = []
            blocks.append(current)
        current.append(int(line))
    return blocks


def read_witness(path) -> list[list[int]]:
    return parse_witness(Path(path).read_text(encoding="utf-8"), path)
