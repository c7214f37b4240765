"""Fusions, amorphicity, common fissions and commuting decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator, Sequence

import numpy as np

from .errors import PreconditionError, TheoremFalsified
from .graph import Graph, count_product
from .scheme import ColorMatrix, Scheme, Spectrum, Violation, scheme_verify
from .srg import (
    Kind,
    NotSrg,
    SrgParams,
    SrgType,
    _latin_fit,
    classify_type,
    is_ls_inclusive,
    is_nls_inclusive,
    params_from_column,
    srg_params,
)

MAX_AMORPHIC_CLASSES = 10

Partition = tuple[tuple[int, ...], ...]


def make_partition(blocks: Sequence[Sequence[int]], d: int) -> Partition:
    """Validate a partition of 1..d and order blocks by least member."""
    seen: set[int] = set()
    out = []
    for block in blocks:
        if not block:
            raise PreconditionError("empty block in partition")
        for c in block:
            if not 1 <= c <= d:
                raise PreconditionError(f"class {c} outside 1..{d}")
            if c in seen:
                raise PreconditionError(f"class {c} appears twice")
            seen.add(c)
        out.append(tuple(sorted(block)))
    if len(seen) != d:
        missing = sorted(set(range(1, d + 1)) - seen)
        raise PreconditionError(f"classes {missing} not covered")
    return tuple(sorted(out))


def parse_blocks(text: str, d: int) -> Partition:
    """Parse "1,2|3|4,5" (1-based class indices)."""
    try:
        blocks = [[int(tok) for tok in part.split(",")] for part in text.split("|")]
    except ValueError as exc:
        raise PreconditionError(f"malformed blocks string {text!r}") from exc
    return make_partition(blocks, d)


def format_blocks(p: Partition) -> str:
    return "|".join(",".join(map(str, b)) for b in p)


def _class_map(p: Partition, d: int) -> list[int]:
    mapping = [0] * (d + 1)
    for idx, block in enumerate(p, start=1):
        for c in block:
            mapping[c] = idx
    return mapping


def fuse(s: Scheme | ColorMatrix, p: Partition) -> ColorMatrix:
    colors = s.colors if isinstance(s, Scheme) else s
    p = make_partition(p, colors.d)
    return colors.relabel(_class_map(p, colors.d), len(p))


def _fused_tensor(tensor: np.ndarray, mapping: Sequence[int], e: int) -> np.ndarray:
    d = tensor.shape[0] - 1
    ind = np.zeros((d + 1, e + 1), dtype=np.int64)
    ind[np.arange(d + 1), mapping] = 1
    # F[h, I, J] = sum_{i in I, j in J} p[h, i, j]
    return np.einsum("iI,hij,jJ->hIJ", ind, tensor, ind)


def _fusion_violation(s: Scheme, p: Partition) -> tuple[np.ndarray | None, Violation | None]:
    mapping = _class_map(p, s.d)
    e = len(p)
    full = _fused_tensor(s.p, mapping, e)
    blocks = [(0,)] + list(p)
    fused = np.zeros((e + 1, e + 1, e + 1), dtype=np.int64)
    for big_h, block in enumerate(blocks):
        ref = full[block[0]]
        for h in block[1:]:
            diff = np.argwhere(full[h] != ref)
            if diff.size:
                i, j = (int(x) for x in diff[0])
                cells = s.colors.cells
                a = np.argwhere(cells == block[0])[0]
                b = np.argwhere(cells == h)[0]
                return None, Violation(
                    i, j, big_h,
                    (int(a[0]), int(a[1]), int(ref[i, j])),
                    (int(b[0]), int(b[1]), int(full[h][i, j])),
                )
        fused[big_h] = ref
    return fused, None


def is_fusion_scheme(s: Scheme, p: Partition) -> Scheme | Violation:
    """Fuse and verify, using the fused intersection sums of s as a fast path."""
    p = make_partition(p, s.d)
    fused, violation = _fusion_violation(s, p)
    if violation is not None:
        return violation
    return Scheme(fuse(s, p), fused)


def restricted_growth_strings(d: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length d in lexicographic order."""
    if d == 0:
        yield ()
        return
    word = [0] * d
    while True:
        yield tuple(word)
        # increment from the right, respecting word[i] <= 1 + max(word[:i])
        i = d - 1
        while i > 0:
            if word[i] <= max(word[:i]):
                word[i] += 1
                for j in range(i + 1, d):
                    word[j] = 0
                break
            i -= 1
        else:
            return


def partitions(d: int) -> Iterator[Partition]:
    for rgs in restricted_growth_strings(d):
        blocks: dict[int, list[int]] = {}
        for cls, b in enumerate(rgs, start=1):
            blocks.setdefault(b, []).append(cls)
        yield tuple(tuple(blocks[b]) for b in sorted(blocks))


@dataclass(frozen=True)
class AmorphicVerdict:
    amorphic: bool
    checked: int
    failing_partition: Partition | None = None
    violation: Violation | None = None
    common_kind: Kind | None = None

    def __str__(self) -> str:
        if self.amorphic:
            extra = f" (all relations {self.common_kind.name}-type)" if self.common_kind else ""
            return f"amorphic: all {self.checked} fusions are schemes{extra}"
        return f"not-amorphic: partition {format_blocks(self.failing_partition)} fails ({self.violation})"


def relation_types(s: Scheme) -> list[tuple[SrgParams | NotSrg, SrgType | None]]:
    """SRG parameters and type of each relation, read off the eigenmatrix."""
    P = s.spectrum.P
    out = []
    for i in range(1, s.d + 1):
        params = params_from_column(s.v, [int(x) for x in P.column(i)])
        out.append((params, classify_type(params) if isinstance(params, SrgParams) else None))
    return out


def amorphic_check(s: Scheme, force: bool = False) -> AmorphicVerdict:
    """Test every fusion of s; the first failure in canonical order is reported."""
    if s.d > MAX_AMORPHIC_CLASSES and not force:
        raise PreconditionError(f"{s.d} classes exceeds the amorphicity guard d <= {MAX_AMORPHIC_CLASSES}")
    checked = 0
    for part in partitions(s.d):
        checked += 1
        _, violation = _fusion_violation(s, part)
        if violation is not None:
            return AmorphicVerdict(False, checked, part, violation)
    kind = None
    if s.d >= 3:
        types = relation_types(s)
        params = [prm for prm, _ in types]
        if not all(isinstance(prm, SrgParams) for prm in params):
            raise TheoremFalsified("amorphic scheme with a relation that is not strongly regular")
        if all(is_ls_inclusive(prm) for prm in params):
            kind = Kind.LS
        elif all(is_nls_inclusive(prm) for prm in params):
            kind = Kind.NLS
        else:
            raise TheoremFalsified("amorphic scheme whose relations are not all of one Latin square type")
    return AmorphicVerdict(True, checked, common_kind=kind)


# ---------------------------------------------------------------------------
# common fission


@dataclass(frozen=True)
class FissionReport:
    ok: bool
    split: tuple[int, int] | None  # (class of a equal to B, class of b equal to A)
    scheme: Scheme | None = None
    violation: Violation | None = None
    conference_obstruction: bool = False
    idempotents_match: bool | None = None
    notes: tuple[str, ...] = ()

    def __str__(self) -> str:
        lines = list(self.notes)
        if self.conference_obstruction:
            lines.append("precondition k != (n^2-1)/2 violated: common 2-class scheme is a conference scheme")
        if self.ok:
            lines.append(f"common fission is a {self.scheme.d}-class scheme, valencies {self.scheme.valencies[1:]}")
            lines.append(f"idempotent pattern {'matches' if self.idempotents_match else 'DOES NOT match'}")
        elif self.violation is not None:
            lines.append(f"common fission is not an association scheme: {self.violation}")
        return "\n".join(lines)


def find_split(a: Scheme, b: Scheme) -> list[tuple[int, int]]:
    """Pairs (ca, cb) with class ca of a equal to the complement of class cb of b."""
    off = ~np.eye(a.v, dtype=bool)
    out = []
    for ca in range(1, a.d + 1):
        ma = a.colors.cells == ca
        for cb in range(1, b.d + 1):
            if np.array_equal(ma, off & (b.colors.cells != cb)):
                out.append((ca, cb))
    return out


def _two_class_rows(spec: Spectrum, keep: int, d: int) -> list[tuple[int, int]]:
    # eigenvalues of (other classes, class keep) on each row of P
    rows = spec.rows()
    return [(sum(r[c] for c in range(1, d + 1) if c != keep), r[keep]) for r in rows]


def common_fission(a: Scheme, b: Scheme, split: tuple[int, int] | None = None) -> FissionReport:
    """Union of a's refinement of A and b's refinement of B, verified."""
    if a.v != b.v:
        raise PreconditionError(f"vertex counts differ: {a.v} vs {b.v}")
    if split is None:
        candidates = find_split(a, b)
        if not candidates:
            raise PreconditionError("inputs do not refine a common 2-class scheme")
        if len(candidates) > 1:
            raise PreconditionError(f"ambiguous split {candidates}; name it explicitly")
        split = candidates[0]
    ca, cb = split
    off = ~np.eye(a.v, dtype=bool)
    if not np.array_equal(a.colors.cells == ca, off & (b.colors.cells != cb)):
        raise PreconditionError(f"split {split} does not match a common 2-class scheme")

    notes = []
    kb = a.valencies[ca]
    conference = 2 * kb == a.v - 1
    a_classes = [c for c in range(1, a.d + 1) if c != ca]
    b_classes = [c for c in range(1, b.d + 1) if c != cb]
    cells = np.zeros((a.v, a.v), dtype=np.int16)
    for new, c in enumerate(a_classes, start=1):
        cells[a.colors.cells == c] = new
    for new, c in enumerate(b_classes, start=len(a_classes) + 1):
        cells[b.colors.cells == c] = new
    union = ColorMatrix(cells, len(a_classes) + len(b_classes))
    notes.append(f"split: class {ca} of first = B (valency {kb}), class {cb} of second = A")
    result = scheme_verify(union)
    if isinstance(result, Violation):
        return FissionReport(False, split, violation=result, conference_obstruction=conference, notes=tuple(notes))

    match = _lemma_idempotents(a, b, ca, cb, result)
    return FissionReport(True, split, scheme=result, conference_obstruction=conference, idempotents_match=match, notes=tuple(notes))


def _lemma_idempotents(a: Scheme, b: Scheme, ca: int, cb: int, union: Scheme) -> bool:
    """Check the predicted eigenmatrix rows of the common fission.

    Rows of a that fuse to idempotent E, combined with the E row of b, and rows
    of b that fuse to F, combined with the F row of a.
    """
    a_rows, b_rows = a.spectrum.rows(), b.spectrum.rows()
    # in a: B = class ca; in b: A = class cb
    a2 = _two_class_rows(a.spectrum, ca, a.d)  # (A eig, B eig)
    b2 = [(y, x) for x, y in _two_class_rows(b.spectrum, cb, b.d)]  # (A eig, B eig)
    a_mults, b_mults = a.spectrum.multiplicities, b.spectrum.multiplicities
    nontrivial = sorted(set(a2[1:]) | set(b2[1:]))
    if len(nontrivial) != 2:
        return False
    groups_a = {key: [j for j in range(1, len(a2)) if a2[j] == key] for key in nontrivial}
    groups_b = {key: [j for j in range(1, len(b2)) if b2[j] == key] for key in nontrivial}
    f_key = next((k for k in nontrivial if len(groups_a[k]) == 1), None)
    e_key = next((k for k in nontrivial if k != f_key), None)
    if f_key is None or len(groups_b[e_key]) != 1:
        return False
    f_row = a_rows[groups_a[f_key][0]]
    e_row = b_rows[groups_b[e_key][0]]
    a_cls = [c for c in range(1, a.d + 1) if c != ca]
    b_cls = [c for c in range(1, b.d + 1) if c != cb]
    predicted = []
    for j in groups_a[e_key]:
        predicted.append(((1,) + tuple(a_rows[j][c] for c in a_cls) + tuple(e_row[c] for c in b_cls), a_mults[j]))
    for j in groups_b[f_key]:
        predicted.append(((1,) + tuple(f_row[c] for c in a_cls) + tuple(b_rows[j][c] for c in b_cls), b_mults[j]))
    actual = list(zip(union.spectrum.rows()[1:], union.spectrum.multiplicities[1:]))
    return sorted(predicted) == sorted(actual)


# ---------------------------------------------------------------------------
# Theorem-style fission of a Latin square type relation


@dataclass
class TheoremReport:
    preconditions: dict[str, tuple[bool, str]] = field(default_factory=dict)
    scheme: Scheme | None = None
    violation: Violation | None = None

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.preconditions.values())

    def failed(self) -> list[str]:
        return [name for name, (ok, _) in self.preconditions.items() if not ok]

    def __str__(self) -> str:
        lines = [f"({name}) {'PASS' if ok else 'FAIL'}: {detail}" for name, (ok, detail) in self.preconditions.items()]
        if self.scheme is not None:
            lines.append(f"fission scheme verified: d={self.scheme.d}, valencies {self.scheme.valencies[1:]}")
        if self.violation is not None:
            lines.append(f"fission is not a scheme: {self.violation}")
        return "\n".join(lines)


def _latin_params(p: SrgParams) -> tuple[Kind, int, int] | None:
    root = isqrt(p.v)
    if p.r is None or root * root != p.v:
        return None
    for n, kind in ((root, Kind.LS), (-root, Kind.NLS)):
        t = _latin_fit(p.v, p.k, p.r, p.s, n)
        if t is not None:
            return kind, n, t
    return None


def theorem_main_check(s: Scheme, b_index: int, parts: Sequence[Graph]) -> TheoremReport:
    """Check the hypotheses for splitting relation b_index into the given parts."""
    if not 1 <= b_index <= s.d:
        raise PreconditionError(f"relation {b_index} outside 1..{s.d}")
    bg = s.graph(b_index)
    acc = Graph.empty(s.v)
    for part in parts:
        if part.v != s.v:
            raise PreconditionError("part on a different vertex set")
        if not acc.is_edge_disjoint(part):
            raise PreconditionError("parts overlap")
        acc = acc.union(part)
    if acc != bg:
        raise PreconditionError(f"parts do not partition the edges of relation {b_index}")

    report = TheoremReport()
    spec = s.spectrum
    col = [int(x) for x in spec.P.column(b_index)]
    params = params_from_column(s.v, col)
    latin = _latin_params(params) if isinstance(params, SrgParams) else None
    if latin is None:
        report.preconditions["i"] = (False, f"relation {b_index} is not SRG of (negative) Latin square type: {params}")
        return report
    kind, n, t = latin
    k = params.k
    report.preconditions["i"] = (True, f"B is {kind.name} type with n={n}, t={t}, k={k}=t(n-1)")

    rows = spec.rows()
    hits = [j for j in range(1, s.d + 1) if spec.multiplicities[j] == k and rows[j][b_index] == n - t]
    mults = ", ".join(map(str, spec.multiplicities))
    if hits:
        report.preconditions["ii"] = (True, f"idempotent row {hits[0]} has multiplicity {k} and eigenvalue {n - t}")
    else:
        report.preconditions["ii"] = (False, f"no idempotent with multiplicity {k} and eigenvalue {n - t} (multiplicities {mults})")

    conference = 2 * k == n * n - 1
    report.preconditions["iii"] = (not conference, f"k={k} {'==' if conference else '!='} (n^2-1)/2")

    same = is_ls_inclusive if kind is Kind.LS else is_nls_inclusive
    bad = []
    for idx, part in enumerate(parts):
        pp = srg_params(part)
        if not isinstance(pp, SrgParams) or not same(pp):
            bad.append(f"part {idx}: {pp}")
    report.preconditions["iv"] = (not bad, "all parts of the same type as B" if not bad else "; ".join(bad))

    if report.passed:
        graphs = [s.graph(c) for c in range(1, s.d + 1) if c != b_index] + list(parts)
        result = scheme_verify(ColorMatrix.from_graphs(graphs))
        if isinstance(result, Violation):
            report.violation = result
            raise TheoremFalsified(f"all preconditions hold but the fission is not a scheme: {result}")
        report.scheme = result
    return report


# ---------------------------------------------------------------------------
# commuting decompositions


@dataclass
class DecompositionReport:
    covers: bool
    disjoint: bool
    commuting: bool
    is_scheme: bool
    params: list[SrgParams | NotSrg | str]
    types: list[SrgType | None]
    witness: str = ""

    def __str__(self) -> str:
        lines = [
            f"partition of K_v: {'yes' if self.covers and self.disjoint else 'no'} {self.witness}".rstrip(),
            f"pairwise commuting: {'yes' if self.commuting else 'no'}",
        ]
        for i, (prm, typ) in enumerate(zip(self.params, self.types), start=1):
            lines.append(f"part {i}: {prm} type={typ if typ else 'not-srg'}")
        lines.append(f"association scheme: {'yes' if self.is_scheme else 'NO'}")
        return "\n".join(lines)


def verify_commuting_decomposition(graphs: Sequence[Graph]) -> DecompositionReport:
    if not graphs:
        raise PreconditionError("empty decomposition")
    v = graphs[0].v
    if any(g.v != v for g in graphs):
        raise PreconditionError("graphs on different vertex sets")
    cover = np.zeros((v, v), dtype=np.int64)
    for g in graphs:
        cover += g.adjacency()
    off = ~np.eye(v, dtype=bool)
    disjoint = not (cover > 1).any()
    covers = bool((cover[off] >= 1).all())
    witness = ""
    if not disjoint:
        x, y = np.argwhere(cover > 1)[0]
        witness = f"(pair ({x},{y}) covered twice)"
    elif not covers:
        x, y = np.argwhere((cover == 0) & off)[0]
        witness = f"(pair ({x},{y}) not covered)"

    commuting = True
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            ab = count_product(graphs[i].rows, graphs[j].rows)
            ba = count_product(graphs[j].rows, graphs[i].rows)
            if not np.array_equal(ab, ba):
                commuting = False

    params: list = []
    types: list = []
    for g in graphs:
        try:
            prm = srg_params(g)
        except PreconditionError as exc:
            prm = f"not-srg: {exc}"
        params.append(prm)
        types.append(classify_type(prm) if isinstance(prm, SrgParams) else None)

    is_scheme = False
    if covers and disjoint:
        is_scheme = not isinstance(scheme_verify(ColorMatrix.from_graphs(list(graphs))), Violation)
    if not (covers and disjoint):
        raise PreconditionError(f"graphs do not partition the complete graph {witness}")
    return DecompositionReport(covers, disjoint, commuting, is_scheme, params, types, witness)
