"""Quotients over a square-spread relation, and the lattice-graph idempotent."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .errors import PreconditionError, TheoremFalsified
from .exactmat import RatMatrix, char_poly, integer_roots
from .graph import Graph
from .scheme import ColorMatrix, Scheme, Violation, scheme_verify
from .spreads import Spread, is_square_spread
from .srg import SrgParams, SrgType, classify_type, is_ls_inclusive, params_from_column


def spread_of(s: Scheme, spread_class: int) -> Spread:
    sp = is_square_spread(s.graph(spread_class))
    if sp is None:
        raise PreconditionError(f"relation {spread_class} is not a square spread")
    return sp


def _characteristic(sp: Spread) -> np.ndarray:
    chi = np.zeros((sp.v, sp.count), dtype=np.int64)
    chi[np.arange(sp.v), sp.assignment] = 1
    return chi


@dataclass(frozen=True)
class QuotientReport:
    relation: int
    b: int
    quotient: Graph  # the 01 matrix on the cliques
    raw: np.ndarray  # n * B, kept integral
    eigenvalues: tuple[int, ...]  # distinct eigenvalues of B
    irrational_degree: int = 0

    @property
    def n(self) -> int:
        return self.quotient.v

    def __str__(self) -> str:
        k = self.quotient.regular_degree()
        return f"relation {self.relation}: b={self.b}, quotient valency {k}, eigenvalues {list(self.eigenvalues)}"


def quotient_relation(s: Scheme, spread_class: int, rel_class: int) -> QuotientReport:
    """B = (1/n) X^T A X for the clique characteristic matrix X, written as b * (01 matrix).

    Quotienting the spread relation itself gives b = n - 1 with an edgeless
    quotient graph (its edges collapse onto the diagonal).
    """
    if not 1 <= rel_class <= s.d:
        raise PreconditionError(f"relation {rel_class} outside 1..{s.d}")
    sp = spread_of(s, spread_class)
    n = sp.count
    chi = _characteristic(sp)
    a = s.graph(rel_class).int_adjacency()
    raw = chi.T @ a @ chi
    if (raw % n).any():
        raise TheoremFalsified(f"quotient of relation {rel_class} is not integral")
    b_mat = raw // n
    if rel_class == spread_class:
        if not (np.array_equal(np.diag(b_mat), np.full(n, n - 1)) and np.count_nonzero(b_mat - np.diag(np.diag(b_mat))) == 0):
            raise TheoremFalsified("spread relation does not collapse to the diagonal")
        return QuotientReport(rel_class, n - 1, Graph.empty(n), raw, (n - 1,))
    if np.diag(b_mat).any():
        raise TheoremFalsified(f"relation {rel_class} has edges inside a spread clique")
    values = set(np.unique(b_mat[b_mat != 0]).tolist())
    if len(values) != 1:
        raise TheoremFalsified(f"quotient of relation {rel_class} is not b times a 01 matrix: values {sorted(values)}")
    b = values.pop()
    q = Graph.from_adjacency(b_mat != 0)
    k_rel = s.valencies[rel_class]
    if k_rel != b * q.regular_degree():
        raise TheoremFalsified(f"valency {k_rel} != b * quotient valency for relation {rel_class}")
    roots, residual = integer_roots(char_poly(RatMatrix(b_mat.tolist())))
    eigen = tuple(sorted(set(roots), reverse=True))
    column = {int(x) for x in s.spectrum.P.column(rel_class)}
    missing = [e for e in eigen if e not in column]
    if missing:
        raise TheoremFalsified(f"quotient eigenvalues {missing} are not eigenvalues of relation {rel_class}")
    return QuotientReport(rel_class, b, q, raw, eigen, residual)


@dataclass(frozen=True)
class QuotientScheme:
    scheme: Scheme
    class_map: tuple[int, ...]  # original class -> quotient class (spread class -> 0)
    reports: tuple[QuotientReport, ...]


def quotient_scheme(s: Scheme, spread_class: int) -> QuotientScheme:
    """Quotient every relation and merge equal quotients into the classes of a scheme."""
    sp = spread_of(s, spread_class)
    n = sp.count
    reports = []
    class_map = [0] * (s.d + 1)
    distinct: list[Graph] = []
    for i in range(1, s.d + 1):
        rep = quotient_relation(s, spread_class, i)
        reports.append(rep)
        if i == spread_class:
            continue
        if rep.quotient not in distinct:
            distinct.append(rep.quotient)
        class_map[i] = distinct.index(rep.quotient) + 1
    if n < 2:
        raise PreconditionError("quotient has a single vertex")
    colors = ColorMatrix.from_graphs(distinct)
    result = scheme_verify(colors)
    if isinstance(result, Violation):
        raise TheoremFalsified(f"quotient is not a scheme: {result}")
    return QuotientScheme(result, tuple(class_map), tuple(reports))


@dataclass
class PropositionReport:
    relation: int
    params: SrgParams
    type: SrgType
    quotient_complete: bool
    b: int
    cases: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        head = f"relation {self.relation}: {self.params} {self.type}; b={self.b}; quotient {'complete' if self.quotient_complete else 'not complete'}"
        return "\n".join([head] + [f"  {c}" for c in self.cases])


def proposition_reports(s: Scheme, spread_class: int) -> list[PropositionReport]:
    """Type constraints on strongly regular relations of a scheme with a square spread.

    Complete quotient scheme: every SRG relation is of Latin square type.
    Otherwise: no SRG relation is of strictly negative Latin square type; b = n
    forces A = quotient (x) J_n (eigenvalue 0, complete multipartite) and b = 1
    forces mu = 0 (a disjoint union of cliques).
    """
    qs = quotient_scheme(s, spread_class)
    complete = qs.scheme.d == 1
    n = spread_of(s, spread_class).count
    out = []
    for rep in qs.reports:
        i = rep.relation
        if i == spread_class:
            continue
        params = params_from_column(s.v, [int(x) for x in s.spectrum.P.column(i)])
        if not isinstance(params, SrgParams):
            continue
        typ = classify_type(params)
        pr = PropositionReport(i, params, typ, complete, rep.b)
        if complete:
            if not is_ls_inclusive(params):
                raise TheoremFalsified(f"relation {i} is SRG with complete quotient but not of Latin square type")
            pr.cases.append("complete quotient: Latin square type confirmed")
        else:
            if typ.is_nls:
                raise TheoremFalsified(f"relation {i} is strictly NLS with a non-complete quotient")
            pr.cases.append("non-complete quotient: not of negative Latin square type confirmed")
            if rep.b == n:
                chi = _characteristic(spread_of(s, spread_class))
                blown = chi @ rep.quotient.int_adjacency() @ chi.T
                column = {int(x) for x in s.spectrum.P.column(i)}
                if not np.array_equal(blown, s.graph(i).int_adjacency()) or 0 not in column:
                    raise TheoremFalsified(f"relation {i} has b=n but is not a coclique extension with eigenvalue 0")
                pr.cases.append(f"b=n={n}: coclique extension of the quotient, eigenvalue 0, complete multipartite")
            if rep.b == 1:
                if params.mu != 0:
                    raise TheoremFalsified(f"relation {i} has b=1 but mu={params.mu}")
                pr.cases.append("b=1: mu=0, disjoint union of cliques")
        out.append(pr)
    return out


def lattice_idempotent_count(s: Scheme, lattice_class: int) -> tuple[int, int | None]:
    """Number of idempotents on which an L_2(n)-parameter relation has eigenvalue n - 2.

    Returns (count, row index of the first such idempotent). Also checks that
    every other strongly regular relation is of Latin square type.
    """
    n = isqrt(s.v)
    column = [int(x) for x in s.spectrum.P.column(lattice_class)]
    params = params_from_column(s.v, column)
    want = (n * n, 2 * (n - 1), n - 2, 2)
    if n * n != s.v or not isinstance(params, SrgParams) or (params.v, params.k, params.lam, params.mu) != want:
        raise PreconditionError(f"relation {lattice_class} does not have lattice parameters {want}: {params}")
    rows = [j for j in range(1, s.d + 1) if column[j] == n - 2]
    for i in range(1, s.d + 1):
        if i == lattice_class:
            continue
        other = params_from_column(s.v, [int(x) for x in s.spectrum.P.column(i)])
        if isinstance(other, SrgParams) and not is_ls_inclusive(other):
            raise TheoremFalsified(f"relation {i} is SRG but not of Latin square type next to a lattice graph")
    return len(rows), (rows[0] if rows else None)


def lattice_identity_holds(s: Scheme, lattice_class: int, row: int) -> bool:
    """n^2 E = (2n-2) I + (n-2) A - 2 (J - I - A) for the idempotent of the given row."""
    n = isqrt(s.v)
    num, den = s.idempotent(row)
    a = s.graph(lattice_class).int_adjacency()
    eye = np.eye(s.v, dtype=np.int64)
    rhs = (2 * n - 2) * eye + (n - 2) * a - 2 * (1 - eye - a)
    return bool(np.array_equal(n * n * num, den * rhs))
