"""GQ(2,2) from duads and synthemes, and the 4-class Sylvester scheme."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..scheme import ColorMatrix, Scheme, verified

Duad = tuple[int, int]
Syntheme = tuple[Duad, Duad, Duad]


@dataclass(frozen=True)
class GQ22:
    points: tuple[Duad, ...]
    lines: tuple[Syntheme, ...]
    spreads: tuple[tuple[int, ...], ...]  # line indices
    ovoids: tuple[tuple[int, ...], ...]  # point indices

    @cached_property
    def incidence(self) -> np.ndarray:
        inc = np.zeros((len(self.points), len(self.lines)), dtype=bool)
        pos = {p: i for i, p in enumerate(self.points)}
        for j, line in enumerate(self.lines):
            for p in line:
                inc[pos[p], j] = True
        return inc


def build_gq22() -> GQ22:
    points = tuple(itertools.combinations(range(6), 2))
    lines = tuple(
        sorted(
            tuple(sorted(m))
            for m in itertools.combinations(points, 3)
            if len(set(itertools.chain.from_iterable(m))) == 6
        )
    )
    pos = {p: i for i, p in enumerate(points)}
    line_points = [frozenset(pos[p] for p in line) for line in lines]
    # spreads: 5 lines covering the 15 points; ovoids: 5 points meeting each line once
    spreads = tuple(
        combo
        for combo in itertools.combinations(range(len(lines)), 5)
        if len(frozenset().union(*(line_points[j] for j in combo))) == 15
    )
    ovoids = tuple(
        combo
        for combo in itertools.combinations(range(len(points)), 5)
        if all(len(lp & set(combo)) == 1 for lp in line_points)
    )
    return GQ22(points, lines, spreads, ovoids)


def check_gq22(gq: GQ22) -> list[str]:
    """Problems with the GQ(2,2) axioms and spread/ovoid intersections (empty if fine)."""
    problems = []
    inc = gq.incidence
    if not (inc.sum(axis=1) == 3).all():
        problems.append("a point is not on exactly 3 lines")
    if not (inc.sum(axis=0) == 3).all():
        problems.append("a line does not have exactly 3 points")
    # GQ axiom: for a point P not on line L there is exactly one point on L collinear with P
    collinear = (inc.astype(int) @ inc.T.astype(int)) > 0
    for j in range(inc.shape[1]):
        on = np.flatnonzero(inc[:, j])
        for p in range(inc.shape[0]):
            if not inc[p, j] and collinear[p, on].sum() != 1:
                problems.append(f"point {p} and line {j} violate the GQ axiom")
    if len(gq.spreads) != 6 or len(gq.ovoids) != 6:
        problems.append(f"found {len(gq.spreads)} spreads and {len(gq.ovoids)} ovoids, expected 6 each")
    for a, b in itertools.combinations(gq.spreads, 2):
        if len(set(a) & set(b)) != 1:
            problems.append(f"spreads {a} and {b} do not share exactly one line")
    for a, b in itertools.combinations(gq.ovoids, 2):
        if len(set(a) & set(b)) != 1:
            problems.append(f"ovoids {a} and {b} do not share exactly one point")
    return problems


def build_sylvester() -> Scheme:
    """4-class scheme on spreads x ovoids of GQ(2,2); vertex s*6 + o.

    1: the Sylvester graph; 2: the rest; 3: same spread; 4: same ovoid.
    (S1,O1) ~ (S2,O2) in class 1 iff S1 != S2, O1 != O2 and the common point
    of O1, O2 lies on the common line of S1, S2.
    """
    gq = build_gq22()
    inc = gq.incidence
    ns, no = len(gq.spreads), len(gq.ovoids)
    v = ns * no
    cells = np.full((v, v), 2, dtype=np.int16)
    for x in range(v):
        s1, o1 = divmod(x, no)
        for y in range(v):
            s2, o2 = divmod(y, no)
            if x == y:
                cells[x, y] = 0
            elif s1 == s2:
                cells[x, y] = 3
            elif o1 == o2:
                cells[x, y] = 4
            else:
                (line,) = set(gq.spreads[s1]) & set(gq.spreads[s2])
                (point,) = set(gq.ovoids[o1]) & set(gq.ovoids[o2])
                if inc[point, line]:
                    cells[x, y] = 1
    return verified(ColorMatrix(cells, 4))
