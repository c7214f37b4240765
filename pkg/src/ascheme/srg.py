"""Strongly regular graphs: parameters and Latin square type classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .graph import Graph


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int
    # restricted eigenvalues r >= s; None for conference graphs with irrational spectrum
    r: int | None
    s: int | None
    f: int | None  # multiplicity of r
    g: int | None  # multiplicity of s

    @property
    def conference_irrational(self) -> bool:
        return self.r is None

    def __str__(self) -> str:
        eig = "irrational" if self.r is None else f"r={self.r}^{self.f} s={self.s}^{self.g}"
        return f"({self.v},{self.k},{self.lam},{self.mu}) {eig}"


@dataclass(frozen=True)
class NotSrg:
    """Witness that a regular graph is not strongly regular."""

    reason: str
    first: tuple[int, int, int] | None = None
    second: tuple[int, int, int] | None = None

    def __str__(self) -> str:
        out = f"not-srg: {self.reason}"
        if self.first is not None:
            (x1, y1, c1), (x2, y2, c2) = self.first, self.second
            out += f" (pair ({x1},{y1}) has {c1}, pair ({x2},{y2}) has {c2} common neighbours)"
        return out


def params_from_counts(v: int, k: int, lam: int, mu: int) -> SrgParams | NotSrg:
    """Fill in restricted eigenvalues and multiplicities for (v, k, lam, mu)."""
    if k * (k - 1 - lam) != mu * (v - 1 - k):
        return NotSrg(f"k(k-1-lambda) != mu(v-1-k) for {(v, k, lam, mu)}")
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = isqrt(disc)
    if root * root != disc:
        # irrational eigenvalues only happen for conference graphs (f = g)
        if 2 * k == v - 1 and 4 * lam == v - 5 and 4 * mu == v - 1:
            return SrgParams(v, k, lam, mu, None, None, (v - 1) // 2, (v - 1) // 2)
        return NotSrg(f"irrational eigenvalues with non-conference parameters {(v, k, lam, mu)}")
    if (lam - mu + root) % 2:
        return NotSrg(f"non-integral eigenvalues for {(v, k, lam, mu)}")
    r = (lam - mu + root) // 2
    s = (lam - mu - root) // 2
    # f = (-k - (v-1) s) / (r - s)
    num_f = -k - (v - 1) * s
    if r == s or num_f % (r - s):
        return NotSrg(f"non-integral multiplicity for {(v, k, lam, mu)}")
    f = num_f // (r - s)
    g = v - 1 - f
    if f < 0 or g < 0:
        return NotSrg(f"negative multiplicity for {(v, k, lam, mu)}")
    return SrgParams(v, k, lam, mu, r, s, f, g)


def params_from_eigenvalues(v: int, k: int, r: int, s: int) -> SrgParams | NotSrg:
    """SRG parameters from valency and the two restricted eigenvalues."""
    if r < s:
        r, s = s, r
    mu = k + r * s
    lam = mu + r + s
    return params_from_counts(v, k, lam, mu)


def srg_params(g: Graph) -> SrgParams | NotSrg:
    """Parameters of g if it is strongly regular, else a NotSrg witness.

    Raises PreconditionError for irregular, edgeless or complete graphs.
    """
    v = g.v
    k = g.regular_degree()
    if k is None:
        deg = g.degrees()
        x = int(np.flatnonzero(deg != deg[0])[0])
        raise PreconditionError(f"graph is not regular: deg(0)={deg[0]}, deg({x})={deg[x]}")
    if k == 0:
        raise PreconditionError("graph has no edges")
    if k == v - 1:
        raise PreconditionError("graph is complete")
    adj = g.adjacency()
    common = g.common_neighbors()
    off = ~np.eye(v, dtype=bool)
    witnesses = {}
    values = {}
    for name, mask in (("adjacent", adj), ("non-adjacent", off & ~adj)):
        vals = common[mask]
        idx = np.argwhere(mask)
        bad = np.flatnonzero(vals != vals[0])
        if bad.size:
            (x1, y1), (x2, y2) = idx[0], idx[bad[0]]
            witnesses[name] = ((int(x1), int(y1), int(vals[0])), (int(x2), int(y2), int(vals[bad[0]])))
        values[name] = int(vals[0])
    if witnesses:
        name, (a, b) = next(iter(witnesses.items()))
        return NotSrg(f"common neighbour count not constant on {name} pairs", a, b)
    return params_from_counts(v, k, values["adjacent"], values["non-adjacent"])


class Kind(enum.Enum):
    LS = "strictly-LS"
    NLS = "strictly-NLS"
    CONFERENCE = "conference"
    UNTYPED = "untyped"


@dataclass(frozen=True)
class SrgType:
    kind: Kind
    n: int | None = None
    t: int | None = None

    def __str__(self) -> str:
        if self.kind in (Kind.LS, Kind.NLS):
            return f"{self.kind.value}(n={self.n},t={self.t})"
        return self.kind.value

    @property
    def is_ls(self) -> bool:
        return self.kind is Kind.LS

    @property
    def is_nls(self) -> bool:
        return self.kind is Kind.NLS


def _latin_fit(v: int, k: int, r: int, s: int, n: int) -> int | None:
    # LS: eigenvalues n-t, -t with the positive root n; NLS: same with n < 0
    t = -s if n > 0 else -r
    if (n > 0 and t <= 0) or (n < 0 and t >= 0):
        return None
    if k != t * (n - 1):
        return None
    if {r, s} != {n - t, -t}:
        return None
    return t


def is_conference(p: SrgParams) -> bool:
    return 2 * p.k == p.v - 1 and 4 * p.lam == p.v - 5 and 4 * p.mu == p.v - 1


def classify_type(p: SrgParams) -> SrgType:
    if is_conference(p):
        return SrgType(Kind.CONFERENCE)
    if p.r is None:
        return SrgType(Kind.UNTYPED)
    root = isqrt(p.v)
    if root * root != p.v:
        return SrgType(Kind.UNTYPED)
    for n, kind in ((root, Kind.LS), (-root, Kind.NLS)):
        t = _latin_fit(p.v, p.k, p.r, p.s, n)
        if t is not None:
            return SrgType(kind, n, t)
    return SrgType(Kind.UNTYPED)


def _conference_on_square(p: SrgParams) -> bool:
    root = isqrt(p.v)
    return is_conference(p) and root * root == p.v


def is_ls_inclusive(p: SrgParams) -> bool:
    """Latin square type, counting conference graphs on square v."""
    return classify_type(p).is_ls or _conference_on_square(p)


def is_nls_inclusive(p: SrgParams) -> bool:
    return classify_type(p).is_nls or _conference_on_square(p)


def complement_params(p: SrgParams) -> SrgParams | NotSrg:
    v, k, lam, mu = p.v, p.k, p.lam, p.mu
    kc = v - k - 1
    return params_from_counts(v, kc, v - 2 - 2 * k + mu, v - 2 * k + lam)


def lemma_type_from_eigenvalue(v: int, k: int, a: int) -> Kind:
    """LS or NLS for an SRG on n^2 vertices with restricted eigenvalue a, k = -a(n-1)."""
    root = isqrt(v)
    if root * root != v:
        raise PreconditionError(f"{v} is not a perfect square")
    for n, kind in ((root, Kind.LS), (-root, Kind.NLS)):
        if k == -a * (n - 1):
            return kind
    raise PreconditionError(f"k={k} != -a(n-1) for a={a}, n=+-{root}")


def common_eigenspace_dim(n: int, t: int, k: int, r: int, s: int) -> int:
    """Dimension of the joint eigenspace for n-t of a Latin-type A and r of a commuting B.

    B has valency k and restricted eigenvalues r, s where r - s has the sign of n.
    """
    if r == s or (r - s > 0) != (n > 0):
        raise PreconditionError("r - s must be nonzero with the same sign as n")
    dim = Fraction(-t * (k + (n - 1) * s), r - s)
    if dim.denominator != 1 or dim < 0:
        raise PreconditionError(f"no commuting pair: common eigenspace dimension would be {dim}")
    return int(dim)


def restricted_eigenvalues(column: Sequence[int]) -> list[int]:
    """Distinct restricted eigenvalues from a P column (rows 1..d)."""
    return sorted(set(int(x) for x in column[1:]), reverse=True)


def params_from_column(v: int, column: Sequence[int]) -> SrgParams | NotSrg:
    """SRG parameters of a scheme relation from its eigenmatrix column."""
    vals = restricted_eigenvalues(column)
    k = int(column[0])
    if len(vals) != 2:
        return NotSrg(f"{len(vals)} distinct restricted eigenvalues")
    return params_from_eigenvalues(v, k, vals[0], vals[1])
