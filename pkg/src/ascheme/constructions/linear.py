"""Translation schemes on vector spaces and abelian groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import PreconditionError
from ..gf import Field, decode_vector, encode_vector, gf, vec_scale
from ..scheme import ColorMatrix, Scheme, Violation, scheme_verify_transitive
from ..fusion import is_fusion_scheme, make_partition

# dense v x v color matrices beyond this are impractical on a desk machine
MAX_VERTICES = 4096


def _guard(v: int) -> None:
    if v > MAX_VERTICES:
        raise PreconditionError(f"{v} vertices exceeds the dense-matrix limit {MAX_VERTICES}")


def difference_index(f: Field, dim: int) -> np.ndarray:
    """diff[x, y] = encoding of x - y for vectors of GF(q)^dim in encoding order."""
    v = f.q**dim
    _guard(v)
    idx = np.arange(v, dtype=np.int32)
    if f.p == 2:
        # addition is coordinatewise XOR, and base-2^k digits XOR independently
        return np.bitwise_xor.outer(idx, idx)
    digits = np.array([decode_vector(f, x, dim) for x in range(v)], dtype=np.int64)
    sub = f.sub_table
    out = np.zeros((v, v), dtype=np.int32)
    for k in range(dim):
        out = out * f.q + sub[digits[:, None, k], digits[None, :, k]]
    return out


def difference_coloring(f: Field, dim: int, labels: Sequence[int], d: int) -> ColorMatrix:
    """x ~_i y iff labels[x - y] = i; labels[0] must be 0 and labels[-x] = labels[x]."""
    labels = np.asarray(labels, dtype=np.int16)
    if labels[0] != 0 or (labels[1:] == 0).any():
        raise PreconditionError("label 0 must be used by the zero vector only")
    neg = np.array([encode_vector(f, [f.neg(a) for a in decode_vector(f, x, dim)]) for x in range(len(labels))])
    bad = np.flatnonzero(labels[neg] != labels)
    if bad.size:
        x = int(bad[0])
        raise PreconditionError(f"part of vector {decode_vector(f, x, dim)} is not closed under negation")
    return ColorMatrix(labels[difference_index(f, dim)], d)


def build_translation_scheme(f: Field, dim: int, parts: Sequence[Iterable[Sequence[int]]]) -> Scheme | Violation:
    """Translation scheme of a partition of the nonzero vectors into scalar-closed parts."""
    v = f.q**dim
    _guard(v)
    labels = [-1] * v
    labels[0] = 0
    for c, part in enumerate(parts, start=1):
        for vec in part:
            x = encode_vector(f, vec)
            if x == 0:
                raise PreconditionError("the zero vector cannot lie in a part")
            if labels[x] != -1:
                raise PreconditionError(f"vector {tuple(vec)} lies in two parts")
            labels[x] = c
    if -1 in labels:
        raise PreconditionError(f"vector {decode_vector(f, labels.index(-1), dim)} is not covered")
    for x in range(1, v):
        vec = decode_vector(f, x, dim)
        for a in range(2, f.q):
            if labels[encode_vector(f, vec_scale(f, a, vec))] != labels[x]:
                raise PreconditionError(f"part {labels[x]} is not closed under scalar multiplication at {vec}")
    return scheme_verify_transitive(difference_coloring(f, dim, labels, len(parts)))


def verified_transitive(c: ColorMatrix) -> Scheme:
    result = scheme_verify_transitive(c)
    if isinstance(result, Violation):
        raise AssertionError(f"construction failed to verify: {result}")
    return result


def build_hamming(D: int, q: int) -> Scheme:
    """Hamming scheme H(D, q): words over {0..q-1}, classes by Hamming distance."""
    if D < 1 or q < 2:
        raise PreconditionError("need D >= 1 and q >= 2")
    if q**D > 2**16:
        raise PreconditionError(f"q^D = {q}^{D} exceeds 2^16")
    v = q**D
    _guard(v)
    words = np.array(list(itertools.product(range(q), repeat=D)), dtype=np.int16)
    cells = np.zeros((v, v), dtype=np.int16)
    for k in range(D):
        cells += words[:, None, k] != words[None, :, k]
    return verified_transitive(ColorMatrix(cells, D))


def build_cyclotomic(q: int, e: int) -> Scheme:
    """Classes x - y in g^(i-1) H, H the index-e subgroup of GF(q)^*."""
    f = gf(q)
    if e < 1 or (q - 1) % e:
        raise PreconditionError(f"e={e} does not divide q-1={q - 1}")
    if f.p != 2 and ((q - 1) // e) % 2:
        raise PreconditionError(f"-1 is not in the index-{e} subgroup of GF({q})^*: relations would be directed")
    labels = [0] + [f.log(x) % e + 1 for x in range(1, q)]
    return verified_transitive(difference_coloring(f, 1, labels, e))


def _normalise(f: Field, vec: Sequence[int]) -> tuple[int, ...]:
    lead = next(a for a in vec if a)
    return vec_scale(f, f.inv(lead), vec)


def projective_points(f: Field, dim: int) -> list[tuple[int, ...]]:
    """Points of PG(dim-1, q) as vectors with first nonzero coordinate 1."""
    return sorted({_normalise(f, vec) for vec in itertools.product(range(f.q), repeat=dim) if any(vec)})


@dataclass(frozen=True)
class PG24Partition:
    """The five-part partition of PG(2,4): triangle, xyz = 1, xyz = a, xyz = a^2, unital."""

    parts: tuple[tuple[tuple[int, int, int], ...], ...]

    def hyperoval(self) -> tuple[tuple[int, int, int], ...]:
        return self.parts[0] + self.parts[1]


def pg24_partition() -> PG24Partition:
    f = gf(4)
    parts: list[list[tuple[int, ...]]] = [[] for _ in range(5)]
    for pt in projective_points(f, 3):
        weight = sum(1 for a in pt if a)
        if weight == 1:
            parts[0].append(pt)
        elif weight == 2:
            parts[4].append(pt)
        else:
            prod = f.mul(f.mul(pt[0], pt[1]), pt[2])
            # field elements 1, a, a^2 are encoded 1, 2, 3 in some order; use encoding order
            parts[prod].append(pt)
    return PG24Partition(tuple(tuple(p) for p in parts))


def _det3(f: Field, a, b, c) -> int:
    m, add, sub = f.mul, f.add, f.sub
    t1 = m(a[0], sub(m(b[1], c[2]), m(b[2], c[1])))
    t2 = m(a[1], sub(m(b[0], c[2]), m(b[2], c[0])))
    t3 = m(a[2], sub(m(b[0], c[1]), m(b[1], c[0])))
    return add(sub(t1, t2), t3)


def no_three_collinear(f: Field, points: Sequence[Sequence[int]]) -> bool:
    return all(_det3(f, a, b, c) for a, b, c in itertools.combinations(points, 3))


def build_decaen_vandam() -> Scheme:
    """5-class linear fission of H(3,4) on GF(4)^3 from the PG(2,4) partition."""
    f = gf(4)
    part = pg24_partition()
    vec_parts = []
    for pts in part.parts:
        vec_parts.append([vec_scale(f, a, pt) for pt in pts for a in range(1, 4)])
    result = build_translation_scheme(f, 3, vec_parts)
    if isinstance(result, Violation):
        raise AssertionError(f"construction failed to verify: {result}")
    return result


def ag28_labels() -> list[int]:
    """Slope class of each nonzero vector of GF(8)^2: 1 for vertical, 2 + m for slope m."""
    f = gf(8)
    labels = [0] * 64
    for x in range(1, 64):
        dx, dy = decode_vector(f, x, 2)
        labels[x] = 1 if dx == 0 else 2 + f.mul(dy, f.inv(dx))
    return labels


def build_ag28_scheme() -> Scheme:
    """Parallel classes of AG(2,8): nine classes, each eight disjoint 8-cliques."""
    return verified_transitive(difference_coloring(gf(8), 2, ag28_labels(), 9))


AG28_FUSION = ((1, 2, 3), (4, 5), (6, 7), (8, 9))

# POLHILL_TABLE[c][b]: relation of the pair whose GF(16) part lies in class c
# (0 = equal) and whose GF(8)^2 part lies in fused class b (0 = equal)
POLHILL_TABLE = (
    (0, 1, 2, 3, 4),
    (2, 2, 1, 4, 3),
    (3, 3, 4, 1, 2),
    (4, 4, 3, 2, 1),
)


def build_polhill_product() -> Scheme:
    """Amorphic 4-class scheme on GF(16) x GF(8)^2 from the Kronecker formulas.

    A_1 = I(x)B_1 + C_1(x)B_2 + C_2(x)B_3 + C_3(x)B_4 and its three companions,
    with B the (21,14,14,14) fusion of AG(2,8) and C the Clebsch classes of
    GF(16). Vertex c * 64 + b.
    """
    ag = ag28_labels()
    fused = [0] * 10
    for idx, block in enumerate(AG28_FUSION, start=1):
        for c in block:
            fused[c] = idx
    blab = np.array([fused[x] for x in ag], dtype=np.int64)
    f16 = gf(16)
    clab = np.array([0] + [f16.log(x) % 3 + 1 for x in range(1, 16)], dtype=np.int64)
    table = np.array(POLHILL_TABLE, dtype=np.int16)
    idx = np.arange(1024)
    c_part, b_part = np.divmod(idx, 64)
    dc = np.bitwise_xor.outer(c_part, c_part)
    db = np.bitwise_xor.outer(b_part, b_part)
    cells = table[clab[dc], blab[db]]
    return verified_transitive(ColorMatrix(cells, 4))


def folded_halved_words() -> np.ndarray:
    """Representatives of antipodal pairs of even-weight 12-bit words (bit 11 clear)."""
    words = np.arange(1 << 11)
    return words[np.bitwise_count(words) % 2 == 0]


def build_folded_halved_cube() -> Scheme:
    """Folded halved 12-cube: classes by folded distance {2,10}, {4,8}, {6}."""
    words = folded_halved_words()
    w = np.bitwise_count(np.bitwise_xor.outer(words, words))
    lut = np.array([0, 0, 1, 0, 2, 0, 3, 0, 2, 0, 1, 0, 0], dtype=np.int16)
    return verified_transitive(ColorMatrix(lut[w], 3))


def fused_scheme(s: Scheme, blocks: Sequence[Sequence[int]]) -> Scheme:
    """Fuse with the given blocks, raising if the fusion is not a scheme."""
    result = is_fusion_scheme(s, make_partition(blocks, s.d))
    if isinstance(result, Violation):
        raise PreconditionError(f"fusion {blocks} is not a scheme: {result}")
    return result
