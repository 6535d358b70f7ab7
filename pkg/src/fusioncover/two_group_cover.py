"""The canonical 2-group cover of a minimal model's fusion rules.

For the (p,q)-minimal model set r = p + q - 4 and let H = Z_2^r, with
coordinates 1..p-2 forming the subgroup A and coordinates p-1..r forming B.
Splitting A and B into fixed-weight classes

    A_m = {a in A : wt(a) = m - 1},   B_n = {b in B : wt(b) = n - 1},

every x in H lies in exactly one class H_{m,n} = A_m + B_n, which attaches a
full Kac label to x.  Adding the all-ones vector swaps (m, n) with
(p-m, q-n), so the label map descends to the quotient G = H / {0, all-ones}
as a map onto sectors.  This module builds that map and verifies, by
exhausting all |G|^2 element pairs, that it covers the fusion rules: sums of
elements land only on admissible sector triples, and every admissible triple
is realized.  The same scan yields the partition algebra (structure
constants of coset-class sums), which the theorem says is isomorphic to the
Verlinde algebra.

Everything is immutable and pure; the pair scan itself runs on the kernels
in ``_kernels`` (numba or numpy backend) and may be partitioned across
threads with deterministic results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal, NamedTuple, Sequence

import numpy as np

from . import _kernels
from .certificates import FAIL, PASS, ClosureViolation, CoverCertificate, UncoveredTriple
from .errors import CapacityError, PartitionError
from .minimal_model import (
    Fraction,
    FusionTensor,
    ModelParams,
    Sector,
    VerlindeAlgebra,
    algebra_product,
    canonicalize,
    sectors,
)

# One group element must fit in a machine word for the kernels.
MAX_RANK = 62


@dataclass(frozen=True)
class BitVector:
    """An element of Z_2^width; coordinate i (1-based) is bit i-1 of ``bits``."""

    bits: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 0:
            raise ValueError(f"width must be >= 0, got {self.width}")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"bits {self.bits:#x} exceed width {self.width}")

    @classmethod
    def from_coordinates(cls, coords: str) -> "BitVector":
        """Parse a coordinate string like ``"110"`` (coordinate 1 leftmost)."""
        if set(coords) - {"0", "1"}:
            raise ValueError(f"coordinate string must be over {{0,1}}: {coords!r}")
        bits = 0
        for i, ch in enumerate(coords):
            if ch == "1":
                bits |= 1 << i
        return cls(bits, len(coords))

    @classmethod
    def all_ones(cls, width: int) -> "BitVector":
        return cls((1 << width) - 1, width)

    def weight(self) -> int:
        """Number of coordinates equal to 1."""
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        """Ascending 1-based coordinates equal to 1."""
        return tuple(i + 1 for i in range(self.width) if self.bits >> i & 1)

    def coordinates(self) -> str:
        """Coordinate string with coordinate 1 leftmost, e.g. ``"110"``."""
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.width))

    def _check_width(self, other: "BitVector") -> None:
        if self.width != other.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        """Group sum (componentwise addition mod 2)."""
        self._check_width(other)
        return BitVector(self.bits ^ other.bits, self.width)

    def __and__(self, other: "BitVector") -> "BitVector":
        """Boolean-ring product (componentwise multiplication)."""
        self._check_width(other)
        return BitVector(self.bits & other.bits, self.width)

    def __str__(self) -> str:
        return self.coordinates()


def sym_diff_weight_identity(x: BitVector, y: BitVector) -> tuple[int, int]:
    """Both sides of wt(x+y) = wt(x) + wt(y) - 2 wt(x*y); always equal.

    Exposed as a checkable pair: the support of a sum is the symmetric
    difference of the supports, whose size is the right-hand side.
    """
    if x.width != y.width:
        raise ValueError(f"width mismatch: {x.width} vs {y.width}")
    lhs = (x ^ y).weight()
    rhs = x.weight() + y.weight() - 2 * (x & y).weight()
    return lhs, rhs


class ClassLabel(NamedTuple):
    """A full (not canonicalized) Kac label attached to a group element."""

    m: int
    n: int


@dataclass(frozen=True)
class GroupContext:
    """The group H = Z_2^r for a model, with its A/B coordinate split."""

    params: ModelParams

    def __post_init__(self) -> None:
        if self.r > MAX_RANK:
            raise CapacityError(
                f"rank r = p + q - 4 = {self.r} exceeds the supported maximum {MAX_RANK}"
            )

    @property
    def r(self) -> int:
        return self.params.p + self.params.q - 4

    @property
    def a_coords(self) -> range:
        """Coordinates of the subgroup A: 1..p-2."""
        return range(1, self.params.p - 1)

    @property
    def b_coords(self) -> range:
        """Coordinates of the subgroup B: p-1..p+q-4."""
        return range(self.params.p - 1, self.r + 1)

    @property
    def n_cosets(self) -> int:
        return 1 << (self.r - 1)

    @property
    def all_ones(self) -> BitVector:
        return BitVector.all_ones(self.r)


def class_of(ctx: GroupContext, x: BitVector) -> ClassLabel:
    """The full Kac label (m, n) of the class H_{m,n} containing x.

    m - 1 is the weight of x restricted to the A coordinates, n - 1 the
    weight restricted to the B coordinates.
    """
    if x.width != ctx.r:
        raise ValueError(f"expected width {ctx.r}, got {x.width}")
    a_width = ctx.params.p - 2
    a_mask = (1 << a_width) - 1
    m = (x.bits & a_mask).bit_count() + 1
    n = (x.bits >> a_width).bit_count() + 1
    return ClassLabel(m, n)


def class_members(ctx: GroupContext, label: ClassLabel | tuple[int, int]) -> set[BitVector]:
    """All elements of H_{m,n}; there are C(p-2, m-1) * C(q-2, n-1) of them."""
    m, n = label
    p, q = ctx.params.p, ctx.params.q
    if not (0 < m < p and 0 < n < q):
        raise ValueError(f"class label ({m}, {n}) out of range for (p, q) = ({p}, {q})")
    members = set()
    for a_supp in itertools.combinations(ctx.a_coords, m - 1):
        a_bits = sum(1 << (i - 1) for i in a_supp)
        for b_supp in itertools.combinations(ctx.b_coords, n - 1):
            bits = a_bits + sum(1 << (i - 1) for i in b_supp)
            members.add(BitVector(bits, ctx.r))
    return members


def orbit_sum_classes(
    ctx: GroupContext, part: Literal["A", "B"], w1: int, w2: int
) -> set[int]:
    """Labels m3 whose orbit A_{m3} meets A_{m1} + A_{m2} (or the B analogue).

    Enumerates every pair of vectors in the two fixed-weight orbits of the
    chosen coordinate block and collects the weights (+1) of their sums.
    """
    if part == "A":
        width, bound = ctx.params.p - 2, ctx.params.p
    elif part == "B":
        width, bound = ctx.params.q - 2, ctx.params.q
    else:
        raise ValueError(f"part must be 'A' or 'B', got {part!r}")
    if not (0 < w1 < bound and 0 < w2 < bound):
        raise ValueError(f"labels ({w1}, {w2}) out of range for part {part} (bound {bound})")
    orbit1 = [sum(1 << i for i in s) for s in itertools.combinations(range(width), w1 - 1)]
    orbit2 = [sum(1 << i for i in s) for s in itertools.combinations(range(width), w2 - 1)]
    return {(v1 ^ v2).bit_count() + 1 for v1 in orbit1 for v2 in orbit2}


@dataclass(frozen=True)
class Coset:
    """An element of G = H / {0, all-ones}: the numerically smaller member."""

    representative: BitVector

    def __post_init__(self) -> None:
        r = self.representative.width
        if r < 1:
            raise ValueError("cosets require width >= 1")
        if self.representative.bits >> (r - 1):
            raise ValueError(
                f"{self.representative.coordinates()} is not canonical "
                f"(coordinate {r} must be 0)"
            )

    @classmethod
    def of(cls, x: BitVector) -> "Coset":
        """The coset containing x."""
        complement = x ^ BitVector.all_ones(x.width)
        return cls(min(x, complement, key=lambda v: v.bits))

    @property
    def members(self) -> tuple[BitVector, BitVector]:
        rep = self.representative
        return rep, rep ^ BitVector.all_ones(rep.width)

    def __xor__(self, other: "Coset") -> "Coset":
        return Coset(self.representative ^ other.representative)

    def __str__(self) -> str:
        return self.representative.coordinates()


def quotient_cosets(ctx: GroupContext) -> list[Coset]:
    """The 2^(r-1) cosets of G in ascending representative order."""
    return [Coset(BitVector(g, ctx.r)) for g in range(ctx.n_cosets)]


@dataclass(frozen=True, eq=False)
class CoverMap:
    """A total assignment of sectors to the cosets of G.

    ``sector_indices[g]`` is the sector index assigned to the coset whose
    representative has value g; representatives enumerate 0..2^(r-1)-1.
    """

    context: GroupContext
    sector_indices: np.ndarray
    sectors: tuple[Sector, ...]

    def __post_init__(self) -> None:
        arr = np.array(self.sector_indices, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "sector_indices", arr)
        if arr.shape != (self.context.n_cosets,):
            raise ValueError(
                f"assignment must cover all {self.context.n_cosets} cosets, "
                f"got shape {arr.shape}"
            )
        if arr.size and (arr.min() < 0 or arr.max() >= len(self.sectors)):
            raise ValueError("assignment contains out-of-range sector indices")

    def swapped_images(self, a: int, b: int) -> "CoverMap":
        """A copy with the images of coset representatives a and b exchanged."""
        arr = self.sector_indices.copy()
        arr[[a, b]] = arr[[b, a]]
        return CoverMap(self.context, arr, self.sectors)

    def reassigned(self, rep: int, sector_index: int) -> "CoverMap":
        """A copy with coset representative ``rep`` sent to ``sector_index``."""
        arr = self.sector_indices.copy()
        arr[rep] = sector_index
        return CoverMap(self.context, arr, self.sectors)


def _label_to_sector_index(params: ModelParams) -> np.ndarray:
    """Table L[m, n] = sector index of the class of full label (m, n)."""
    p, q = params.p, params.q
    table = np.full((p, q), -1, dtype=np.int64)
    for m in range(1, p):
        for n in range(1, q):
            table[m, n] = canonicalize(params, m, n).index
    return table


def canonical_cover(ctx: GroupContext) -> CoverMap:
    """The map Phi: each coset is sent to the sector of its members' class.

    Well-definedness (both members of every coset lie in classes with the
    same canonicalization) is asserted during construction.
    """
    p = ctx.params.p
    a_width = p - 2
    reps = np.arange(ctx.n_cosets, dtype=np.uint64)
    m = _kernels.popcount(reps & np.uint64((1 << a_width) - 1)).astype(np.int64) + 1
    n = _kernels.popcount(reps >> np.uint64(a_width)).astype(np.int64) + 1
    table = _label_to_sector_index(ctx.params)
    assignment = table[m, n]
    complement = table[ctx.params.p - m, ctx.params.q - n]
    if not np.array_equal(assignment, complement):
        raise AssertionError("class map is not constant on cosets")
    return CoverMap(ctx, assignment, sectors(ctx.params))


def phi(cm: CoverMap, g: Coset) -> Sector:
    """The sector assigned to a coset."""
    if g.representative.width != cm.context.r:
        raise ValueError(
            f"coset width {g.representative.width} does not match context rank {cm.context.r}"
        )
    return cm.sectors[cm.sector_indices[g.representative.bits]]


def verify_cover(
    cm: CoverMap,
    tensor: FusionTensor,
    threads: int = 1,
    backend: str | None = None,
) -> CoverCertificate:
    """Check both cover conditions for a coset assignment against fusion rules.

    Condition (1): for every pair of cosets, the sector triple of
    (g1, g2, g1 + g2) must be admissible.  Condition (2): every admissible
    sector triple must be realized by some pair.  FAIL certificates carry
    the first violation in canonical order (g1 ascending, then g2, then
    triple index), independent of backend and thread count.
    """
    if cm.context.params != tensor.model:
        raise ValueError(
            f"cover map is for {cm.context.params}, tensor for {tensor.model}"
        )
    sec = cm.sector_indices
    d_flat = np.ascontiguousarray(tensor.coefficients.reshape(-1))
    first, realized = _kernels.scan_pairs_xor(sec, tensor.n, d_flat, threads, backend)
    stats = _kernels.scan_stats(len(sec), d_flat, realized)
    if first[0] >= 0:
        g1, g2 = first
        g3 = g1 ^ g2
        triple = (
            cm.sectors[sec[g1]],
            cm.sectors[sec[g2]],
            cm.sectors[sec[g3]],
        )
        return CoverCertificate(FAIL, ClosureViolation(g1, g2, g3, triple), stats)
    miss = _kernels.first_uncovered_triple(d_flat, realized, tensor.n)
    if miss is not None:
        i, j, k = miss
        triple = (cm.sectors[i], cm.sectors[j], cm.sectors[k])
        return CoverCertificate(FAIL, UncoveredTriple(triple), stats)
    return CoverCertificate(PASS, None, stats)


@dataclass(frozen=True, eq=False)
class PartitionAlgebra:
    """The algebra W of a partition of G: W[i,j,k] = 1 iff P_i + P_j meets P_k."""

    sectors: tuple[Sector, ...]
    coefficients: np.ndarray

    @property
    def n(self) -> int:
        return len(self.sectors)

    def product(self, x: Sequence[Fraction | int], y: Sequence[Fraction | int]) -> list[Fraction]:
        return algebra_product(self.coefficients, x, y)


def partition_algebra(
    cm: CoverMap,
    strict: bool = True,
    threads: int = 1,
    backend: str | None = None,
) -> PartitionAlgebra:
    """Structure constants of the partition P_i = preimage of sector i under Phi.

    With ``strict`` (the default) the partition must satisfy P_1 = {0}: the
    identity coset alone is assigned the vacuum sector.  Pass strict=False
    to build the algebra of a deliberately corrupted partition anyway, e.g.
    to compare its constants against the Verlinde algebra.
    """
    sec = cm.sector_indices
    if strict:
        vacuum = np.flatnonzero(sec == 0)
        if vacuum.tolist() != [0]:
            raise PartitionError(
                "partition requires P_1 = {0}: vacuum preimage is "
                f"{vacuum.tolist()} (coset representatives)"
            )
    n = len(cm.sectors)
    ones = np.ones(n * n * n, dtype=np.uint8)
    _, realized = _kernels.scan_pairs_xor(sec, n, ones, threads, backend)
    coeff = realized.reshape(n, n, n)
    coeff.setflags(write=False)
    return PartitionAlgebra(cm.sectors, coeff)


def is_isomorphic_to_verlinde(w: PartitionAlgebra, v: VerlindeAlgebra) -> bool:
    """Whether the index-preserving bijection S_i <-> P_i is an algebra isomorphism.

    True iff the two structure-constant arrays are identical.
    """
    if w.n != v.n:
        raise ValueError(f"dimension mismatch: partition {w.n} vs Verlinde {v.n}")
    return np.array_equal(w.coefficients, v.structure_constants)
