"""Covers of minimal-model fusion rules by arbitrary finite abelian groups.

A labeling of a finite abelian group G by sectors covers the fusion rules
when (1) the sector triple of every sum g1 + g2 = g3 is admissible and (2)
every admissible sector triple is realized by some sum.  The canonical
2-group construction is one instance; the Ising rules are also covered by
Z_4 (with two elements playing the weight-1/16 sector) and the c = 7/10
rules by Z_12.  This module verifies such labelings for any invariant-factor
decomposition, and exhaustively searches cyclic groups of bounded order for
covers.

The search assigns sectors to the elements 1..k-1 of Z_k in order (0 always
carries the vacuum), pruning any partial labeling whose already-decidable
sums violate closure; the multiplicity profile of the fusion table (how
often a sector repeats within a row) gives an a-priori lower bound on the
order of any covering group, which prunes whole orders.  Found covers are
reported up to the negation automorphism x -> -x of Z_k, in deterministic
order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from . import _kernels
from .certificates import FAIL, PASS, ClosureViolation, CoverCertificate, UncoveredTriple
from .errors import CapacityError
from .minimal_model import FusionTensor, ModelParams, Sector, sectors

# Orders above this need an explicit budget override (CLI: --allow-large).
DEFAULT_SEARCH_BUDGET = 24

Element = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroupSpec:
    """A finite abelian group as a product of cyclic factors Z_k1 x ... x Z_kt.

    Elements are digit tuples; addition is componentwise modular.  An empty
    factor list is the trivial group.
    """

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(int(k) for k in self.factors))
        if any(k < 2 for k in self.factors):
            raise ValueError(f"all factors must be >= 2, got {self.factors}")

    @classmethod
    def cyclic(cls, k: int) -> "AbelianGroupSpec":
        """Z_k; the trivial group for k = 1."""
        if k < 1:
            raise ValueError(f"cyclic group order must be >= 1, got {k}")
        return cls(()) if k == 1 else cls((k,))

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def identity(self) -> Element:
        return (0,) * len(self.factors)

    def elements(self) -> list[Element]:
        """All elements in the canonical (big-endian mixed radix) order."""
        return list(itertools.product(*(range(k) for k in self.factors)))

    def index_of(self, e: Element) -> int:
        idx = 0
        for digit, k in zip(e, self.factors):
            idx = idx * k + digit
        return idx

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % k for x, y, k in zip(a, b, self.factors))

    def negate(self, a: Element) -> Element:
        return tuple((-x) % k for x, k in zip(a, self.factors))

    def digit_matrix(self) -> np.ndarray:
        """(order, t) array whose row g is the digit tuple of element g."""
        return np.array(self.elements(), dtype=np.int64).reshape(self.order, len(self.factors))

    def describe(self) -> str:
        if not self.factors:
            return "trivial group"
        return " x ".join(f"Z{k}" for k in self.factors)


@dataclass(frozen=True, eq=False)
class LabeledGroup:
    """A total labeling of a group's elements by the sectors of one model.

    The identity element must carry the vacuum sector (1,1); a cover could
    not do otherwise, and the structured file format requires it too.
    """

    spec: AbelianGroupSpec
    params: ModelParams
    sector_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sector_indices", tuple(int(i) for i in self.sector_indices))
        n = self.params.n_sectors
        if len(self.sector_indices) != self.spec.order:
            raise ValueError(
                f"labeling must cover all {self.spec.order} elements, "
                f"got {len(self.sector_indices)}"
            )
        if any(not 0 <= i < n for i in self.sector_indices):
            raise ValueError("labeling contains out-of-range sector indices")
        if self.sector_indices[0] != 0:
            raise ValueError("the identity element must be labeled by the (1,1) sector")

    @classmethod
    def from_kac_labels(
        cls,
        spec: AbelianGroupSpec,
        params: ModelParams,
        labels: dict[Element, tuple[int, int]],
    ) -> "LabeledGroup":
        """Build from a map element -> (m, n); labels are canonicalized."""
        from .minimal_model import canonicalize

        elements = spec.elements()
        missing = [e for e in elements if e not in labels]
        if missing:
            raise ValueError(f"labeling is partial: element {missing[0]} has no sector")
        extra = [e for e in labels if e not in set(elements)]
        if extra:
            raise ValueError(f"labeling mentions non-elements: {extra[0]}")
        indices = tuple(canonicalize(params, *labels[e]).index for e in elements)
        return cls(spec, params, indices)

    @property
    def labels(self) -> tuple[Sector, ...]:
        secs = sectors(self.params)
        return tuple(secs[i] for i in self.sector_indices)

    def sector_of(self, e: Element) -> Sector:
        return sectors(self.params)[self.sector_indices[self.spec.index_of(e)]]


def verify_abelian_cover(
    lg: LabeledGroup,
    tensor: FusionTensor,
    threads: int = 1,
    backend: str | None = None,
) -> CoverCertificate:
    """Check cover conditions (1) and (2) for a labeled abelian group.

    Scans all |G|^2 ordered pairs under the group's addition.  FAIL
    certificates carry the first violation in canonical element order, or
    the first admissible-but-unrealized sector triple.
    """
    if lg.params != tensor.model:
        raise ValueError(f"labeling is for {lg.params}, tensor for {tensor.model}")
    spec = lg.spec
    sec = np.array(lg.sector_indices, dtype=np.int64)
    d_flat = np.ascontiguousarray(tensor.coefficients.reshape(-1))
    radices = np.array(spec.factors, dtype=np.int64)
    first, realized = _kernels.scan_pairs_group(
        spec.digit_matrix(), radices, sec, tensor.n, d_flat, threads, backend
    )
    stats = _kernels.scan_stats(spec.order, d_flat, realized)
    elements = spec.elements()
    if first[0] >= 0:
        g1, g2 = elements[first[0]], elements[first[1]]
        g3 = spec.add(g1, g2)
        triple = (
            lg.sector_of(g1),
            lg.sector_of(g2),
            lg.sector_of(g3),
        )
        return CoverCertificate(FAIL, ClosureViolation(g1, g2, g3, triple), stats)
    miss = _kernels.first_uncovered_triple(d_flat, realized, tensor.n)
    if miss is not None:
        i, j, k = miss
        secs = tensor.sectors
        return CoverCertificate(FAIL, UncoveredTriple((secs[i], secs[j], secs[k])), stats)
    return CoverCertificate(PASS, None, stats)


def multiplicity_profile(tensor: FusionTensor) -> dict[Sector, int]:
    """Per sector, the maximum number of times it appears within one table row.

    Row i of the fusion table lists the products S_i x S_j for all j; the
    profile of sector k is max_i |{j : D[i,j,k] = 1}|.  Any covering group
    needs at least that many elements carrying sector k, so the profile sum
    lower-bounds the order of a covering group.
    """
    counts = tensor.coefficients.sum(axis=1, dtype=np.int64)
    return {s: int(counts[:, s.index].max()) for s in tensor.sectors}


def _consistent(assign: list[int], e: int, k: int, d: np.ndarray) -> bool:
    """Closure check of all pair sums that became decidable by assigning element e."""
    se = assign[e]
    for x in range(e + 1):
        z = (x + e) % k
        if z <= e and not d[assign[x], se, assign[z]]:
            return False
    for x in range(e):
        y = (e - x) % k
        if x <= y < e and not d[assign[x], assign[y], se]:
            return False
    return True


def _realizes_all(assign: list[int], k: int, d: np.ndarray) -> bool:
    """Cover condition (2) for a complete assignment of Z_k."""
    n = d.shape[0]
    realized = np.zeros((n, n, n), dtype=bool)
    for x in range(k):
        for y in range(k):
            realized[assign[x], assign[y], assign[(x + y) % k]] = True
    return not np.any(d & ~realized)


def _search_order(tensor: FusionTensor, k: int) -> list[tuple[int, ...]]:
    """All complete Z_k labelings passing both cover conditions (with duplicates
    under negation)."""
    n = tensor.n
    d = tensor.coefficients.astype(bool)
    assign = [0] * k
    found: list[tuple[int, ...]] = []

    def place(e: int) -> None:
        if e == k:
            if _realizes_all(assign, k, d):
                found.append(tuple(assign))
            return
        for s in range(n):
            assign[e] = s
            if _consistent(assign, e, k, d):
                place(e + 1)

    place(1)
    return found


def search_cyclic_covers(
    tensor: FusionTensor,
    max_order: int,
    order_budget: int = DEFAULT_SEARCH_BUDGET,
) -> list[LabeledGroup]:
    """All cyclic covers Z_k, k <= max_order, up to the negation automorphism.

    Results are deterministic: ascending order k, then lexicographic in the
    label tuple.  Orders below the multiplicity-profile sum cannot cover and
    are skipped outright.
    """
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    if max_order > order_budget:
        raise CapacityError(
            f"max_order {max_order} exceeds the search budget {order_budget}"
        )
    min_order = sum(multiplicity_profile(tensor).values())
    covers: list[LabeledGroup] = []
    for k in range(1, max_order + 1):
        if k < min_order:
            continue
        canonical: set[tuple[int, ...]] = set()
        for assign in _search_order(tensor, k):
            negated = tuple(assign[(-x) % k] for x in range(k))
            canonical.add(min(assign, negated))
        covers.extend(
            LabeledGroup(AbelianGroupSpec.cyclic(k), tensor.model, assign)
            for assign in sorted(canonical)
        )
    return covers
