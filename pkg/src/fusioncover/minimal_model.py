"""Exact fusion data of the (p,q)-minimal models of the Virasoro algebra.

For coprime integers p, q >= 2 the (p,q)-minimal model has central charge

    c = 1 - 6(p-q)^2 / (pq)

and a finite family of irreducible highest-weight modules ("sectors")
labelled by Kac labels (m, n) with 0 < m < p, 0 < n < q and conformal
weights

    h_{m,n} = ((np - mq)^2 - (p-q)^2) / (4pq).

Since h_{m,n} = h_{p-m,q-n}, sectors are equivalence classes of label
pairs; there are N = (p-1)(q-1)/2 of them.  The fusion rules are
multiplicity-free and are decided by an arithmetic admissibility
condition on label triples (odd sum, strict triangle inequalities).
This module computes all of it exactly, over the rationals:

* sector enumeration and canonical labels,
* the admissibility predicate and the closed-form completion range,
* the N x N x N fusion tensor with 0/1 structure constants,
* the Verlinde algebra those structure constants generate.

All values are `fractions.Fraction`; nothing here is floating point.
All objects are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import numpy as np

# Exact rational scalar used for every c and h value.  Fraction already
# guarantees lowest terms, a positive denominator and structural equality.
Rational = Fraction

# Keeps (np - mq)^2 comfortably inside any fixed-width arithmetic a caller
# might feed the results into; Python ints would not overflow, but the
# contract promises a clean error instead of silently huge tables.
MAX_PQ = 10_000


def fraction_str(x: Fraction) -> str:
    """Render an exact rational as ``num/den``, or just ``num`` if integral."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ModelParams:
    """The pair (p, q) selecting a minimal model.  Requires coprime p, q >= 2."""

    p: int
    q: int

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if not (isinstance(p, int) and isinstance(q, int)):
            raise TypeError(f"p and q must be integers, got ({p!r}, {q!r})")
        if p < 2 or q < 2:
            raise ValueError(f"need p, q >= 2, got ({p}, {q})")
        if p > MAX_PQ or q > MAX_PQ:
            raise ValueError(f"p, q <= {MAX_PQ} enforced, got ({p}, {q})")
        if gcd(p, q) != 1:
            raise ValueError(f"p and q must be coprime, got gcd({p}, {q}) = {gcd(p, q)}")

    @property
    def n_sectors(self) -> int:
        return (self.p - 1) * (self.q - 1) // 2


@dataclass(frozen=True)
class Sector:
    """One distinct irreducible module, i.e. the label class {(m,n), (p-m,q-n)}.

    (m, n) is the canonical representative (lexicographically smaller of the
    two), h its conformal weight, and index its position in the model's
    lexicographically sorted sector list (sector (1,1), h = 0, has index 0).
    """

    m: int
    n: int
    h: Fraction
    index: int

    @property
    def label(self) -> tuple[int, int]:
        return (self.m, self.n)

    @property
    def name(self) -> str:
        """Bracket notation for the module, e.g. ``[1/16]``."""
        return f"[{fraction_str(self.h)}]"

    def __str__(self) -> str:
        return self.name


def central_charge(params: ModelParams) -> Fraction:
    """Exact central charge c = 1 - 6(p-q)^2/(pq)."""
    p, q = params.p, params.q
    return 1 - Fraction(6 * (p - q) ** 2, p * q)


def conformal_weight(params: ModelParams, m: int, n: int) -> Fraction:
    """Exact weight h_{m,n} = ((np-mq)^2 - (p-q)^2)/(4pq) for 0 < m < p, 0 < n < q."""
    p, q = params.p, params.q
    if not (0 < m < p and 0 < n < q):
        raise ValueError(f"Kac label ({m}, {n}) out of range for (p, q) = ({p}, {q})")
    return Fraction((n * p - m * q) ** 2 - (p - q) ** 2, 4 * p * q)


@lru_cache(maxsize=None)
def sectors(params: ModelParams) -> tuple[Sector, ...]:
    """All N = (p-1)(q-1)/2 sectors, sorted lexicographically by canonical label."""
    p, q = params.p, params.q
    labels = [
        (m, n)
        for m in range(1, p)
        for n in range(1, q)
        if (m, n) < (p - m, q - n)
    ]
    labels.sort()
    return tuple(
        Sector(m, n, conformal_weight(params, m, n), i)
        for i, (m, n) in enumerate(labels)
    )


@lru_cache(maxsize=None)
def _sector_index_by_label(params: ModelParams) -> dict[tuple[int, int], int]:
    """Canonical-label -> sector-index lookup for this model."""
    return {s.label: s.index for s in sectors(params)}


def canonicalize(params: ModelParams, m: int, n: int) -> Sector:
    """The sector containing the (possibly non-canonical) Kac label (m, n)."""
    p, q = params.p, params.q
    if not (0 < m < p and 0 < n < q):
        raise ValueError(f"Kac label ({m}, {n}) out of range for (p, q) = ({p}, {q})")
    canonical = min((m, n), (p - m, q - n))
    return sectors(params)[_sector_index_by_label(params)[canonical]]


def kac_table(params: ModelParams) -> list[list[Fraction]]:
    """The full (p-1) x (q-1) grid of weights; rows indexed by m, columns by n."""
    p, q = params.p, params.q
    return [
        [conformal_weight(params, m, n) for n in range(1, q)]
        for m in range(1, p)
    ]


def is_p_admissible(p: int, m: int, m2: int, m3: int) -> bool:
    """Whether (m, m2, m3) is p-admissible.

    True iff all three lie strictly between 0 and p, their sum is odd and
    less than 2p, and each is strictly less than the sum of the other two.
    Out-of-range inputs are simply not admissible.
    """
    if not (0 < m < p and 0 < m2 < p and 0 < m3 < p):
        return False
    s = m + m2 + m3
    if s >= 2 * p or s % 2 == 0:
        return False
    return m < m2 + m3 and m2 < m + m3 and m3 < m + m2


def admissible_range(p: int, m: int, m2: int) -> list[int]:
    """Closed-form set of all m3 making (m, m2, m3) p-admissible, for m2 <= m.

    Returns {m - m2 + 1 + 2i | 0 <= i <= min(m2, p-m) - 1} in ascending
    order.  Callers must order the arguments so that 0 < m2 <= m < p.
    """
    if not (0 < m2 <= m < p):
        raise ValueError(f"require 0 < m2 <= m < p, got m={m}, m2={m2}, p={p}")
    count = min(m2, p - m)
    start = m - m2 + 1
    return [start + 2 * i for i in range(count)]


LabelPair = tuple[int, int]


def is_pq_admissible(params: ModelParams, t1: LabelPair, t2: LabelPair, t3: LabelPair) -> bool:
    """Whether a triple of full Kac labels is (p,q)-admissible.

    First components must form a p-admissible triple and second components
    a q-admissible one.
    """
    return is_p_admissible(params.p, t1[0], t2[0], t3[0]) and is_p_admissible(
        params.q, t1[1], t2[1], t3[1]
    )


@dataclass(frozen=True, eq=False)
class FusionTensor:
    """The 0/1 structure constants D(S_i, S_j, S_k) of a minimal model.

    coefficients[i, j, k] = 1 iff sector k occurs in the fusion product of
    sectors i and j.  The array is read-only.
    """

    model: ModelParams
    sectors: tuple[Sector, ...]
    coefficients: np.ndarray

    @property
    def n(self) -> int:
        return len(self.sectors)

    def products_of(self, i: int, j: int) -> list[Sector]:
        """The sectors appearing in S_i x S_j, in canonical index order."""
        return [self.sectors[k] for k in np.flatnonzero(self.coefficients[i, j])]


@lru_cache(maxsize=None)
def fusion_tensor(params: ModelParams) -> FusionTensor:
    """Fusion rules of the model: D[i,j,k] = 1 iff the triple is admissible.

    For sectors i, j the canonical labels are used as-is; for the completion
    k both members of its label class are tested.  At most one of the two can
    complete an admissible triple (the two replacements flip the parity of
    the component sums), so the result is well defined and multiplicity-free.
    """
    p, q = params.p, params.q
    secs = sectors(params)
    n = len(secs)
    coeff = np.zeros((n, n, n), dtype=np.uint8)
    for i, si in enumerate(secs):
        for j, sj in enumerate(secs):
            for k, sk in enumerate(secs):
                if is_pq_admissible(params, si.label, sj.label, sk.label) or is_pq_admissible(
                    params, si.label, sj.label, (p - sk.m, q - sk.n)
                ):
                    coeff[i, j, k] = 1
    coeff.setflags(write=False)
    return FusionTensor(model=params, sectors=secs, coefficients=coeff)


def algebra_product(
    coefficients: np.ndarray,
    x: Sequence[Fraction | int],
    y: Sequence[Fraction | int],
) -> list[Fraction]:
    """Bilinear product z_k = sum_{i,j} x_i y_j C[i,j,k] over exact rationals."""
    n = coefficients.shape[0]
    if len(x) != n or len(y) != n:
        raise ValueError(f"vectors must have length {n}, got {len(x)} and {len(y)}")
    z = [Fraction(0)] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            term = Fraction(xi) * Fraction(yj)
            for k in np.flatnonzero(coefficients[i, j]):
                z[k] += term
    return z


@dataclass(frozen=True, eq=False)
class VerlindeAlgebra:
    """The rational algebra on sectors whose product is given by the fusion rules.

    Basis vectors are the sectors in canonical order; the basis element of
    sector (1,1) is the multiplicative identity.
    """

    tensor: FusionTensor

    @property
    def n(self) -> int:
        return self.tensor.n

    @property
    def structure_constants(self) -> np.ndarray:
        return self.tensor.coefficients

    def basis_vector(self, index: int) -> list[Fraction]:
        v = [Fraction(0)] * self.n
        v[index] = Fraction(1)
        return v

    def product(self, x: Sequence[Fraction | int], y: Sequence[Fraction | int]) -> list[Fraction]:
        """Product of two rational coefficient vectors."""
        return algebra_product(self.tensor.coefficients, x, y)


def verlinde_algebra(tensor: FusionTensor) -> VerlindeAlgebra:
    """The Verlinde algebra generated by a fusion tensor."""
    return VerlindeAlgebra(tensor=tensor)


def unitary_discrete_series(p: int) -> tuple[Fraction, list[list[Fraction]]]:
    """Central charge and Kac table of the unitary model with c = 1 - 6/(p(p+1)).

    The unitary discrete series is the q = p + 1 slice of the general
    minimal-model formulas; this simply delegates to them.
    """
    params = ModelParams(p, p + 1)
    return central_charge(params), kac_table(params)
