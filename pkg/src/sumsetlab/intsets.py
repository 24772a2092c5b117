"""Exact finite-set arithmetic over the integers.

Sumsets, difference sets, normalization to the min-0 / gcd-1 convention,
minimal arithmetic-progression containment and the scalar quantities
(k, b, R, doubling constant) attached to |A+A|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Tuple

from .errors import (
    DegenerateInputError,
    MalformedInputError,
    NotNormalizedError,
    WordSizeError,
)

# Checked 64-bit arithmetic: sweeps stay far below this, but overflow must
# fail loudly instead of producing a wrong sumset.
WORD_MIN = -(2**63)
WORD_MAX = 2**63 - 1


def _check_word(value: int) -> int:
    if value < WORD_MIN or value > WORD_MAX:
        raise WordSizeError(f"value {value} exceeds the 64-bit word range")
    return value


class IntSet:
    """Immutable finite set of integers, stored strictly increasing."""

    __slots__ = ("elements", "_members")

    elements: Tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        elems = tuple(sorted(set(values)))
        if not elems:
            raise DegenerateInputError("IntSet needs at least one element")
        for v in elems:
            if not isinstance(v, int) or isinstance(v, bool):
                raise MalformedInputError(f"non-integer element {v!r}")
        _check_word(elems[0])
        _check_word(elems[-1])
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_members", frozenset(elems))

    @classmethod
    def _trusted(cls, sorted_elems: Tuple[int, ...]) -> "IntSet":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "elements", sorted_elems)
        object.__setattr__(obj, "_members", frozenset(sorted_elems))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("IntSet is immutable")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, value: int) -> bool:
        return value in self._members

    def __eq__(self, other) -> bool:
        return isinstance(other, IntSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"IntSet({list(self.elements)})"

    def __add__(self, other: "IntSet") -> "IntSet":
        return sumset(self, other)

    def __sub__(self, other: "IntSet") -> "IntSet":
        return difference_set(self, other)

    def __le__(self, other: "IntSet") -> bool:
        return self._members <= other._members

    @property
    def min(self) -> int:
        return self.elements[0]

    @property
    def max(self) -> int:
        return self.elements[-1]

    def members(self) -> frozenset:
        return self._members

    def translate(self, t: int) -> "IntSet":
        _check_word(self.min + t)
        _check_word(self.max + t)
        return IntSet._trusted(tuple(a + t for a in self.elements))

    def to_json(self) -> list:
        return list(self.elements)

    @classmethod
    def from_json(cls, data) -> "IntSet":
        if not isinstance(data, list):
            raise MalformedInputError("integer set must be a JSON array")
        s = cls(data)
        if len(s) != len(data):
            raise MalformedInputError("duplicate elements in serialized set")
        return s


@dataclass(frozen=True)
class APDescription:
    """Arithmetic progression start, start+d, ..., start+(length-1)*d."""

    start: int
    difference: int
    length: int

    def __post_init__(self):
        if self.difference < 1 or self.length < 1:
            raise MalformedInputError("AP needs difference >= 1 and length >= 1")

    def contains(self, a: IntSet) -> bool:
        last = self.start + (self.length - 1) * self.difference
        for v in a:
            if v < self.start or v > last or (v - self.start) % self.difference:
                return False
        return True

    def to_json(self) -> dict:
        return {"start": self.start, "difference": self.difference, "length": self.length}


@dataclass(frozen=True)
class NormalizationMap:
    """Affine map a -> (a - shift) / scale and its inverse."""

    shift: int
    scale: int

    def apply(self, value: int) -> int:
        q, r = divmod(value - self.shift, self.scale)
        if r:
            raise MalformedInputError(f"{value} is not in the image lattice")
        return q

    def unapply(self, value: int) -> int:
        return _check_word(self.shift + value * self.scale)

    def apply_set(self, a: IntSet) -> IntSet:
        return IntSet._trusted(tuple(self.apply(v) for v in a.elements))

    def unapply_set(self, a: IntSet) -> IntSet:
        return IntSet._trusted(tuple(self.unapply(v) for v in a.elements))

    def to_json(self) -> dict:
        return {"shift": self.shift, "scale": self.scale}


@dataclass(frozen=True)
class SumsetStats:
    """k, |A+A|, the excess b with |A+A| = 2k-1+b, R and the doubling constant."""

    k: int
    sumset_size: int
    b: int
    r: int
    doubling: Fraction

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "sumset_size": self.sumset_size,
            "b": self.b,
            "R": self.r,
            "doubling": [self.doubling.numerator, self.doubling.denominator],
        }


def sumset(a: IntSet, b: IntSet) -> IntSet:
    """All pairwise sums {x + y : x in a, y in b}."""
    _check_word(a.min + b.min)
    _check_word(a.max + b.max)
    sums = {x + y for x in a.elements for y in b.elements}
    return IntSet._trusted(tuple(sorted(sums)))


def difference_set(a: IntSet, b: IntSet) -> IntSet:
    """All pairwise differences {x - y : x in a, y in b}."""
    _check_word(a.min - b.max)
    _check_word(a.max - b.min)
    diffs = {x - y for x in a.elements for y in b.elements}
    return IntSet._trusted(tuple(sorted(diffs)))


def gcd_of_nonzero(a: IntSet) -> int:
    """gcd of the nonzero elements; 0 for the singleton {0}."""
    return math.gcd(*a.elements)


def is_normalized(a: IntSet) -> bool:
    """min 0 and gcd of elements 1 (the standing convention for stats/R)."""
    return a.min == 0 and math.gcd(*a.elements) == 1


def normalize(a: IntSet) -> Tuple[IntSet, NormalizationMap]:
    """Translate to min 0 and divide out the gcd of the differences.

    Both steps are Freiman 2-isomorphisms, so all sumset sizes are preserved.
    """
    if len(a) < 2:
        raise DegenerateInputError("cannot normalize a singleton")
    shift = a.min
    scale = math.gcd(*(v - shift for v in a.elements))
    nmap = NormalizationMap(shift, scale)
    return nmap.apply_set(a), nmap


def stats(a: IntSet) -> SumsetStats:
    """Scalar quantities of A+A under the min-0 / gcd-1 convention.

    R = min{a_k - k + 3, k} is only meaningful for normalized sets, so a
    non-normalized input is an error rather than silently renormalized.
    """
    if len(a) < 2:
        raise DegenerateInputError("stats needs at least two elements")
    if not is_normalized(a):
        raise NotNormalizedError("stats requires min 0 and gcd 1; normalize first")
    k = len(a)
    size = len(sumset(a, a))
    b = size - (2 * k - 1)
    r = min(a.max - k + 3, k)
    return SumsetStats(k=k, sumset_size=size, b=b, r=r, doubling=Fraction(size, k))


def minimal_containing_ap(a: IntSet) -> APDescription:
    """The shortest arithmetic progression containing the set.

    Unique for |A| >= 2: any containing AP has a difference dividing every
    pairwise difference of A, and the length is minimized by taking the
    difference as large as possible, i.e. exactly the gcd of the differences.
    """
    if len(a) < 2:
        raise DegenerateInputError("minimal AP undefined for a singleton")
    d = math.gcd(*(v - a.min for v in a.elements))
    return APDescription(start=a.min, difference=d, length=(a.max - a.min) // d + 1)


def is_full_ap(a: IntSet) -> bool:
    return len(a) >= 2 and minimal_containing_ap(a).length == len(a)


def is_ap_pair_with_common_difference(a: IntSet, b: IntSet) -> Tuple[bool, Optional[int]]:
    """Whether both sets are arithmetic progressions with one shared difference.

    This is the equality case of |A+B| >= |A|+|B|-1.
    """
    if len(a) < 2 or len(b) < 2:
        raise DegenerateInputError("AP-pair test needs |A|, |B| >= 2")
    ap_a = minimal_containing_ap(a)
    ap_b = minimal_containing_ap(b)
    if ap_a.length != len(a) or ap_b.length != len(b):
        return False, None
    if ap_a.difference != ap_b.difference:
        return False, None
    return True, ap_a.difference


def check_2_isomorphism(a: IntSet, b: IntSet, phi: Mapping[int, int]) -> bool:
    """Freiman isomorphism of order 2: x+y = z+w iff the images satisfy it.

    Direct quadruple enumeration, O(|A|^4); fine at desk scale.
    """
    if set(phi.keys()) != a.members() or set(phi.values()) != b.members():
        raise MalformedInputError("phi is not a bijection from A onto B")
    if len(set(phi.values())) != len(phi):
        raise MalformedInputError("phi is not injective")
    elems = a.elements
    for x in elems:
        for y in elems:
            for z in elems:
                for w in elems:
                    if (x + y == z + w) != (phi[x] + phi[y] == phi[z] + phi[w]):
                        return False
    return True
