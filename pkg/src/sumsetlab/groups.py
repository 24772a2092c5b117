"""Concrete groups used by the theorem checkers.

Cyclic groups and direct sums of cyclics (finite abelian), the integer
lattice Z^d and the discrete Heisenberg group, the latter two carrying the
lexicographic order, which is bi-invariant in both cases.  Elements are
plain canonical coordinates (ints or tuples of ints); every operation
validates its operands against the spec, so using an element with the
wrong group fails with GroupMismatchError instead of silently coercing.
"""

from __future__ import annotations

import abc
import itertools
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import (
    GroupMismatchError,
    MalformedInputError,
    UnsupportedOperationError,
)


class GroupSpec(abc.ABC):
    """A group with identity/op/inverse and an optional bi-invariant order."""

    kind: str
    abelian: bool
    ordered: bool

    @abc.abstractmethod
    def identity(self): ...

    @abc.abstractmethod
    def op(self, g, h): ...

    @abc.abstractmethod
    def inverse(self, g): ...

    @abc.abstractmethod
    def validate(self, g):
        """Return g if it is a canonical element of this group, else raise."""

    def power(self, g, n: int):
        """n-fold product of g (n-fold sum when written additively)."""
        self.validate(g)
        if n < 0:
            return self.power(self.inverse(g), -n)
        acc = self.identity()
        base = g
        while n:
            if n & 1:
                acc = self.op(acc, base)
            n >>= 1
            if n:
                base = self.op(base, base)
        return acc

    def commutes(self, g, h) -> bool:
        return self.op(g, h) == self.op(h, g)

    def less(self, g, h) -> bool:
        if not self.ordered:
            raise UnsupportedOperationError(f"{self.kind} group carries no order")
        self.validate(g)
        self.validate(h)
        return g < h

    def sort_key(self, g):
        """Canonical sorting key; coincides with the group order when ordered."""
        return g

    def order(self) -> Optional[int]:
        """Number of elements, None when infinite."""
        return None

    def elements(self) -> Iterator:
        raise UnsupportedOperationError(f"{self.kind} group is not enumerable")

    @abc.abstractmethod
    def to_json(self) -> dict: ...

    def element_to_json(self, g):
        self.validate(g)
        return list(g) if isinstance(g, tuple) else g

    @abc.abstractmethod
    def element_from_json(self, data): ...

    def __eq__(self, other):
        return isinstance(other, GroupSpec) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self.to_json()))

    def __repr__(self):
        return f"{type(self).__name__}({self.to_json()})"


class CyclicGroup(GroupSpec):
    """Z/nZ, written additively; elements are residues 0..n-1."""

    kind = "cyclic"
    abelian = True
    ordered = False

    def __init__(self, n: int):
        if n < 1:
            raise MalformedInputError("cyclic group needs n >= 1")
        self.n = n

    def identity(self):
        return 0

    def op(self, g, h):
        return (self.validate(g) + self.validate(h)) % self.n

    def inverse(self, g):
        return (-self.validate(g)) % self.n

    def validate(self, g):
        if not isinstance(g, int) or isinstance(g, bool) or not 0 <= g < self.n:
            raise GroupMismatchError(f"{g!r} is not a residue mod {self.n}")
        return g

    def order(self):
        return self.n

    def elements(self):
        return iter(range(self.n))

    def to_json(self):
        return {"kind": "cyclic", "n": self.n}

    def element_from_json(self, data):
        return self.validate(data)


class DirectSumGroup(GroupSpec):
    """Direct sum of cyclic groups; elements are tuples of residues."""

    kind = "direct_sum"
    abelian = True
    ordered = False

    def __init__(self, moduli: Sequence[int]):
        if not moduli or any(m < 1 for m in moduli):
            raise MalformedInputError("direct sum needs moduli >= 1")
        self.moduli = tuple(moduli)

    def identity(self):
        return (0,) * len(self.moduli)

    def op(self, g, h):
        self.validate(g)
        self.validate(h)
        return tuple((a + b) % m for a, b, m in zip(g, h, self.moduli))

    def inverse(self, g):
        self.validate(g)
        return tuple((-a) % m for a, m in zip(g, self.moduli))

    def validate(self, g):
        if (
            not isinstance(g, tuple)
            or len(g) != len(self.moduli)
            or any(not isinstance(a, int) or not 0 <= a < m for a, m in zip(g, self.moduli))
        ):
            raise GroupMismatchError(f"{g!r} is not an element of {self.to_json()}")
        return g

    def order(self):
        o = 1
        for m in self.moduli:
            o *= m
        return o

    def elements(self):
        return itertools.product(*(range(m) for m in self.moduli))

    def to_json(self):
        return {"kind": "direct_sum", "moduli": list(self.moduli)}

    def element_from_json(self, data):
        return self.validate(tuple(data))


class LatticeGroup(GroupSpec):
    """Z^d under addition with the lexicographic (bi-invariant) order."""

    kind = "lattice"
    abelian = True
    ordered = True

    def __init__(self, d: int):
        if d < 1:
            raise MalformedInputError("lattice needs dimension >= 1")
        self.d = d

    def identity(self):
        return (0,) * self.d

    def op(self, g, h):
        self.validate(g)
        self.validate(h)
        return tuple(a + b for a, b in zip(g, h))

    def inverse(self, g):
        self.validate(g)
        return tuple(-a for a in g)

    def validate(self, g):
        if not isinstance(g, tuple) or len(g) != self.d or any(not isinstance(a, int) for a in g):
            raise GroupMismatchError(f"{g!r} is not a Z^{self.d} element")
        return g

    def to_json(self):
        return {"kind": "lattice", "d": self.d}

    def element_from_json(self, data):
        return self.validate(tuple(data))


class HeisenbergGroup(GroupSpec):
    """Discrete Heisenberg group on integer triples.

    Multiplication (a,b,c)(p,q,r) = (a+p, b+q, c+r+a*q); torsion-free and
    non-abelian.  The lexicographic order on (a,b,c) is bi-invariant: left
    multiplication perturbs c by a*q with (a,b) shifted uniformly, and the
    third coordinate is only consulted when the first two tie, in which
    case the perturbation is identical on both sides of the comparison.
    """

    kind = "heisenberg"
    abelian = False
    ordered = True

    def identity(self):
        return (0, 0, 0)

    def op(self, g, h):
        self.validate(g)
        self.validate(h)
        a, b, c = g
        p, q, r = h
        return (a + p, b + q, c + r + a * q)

    def inverse(self, g):
        a, b, c = self.validate(g)
        return (-a, -b, a * b - c)

    def validate(self, g):
        if not isinstance(g, tuple) or len(g) != 3 or any(not isinstance(a, int) for a in g):
            raise GroupMismatchError(f"{g!r} is not a Heisenberg triple")
        return g

    def to_json(self):
        return {"kind": "heisenberg"}

    def element_from_json(self, data):
        return self.validate(tuple(data))


def group_from_json(data) -> GroupSpec:
    if isinstance(data, str):
        return group_from_string(data)
    if not isinstance(data, dict) or "kind" not in data:
        raise MalformedInputError("group spec must be a JSON object with a 'kind'")
    kind = data["kind"]
    if kind == "cyclic":
        return CyclicGroup(int(data["n"]))
    if kind == "direct_sum":
        return DirectSumGroup([int(m) for m in data["moduli"]])
    if kind == "lattice":
        return LatticeGroup(int(data["d"]))
    if kind == "heisenberg":
        return HeisenbergGroup()
    raise MalformedInputError(f"unknown group kind {kind!r}")


def group_from_string(text: str) -> GroupSpec:
    """Parse compact literals like 'cyclic:5', 'lattice:2', 'heisenberg'."""
    name, _, arg = text.partition(":")
    name = name.strip()
    if name == "cyclic":
        return CyclicGroup(int(arg))
    if name == "lattice":
        return LatticeGroup(int(arg))
    if name == "heisenberg":
        return HeisenbergGroup()
    if name == "direct_sum":
        return DirectSumGroup([int(m) for m in arg.split(",")])
    raise MalformedInputError(f"unknown group literal {text!r}")


# --- Z x G product points -------------------------------------------------
#
# Points of Z x G are plain (a, x) pairs with x an element of the inner
# group.  Addition is componentwise and only defined for abelian G; the
# non-abelian theory goes through the ordered-group machinery instead.


def product_point_add(inner: GroupSpec, p: Tuple[int, object], q: Tuple[int, object]):
    if not inner.abelian:
        raise UnsupportedOperationError("componentwise sum needs an abelian inner group")
    return (p[0] + q[0], inner.op(p[1], q[1]))


def product_sumset(inner: GroupSpec, points: Sequence[Tuple[int, object]]) -> set:
    """The sumset {p + q : p, q in points} of a finite subset of Z x G."""
    if not inner.abelian:
        raise UnsupportedOperationError("componentwise sum needs an abelian inner group")
    out = set()
    for a, x in points:
        for b, y in points:
            out.add((a + b, inner.op(x, y)))
    return out


def points_to_json(inner: GroupSpec, points: Sequence[Tuple[int, object]]) -> List[list]:
    return [[a, inner.element_to_json(x)] for a, x in points]


def points_from_json(inner: GroupSpec, data) -> List[Tuple[int, object]]:
    return [(int(a), inner.element_from_json(x)) for a, x in data]
