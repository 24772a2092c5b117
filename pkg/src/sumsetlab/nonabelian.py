"""Product sets and weakly structured subsets of (ordered) groups.

A finite subset S of a group is weakly structured when S lies inside a
geometric progression {y * x^t} with commuting base y and ratio x.  The
primary search strategy mirrors the inductive proof of the small-doubling
theorem: in an ordered group take y as the largest element of S and
x = x_{k-1} * x_k^{-1}; a bounded exhaustive search over candidate pairs
serves as a total fallback.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    DegenerateInputError,
    GroupMismatchError,
    InvalidCertificateError,
    UnsupportedOperationError,
)
from .groups import GroupSpec


@dataclass(frozen=True)
class GroupSubset:
    """Finite deduplicated subset of a group, canonically sorted."""

    spec: GroupSpec
    elements: Tuple[object, ...]

    @classmethod
    def of(cls, spec: GroupSpec, elements: Iterable[object]) -> "GroupSubset":
        elems = {spec.validate(g) for g in elements}
        if not elems:
            raise DegenerateInputError("GroupSubset needs at least one element")
        return cls(spec=spec, elements=tuple(sorted(elems, key=spec.sort_key)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.elements

    def to_json(self) -> list:
        return [self.spec.element_to_json(g) for g in self.elements]

    @classmethod
    def from_json(cls, spec: GroupSpec, data) -> "GroupSubset":
        return cls.of(spec, (spec.element_from_json(g) for g in data))


def product_set(s: GroupSubset, t: GroupSubset) -> GroupSubset:
    """{a * b : a in S, b in T}, deduplicated under canonical equality."""
    if s.spec != t.spec:
        raise GroupMismatchError("product set needs both subsets in the same group")
    spec = s.spec
    return GroupSubset.of(spec, (spec.op(a, b) for a in s for b in t))


def square(s: GroupSubset) -> GroupSubset:
    return product_set(s, s)


@dataclass(frozen=True)
class WeakStructureCertificate:
    """Commuting pair (x, y) with every s in S equal to y * x^t.

    `exponents` maps each element to its t; `window` is max |t|, so that
    S is inside {y x^t : -window <= t <= window}.
    """

    x: object
    y: object
    exponents: Tuple[Tuple[object, int], ...]

    @property
    def exponent_values(self) -> List[int]:
        return [t for _, t in self.exponents]

    @property
    def span(self) -> int:
        ts = self.exponent_values
        return max(ts) - min(ts)

    @property
    def window(self) -> int:
        return max(1, max(abs(t) for t in self.exponent_values))

    def recheck(self, s: GroupSubset) -> None:
        """Independent validation: commutation plus exact reproduction."""
        spec = s.spec
        if not spec.commutes(self.x, self.y):
            raise InvalidCertificateError("witness pair does not commute")
        mapped = set()
        for g, t in self.exponents:
            if spec.op(self.y, spec.power(self.x, t)) != g:
                raise InvalidCertificateError(f"element {g!r} is not y*x^{t}")
            mapped.add(g)
        if mapped != set(s.elements):
            raise InvalidCertificateError("exponent map does not cover S exactly")

    def to_json(self, spec: GroupSpec) -> dict:
        return {
            "x": spec.element_to_json(self.x),
            "y": spec.element_to_json(self.y),
            "exponents": [[spec.element_to_json(g), t] for g, t in self.exponents],
            "window": self.window,
        }


def _progression_match(
    spec: GroupSpec, elements: Sequence[object], x, y, bound: int
) -> Optional[Dict[object, int]]:
    """Map each element to t with element = y * x^t, |t| <= bound, or None."""
    if not spec.commutes(x, y):
        return None
    table: Dict[object, int] = {}
    fwd = y
    bwd = y
    xinv = spec.inverse(x)
    table.setdefault(y, 0)
    for t in range(1, bound + 1):
        fwd = spec.op(fwd, x)
        table.setdefault(fwd, t)
        bwd = spec.op(bwd, xinv)
        table.setdefault(bwd, -t)
    out = {}
    for g in elements:
        if g not in table:
            return None
        out[g] = table[g]
    return out


def _certificate_from_match(s: GroupSubset, x, y, match: Dict[object, int]) -> WeakStructureCertificate:
    return WeakStructureCertificate(
        x=x, y=y, exponents=tuple((g, match[g]) for g in s.elements)
    )


def weak_structure_certificate(
    s: GroupSubset, bound: Optional[int] = None, all_candidates: bool = False
):
    """Search for a weak-structure witness.

    Primary strategy (ordered groups, from the inductive proof): y = max S,
    x = (second largest) * (max)^{-1}.  Fallback: every pair with
    x in S*S^{-1} and y in S, exponents bounded by |S^2|.  With
    `all_candidates` a list of every certificate found is returned so the
    caller can pick e.g. the tightest exponent window.
    """
    if len(s) < 1:
        raise DegenerateInputError("weak structure detection needs a nonempty set")
    spec = s.spec
    if bound is None:
        bound = max(len(square(s)), 2 * len(s))
    found: List[WeakStructureCertificate] = []

    candidates: List[Tuple[object, object]] = []
    if spec.ordered and len(s) >= 2:
        y = s.elements[-1]
        x = spec.op(s.elements[-2], spec.inverse(s.elements[-1]))
        candidates.append((x, y))
    seen = set(candidates)
    for a, b in itertools.product(s.elements, repeat=2):
        x = spec.op(a, spec.inverse(b))
        for y in s.elements:
            if (x, y) not in seen:
                seen.add((x, y))
                candidates.append((x, y))

    for x, y in candidates:
        match = _progression_match(spec, s.elements, x, y, bound)
        if match is not None:
            cert = _certificate_from_match(s, x, y, match)
            if not all_candidates:
                return cert
            found.append(cert)
    if all_candidates:
        return found
    return None


def is_weakly_structured(s: GroupSubset) -> Optional[WeakStructureCertificate]:
    cert = weak_structure_certificate(s)
    if cert is not None:
        cert.recheck(s)
    return cert


def tightest_certificate(s: GroupSubset) -> Optional[WeakStructureCertificate]:
    """The certificate with minimal exponent span among all candidates."""
    certs = weak_structure_certificate(s, all_candidates=True)
    if not certs:
        return None
    best = min(certs, key=lambda c: (c.span, c.window))
    best.recheck(s)
    return best


def subgroup_conclusions(s: GroupSubset, cert: WeakStructureCertificate) -> dict:
    """Check the abelian 2-generator conclusion from a weak-structure witness.

    Every s = y * x^t lies in <x, y>, which is abelian since x and y
    commute; so <S> is abelian and generated by the recorded pair.
    """
    cert.recheck(s)
    spec = s.spec
    generators = [cert.y] if cert.x == spec.identity() else [cert.x, cert.y]
    return {
        "abelian": True,
        "generators": [spec.element_to_json(g) for g in generators],
        "generator_count": len(generators),
    }


def ordered_product_lower_bound_holds(s: GroupSubset, t: GroupSubset) -> bool:
    """|ST| >= |S| + |T| - 1, valid in any ordered group."""
    if not s.spec.ordered:
        raise UnsupportedOperationError("lower bound check needs an ordered group")
    return len(product_set(s, t)) >= len(s) + len(t) - 1
