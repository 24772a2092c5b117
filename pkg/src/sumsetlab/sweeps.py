"""Exhaustive and seeded-random sweep engine.

Instance families are finite, reproducible enumerations of serialized
payloads; the engine applies one theorem checker to every instance and
aggregates counts plus a (hopefully empty) counterexample list.  All
randomness flows through one seeded generator during enumeration, so a
sweep is deterministic regardless of the number of worker processes.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .errors import MalformedInputError
from .groups import group_from_json
from .intsets import IntSet, sumset
from .verify import canonical_theorem_id, check_payload

SCHEMA_VERSION = 1

# An instance event is ("instance", payload) for a checkable payload or
# ("vacuous", n) for a block of instances whose hypothesis provably fails
# (used to skip second-coordinate enumeration over hopeless projections).
Event = Tuple[str, object]


@dataclass
class SweepSpec:
    theorem: str
    family: str
    params: Dict[str, object] = field(default_factory=dict)
    seed: Optional[int] = None
    workers: int = 1

    def __post_init__(self):
        self.theorem = canonical_theorem_id(self.theorem)
        if self.family not in FAMILIES:
            raise MalformedInputError(f"unknown sweep family {self.family!r}")

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "family": self.family,
            "params": self.params,
            "seed": self.seed,
        }


@dataclass
class SweepReport:
    spec: SweepSpec
    counts: Dict[str, int]
    counterexamples: List[dict]
    reading_counts: Dict[str, int]
    complete: bool
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.complete and not self.counterexamples

    def to_json(self, include_timing: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            **self.spec.to_json(),
            "counts": self.counts,
            "counterexamples": self.counterexamples,
            "reading_counts": self.reading_counts,
            "complete": self.complete,
        }
        if include_timing:
            out["elapsed"] = self.elapsed
        return out

    def csv_rows(self) -> List[List[object]]:
        header = [
            "theorem",
            "family",
            "seed",
            "instances",
            "hypothesis_met",
            "holds",
            "vacuous",
            "counterexamples",
            "complete",
            "elapsed",
        ]
        row = [
            self.spec.theorem,
            self.spec.family,
            self.spec.seed,
            self.counts["instances"],
            self.counts["hypothesis_met"],
            self.counts["holds"],
            self.counts["vacuous"],
            len(self.counterexamples),
            self.complete,
            f"{self.elapsed:.3f}",
        ]
        return [header, row]


# --- instance families ----------------------------------------------------


def normalized_subsets(nmax: int, kmin: int, kmax: int, gcd_filter: bool = True) -> Iterator[Tuple[int, ...]]:
    """All subsets of [0, nmax] with min 0 (and gcd 1 unless raw mode).

    Canonicalizing to min 0 / gcd 1 enumerates one representative per
    2-isomorphism class, so sumset sizes and structure verdicts transfer.
    """
    for k in range(max(kmin, 1), kmax + 1):
        if k == 1:
            yield (0,)
            continue
        for rest in itertools.combinations(range(1, nmax + 1), k - 1):
            if gcd_filter and math.gcd(*rest) != 1:
                continue
            yield (0,) + rest


def _family_normalized_int_sets(spec: SweepSpec) -> Iterator[Event]:
    p = spec.params
    nmax = int(p.get("nmax", 12))
    kmin = int(p.get("kmin", 3))
    kmax = int(p.get("kmax", 7))
    raw = bool(p.get("raw", False))
    attach_n = spec.theorem == "cor_2"
    for elems in normalized_subsets(nmax, kmin, kmax, gcd_filter=not raw):
        payload: Dict[str, object] = {"set": list(elems)}
        if attach_n:
            # Corollary 2 is checked against the tightest box [0, max(A)].
            payload["N"] = max(elems[-1] + 1, 2)
        yield "instance", payload


def _family_cor2_boxes(spec: SweepSpec) -> Iterator[Event]:
    p = spec.params
    nmax = int(p.get("nmax", 12))
    for n in range(2, nmax + 1):
        for k in range(1, n + 1):
            for elems in itertools.combinations(range(n), k):
                yield "instance", {"set": list(elems), "N": n}


def _family_product_sets(spec: SweepSpec) -> Iterator[Event]:
    p = spec.params
    inner_json = p.get("inner", {"kind": "cyclic", "n": 3})
    inner = group_from_json(inner_json)
    amax = int(p.get("amax", 8))
    kmin = int(p.get("kmin", 3))
    kmax = int(p.get("kmax", 5))
    mode = p.get("mode", "auto")
    count = int(p.get("count", 0))
    limit = int(p.get("exhaustive_limit", 10**6))
    order = inner.order()
    if order is None:
        raise MalformedInputError("product sweeps need a finite inner group")
    elems = list(inner.elements())

    classes = []
    for first in normalized_subsets(amax, kmin, kmax):
        a = IntSet(first)
        k = len(first)
        # |A+A| lower-bounds |𝒜+𝒜| through the first projection, so a
        # class with a large integer sumset cannot meet the hypothesis.
        possible = len(sumset(a, a)) <= 3 * k - 4
        classes.append((first, possible))

    if mode == "random":
        if count <= 0:
            raise MalformedInputError("random mode needs a positive --count")
        rng = random.Random(spec.seed)
        for _ in range(count):
            first, possible = rng.choice(classes)
            coords = tuple(rng.choice(elems) for _ in first)
            if not possible:
                yield "vacuous", 1
                continue
            yield "instance", {
                "inner": inner.to_json(),
                "points": [[a, inner.element_to_json(x)] for a, x in zip(first, coords)],
            }
        return

    for first, possible in classes:
        k = len(first)
        n_coords = order**k
        if mode == "exhaustive" or n_coords <= limit:
            if not possible:
                yield "vacuous", n_coords
                continue
            for coords in itertools.product(elems, repeat=k):
                yield "instance", {
                    "inner": inner.to_json(),
                    "points": [[a, inner.element_to_json(x)] for a, x in zip(first, coords)],
                }
        else:
            if count <= 0:
                raise MalformedInputError("class too large for exhaustion; set --count")
            rng = random.Random((spec.seed, first).__repr__())
            for _ in range(count):
                coords = tuple(rng.choice(elems) for _ in first)
                if not possible:
                    yield "vacuous", 1
                    continue
                yield "instance", {
                    "inner": inner.to_json(),
                    "points": [[a, inner.element_to_json(x)] for a, x in zip(first, coords)],
                }


def _box_elements(lo: int, hi: int) -> List[Tuple[int, int, int]]:
    rng = range(lo, hi + 1)
    return [(a, b, c) for a in rng for b in rng for c in rng]


def _family_heisenberg_subsets(spec: SweepSpec) -> Iterator[Event]:
    p = spec.params
    lo, hi = p.get("box", (-1, 1))
    kmin = int(p.get("kmin", 3))
    kmax = int(p.get("kmax", 3))
    mode = p.get("mode", "exhaustive")
    count = int(p.get("count", 0))
    elems = _box_elements(int(lo), int(hi))
    group_json = {"kind": "heisenberg"}
    if mode == "random":
        if count <= 0:
            raise MalformedInputError("random mode needs a positive --count")
        rng = random.Random(spec.seed)
        sizes = list(range(kmin, kmax + 1))
        for _ in range(count):
            k = rng.choice(sizes)
            subset = rng.sample(elems, k)
            yield "instance", {"group": group_json, "set": [list(g) for g in sorted(subset)]}
        return
    for k in range(kmin, kmax + 1):
        for subset in itertools.combinations(elems, k):
            yield "instance", {"group": group_json, "set": [list(g) for g in subset]}


def _family_cauchy_davenport_pairs(spec: SweepSpec) -> Iterator[Event]:
    p_mod = int(spec.params.get("p", 5))
    residues = list(range(p_mod))
    subsets = []
    for k in range(1, p_mod + 1):
        subsets.extend(itertools.combinations(residues, k))
    for a in subsets:
        for b in subsets:
            yield "instance", {"p": p_mod, "A": list(a), "B": list(b)}


def _family_eq1_pairs(spec: SweepSpec) -> Iterator[Event]:
    p = spec.params
    nmax = int(p.get("nmax", 10))
    kmin = int(p.get("kmin", 2))
    kmax = int(p.get("kmax", nmax + 1))
    sets = [list(e) for e in normalized_subsets(nmax, kmin, kmax)]
    for a in sets:
        for b in sets:
            yield "instance", {"A": a, "B": b}


FAMILIES: Dict[str, Callable[[SweepSpec], Iterator[Event]]] = {
    "normalized_int_sets": _family_normalized_int_sets,
    "cor2_boxes": _family_cor2_boxes,
    "product_sets": _family_product_sets,
    "heisenberg_subsets": _family_heisenberg_subsets,
    "cauchy_davenport_pairs": _family_cauchy_davenport_pairs,
    "eq1_pairs": _family_eq1_pairs,
}

DEFAULT_FAMILY = {
    "eq1": "eq1_pairs",
    "cauchy_davenport": "cauchy_davenport_pairs",
    "thm_A": "normalized_int_sets",
    "lemma_1": "normalized_int_sets",
    "lemma_2": "normalized_int_sets",
    "cor_1": "normalized_int_sets",
    "cor_2": "cor2_boxes",
    "thm_1": "product_sets",
    "thm_2": "product_sets",
    "thm_4": "heisenberg_subsets",
    "thm_3": "heisenberg_subsets",
}


# --- engine ---------------------------------------------------------------


def _check_chunk(args: Tuple[str, List[dict]]) -> Tuple[int, int, int, List[dict], Dict[str, int]]:
    """Check a batch of payloads; returns (n, hyp_met, holds, cxs, readings)."""
    theorem, payloads = args
    hyp_met = holds = 0
    counterexamples: List[dict] = []
    readings: Dict[str, int] = {}
    for payload in payloads:
        hyp, concl, details, _ = check_payload(theorem, payload)
        if hyp:
            hyp_met += 1
            if concl:
                holds += 1
            else:
                counterexamples.append({"payload": payload, "details": details})
            reading = details.get("reading")
            if reading is not None:
                readings[reading] = readings.get(reading, 0) + 1
    return len(payloads), hyp_met, holds, counterexamples, readings


def _chunked(events: Iterator[Event], size: int) -> Iterator[Tuple[List[dict], int]]:
    """Batch instance payloads, carrying the vacuous-bulk count alongside."""
    batch: List[dict] = []
    bulk = 0
    for kind, value in events:
        if kind == "vacuous":
            bulk += int(value)
            continue
        batch.append(value)
        if len(batch) >= size:
            yield batch, bulk
            batch, bulk = [], 0
    if batch or bulk:
        yield batch, bulk


def run_sweep(
    spec: SweepSpec,
    limit: Optional[int] = None,
    progress: Optional[Callable[[Dict[str, int]], None]] = None,
    chunk_size: int = 4096,
) -> SweepReport:
    """Enumerate the family and apply the theorem checker to every instance.

    `limit` caps the number of instances (the report is then flagged
    incomplete); `progress` receives the running counts after each chunk,
    which the CLI uses to stream partial reports to disk.
    """
    start = time.perf_counter()
    events = FAMILIES[spec.family](spec)
    if limit is not None:
        events = _limited(events, limit)

    counts = {"instances": 0, "hypothesis_met": 0, "holds": 0, "vacuous": 0}
    counterexamples: List[dict] = []
    readings: Dict[str, int] = {}

    chunks = _chunked(events, chunk_size)
    if spec.workers > 1:
        results = _parallel_chunks(spec, chunks, chunk_size)
    else:
        results = ((_check_chunk((spec.theorem, batch)), bulk) for batch, bulk in chunks)

    truncated = False
    for (n, hyp, holds, cxs, chunk_readings), bulk in results:
        counts["instances"] += n + bulk
        counts["hypothesis_met"] += hyp
        counts["holds"] += holds
        counts["vacuous"] += (n - hyp) + bulk
        counterexamples.extend(cxs)
        for key, val in chunk_readings.items():
            readings[key] = readings.get(key, 0) + val
        if progress is not None:
            progress(dict(counts))
    if limit is not None and counts["instances"] >= limit:
        truncated = True

    return SweepReport(
        spec=spec,
        counts=counts,
        counterexamples=counterexamples,
        reading_counts=readings,
        complete=not truncated,
        elapsed=time.perf_counter() - start,
    )


def _limited(events: Iterator[Event], limit: int) -> Iterator[Event]:
    seen = 0
    for kind, value in events:
        if seen >= limit:
            return
        yield kind, value
        seen += value if kind == "vacuous" else 1


def _parallel_chunks(spec: SweepSpec, chunks, chunk_size: int):
    """Fan chunk checking out to a process pool, preserving chunk order."""
    import multiprocessing as mp

    pending: List[Tuple[List[dict], int]] = list(chunks)
    with mp.Pool(processes=spec.workers) as pool:
        checked = pool.imap(
            _check_chunk, ((spec.theorem, batch) for batch, _ in pending), chunksize=1
        )
        for result, (_, bulk) in zip(checked, pending):
            yield result, bulk


def write_report_json(report: SweepReport, path: str, include_timing: bool = True) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_json(include_timing=include_timing), fh, indent=2)
        fh.write("\n")
