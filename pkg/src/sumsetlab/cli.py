"""Command-line interface: set arithmetic, structure detection, theorem
verification and sweeps, with machine-readable output.

Exit codes: 0 ok / holds / structured, 1 not structured or counterexample,
2 malformed input, 3 incomplete sweep.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from typing import List, Optional, Tuple

from . import intsets, nonabelian, structure, sweeps, verify
from .errors import SumsetlabError
from .groups import GroupSpec, group_from_json, group_from_string
from .intsets import IntSet
from .nonabelian import GroupSubset

WORKERS_ENV = "SUMSETLAB_WORKERS"


def parse_int_set(text: str) -> IntSet:
    try:
        values = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError as exc:
        raise SumsetlabError(f"bad integer set literal {text!r}") from exc
    return IntSet(values)


def parse_group(text: str) -> GroupSpec:
    text = text.strip()
    if text.startswith("{"):
        return group_from_json(json.loads(text))
    return group_from_string(text)


def parse_group_set(spec: GroupSpec, text: str) -> GroupSubset:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SumsetlabError(f"group set literal must be JSON: {text!r}") from exc
    if not isinstance(data, list):
        raise SumsetlabError("group set literal must be a JSON array")
    return GroupSubset.from_json(spec, data)


def parse_points(inner: GroupSpec, text: str) -> List[Tuple[int, object]]:
    """Accept JSON [[a, x], ...] or the compact form (a,x),(a,x),..."""
    text = text.strip()
    if text.startswith("["):
        data = json.loads(text)
        return [(int(a), inner.element_from_json(x)) for a, x in data]
    pairs = re.findall(r"\(([^)]*)\)", text)
    if not pairs:
        raise SumsetlabError(f"bad points literal {text!r}")
    points = []
    for body in pairs:
        parts = [tok.strip() for tok in body.split(",")]
        if len(parts) != 2:
            raise SumsetlabError(f"bad point ({body})")
        points.append((int(parts[0]), inner.element_from_json(int(parts[1]))))
    return points


def _emit(args, data: dict, pretty_lines: List[str]) -> None:
    if args.format == "json":
        text = json.dumps(data, indent=2)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(list(data.keys()))
        writer.writerow([json.dumps(v) if isinstance(v, (dict, list)) else v for v in data.values()])
        text = buf.getvalue().rstrip("\n")
    else:
        text = "\n".join(pretty_lines)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_sumset(args) -> int:
    if args.group:
        spec = parse_group(args.group)
        s = parse_group_set(spec, args.set)
        t = parse_group_set(spec, args.set2) if args.set2 else s
        prod = nonabelian.product_set(s, t)
        data = {"product_set": prod.to_json(), "size": len(prod)}
        _emit(args, data, [f"product set ({len(prod)} elements): {prod.to_json()}"])
        return 0
    a = parse_int_set(args.set)
    b = parse_int_set(args.set2) if args.set2 else a
    out = intsets.sumset(a, b)
    data = {"sumset": out.to_json(), "size": len(out)}
    lines = [f"sumset ({len(out)} elements): {list(out.elements)}"]
    if args.set2 is None and len(a) >= 2:
        norm, nmap = intsets.normalize(a)
        st = intsets.stats(norm)
        data["stats"] = st.to_json()
        data["normalization"] = nmap.to_json()
        lines.append(
            f"stats (normalized by shift {nmap.shift}, scale {nmap.scale}): "
            f"k={st.k} |A+A|={st.sumset_size} b={st.b} R={st.r} "
            f"doubling={st.doubling.numerator}/{st.doubling.denominator}"
        )
    _emit(args, data, lines)
    return 0


def cmd_detect(args) -> int:
    if args.product:
        inner = parse_group(args.inner)
        points = parse_points(inner, args.points)
        cert = structure.recover_affine_witness(inner, points)
        data = cert.to_json(inner)
        lines = [f"structured: {cert.structured}"]
        if cert.structured:
            lines.append(
                f"witness x={inner.element_to_json(cert.witness_x)} "
                f"y={inner.element_to_json(cert.witness_y)}"
            )
        else:
            lines.append(cert.reason)
        _emit(args, data, lines)
        return 0 if cert.structured else 1
    if args.group:
        spec = parse_group(args.group)
        s = parse_group_set(spec, args.set)
        cert = nonabelian.is_weakly_structured(s)
        if cert is None:
            _emit(args, {"weakly_structured": False}, ["weakly structured: False"])
            return 1
        data = {"weakly_structured": True, **cert.to_json(spec)}
        _emit(args, data, [f"weakly structured: True, witness {data['x']}, {data['y']}"])
        return 0
    a = parse_int_set(args.set)
    cert, nmap = structure.detect_structured_up_to_isomorphism(a)
    data = {**cert.to_json(), "normalization": nmap.to_json()}
    lines = [f"structured: {cert.structured}"]
    if cert.structured:
        lines.append(f"seed {list(cert.seed)}; closure in {cert.trace.steps} step(s)")
        for i, it in enumerate(cert.trace.iterates, start=1):
            lines.append(f"  X^({i}) = {list(it.elements)}")
    _emit(args, data, lines)
    return 0 if cert.structured else 1


def _verify_payload(args) -> dict:
    theorem = verify.canonical_theorem_id(args.theorem)
    if theorem == "eq1":
        return {"A": parse_int_set(args.set).to_json(), "B": parse_int_set(args.set2).to_json()}
    if theorem == "cauchy_davenport":
        return {
            "p": args.p,
            "A": parse_int_set(args.set).to_json(),
            "B": parse_int_set(args.set2).to_json(),
        }
    if theorem in ("thm_A", "lemma_1", "lemma_2", "cor_1"):
        return {"set": parse_int_set(args.set).to_json()}
    if theorem == "cor_2":
        a = parse_int_set(args.set)
        return {"set": a.to_json(), "N": args.nbound if args.nbound else a.max + 1}
    if theorem in ("thm_1", "thm_2"):
        inner = parse_group(args.inner)
        points = parse_points(inner, args.points)
        return {
            "inner": inner.to_json(),
            "points": [[a, inner.element_to_json(x)] for a, x in points],
        }
    if theorem in ("thm_4", "thm_3"):
        spec = parse_group(args.group)
        s = parse_group_set(spec, args.set)
        return {"group": spec.to_json(), "set": s.to_json()}
    raise SumsetlabError(f"no payload builder for {theorem}")


def cmd_verify(args) -> int:
    report = verify.verify(args.theorem, _verify_payload(args))
    verdict = (
        "counterexample"
        if report.counterexample
        else ("holds" if report.hypothesis_met else "hypothesis not met")
    )
    lines = [f"{report.theorem}: {verdict}"]
    if report.details:
        lines.append(f"details: {json.dumps(report.details)}")
    if report.witness:
        lines.append(f"witness: {json.dumps(report.witness)}")
    _emit(args, report.to_json(), lines)
    return 1 if report.counterexample else 0


def _parse_box(text: str) -> Tuple[int, int]:
    parts = text.replace(":", ",").split(",")
    if len(parts) != 2:
        raise SumsetlabError(f"bad box literal {text!r}; expected lo,hi")
    return int(parts[0]), int(parts[1])


def _sweep_spec(args) -> sweeps.SweepSpec:
    theorem = verify.canonical_theorem_id(args.theorem)
    family = args.family or sweeps.DEFAULT_FAMILY[theorem]
    params: dict = {}
    if args.nmax is not None:
        params["nmax"] = args.nmax
    if args.kmin is not None:
        params["kmin"] = args.kmin
    if args.kmax is not None:
        params["kmax"] = args.kmax
    if args.amax is not None:
        params["amax"] = args.amax
    if args.inner:
        params["inner"] = parse_group(args.inner).to_json()
    if args.mode:
        params["mode"] = args.mode
    if args.count is not None:
        params["count"] = args.count
    if args.box:
        params["box"] = _parse_box(args.box)
    if args.p is not None:
        params["p"] = args.p
    if args.raw:
        params["raw"] = True
    if args.mode == "random" and args.seed is None:
        raise SumsetlabError("random mode requires --seed")
    workers = args.workers or int(os.environ.get(WORKERS_ENV, "1"))
    return sweeps.SweepSpec(
        theorem=theorem, family=family, params=params, seed=args.seed, workers=workers
    )


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    progress = None
    if args.output and args.format == "json":
        # Stream partial counts so an interrupted sweep leaves evidence.
        def progress(counts, _spec=spec, _path=args.output):
            partial = {
                "schema_version": sweeps.SCHEMA_VERSION,
                **_spec.to_json(),
                "counts": counts,
                "complete": False,
                "partial": True,
            }
            with open(_path, "w") as fh:
                json.dump(partial, fh, indent=2)

    report = sweeps.run_sweep(spec, limit=args.limit, progress=progress)
    data = report.to_json()
    lines = [
        f"theorem {spec.theorem} family {spec.family}: "
        f"{report.counts['instances']} instances, "
        f"{report.counts['hypothesis_met']} hypothesis met, "
        f"{len(report.counterexamples)} counterexamples"
        + ("" if report.complete else " (INCOMPLETE)"),
    ]
    if report.reading_counts:
        lines.append(f"window readings: {json.dumps(report.reading_counts)}")
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerows(report.csv_rows())
        text = buf.getvalue().rstrip("\n")
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        _emit(args, data, lines)
    if not report.complete:
        return 3
    return 0 if not report.counterexamples else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsetlab",
        description="Sumset arithmetic, structured-set detection and theorem sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")
        p.add_argument("--output", default=None, help="write output to a file")

    p = sub.add_parser("sumset", help="sumset / product set plus stats")
    p.add_argument("--set", required=True)
    p.add_argument("--set2", default=None)
    p.add_argument("--group", default=None)
    p.add_argument("--square", action="store_true", help="square a group subset")
    common(p)
    p.set_defaults(func=cmd_sumset)

    p = sub.add_parser("detect", help="structured / weakly-structured detection")
    p.add_argument("--set", default=None)
    p.add_argument("--group", default=None)
    p.add_argument("--product", action="store_true")
    p.add_argument("--inner", default=None)
    p.add_argument("--points", default=None)
    common(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("verify", help="single-instance theorem check")
    p.add_argument("--theorem", required=True)
    p.add_argument("--set", default=None)
    p.add_argument("--set2", default=None)
    p.add_argument("--group", default=None)
    p.add_argument("--inner", default=None)
    p.add_argument("--points", default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--nbound", type=int, default=None, help="box bound N for cor_2")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="exhaustive / random counterexample sweep")
    p.add_argument("--theorem", required=True)
    p.add_argument("--family", default=None, choices=sorted(sweeps.FAMILIES))
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--kmin", type=int, default=None)
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--amax", type=int, default=None)
    p.add_argument("--inner", default=None)
    p.add_argument("--mode", choices=["auto", "exhaustive", "random"], default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--box", default=None, help="coordinate box lo,hi")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--raw", action="store_true", help="disable gcd-1 canonicalization")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--limit", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SumsetlabError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
