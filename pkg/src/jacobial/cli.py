"""Command line interface: ``jacobial <subcommand>``.

Curve specs are YAML or JSON files, or the shorthand ``gallery:NAME`` /
``gallery:NAME:N``. Polarizations and multidegrees are comma separated;
rationals are written ``p/q``. Use ``--q=-1/2,1/2`` when the first entry
is negative.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 parse
error, 3 validation error, 4 resource cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import yaml

from . import __version__
from .arrangements import (
    arrangement_to_svg,
    chamber_of,
    count_polygons,
    enumerate_faces,
    is_simple,
    orbit_poset,
    polarization_chambers,
    polygon_histogram,
    poset_isomorphic,
    poset_to_dot,
    poset_to_text,
    signature_items,
    toric_arrangement,
)
from .curves import (
    CurveModel,
    DualGraph,
    arithmetic_genus,
    build_curve,
    gallery,
    separating_blocks,
)
from .errors import JacobialError, MalformedSpec
from .lattice import complexity, degree_class_group
from .showcase import (
    dollar_rows,
    first_dollar_pair,
    kodaira_rows,
    pairwise_non_isomorphic,
)
from .stability import (
    Polarization,
    Stratum,
    abel_polarization,
    check_line_bundle,
    format_rational,
    is_general,
    is_nondegenerate,
    make_polarization,
    stable_multidegrees,
    stratum_in_B,
)


@dataclass
class RunReport:
    """Everything a subcommand produced.

    Attributes:
        command: The argument vector that was run.
        input_digest: SHA-256 of the canonical curve and parameters.
        results: Ordered entries ``{name, operation, value}``.
        timings: Wall-clock seconds per phase; excluded from the digest.
        version: Package version.
        ok: Whether the verdict was positive.
    """

    command: list[str]
    input_digest: str
    results: list[dict[str, Any]] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    version: str = __version__
    ok: bool = True

    def add(self, name: str, operation: str, value: Any) -> None:
        self.results.append({"name": name, "operation": operation, "value": value})

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "results": self.results,
            "timings": self.timings,
            "version": self.version,
            "ok": self.ok,
        }

    def to_text(self) -> str:
        lines = [f"jacobial {self.version}: {' '.join(self.command)}"]
        lines.append(f"input digest: {self.input_digest}")
        for r in self.results:
            lines.append(f"{r['name']}: {_text_value(r['value'])}  [{r['operation']}]")
        return "\n".join(lines) + "\n"


def _text_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    if v is None:
        return "none"
    return str(v)


def digest(payload: Any) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


# ---------------------------------------------------------------------------
# Parsing


def load_curve(source: str) -> tuple[CurveModel, dict[str, Any]]:
    """Read a curve from a spec file or the ``gallery:NAME[:N]`` shorthand."""
    if source.startswith("gallery:"):
        parts = source.split(":")
        if len(parts) not in (2, 3):
            raise MalformedSpec(f"bad gallery shorthand {source!r}")
        n = None
        if len(parts) == 3:
            try:
                n = int(parts[2])
            except ValueError:
                raise MalformedSpec(f"bad gallery parameter {parts[2]!r}") from None
        spec: dict[str, Any] = {"gallery": parts[1]}
        if n is not None:
            spec["n"] = n
        return build_curve(spec), spec
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MalformedSpec(f"cannot read {source}: {exc}") from None
    try:
        spec = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise MalformedSpec(f"cannot parse {source}: {exc}") from None
    return build_curve(spec), spec


def parse_vector(text: str) -> list[str]:
    items = [t.strip() for t in text.split(",")]
    if not text.strip() or any(not t for t in items):
        raise MalformedSpec(f"bad vector {text!r}")
    return items


def parse_multidegree(text: str) -> tuple[int, ...]:
    out = []
    for t in parse_vector(text):
        try:
            out.append(int(t))
        except ValueError:
            raise MalformedSpec(f"multidegree entries must be integers: {t!r}") from None
    return tuple(out)


def parse_polarization(text: str) -> Polarization:
    return make_polarization(parse_vector(text))


def parse_stratum(text: str) -> Stratum:
    """``"e1,e2;d1,d2,..."``: edge indices, a semicolon, then the multidegree."""
    if ";" not in text:
        raise MalformedSpec("a stratum is written 'edges;multidegree'")
    left, right = text.split(";", 1)
    edges = parse_multidegree(left) if left.strip() else ()
    return Stratum(edges, parse_multidegree(right))


def _curve_payload(X: CurveModel) -> dict[str, Any]:
    return X.to_dict()  # type: ignore[attr-defined]


def _subcurve_names(X: CurveModel, members: Sequence[int]) -> list[str]:
    return [X.names[i] for i in members]


# ---------------------------------------------------------------------------
# Subcommands


def cmd_curve_info(args: argparse.Namespace, argv: list[str]) -> RunReport:
    X, _ = load_curve(args.spec)
    report = RunReport(argv, digest({"cmd": "curve-info", "curve": _curve_payload(X)}))
    t0 = time.perf_counter()
    report.add("kind", "curves.build_curve", type(X).__name__)
    report.add("components", "curves.gamma", X.gamma)
    report.add("arithmetic_genus", "curves.arithmetic_genus", arithmetic_genus(X))
    report.add("complexity", "lattice.complexity", complexity(X))
    group = degree_class_group(X)
    report.add("degree_class_group", "lattice.degree_class_group", list(group.invariant_factors))
    report.add("degree_class_group_order", "lattice.degree_class_group", group.order)
    if isinstance(X, DualGraph):
        dec = separating_blocks(X)
        report.add(
            "bridges",
            "curves.separating_blocks",
            [list(X.edge_names(e)) for e in dec.bridges],
        )
        report.add(
            "blocks", "curves.separating_blocks", [list(b.names) for b in dec.blocks]
        )
    report.timings["total"] = time.perf_counter() - t0
    return report


def cmd_check(args: argparse.Namespace, argv: list[str]) -> RunReport:
    X, _ = load_curve(args.spec)
    q = parse_polarization(args.q)
    params: dict[str, Any] = {"q": q.as_strings()}
    if args.multidegree:
        params["d"] = list(parse_multidegree(args.multidegree))
    if args.stratum:
        s = parse_stratum(args.stratum)
        params["stratum"] = [list(s.S), list(s.multidegree)]
    report = RunReport(argv, digest({"cmd": "check", "curve": _curve_payload(X), **params}))
    t0 = time.perf_counter()
    cert = is_general(X, q)
    report.add("general", "stability.is_general", cert.value)
    if cert.witness is not None:
        report.add("witness", "stability.is_general", _subcurve_names(X, cert.witness.members))
    report.ok = cert.value
    nd = is_nondegenerate(X, q)
    report.add("nondegenerate", "stability.is_nondegenerate", nd.value)
    if args.multidegree:
        d = parse_multidegree(args.multidegree)
        rep = check_line_bundle(X, q, d)
        report.add("verdict", "stability.check_line_bundle", rep.verdict)
        report.add(
            "witnesses",
            "stability.check_line_bundle",
            [
                {
                    "subcurve": _subcurve_names(X, w.subcurve.members),
                    "chi": w.chi,
                    "q": format_rational(w.q),
                }
                for w in rep.witnesses
            ],
        )
        report.ok = rep.stable
    if args.stratum:
        if not isinstance(X, DualGraph):
            raise MalformedSpec("strata need a dual graph")
        inside = stratum_in_B(X, q, parse_stratum(args.stratum))
        report.add("in_stability_set", "stability.stratum_in_B", inside)
        report.ok = inside
    report.timings["total"] = time.perf_counter() - t0
    return report


def _abel_value(value: object) -> Any:
    if value is None:
        return None
    if isinstance(value, tuple) and value and isinstance(value[0], tuple):
        return [list(v) for v in value]
    return list(value)  # type: ignore[call-overload]


def cmd_chambers(args: argparse.Namespace, argv: list[str]) -> RunReport:
    X, _ = load_curve(args.spec)
    params = {"mode": args.mode, "degree": args.degree, "abel": not args.no_abel}
    report = RunReport(argv, digest({"cmd": "chambers", "curve": _curve_payload(X), **params}))
    t0 = time.perf_counter()
    chambers = polarization_chambers(X, args.mode, args.degree, abel=not args.no_abel)
    report.timings["enumerate"] = time.perf_counter() - t0
    report.add("chamber_count", "arrangements.polarization_chambers", len(chambers))
    rows = []
    for c in chambers:
        row: dict[str, Any] = {
            "representative": c.representative.as_strings(),
            "signature": {
                ",".join(_subcurve_names(X, Y.members)): v for Y, v in signature_items(X, c.signature)
            },
        }
        if not args.no_abel:
            row["admits_abel"] = bool(c.admits_abel)
            row["abel_multidegree"] = _abel_value(c.abel)
        rows.append(row)
    report.add("chambers", "arrangements.polarization_chambers", rows)
    if not args.no_abel:
        report.add(
            "admitting_abel",
            "stability.admits_abel_map",
            sum(1 for c in chambers if c.admits_abel),
        )
    return report


def cmd_toric(args: argparse.Namespace, argv: list[str]) -> RunReport:
    X, _ = load_curve(args.spec)
    if not isinstance(X, DualGraph):
        raise MalformedSpec("toric arrangements need a dual graph")
    q = parse_polarization(args.q)
    params: dict[str, Any] = {"q": q.as_strings(), "auto": args.auto_normalize}
    q2 = parse_polarization(args.compare) if args.compare else None
    if q2 is not None:
        params["compare"] = q2.as_strings()
    report = RunReport(argv, digest({"cmd": "toric", "curve": _curve_payload(X), **params}))
    t0 = time.perf_counter()
    A = toric_arrangement(X, q, args.auto_normalize)
    P = enumerate_faces(A)
    report.timings["faces"] = time.perf_counter() - t0
    report.add("rank", "arrangements.toric_arrangement", A.rank)
    report.add("polarization", "arrangements.toric_arrangement", A.polarization.as_strings())  # type: ignore[union-attr]
    report.add("psi", "arrangements.toric_arrangement", [format_rational(v) for v in A.psi or ()])
    report.add("simple", "arrangements.is_simple", is_simple(A))
    report.add("faces_by_dimension", "arrangements.enumerate_faces", P.counts_by_dim())
    if args.triangles or q2 is not None:
        if A.rank == 2:
            report.add("triangles", "arrangements.count_polygons", count_polygons(P, 3))
            report.add(
                "polygons",
                "arrangements.count_polygons",
                {str(k): v for k, v in polygon_histogram(P).items()},
            )
    if q2 is not None:
        A2 = toric_arrangement(X, q2, args.auto_normalize)
        P2 = enumerate_faces(A2)
        report.add("compare_faces_by_dimension", "arrangements.enumerate_faces", P2.counts_by_dim())
        if A2.rank == 2:
            report.add("compare_triangles", "arrangements.count_polygons", count_polygons(P2, 3))
        report.add("poset_isomorphic", "arrangements.poset_isomorphic", poset_isomorphic(P, P2))
    if args.svg:
        Path(args.svg).write_text(arrangement_to_svg(A))
    if args.dot:
        Path(args.dot).write_text(poset_to_dot(P))
    if args.text:
        Path(args.text).write_text(poset_to_text(P))
    report.timings["total"] = time.perf_counter() - t0
    return report


def _reproduce_non_iso(report: RunReport) -> bool:
    G = gallery("blownup_dollar", 1)
    left, right = first_dollar_pair()
    P1 = orbit_poset(G, left).poset
    P2 = orbit_poset(G, right).poset
    t1, t2 = count_polygons(P1, 3), count_polygons(P2, 3)
    iso = poset_isomorphic(P1, P2)
    report.add("X1_triangles", "arrangements.count_polygons", [t1, t2])
    report.add("X1_poset_isomorphic", "arrangements.poset_isomorphic", iso)
    ok = (t1, t2) == (2, 4) and not iso
    for n in (2, 3, 4):
        rows = dollar_rows(n)
        report.add(
            f"X{n}_triangles",
            "arrangements.count_polygons",
            [
                {"i": i, "sign": "+" if s > 0 else "-", "triangles": t, "expected": e}
                for i, s, t, e, _ in rows
            ],
        )
        distinct = pairwise_non_isomorphic([r[4] for r in rows])
        report.add(f"X{n}_pairwise_non_isomorphic", "arrangements.poset_isomorphic", distinct)
        ok = ok and distinct and all(t == e for _, _, t, e, _ in rows)
    return ok


def _reproduce_kodaira(report: RunReport) -> bool:
    rows = kodaira_rows()
    report.add("kodaira_chambers", "arrangements.polarization_chambers", rows)
    return all(r["chambers"] == r["expected"] for r in rows)


def _reproduce_component_counts(report: RunReport) -> bool:
    curves = [("kodaira_I", None), ("kodaira_II", None), ("kodaira_III", None), ("kodaira_IV", None)]
    curves += [("kodaira_In", n) for n in (2, 3, 4, 5)]
    curves += [("theta", None)] + [("blownup_dollar", n) for n in (1, 2, 3)]
    rows = []
    ok = True
    for name, n in curves:
        X = gallery(name, n)
        q = abel_polarization(X, [0] * X.gamma).general
        stable = len(stable_multidegrees(X, q))
        c = complexity(X)
        rows.append(
            {
                "curve": name if n is None else f"{name}({n})",
                "q": q.as_strings(),
                "complexity": c,
                "stable_multidegrees": stable,
                "chamber": list(chamber_of(X, q)),
            }
        )
        ok = ok and stable == c
    report.add("component_counts", "stability.stable_multidegrees", rows)
    return ok


REPRODUCE = {
    "example-non-iso": _reproduce_non_iso,
    "kodaira": _reproduce_kodaira,
    "component-counts": _reproduce_component_counts,
}


def cmd_reproduce(args: argparse.Namespace, argv: list[str]) -> RunReport:
    report = RunReport(argv, digest({"cmd": "reproduce", "target": args.target}))
    t0 = time.perf_counter()
    report.ok = REPRODUCE[args.target](report)
    report.add("all_match", "cli.reproduce", report.ok)
    report.timings["total"] = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacobial",
        description="Combinatorics of fine compactified Jacobians of nodal curves.",
    )
    parser.add_argument("--version", action="version", version=f"jacobial {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--json", action="store_true", help="emit the report as JSON")
        return p

    p = with_common(sub.add_parser("curve-info", help="genus, complexity, degree class group"))
    p.add_argument("spec", help="spec file or gallery:NAME[:N]")
    p.set_defaults(func=cmd_curve_info)

    p = with_common(sub.add_parser("check", help="generality and stability checks"))
    p.add_argument("spec")
    p.add_argument("--q", required=True, help="polarization, e.g. 1/3,1/3,-2/3")
    group = p.add_mutually_exclusive_group()
    group.add_argument("-d", "--multidegree", help="line bundle multidegree")
    group.add_argument("--stratum", help="stratum as 'edges;multidegree'")
    p.set_defaults(func=cmd_check)

    p = with_common(sub.add_parser("chambers", help="chambers up to translation"))
    p.add_argument("spec")
    p.add_argument("--mode", choices=["unit_cube", "last_component"], default="unit_cube")
    p.add_argument("--degree", type=int, default=0, help="total for last_component mode")
    p.add_argument("--no-abel", action="store_true", help="skip Abel map admission")
    p.set_defaults(func=cmd_chambers)

    p = with_common(sub.add_parser("toric", help="toric arrangement and its faces"))
    p.add_argument("spec")
    p.add_argument("--q", required=True)
    p.add_argument("--compare", help="second polarization to compare posets with")
    p.add_argument("--auto-normalize", action="store_true")
    p.add_argument("--triangles", action="store_true")
    p.add_argument("--svg", help="write a rank-2 drawing here")
    p.add_argument("--dot", help="write the Hasse diagram here")
    p.add_argument("--text", help="write the face poset as text here")
    p.set_defaults(func=cmd_toric)

    p = with_common(sub.add_parser("reproduce", help="rerun a table of worked examples"))
    p.add_argument("target", choices=sorted(REPRODUCE))
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args_list = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(args_list)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args, ["jacobial"] + args_list)
    except JacobialError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.to_text(), end="")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
