"""Command-line experiment runner.

Subcommands::

    biholo dist <domain> <p> <q>        distance between two points
    biholo fridman <domain> <point>      Fridman invariant (exact or bracket)
    biholo squeeze <domain> <point>      squeezing function (exact value)
    biholo scale <spec.json>             scaling experiments -> CSV/JSON files
    biholo verify                        closed-form vs oracle suites

Domains are written ``ball2``, ``polydisc3``, ``siegel2``, ``disc``,
``halfplane``, ``punctured``, ``slit``; points are comma-separated complex
literals like ``0.5+0.1i``.  All randomness is seeded (``--seed``), so
identical configurations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from pathlib import Path

from . import invariants, scaling, verify
from .domains import (
    Ball,
    ModelDomain,
    Multitype,
    Polydisc,
    PuncturedDisc,
    Siegel,
    SlitDisc,
    UnsupportedDomainError,
    UpperHalfPlane,
    as_point,
    domain_label,
    format_complex,
    parse_complex_literal,
    parse_polynomial,
)
from .hyperbolic import MetricMode
from .metrics import kobayashi_distance

_DOMAIN_RE = re.compile(r"^(ball|polydisc|siegel)(\d+)$")


class CliError(Exception):
    """User-facing command error; message goes to stderr, exit code 2."""


def parse_domain(spec: str) -> ModelDomain:
    spec = spec.strip().lower()
    if spec == "disc":
        return Ball(1)
    if spec == "halfplane":
        return UpperHalfPlane()
    if spec == "punctured":
        return PuncturedDisc()
    if spec == "slit":
        return SlitDisc()
    m = _DOMAIN_RE.match(spec)
    if m:
        kind, dim = m.group(1), int(m.group(2))
        try:
            if kind == "ball":
                return Ball(dim)
            if kind == "polydisc":
                return Polydisc(dim)
            return Siegel(dim)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    raise CliError(
        f"unknown domain {spec!r}; expected ball<N>, polydisc<N>, siegel<N>, "
        "disc, halfplane, punctured or slit"
    )


def parse_point(text: str):
    try:
        return tuple(parse_complex_literal(tok) for tok in text.split(","))
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _json_safe(value):
    if isinstance(value, complex):
        return format_complex(value)
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, float) and (math.isnan(value) or math.isinf(value)):
        return repr(value)
    return value


def emit_record(record: dict, fmt: str, out: str | None) -> None:
    record = _json_safe(record)
    if fmt == "json":
        text = json.dumps(record, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        keys = sorted(record)
        writer.writerow(keys)
        writer.writerow([record[k] for k in keys])
        text = buf.getvalue()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def write_rows(rows: list[dict], fmt: str, path: Path) -> None:
    rows = [_json_safe(r) for r in rows]
    if fmt == "json":
        path.write_text(json.dumps(rows, sort_keys=True, indent=1) + "\n")
        return
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def _mode(args) -> MetricMode:
    return MetricMode(args.mode)


def cmd_dist(args) -> int:
    domain = parse_domain(args.domain)
    p = parse_point(args.p)
    q = parse_point(args.q)
    try:
        value = kobayashi_distance(domain, p, q, _mode(args), args.deck_k)
    except (ValueError, UnsupportedDomainError) as exc:
        raise CliError(str(exc)) from exc
    emit_record(
        {
            "command": "dist",
            "domain": domain_label(domain),
            "p": p,
            "q": q,
            "mode": args.mode,
            "method": "closed-form",
            "distance": value,
        },
        args.format,
        args.out,
    )
    return 0


def cmd_invariant(args) -> int:
    domain = parse_domain(args.domain)
    point = parse_point(args.point)
    mode = _mode(args)
    record = {
        "command": args.kind,
        "domain": domain_label(domain),
        "point": point,
        "mode": args.mode,
    }
    try:
        point = as_point(point, None)
        if args.kind == "fridman":
            if isinstance(domain, PuncturedDisc):
                est = invariants.fridman_bounds_punctured(point[0], mode)
                record.update(
                    lower=est.lower,
                    upper=est.upper,
                    lower_witness=est.lower_witness,
                    upper_witness=est.upper_witness,
                )
            else:
                record["value"] = invariants.fridman_exact(domain, point, mode)
        else:
            record["value"] = invariants.squeezing_exact(domain, point)
            record["mode"] = "euclidean"  # squeezing is a ratio of euclidean radii
    except UnsupportedDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    emit_record(record, args.format, args.out)
    return 0


def _approach_from_spec(spec: dict, dim: int) -> scaling.BoundaryApproach:
    base = tuple(parse_complex_literal(str(c)) for c in _as_list(spec.get("base_point", "1"), dim))
    normal = tuple(parse_complex_literal(str(c)) for c in _as_list(spec.get("normal", "1"), dim))
    deltas_spec = spec.get("deltas", {"j_start": 1, "j_end": 10})
    if isinstance(deltas_spec, list):
        return scaling.BoundaryApproach(base, normal, tuple(float(d) for d in deltas_spec))
    j0, j1 = int(deltas_spec.get("j_start", 1)), int(deltas_spec.get("j_end", 10))
    ratio = float(deltas_spec.get("ratio", 0.5))
    return scaling.BoundaryApproach.geometric(base, normal, j0, j1, ratio)


def _as_list(value, dim: int) -> list:
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value] * dim if dim > 1 else [value]


def _run_scale_spec(spec: dict, args) -> tuple[dict[str, list[dict]], bool]:
    """Execute one experiment spec; returns (files to write, all passed)."""
    kind = spec.get("kind")
    checks = spec.get("checks", ["hausdorff"])
    outputs: dict[str, list[dict]] = {}
    passed = True
    if kind == "isotropic":
        if spec.get("rho", "disc") != "disc":
            raise CliError("only the unit-disc defining function is built in; rho must be 'disc'")
        approach = _approach_from_spec(spec, 1)
        family = scaling.make_isotropic(scaling.disc_defining(), approach)
    elif kind == "anisotropic":
        mt = Multitype(tuple(spec["multitype"]))
        poly = parse_polynomial(spec["poly"])
        rem_spec = spec.get("remainder")
        rem = rate = None
        gamma = spec.get("gamma")
        if rem_spec:
            if rem_spec.get("type") != "abs_power":
                raise CliError("remainder type must be 'abs_power'")
            rem, rate = scaling.tangential_modulus_remainder(rem_spec["exponents"], mt)
        approach = _approach_from_spec(
            {"base_point": ["0"] * mt.dim, "normal": ["0"] * (mt.dim - 1) + ["1"], **spec},
            mt.dim,
        )
        family = scaling.make_anisotropic(poly, mt, approach, rem, gamma, rate)
        if "invariance" in checks:
            ok = scaling.invariance_check(poly, mt, int(spec.get("trials", 10_000)), args.seed)
            outputs["invariance"] = [{"invariant_under_dilations": ok}]
            passed &= ok
    elif kind == "convergence":
        approach = _approach_from_spec(spec, 1)
        report = scaling.convergence_experiment(PuncturedDisc(), approach, _mode(args))
        outputs["convergence"] = report.to_rows()
        return outputs, report.strictly_decreasing
    else:
        raise CliError(f"unknown experiment kind {kind!r}")

    if "hausdorff" in checks:
        g = spec.get("grid", {"min": -2.0, "max": 2.0, "n": 15})
        lo, hi, n = float(g.get("min", -2)), float(g.get("max", 2)), int(g.get("n", 15))
        planar = scaling.complex_grid(lo, hi, lo, hi, n)
        if scaling.domain_dim(family.limit) == 1:
            grid = planar
        else:
            coarse = scaling.complex_grid(lo, hi, lo, hi, max(3, n // 3))
            grid = [(a, b) for a in coarse for b in coarse]
        report = scaling.hausdorff_check(family, grid, float(spec.get("tol", 1e-2)))
        outputs["hausdorff"] = report.to_rows()
        passed &= report.passed
    if "ball_inclusion" in checks:
        bi = spec.get("ball_inclusion", {})
        report = scaling.ball_inclusion_check(
            family,
            radius=float(bi.get("R", 1.0)),
            eps=float(bi.get("eps", 0.1)),
            samples=int(bi.get("samples", 200)),
            mode=_mode(args),
            seed=args.seed,
        )
        outputs["ball_inclusion"] = report.to_rows()
        passed &= report.passed
    return outputs, passed


def cmd_scale(args) -> int:
    path = Path(args.spec)
    try:
        spec = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read experiment spec {path}: {exc}") from exc
    outputs, passed = _run_scale_spec(spec, args)
    out_dir = Path(args.out) if args.out else path.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = "csv" if args.format == "csv" else "json"
    for name, rows in sorted(outputs.items()):
        write_rows(rows, args.format, out_dir / f"{path.stem}_{name}.{ext}")
    print(f"{'pass' if passed else 'FAIL'}: {', '.join(sorted(outputs))} -> {out_dir}")
    return 0 if passed else 1


def cmd_verify(args) -> int:
    try:
        cfg = verify.RunConfig(
            mode=_mode(args),
            deck_range=args.deck_k,
            theta_grid=args.theta_grid,
            slit_grid=args.slit_grid,
            tol=args.tol,
            samples=args.samples,
            seed=args.seed,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    results = verify.run_all(cfg)
    failed = 0
    for res in results:
        status = "pass" if res.passed else "FAIL"
        extra = f" [{len(res.warnings)} widening warnings]" if res.warnings else ""
        print(f"{status}  {res.name}: {res.checks} checks{extra}")
        for msg in res.failures[:5]:
            print(f"      {msg}")
        failed += not res.passed
    total = sum(r.checks for r in results)
    print(f"{len(results) - failed}/{len(results)} suites passed ({total} checks)")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biholo",
        description="hyperbolic metrics and biholomorphic invariants on model domains",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["poincare", "kobayashi"], default="poincare",
                        help="metric normalization (poincare = twice kobayashi)")
    common.add_argument("--deck-k", type=int, default=100, help="deck enumeration half-width")
    common.add_argument("--theta-grid", type=int, default=1_000_000, help="circle oracle grid size")
    common.add_argument("--slit-grid", type=int, default=100_000, help="slit oracle grid size")
    common.add_argument("--tol", type=float, default=1e-6, help="bisection tolerance")
    common.add_argument("--samples", type=int, default=1024, help="sphere sampling density")
    common.add_argument("--format", choices=["json", "csv"], default="json", help="output format")
    common.add_argument("--seed", type=int, default=0, help="RNG seed")
    common.add_argument("--out", default=None, help="output file (dist/fridman/squeeze) or directory (scale)")

    p_dist = sub.add_parser("dist", parents=[common], help="Kobayashi distance between two points")
    p_dist.add_argument("domain")
    p_dist.add_argument("p")
    p_dist.add_argument("q")
    p_dist.set_defaults(func=cmd_dist)

    for kind, blurb in (("fridman", "Fridman invariant"), ("squeeze", "squeezing function")):
        p_inv = sub.add_parser(kind, parents=[common], help=blurb)
        p_inv.add_argument("domain")
        p_inv.add_argument("point")
        p_inv.set_defaults(func=cmd_invariant, kind=kind)

    p_scale = sub.add_parser(
        "scale",
        parents=[common],
        help="run a scaling experiment spec",
        epilog=(
            "Writes one file per declared check. Stable CSV columns: "
            "hausdorff -> j, delta, sup_error, membership_agreement; "
            "ball_inclusion -> j, delta, inside, max_distance; "
            "convergence -> j, modulus, upper_bound."
        ),
    )
    p_scale.add_argument("spec", help="JSON experiment spec file")
    p_scale.set_defaults(func=cmd_scale)

    p_verify = sub.add_parser("verify", parents=[common], help="closed-form vs oracle suites")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
