"""Command-line interface.

Verbs:
  kernel     evaluate the reproducing kernel at reflections of exterior points
  transform  evaluate the transform of a section at exterior points
  reflect    push points through the boundary reflection
  lipschitz  empirical bilipschitz bounds for the reflection
  operators  build a finite model (``build``) or verify its identities (``verify``)
  suite      run the numbered check battery and emit a report

Exit codes: 0 success, 1 check failure (including evaluation points inside
the domain), 2 configuration/parse error, 3 numerical budget exhausted.
Reports carry no timestamps and serialize with sorted keys, so identical
invocations produce identical bytes.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .domains import NAMED_DOMAINS, Sector, domain_from_dict
from .exceptions import (
    BerglabError,
    ConfigError,
    KernelUnavailableError,
    NonIntegrableTailError,
    PointInsideDomainError,
    PoleInsideDomainError,
    ReflectionUnavailableError,
)
from .functions import RationalSection
from .kernels import KernelSection, kernel
from .operators import build_finite_model, verify_model
from .points import exterior_points
from .quadrature import QuadConfig
from .reflections import bilipschitz_estimate, reflect_many, sector_compression_ratio
from .reports import (
    CHECK_IDS,
    make_report,
    render_json,
    render_text,
    report_schema,
    run_suite,
)
from .transform import TransformConfig, hilbert_transform, holomorphy_residual

__all__ = ["main"]


def _c2pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _parse_domain(spec: str):
    if spec in NAMED_DOMAINS:
        return NAMED_DOMAINS[spec]
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            return domain_from_dict(json.load(fh))
    try:
        return domain_from_dict(json.loads(spec))
    except (json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        names = ", ".join(sorted(NAMED_DOMAINS))
        raise ConfigError(
            f"cannot interpret domain {spec!r}: not a known name ({names}), "
            f"file, or inline JSON ({exc})"
        ) from exc


def _parse_points(spec: str, domain) -> np.ndarray:
    if spec.startswith("gen:"):
        parts = spec.split(":")
        if len(parts) != 3 or parts[1] != "annulus":
            raise ConfigError(
                f"unknown generator {spec!r}; expected gen:annulus:N"
            )
        try:
            n = int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"bad point count in {spec!r}") from exc
        if n < 1:
            raise ConfigError("point count must be positive")
        return exterior_points(domain, n)
    if not os.path.exists(spec):
        raise ConfigError(f"points file {spec!r} does not exist")
    with open(spec, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    pts = []
    try:
        for item in data:
            if isinstance(item, (list, tuple)) and len(item) == 2:
                pts.append(complex(float(item[0]), float(item[1])))
            elif isinstance(item, dict):
                pts.append(complex(float(item["re"]), float(item["im"])))
            elif isinstance(item, str):
                pts.append(complex(item))
            else:
                raise TypeError(f"unsupported point entry {item!r}")
    except (TypeError, ValueError, KeyError) as exc:
        raise ConfigError(f"cannot parse points file {spec!r}: {exc}") from exc
    if not pts:
        raise ConfigError(f"points file {spec!r} is empty")
    return np.array(pts, dtype=complex)


def _parse_fn(spec: str, domain):
    head, _, rest = spec.partition(":")
    try:
        nums = [float(x) for x in rest.split(",")] if rest else []
    except ValueError as exc:
        raise ConfigError(f"bad numbers in function spec {spec!r}") from exc
    if head == "rational":
        if len(nums) == 2:
            return RationalSection(complex(nums[0], nums[1]))
        if len(nums) == 4:
            return RationalSection(
                complex(nums[0], nums[1]), complex(nums[2], nums[3])
            )
        raise ConfigError("rational function spec needs RE,IM or RE,IM,CRE,CIM")
    if head == "kernel":
        if len(nums) != 2:
            raise ConfigError("kernel function spec needs RE,IM")
        return KernelSection(domain, complex(nums[0], nums[1]))
    raise ConfigError(f"unknown function spec {spec!r} (use rational:... or kernel:...)")


def _emit(payload: dict, args) -> None:
    text = render_json(payload) if args.format == "json" else render_text(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_raw(payload: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        lines = [f"{k}: {v}" for k, v in sorted(payload.items())]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_kernel(args) -> int:
    domain = _parse_domain(args.domain)
    pts = _parse_points(args.points, domain)
    K = kernel(domain)
    zs = reflect_many(domain, pts)
    matrix = [[_c2pair(K(np.array([zi]), complex(zj))[0]) for zj in zs] for zi in zs]
    _emit_raw(
        {
            "domain": args.domain,
            "interior_points": [_c2pair(z) for z in zs],
            "kernel_matrix": matrix,
        },
        args,
    )
    return 0


def _cmd_transform(args) -> int:
    domain = _parse_domain(args.domain)
    pts = _parse_points(args.points, domain)
    fn = _parse_fn(args.fn, domain)
    cfg = TransformConfig(normalization=args.norm, quad=QuadConfig(abs_tol=args.tol))
    values = hilbert_transform(domain, fn, pts, cfg)
    dbar, dz = holomorphy_residual(domain, fn, pts[0], config=cfg)
    _emit_raw(
        {
            "domain": args.domain,
            "fn": args.fn,
            "normalization": args.norm,
            "points": [_c2pair(p) for p in pts],
            "values": [_c2pair(v) for v in np.atleast_1d(values)],
            "holomorphy_dbar": dbar,
            "holomorphy_dz": dz,
        },
        args,
    )
    return 0


def _cmd_reflect(args) -> int:
    domain = _parse_domain(args.domain)
    pts = _parse_points(args.points, domain)
    images = reflect_many(domain, pts)
    back = reflect_many(domain, images)
    residual = float(np.max(np.abs(back - pts) / (1.0 + np.abs(pts))))
    _emit_raw(
        {
            "domain": args.domain,
            "points": [_c2pair(p) for p in pts],
            "images": [_c2pair(z) for z in images],
            "involution_residual": residual,
        },
        args,
    )
    return 0 if residual <= args.tol else 1


def _cmd_lipschitz(args) -> int:
    domain = _parse_domain(args.domain)
    lo, hi = bilipschitz_estimate(domain, n_pairs=args.pairs, seed=args.seed)
    payload = {
        "domain": args.domain,
        "pairs": args.pairs,
        "seed": args.seed,
        "quotient_min": lo,
        "quotient_max": hi,
    }
    if isinstance(domain, Sector):
        payload["compression_ratio"] = sector_compression_ratio(domain)
    _emit_raw(payload, args)
    return 0


def _cmd_operators(args) -> int:
    domain = _parse_domain(args.domain)
    pts = _parse_points(args.points, domain)
    cfg = TransformConfig(normalization=args.norm, quad=QuadConfig(abs_tol=args.tol))
    model = build_finite_model(domain, pts, cfg)
    cond = model.conditioning
    payload = {
        "domain": args.domain,
        "size": model.size,
        "normalization": args.norm,
        "cond_gram_kernel": cond.cond_gram_kernel,
        "cond_gram_pullback": cond.cond_gram_pullback,
        "cond_gram_rational": cond.cond_gram_rational,
        "cond_frame_rational": cond.cond_frame_rational,
        "frame_spread": cond.frame_spread,
        "ill_conditioned": cond.ill_conditioned,
        "min_eigenvalues": {k: v for k, v in sorted(cond.min_eigenvalues.items())},
    }
    if args.action == "build":
        _emit_raw(payload, args)
        return 0
    checks = verify_model(model)
    payload["checks"] = {k: v for k, v in sorted(checks.items())}
    residual_keys = (
        "sqrt_transfer_squares",
        "sqrt_transform_inverts_frame",
        "mixed_identity",
        "gram_kernel_hermitian",
        "transfer_selfadjoint",
    )
    ok = all(checks[k] <= args.verify_tol for k in residual_keys if k in checks)
    ok = ok and checks["min_eigenvalue"] > 0.0
    payload["passed"] = ok
    _emit_raw(payload, args)
    return 0 if ok else 1


def _cmd_suite(args) -> int:
    ids = args.checks.split(",") if args.checks else None
    if ids:
        for cid in ids:
            if cid not in CHECK_IDS:
                raise ConfigError(f"unknown check id {cid!r}")
    results = run_suite(ids, budget=args.budget)
    report = make_report(
        results,
        meta={"budget": args.budget, "checks": ",".join(ids) if ids else "all"},
    )
    _emit(report, args)
    return 0 if report["passed"] else 1


def _cmd_schema(args) -> int:
    _emit_raw(report_schema(), args)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="berglab",
        description="Bergman-space reflection models on unbounded domains",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, points=True, fn=False):
        p.add_argument("--domain", default="halfplane", help="named domain, JSON file, or inline JSON")
        if points:
            p.add_argument(
                "--points",
                default="gen:annulus:8",
                help="JSON file of [re,im] pairs or gen:annulus:N",
            )
        if fn:
            p.add_argument("--fn", default="rational:0.0,-1.0", help="rational:RE,IM or kernel:RE,IM")
        p.add_argument("--tol", type=float, default=1e-8, help="quadrature/check tolerance")
        p.add_argument("--norm", default="lebesgue", choices=["lebesgue", "lebesgue-over-pi"])
        p.add_argument("--out", default=None, help="write output to this file instead of stdout")
        p.add_argument("--format", default="json", choices=["json", "text"])

    common(sub.add_parser("kernel", help="evaluate the reproducing kernel"))
    common(sub.add_parser("transform", help="evaluate the transform of a section"), fn=True)
    common(sub.add_parser("reflect", help="reflect points through the boundary"))

    p_lip = sub.add_parser("lipschitz", help="empirical reflection bilipschitz bounds")
    common(p_lip, points=False)
    p_lip.add_argument("--seed", type=int, default=0)
    p_lip.add_argument("--pairs", type=int, default=2000)

    p_ops = sub.add_parser("operators", help="finite model assembly and verification")
    p_ops.add_argument("action", choices=["build", "verify"])
    common(p_ops)
    p_ops.add_argument("--verify-tol", type=float, default=1e-8, dest="verify_tol")

    p_suite = sub.add_parser("suite", help="run the numbered check battery")
    common(p_suite, points=False)
    p_suite.add_argument("--budget", default="fast", choices=["fast", "full"])
    p_suite.add_argument("--checks", default=None, help="comma-separated subset, e.g. c01,c05")

    common(sub.add_parser("schema", help="print the report schema"), points=False)
    return parser


_DISPATCH = {
    "kernel": _cmd_kernel,
    "transform": _cmd_transform,
    "reflect": _cmd_reflect,
    "lipschitz": _cmd_lipschitz,
    "operators": _cmd_operators,
    "suite": _cmd_suite,
    "schema": _cmd_schema,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.verb](args)
    except (ConfigError, KernelUnavailableError, ReflectionUnavailableError) as exc:
        print(f"berglab: configuration error: {exc}", file=sys.stderr)
        return 2
    except (PointInsideDomainError, PoleInsideDomainError) as exc:
        print(f"berglab: check failure: {exc}", file=sys.stderr)
        return 1
    except NonIntegrableTailError as exc:
        print(f"berglab: numerical budget exhausted: {exc}", file=sys.stderr)
        return 3
    except BerglabError as exc:
        print(f"berglab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
