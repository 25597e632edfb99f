"""Check runners and deterministic report assembly.

Each numbered check (c01..c13) has a single runner used by both the command
line ``suite`` verb and the acceptance test battery; the ``budget`` switch
picks between a fast smoke configuration and the full criterion
configuration.  Reports are plain dictionaries rendered to canonical JSON
(sorted keys, no timestamps), so identical inputs produce identical bytes.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .domains import (
    CuspDomain,
    DiskExterior,
    DiskInterior,
    HalfPlane,
    Membership,
    Sector,
    boundary_distance,
    boundary_param,
    complement,
    membership,
)
from .functions import LinearCombination, MoebiusTransfer, RationalSection
from .kernels import KernelSection
from .moebius import INVERSION_MAP
from .operators import (
    apply_B,
    build_finite_model,
    kernel_integral_identity,
    parseval_check,
    reflection_principle,
)
from .pairings import gram_rational, pair_closed
from .points import cusp_approach_points, exterior_points
from .quadrature import QuadConfig, integrate_domain, norm_b2
from .reflections import bilipschitz_estimate, reflect, reflect_many
from .transform import (
    TransformConfig,
    hilbert_transform,
    surjectivity_diagnostic,
    transform_gram,
    transform_norm_ratio,
)

__all__ = [
    "CheckResult",
    "run_check",
    "run_suite",
    "make_report",
    "render_json",
    "render_text",
    "report_schema",
    "CHECK_IDS",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    name: str
    value: float
    expected: float
    tol: float
    passed: bool
    note: str = ""


def _uhp() -> HalfPlane:
    return HalfPlane(normal=1j)


def _quadrant() -> Sector:
    return Sector(vertex=0.0, bisector=math.pi / 4, opening=math.pi / 2)


# ---------------------------------------------------------------------------
# individual check runners
# ---------------------------------------------------------------------------


def _check_membership_integral(budget: str) -> CheckResult:
    """c01: complement-of-disk energy of a second-order pole at the center."""
    worst = 0.0
    for d in (0.5, 1.0, 2.0):
        dom = DiskExterior(center=0.0, radius=d)

        def integrand(z):
            return np.abs(z) ** -4

        cfg = QuadConfig(abs_tol=1e-10, rel_tol=1e-9)
        got = float(np.real(integrate_domain(dom, integrand, cfg).value))
        want = math.pi / d**2
        worst = max(worst, abs(got - want) / want)
    return CheckResult(
        check_id="c01",
        name="membership integral over a disk complement",
        value=worst,
        expected=0.0,
        tol=1e-6,
        passed=worst <= 1e-6,
        note=(
            "value pi/d^2 under the plain-area convention; measuring the "
            "excluded radius as 2d rescales the same integral to 4*pi/d^2"
        ),
    )


def _check_transform_value(budget: str) -> CheckResult:
    """c02: transform of a rational section on the upper half plane."""
    dom = _uhp()
    f = RationalSection(pole=-1j)
    quad = QuadConfig(abs_tol=1e-9)
    cfg = TransformConfig(quad=quad)
    got = hilbert_transform(dom, f, -2j, cfg, method="quadrature")
    worst = abs(got - math.pi / 9.0)

    n_pts = 10 if budget == "full" else 3
    rng = np.random.default_rng(7)
    count = 0
    while count < n_pts:
        xi = complex(rng.uniform(-2.0, 2.0), -rng.uniform(0.4, 2.0))
        closed = hilbert_transform(dom, f, xi, cfg, method="closed")
        numeric = hilbert_transform(dom, f, xi, cfg, method="quadrature")
        worst = max(worst, abs(closed - numeric))
        count += 1
    return CheckResult(
        check_id="c02",
        name="half-plane transform value and closed-form agreement",
        value=worst,
        expected=0.0,
        tol=1e-6,
        passed=worst <= 1e-6,
        note="reference value pi/9 at xi=-2i for a pole at -i",
    )


def _check_mean_value(budget: str) -> CheckResult:
    """c03: area integral of a second-order pole over the unit disk."""
    dom = DiskInterior(center=0.0, radius=1.0)

    def integrand(z):
        return 1.0 / (z - 2.0) ** 2

    got = integrate_domain(dom, integrand, QuadConfig(abs_tol=1e-10)).value
    err = abs(got - math.pi / 4.0)
    return CheckResult(
        check_id="c03",
        name="disk mean-value integral",
        value=err,
        expected=0.0,
        tol=1e-8,
        passed=err <= 1e-8,
    )


def _halfplane_battery():
    return [
        RationalSection(pole=-1j),
        RationalSection(pole=-2.0 - 0.5j),
        KernelSection(_uhp(), 0.7j),
        LinearCombination(
            (0.8, -0.3j), (RationalSection(pole=-1j), RationalSection(pole=-1.5j))
        ),
        LinearCombination(
            (1.0, 0.5), (KernelSection(_uhp(), 0.5 + 1.2j), RationalSection(pole=1.0 - 1j))
        ),
    ]


def _quadrant_battery():
    dom = _quadrant()
    return [
        RationalSection(pole=-0.8 + 0.2j),
        RationalSection(pole=0.3 - 1.1j),
        LinearCombination(
            (1.0, -0.6j),
            (RationalSection(pole=-0.5 - 0.5j), RationalSection(pole=-1.5 + 0.6j)),
        ),
        KernelSection(dom, 1.0 + 0.8j),
        LinearCombination(
            (0.7, 0.4), (KernelSection(dom, 0.6 + 1.4j), RationalSection(pole=-1.0 - 0.2j))
        ),
    ]


def _check_norm_contraction(budget: str) -> CheckResult:
    """c04: the transform does not expand norms under the area/pi convention."""
    cfg = TransformConfig(normalization="lebesgue-over-pi", quad=QuadConfig(abs_tol=1e-10))
    worst_half = 0.0
    for f in _halfplane_battery():
        ratio = transform_norm_ratio(_uhp(), f, cfg)
        worst_half = max(worst_half, abs(ratio - 1.0))
    passed = worst_half <= 1e-4

    worst_sector = 0.0
    battery = _quadrant_battery() if budget == "full" else _quadrant_battery()[:2]
    for f in battery:
        ratio = transform_norm_ratio(_quadrant(), f, cfg)
        worst_sector = max(worst_sector, ratio)
    passed = passed and worst_sector <= 1.0 + 1e-3
    value = max(worst_half, max(worst_sector - 1.0, 0.0))
    return CheckResult(
        check_id="c04",
        name="transform norm ratios (half-plane exact, sector contractive)",
        value=value,
        expected=0.0,
        tol=1e-3,
        passed=passed,
        note=f"half-plane max |ratio-1| {worst_half:.3e}; sector max ratio {worst_sector:.6f}",
    )


def _check_transfer_isometry(budget: str) -> CheckResult:
    """c05: Moebius transfer preserves the Bergman norm (inversion example)."""
    ext = DiskExterior(center=0.0, radius=1.0)
    disk = DiskInterior(center=0.0, radius=1.0)
    f = RationalSection(pole=0.0)
    target = math.sqrt(math.pi)
    quad = QuadConfig(abs_tol=1e-11)

    norm_src = math.sqrt(float(np.real(pair_closed(ext, 0.0, 0.0))))
    transferred = MoebiusTransfer(INVERSION_MAP, f)
    norm_img = float(norm_b2(disk, transferred, quad).value)
    worst = max(abs(norm_src - target), abs(norm_img - target))
    return CheckResult(
        check_id="c05",
        name="transfer isometry between a disk exterior and the disk",
        value=worst,
        expected=0.0,
        tol=1e-5,
        passed=worst <= 1e-5,
        note="both norms should equal sqrt(pi)",
    )


def _check_reflection(budget: str) -> CheckResult:
    """c06: reflection axioms plus the sector's bilipschitz window."""
    domains = [
        _uhp(),
        _quadrant(),
        DiskInterior(center=0.5 - 0.25j, radius=1.5),
        DiskExterior(center=-1.0 + 2.0j, radius=0.75),
    ]
    worst_axiom = 0.0
    rng = np.random.default_rng(11)
    for dom in domains:
        pts = exterior_points(dom, 25)
        back = reflect_many(dom, reflect_many(dom, pts))
        worst_axiom = max(worst_axiom, float(np.max(np.abs(back - pts) / (1.0 + np.abs(pts)))))
        for z in pts[:10]:
            if membership(dom, complex(reflect(dom, complex(z)))) is not Membership.INTERIOR:
                worst_axiom = max(worst_axiom, 1.0)
        for t in rng.uniform(0.0, 1.0, 12):
            b = boundary_param(dom, float(t)).point
            if not isinstance(b, complex):
                continue
            fixed = reflect(dom, b)
            if isinstance(fixed, complex):
                worst_axiom = max(worst_axiom, abs(fixed - b) / (1.0 + abs(b)))
    axiom_ok = worst_axiom <= 1e-10

    n_pairs = 10_000 if budget == "full" else 600
    lo, hi = bilipschitz_estimate(_quadrant(), n_pairs=n_pairs, seed=0)
    window_ok = (lo >= 1.0 / 3.0 - 0.02) and (hi <= 3.0 + 0.1)
    return CheckResult(
        check_id="c06",
        name="reflection axioms and sector bilipschitz window",
        value=worst_axiom if not axiom_ok else (0.0 if window_ok else hi),
        expected=0.0,
        tol=1e-10,
        passed=axiom_ok and window_ok,
        note=f"axiom residual {worst_axiom:.2e}; quotient range [{lo:.4f}, {hi:.4f}]",
    )


def _check_sandwich(budget: str) -> CheckResult:
    """c07: transform energy ratios sit inside the model's eigenvalue bracket."""
    quad = QuadConfig(abs_tol=1e-10)
    cfg = TransformConfig(quad=quad)

    worst_half = 0.0
    for f in _halfplane_battery()[:3]:
        ratio = transform_norm_ratio(_uhp(), f, cfg)
        worst_half = max(worst_half, abs(ratio - math.pi) / math.pi)
    half_ok = worst_half <= 1e-5

    dom = _quadrant()
    n = 16 if budget == "full" else 10
    poles = exterior_points(dom, n)
    diag = surjectivity_diagnostic(dom, poles, cfg)
    lo = math.sqrt(max(diag.eigenvalues[0], 0.0))
    hi = math.sqrt(diag.eigenvalues[-1])
    rng = np.random.default_rng(3)
    slack_ok = True
    observed = []
    for _ in range(3):
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        f = LinearCombination(tuple(c), tuple(RationalSection(p) for p in poles))
        ratio = transform_norm_ratio(dom, f, cfg)
        observed.append(ratio)
        if not (lo * 0.95 <= ratio <= hi * 1.05):
            slack_ok = False
    return CheckResult(
        check_id="c07",
        name="two-sided transform bounds (half-plane equality, sector bracket)",
        value=worst_half,
        expected=0.0,
        tol=1e-5,
        passed=half_ok and slack_ok,
        note=(
            f"half-plane max rel dev {worst_half:.2e}; sector bracket "
            f"[{lo:.4f}, {hi:.4f}], observed {['%.4f' % r for r in observed]}"
        ),
    )


def _c08_model():
    dom = _uhp()
    center = 1.2j
    ring = center + 0.45 * np.exp(2j * np.pi * np.arange(8) / 8.0)
    poles = np.conj(ring)  # exterior anchors whose reflections ring the holdout
    return dom, build_finite_model(dom, poles), -1.2j


def _check_b_scalar(budget: str) -> CheckResult:
    """c08: on the half plane B is multiplication by -pi."""
    dom, model, holdout = _c08_model()
    dev = float(np.max(np.abs(model.b_matrix + math.pi * np.eye(model.size))))
    res = apply_B(model, holdout).residual
    passed = dev <= 1e-6 and res < 1e-5
    return CheckResult(
        check_id="c08",
        name="half-plane B-matrix is -pi times the identity",
        value=max(dev, res),
        expected=0.0,
        tol=1e-5,
        passed=passed,
        note=f"entrywise deviation {dev:.2e}; holdout residual {res:.2e}",
    )


def _holdout_ring(center: complex, n: int, radius: float) -> np.ndarray:
    """Equal-arc points on a logarithmic ellipse of size ``radius`` at ``center``.

    The curve exponentiates a circle stretched threefold along the angular
    direction, matching the quadrant's 3:1 exterior-to-interior angle ratio,
    so its mirror image is a near-circular loop around the reflected center.
    Spacing by arc length keeps the pole separation healthy at every count.
    """
    dense = np.linspace(0.0, 2.0 * np.pi, 4096, endpoint=False)
    log_circle = np.cos(dense) + 3j * np.sin(dense)
    curve = center * np.exp((radius / abs(center)) * log_circle)
    seg = np.abs(np.diff(np.concatenate([curve, curve[:1]])))
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    targets = arc[-1] * (np.arange(n) + 0.5) / n
    th = np.interp(targets, arc, np.concatenate([dense, [2.0 * np.pi]]))
    return center * np.exp((radius / abs(center)) * (np.cos(th) + 3j * np.sin(th)))


def _check_b_convergence(budget: str) -> CheckResult:
    """c09: sector holdout residuals shrink as the model localizes.

    The poles sit on logarithmic rings that tighten around the holdout as
    the count grows (radius halving when the count doubles).  The mirror
    distorts the rational sections relative to the kernel sections at second
    order in the configuration scale, so the transported projection should
    gain roughly a factor of four per rung.
    """
    dom = _quadrant()
    ladder = ((10, 0.18), (20, 0.09), (40, 0.045))
    if budget != "full":
        ladder = ladder[:2]
    holdout = complex(0.9 * np.exp(1j * 1.25 * math.pi))  # mid-complement
    residuals = []
    for n, radius in ladder:
        poles = _holdout_ring(holdout, n, radius)
        model = build_finite_model(dom, poles, light=True)
        residuals.append(apply_B(model, holdout).residual)
    decreasing = all(b < a for a, b in zip(residuals, residuals[1:]))
    final_ok = residuals[-1] < 1e-2 if budget == "full" else True
    return CheckResult(
        check_id="c09",
        name="sector B holdout residual decreases with model size",
        value=residuals[-1],
        expected=0.0,
        tol=1e-2,
        passed=decreasing and final_ok,
        note="residuals " + ", ".join(f"{r:.3e}" for r in residuals),
    )


def _check_frame_identities(budget: str) -> CheckResult:
    """c10: Parseval through R and the rank-N kernel integral identity."""
    full = budget == "full"
    n_half = 40 if full else 16
    n_sect = 40 if full else 16
    # the half-plane pairings all take closed routes, so a tight tolerance is
    # free there; the sector frame matrix is a genuine complement quadrature
    # whose cost explodes well below the 1e-2-scale acceptance targets
    cfg = TransformConfig(quad=QuadConfig(abs_tol=1e-8))
    cfg_s = TransformConfig(quad=QuadConfig(abs_tol=1e-6))

    dom_h = _uhp()
    poles_h = exterior_points(dom_h, n_half)
    model_h = build_finite_model(dom_h, poles_h, cfg)
    f_h = KernelSection(dom_h, 0.9j)
    pars_h = parseval_check(model_h, f_h).rel_error
    kid_h = kernel_integral_identity(model_h, 0.8j, 0.55 + 1.1j).rel_error

    dom_s = _quadrant()
    poles_s = exterior_points(dom_s, n_sect)
    model_s = build_finite_model(dom_s, poles_s, cfg_s)
    f_s = KernelSection(dom_s, 0.9 + 0.7j)
    pars_s = parseval_check(model_s, f_s).rel_error
    kid_s = kernel_integral_identity(model_s, 1.0 + 0.9j, 0.7 + 0.5j).rel_error

    tols = (1e-4, 1e-2, 1e-2, 5e-2) if full else (1e-3, 5e-2, 5e-2, 2e-1)
    vals = (pars_h, kid_h, pars_s, kid_s)
    passed = all(v <= t for v, t in zip(vals, tols))
    return CheckResult(
        check_id="c10",
        name="Parseval through R and kernel integral identity",
        value=max(vals),
        expected=0.0,
        tol=max(tols),
        passed=passed,
        note=(
            f"half-plane parseval {pars_h:.2e}, kernel id {kid_h:.2e}; "
            f"sector parseval {pars_s:.2e}, kernel id {kid_s:.2e}"
        ),
    )


def _check_reflection_identity(budget: str) -> CheckResult:
    """c11: conj(f o rho) equals the transform of B^-1 f."""
    dom, model, _ = _c08_model()
    rng = np.random.default_rng(5)
    coeffs = rng.standard_normal(model.size) + 1j * rng.standard_normal(model.size)
    angles = np.linspace(-2.6, -0.6, 10)
    xi = 1.4 * np.exp(1j * angles)  # lower half-plane fan
    res = reflection_principle(model, coeffs, xi)
    worst = res.max_abs_error
    half_ok = worst < 1e-5

    dom_s = _quadrant()
    n = 16 if budget == "full" else 10
    poles = exterior_points(dom_s, n)
    cfg = TransformConfig(quad=QuadConfig(abs_tol=1e-9))
    diag = surjectivity_diagnostic(dom_s, poles, cfg)
    k = dom_s.opening / (2.0 * math.pi - dom_s.opening)
    c_lo = math.sqrt(1.0 / (k * diag.eigenvalues[-1]))
    c_hi = math.sqrt(1.0 / (k * max(diag.eigenvalues[0], np.finfo(float).tiny)))
    rng2 = np.random.default_rng(23)
    sect_ok = True
    ratios = []
    for _ in range(3):
        c = rng2.standard_normal(n) + 1j * rng2.standard_normal(n)
        f = LinearCombination(tuple(c), tuple(RationalSection(p) for p in poles))

        def g_sq(xi_pts):
            y = reflect_many(dom_s, xi_pts)
            return np.abs(f(y)) ** 2

        g_norm = math.sqrt(
            float(np.real(integrate_domain(complement(dom_s), g_sq, cfg.quad).value))
        )

        def t_sq(xi_pts):
            acc = np.zeros(xi_pts.shape, dtype=complex)
            for cj, p in zip(c, poles):
                acc += np.conj(cj) * np.conj(pair_closed(dom_s, p, xi_pts))
            return np.abs(acc) ** 2

        t_norm = math.sqrt(
            float(np.real(integrate_domain(complement(dom_s), t_sq, cfg.quad).value))
        )
        ratios.append(g_norm / t_norm)
        if not (c_lo * 0.95 <= g_norm / t_norm <= c_hi * 1.05):
            sect_ok = False
    return CheckResult(
        check_id="c11",
        name="reflection identity and its two-sided sector bounds",
        value=worst,
        expected=0.0,
        tol=1e-5,
        passed=half_ok and sect_ok,
        note=(
            f"half-plane residual {worst:.2e}; sector ratios "
            f"{['%.4f' % r for r in ratios]} in [{c_lo:.4f}, {c_hi:.4f}] (5% slack)"
        ),
    )


def _check_cusp_conditioning(budget: str) -> CheckResult:
    """c12: the cusp's frame matrix is far worse conditioned than the sector's.

    The baseline is a sector fan with the same radius, count, and angular
    spread as the level-0 cusp fan, so domain shape is the only variable.
    Refinement is nested: each level appends a fan half as far from the tip,
    which makes the condition number's growth a statement about the new,
    nearly dependent directions rather than about rescaled point sets.
    """
    if budget == "full":
        quad = QuadConfig(abs_tol=1e-6, max_cells=6000)
        levels = (0, 1, 2)
    else:
        quad = QuadConfig(abs_tol=1e-6, max_cells=1500)
        levels = (0, 1)
    cfg = TransformConfig(quad=quad)
    dom_c = CuspDomain(scale=1.0)
    dom_s = _quadrant()
    n = 8

    fan = dom_s.vertex + 0.5 * np.exp(1j * np.linspace(0.70 * math.pi, 1.80 * math.pi, n))
    cond_sector = float(np.linalg.cond(transform_gram(dom_s, fan, cfg)))

    conds = []
    poles = cusp_approach_points(dom_c, n=n, level=0)
    for lvl in levels:
        if lvl > 0:
            poles = np.concatenate([poles, cusp_approach_points(dom_c, n=4, level=lvl)])
        conds.append(float(np.linalg.cond(transform_gram(dom_c, poles, cfg))))
    ratio = conds[0] / cond_sector
    monotone = all(b > a for a, b in zip(conds, conds[1:]))
    passed = ratio >= 10.0 and monotone
    return CheckResult(
        check_id="c12",
        name="cusp frame-matrix conditioning versus sector",
        value=ratio,
        expected=10.0,
        tol=0.0,
        passed=passed,
        note=(
            f"sector cond {cond_sector:.3e}; cusp conds "
            + ", ".join(f"{c:.3e}" for c in conds)
            + ("" if monotone else " (growth not monotone)")
        ),
    )


def _random_exterior(dom, n, rng):
    pts = []
    tries = 0
    while len(pts) < n and tries < 4000:
        tries += 1
        z = complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
        if membership(dom, z) is not Membership.EXTERIOR:
            continue
        if boundary_distance(dom, z) < 0.15:
            continue
        if pts and min(abs(z - w) for w in pts) < 0.25:
            continue
        pts.append(z)
    return np.array(pts, dtype=complex) if len(pts) == n else None


def _check_positive_definite(budget: str) -> CheckResult:
    """c13: Gram matrices stay positive definite over random configurations."""
    import scipy.linalg

    from .kernels import kernel as kernel_of
    from .transform import transform_gram

    domains = [
        _uhp(),
        _quadrant(),
        DiskInterior(center=0.0, radius=1.0),
        DiskExterior(center=0.0, radius=1.0),
    ]
    n_configs = 20 if budget == "full" else 6
    worst = np.inf
    count = 0
    for di, dom in enumerate(domains):
        rng = np.random.default_rng(100 + di)
        made = 0
        while made < n_configs:
            pts = _random_exterior(dom, 6, rng)
            if pts is None:
                break
            made += 1
            count += 1
            g_r = gram_rational(dom, pts)
            worst = min(worst, float(scipy.linalg.eigvalsh(g_r)[0]))
            w = reflect_many(dom, pts)
            K = kernel_of(dom)
            g_k = np.empty((6, 6), dtype=complex)
            for j in range(6):
                g_k[:, j] = K(w, complex(w[j]))
            g_k = 0.5 * (g_k + g_k.conj().T)
            worst = min(worst, float(scipy.linalg.eigvalsh(g_k)[0]))
            if not isinstance(dom, Sector):
                phi = transform_gram(dom, pts)
                worst = min(worst, float(scipy.linalg.eigvalsh(phi)[0]))
    passed = worst > 0.0 and count >= 4 * n_configs
    return CheckResult(
        check_id="c13",
        name="positive definiteness of Gram and frame matrices",
        value=worst,
        expected=0.0,
        tol=0.0,
        passed=passed,
        note=f"smallest eigenvalue over {count} random configurations",
    )


_RUNNERS = {
    "c01": _check_membership_integral,
    "c02": _check_transform_value,
    "c03": _check_mean_value,
    "c04": _check_norm_contraction,
    "c05": _check_transfer_isometry,
    "c06": _check_reflection,
    "c07": _check_sandwich,
    "c08": _check_b_scalar,
    "c09": _check_b_convergence,
    "c10": _check_frame_identities,
    "c11": _check_reflection_identity,
    "c12": _check_cusp_conditioning,
    "c13": _check_positive_definite,
}

CHECK_IDS = tuple(sorted(_RUNNERS))


def run_check(check_id: str, budget: str = "fast") -> CheckResult:
    if check_id not in _RUNNERS:
        raise KeyError(f"unknown check id {check_id!r}; known: {', '.join(CHECK_IDS)}")
    if budget not in ("fast", "full"):
        raise ValueError("budget must be 'fast' or 'full'")
    return _RUNNERS[check_id](budget)


def run_suite(check_ids=None, budget: str = "fast"):
    ids = list(check_ids) if check_ids else list(CHECK_IDS)
    return [run_check(cid, budget) for cid in ids]


def make_report(results, meta=None) -> dict:
    checks = [asdict(r) for r in sorted(results, key=lambda r: r.check_id)]
    return {
        "schema_version": SCHEMA_VERSION,
        "package": "berglab",
        "meta": dict(meta or {}),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_text(report: dict) -> str:
    lines = []
    for c in report.get("checks", []):
        status = "PASS" if c["passed"] else "FAIL"
        lines.append(
            f"{c['check_id']} {status} {c['name']}: value={c['value']:.6g} "
            f"tol={c['tol']:.3g}"
        )
    lines.append("suite: " + ("PASS" if report.get("passed") else "FAIL"))
    return "\n".join(lines) + "\n"


def report_schema() -> dict:
    """Machine-readable description of the report layout and check ids."""
    return {
        "schema_version": SCHEMA_VERSION,
        "report": {
            "schema_version": "int",
            "package": "str",
            "meta": "dict of str -> str",
            "checks": "list of check objects, sorted by check_id",
            "passed": "bool, conjunction of all checks",
        },
        "check": {
            "check_id": "str, c01..c13",
            "name": "str",
            "value": "float, the worst observed metric",
            "expected": "float, the target value",
            "tol": "float, acceptance tolerance on value",
            "passed": "bool",
            "note": "str, free-form detail",
        },
        "check_ids": list(CHECK_IDS),
    }
