"""Named verification suites.

Each suite runs a battery of identities on a given curve and returns a
VerifyReport with one row per identity: the measured residual, the
tolerance it must meet, and pass/fail.  Closed-form transforms are
checked against independent constructions (envelopes, inversion
round-trips, finite differences of sampled output curves), so the
suites certify the formulas rather than re-deriving them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import frontal as fr
from . import singularity as sg
from . import transforms as tr
from .curve import (CurveDef, builtin_curve, frenet, frenet_grid, position_xy,
                    sample_grid, velocity_xy)
from .envelope import circle_family_check, envelope, make_family
from .errors import HypothesisViolated, RangeError
from .vec import Vec2, invert, invert_xy, perp, perp_xy, rotate, rotate_xy

SUITES = ("inversion", "duality", "parallel", "slant", "inverse-pair",
          "oracle", "singularity", "frontal", "all")


@dataclass(frozen=True)
class IdentityResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


@dataclass
class VerifyReport:
    suite: str
    curve_name: str
    results: list[IdentityResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name: str, residual: float, tolerance: float) -> None:
        self.results.append(IdentityResult(name, float(residual), tolerance))

    def format(self) -> str:
        width = max(len(r.name) for r in self.results) if self.results else 10
        lines = [f"suite {self.suite!r} on curve {self.curve_name!r}"]
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            lines.append(f"  {r.name:<{width}}  residual {r.residual:12.5e}"
                         f"  tol {r.tolerance:8.1e}  {status}")
        lines.append(f"=> {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _diff(a: np.ndarray, b: np.ndarray, mask: np.ndarray) -> float:
    if not mask.any():
        return math.inf
    d = a[mask] - b[mask]
    return float(np.hypot(d[:, 0], d[:, 1]).max())


def _rel_diff(a: np.ndarray, b: np.ndarray, mask: np.ndarray) -> float:
    # Per-sample relative distance.  Transforms with poles (primitive,
    # antipedal) reach magnitudes ~ 1/q near q -> 0 where every evaluation
    # scheme carries O(eps / q^2) absolute error; dividing by the local
    # magnitude keeps the comparison meaningful there while staying equal
    # to the absolute distance wherever points are O(1).
    if not mask.any():
        return math.inf
    d = a[mask] - b[mask]
    scale = np.maximum(1.0, np.hypot(b[mask][:, 0], b[mask][:, 1]))
    return float((np.hypot(d[:, 0], d[:, 1]) / scale).max())


def _pair_diff(ma: tr.MappedCurve, mb: tr.MappedCurve,
               relative: bool = False) -> float:
    fn = _rel_diff if relative else _diff
    return fn(ma.points, mb.points, ma.ok & mb.ok)


def stable_mask(mc: tr.MappedCurve, frac: float = 0.05) -> np.ndarray:
    """Samples on the 'regular part' of a sampled curve: ok, away from
    speed collapses (cusps) and blow-ups (poles), with a two-sample
    buffer.  Outside frac*median .. median/frac the polyline no longer
    resolves the curve and difference frames are meaningless."""
    n = len(mc.grid)
    good = mc.ok & np.isfinite(mc.points).all(axis=1)

    def shift(arr, k):
        if mc.closed:
            return np.roll(arr, -k, axis=0)
        out = np.empty_like(arr)
        if k >= 0:
            out[: n - k] = arr[k:]
            out[n - k:] = arr[-1]
        else:
            out[-k:] = arr[:k]
            out[: -k] = arr[0]
        return out

    with np.errstate(all="ignore"):
        central = shift(mc.points, 1) - shift(mc.points, -1)
        speed = np.hypot(central[:, 0], central[:, 1])
    ref = np.median(speed[good]) if good.any() else 0.0
    slow = (~good | ~np.isfinite(speed)
            | (speed < frac * ref) | (speed * frac > ref))
    wide = slow.copy()
    for k in (-2, -1, 1, 2):
        wide |= shift(slow, k)
    mask = good & ~wide
    if not mc.closed:
        mask[:2] = False
        mask[-2:] = False
    return mask


# ---------------------------------------------------------------------------
# suites


def _suite_inversion(curve: CurveDef, report: VerifyReport) -> None:
    rng = np.random.default_rng(20240811)
    n = 1_000_000
    radii = 10.0 ** rng.uniform(-3, 3, n)
    angles = rng.uniform(0, 2 * math.pi, n)
    pts = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    back = invert_xy(invert_xy(pts))
    rel = np.hypot(*(back - pts).T) / radii
    report.add("inversion is an involution (1e6 points)", rel.max(), 1e-12)

    m = 10_000
    x, y = pts[:m], pts[m:2 * m]
    lhs = np.hypot(*(invert_xy(x) - invert_xy(y)).T)
    rhs = np.hypot(*(x - y).T) / (np.hypot(*x.T) * np.hypot(*y.T))
    rel = np.abs(lhs - rhs) / np.maximum(rhs, 1e-300)
    report.add("inversion scales distances conformally", rel.max(), 1e-9)

    v = Vec2(0.6832, -1.977)
    report.add("perp twice negates", (perp(perp(v)) + v).norm(), 0.0)
    report.add("quarter turn equals perp",
               (rotate(v, math.pi / 2) - perp(v)).norm(), 1e-15 * v.norm())
    w = rotate(rotate(v, 0.71), -1.93)
    report.add("rotations add angles", (w - rotate(v, 0.71 - 1.93)).norm(), 1e-12)

    a_one = invert(invert(Vec2(3.25, -0.125)))
    report.add("scalar inversion involution",
               (a_one - Vec2(3.25, -0.125)).norm(), 1e-12)

    double = tr.invert_curve(tr.invert_curve(curve))
    ts = sample_grid(curve)
    report.add("curve double-inversion returns the curve",
               float(np.abs(position_xy(double, ts) - position_xy(curve, ts)).max()),
               1e-9)


def _suite_duality(curve: CurveDef, report: VerifyReport) -> None:
    ts = sample_grid(curve)
    inv = tr.invert_curve(curve)
    pr = tr.primitive(curve, ts)
    ape_inv = tr.antipedal(inv, ts)
    report.add("primitive = antipedal of inverted curve",
               _pair_diff(pr, ape_inv, relative=True), 1e-9)

    pe_inv = tr.pedal(inv, ts)
    lifted = invert_xy(pe_inv.points.copy())
    mask = pr.ok & pe_inv.ok & np.isfinite(lifted).all(axis=1)
    report.add("primitive = inversion of pedal of inverted curve",
               _rel_diff(pr.points, lifted, mask), 1e-9)

    pe = tr.pedal(curve, ts)
    ape = tr.antipedal(curve, ts)
    inv_ape = invert_xy(ape.points.copy())
    mask = pe.ok & ape.ok & np.isfinite(inv_ape).all(axis=1)
    report.add("pedal = inversion of antipedal", _diff(pe.points, inv_ape, mask), 1e-9)
    inv_pe = invert_xy(pe.points.copy())
    mask = pe.ok & ape.ok & np.isfinite(inv_pe).all(axis=1)
    report.add("antipedal = inversion of pedal",
               _rel_diff(ape.points, inv_pe, mask), 1e-9)

    lam = -2.5
    scaled = tr.transform_curve(curve, 0.0, lam)
    pe_scaled = tr.pedal(scaled, ts)
    report.add("pedal commutes with scaling",
               _diff(pe_scaled.points, lam * pe.points, pe.ok & pe_scaled.ok), 1e-9)


def _suite_parallel(curve: CurveDef, report: VerifyReport) -> None:
    ts = sample_grid(curve)
    pr = tr.primitive(curve, ts)
    for r in (2.0, -1.0):
        par = tr.parallel_primitivoid(curve, r, ts)
        report.add(f"parallel({r:g}) = {r:g} x primitive",
                   _diff(par.points, r * pr.points, par.ok & pr.ok), 1e-12)
        pr_scaled = tr.primitive(tr.transform_curve(curve, 0.0, r), ts)
        report.add(f"parallel({r:g}) = primitive of scaled curve",
                   _pair_diff(par, pr_scaled), 1e-9)
    one = tr.parallel_primitivoid(curve, 1.0, ts)
    report.add("parallel(1) = primitive", _pair_diff(one, pr), 0.0)


def _suite_slant(curve: CurveDef, report: VerifyReport) -> None:
    ts = sample_grid(curve)
    pr = tr.primitive(curve, ts)
    pr_perp = tr.primitive_of_perp(curve, ts)
    report.add("perp-primitive = J primitive",
               _diff(pr_perp.points, perp_xy(pr.points), pr.ok & pr_perp.ok), 0.0)
    for phi in (0.0, math.pi / 10, math.pi / 4, math.pi / 3, 2.0):
        sl = tr.slant_primitivoid(curve, phi, ts)
        combo = math.cos(phi) * (math.cos(phi) * pr.points + math.sin(phi) * pr_perp.points)
        report.add(f"slant({phi:.4g}) = cos phi (cos phi Pr + sin phi Pr-perp)",
                   _diff(sl.points, combo, sl.ok & pr.ok & pr_perp.ok), 1e-9)
        rotated_parallel = rotate_xy(tr.parallel_primitivoid(curve, math.cos(phi), ts).points, phi)
        report.add(f"slant({phi:.4g}) = rotated parallel(cos phi)",
                   _diff(sl.points, rotated_parallel, sl.ok & pr.ok), 1e-12)
        ape_inv_rot = tr.antipedal(tr.invert_curve(tr.transform_curve(curve, phi, 1.0)), ts)
        report.add(f"slant({phi:.4g}) = cos phi antipedal of inverted rotated curve",
                   _rel_diff(sl.points, math.cos(phi) * ape_inv_rot.points,
                             sl.ok & ape_inv_rot.ok), 1e-9)
    report.add("slant(0) = primitive",
               _pair_diff(tr.slant_primitivoid(curve, 0.0, ts), pr), 0.0)
    degenerate = tr.slant_primitivoid(curve, math.pi / 2, ts)
    worst = float(np.hypot(*degenerate.points[degenerate.ok].T).max())
    report.add("slant(pi/2) collapses to the origin",
               worst if degenerate.kind.degenerate_angle else math.inf, 1e-9)


def _suite_inverse_pair(curve: CurveDef, report: VerifyReport) -> None:
    # Difference frames on the mapped polyline converge at O(h^2); use a
    # dense grid so the bound holds even where the image bends sharply.
    ts = sample_grid(curve, max(4096, curve.samples))
    src = position_xy(curve, ts)

    pr = tr.primitive(curve, ts)
    back = tr.mapped_pedal(pr)
    mask = stable_mask(pr) & back.ok
    report.add("pedal of primitive returns the curve",
               _diff(back.points, src, mask), 1e-6)

    pe = tr.pedal(curve, ts)
    forth = tr.mapped_primitive(pe)
    mask = stable_mask(pe) & forth.ok
    report.add("primitive of pedal returns the curve",
               _diff(forth.points, src, mask), 1e-6)

    phi = math.pi / 10
    target = math.cos(phi) * position_xy(tr.transform_curve(curve, phi, 1.0), ts)
    sl = tr.slant_primitivoid(curve, phi, ts)
    pe_of_sl = tr.mapped_pedal(sl)
    mask = stable_mask(sl) & pe_of_sl.ok
    report.add("pedal of slant primitivoid = scaled rotated curve",
               _diff(pe_of_sl.points, target, mask), 1e-6)
    sl_of_pe = tr.mapped_slant(pe, phi)
    mask = stable_mask(pe) & sl_of_pe.ok
    report.add("slant primitivoid of pedal = scaled rotated curve",
               _diff(sl_of_pe.points, target, mask), 1e-6)


_ORACLE_CASES = (
    ("primitive", None, None),
    ("parallel", 2.0, None),
    ("parallel", -1.0, None),
    ("slant", None, math.pi / 10),
    ("slant", None, math.pi / 4),
    ("slant", None, math.pi / 3),
    ("antipedal", None, None),
)


def _suite_oracle(curve: CurveDef, report: VerifyReport) -> None:
    ts = sample_grid(curve)
    flag_mismatch = 0
    for kind, r, phi in _ORACLE_CASES:
        fam = make_family(kind, curve, r=r, phi=phi)
        env = envelope(fam, ts)
        if kind == "primitive":
            closed = tr.primitive(curve, ts)
        elif kind == "parallel":
            closed = tr.parallel_primitivoid(curve, r, ts)
        elif kind == "slant":
            closed = tr.slant_primitivoid(curve, phi, ts)
        else:
            closed = tr.antipedal(curve, ts)
        tag = fam.kind.label()
        report.add(f"envelope matches closed form {tag}",
                   _pair_diff(env, closed, relative=True), 1e-9)
        flag_mismatch += int((~env.ok & closed.ok).sum())
    report.add("envelope degeneracies are flagged by the closed form too",
               float(flag_mismatch), 0.0)
    report.add("pedal circles: incidence and inversion to lines",
               circle_family_check(curve, ts), 1e-9)


def _suite_singularity(curve: CurveDef, report: VerifyReport) -> None:
    n = max(4096, curve.samples)
    ts = sample_grid(curve, n)
    fg = frenet_grid(curve, ts)
    speeds = fg.speed[fg.regular]
    if (~fg.regular).any() or speeds.min() < 1e-3 * np.median(speeds):
        # Cusp criterion, vertex matching, and bisection refinement all
        # assume a regular source curve; run the frontal suite instead.
        raise HypothesisViolated(
            f"curve '{curve.name}' has singular or near-singular samples;"
            " the singularity suite needs a regular curve")
    reports = sg.primitive_singularities(curve, ts)
    worst_resid = max((r.residual for r in reports), default=0.0)
    report.add("criterion roots refined to tolerance", worst_resid, 1e-10)

    cusp_ts = [r.t for r in reports if r.classification == "ordinary-cusp"]
    witness = 0.0
    inflect = 0.0
    sign_ok = True
    h = ts[1] - ts[0]
    for t0 in cusp_ts:
        cls = sg.classify_cusp(curve, t0)
        witness = max(witness, cls.circle_witness)
        inflect = max(inflect, abs(tr.inversion_curvature(curve, t0)))
        left = tr.inversion_curvature(curve, t0 - h)
        right = tr.inversion_curvature(curve, t0 + h)
        sign_ok &= (left < 0.0) != (right < 0.0)
    report.add("osculating circle passes through origin at cusps", witness, 1e-8)
    report.add("inverted curve has zero curvature at cusps", inflect, 1e-8)
    report.add("inverted-curve curvature changes sign at cusps",
               0.0 if sign_ok else math.inf, 0.0)

    kpa = fg.kappa_prime_arc
    kpsi = tr.inversion_curvature_grid(curve, ts)
    dk = (np.roll(kpsi, -1) - np.roll(kpsi, 1)) / (2 * h) if curve.closed else np.gradient(kpsi, h)
    if np.abs(kpa).max() < 1e-10 and np.abs(dk).max() < 1e-8:
        # Constant curvature: both sides vanish identically and sign scans
        # would chase rounding noise.
        report.add("vertices = extrema of inversion curvature", 0.0, 2 * h)
    else:
        vertex_roots = [t for t, _ in sg.find_roots(
            lambda t: frenet(curve, t).kappa_prime_arc, ts, values=kpa)]
        delta = 1e-6 * (curve.t_max - curve.t_min)

        def dk_scalar(t):
            lo = max(t - delta, curve.t_min)
            hi = min(t + delta, curve.t_max)
            return (tr.inversion_curvature(curve, hi)
                    - tr.inversion_curvature(curve, lo)) / (hi - lo)

        ext_roots = [t for t, _ in sg.find_roots(dk_scalar, ts, values=dk)]
        if len(vertex_roots) == len(ext_roots):
            gap = max((abs(a - b)
                       for a, b in zip(sorted(vertex_roots), sorted(ext_roots))),
                      default=0.0)
        else:
            gap = math.inf
        report.add("vertices = extrema of inversion curvature", gap, 2 * h)

    fd = _fd_curvature_of_inverted(curve, ts)
    closed = tr.inversion_curvature_grid(curve, ts)
    scale = np.abs(closed).max()
    mask = np.isfinite(fd)
    rel = np.abs(fd[mask] - closed[mask]) / np.maximum(np.abs(closed[mask]), 1e-3 * scale)
    report.add("inversion curvature matches finite differences", rel.max(), 1e-5)

    pr = tr.primitive(curve, ts)
    found = sg.detect_cusps_numeric(pr)
    targets = [r.t for r in reports if r.classification == "ordinary-cusp"]
    if len(found) == len(targets):
        gap = max((abs(a - b) for a, b in zip(sorted(found), sorted(targets))), default=0.0)
    else:
        gap = math.inf
    report.add("numeric cusp detector agrees with the criterion", gap, h + 1e-12)


def _fd_curvature_of_inverted(curve: CurveDef, ts: np.ndarray) -> np.ndarray:
    """Finite-difference curvature of the pointwise-inverted samples."""
    pts = invert_xy(position_xy(curve, ts))
    n = len(ts)
    h = ts[1] - ts[0]

    def shift(arr, k):
        if curve.closed:
            return np.roll(arr, -k, axis=0)
        out = np.empty_like(arr)
        if k >= 0:
            out[: n - k] = arr[k:]
            out[n - k:] = np.nan
        else:
            out[-k:] = arr[:k]
            out[: -k] = np.nan
        return out

    with np.errstate(all="ignore"):
        d1 = (shift(pts, -2) - 8 * shift(pts, -1) + 8 * shift(pts, 1) - shift(pts, 2)) / (12 * h)
        d2 = (-shift(pts, -2) + 16 * shift(pts, -1) - 30 * pts
              + 16 * shift(pts, 1) - shift(pts, 2)) / (12 * h * h)
        speed = np.hypot(d1[:, 0], d1[:, 1])
        kappa = (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]) / speed**3
    return kappa


def _output_normal_residual(lc: "fr.LegendrianCurve", mask: np.ndarray) -> float:
    """Max |<Pr', nu_out>| / max(1, |Pr'|) with Pr' differentiated
    analytically through the lift (nu' = ell mu), so cusps of the output
    cost nothing.  A rotation R(phi) cancels from both factors, so this
    one residual covers every slant angle."""
    gamma = position_xy(lc.curve, lc.ts)
    dgamma = velocity_xy(lc.curve, lc.ts)
    nu = lc.nu_grid
    mu = perp_xy(nu)
    n2 = (gamma * gamma).sum(axis=1)
    q = (gamma * nu).sum(axis=1)
    n2p = 2.0 * (gamma * dgamma).sum(axis=1)
    qp = (dgamma * nu).sum(axis=1) + lc.ell_grid * (gamma * mu).sum(axis=1)
    with np.errstate(all="ignore"):
        coef = (n2p * q - n2 * qp) / (q * q)
        dpr = (2.0 * dgamma - coef[:, None] * nu
               - (n2 / q * lc.ell_grid)[:, None] * mu)
        num = np.abs((dpr * gamma).sum(axis=1)) / np.sqrt(n2)
        resid = num / np.maximum(1.0, np.hypot(dpr[:, 0], dpr[:, 1]))
    mask = mask & np.isfinite(resid)
    return float(resid[mask].max()) if mask.any() else math.inf


def _suite_frontal(curve: CurveDef, report: VerifyReport) -> None:
    n = max(4096, curve.samples)
    ts = sample_grid(curve, n)
    lc = fr.lift_front(curve, ts)
    report.add("legendrian residual of the lift", fr.legendrian_residual(lc), 1e-8)

    # frame closure, with the normal derivative from finite differences
    h = ts[1] - ts[0]
    nu = lc.nu_grid
    mu = perp_xy(nu)
    if curve.closed:
        nudot = (np.roll(nu, 2, axis=0) - 8 * np.roll(nu, 1, axis=0)
                 + 8 * np.roll(nu, -1, axis=0) - np.roll(nu, -2, axis=0)) / (12 * h)
        mudot = perp_xy(nudot)
        inner = np.ones(len(ts), dtype=bool)
    else:
        nudot = np.gradient(nu, h, axis=0)
        mudot = perp_xy(nudot)
        inner = np.zeros(len(ts), dtype=bool)
        inner[2:-2] = True
    r1 = np.hypot(*(nudot - lc.ell_grid[:, None] * mu).T)
    r2 = np.hypot(*(mudot + lc.ell_grid[:, None] * nu).T)
    report.add("frame closure nu' = ell mu", float(r1[inner].max()), 1e-6)
    report.add("frame closure mu' = -ell nu", float(r2[inner].max()), 1e-6)

    fg = frenet_grid(curve, ts)
    reg = fg.regular
    gap = np.abs(lc.ell_grid[reg] - fg.speed[reg] * fg.kappa[reg])
    report.add("ell = speed x curvature on regular arcs", float(gap.max()), 1e-9)

    sf = lc.sample()
    flipped = sf.flip_nu()
    worst = 0.0
    for op in (fr.frontal_pedal, fr.frontal_antipedal):
        a, b = op(sf), op(flipped)
        worst = max(worst, _pair_diff(a, b))
    for op in (fr.frontal_primitive,
               lambda s: fr.frontal_slant_primitivoid(s, math.pi / 10)):
        a, b = op(sf), op(flipped)
        worst = max(worst, _diff(a.points, b.points, a.ok & b.ok))
    report.add("transforms invariant under nu -> -nu", worst, 1e-15)

    pr_f = fr.frontal_primitive(sf)
    report.add("primitivoid outputs are frontals (exact derivative)",
               _output_normal_residual(lc, pr_f.ok), 1e-10)

    # composition of slants: the general law lands on the primitivoid of
    # the primitive, the literal angle-addition form holds for
    # origin-centered circles (see the circle rows below)
    psi, phi = math.pi / 10, math.pi / 5
    two_step = fr.frontal_slant_primitivoid(
        fr.frontal_slant_primitivoid(sf, phi), psi)
    one_step = fr.frontal_slant_primitivoid(pr_f, psi + phi)
    both = two_step.ok & one_step.ok
    report.add("slant(psi) of slant(phi) = slant(psi+phi) of primitive",
               _rel_diff(math.cos(psi + phi) * two_step.points,
                         math.cos(psi) * math.cos(phi) * one_step.points, both),
               1e-9)

    circle_lift = fr.lift_front(builtin_curve("circle", samples=1024))
    report.add("circle slant composition adds angles (pi/10, pi/5)",
               fr.composition_check(circle_lift, math.pi / 10, math.pi / 5), 1e-9)
    report.add("circle slant composition adds angles (pi/6, pi/6)",
               fr.composition_check(circle_lift, math.pi / 6, math.pi / 6), 1e-9)

    psi = phi = math.pi / 4
    inner_f = fr.frontal_slant_primitivoid(sf, phi)
    outer_f = fr.frontal_slant_primitivoid(inner_f, psi)
    lhs = math.cos(psi + phi) * outer_f.points
    rhs_f = fr.frontal_slant_primitivoid(sf, psi + phi)
    rhs = math.cos(psi) * math.cos(phi) * rhs_f.points
    both = outer_f.ok & rhs_f.ok
    lhs_n = float(np.hypot(*lhs[both].T).max()) if both.any() else math.inf
    rhs_n = float(np.hypot(*rhs[both].T).max()) if both.any() else math.inf
    report.add("degenerate composition: both sides vanish", max(lhs_n, rhs_n), 1e-9)

    inv_sf = fr.invert_frontal(sf)
    pe_inv = fr.frontal_pedal(inv_sf)
    lifted = invert_xy(pe_inv.points.copy())
    mask = pr_f.ok & pe_inv.ok & np.isfinite(lifted).all(axis=1)
    report.add("primitive = inversion of pedal of inverted frontal",
               _rel_diff(lifted, pr_f.points, mask), 1e-9)


_SUITE_FNS = {
    "inversion": _suite_inversion,
    "duality": _suite_duality,
    "parallel": _suite_parallel,
    "slant": _suite_slant,
    "inverse-pair": _suite_inverse_pair,
    "oracle": _suite_oracle,
    "singularity": _suite_singularity,
    "frontal": _suite_frontal,
}


def run_suite(suite: str, curve: CurveDef) -> VerifyReport:
    if suite not in SUITES:
        raise RangeError(f"unknown suite {suite!r}; choices: {', '.join(SUITES)}")
    report = VerifyReport(suite, curve.name)
    if suite == "all":
        for name in SUITES[:-1]:
            try:
                _SUITE_FNS[name](curve, report)
            except HypothesisViolated:
                # A suite whose identities do not apply to this curve is not
                # a failure; requesting it alone still raises.
                report.add(f"{name} suite skipped: hypotheses not met", 0.0, 0.0)
    else:
        _SUITE_FNS[suite](curve, report)
    return report
