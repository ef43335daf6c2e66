"""Programmatic invariant suites behind `steindist verify` (and reused by the
test suite). Each check returns (name, passed, detail)."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import distances, distributions, oracles, stein_core, stein_factors
from .distributions import (
    Beta, Binomial, Distribution, Exponential, Frechet, Gamma, Hypergeometric,
    NegBinomial, Normal, Poisson, Rayleigh, RayleighApproxN, ScaledParetoMax,
    StdBinomial, StudentT,
)
from .stein_core import SteinContext, TestFunction, canonical_apply, canonical_inverse, expect, solve

Check = tuple[str, bool, str]

CONTINUOUS_ENTRIES = [
    Normal(0.0, 1.0), Normal(1.5, 2.0), Exponential(1.0), Exponential(2.5),
    Gamma(2.5, 1.5), Gamma(0.5, 2.0), Beta(2.0, 3.0), Beta(0.8, 1.2),
    StudentT(5.0), Frechet(2.0), Rayleigh(), ScaledParetoMax(10, 2.5),
    RayleighApproxN(100),
]
LATTICE_ENTRIES = [
    Poisson(3.0), Binomial(20, 0.3), NegBinomial(2.5, 0.4),
    Hypergeometric(10, 20, 50), StdBinomial(50, 0.3),
]


def _check(name: str, passed: bool, detail: str) -> Check:
    return (name, bool(passed), detail)


def _interior_grid(dist: Distribution, n: int) -> list[float]:
    if dist.support.lattice:
        pts = dist.lattice_points()
        return pts[1:-1] if len(pts) > n else pts
    return dist.quantile_grid(n, qmin=1e-3)


# ---------------------------------------------------------------------------
# identities suite
# ---------------------------------------------------------------------------

def suite_identities(seed: int = 1) -> list[Check]:
    checks: list[Check] = []

    for d in CONTINUOUS_ENTRIES:
        mass = expect(d, lambda u: 1.0)
        checks.append(_check(f"normalization:{d}", abs(mass - 1.0) < 1e-10,
                             f"|mass-1|={abs(mass - 1.0):.2e}"))
    for d in LATTICE_ENTRIES:
        mass = sum(d.pdf(x) for x in d.lattice_points())
        checks.append(_check(f"normalization:{d}", abs(mass - 1.0) < 1e-10,
                             f"|mass-1|={abs(mass - 1.0):.2e}"))

    for d in CONTINUOUS_ENTRIES + LATTICE_ENTRIES:
        worst = max(abs(d.cdf(x) + d.sf(x) - 1.0) for x in _interior_grid(d, 1000))
        checks.append(_check(f"cdf+sf:{d}", worst < 1e-12, f"worst={worst:.2e}"))

    # closed-form scores vs log-density differences
    for d in CONTINUOUS_ENTRIES:
        worst = 0.0
        for x in _interior_grid(d, 41):
            h = 1e-5 * max(1.0, abs(x))
            lo, hi = d.support.lower, d.support.upper
            if x - h <= lo or x + h >= hi:
                continue
            fd = (d.log_pdf(x + h) - d.log_pdf(x - h)) / (2.0 * h)
            worst = max(worst, abs(d.score(0, x) - fd))
        checks.append(_check(f"score-fd:{d}", worst < 1e-6, f"worst={worst:.2e}"))
    for d in LATTICE_ENTRIES:
        worst = 0.0
        s = d.support.step
        for x in _interior_grid(d, 64):
            for ell in (-1, 1):
                exact = (d.pdf(x + ell * s) - d.pdf(x)) / (ell * s * d.pdf(x))
                worst = max(worst, abs(d.score(ell, x) - exact))
        checks.append(_check(f"score-exact:{d}", worst < 1e-9, f"worst={worst:.2e}"))

    # kernels: closed form vs defining sums/integrals, duality, mean identity
    for d in CONTINUOUS_ENTRIES:
        try:
            mu = d.mean
        except distributions.UnsupportedError:
            continue
        worst = 0.0
        for x in _interior_grid(d, 21):
            direct = distributions._tau_by_quadrature(d, x, mu)
            worst = max(worst, abs(d.stein_kernel(0, x) - direct))
        checks.append(_check(f"kernel-quad:{d}", worst < 1e-8, f"worst={worst:.2e}"))
    for d in LATTICE_ENTRIES:
        s = d.support.step
        worst_dual = 0.0
        worst_mean = 0.0
        for x in _interior_grid(d, 64):
            tp = d.stein_kernel(1, x)
            tm = d.stein_kernel(-1, x)
            if d.support.contains(x + s):
                lhs = d.stein_kernel(1, x + s) * d.pdf(x + s)
                worst_dual = max(worst_dual, abs(lhs - tm * d.pdf(x)))
            worst_mean = max(worst_mean, abs((x - d.mean) - (tp - tm)))
        checks.append(_check(f"kernel-duality:{d}", worst_dual < 1e-12,
                             f"worst={worst_dual:.2e}"))
        checks.append(_check(f"kernel-mean-id:{d}", worst_mean < 1e-9,
                             f"worst={worst_mean:.2e}"))

    # inverse property, kernel expectation identities, Stein residuals
    checks.extend(inverse_property_checks())
    checks.extend(kernel_expectation_checks())
    checks.extend(stein_identity_checks(seed))
    checks.extend(solution_residual_checks())
    checks.extend(shift_identity_checks())
    return checks


def inverse_property_checks(n_points: int = 100) -> list[Check]:
    checks = []
    h_sq = TestFunction.generic(lambda u: u * u, dfn=lambda u: 2.0 * u)
    cases: list[tuple[Distribution, TestFunction, str]] = []
    for d in [Normal(0.0, 1.0), Exponential(1.3), Gamma(2.5, 1.5), Beta(2.0, 3.0),
              StudentT(6.0), Rayleigh(), Frechet(2.0)]:
        cases.append((d, TestFunction.identity(), "Id"))
        cases.append((d, h_sq, "sq"))
        cases.append((d, TestFunction.half_line(d.quantile(0.35)), "half"))
    for d in LATTICE_ENTRIES:
        xi = float(round(d.mean))
        cases.append((d, TestFunction.identity(), "Id"))
        cases.append((d, TestFunction.half_line(xi), "half"))
        cases.append((d, TestFunction.point_mass(xi), "point"))

    for d, h, label in cases:
        if label == "Id":
            try:
                d.mean
            except distributions.UnsupportedError:
                continue
        mean_h = h.mean(d)
        worst = 0.0
        if d.support.lattice:
            for ell in (-1, 1):
                for x in _interior_grid(d, 50):
                    lh = lambda t, e=ell: canonical_inverse(d, e, h, t, mean_h=mean_h)
                    val = canonical_apply(d, ell, lh, x)
                    worst = max(worst, abs(val - (h(x) - mean_h)))
        else:
            grid = d.quantile_grid(n_points, qmin=2e-3)
            for x in grid:
                lh = lambda t: canonical_inverse(d, 0, h, t, mean_h=mean_h)
                step = 5e-4 * max(1.0, abs(x))
                lo, hi = d.support.lower, d.support.upper
                if x - step <= lo or x + step >= hi:
                    continue
                d1 = (lh(x + step) - lh(x - step)) / (2.0 * step)
                d2 = (lh(x + 0.5 * step) - lh(x - 0.5 * step)) / step
                deriv = (4.0 * d2 - d1) / 3.0
                val = deriv + lh(x) * d.score(0, x)
                worst = max(worst, abs(val - (h(x) - mean_h)))
        checks.append(_check(f"inverse:{d}:{label}", worst < 1e-8, f"worst={worst:.2e}"))
    return checks


def kernel_expectation_checks() -> list[Check]:
    checks = []
    cases = [(Normal(0.0, 1.0), 0, (-1.2, 0.4, 1.7)), (Gamma(2.0, 1.0), 0, (0.6, 1.8, 4.0)),
             (Beta(2.0, 3.0), 0, (0.2, 0.5, 0.8)), (Rayleigh(), 0, (0.4, 1.0, 1.9)),
             (Poisson(3.0), 1, (1.0, 3.0, 6.0)), (Poisson(3.0), -1, (1.0, 3.0, 6.0)),
             (Binomial(20, 0.3), 1, (3.0, 6.0, 10.0)), (NegBinomial(2.5, 0.4), -1, (1.0, 2.0, 4.0))]
    for d, ell, xs in cases:
        worst_k = 0.0
        worst_r = 0.0
        for x in xs:
            ek = expect(d, lambda u: stein_core.kernel_Ktilde(d, ell, x, u), points=(x,))
            er = expect(d, lambda u: stein_core.kernel_R(d, ell, x, u), points=(x,))
            worst_k = max(worst_k, abs(ek - d.stein_kernel(ell, x)))
            worst_r = max(worst_r, abs(er - (x - d.mean)))
        checks.append(_check(f"E[Ktilde]=tau:{d}:ell={ell}", worst_k < 1e-8,
                             f"worst={worst_k:.2e}"))
        checks.append(_check(f"E[R]=x-mu:{d}:ell={ell}", worst_r < 1e-8,
                             f"worst={worst_r:.2e}"))
    return checks


def stein_identity_checks(seed: int = 1) -> list[Check]:
    checks = []
    n = Normal(0.0, 1.0)
    ctx = SteinContext(n, 0, "one")
    res = stein_core.identity_residual(ctx, lambda x: x * x, dg=lambda x: 2.0 * x)
    checks.append(_check("identity:normal-c1-x^2", abs(res) < 1e-9, f"res={res:.2e}"))

    e = Exponential(1.0)
    ctx = SteinContext(e, 0, "custom", c=lambda x: x, dc=lambda x: 1.0)
    g = lambda x: x / (1.0 + x * x)
    dg = lambda x: (1.0 - x * x) / (1.0 + x * x) ** 2
    res = stein_core.identity_residual(ctx, g, dg=dg)
    checks.append(_check("identity:exp-cx", abs(res) < 1e-8, f"res={res:.2e}"))

    p = Poisson(2.5)
    ctx = SteinContext(p, -1, "kernel")
    res = stein_core.identity_residual(ctx, lambda x: x)
    checks.append(_check("identity:poisson-kernel-Id", abs(res) < 1e-10, f"res={res:.2e}"))

    res, stderr = _mc_identity(n, seed)
    checks.append(_check("identity:mc-normal", abs(res) < 5.0 * stderr,
                         f"res={res:.2e} stderr={stderr:.2e}"))
    return checks


def _mc_identity(n: Normal, seed: int) -> tuple[float, float]:
    g = lambda x: math.sin(x)
    dg = lambda x: math.cos(x)
    f = lambda x: dg(x) - x * g(x)
    return oracles.mc_expectation(n, f, seed=seed, n=100_000)


def solution_residual_checks() -> list[Check]:
    checks = []
    cases = [
        (SteinContext(Normal(0.0, 1.0), 0, "one"), TestFunction.half_line(0.0)),
        (SteinContext(Exponential(1.0), 0, "one"), TestFunction.half_line(2.0)),
        (SteinContext(Exponential(1.0), 0, "kernel"), TestFunction.half_line(0.5)),
        (SteinContext(Gamma(2.0, 2.0), 0, "kernel"), TestFunction.identity()),
        (SteinContext(Beta(2.0, 3.0), 0, "one"), TestFunction.half_line(0.4)),
        (SteinContext(Poisson(3.0), -1, "kernel"), TestFunction.point_mass(2.0)),
        (SteinContext(Poisson(3.0), 1, "one"), TestFunction.point_mass(1.0)),
        (SteinContext(Binomial(20, 0.3), -1, "kernel"), TestFunction.point_mass(5.0)),
        (SteinContext(NegBinomial(2.5, 0.4), 1, "kernel"), TestFunction.half_line(2.0)),
    ]
    for ctx, h in cases:
        sol = solve(ctx, h)
        xs = _interior_grid(ctx.dist, 60)
        worst = max(abs(sol.residual(x)) for x in xs)
        checks.append(_check(f"stein-eq:{ctx.dist}:ell={ctx.ell}:{h.kind}",
                             worst < 1e-8, f"worst={worst:.2e}"))

    # closed-form solutions match the quadrature/partial-sum route
    for ctx, h in cases:
        sol = solve(ctx, h)
        if not sol.closed_form:
            continue
        dist, ell = ctx.dist, ctx.ell
        s = stein_core.lattice_step(dist)
        h_mean = h.mean(dist)
        worst = 0.0
        for x in _interior_grid(dist, 25):
            y = x + ell * s
            if not dist.support.contains(y):
                continue
            via_quad = canonical_inverse(dist, ell, lambda u: h(u), y,
                                         mean_h=h_mean) / ctx.c(y)
            worst = max(worst, abs(via_quad - sol.g(x)))
        tol = 1e-12 if dist.support.lattice else 1e-8
        checks.append(_check(f"closed-vs-quad:{ctx.dist}:ell={ctx.ell}:{h.kind}",
                             worst < tol, f"worst={worst:.2e}"))
    return checks


def shift_identity_checks() -> list[Check]:
    checks = []
    for d in [Poisson(3.0), Binomial(20, 0.3)]:
        xi = float(round(d.mean))
        h = TestFunction.point_mass(xi)
        sol_p = solve(SteinContext(d, 1, "kernel"), h)
        sol_m = solve(SteinContext(d, -1, "kernel"), h)
        worst_g = 0.0
        worst_dg = 0.0
        for x in _interior_grid(d, 40):
            if d.support.contains(x + 1.0):
                worst_g = max(worst_g, abs(sol_p.g(x) - sol_m.g(x + 1.0)))
            worst_dg = max(worst_dg, abs(sol_p.dg(x) - sol_m.dg(x)))
        checks.append(_check(f"shift:g+[x]=g-[x+1]:{d}", worst_g < 1e-12,
                             f"worst={worst_g:.2e}"))
        checks.append(_check(f"shift:dg+=dg-:{d}", worst_dg < 1e-12,
                             f"worst={worst_dg:.2e}"))
    return checks


def representation_checks() -> list[Check]:
    checks = []
    n = Normal(0.0, 1.0)
    ctx = SteinContext(n, 0, "kernel")
    res = stein_core.representation_check(ctx, TestFunction.half_line(0.0),
                                          [-1.5, -0.5, 0.3, 1.1])
    checks.append(_check("representation:normal-halfline", res["max"] < 1e-6,
                         f"max={res['max']:.2e}"))
    p = Poisson(3.0)
    res = stein_core.representation_check(SteinContext(p, -1, "kernel"),
                                          TestFunction.point_mass(1.0),
                                          [1.0, 2.0, 4.0, 7.0])
    checks.append(_check("representation:poisson-pointmass", res["max"] < 1e-10,
                         f"max={res['max']:.2e}"))
    res = stein_core.representation_check(SteinContext(p, 1, "kernel"),
                                          TestFunction.half_line(3.0),
                                          [1.0, 2.0, 4.0])
    checks.append(_check("representation:poisson-halfline", res["max"] < 1e-10,
                         f"max={res['max']:.2e}"))
    g = Gamma(2.0, 1.0)
    res = stein_core.representation_check(
        SteinContext(g, 0, "kernel"),
        TestFunction.lipschitz(lambda x: math.tanh(x), lambda x: 1.0 / math.cosh(x) ** 2),
        [0.7, 1.5, 3.0])
    checks.append(_check("representation:gamma-lipschitz", res["max"] < 1e-6,
                         f"max={res['max']:.2e}"))
    return checks


# ---------------------------------------------------------------------------
# factors suite
# ---------------------------------------------------------------------------

def suite_factors(seed: int = 1) -> list[Check]:
    checks: list[Check] = []
    n01 = Normal(0.0, 1.0)
    ctx = SteinContext(n01, 0, "kernel")
    for xi in (-0.5, 0.0, 1.0):
        h = TestFunction.half_line(xi)
        sol = solve(ctx, h)
        bound = stein_factors.factor_bound(ctx, h, "g_k1")
        worst = min(bound.pointwise(x) - abs(sol.g(x))
                    for x in [-6.0 + 12.0 * i / 399 for i in range(400)])
        checks.append(_check(f"gauss-dominance:xi={xi}", worst >= -1e-9,
                             f"min gap={worst:.2e}"))
    uniform = stein_factors.specialized_bounds(n01, "kernel")["g_k1"].uniform()
    target = 0.5 * math.sqrt(math.pi / 2.0)
    checks.append(_check("gauss-uniform-const", abs(uniform - target) < 1e-12,
                         f"|diff|={abs(uniform - target):.2e}"))
    # nonuniform curve never exceeds the classical constant
    mills_sup = max(n01.mills_ratio(x) for x in [-8.0 + 16.0 * i / 799 for i in range(800)])
    checks.append(_check("gauss-nonuniform<=uniform", mills_sup <= target + 1e-12,
                         f"sup={mills_sup:.15f}"))

    checks.extend(poisson_figure_checks())
    checks.extend(pointmass_exactness_checks())
    checks.extend(dominance_sweep_checks())
    return checks


def poisson_figure_checks(lam: float = 10.0, kmax: int = 60) -> list[Check]:
    checks = []
    d = Poisson(lam)
    spec = stein_factors.specialized_bounds(d, "kernel")
    cap_g = min(1.0, math.sqrt(2.0 / lam))
    cap_dg = min(1.0, 8.0 / (3.0 * math.sqrt(2.0 * math.e * lam)))
    worst_g = max(spec["g_nonuniform"].pointwise(float(k)) - cap_g for k in range(kmax + 1))
    worst_dg = max(spec["dg_k2"].pointwise(float(k)) - cap_dg for k in range(kmax + 1))
    checks.append(_check("poisson-g-improves", worst_g < 0.0, f"max excess={worst_g:.2e}"))
    checks.append(_check("poisson-dg-improves", worst_dg <= 0.0, f"max excess={worst_dg:.2e}"))
    report = stein_factors.monotone_ratio_check(d, 2.0)
    checks.append(_check("poisson-monotone-ratio", report.passed, "xi=2"))
    return checks


def pointmass_exactness_checks() -> list[Check]:
    checks = []
    for d, xis in [(Poisson(10.0), range(0, 31)), (Binomial(20, 0.3), range(0, 20))]:
        ctx = SteinContext(d, -1, "kernel")
        worst = 0.0
        for xi in xis:
            bounds = stein_factors.discrete_pointmass_bounds(d, float(xi))
            sol = solve(ctx, TestFunction.point_mass(float(xi)))
            pts = d.lattice_points()
            sup_dg = max(abs(sol.dg(x)) for x in pts)
            sup_g = max(abs(sol.g(x)) for x in pts)
            worst = max(worst, abs(sup_dg - bounds.sup_dg))
            if sup_g > bounds.sup_g + 1e-12:
                worst = max(worst, sup_g - bounds.sup_g)
        checks.append(_check(f"pointmass-exact:{d}", worst < 1e-12, f"worst={worst:.2e}"))
    return checks


def dominance_sweep_checks(points: int = 200) -> list[Check]:
    """Each applicable generic bound dominates |g| / |dg| for half-line h."""
    checks = []
    cases = [
        (SteinContext(Normal(0.0, 1.0), 0, "kernel"), (-0.5, 0.0, 1.0)),
        (SteinContext(Exponential(1.0), 0, "one"), (0.5, 2.0, 5.0)),
        (SteinContext(Exponential(1.0), 0, "kernel"), (0.5, 2.0)),
        (SteinContext(Gamma(2.0, 2.0), 0, "kernel"), (0.5, 1.5)),
        (SteinContext(Beta(2.0, 3.0), 0, "one"), (0.3, 0.6)),
        (SteinContext(StudentT(6.0), 0, "kernel"), (-1.0, 0.5)),
        (SteinContext(Rayleigh(), 0, "one"), (0.7, 1.4)),
        (SteinContext(Poisson(5.0), -1, "kernel"), (2.0, 5.0, 8.0)),
        (SteinContext(Binomial(20, 0.3), 1, "kernel"), (3.0, 6.0)),
        (SteinContext(NegBinomial(2.5, 0.4), -1, "kernel"), (1.0, 3.0)),
    ]
    for ctx, xis in cases:
        dist = ctx.dist
        xs = _interior_grid(dist, points)
        worst = math.inf
        worst_kind = ""
        for xi in xis:
            h = TestFunction.half_line(xi)
            sol = solve(ctx, h)
            for bound in stein_factors.factor_bounds(ctx, h):
                ref = sol.dg if bound.kind.startswith("dg") else sol.g
                for x in xs:
                    gap = bound.pointwise(x) - abs(ref(x))
                    if gap < worst:
                        worst, worst_kind = gap, f"{bound.kind}@x={x:.3g},xi={xi}"
        checks.append(_check(f"dominance:{dist}:ell={ctx.ell}", worst >= -1e-9,
                             f"min gap={worst:.2e} ({worst_kind})"))
    return checks


# ---------------------------------------------------------------------------
# distances suite
# ---------------------------------------------------------------------------

def suite_distances(seed: int = 1) -> list[Check]:
    checks: list[Check] = []
    checks.extend(identity_exactness_checks(seed))
    checks.extend(bound_dominance_checks())
    checks.extend(metric_ordering_checks())
    return checks


def identity_exactness_checks(seed: int = 1, n_cases: int = 20) -> list[Check]:
    """Score and kernel identities reproduce E[h(X_n)] - E[h(X_inf)]."""
    rng = np.random.default_rng(seed)
    pairs = [
        (StudentT(8.0), Normal(0.0, 1.0), 0),
        (Normal(0.3, 1.0), Normal(0.0, 1.0), 0),
        (Normal(0.0, 1.3), Normal(0.0, 1.0), 0),
        (Gamma(2.0, 2.0), Gamma(2.5, 2.0), 0),
        (Beta(2.0, 3.0), Gamma(2.0, 5.0), 0),
        (Exponential(1.0), Gamma(2.0, 2.0), 0),
        (RayleighApproxN(50), Rayleigh(), 0),
        (Poisson(2.0), Poisson(2.5), -1),
        (Poisson(2.0), Poisson(2.5), 1),
        (Binomial(30, 0.1), Poisson(3.0), 1),
        (Binomial(30, 0.1), Poisson(3.0), -1),
        (NegBinomial(4.0, 0.3), Poisson(12.0 / 7.0), -1),
    ]
    worst_score = 0.0
    worst_kernel = 0.0
    count = 0
    for approx, target, ell in pairs:
        if count >= n_cases:
            break
        prob = distances.ComparisonProblem(approx, target, "tv", "score", ell)
        z = float(target.quantile(float(rng.uniform(0.2, 0.8))))
        if target.support.lattice:
            z = float(round(z))
        for h in (TestFunction.half_line(z), TestFunction.identity()):
            try:
                target.mean, approx.mean
            except distributions.UnsupportedError:
                continue
            direct = expect(approx, h) - expect(target, h)
            via_score, _ = distances.diff_expectation_score(prob, h)
            worst_score = max(worst_score, abs(via_score - direct))
            via_kernel, _ = distances.diff_expectation_kernel(prob, h)
            worst_kernel = max(worst_kernel, abs(via_kernel - direct))
            count += 1
    checks = [
        _check("identity-score-exactness", worst_score < 1e-7, f"worst={worst_score:.2e}"),
        _check("identity-kernel-exactness", worst_kernel < 1e-7, f"worst={worst_kernel:.2e}"),
    ]
    mean_gap, _ = distances.diff_expectation_score(
        distances.ComparisonProblem(Poisson(2.0), Poisson(2.5), "tv", "score", -1),
        TestFunction.identity())
    checks.append(_check("poisson-mean-identity", abs(mean_gap - (-0.5)) < 1e-10,
                         f"|diff|={abs(mean_gap + 0.5):.2e}"))
    return checks


def bound_dominance_checks() -> list[Check]:
    checks = []
    cases = [
        ("kol", distances.ComparisonProblem(StudentT(40.0), Normal(0.0, 1.0)), "score"),
        ("kol", distances.ComparisonProblem(StudentT(40.0), Normal(0.0, 1.0)), "kernel"),
        ("wass", distances.ComparisonProblem(StudentT(40.0), Normal(0.0, 1.0)), "score"),
        ("wass", distances.ComparisonProblem(StudentT(40.0), Normal(0.0, 1.0)), "kernel"),
        ("tv", distances.ComparisonProblem(Beta(2.0, 3.0), Gamma(2.0, 5.0)), "score"),
        ("tv", distances.ComparisonProblem(Gamma(2.0, 5.0), Beta(2.0, 3.0)), "score"),
        ("tv", distances.ComparisonProblem(Binomial(40, 0.025), Poisson(1.0), ell=1), "score"),
        ("tv", distances.ComparisonProblem(Binomial(40, 0.025), Poisson(1.0), ell=-1), "score"),
        ("tv", distances.ComparisonProblem(Binomial(40, 0.025), Poisson(1.0), ell=1), "kernel"),
        ("kol", distances.ComparisonProblem(RayleighApproxN(100), Rayleigh()), "score"),
        ("tv", distances.ComparisonProblem(Poisson(1.2), Poisson(1.0), ell=-1), "score"),
    ]
    for metric, prob, method in cases:
        if metric == "kol":
            report = distances.kolmogorov_bound(prob, method)
        elif metric == "tv":
            report = distances.tv_bound(prob, method)
        else:
            report = distances.wasserstein_bound(prob, method)
        checks.append(_check(f"dominance:{metric}:{method}:{prob.direction}",
                             bool(report.dominates),
                             f"bound={report.bound:.6g} oracle={report.oracle:.6g}"))
    # cross-measure specializations
    rep = distances.cross_measure_bound(
        distances.ComparisonProblem(ScaledParetoMax(100, 2.5), Frechet(2.5),
                                    "kol", "cross"))
    checks.append(_check("dominance:kol:cross:pareto", bool(rep.dominates),
                         f"bound={rep.bound:.6g} oracle={rep.oracle:.6g}"))
    rep = distances.cross_measure_bound(
        distances.ComparisonProblem(StdBinomial(100, 0.3), Normal(0.0, 1.0),
                                    "wass", "cross"))
    checks.append(_check("dominance:wass:cross:stdbinomial", bool(rep.dominates),
                         f"bound={rep.bound:.6g} oracle={rep.oracle:.6g}"))
    return checks


def metric_ordering_checks() -> list[Check]:
    checks = []
    pairs = [
        (StudentT(30.0), Normal(0.0, 1.0)),
        (Normal(0.4, 1.0), Normal(0.0, 1.0)),
        (Gamma(2.0, 2.0), Gamma(2.5, 2.0)),
        (Binomial(40, 0.025), Poisson(1.0)),
        (Poisson(1.5), Poisson(1.0)),
    ]
    worst = -math.inf
    for p, q in pairs:
        kol = oracles.exact_kolmogorov(p, q).value
        tv = oracles.exact_tv(p, q).value
        worst = max(worst, kol - tv)
    checks.append(_check("kol<=tv", worst <= 1e-9, f"max(kol-tv)={worst:.2e}"))
    p, q = Beta(2.0, 3.0), Gamma(2.0, 5.0)
    sym = abs(oracles.exact_tv(p, q).value - oracles.exact_tv(q, p).value)
    checks.append(_check("tv-symmetry", sym < 1e-9, f"|diff|={sym:.2e}"))
    return checks


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "identities": suite_identities,
    "factors": suite_factors,
    "distances": suite_distances,
}


def run_suite(name: str, seed: int = 1) -> dict:
    if name == "all":
        results: list[Check] = []
        for key in ("identities", "factors", "distances"):
            results.extend(SUITES[key](seed))
        results.extend(representation_checks())
    else:
        results = SUITES[name](seed)
        if name == "identities":
            results.extend(representation_checks())
    passed = sum(1 for _, ok, _ in results if ok)
    return {
        "suite": name,
        "seed": seed,
        "passed": passed,
        "failed": len(results) - passed,
        "checks": [{"name": n, "pass": ok, "detail": det} for n, ok, det in results],
    }
