"""Uniform and non-uniform bounds on Stein-equation solutions and their
derivatives, discrete point-mass factors, and the per-distribution
specializations used for figure reproduction.

The seven generic families (kinds):
  g_k1       |g| <= kappa1 * P(x-b) Pbar(x-b) / (p(x+l) c(x+l))
  dg_k1      |dg| <= kappa1/c(x) * (1 + |Tc(x)|/c(x+l) * P(x-b)Pbar(x-b)/p(x+l))
  g_k2       |g| <= kappa2 * tau(x+l) / c(x+l)
  dg_k2      |dg| <= kappa2 * (|x-mu|/c(x) + |Tc(x)| tau(x+l)/(c(x) c(x+l)))
  g_lip      ||g|| <= k     when |h(x)-h(y)| <= k |eta(x)-eta(y)|
  dg_eta_k1  |dg| <= kappa1/c(x) * (1 + |Tc(x)|/c(x+l) * P(x-b)Pbar(x+a)/p(x+l))
  dg_eta_k2  |dg| <= kappa2 * split-window product form (2*kappa2*Mtilde-type)
The eta families require the coefficient to be a centered inverse
(c = -L eta), i.e. a context that carries eta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import _quad
from .distributions import (
    Beta,
    Binomial,
    Distribution,
    DomainError,
    Exponential,
    Frechet,
    Gamma,
    NegBinomial,
    Normal,
    Poisson,
    Rayleigh,
    StudentT,
)
from .stein_core import SteinContext, TestFunction, a_ell, b_ell, lattice_step

GRID_POINTS = 513
GRID_QMIN = 1e-6


class NotApplicableError(ValueError):
    """A bound family was requested outside its hypotheses."""


@dataclass
class FactorBound:
    """A pointwise bound curve plus its uniform (sup) value."""

    kind: str
    pointwise: Callable[[float], float]
    context: SteinContext | None = None
    uniform_analytic: float | None = None
    _uniform: float | None = field(default=None, repr=False)

    def uniform(self) -> float:
        """Sup of the pointwise curve: analytic constant when printed, else a
        grid sup with golden-section refinement at the argmax."""
        if self.uniform_analytic is not None:
            return self.uniform_analytic
        if self._uniform is None:
            dist = self.context.dist
            if dist.support.lattice:
                pts = dist.lattice_points()
                self._uniform = max(self.pointwise(x) for x in pts)
            else:
                grid = dist.quantile_grid(GRID_POINTS, GRID_QMIN)
                _, sup = _quad.grid_supremum(self.pointwise, grid)
                self._uniform = sup
        return self._uniform


def _envelope(dist: Distribution, ell: int, x: float, upper_off: float) -> float:
    """P(x - b_ell*s) * Pbar(arg) / p(x + ell*s) in log space."""
    s = lattice_step(dist)
    t = x - b_ell(ell) * s
    y = x + ell * s
    log_val = dist.log_cdf(t) + dist.log_sf(upper_off) - dist.log_pdf(y)
    return math.exp(log_val) if log_val > -math.inf else 0.0


def _cdf_window_sum(dist: Distribution, ell: int, x: float) -> tuple[float, float]:
    """Split-window accumulations for the kappa2 eta bound:
    A = E[P(X - a*s)/p(X); X <= x - b*s], B = E[Pbar(X - a*s)/p(X); X >= x + a*s]."""
    s = lattice_step(dist)
    off = a_ell(ell) * s
    if dist.support.lattice:
        pts = dist.lattice_points()
        lower = sum(dist.cdf(u - off) for u in pts if u <= x - b_ell(ell) * s)
        upper = sum(dist.sf(u - off) for u in pts if u >= x + a_ell(ell) * s)
        return lower, upper
    lo, hi = dist.truncated_support()
    seeds = dist.integration_seeds()
    lower, _ = _quad.integrate_split(dist.cdf, lo, min(x, hi), seeds) if x > lo else (0.0, 0.0)
    upper, _ = _quad.integrate_split(dist.sf, max(x, lo), hi, seeds) if x < hi else (0.0, 0.0)
    return lower, upper


def applicable_kinds(ctx: SteinContext, h: TestFunction) -> list[str]:
    kinds = []
    k1 = h.kappa1()
    k2 = h.kappa2(ctx.dist, ctx.ell)
    if k1 is not None:
        kinds += ["g_k1", "dg_k1"]
    if k2 is not None:
        kinds += ["g_k2", "dg_k2"]
    if ctx.has_eta:
        if h.kind == "lipschitz":
            kinds.append("g_lip")
        if k1 is not None:
            kinds.append("dg_eta_k1")
        if k2 is not None:
            kinds.append("dg_eta_k2")
    return kinds


def factor_bound(ctx: SteinContext, h: TestFunction, kind: str) -> FactorBound:
    """A single bound family; raises NotApplicableError outside its hypotheses."""
    dist, ell = ctx.dist, ctx.ell
    s = lattice_step(dist)
    k1 = h.kappa1()
    k2 = h.kappa2(dist, ell)

    if kind in ("g_k1", "dg_k1") and k1 is None:
        raise NotApplicableError(f"{kind} needs a finite range kappa1(h)")
    if kind in ("g_k2", "dg_k2", "dg_eta_k2") and k2 is None:
        raise NotApplicableError(f"{kind} needs a bounded difference kappa2(h)")
    if kind in ("g_lip", "dg_eta_k1", "dg_eta_k2") and not ctx.has_eta:
        raise NotApplicableError(
            f"{kind} requires a coefficient of the form -L(eta); "
            f"context kind {ctx.kind!r} carries no eta")

    if kind == "g_k1":
        def fn(x: float) -> float:
            return k1 * _envelope(dist, ell, x, x - b_ell(ell) * s) / ctx.c(x + ell * s)
        return FactorBound(kind, fn, ctx)

    if kind == "dg_k1":
        def fn(x: float) -> float:
            env = _envelope(dist, ell, x, x - b_ell(ell) * s)
            return k1 / ctx.c(x) * (1.0 + abs(ctx.Tc(x)) / ctx.c(x + ell * s) * env)
        return FactorBound(kind, fn, ctx)

    if kind == "g_k2":
        def fn(x: float) -> float:
            y = x + ell * s
            return k2 * dist.stein_kernel(ell, y) / ctx.c(y)
        return FactorBound(kind, fn, ctx)

    if kind == "dg_k2":
        mu = dist.mean

        def fn(x: float) -> float:
            y = x + ell * s
            return k2 * (abs(x - mu) / ctx.c(x)
                         + abs(ctx.Tc(x)) * dist.stein_kernel(ell, y) / (ctx.c(x) * ctx.c(y)))
        return FactorBound(kind, fn, ctx)

    if kind == "g_lip":
        if h.kind != "lipschitz":
            raise NotApplicableError("g_lip applies to lipschitz test functions")
        k = h.kappa2(dist, ell)
        return FactorBound(kind, lambda x: k, ctx, uniform_analytic=k)

    if kind == "dg_eta_k1":
        def fn(x: float) -> float:
            env = _envelope(dist, ell, x, x + a_ell(ell) * s)
            return k1 / ctx.c(x) * (1.0 + abs(ctx.Tc(x)) / ctx.c(x + ell * s) * env)
        return FactorBound(kind, fn, ctx)

    if kind == "dg_eta_k2":
        def fn(x: float) -> float:
            y = x + ell * s
            lower, upper = _cdf_window_sum(dist, ell, x)
            py = dist.pdf(y)
            denom = py * ctx.c(x) * ctx.c(y)
            # |Delta eta| = 1 for eta = -Id; custom etas scale both windows
            d_eta = abs(ctx.eta_delta(x))
            return k2 * 2.0 * d_eta * lower * upper / denom
        return FactorBound(kind, fn, ctx)

    raise NotApplicableError(f"unknown bound kind {kind!r}")


def factor_bounds(ctx: SteinContext, h: TestFunction) -> list[FactorBound]:
    """All bound families applicable to (ctx, h)."""
    return [factor_bound(ctx, h, kind) for kind in applicable_kinds(ctx, h)]


def combined_minimum(bounds: Sequence[FactorBound], kinds: Sequence[str]) -> Callable[[float], float]:
    """Pointwise minimum of the selected bound curves."""
    chosen = [b for b in bounds if b.kind in kinds]
    if not chosen:
        raise NotApplicableError(f"no bounds among kinds {kinds}")
    return lambda x: min(b.pointwise(x) for b in chosen)


# ---------------------------------------------------------------------------
# Discrete point-mass factors
# ---------------------------------------------------------------------------

@dataclass
class MonotoneRatioReport:
    passed: bool
    first_violation: float | None = None


def monotone_ratio_check(dist: Distribution, xi: float) -> MonotoneRatioReport:
    """Scan P(x-1)/(tau+ p) non-decreasing up to xi and (1-P(x-1))/(tau+ p)
    non-increasing past xi over the truncated lattice."""
    if not dist.support.lattice:
        raise DomainError("monotone_ratio_check needs a lattice distribution")
    pts = dist.lattice_points()
    s = dist.support.step

    def ratio1(x: float) -> float:
        tp = dist.stein_kernel(1, x)
        p = dist.pdf(x)
        if tp * p == 0.0:
            return 0.0
        return dist.cdf(x - s) / (tp * p)

    def ratio2(x: float) -> float:
        tp = dist.stein_kernel(1, x)
        p = dist.pdf(x)
        if tp * p == 0.0:
            return math.inf
        return (1.0 - dist.cdf(x - s)) / (tp * p)

    prev = -math.inf
    for x in (u for u in pts if u <= xi):
        r = ratio1(x)
        if r < prev - 1e-12 * max(1.0, abs(prev)):
            return MonotoneRatioReport(False, x)
        prev = r
    prev = math.inf
    for x in (u for u in pts if u > xi):
        r = ratio2(x)
        if r > prev + 1e-12 * max(1.0, abs(prev)):
            return MonotoneRatioReport(False, x)
        prev = r
    return MonotoneRatioReport(True)


@dataclass
class DiscretePointMassBounds:
    sup_g: float
    sup_dg: float
    sup_dg_refinement: float
    borel_sup_g: Callable[[Sequence[float]], float]
    borel_sup_dg: Callable[[Sequence[float]], float]


def _safe_ratio(num: float, den: float) -> float:
    if num == 0.0:
        return 0.0
    if den == 0.0:
        return math.inf
    return num / den


def discrete_pointmass_bounds(dist: Distribution, xi: float) -> DiscretePointMassBounds:
    """Point-mass factors for the kernel-standardized lattice equation.

    sup_dg is exact: P(xi-1)/tau+(xi) + (1-P(xi))/tau-(xi); sup_g is the max
    of its two one-sided pieces; the Borel variants take a set of lattice
    points and apply the mass-weighted / sup forms.
    """
    check = monotone_ratio_check(dist, xi)
    if not check.passed:
        raise DomainError(
            f"monotone-ratio precondition fails first at lattice point {check.first_violation}")
    s = dist.support.step
    P_left = dist.cdf(xi - s)
    P_xi = dist.cdf(xi)
    tau_p = dist.stein_kernel(1, xi)
    tau_m = dist.stein_kernel(-1, xi)
    mu = dist.mean

    sup_g = max(_safe_ratio(P_left, tau_p), _safe_ratio(1.0 - P_xi, tau_m))
    sup_dg = _safe_ratio(P_left, tau_p) + _safe_ratio(1.0 - P_xi, tau_m)
    if xi <= mu:
        refinement = _safe_ratio(1.0 - dist.pdf(xi), tau_p)
    else:
        refinement = _safe_ratio(1.0 - dist.pdf(xi), tau_m)

    def borel_g(points: Sequence[float]) -> float:
        mass = sum(dist.pdf(p) for p in points)
        worst = 0.0
        for p in points:
            tp, tm, pp = dist.stein_kernel(1, p), dist.stein_kernel(-1, p), dist.pdf(p)
            worst = max(worst, _safe_ratio(1.0, tp * pp), _safe_ratio(1.0, tm * pp))
        return mass * worst

    def borel_dg(points: Sequence[float]) -> float:
        worst = 0.0
        for p in points:
            worst = max(worst, _safe_ratio(dist.cdf(p - s), dist.stein_kernel(1, p))
                        + _safe_ratio(1.0 - dist.cdf(p), dist.stein_kernel(-1, p)))
        return worst

    return DiscretePointMassBounds(sup_g=sup_g, sup_dg=sup_dg,
                                   sup_dg_refinement=refinement,
                                   borel_sup_g=borel_g, borel_sup_dg=borel_dg)


# ---------------------------------------------------------------------------
# Per-distribution printed bound sets
# ---------------------------------------------------------------------------

def _mk(kind: str, fn: Callable[[float], float], uniform: float | None = None,
        ctx: SteinContext | None = None) -> FactorBound:
    return FactorBound(kind, fn, ctx, uniform_analytic=uniform)


def specialized_bounds(dist: Distribution, standardization: str,
                       kappa1: float = 1.0, kappa2: float = 1.0) -> dict[str, FactorBound]:
    """The per-distribution printed bound curves, keyed by a short label.

    `standardization` is "c1" (coefficient 1) or "kernel". Labels mirror the
    generic kinds with the distribution's closed forms substituted in.
    """
    name = dist.name
    if isinstance(dist, Normal) and dist.mu == 0.0 and dist.sigma == 1.0:
        M = dist.mills_ratio
        half_sqrt_pi_2 = 0.5 * math.sqrt(math.pi / 2.0)
        if standardization in ("c1", "kernel"):
            ctx = SteinContext(dist, 0, "kernel")
            mt = lambda x: dist.mtilde_ratio(0, x)
            return {
                "g_k1": _mk("g_k1", lambda x: kappa1 * M(x), kappa1 * half_sqrt_pi_2, ctx),
                "g_k2": _mk("g_k2", lambda x: kappa2, kappa2, ctx),
                "g_min": _mk("g_k1", lambda x: min(kappa1 * M(x), kappa2),
                             min(kappa1 * half_sqrt_pi_2, kappa2), ctx),
                "dg_k1": _mk("dg_k1", lambda x: kappa1 * (1.0 + abs(x) * M(x)),
                             2.0 * kappa1, ctx),
                "dg_k2": _mk("dg_k2", lambda x: 2.0 * kappa2 * min(abs(x), mt(x)), None, ctx),
            }
    if isinstance(dist, Exponential):
        lam = dist.lam
        if standardization == "c1":
            ctx = SteinContext(dist, 0, "one")
            return {
                "g_min": _mk("g_k1", lambda x: (1.0 / lam) * min(
                    kappa1 * -math.expm1(-lam * x), kappa2 * lam * x), None, ctx),
                "dg_min": _mk("dg_k1", lambda x: min(
                    kappa1 * (2.0 - math.exp(-lam * x)),
                    kappa2 * (abs(x - lam) + x)), None, ctx),
            }
        ctx = SteinContext(dist, 0, "kernel")
        return {
            "g_min": _mk("g_k1", lambda x: min(
                kappa1 * -math.expm1(-lam * x) / x, kappa2), None, ctx),
            "dg_k1": _mk("dg_eta_k1", lambda x: kappa1 * lam / x * (
                1.0 + abs(x - 1.0 / lam) * -math.expm1(-lam * x) / x), None, ctx),
            "dg_k2": _mk("dg_eta_k2", lambda x: 2.0 * kappa2 * min(
                abs(lam - 1.0 / x),
                (1.0 - -math.expm1(-lam * x) / (lam * x)) / x), None, ctx),
        }
    if isinstance(dist, Poisson):
        lam = dist.lam
        P = dist.cdf
        p = dist.pdf
        ctx = SteinContext(dist, -1, "kernel")
        sums = _poisson_window_sums(dist)

        def g_nonuniform(x: float) -> float:
            if x < 1.0:
                return 0.0
            return kappa1 * P(x - 1) * (1.0 - P(x - 1)) / (lam * p(x - 1))

        def dg_k1(x: float) -> float:
            env_m = P(x - 1) * (1.0 - P(x - 1)) / p(x - 1) if x >= 1.0 else 0.0
            opts = [1.0 / lam + abs(x - lam) / lam ** 2 * env_m]
            if x >= 1.0:
                env_p = P(x) * (1.0 - P(x)) / p(x + 1)
                opts.append(1.0 / x + abs(x - lam) / (x * (x + 1.0)) * env_p)
            return kappa1 * min(opts)

        def dg_k2(x: float) -> float:
            opts = [abs(x - lam) / lam]
            if x > 0.0:
                opts.append(abs(x - lam) / x)
                lower, upper = sums(x)
                opts.append(lower * upper / (lam * x * p(x)))
            return 2.0 * kappa2 * min(opts)

        return {
            "g_min": _mk("g_k1", lambda x: min(g_nonuniform(x), kappa2), None, ctx),
            "g_nonuniform": _mk("g_k1", g_nonuniform, None, ctx),
            "dg_k1": _mk("dg_k1", dg_k1, None, ctx),
            "dg_k2": _mk("dg_eta_k2", dg_k2, None, ctx),
        }
    if isinstance(dist, StudentT):
        nu = dist.nu
        M = dist.mills_ratio
        if standardization == "c1":
            ctx = SteinContext(dist, 0, "one")
            return {
                "g_min": _mk("g_k1", lambda x: min(kappa1 * M(x),
                                                   kappa2 * (x * x + nu) / (nu - 1.0)), None, ctx),
                "dg_k1": _mk("dg_k1", lambda x: kappa1 * (
                    1.0 + abs(x) * (nu + 1.0) / (x * x + nu) * M(x)), None, ctx),
                "dg_k2": _mk("dg_k2", lambda x: kappa2 * abs(x) * 2.0 * nu / (nu - 1.0), None, ctx),
            }
        ctx = SteinContext(dist, 0, "kernel")
        return {
            "g_min": _mk("g_k1", lambda x: min(
                kappa1 * M(x) * (nu - 1.0) / (x * x + nu), kappa2), None, ctx),
            "dg_k2": _mk("dg_k2", lambda x: 2.0 * kappa2 * abs(x) * (nu - 1.0) / (x * x + nu),
                         None, ctx),
        }
    if isinstance(dist, Frechet):
        alpha = dist.alpha
        ctx = SteinContext(dist, 0, "custom",
                           c=lambda x: x ** (alpha + 1.0),
                           dc=lambda x: (alpha + 1.0) * x ** alpha)
        return {
            "g_k1": _mk("g_k1", lambda x: kappa1 * -math.expm1(-(x ** -alpha)) / alpha, None, ctx),
            "dg_k1": _mk("dg_k1", lambda x: kappa1 / x ** (alpha + 1.0) * (
                1.0 + -math.expm1(-(x ** -alpha))), None, ctx),
        }
    if isinstance(dist, Rayleigh):
        M = dist.mills_ratio
        tau = lambda x: dist.stein_kernel(0, x)
        ctx = SteinContext(dist, 0, "one")
        root_pi = math.sqrt(math.pi)
        return {
            "g_min": _mk("g_k1", lambda x: min(kappa1 * -math.expm1(-x * x) / (2.0 * x),
                                               0.5 * kappa2), None, ctx),
            "dg_k1": _mk("dg_k1", lambda x: kappa1 * (1.0 + 0.5 * M(x)), None, ctx),
            "dg_k2": _mk("dg_k2", lambda x: kappa2 * (
                abs(x - 0.5 * root_pi) + 0.5 * abs(1.0 / x - 2.0 * x)), None, ctx),
        }
    if isinstance(dist, Gamma):
        r, lam = dist.r, dist.lam
        M = dist.mills_ratio
        mt = lambda x: dist.mtilde_ratio(0, x)
        if standardization == "c1":
            ctx = SteinContext(dist, 0, "one")
            return {
                "g_min": _mk("g_k1", lambda x: min(kappa1 * M(x), kappa2 * x / lam), None, ctx),
                "dg_k1": _mk("dg_k1", lambda x: kappa1 * (
                    1.0 + abs((r - 1.0) / x - lam) * M(x)), None, ctx),
                "dg_k2": _mk("dg_k2", lambda x: kappa2 * (
                    abs(x - r / lam) + abs(x - (r - 1.0) / lam)), None, ctx),
            }
        ctx = SteinContext(dist, 0, "kernel")
        return {
            "g_min": _mk("g_k1", lambda x: min(kappa1 * M(x) * lam / x, kappa2), None, ctx),
            "dg_k1": _mk("dg_eta_k1", lambda x: kappa1 * lam / x * (
                1.0 + abs(x - r / lam) * lam / x * M(x)), None, ctx),
            "dg_k2a": _mk("dg_k2", lambda x: 2.0 * kappa2 * lam / x * abs(x - r / lam), None, ctx),
            "dg_k2b": _mk("dg_eta_k2", lambda x: 2.0 * kappa2 * lam ** 2 / x ** 2 * mt(x), None, ctx),
        }
    if isinstance(dist, Beta):
        a, b = dist.alpha, dist.beta
        M = dist.mills_ratio
        mt = lambda x: dist.mtilde_ratio(0, x)
        mu = a / (a + b)
        if standardization == "c1":
            ctx = SteinContext(dist, 0, "one")
            return {
                "g_min": _mk("g_k1", lambda x: min(kappa1 * M(x),
                                                   kappa2 * x * (1.0 - x) / (a + b)), None, ctx),
                "dg_k1": _mk("dg_k1", lambda x: kappa1 * (
                    1.0 + abs(a - 1.0 - x * (a + b - 2.0)) / (x * (1.0 - x)) * M(x)), None, ctx),
                "dg_k2": _mk("dg_k2", lambda x: kappa2 * (
                    abs(x - mu) + abs(x * (1.0 - 2.0 / (a + b)) - (a - 1.0) / (a + b))), None, ctx),
            }
        ctx = SteinContext(dist, 0, "kernel")
        return {
            "g_min": _mk("g_k1", lambda x: min(
                kappa1 * (a + b) / (x * (1.0 - x)) * M(x), kappa2), None, ctx),
            "dg_k2a": _mk("dg_k2", lambda x: 2.0 * kappa2 * (a + b) / (x * (1.0 - x)) * abs(x - mu),
                          None, ctx),
            "dg_k2b": _mk("dg_eta_k2", lambda x: 2.0 * kappa2 * (a + b) ** 2
                          / (x * (1.0 - x)) ** 2 * mt(x), None, ctx),
        }
    if isinstance(dist, Binomial):
        n, th = dist.n, dist.theta
        M = dist.mills_ratio
        if standardization == "c1":
            ctx = SteinContext(dist, -1, "one")
            return {
                "gm_k1": _mk("g_k1", lambda x: kappa1 * (M(x - 1) if x >= 1.0 else 0.0), None, ctx),
                "gm_k2": _mk("g_k2", lambda x: kappa2 * th * (n - x + 1.0), None, ctx),
            }
        ctx = SteinContext(dist, -1, "kernel")

        def g_min(x: float) -> float:
            env = kappa1 * M(x - 1) / (th * (n - x + 1.0)) if x >= 1.0 else 0.0
            return min(env, kappa2)

        def dg_min(x: float) -> float:
            opts = []
            if x < n:
                opts.append(1.0 / (th * (n - x)) * (1.0 + (abs(x - n * th)
                            * (M(x - 1) if x >= 1.0 else 0.0)) / (th * (n - x + 1.0))))
            if x > 0:
                opts.append(1.0 / ((1.0 - th) * x) * (1.0 + (abs(x - n * th)
                            * (M(x) if x < n else 0.0)) / (th * max(n - x, 1.0))))
            return kappa1 * min(opts) if opts else math.inf

        return {
            "g_min": _mk("g_k1", g_min, None, ctx),
            "dg_k1": _mk("dg_k1", dg_min, None, ctx),
            "dg_k2": _mk("dg_k2", lambda x: 2.0 * kappa2 * abs(x - n * th) * min(
                1.0 / (th * (n - x)) if x < n else math.inf,
                1.0 / ((1.0 - th) * x) if x > 0 else math.inf), None, ctx),
        }
    if isinstance(dist, NegBinomial):
        r, th = dist.r, dist.theta
        M = dist.mills_ratio
        ctx = SteinContext(dist, -1, "kernel")

        def g_min(x: float) -> float:
            env = kappa1 * M(x - 1) * (1.0 - th) / (th * (x - 1.0 + r)) if x >= 1.0 else 0.0
            return min(env, kappa2)

        return {
            "g_min": _mk("g_k1", g_min, None, ctx),
            "dg_k2": _mk("dg_k2", lambda x: 2.0 * kappa2 * abs((1.0 - th) * x - r * th) * min(
                1.0 / (th * (r + x)), 1.0 / x if x > 0 else math.inf), None, ctx),
        }
    raise NotApplicableError(
        f"no printed specialization for {name} with standardization {standardization!r}")


def _poisson_window_sums(dist: Poisson) -> Callable[[float], tuple[float, float]]:
    """Prefix sums of P and suffix sums of Pbar on the truncated lattice."""
    pts = dist.lattice_points()
    cdfs = [dist.cdf(u) for u in pts]
    sfs = [dist.sf(u) for u in pts]
    prefix = []
    acc = 0.0
    for c in cdfs:
        acc += c
        prefix.append(acc)
    suffix = [0.0] * (len(pts) + 1)
    for i in range(len(pts) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sfs[i]

    def sums(x: float) -> tuple[float, float]:
        k = int(round(x - pts[0]))
        # sum_{j=0}^{x-1} P(j) and sum_{j=x}^{inf} Pbar(j)
        lower = prefix[k - 1] if 1 <= k <= len(pts) else (prefix[-1] if k > len(pts) else 0.0)
        upper = suffix[k] if 0 <= k < len(pts) else 0.0
        return lower, upper

    return sums


def bounds_to_csv_rows(bounds: dict[str, FactorBound], xs: Sequence[float]) -> list[tuple]:
    """Rows (x, kind_label, value) for CSV export of bound curves."""
    rows = []
    for x in xs:
        for label, b in bounds.items():
            rows.append((x, label, b.pointwise(x)))
    return rows
