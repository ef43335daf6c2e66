"""Distribution catalog: densities, stable cdf/survival pairs, scores,
Stein kernels, Mills-type ratios, sampling, and the string spec grammar.

Every object is immutable after construction and every operation is a pure
function of its arguments; sampling takes an explicit per-call seed.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from . import _quad, _special
from ._special import (
    betainc,
    gammainc_lower,
    gammainc_upper,
    log_betainc,
    log_gammainc_lower,
    log_gammainc_upper,
    log_binomial_coeff,
    std_normal_cdf,
    std_normal_log_cdf,
    std_normal_log_sf,
    std_normal_pdf,
    std_normal_quantile,
    std_normal_sf,
)

TAIL_EPS = 1e-13
LATTICE_TAIL_EPS = 1e-14


class ParameterError(ValueError):
    """Invalid distribution parameters (rejected at construction)."""


class DomainError(ValueError):
    """Evaluation at a point where the closed form has a pole or is undefined."""


class UnsupportedError(ValueError):
    """Operation requires a moment/feature the distribution lacks."""


class TailError(ArithmeticError):
    """Evaluation past the tail-truncation quantiles; carries the last stable value."""

    def __init__(self, message: str, last_stable: float):
        super().__init__(message)
        self.last_stable = last_stable


class Support:
    """Interval support with a lattice flag.

    Lattice supports are the points origin + k*step for integer k with
    lower <= point <= upper; continuous supports are intervals with interior
    (lower, upper).
    """

    __slots__ = ("lower", "upper", "lattice", "origin", "step")

    def __init__(self, lower: float, upper: float, lattice: bool = False,
                 origin: float = 0.0, step: float = 1.0):
        if not lower < upper:
            raise ParameterError("support requires lower < upper")
        if lattice and step <= 0.0:
            raise ParameterError("lattice step must be positive")
        self.lower = lower
        self.upper = upper
        self.lattice = lattice
        self.origin = origin if lattice else 0.0
        self.step = step if lattice else 0.0

    def contains(self, x: float) -> bool:
        if self.lattice:
            k = self.index_of(x)
            return k is not None
        return self.lower <= x <= self.upper

    def in_interior(self, x: float) -> bool:
        if self.lattice:
            k = self.index_of(x)
            if k is None:
                return False
            return self.lower + 0.5 * self.step < x < self.upper - 0.5 * self.step
        return self.lower < x < self.upper

    def index_of(self, x: float) -> int | None:
        """Lattice index k with x == origin + k*step, or None if off-lattice."""
        if not math.isfinite(x):
            return None
        k = round((x - self.origin) / self.step)
        if abs(self.origin + k * self.step - x) > 1e-9 * max(1.0, abs(x), self.step):
            return None
        point = self.origin + k * self.step
        if point < self.lower - 0.5 * self.step or point > self.upper + 0.5 * self.step:
            return None
        return k

    def point(self, k: int) -> float:
        return self.origin + k * self.step


def _lattice_floor(x: float) -> int:
    if x >= 1e300:
        return 10 ** 15
    if x <= -1e300:
        return -(10 ** 15)
    return math.floor(x + 1e-9)


def _validate_ell(dist: "Distribution", ell: int) -> None:
    if dist.support.lattice:
        if ell not in (-1, 1):
            raise DomainError(f"{dist!r} is a lattice distribution; ell must be +-1")
    elif ell != 0:
        raise DomainError(f"{dist!r} is continuous; ell must be 0")


class Distribution:
    """Base class; subclasses fill in the catalog formulas."""

    name: str = "distribution"

    def __init__(self):
        self._cache: dict = {}

    # -- basic quantities ---------------------------------------------------

    @property
    def support(self) -> Support:
        raise NotImplementedError

    @property
    def mean(self) -> float:
        raise NotImplementedError

    def log_pdf(self, x: float) -> float:
        raise NotImplementedError

    def pdf(self, x: float) -> float:
        if not self.support.contains(x):
            return 0.0
        lp = self.log_pdf(x)
        return math.exp(lp) if lp > -math.inf else 0.0

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def sf(self, x: float) -> float:
        raise NotImplementedError

    def log_cdf(self, x: float) -> float:
        c = self.cdf(x)
        return math.log(c) if c > 0.0 else -math.inf

    def log_sf(self, x: float) -> float:
        s = self.sf(x)
        return math.log(s) if s > 0.0 else -math.inf

    # -- score and Stein kernel --------------------------------------------

    def score(self, ell: int, x: float) -> float:
        """Lattice-direction derivative of log density: Delta^ell p / p."""
        _validate_ell(self, ell)
        sup = self.support
        if sup.lattice:
            k = sup.index_of(x)
            if k is None:
                raise DomainError(f"x={x} is not a support lattice point of {self!r}")
            return self._score_lattice(ell, k)
        if not sup.in_interior(x):
            raise DomainError(f"x={x} is not in the open interior of the support")
        return self._score_continuous(x)

    def _score_continuous(self, x: float) -> float:
        raise NotImplementedError

    def _score_lattice(self, ell: int, k: int) -> float:
        # generic pmf-ratio form; exact for every lattice entry
        step = self.support.step
        x = self.support.point(k)
        px = self.pdf(x)
        if px == 0.0:
            raise DomainError(f"zero mass at lattice point {x}")
        return (self.pdf(x + ell * step) - px) / (ell * step * px)

    def stein_kernel(self, ell: int, x: float) -> float:
        """Centered-identity integral -L_p Id; the kernel-standardization coefficient."""
        _validate_ell(self, ell)
        mu = self.mean  # raises UnsupportedError when infinite
        sup = self.support
        if sup.lattice:
            k = sup.index_of(x)
            if k is None:
                raise DomainError(f"x={x} is not a support lattice point of {self!r}")
            return self._kernel_lattice(ell, k, mu)
        if not sup.in_interior(x):
            raise DomainError(f"x={x} is not in the open interior of the support")
        return self._kernel_continuous(x, mu)

    def _kernel_continuous(self, x: float, mu: float) -> float:
        return _tau_by_quadrature(self, x, mu)

    def _kernel_lattice(self, ell: int, k: int, mu: float) -> float:
        px = self.pdf(self.support.point(k))
        cum = self._centered_prefix_sums()
        k_lo, _ = self.lattice_range()
        idx = k - k_lo
        if ell == 1:
            s = cum[idx - 1] if idx >= 1 else 0.0
        else:
            s = cum[idx] if idx >= 0 else 0.0
        return -s / px

    def _centered_prefix_sums(self) -> Sequence[float]:
        key = "centered_prefix"
        if key not in self._cache:
            k_lo, k_hi = self.lattice_range()
            mu = self.mean
            sums = []
            acc = 0.0
            for k in range(k_lo, k_hi + 1):
                x = self.support.point(k)
                acc += (x - mu) * self.pdf(x)
                sums.append(acc)
            self._cache[key] = sums
        return self._cache[key]

    # -- Mills-type ratios ---------------------------------------------------

    def _check_within_truncation(self, x: float, what: str) -> None:
        lo, hi = self.truncated_support()
        if x < lo or x > hi:
            edge = lo if x < lo else hi
            last = math.exp(self.log_cdf(edge) + self.log_sf(edge) - self.log_pdf(edge))
            raise TailError(f"{what} past tail truncation at x={x}", last)

    def mills_ratio(self, x: float) -> float:
        """P(x) * Pbar(x) / p(x), assembled in log space."""
        if not self.support.lattice and not self.support.in_interior(x):
            raise DomainError(f"x={x} not in the interior of the support")
        if self.support.lattice and self.support.index_of(x) is None:
            raise DomainError(f"x={x} is not a support lattice point")
        self._check_within_truncation(x, "mills_ratio")
        return math.exp(self.log_cdf(x) + self.log_sf(x) - self.log_pdf(x))

    def mtilde_ratio(self, ell: int, x: float) -> float:
        """Integrated-cdf ratio: int P * int Pbar / p, both windows anchored at x+ell."""
        _validate_ell(self, ell)
        self.mean  # finite-mean precondition
        self._check_within_truncation(x, "mtilde_ratio")
        sup = self.support
        if sup.lattice:
            k = sup.index_of(x)
            if k is None:
                raise DomainError(f"x={x} is not a support lattice point")
            a_ell = 1 if ell == 1 else 0
            b_ell = 1 if ell == -1 else 0
            k_lo, k_hi = self.lattice_range()
            lo_k = k_lo + a_ell
            hi_k = k_hi - b_ell
            mid = k + ell
            lower = sum(self.cdf(sup.point(j)) for j in range(lo_k, mid + 1))
            upper = sum(self.sf(sup.point(j)) for j in range(mid, hi_k + 1))
            pm = self.pdf(sup.point(mid))
            if pm == 0.0:
                raise DomainError(f"zero mass at lattice point index {mid}")
            return lower * upper / pm
        lo, hi = self.truncated_support()
        if not sup.in_interior(x):
            raise DomainError(f"x={x} not in the interior of the support")
        seeds = self.integration_seeds()
        lower, _ = _quad.integrate_split(self.cdf, lo, x, seeds)
        upper, _ = _quad.integrate_split(self.sf, x, hi, seeds)
        return lower * upper / self.pdf(x)

    # -- tails, quantiles, grids --------------------------------------------

    def quantile(self, q: float) -> float:
        if not 0.0 <= q <= 1.0:
            raise DomainError("quantile requires q in [0, 1]")
        sup = self.support
        if q == 0.0:
            return sup.lower
        if q == 1.0:
            return sup.upper
        if sup.lattice:
            return float(sup.point(self._quantile_index(q)))
        return self._quantile_continuous(q)

    def _quantile_index(self, q: float) -> int:
        k_lo, k_hi = self._raw_lattice_bracket()
        lo, hi = k_lo, k_hi
        while lo < hi:
            mid = (lo + hi) // 2
            if self.cdf(self.support.point(mid)) >= q:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def _quantile_continuous(self, q: float) -> float:
        lo, hi = self._quantile_bracket(q)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if self.cdf(mid) < q:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def _quantile_bracket(self, q: float) -> tuple[float, float]:
        sup = self.support
        lo, hi = sup.lower, sup.upper
        if math.isinf(lo):
            lo = min(-1.0, hi - 1.0) if math.isfinite(hi) else -1.0
            while self.cdf(lo) > q:
                lo = lo * 2.0 if lo < -1.0 else lo - 2.0
                if lo < -1e300:
                    break
        if math.isinf(hi):
            hi = max(1.0, lo + 1.0)
            while self.cdf(hi) < q:
                hi = hi * 2.0 if hi > 1.0 else hi + 2.0
                if hi > 1e300:
                    break
        return lo, hi

    def truncated_support(self, eps: float = TAIL_EPS) -> tuple[float, float]:
        key = ("trunc", eps)
        if key not in self._cache:
            sup = self.support
            lo = sup.lower if math.isfinite(sup.lower) else self.quantile(eps)
            hi = sup.upper if math.isfinite(sup.upper) else self.quantile(1.0 - eps)
            self._cache[key] = (lo, hi)
        return self._cache[key]

    def integration_seeds(self) -> tuple[float, ...]:
        """Quantile-spaced interior split points that keep adaptive panels on
        the scale of the mass (vital for heavy tails over wide truncations)."""
        if "seeds" not in self._cache:
            qs = (1e-9, 1e-6, 1e-3, 0.05, 0.25, 0.5, 0.75, 0.95,
                  1.0 - 1e-3, 1.0 - 1e-6, 1.0 - 1e-9)
            self._cache["seeds"] = tuple(self.quantile(q) for q in qs)
        return self._cache["seeds"]

    def _raw_lattice_bracket(self) -> tuple[int, int]:
        sup = self.support
        k_lo = 0 if math.isinf(sup.lower) else int(round((sup.lower - sup.origin) / sup.step))
        if math.isfinite(sup.upper):
            return (self._expand_down(k_lo), int(round((sup.upper - sup.origin) / sup.step)))
        hi = max(k_lo + 8, int(self.mean) + 8)
        while self.sf(sup.point(hi)) > LATTICE_TAIL_EPS * 1e-2:
            hi = 2 * hi + 16
            if hi > 10**9:
                break
        return (self._expand_down(k_lo), hi)

    def _expand_down(self, k_lo: int) -> int:
        sup = self.support
        if math.isfinite(sup.lower):
            return k_lo
        lo = min(-8, int(self.mean) - 8)
        while self.cdf(sup.point(lo)) > LATTICE_TAIL_EPS * 1e-2:
            lo = 2 * lo - 16
            if lo < -(10**9):
                break
        return lo

    def lattice_range(self, eps: float = LATTICE_TAIL_EPS) -> tuple[int, int]:
        """Integer index window [k_lo, k_hi] holding all but <= 2*eps of the mass."""
        key = ("lattice_range", eps)
        if key not in self._cache:
            if not self.support.lattice:
                raise DomainError("lattice_range on a continuous distribution")
            sup = self.support
            k_lo, k_hi = self._raw_lattice_bracket()
            while k_lo < k_hi and self.cdf(sup.point(k_lo)) <= eps:
                k_lo += 1
            while k_hi > k_lo and self.sf(sup.point(k_hi - 1)) <= eps:
                k_hi -= 1
            self._cache[key] = (k_lo, k_hi)
        return self._cache[key]

    def lattice_points(self, eps: float = LATTICE_TAIL_EPS) -> list[float]:
        k_lo, k_hi = self.lattice_range(eps)
        return [self.support.point(k) for k in range(k_lo, k_hi + 1)]

    def quantile_grid(self, n: int, qmin: float = 1e-6) -> list[float]:
        """n points at evenly spaced quantile levels in [qmin, 1-qmin]."""
        if self.support.lattice:
            pts = self.lattice_points()
            return pts if len(pts) <= n else [pts[int(i * (len(pts) - 1) / (n - 1))] for i in range(n)]
        qs = [qmin + (1.0 - 2.0 * qmin) * i / (n - 1) for i in range(n)]
        return [self.quantile(q) for q in qs]

    # -- sampling -------------------------------------------------------------

    def sample(self, seed: int, count: int) -> np.ndarray:
        if count < 1:
            raise ParameterError("count must be >= 1")
        rng = np.random.default_rng(seed)
        return self._sample(rng, count)

    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        raise NotImplementedError

    # -- misc -----------------------------------------------------------------

    @property
    def is_lattice(self) -> bool:
        return self.support.lattice

    @property
    def ells(self) -> tuple[int, ...]:
        return (-1, 1) if self.is_lattice else (0,)

    def spec_string(self) -> str:
        return f"{self.name}({','.join(_fmt_param(p) for p in self._params())})"

    def _params(self) -> tuple:
        return ()

    def __repr__(self) -> str:
        return self.spec_string()

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._params() == other._params()

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._params()))


def _fmt_param(p) -> str:
    if isinstance(p, float) and p.is_integer():
        return str(int(p))
    return str(p)


def _tau_by_quadrature(dist: Distribution, x: float, mu: float) -> float:
    """Kernel fallback: -(1/p(x)) * centered-identity integral, lighter-tail side."""
    lo, hi = dist.truncated_support()
    lo = min(lo, x)
    if x > 0.5 * hi:
        hi = max(hi, 2.0 * x + 10.0)  # keep a full tail stretch past x
    px = dist.pdf(x)
    if px == 0.0:
        raise DomainError(f"zero density at x={x}")
    seeds = dist.integration_seeds()
    if dist.cdf(x) <= 0.5:
        value, _ = _quad.integrate_split(lambda u: (u - mu) * dist.pdf(u), lo, x, seeds)
        return -value / px
    value, _ = _quad.integrate_split(lambda u: (u - mu) * dist.pdf(u), x, hi, seeds)
    return value / px


# ---------------------------------------------------------------------------
# Continuous catalog entries
# ---------------------------------------------------------------------------

class Normal(Distribution):
    name = "normal"

    def __init__(self, mu: float, sigma: float):
        super().__init__()
        if not (math.isfinite(mu) and sigma > 0.0):
            raise ParameterError("normal requires finite mu and sigma > 0")
        self.mu = float(mu)
        self.sigma = float(sigma)
        self._support = Support(-math.inf, math.inf)

    def _params(self):
        return (self.mu, self.sigma)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return self.mu

    @property
    def variance(self):
        return self.sigma ** 2

    def _z(self, x):
        return (x - self.mu) / self.sigma

    def log_pdf(self, x):
        return _special.std_normal_log_pdf(self._z(x)) - math.log(self.sigma)

    def cdf(self, x):
        return std_normal_cdf(self._z(x))

    def sf(self, x):
        return std_normal_sf(self._z(x))

    def log_cdf(self, x):
        return std_normal_log_cdf(self._z(x))

    def log_sf(self, x):
        return std_normal_log_sf(self._z(x))

    def _score_continuous(self, x):
        return -(x - self.mu) / self.sigma ** 2

    def _kernel_continuous(self, x, mu):
        return self.sigma ** 2

    def _quantile_continuous(self, q):
        return self.mu + self.sigma * std_normal_quantile(q)

    def _sample(self, rng, count):
        return rng.normal(self.mu, self.sigma, size=count)


class Exponential(Distribution):
    name = "exponential"

    def __init__(self, lam: float):
        super().__init__()
        if not lam > 0.0:
            raise ParameterError("exponential requires lam > 0")
        self.lam = float(lam)
        self._support = Support(0.0, math.inf)

    def _params(self):
        return (self.lam,)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return 1.0 / self.lam

    @property
    def variance(self):
        return 1.0 / self.lam ** 2

    def log_pdf(self, x):
        if x < 0.0:
            return -math.inf
        return math.log(self.lam) - self.lam * x

    def cdf(self, x):
        return -math.expm1(-self.lam * x) if x > 0.0 else 0.0

    def sf(self, x):
        return math.exp(-self.lam * x) if x > 0.0 else 1.0

    def log_sf(self, x):
        return -self.lam * x if x > 0.0 else 0.0

    def _score_continuous(self, x):
        return -self.lam

    def _kernel_continuous(self, x, mu):
        return x / self.lam

    def _quantile_continuous(self, q):
        return -math.log1p(-q) / self.lam

    def _sample(self, rng, count):
        return rng.exponential(1.0 / self.lam, size=count)


class Gamma(Distribution):
    name = "gamma"

    def __init__(self, r: float, lam: float):
        super().__init__()
        if not (r > 0.0 and lam > 0.0):
            raise ParameterError("gamma requires r > 0 and lam > 0")
        self.r = float(r)
        self.lam = float(lam)
        self._support = Support(0.0, math.inf)

    def _params(self):
        return (self.r, self.lam)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return self.r / self.lam

    @property
    def variance(self):
        return self.r / self.lam ** 2

    def log_pdf(self, x):
        if x <= 0.0:
            return -math.inf
        return self.r * math.log(self.lam) + (self.r - 1.0) * math.log(x) \
            - self.lam * x - math.lgamma(self.r)

    def cdf(self, x):
        return gammainc_lower(self.r, self.lam * x) if x > 0.0 else 0.0

    def sf(self, x):
        return gammainc_upper(self.r, self.lam * x) if x > 0.0 else 1.0

    def log_cdf(self, x):
        return log_gammainc_lower(self.r, self.lam * x) if x > 0.0 else -math.inf

    def log_sf(self, x):
        return log_gammainc_upper(self.r, self.lam * x) if x > 0.0 else 0.0

    def _score_continuous(self, x):
        return (self.r - 1.0) / x - self.lam

    def _kernel_continuous(self, x, mu):
        return x / self.lam

    def _sample(self, rng, count):
        return rng.gamma(self.r, 1.0 / self.lam, size=count)


class Beta(Distribution):
    name = "beta"

    def __init__(self, alpha: float, beta: float):
        super().__init__()
        if not (alpha > 0.0 and beta > 0.0):
            raise ParameterError("beta requires alpha > 0 and beta > 0")
        self.alpha = float(alpha)
        self.beta = float(beta)
        self._support = Support(0.0, 1.0)

    def _params(self):
        return (self.alpha, self.beta)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return self.alpha / (self.alpha + self.beta)

    @property
    def variance(self):
        a, b = self.alpha, self.beta
        return a * b / ((a + b) ** 2 * (a + b + 1.0))

    def log_pdf(self, x):
        if x <= 0.0 or x >= 1.0:
            return -math.inf
        a, b = self.alpha, self.beta
        return (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x) \
            - (math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))

    def cdf(self, x):
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        return betainc(self.alpha, self.beta, x)

    def sf(self, x):
        if x <= 0.0:
            return 1.0
        if x >= 1.0:
            return 0.0
        return betainc(self.beta, self.alpha, 1.0 - x)

    def log_cdf(self, x):
        if x <= 0.0:
            return -math.inf
        if x >= 1.0:
            return 0.0
        return log_betainc(self.alpha, self.beta, x)

    def log_sf(self, x):
        if x >= 1.0:
            return -math.inf
        if x <= 0.0:
            return 0.0
        return log_betainc(self.beta, self.alpha, 1.0 - x)

    def _score_continuous(self, x):
        a, b = self.alpha, self.beta
        return (a - 1.0 - x * (a + b - 2.0)) / (x * (1.0 - x))

    def _kernel_continuous(self, x, mu):
        return x * (1.0 - x) / (self.alpha + self.beta)

    def _sample(self, rng, count):
        return rng.beta(self.alpha, self.beta, size=count)


class StudentT(Distribution):
    name = "student"

    def __init__(self, nu: float):
        super().__init__()
        if not nu > 0.0:
            raise ParameterError("student requires nu > 0")
        self.nu = float(nu)
        self._support = Support(-math.inf, math.inf)

    def _params(self):
        return (self.nu,)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        if self.nu <= 1.0:
            raise UnsupportedError("student mean requires nu > 1")
        return 0.0

    @property
    def variance(self):
        if self.nu <= 2.0:
            raise UnsupportedError("student variance requires nu > 2")
        return self.nu / (self.nu - 2.0)

    def log_pdf(self, x):
        nu = self.nu
        return math.lgamma(0.5 * (nu + 1.0)) - math.lgamma(0.5 * nu) \
            - 0.5 * math.log(nu * math.pi) \
            - 0.5 * (nu + 1.0) * math.log1p(x * x / nu)

    def _tail(self, t: float) -> float:
        # P(X >= t) for t >= 0
        return 0.5 * betainc(0.5 * self.nu, 0.5, self.nu / (self.nu + t * t))

    def _log_tail(self, t: float) -> float:
        return math.log(0.5) + log_betainc(0.5 * self.nu, 0.5, self.nu / (self.nu + t * t))

    def cdf(self, x):
        return self._tail(-x) if x <= 0.0 else 1.0 - self._tail(x)

    def sf(self, x):
        return self._tail(x) if x >= 0.0 else 1.0 - self._tail(-x)

    def log_cdf(self, x):
        if x <= 0.0:
            return self._log_tail(-x)
        return math.log1p(-self._tail(x))

    def log_sf(self, x):
        if x >= 0.0:
            return self._log_tail(x)
        return math.log1p(-self._tail(-x))

    def _score_continuous(self, x):
        return -x * (self.nu + 1.0) / (x * x + self.nu)

    def _kernel_continuous(self, x, mu):
        if self.nu <= 1.0:
            raise UnsupportedError("student kernel requires nu > 1")
        return (x * x + self.nu) / (self.nu - 1.0)

    def _sample(self, rng, count):
        return rng.standard_t(self.nu, size=count)


class Frechet(Distribution):
    name = "frechet"

    def __init__(self, alpha: float):
        super().__init__()
        if not alpha > 0.0:
            raise ParameterError("frechet requires alpha > 0")
        self.alpha = float(alpha)
        self._support = Support(0.0, math.inf)

    def _params(self):
        return (self.alpha,)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        if self.alpha <= 1.0:
            raise UnsupportedError("frechet mean requires alpha > 1")
        return math.gamma(1.0 - 1.0 / self.alpha)

    def log_pdf(self, x):
        if x <= 0.0:
            return -math.inf
        a = self.alpha
        return math.log(a) - (a + 1.0) * math.log(x) - x ** (-a)

    def cdf(self, x):
        return math.exp(-(x ** (-self.alpha))) if x > 0.0 else 0.0

    def sf(self, x):
        return -math.expm1(-(x ** (-self.alpha))) if x > 0.0 else 1.0

    def log_cdf(self, x):
        return -(x ** (-self.alpha)) if x > 0.0 else -math.inf

    def _score_continuous(self, x):
        a = self.alpha
        return a * x ** (-a - 1.0) - (1.0 + a) / x

    def _quantile_continuous(self, q):
        return (-math.log(q)) ** (-1.0 / self.alpha)

    def _sample(self, rng, count):
        u = rng.uniform(size=count)
        return (-np.log(u)) ** (-1.0 / self.alpha)


class Rayleigh(Distribution):
    name = "rayleigh"

    def __init__(self):
        super().__init__()
        self._support = Support(0.0, math.inf)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return 0.5 * math.sqrt(math.pi)

    @property
    def variance(self):
        return 1.0 - math.pi / 4.0

    def log_pdf(self, x):
        if x <= 0.0:
            return -math.inf
        return math.log(2.0 * x) - x * x

    def cdf(self, x):
        return -math.expm1(-x * x) if x > 0.0 else 0.0

    def sf(self, x):
        return math.exp(-x * x) if x > 0.0 else 1.0

    def log_sf(self, x):
        return -x * x if x > 0.0 else 0.0

    def _score_continuous(self, x):
        return 1.0 / x - 2.0 * x

    def _kernel_continuous(self, x, mu):
        # (2x + sqrt(pi)*erfcx(x) - sqrt(pi)) / (4x): stable at any depth in
        # the tail, unlike the quadrature fallback (density underflow); the
        # two agree to quadrature tolerance on the bulk (see tests)
        rp = math.sqrt(math.pi)
        return (2.0 * x + rp * _special.erfcx(x) - rp) / (4.0 * x)

    def kernel_by_quadrature(self, x: float) -> float:
        """Defining-integral evaluation, for cross-checking the closed form."""
        return _tau_by_quadrature(self, x, self.mean)

    def _quantile_continuous(self, q):
        return math.sqrt(-math.log1p(-q))

    def _sample(self, rng, count):
        u = rng.uniform(size=count)
        return np.sqrt(-np.log1p(-u))


class ScaledParetoMax(Distribution):
    """Rescaled maximum of n iid Pareto(alpha) variables on [n^(-1/alpha), inf)."""

    name = "scaledparetomax"

    def __init__(self, n: int, alpha: float):
        super().__init__()
        if not (float(n).is_integer() and n >= 1 and alpha > 0.0):
            raise ParameterError("scaledparetomax requires integer n >= 1, alpha > 0")
        self.n = int(n)
        self.alpha = float(alpha)
        self._support = Support(self.n ** (-1.0 / self.alpha), math.inf)

    def _params(self):
        return (self.n, self.alpha)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        if self.alpha <= 1.0:
            raise UnsupportedError("mean requires alpha > 1")
        if "mean" not in self._cache:
            lo, hi = self.truncated_support()
            value, _ = _quad.integrate(lambda u: u * self.pdf(u), lo, hi)
            self._cache["mean"] = value
        return self._cache["mean"]

    def _w(self, x: float) -> float:
        return x ** (-self.alpha) / self.n

    def log_pdf(self, x):
        if x < self.support.lower:
            return -math.inf
        a, n = self.alpha, self.n
        return math.log(a) - (a + 1.0) * math.log(x) + (n - 1.0) * math.log1p(-self._w(x))

    def cdf(self, x):
        if x <= self.support.lower:
            return 0.0
        return math.exp(self.n * math.log1p(-self._w(x)))

    def sf(self, x):
        if x <= self.support.lower:
            return 1.0
        return -math.expm1(self.n * math.log1p(-self._w(x)))

    def log_cdf(self, x):
        if x <= self.support.lower:
            return -math.inf
        return self.n * math.log1p(-self._w(x))

    def _score_continuous(self, x):
        a, n = self.alpha, self.n
        return -(a + 1.0) / x + (n - 1.0) * a * x ** (-a - 1.0) / (self.n * (1.0 - self._w(x)))

    def _quantile_continuous(self, q):
        # cdf = (1 - x^(-a)/n)^n
        w = -math.expm1(math.log(q) / self.n)
        return (self.n * w) ** (-1.0 / self.alpha)

    def _sample(self, rng, count):
        u = rng.uniform(size=count)
        w = -np.expm1(np.log(u) / self.n)
        return (self.n * w) ** (-1.0 / self.alpha)


class RayleighApproxN(Distribution):
    """Finite-n approximant of the Rayleigh law on [0, sqrt(n)]."""

    name = "rayleighapproxn"

    def __init__(self, n: int):
        super().__init__()
        if not (float(n).is_integer() and n >= 3):
            raise ParameterError("rayleighapproxn requires integer n >= 3")
        self.n = int(n)
        self._support = Support(0.0, math.sqrt(float(self.n)))

    def _params(self):
        return (self.n,)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        if "mean" not in self._cache:
            value, _ = _quad.integrate(lambda u: u * self.pdf(u), 0.0, self.support.upper)
            self._cache["mean"] = value
        return self._cache["mean"]

    def log_pdf(self, x):
        n = self.n
        if x <= 0.0 or x >= self.support.upper:
            return -math.inf
        return math.log(2.0 / n * (n - 1.0) * x) + (n - 2.0) * math.log1p(-x * x / n)

    def cdf(self, x):
        if x <= 0.0:
            return 0.0
        if x >= self.support.upper:
            return 1.0
        return -math.expm1((self.n - 1.0) * math.log1p(-x * x / self.n))

    def sf(self, x):
        if x <= 0.0:
            return 1.0
        if x >= self.support.upper:
            return 0.0
        return math.exp((self.n - 1.0) * math.log1p(-x * x / self.n))

    def log_sf(self, x):
        if x >= self.support.upper:
            return -math.inf
        if x <= 0.0:
            return 0.0
        return (self.n - 1.0) * math.log1p(-x * x / self.n)

    def _score_continuous(self, x):
        n = self.n
        return 1.0 / x - 2.0 * x * (n - 2.0) / (n - x * x)

    def _quantile_continuous(self, q):
        w = -math.expm1(math.log1p(-q) / (self.n - 1.0))
        return math.sqrt(self.n * w)

    def _sample(self, rng, count):
        u = rng.uniform(size=count)
        w = -np.expm1(np.log1p(-u) / (self.n - 1.0))
        return np.sqrt(self.n * w)


# ---------------------------------------------------------------------------
# Lattice catalog entries
# ---------------------------------------------------------------------------

class Poisson(Distribution):
    name = "poisson"

    def __init__(self, lam: float):
        super().__init__()
        if not lam > 0.0:
            raise ParameterError("poisson requires lam > 0")
        self.lam = float(lam)
        self._support = Support(0.0, math.inf, lattice=True)

    def _params(self):
        return (self.lam,)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return self.lam

    @property
    def variance(self):
        return self.lam

    def log_pdf(self, x):
        k = self.support.index_of(x)
        if k is None or k < 0:
            return -math.inf
        return k * math.log(self.lam) - self.lam - math.lgamma(k + 1.0)

    def cdf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return 0.0
        return gammainc_upper(k + 1.0, self.lam)

    def sf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return 1.0
        return gammainc_lower(k + 1.0, self.lam)

    def log_cdf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return -math.inf
        return log_gammainc_upper(k + 1.0, self.lam)

    def log_sf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return 0.0
        return log_gammainc_lower(k + 1.0, self.lam)

    def _score_lattice(self, ell, k):
        if ell == 1:
            return self.lam / (k + 1.0) - 1.0
        return 1.0 - k / self.lam

    def _kernel_lattice(self, ell, k, mu):
        return float(k) if ell == 1 else self.lam

    def _sample(self, rng, count):
        return rng.poisson(self.lam, size=count).astype(float)


class Binomial(Distribution):
    name = "binomial"

    def __init__(self, n: int, theta: float):
        super().__init__()
        if not (float(n).is_integer() and n >= 1 and 0.0 < theta < 1.0):
            raise ParameterError("binomial requires integer n >= 1 and 0 < theta < 1")
        self.n = int(n)
        self.theta = float(theta)
        self._support = Support(0.0, float(self.n), lattice=True)

    def _params(self):
        return (self.n, self.theta)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return self.n * self.theta

    @property
    def variance(self):
        return self.n * self.theta * (1.0 - self.theta)

    def log_pdf(self, x):
        k = self.support.index_of(x)
        if k is None or not 0 <= k <= self.n:
            return -math.inf
        return log_binomial_coeff(self.n, k) + k * math.log(self.theta) \
            + (self.n - k) * math.log1p(-self.theta)

    def cdf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return 0.0
        if k >= self.n:
            return 1.0
        return betainc(self.n - k, k + 1.0, 1.0 - self.theta)

    def sf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return 1.0
        if k >= self.n:
            return 0.0
        return betainc(k + 1.0, self.n - k, self.theta)

    def log_cdf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return -math.inf
        if k >= self.n:
            return 0.0
        return log_betainc(self.n - k, k + 1.0, 1.0 - self.theta)

    def log_sf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return 0.0
        if k >= self.n:
            return -math.inf
        return log_betainc(k + 1.0, self.n - k, self.theta)

    def _score_lattice(self, ell, k):
        n, th = self.n, self.theta
        if ell == 1:
            return ((n + 1.0) * th - (k + 1.0)) / ((k + 1.0) * (1.0 - th))
        return ((n + 1.0) * th - k) / (th * (n + 1.0 - k))

    def _kernel_lattice(self, ell, k, mu):
        if ell == 1:
            return (1.0 - self.theta) * k
        return self.theta * (self.n - k)

    def _sample(self, rng, count):
        return rng.binomial(self.n, self.theta, size=count).astype(float)


class NegBinomial(Distribution):
    name = "negbinomial"

    def __init__(self, r: float, theta: float):
        super().__init__()
        if not (r > 0.0 and 0.0 < theta < 1.0):
            raise ParameterError("negbinomial requires r > 0 and 0 < theta < 1")
        self.r = float(r)
        self.theta = float(theta)
        self._support = Support(0.0, math.inf, lattice=True)

    def _params(self):
        return (self.r, self.theta)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return self.theta * self.r / (1.0 - self.theta)

    @property
    def variance(self):
        return self.theta * self.r / (1.0 - self.theta) ** 2

    def log_pdf(self, x):
        k = self.support.index_of(x)
        if k is None or k < 0:
            return -math.inf
        return self.r * math.log1p(-self.theta) + k * math.log(self.theta) \
            + math.lgamma(k + self.r) - math.lgamma(k + 1.0) - math.lgamma(self.r)

    def cdf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return 0.0
        return betainc(self.r, k + 1.0, 1.0 - self.theta)

    def sf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return 1.0
        return betainc(k + 1.0, self.r, self.theta)

    def log_cdf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return -math.inf
        return log_betainc(self.r, k + 1.0, 1.0 - self.theta)

    def log_sf(self, x):
        k = _lattice_floor(x)
        if k < 0:
            return 0.0
        return log_betainc(k + 1.0, self.r, self.theta)

    def _score_lattice(self, ell, k):
        r, th = self.r, self.theta
        if ell == 1:
            return (k + r) * th / (k + 1.0) - 1.0
        if k == 0:
            return 1.0
        return 1.0 - k / (th * (k - 1.0 + r))

    def _kernel_lattice(self, ell, k, mu):
        if ell == 1:
            return k / (1.0 - self.theta)
        return self.theta * (self.r + k) / (1.0 - self.theta)

    def _sample(self, rng, count):
        return rng.negative_binomial(self.r, 1.0 - self.theta, size=count).astype(float)


class Hypergeometric(Distribution):
    name = "hypergeometric"

    def __init__(self, n: int, K: int, N: int):
        super().__init__()
        ok = all(float(v).is_integer() for v in (n, K, N))
        n, K, N = int(n), int(K), int(N)
        if not (ok and 1 <= n <= N and 0 <= K <= N):
            raise ParameterError("hypergeometric requires 1 <= n <= N and 0 <= K <= N")
        self.n, self.K, self.N = n, K, N
        self._k_min = max(0, n + K - N)
        self._k_max = min(n, K)
        if self._k_min >= self._k_max:
            raise ParameterError("degenerate hypergeometric support")
        self._support = Support(float(self._k_min), float(self._k_max), lattice=True)

    def _params(self):
        return (self.n, self.K, self.N)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return self.n * self.K / self.N

    @property
    def variance(self):
        n, K, N = self.n, self.K, self.N
        return n * (K / N) * (1.0 - K / N) * (N - n) / (N - 1.0)

    def log_pdf(self, x):
        k = self.support.index_of(x)
        if k is None or not self._k_min <= k <= self._k_max:
            return -math.inf
        return log_binomial_coeff(self.K, k) + log_binomial_coeff(self.N - self.K, self.n - k) \
            - log_binomial_coeff(self.N, self.n)

    def _tables(self):
        if "tables" not in self._cache:
            ks = range(self._k_min, self._k_max + 1)
            pmf = [math.exp(self.log_pdf(float(k))) for k in ks]
            pre = []
            acc = 0.0
            for p in pmf:
                acc += p
                pre.append(acc)
            suf = []
            acc = 0.0
            for p in reversed(pmf):
                acc += p
                suf.append(acc)
            suf.reverse()
            self._cache["tables"] = (pre, suf)
        return self._cache["tables"]

    def cdf(self, x):
        k = _lattice_floor(x)
        if k < self._k_min:
            return 0.0
        if k >= self._k_max:
            return 1.0
        pre, _ = self._tables()
        return pre[k - self._k_min]

    def sf(self, x):
        k = _lattice_floor(x)
        if k < self._k_min:
            return 1.0
        if k >= self._k_max:
            return 0.0
        _, suf = self._tables()
        return suf[k - self._k_min + 1]

    def _sample(self, rng, count):
        return rng.hypergeometric(self.K, self.N - self.K, self.n, size=count).astype(float)


class StdBinomial(Distribution):
    """Binomial(n, theta) standardized to mean 0, variance 1 on its shifted lattice."""

    name = "stdbinomial"

    def __init__(self, n: int, theta: float):
        super().__init__()
        self.base = Binomial(n, theta)
        self.n = self.base.n
        self.theta = self.base.theta
        self.r_n = math.sqrt(self.n * self.theta * (1.0 - self.theta))
        origin = -self.n * self.theta / self.r_n
        upper = self.n * (1.0 - self.theta) / self.r_n
        self._support = Support(origin, upper, lattice=True, origin=origin, step=1.0 / self.r_n)

    def _params(self):
        return (self.n, self.theta)

    @property
    def support(self):
        return self._support

    @property
    def mean(self):
        return 0.0

    @property
    def variance(self):
        return 1.0

    def _k(self, x: float) -> int | None:
        return self.support.index_of(x)

    def log_pdf(self, x):
        k = self._k(x)
        if k is None:
            return -math.inf
        return self.base.log_pdf(float(k))

    def cdf(self, x):
        k = _lattice_floor((x - self.support.origin) / self.support.step)
        return self.base.cdf(float(k))

    def sf(self, x):
        k = _lattice_floor((x - self.support.origin) / self.support.step)
        return self.base.sf(float(k))

    def log_cdf(self, x):
        k = _lattice_floor((x - self.support.origin) / self.support.step)
        return self.base.log_cdf(float(k))

    def log_sf(self, x):
        k = _lattice_floor((x - self.support.origin) / self.support.step)
        return self.base.log_sf(float(k))

    def _sample(self, rng, count):
        draws = rng.binomial(self.n, self.theta, size=count).astype(float)
        return (draws - self.n * self.theta) / self.r_n


# ---------------------------------------------------------------------------
# Spec grammar
# ---------------------------------------------------------------------------

_CATALOG: dict[str, tuple[type, int]] = {
    "normal": (Normal, 2),
    "exponential": (Exponential, 1),
    "gamma": (Gamma, 2),
    "beta": (Beta, 2),
    "student": (StudentT, 1),
    "frechet": (Frechet, 1),
    "rayleigh": (Rayleigh, 0),
    "poisson": (Poisson, 1),
    "binomial": (Binomial, 2),
    "negbinomial": (NegBinomial, 2),
    "hypergeometric": (Hypergeometric, 3),
    "scaledparetomax": (ScaledParetoMax, 2),
    "stdbinomial": (StdBinomial, 2),
    "rayleighapproxn": (RayleighApproxN, 1),
}


def catalog_names() -> list[str]:
    return sorted(_CATALOG)


def parse_distribution(spec: str) -> Distribution:
    """Parse `name(p1,p2,...)` (lowercase, positional args) into a catalog entry."""
    text = spec.strip().lower()
    if "(" in text:
        if not text.endswith(")"):
            raise ParameterError(f"malformed distribution spec: {spec!r}")
        name, _, arg_text = text.partition("(")
        arg_text = arg_text[:-1]
    else:
        name, arg_text = text, ""
    name = name.strip()
    if name not in _CATALOG:
        raise ParameterError(f"unknown distribution {name!r}; known: {', '.join(catalog_names())}")
    ctor, arity = _CATALOG[name]
    args: list[float] = []
    if arg_text.strip():
        for piece in arg_text.split(","):
            try:
                args.append(float(piece))
            except ValueError as exc:
                raise ParameterError(f"bad numeric argument {piece!r} in {spec!r}") from exc
    if len(args) != arity:
        raise ParameterError(f"{name} takes {arity} argument(s), got {len(args)}")
    return ctor(*args)
