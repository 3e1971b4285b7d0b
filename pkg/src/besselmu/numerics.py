"""Shared scalar numerics: stable sinh ratios, Gaussian-pair differences,
and certified tails for Gaussian-type series.

Everything here is plain-float scalar math.  Series evaluators in the other
modules lean on three ideas:

* hyperbolic factors are computed through ``sh``/``log_sinh`` so that the
  drift-free limit (mu = 0, where every sinh(mu*a) degenerates to a) and the
  large-argument regime (log space) come out of the same code path;
* differences of nearby Gaussians go through ``gauss_diff`` (expm1 form),
  never through literal subtraction;
* truncation tails are bounded by closed-form integrals of u^p * exp(-b*u^2),
  which are valid upper bounds once the summand is decreasing.
"""

from __future__ import annotations

import math

from scipy.special import erfc

# sinh(u) switches to exp form around here; exp(-2u) below 1e-26 is lost anyway
_LOG_SINH_SWITCH = 30.0
# below this, sinh(u)/u uses its Taylor polynomial
_SINHC_SMALL = 1e-4


def sinhc(u: float) -> float:
    """sinh(u)/u, exact at u = 0."""
    if abs(u) < _SINHC_SMALL:
        u2 = u * u
        return 1.0 + u2 / 6.0 * (1.0 + u2 / 20.0)
    return math.sinh(u) / u


def log_sinh(u: float) -> float:
    """log(sinh(u)) for u > 0 without overflow."""
    if u <= 0.0:
        raise ValueError("log_sinh needs u > 0")
    if u > _LOG_SINH_SWITCH:
        return u - math.log(2.0) + math.log1p(-math.exp(-2.0 * u))
    return math.log(math.sinh(u))


def sh(mu: float, a: float) -> float:
    """sinh(mu*a), with the mu = 0 convention sinh(mu*a) -> a.

    The convention matches densities taken against the speed measure
    sinh(mu*y)^2 dy for mu > 0 and y^2 dy for mu = 0.
    """
    if mu == 0.0:
        return a
    return math.sinh(mu * a)


def dsh(mu: float, a: float) -> float:
    """d/da of sh(mu, a): mu*cosh(mu*a), or 1 in the mu = 0 convention."""
    if mu == 0.0:
        return 1.0
    return mu * math.cosh(mu * a)


def log_sh(mu: float, a: float) -> float:
    """log of sh(mu, a) for a > 0, safe for large mu*a."""
    if mu == 0.0:
        return math.log(a)
    return log_sinh(mu * a)


def sinh_ratio(mu: float, a: float, b: float) -> float:
    """sinh(mu*a)/sinh(mu*b) for a, b > 0, continuous in mu at 0.

    Uses sinh(u)/u below the series cutoff (so mu -> 0 tends to a/b
    smoothly) and log space once either argument exceeds the exp switch.
    """
    if mu == 0.0:
        return a / b
    ua, ub = mu * a, mu * b
    if max(ua, ub) > _LOG_SINH_SWITCH:
        return math.exp(log_sinh(ua) - log_sinh(ub))
    return (a / b) * (sinhc(ua) / sinhc(ub))


def ucoth_frac(u: float) -> float:
    """(u*coth(u) - 1)/u^2, exact limit 1/3 at u = 0."""
    if abs(u) < 0.1:
        u2 = u * u
        # u*coth(u) = 1 + u^2/3 - u^4/45 + 2u^6/945 - u^8/4725 + ...
        return 1.0 / 3.0 - u2 / 45.0 + 2.0 * u2 * u2 / 945.0 - u2 * u2 * u2 / 4725.0
    return (u / math.tanh(u) - 1.0) / (u * u)


def gauss_diff(u: float, v: float, inv2t: float, shift: float = 0.0) -> float:
    """exp(shift - u^2*inv2t) - exp(shift - v^2*inv2t), cancellation-safe.

    The smaller-magnitude exponent is factored out and the difference is
    finished with expm1, so nearby Gaussians lose no precision.  ``shift``
    rescales both terms (callers keep all net exponents <= 0 with it).
    """
    u2, v2 = u * u, v * v
    if u2 <= v2:
        return -math.exp(shift - u2 * inv2t) * math.expm1((u2 - v2) * inv2t)
    return math.exp(shift - v2 * inv2t) * math.expm1((v2 - u2) * inv2t)


def gauss_tail_p0(n: float, beta: float) -> float:
    """Upper bound for sum_{k>n} exp(-beta*k^2): integral_n^inf exp(-beta*u^2) du."""
    # (1/2)sqrt(pi/beta) * erfc(sqrt(beta)*n); erfc underflows harmlessly to 0
    return 0.5 * math.sqrt(math.pi / beta) * float(erfc(math.sqrt(beta) * n))


def gauss_tail_p1(n: float, beta: float) -> float:
    """Upper bound for sum_{k>n} k*exp(-beta*k^2), valid once n >= sqrt(1/(2 beta))."""
    return math.exp(-beta * n * n) / (2.0 * beta)


def gauss_tail_p3(n: float, beta: float) -> float:
    """Upper bound for sum_{k>n} k^3*exp(-beta*k^2), valid once n >= sqrt(3/(2 beta))."""
    return math.exp(-beta * n * n) * (n * n / (2.0 * beta) + 1.0 / (2.0 * beta * beta))


def lattice_gauss_tail(d: float, step: float, inv2t: float) -> float:
    """Upper bound for sum_{j>=0} exp(-(d + step*j)^2 * inv2t), d, step > 0.

    Uses (d + step*j)^2 >= d^2 + 2*d*step*j, giving a geometric envelope.
    """
    if d <= 0.0 or step <= 0.0:
        raise ValueError("lattice_gauss_tail needs d > 0 and step > 0")
    rho = math.exp(-2.0 * d * step * inv2t)
    return math.exp(-d * d * inv2t) / (1.0 - rho)


def lattice_gauss_tail_linear(d: float, step: float, inv2t: float) -> float:
    """Upper bound for sum_{j>=0} (d + step*j) * exp(-(d + step*j)^2 * inv2t)."""
    if d <= 0.0 or step <= 0.0:
        raise ValueError("lattice_gauss_tail_linear needs d > 0 and step > 0")
    rho = math.exp(-2.0 * d * step * inv2t)
    base = math.exp(-d * d * inv2t)
    one_m = 1.0 - rho
    return base * (d / one_m + step * rho / (one_m * one_m))


class ScaledValue:
    """A nonnegative quantity kept as exp(log_scale) * mantissa.

    Series cores return one of these so that audits can form ratios of
    values far below the double-precision floor.  ``value`` collapses to a
    plain float (0.0 on underflow); ``log`` stays finite whenever the
    mantissa is positive.
    """

    __slots__ = ("log_scale", "mantissa", "err_mantissa", "terms")

    def __init__(self, log_scale: float, mantissa: float, err_mantissa: float, terms: int):
        self.log_scale = log_scale
        self.mantissa = mantissa
        self.err_mantissa = err_mantissa
        self.terms = terms

    @property
    def value(self) -> float:
        return math.exp(self.log_scale) * self.mantissa if self.mantissa != 0.0 else 0.0

    @property
    def err(self) -> float:
        return math.exp(self.log_scale) * self.err_mantissa

    @property
    def log(self) -> float:
        if self.mantissa <= 0.0:
            return -math.inf
        return self.log_scale + math.log(self.mantissa)
