"""Free and barrier-killed transition densities of the drifting-BM radial process.

All densities are with respect to the speed measure m(dy) = sinh(mu*y)^2 dy
(y^2 dy in the mu = 0 convention).  The killed density has two series
representations:

* spectral: sine eigenfunction expansion, geometric-Gaussian decay in the
  term index, fastest for large t/r0^2;
* image: reflected Gaussians on the lattice 2*k*r0, fastest for small t/r0^2.

Both carry certified truncation bounds.  Series cores work on a scaled
mantissa (the leading exponential factored out) so that audits can form
ratios of values far below the double-precision floor.
"""

from __future__ import annotations

import math

from .model import (
    DEFAULT_CONFIG,
    DensityResult,
    DomainError,
    EvalConfig,
    ProcessParams,
    Rep,
    RepPolicy,
    TruncationError,
    validate,
)
from .numerics import (
    ScaledValue,
    gauss_diff,
    gauss_tail_p0,
    lattice_gauss_tail,
    log_sh,
    log_sinh,
    sh,
    sinhc,
)

_LOG_2PI = math.log(2.0 * math.pi)
# relative floor on the scaled mantissa: keeps log-space ratios meaningful
_REL_FLOOR = 1e-14


def _lsinhc(u: float) -> float:
    """log(sinh(u)/u) for u >= 0, safe for large u."""
    if u == 0.0:
        return 0.0
    if u <= 30.0:
        return math.log(sinhc(u))
    return log_sinh(u) - math.log(u)


def free_density(params: ProcessParams, t: float, x: float, y: float) -> DensityResult:
    """Transition density of the free (unkilled) process.

    Closed form; err_bound = 0.  The barrier in ``params`` is ignored.
    x = 0 or y = 0 are evaluated as analytic limits of the same expression.

    Parameters
    ----------
    params : ProcessParams
        Only ``mu`` is used.
    t : float
        Time, > 0.
    x, y : float
        Positions, >= 0.

    Returns
    -------
    DensityResult
        value = exp(-mu^2 t/2) (exp(-(y-x)^2/2t) - exp(-(y+x)^2/2t))
        / (sqrt(2 pi t) sinh(mu x) sinh(mu y)), against m(dy).
    """
    if not (t > 0.0):
        raise DomainError(f"t must be > 0, got {t}")
    if x < 0.0 or y < 0.0:
        raise DomainError(f"x, y must be >= 0, got x={x}, y={y}")
    mu = params.mu
    # p = base * exp(q) * sinh(xy/t) / (Sh(x) Sh(y)), with
    # q = -mu^2 t/2 - (x^2+y^2)/2t and base = 2/sqrt(2 pi t);
    # the hyperbolic ratio is sinhc(xy/t) / (t mu^2 sinhc(mu x) sinhc(mu y)),
    # exact down to x = 0 and/or y = 0.
    q = -0.5 * mu * mu * t - (x * x + y * y) / (2.0 * t)
    log_base = math.log(2.0) - 0.5 * (_LOG_2PI + math.log(t))
    u_xy = x * y / t
    u_x, u_y = mu * x, mu * y
    if max(u_xy, u_x, u_y) <= 30.0:
        ratio = sinhc(u_xy) / t
        if mu > 0.0:
            ratio /= mu * mu * sinhc(u_x) * sinhc(u_y)
        value = math.exp(log_base + q) * ratio
    else:
        log_ratio = _lsinhc(u_xy) - math.log(t)
        if mu > 0.0:
            log_ratio -= 2.0 * math.log(mu) + _lsinhc(u_x) + _lsinhc(u_y)
        value = math.exp(log_base + q + log_ratio)
    return DensityResult.from_raw(value, 0.0, Rep.IMAGE, 1)


def _killed_spectral_scaled(params: ProcessParams, t: float, x: float, y: float,
                            cfg: EvalConfig) -> ScaledValue:
    """Scaled spectral series for the killed density; requires 0 < x, y < r0."""
    mu, r0 = params.mu, params.r0
    beta = math.pi * math.pi * t / (2.0 * r0 * r0)
    # factor exp(-(pi^2/r0^2 + mu^2) t/2) and the prefactor out of the sum
    log_scale = (math.log(2.0 / r0) - log_sh(mu, x) - log_sh(mu, y)
                 - 0.5 * mu * mu * t - beta)
    th_x = math.pi * x / r0
    th_y = math.pi * y / r0
    terms = []
    s_partial = 0.0
    biggest = 0.0
    tol_scaled = cfg.abs_tol * math.exp(-min(log_scale, 700.0))
    n = 0
    while n < cfg.max_terms:
        n += 1
        term = math.sin(n * th_x) * math.sin(n * th_y) * math.exp(-beta * (n * n - 1))
        terms.append(term)
        s_partial += term
        biggest = max(biggest, abs(term))
        # tail(N) <= sum_{n>N} e^{-beta(n^2-1)} = e^beta * integral bound
        tail = math.exp(beta) * gauss_tail_p0(n, beta)
        if tail <= tol_scaled and tail <= _REL_FLOOR * max(abs(s_partial), biggest):
            return ScaledValue(log_scale, math.fsum(terms), tail, n)
    raise TruncationError(
        f"spectral killed density: {cfg.max_terms} terms, tail bound not below tolerance"
    )


def _killed_image_scaled(params: ProcessParams, t: float, x: float, y: float,
                         cfg: EvalConfig) -> ScaledValue:
    """Scaled image series for the killed density; requires 0 < x, y < r0.

    Terms are grouped in reflection pairs so that the two structural
    cancellations (y near 0: same-k pair; y near r0: k with -1-k partner)
    are finished with expm1 instead of literal subtraction.
    """
    mu, r0 = params.mu, params.r0
    inv2t = 1.0 / (2.0 * t)
    shift = (y - x) * (y - x) * inv2t
    log_pref = (-0.5 * mu * mu * t - 0.5 * (_LOG_2PI + math.log(t))
                - log_sh(mu, x) - log_sh(mu, y))
    log_scale = log_pref - shift
    近 = (y + x) > r0  # reflection about r0 is the nearby one
    near_r0 = 近
    terms = []
    s_partial = 0.0
    biggest = 0.0
    tol_scaled = cfg.abs_tol * math.exp(-min(log_scale, 700.0))
    k = -1
    while 2 * (k + 2) <= cfg.max_terms:
        k += 1
        u1 = y - x + 2.0 * k * r0
        w1 = y + x + 2.0 * k * r0
        u2 = y - x - 2.0 * (k + 1) * r0
        w2 = y + x - 2.0 * (k + 1) * r0
        if near_r0:
            group = (gauss_diff(u1, w2, inv2t, shift)
                     - gauss_diff(w1, u2, inv2t, shift))
        else:
            group = (gauss_diff(u1, w1, inv2t, shift)
                     + gauss_diff(u2, w2, inv2t, shift))
        terms.append(group)
        s_partial += group
        biggest = max(biggest, abs(group))
        if k >= 1:
            # omitted |args| all >= 2(k+1) r0 - (x+y) > 0, four lattice families
            d = 2.0 * (k + 1) * r0 - (x + y)
            tail = 4.0 * lattice_gauss_tail(d, 2.0 * r0, inv2t, shift)
            if tail <= tol_scaled and tail <= _REL_FLOOR * max(abs(s_partial), biggest):
                return ScaledValue(log_scale, math.fsum(terms), tail, 2 * (k + 1))
    raise TruncationError(
        f"image killed density: {cfg.max_terms} terms, tail bound not below tolerance"
    )


def _limit_spectral(params: ProcessParams, t: float, x: float, y: float,
                    cfg: EvalConfig) -> DensityResult:
    """Spectral killed density when x = 0 and/or y = 0 (analytic limit).

    Each vanishing position replaces sin(n pi a/r0)/sinh(mu a) by its limit
    n pi / (r0 mu), or n pi / r0 in the mu = 0 convention.
    """
    mu, r0 = params.mu, params.r0
    beta = math.pi * math.pi * t / (2.0 * r0 * r0)
    d0 = mu if mu > 0.0 else 1.0
    pref = (2.0 / r0) * math.exp(-0.5 * mu * mu * t)

    def factor(a: float, n: int) -> float:
        if a == 0.0:
            return n * math.pi / (r0 * d0)
        return math.sin(n * math.pi * a / r0) / sh(mu, a)

    # term magnitude grows at most like n^2; stop with the matching tail bound
    p = (x == 0.0) + (y == 0.0)
    terms = []
    n = 0
    while n < cfg.max_terms:
        n += 1
        term = pref * factor(x, n) * factor(y, n) * math.exp(-beta * n * n)
        terms.append(term)
        cmax = pref * (math.pi / (r0 * d0)) ** p
        if p == 1:
            ok_n = n >= math.sqrt(1.0 / (2.0 * beta))
            tail = cmax * math.exp(-beta * n * n) / (2.0 * beta) if ok_n else math.inf
        else:
            ok_n = n >= math.sqrt(1.0 / beta)
            tail = (cmax * (n * math.exp(-beta * n * n) / (2.0 * beta)
                            + gauss_tail_p0(n, beta) / (2.0 * beta))) if ok_n else math.inf
        if tail <= cfg.abs_tol:
            return DensityResult.from_raw(math.fsum(terms), tail, Rep.SPECTRAL, n)
    raise TruncationError("spectral killed density limit form: max_terms exhausted")


def killed_density_spectral(params: ProcessParams, t: float, x: float, y: float,
                            cfg: EvalConfig = DEFAULT_CONFIG) -> DensityResult:
    """Killed transition density via the sine eigenfunction expansion.

    Terms 2 sin(n pi x/r0) sin(n pi y/r0) / (r0 sinh(mu x) sinh(mu y))
    * exp(-(n^2 pi^2/r0^2 + mu^2) t/2); truncated when the certified
    Gaussian-integral tail bound drops below cfg.abs_tol.  x = 0 or y = 0
    are evaluated as analytic limits.
    """
    _check_kernel_args(params, t, x, y)
    if x == 0.0 or y == 0.0:
        return _limit_spectral(params, t, x, y, cfg)
    sv = _killed_spectral_scaled(params, t, x, y, cfg)
    return DensityResult.from_raw(sv.value, sv.err, Rep.SPECTRAL, sv.terms)


def killed_density_image(params: ProcessParams, t: float, x: float, y: float,
                         cfg: EvalConfig = DEFAULT_CONFIG) -> DensityResult:
    """Killed transition density via the reflected-Gaussian (image) series.

    exp(-mu^2 t/2)/(sqrt(2 pi t) sinh(mu x) sinh(mu y)) *
    sum_k [exp(-(y-x+2k r0)^2/2t) - exp(-(y+x+2k r0)^2/2t)], with a certified
    lattice-Gaussian tail bound.  x = 0 or y = 0: analytic limit via the
    spectral limit form (the image limit is the same function).
    """
    _check_kernel_args(params, t, x, y)
    if x == 0.0 or y == 0.0:
        res = _limit_spectral(params, t, x, y, cfg)
        return DensityResult.from_raw(res.raw_value, res.err_bound, Rep.IMAGE,
                                      res.terms_used)
    sv = _killed_image_scaled(params, t, x, y, cfg)
    return DensityResult.from_raw(sv.value, sv.err, Rep.IMAGE, sv.terms)


def killed_density(params: ProcessParams, t: float, x: float, y: float,
                   cfg: EvalConfig = DEFAULT_CONFIG) -> DensityResult:
    """Representation dispatcher for the killed density.

    AUTO picks the image series when t/r0^2 < cfg.crossover_ratio and the
    spectral series otherwise; the forced policies delegate directly.
    """
    if cfg.rep_policy is RepPolicy.SPECTRAL:
        return killed_density_spectral(params, t, x, y, cfg)
    if cfg.rep_policy is RepPolicy.IMAGE:
        return killed_density_image(params, t, x, y, cfg)
    if t / (params.r0 * params.r0) < cfg.crossover_ratio:
        return killed_density_image(params, t, x, y, cfg)
    return killed_density_spectral(params, t, x, y, cfg)


def killed_density_rescale(params: ProcessParams, t: float, x: float, y: float):
    """Reduce the killed density to the unit barrier.

    Returns (params_dst, t_dst, x_dst, y_dst, factor) with
    p^{r0}(t; x, y) = factor * p^{1}(t/r0^2; x/r0, y/r0), where

        factor = sinh(mu x/r0) sinh(mu y/r0) / (sinh(mu x) sinh(mu y) r0)
                 * exp(-(mu^2 t/2)(1 - 1/r0^2)).
    """
    validate(params, t, x, y)
    mu, r0 = params.mu, params.r0
    from .numerics import sinh_ratio

    factor = (sinh_ratio(mu, x / r0, x) * sinh_ratio(mu, y / r0, y) / r0
              * math.exp(-0.5 * mu * mu * t * (1.0 - 1.0 / (r0 * r0))))
    return (ProcessParams(mu, 1.0), t / (r0 * r0), x / r0, y / r0, factor)


def _check_kernel_args(params: ProcessParams, t: float, x: float, y: float) -> None:
    if not (t > 0.0):
        raise DomainError(f"t must be > 0, got {t}")
    if not (0.0 <= x < params.r0):
        raise DomainError(f"x must be in [0, r0), got {x}")
    if not (0.0 <= y < params.r0):
        raise DomainError(f"y must be in [0, r0), got {y}")
