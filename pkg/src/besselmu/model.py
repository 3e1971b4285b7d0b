"""Model parameters, evaluation configuration, result types, and errors.

The process is the radial part of a 3D Brownian motion with drift mu along
the third axis, killed on exiting (0, r0).  All transition densities are
taken with respect to the speed measure m(dy) = sinh(mu*y)^2 dy for mu > 0,
and y^2 dy in the mu = 0 limit; conversion to a Lebesgue density multiplies
by that weight.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class BesselmuError(Exception):
    """Base class for structured errors raised by this package."""


class DomainError(BesselmuError):
    """An argument lies outside the documented domain."""


class TruncationError(BesselmuError):
    """A series could not be truncated within tolerance under max_terms."""


class QuadratureError(BesselmuError):
    """Adaptive quadrature failed to reach the required error estimate."""


class GridError(BesselmuError):
    """A grid specification is empty or malformed."""


class ConfigError(BesselmuError):
    """An evaluation or simulation configuration is invalid."""


class Rep(enum.Enum):
    """Series representation actually used for an evaluation."""

    SPECTRAL = "spectral"
    IMAGE = "image"


class RepPolicy(enum.Enum):
    """Representation selection policy.

    AUTO picks IMAGE when t/r0^2 < crossover_ratio and SPECTRAL otherwise;
    the other two force a representation.
    """

    AUTO = "auto"
    SPECTRAL = "spectral"
    IMAGE = "image"


@dataclass(frozen=True)
class ProcessParams:
    """Drift mu >= 0 and barrier r0 > 0 of the killed process.

    mu = 0 is the driftless (plain three-dimensional Bessel) limit; every
    formula is evaluated with sinh(mu*a) ratios replaced by their limits.
    """

    mu: float
    r0: float

    def __post_init__(self):
        if not (self.r0 > 0.0):
            raise DomainError(f"r0 must be > 0, got {self.r0}")
        if not (self.mu >= 0.0):
            raise DomainError(f"mu must be >= 0, got {self.mu}")


@dataclass(frozen=True)
class EvalConfig:
    """Series evaluation controls.

    abs_tol is the certified absolute truncation tolerance; max_terms caps
    the series length before a TruncationError; crossover_ratio is the
    dimensionless t/r0^2 threshold used by the AUTO policy.
    """

    abs_tol: float = 1e-12
    rep_policy: RepPolicy = RepPolicy.AUTO
    max_terms: int = 10_000
    crossover_ratio: float = 0.25

    def __post_init__(self):
        if not (self.abs_tol > 0.0):
            raise ConfigError(f"abs_tol must be > 0, got {self.abs_tol}")
        if self.max_terms < 1:
            raise ConfigError(f"max_terms must be >= 1, got {self.max_terms}")
        if not (self.crossover_ratio > 0.0):
            raise ConfigError(
                f"crossover_ratio must be > 0, got {self.crossover_ratio}"
            )


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class DensityResult:
    """A density value with a certified truncation-error bound.

    ``value`` is clamped to be nonnegative; ``raw_value`` keeps the signed
    partial sum (a raw value below -err_bound would indicate a bug, and the
    invariant raw_value >= -err_bound is what tests assert).
    """

    value: float
    err_bound: float
    rep_used: Rep
    terms_used: int
    raw_value: float = field(default=0.0)

    @staticmethod
    def from_raw(raw: float, err_bound: float, rep_used: Rep, terms_used: int) -> "DensityResult":
        return DensityResult(
            value=max(raw, 0.0),
            err_bound=err_bound,
            rep_used=rep_used,
            terms_used=terms_used,
            raw_value=raw,
        )


@dataclass(frozen=True)
class ExitLawPoint:
    """Survival probability and exit-time density at one (t, x)."""

    t: float
    x: float
    survival: float
    density: float
    err_bound: float


@dataclass(frozen=True)
class SupremumPoint:
    """Density of the running supremum at level y > x after time t."""

    t: float
    x: float
    y: float
    density: float
    err_bound: float


@dataclass(frozen=True)
class BoundAudit:
    """One audited grid point: exact value vs an elementary envelope."""

    envelope_id: str
    point: dict
    exact: float
    envelope: float
    ratio: float
    lo: float
    hi: float
    passed: bool


def validate(params: ProcessParams, t, x, y=None, *, x_zero_ok: bool = False,
             y_is_level: bool = False) -> None:
    """Check (t, x[, y]) against the process domain.

    Raises DomainError naming the violated constraint; returns None when all
    constraints hold.  ``x_zero_ok`` admits x = 0 for operations documenting
    the x -> 0 limit.  ``y_is_level`` switches the y constraint from the
    interval 0 < y < r0 to the supremum-level constraint y > x.
    """
    if not (params.r0 > 0.0):
        raise DomainError(f"r0 <= 0: {params.r0}")
    if not (params.mu >= 0.0):
        raise DomainError(f"mu < 0: {params.mu}")
    if t is not None and not (t > 0.0):
        raise DomainError(f"t must be > 0, got {t}")
    if x is not None:
        lo_ok = (x >= 0.0) if x_zero_ok else (x > 0.0)
        if not lo_ok:
            raise DomainError(f"x must be {'>= 0' if x_zero_ok else '> 0'}, got {x}")
        if not (x < params.r0) and not y_is_level:
            raise DomainError(f"x must be < r0 = {params.r0}, got {x}")
    if y is not None:
        if y_is_level:
            if not (y > x):
                raise DomainError(f"level y must be > x = {x}, got {y}")
        else:
            if not (0.0 < y < params.r0):
                raise DomainError(f"y must be in (0, r0) = (0, {params.r0}), got {y}")
