"""Data models for addspec: report dataclasses, error hierarchy, JSON helpers."""

import logging
import math
from dataclasses import dataclass, field, fields, is_dataclass
from fractions import Fraction

logger = logging.getLogger('addspec')

# Tail windows and tolerances used across modules.
DEFAULT_TOLERANCE = 0.01
DEFAULT_GRID_MAX = 1e6
GRID_RATIO = 1.05


class AddspecError(Exception):
    """Base class for all addspec errors."""


class PreconditionError(AddspecError, ValueError):
    """The input violates a hypothesis of the construction.

    This is an expected, reportable outcome; `violation` names the offending
    quantity so reports can show it.
    """

    def __init__(self, message: str, **violation: object) -> None:
        super().__init__(message)
        self.violation = violation


class DomainError(PreconditionError):
    """Growth function evaluated below its domain."""


class RangeError(PreconditionError):
    """Growth function inverted below its range."""


class BijectionError(PreconditionError):
    """Permutation is not a bijection on the requested window."""


class HypothesisError(PreconditionError):
    """A theorem hypothesis fails on the checked window."""


class ExhaustionError(PreconditionError):
    """A selection interval holds no unused admissible element."""


class CapacityError(PreconditionError):
    """A configured memory or size cap would be exceeded."""


class NonConvergenceError(AddspecError):
    """Bisection exceeded its iteration cap."""


class CollisionError(AddspecError):
    """Sequence values collided where disjointness is guaranteed."""


@dataclass(frozen=True)
class StabilityVerdict:
    """Finite-scale verdict on f(x+delta) ~ f(x)."""

    delta: float
    grid_max: float
    sup_ratio: float
    tail_sup_ratio: float
    tolerance: float
    stable: bool
    trend: list[tuple[float, float]] = field(default_factory=list)


@dataclass(frozen=True)
class AsymptoticVerdict:
    """Quantified statement: a_n/f(n) within epsilon on the tail window."""

    epsilon: float
    threshold_index: int
    window_start: int
    window_end: int
    sup_deviation: float
    holds: bool
    limit_points: list[dict] = field(default_factory=list)


@dataclass(frozen=True)
class DensityEstimate:
    """Min/max of C(0,x)/(x+1) over the tail window [x_max/2, x_max]."""

    x_max: int
    lower: float
    upper: float


@dataclass(frozen=True)
class CoverageReport:
    """h-fold sumset coverage of [0, X]."""

    h: int
    x_max: int
    missing: list[int]
    missing_count: int
    largest_missing: int | None
    n0_window: int | None
    is_window_basis: bool


@dataclass(frozen=True)
class EigenvalueReport:
    """Tail estimate of a_n/n^h against the 1/h! ceiling."""

    h: int
    alpha_hat: float
    bound: float
    ineq1_ok: bool
    ineq2_ok: bool


@dataclass(frozen=True)
class ScanReport:
    """Middle-zone statistics of the fractional parts of k*log_v(u)."""

    u: int
    v: int
    K: int
    hits_middle: int
    first_violation: int | None
    epsilon_star: float
    min_relative_gap: float
    min_gap_k: int
    min_gap_n: int
    min_gap_exact: Fraction | None
    exact_fallbacks: int = 0


def format_fraction(q: Fraction) -> str:
    """Render a Fraction as 'p/q' (or 'p' when integral)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f'{q.numerator}/{q.denominator}'


def to_jsonable(obj: object) -> object:
    """Convert report objects into JSON-ready values.

    Integers wider than 53 bits become decimal strings so no consumer
    silently rounds them; non-finite floats become strings.
    """
    if hasattr(obj, 'to_json') and not isinstance(obj, type):
        return to_jsonable(obj.to_json())
    if is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < 2**53 else str(obj)
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)
