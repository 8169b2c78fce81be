"""Growth functions: power, exponential, exp-of-sqrt and interpolated kinds."""

import bisect
import json
import logging
import math
from dataclasses import dataclass, field

from addspec.model import CapacityError, DomainError, NonConvergenceError
from addspec.model import PreconditionError, RangeError

logger = logging.getLogger('addspec')

BISECTION_PRECISION = 1e-12
BISECTION_MAX_ITER = 200

# Slack for comparisons against domain/range boundaries computed in floats.
_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class GrowthFunction:
    """Positive, strictly increasing, continuous, unbounded f on [domain_start, inf)."""

    domain_start: float = field(default=1.0, kw_only=True)

    kind = ''

    @property
    def domain_end(self) -> float:
        return math.inf

    def eval(self, x: float) -> float:
        """Return f(x)."""
        self._check_domain(x)
        try:
            y = self._eval(x)
        except OverflowError:
            y = math.inf
        if not math.isfinite(y):
            raise CapacityError(f'{self.kind}({x}) exceeds double range', x=x)
        return y

    def log_eval(self, x: float) -> float:
        """Return log f(x) without forming f(x)."""
        self._check_domain(x)
        return self._log_eval(x)

    def inverse(self, y: float) -> float:
        """Return x with f(x) = y."""
        lo = self.eval(self.domain_start)
        if y < lo * (1 - _EDGE_SLACK):
            raise RangeError(
                f'{y} is below f(domain_start) = {lo}', y=y, range_start=lo)
        return max(self._inverse(y), self.domain_start)

    def to_json(self) -> dict:
        raise NotImplementedError

    def _check_domain(self, x: float) -> None:
        if x < self.domain_start - _EDGE_SLACK or x > self.domain_end + _EDGE_SLACK:
            raise DomainError(
                f'x={x} outside [{self.domain_start}, {self.domain_end}]',
                x=x, domain_start=self.domain_start)

    def _eval(self, x: float) -> float:
        raise NotImplementedError

    def _log_eval(self, x: float) -> float:
        return math.log(self._eval(x))

    def _inverse(self, y: float) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class Power(GrowthFunction):
    """alpha * x**h."""

    alpha: float
    h: float

    kind = 'power'

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.h <= 0:
            raise PreconditionError(
                f'power needs alpha > 0 and h > 0, got {self.alpha}, {self.h}',
                alpha=self.alpha, h=self.h)

    def _eval(self, x: float) -> float:
        return self.alpha * x**self.h

    def _log_eval(self, x: float) -> float:
        return math.log(self.alpha) + self.h * math.log(x)

    def _inverse(self, y: float) -> float:
        return (y / self.alpha) ** (1.0 / self.h)

    def to_json(self) -> dict:
        return {'kind': 'power', 'alpha': self.alpha, 'h': self.h}


@dataclass(frozen=True)
class Exponential(GrowthFunction):
    """base**x."""

    base: float

    kind = 'exp'

    def __post_init__(self) -> None:
        if self.base <= 1:
            raise PreconditionError(
                f'exponential base must exceed 1, got {self.base}', base=self.base)

    def _eval(self, x: float) -> float:
        return self.base**x

    def _log_eval(self, x: float) -> float:
        return x * math.log(self.base)

    def _inverse(self, y: float) -> float:
        return math.log(y) / math.log(self.base)

    def to_json(self) -> dict:
        return {'kind': 'exp', 'base': self.base}


@dataclass(frozen=True)
class ExpSqrt(GrowthFunction):
    """exp(c * sqrt(x))."""

    c: float

    kind = 'expsqrt'

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise PreconditionError(
                f'expsqrt rate must be positive, got {self.c}', c=self.c)

    def _eval(self, x: float) -> float:
        return math.exp(self.c * math.sqrt(x))

    def _log_eval(self, x: float) -> float:
        return self.c * math.sqrt(x)

    def _inverse(self, y: float) -> float:
        return (math.log(y) / self.c) ** 2

    def to_json(self) -> dict:
        return {'kind': 'expsqrt', 'c': self.c}


@dataclass(frozen=True)
class Interpolated(GrowthFunction):
    """Growth function through the knots (k, lambda_k), strictly above `base`.

    On each [k_i, k_{i+1}] the value is max(base + mu_i, chord), where
    mu_i = min(lambda_i - base(k_i), lambda_{i+1} - base(k_{i+1})).
    Defined on [first knot, last knot] only.
    """

    base: GrowthFunction
    knots: tuple[tuple[int, float], ...]
    _xs: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _mus: tuple[float, ...] = field(init=False, repr=False, compare=False)

    kind = 'interp'

    def __post_init__(self) -> None:
        if not self.knots:
            raise PreconditionError('interpolation needs at least one knot')
        knots = tuple((int(k), float(lam)) for k, lam in self.knots)
        for (k0, l0), (k1, l1) in zip(knots, knots[1:]):
            if k1 <= k0 or l1 <= l0:
                raise PreconditionError(
                    f'knots must increase strictly in both coordinates at k={k1}',
                    k=k1)
        gaps = []
        for k, lam in knots:
            gap = lam - self.base.eval(k)
            if gap <= 0:
                raise PreconditionError(
                    f'lambda_{k} = {lam} does not exceed g({k})', k=k, lam=lam)
            gaps.append(gap)
        object.__setattr__(self, 'knots', knots)
        object.__setattr__(self, 'domain_start', float(knots[0][0]))
        object.__setattr__(self, '_xs', tuple(k for k, _ in knots))
        object.__setattr__(self, '_mus', tuple(
            min(a, b) for a, b in zip(gaps, gaps[1:])))

    @property
    def domain_end(self) -> float:
        return float(self.knots[-1][0])

    def _eval(self, x: float) -> float:
        i = bisect.bisect_right(self._xs, x) - 1
        i = min(max(i, 0), len(self.knots) - 1)
        k0, l0 = self.knots[i]
        if i == len(self.knots) - 1:
            return l0
        k1, l1 = self.knots[i + 1]
        chord = (l1 - l0) * (x - k0) / (k1 - k0) + l0
        lifted = self.base.eval(max(x, self.base.domain_start)) + self._mus[i]
        return max(chord, lifted)

    def _inverse(self, y: float) -> float:
        top = self.knots[-1][1]
        if y > top * (1 + _EDGE_SLACK):
            raise RangeError(
                f'{y} exceeds the last knot value {top}', y=y, range_end=top)
        lo, hi = self.domain_start, self.domain_end
        for iteration in range(BISECTION_MAX_ITER):
            mid = 0.5 * (lo + hi)
            value = self._eval(mid)
            if abs(value - y) <= BISECTION_PRECISION * y or mid in {lo, hi}:
                logger.debug('interp inverse converged after %d steps', iteration)
                return mid
            if value < y:
                lo = mid
            else:
                hi = mid
        raise NonConvergenceError(
            f'bisection for y={y} did not converge in {BISECTION_MAX_ITER} steps')

    def to_json(self) -> dict:
        return {
            'kind': 'interp',
            'base': self.base.to_json(),
            'knots': [[k, lam] for k, lam in self.knots],
            }


def from_json(data: dict) -> GrowthFunction:
    """Build a growth function from its JSON object form."""
    if not isinstance(data, dict):
        raise PreconditionError(f'growth function must be an object, got {data!r}')
    kind = data.get('kind')
    start = float(data.get('domain_start', 1.0))
    try:
        if kind == 'power':
            return Power(float(data['alpha']), float(data['h']), domain_start=start)
        if kind == 'exp':
            return Exponential(float(data['base']), domain_start=start)
        if kind == 'expsqrt':
            return ExpSqrt(float(data['c']), domain_start=start)
        if kind == 'interp':
            return Interpolated(
                from_json(data['base']),
                tuple((int(k), float(lam)) for k, lam in data['knots']))
    except KeyError as e:
        raise PreconditionError(
            f'growth function {kind!r} missing field {e}', kind=kind) from None
    raise PreconditionError(
        f'unknown growth kind {kind!r}; valid: power, exp, expsqrt, interp',
        kind=kind)


def parse_growth(text: str) -> GrowthFunction:
    """Parse JSON or the shorthand power:alpha:h | exp:b | expsqrt:c."""
    text = text.strip()
    if text.startswith('{'):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as e:
            raise PreconditionError(f'invalid growth JSON: {e}') from None
    parts = text.split(':')
    try:
        if parts[0] == 'power' and len(parts) == 3:
            return Power(_number(parts[1]), _number(parts[2]))
        if parts[0] == 'exp' and len(parts) == 2:
            return Exponential(_number(parts[1]))
        if parts[0] == 'expsqrt' and len(parts) == 2:
            return ExpSqrt(_number(parts[1]))
    except ValueError as e:
        if isinstance(e, PreconditionError):
            raise
        raise PreconditionError(f'bad number in {text!r}: {e}') from None
    raise PreconditionError(
        f'cannot parse growth function {text!r}'
        ' (use JSON or power:a:h, exp:b, expsqrt:c)', text=text)


def _number(s: str) -> float:
    """Parse a float or a simple fraction such as 1/8."""
    if '/' in s:
        num, den = s.split('/', 1)
        return float(num) / float(den)
    return float(s)
