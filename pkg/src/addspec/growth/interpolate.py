"""Interpolating growth function lying strictly above a given one."""

from collections.abc import Iterable

from addspec.growth.function import GrowthFunction, Interpolated


def interpolate_above(g: GrowthFunction,
                      knots: Iterable[tuple[int, float]]) -> Interpolated:
    """Return f with f(k) = lambda_k at every knot and f > g in between.

    Knots must increase strictly in both coordinates and satisfy
    lambda_k > g(k); violations raise PreconditionError naming the knot.
    """
    return Interpolated(g, tuple((int(k), float(lam)) for k, lam in knots))
