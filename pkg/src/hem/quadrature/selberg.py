"""Quadrature of the two-variable Selberg integrals on (0,1)^2 and (0,1)x(1,inf)."""

from __future__ import annotations

from ..closedform import SelbergArgs
from ..core import DomainError
from .rules import QuadResult, integrate_box


def _real_args(args: SelbergArgs) -> tuple[float, float, float]:
    vals = [complex(v) for v in args]
    if any(v.imag != 0 for v in vals):
        raise DomainError("quadrature oracles take real exponents")
    return vals[0].real, vals[1].real, vals[2].real


def quad_selberg22(args: SelbergArgs, tol: float = 1e-10) -> QuadResult:
    """Integral over the unit square of ``(t1 t2)^(a-1) ((1-t1)(1-t2))^(b-1) |t2-t1|^(2c)``.

    The ordered half ``t1 < t2`` is mapped by ``t1 = s*t2``, which separates the
    corner at the origin and the diagonal into endpoint powers of ``s`` and
    ``t2``.  The factor ``1 - s*t2`` is evaluated as ``(1-s) + s(1-t2)``.
    """
    a, b, c = _real_args(args)
    if not args.converges22():
        raise DomainError(f"{args} lies outside the convergence region; use the closed form")

    def rest(s_pair, t_pair):
        s, sc = s_pair
        _, tc = t_pair
        return (sc + s * tc) ** (b - 1)

    res = integrate_box(rest, [(a - 1, 2 * c), (2 * a + 2 * c - 1, b - 1)], tol)
    return QuadResult(2 * res.value, 2 * res.error_estimate, res.evaluations, res.method)


def quad_selberg21(args: SelbergArgs, tol: float = 1e-10) -> QuadResult:
    """Integral over ``(0,1) x (1,inf)`` of the Selberg weight.

    The unbounded variable is inverted, ``t2 = 1/u``, giving endpoint powers
    ``u^(-a-b-2c) (1-u)^(b-1)`` and the mixed factor ``(1 - t1*u)^(2c)``.
    """
    a, b, c = _real_args(args)
    if not args.converges21():
        raise DomainError(f"{args} lies outside the convergence region; use the closed form")

    def rest(t_pair, u_pair):
        t, tc = t_pair
        _, uc = u_pair
        return (tc + t * uc) ** (2 * c)

    return integrate_box(rest, [(a - 1, b - 1), (-a - b - 2 * c, b - 1)], tol)
