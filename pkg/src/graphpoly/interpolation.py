"""Certified multiplicative approximation by truncating the log's Taylor series.

Given the first coefficients of a polynomial with no zeros in a disk of
radius R around 0, the Taylor coefficients of its log follow from a
triangular O(m^2) system; truncating after m terms costs at most
d * delta^m / (1 - delta) in the log for |z| <= delta * R, so exponentiating
the truncation gives a value within a multiplicative factor e^(eps t),
|t| <= 1. The truncation bound is what the certificate promises; float error
is kept out of it by running the triangular system in exact rationals
whenever the inputs are exact, converting to floats only at evaluation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .certify import zero_free_radius
from .coefficients import ALGEBRA_CAP, compute_alpha
from .errors import (
    BudgetExceededError,
    NumericsError,
    OutsideCertifiedRegionError,
)
from .graphs import Graph, max_degree
from .oracles import BRUTE_FORCE_CAP, brute_force_independence_coeffs

DELTA_FLOOR = 0.05

# auto coefficient routing: the expansion algebra is cached and cheap up to
# this order, while deeper prefixes cost less through the exact oracle
AUTO_ENGINE_CAP = 6


@dataclass
class LogTaylor:
    """Taylor coefficients c_k of log P at 0, k = 0..m (c_k exact or complex)."""

    c: list
    m: int


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def log_taylor(a: Sequence, m: int) -> LogTaylor:
    """Taylor coefficients of log P from the coefficients a_0.. of P.

    Differentiating P = e^g once gives P' = g' P, hence the triangular
    system r*a_r = sum_{k=1}^{r} k c_k a_{r-k} solved for c_r in O(r) per
    order; coefficients past the degree of P are treated as zero. When the
    inputs are exact (ints or Fractions, with a_0 = 1) the c_k stay exact.
    """
    a = list(a)
    if not a or a[0] == 0:
        raise ValueError("log undefined at 0: a_0 must be nonzero")
    exact = all(_is_exact(x) for x in a) and a[0] == 1
    if exact:
        c0 = Fraction(0)
        coeffs = [Fraction(x) for x in a]
    else:
        c0 = cmath.log(complex(a[0]))
        coeffs = [complex(x) for x in a]
    c = [c0]
    for r in range(1, m + 1):
        a_r = coeffs[r] if r < len(coeffs) else (Fraction(0) if exact else 0j)
        s = r * a_r
        for k in range(max(1, r - len(coeffs) + 1), r):
            s -= k * c[k] * coeffs[r - k]
        c.append(s / (r * coeffs[0]))
    return LogTaylor(c=c, m=m)


def series_exp(c: Sequence, m: int) -> list:
    """Formal exponential of a truncated series, inverse of log_taylor."""
    c = list(c) + [Fraction(0)] * max(0, m + 1 - len(c))
    exact = all(_is_exact(x) for x in c)
    if c[0] == 0:
        a0 = Fraction(1) if exact else 1.0 + 0j
    else:
        a0 = cmath.exp(complex(c[0]))
    a = [a0]
    for r in range(1, m + 1):
        s = sum(k * c[k] * a[r - k] for k in range(1, r + 1))
        a.append(s / r)
    return a


def truncation_order(d: int, eps: float, delta: float) -> int:
    """Smallest m with d * delta^m / (1 - delta) <= eps, floored at 1."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not (0 < delta < 1):
        raise ValueError("delta must lie in (0, 1)")
    m = max(1, math.ceil(math.log(d / (eps * (1 - delta))) / math.log(1 / delta)))
    while m > 1 and d * delta ** (m - 1) / (1 - delta) <= eps:
        m -= 1
    while d * delta**m / (1 - delta) > eps:
        m += 1
    return m


def _float_range_ok(ck) -> bool:
    if isinstance(ck, int):
        return ck.bit_length() < 960
    return ck.numerator.bit_length() - ck.denominator.bit_length() < 960


def evaluate_truncated(t: LogTaylor, z: complex) -> complex:
    """exp of the truncated log series at z (Horner, then complex exp).

    Exact coefficients too large for floats (deep truncations) are summed in
    exact rational arithmetic and converted only at the end; a series value
    beyond float range is an overflow error with a magnitude report.
    """
    z = complex(z)
    exact = all(_is_exact(ck) for ck in t.c)
    acc = None
    if not exact or all(_float_range_ok(ck) for ck in t.c):
        acc = 0j
        for ck in reversed(t.c):
            acc = acc * z + complex(ck)
        if not (cmath.isfinite(acc)):
            if not exact:
                raise NumericsError(
                    f"truncated log series overflowed float range at z = {z}"
                )
            acc = None
    if acc is None:
        zr, zi = Fraction(z.real), Fraction(z.imag)
        ar = ai = Fraction(0)
        for ck in reversed(t.c):
            ar, ai = ar * zr - ai * zi + ck, ar * zi + ai * zr
        try:
            acc = complex(float(ar), float(ai))
        except OverflowError:
            raise NumericsError(
                "truncated log series magnitude out of float range: "
                f"about 2^{max(ar.numerator.bit_length() - ar.denominator.bit_length(), ai.numerator.bit_length() - ai.denominator.bit_length())}"
            ) from None
    try:
        return cmath.exp(acc)
    except OverflowError:
        raise NumericsError(
            f"exp overflow: truncated log series evaluated to {acc} "
            f"(|Re| = {abs(acc.real):.3e})"
        ) from None


@dataclass
class ApproxCertificate:
    value: complex
    epsilon_guaranteed: float | None
    m_used: int
    delta: float
    radius_assumed: float
    radius_source: str  # shearer | chromatic_691 | user_supplied | none

    def to_json_dict(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "epsilon_guaranteed": self.epsilon_guaranteed,
            "m_used": self.m_used,
            "delta": self.delta,
            "radius_assumed": self.radius_assumed,
            "radius_source": self.radius_source,
        }


def _independence_coeffs(g: Graph, up_to: int, source: str, algebra_cap: int) -> list:
    """a_0..a_up_to of the independence polynomial (zeros past the degree)."""
    if source == "engine":
        return compute_alpha(g, up_to, algebra_cap=algebra_cap)
    if source == "oracle":
        coeffs = brute_force_independence_coeffs(g)
        return coeffs + [0] * max(0, up_to + 1 - len(coeffs))
    raise ValueError(f"unknown coefficient source {source!r}")


def approx_independence(
    g: Graph,
    lam: complex,
    eps: float,
    radius_override: float | None = None,
    coeff_source: str = "auto",
    algebra_cap: int = ALGEBRA_CAP,
) -> ApproxCertificate:
    """Multiplicative eps-approximation of Z_g(lam) inside the zero-free disk.

    The radius defaults to the max-degree disk bound; an explicit override
    switches the certificate to user_supplied with no guarantee. Coefficient
    source "auto" uses the bounded-degree engine when the needed prefix fits
    the algebra cap and falls back to the exact oracle otherwise (feasible
    for n up to the brute-force cap).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    lam = complex(lam)
    if radius_override is not None:
        radius = float(radius_override)
        source = "user_supplied"
    else:
        radius = float(zero_free_radius(max_degree(g)))
        source = "shearer"
    if g.n == 0 or lam == 0:
        return ApproxCertificate(
            value=complex(1),
            epsilon_guaranteed=eps if source != "user_supplied" else None,
            m_used=0,
            delta=DELTA_FLOOR,
            radius_assumed=radius,
            radius_source=source,
        )
    if abs(lam) >= radius:
        raise OutsideCertifiedRegionError(
            f"|lambda| = {abs(lam):.6g} is outside the certified zero-free disk "
            f"of radius {radius:.6g} (source: {source})"
        )
    delta = max(abs(lam) / radius, DELTA_FLOOR)
    d = g.n
    m = truncation_order(d, eps, delta)
    need = min(m, g.n)
    if coeff_source == "auto":
        if need <= min(algebra_cap, AUTO_ENGINE_CAP):
            coeff_source = "engine"
        elif g.n <= BRUTE_FORCE_CAP:
            coeff_source = "oracle"
        else:
            raise BudgetExceededError(
                f"need {need} coefficients: beyond the practical engine order "
                f"({AUTO_ENGINE_CAP}) and the graph exceeds the exact-oracle cap "
                f"({BRUTE_FORCE_CAP} vertices)",
                cap_name="algebra_cap",
            )
    a = _independence_coeffs(g, need, coeff_source, algebra_cap)
    t = log_taylor(a, m)
    value = evaluate_truncated(t, lam)
    return ApproxCertificate(
        value=value,
        epsilon_guaranteed=eps if source != "user_supplied" else None,
        m_used=m,
        delta=delta,
        radius_assumed=radius,
        radius_source=source,
    )
