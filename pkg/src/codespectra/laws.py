"""Reference spectral laws: Wigner semicircle and Marchenko-Pastur.

Semicircle: density sqrt(4 - x^2)/(2 pi) on [-2, 2], closed-form CDF, and
even moments equal to Catalan numbers.  Marchenko-Pastur with aspect ratio
y in (0, 1): density sqrt((b - x)(x - a))/(2 pi x y) on [a, b] with
a = (1 - sqrt(y))^2 and b = (1 + sqrt(y))^2; its CDF has no convenient
elementary form, so it is integrated adaptively after substituting away
the square-root edge singularities.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import asin, comb, pi, sqrt

import numpy as np

from .errors import ParameterError

MP_CDF_TOL = 1e-10


def sc_pdf(x: float) -> float:
    if abs(x) >= 2.0:
        return 0.0
    return sqrt(4.0 - x * x) / (2.0 * pi)


def sc_cdf(x: float) -> float:
    if x <= -2.0:
        return 0.0
    if x >= 2.0:
        return 1.0
    return 0.5 + x * sqrt(4.0 - x * x) / (4.0 * pi) + asin(x / 2.0) / pi


def sc_moment(ell: int) -> float:
    """Integral of x^ell against the semicircle: 0 odd, Catalan(ell/2) even."""
    if ell < 1:
        raise ParameterError(f"moment order must be >= 1, got {ell}")
    if ell % 2:
        return 0.0
    return float(2 * comb(ell, ell // 2) // (ell + 2))


def _check_aspect(y: float) -> None:
    if not 0.0 < y < 1.0:
        raise ParameterError(f"aspect ratio must lie in (0, 1), got {y}")


def mp_support(y: float) -> tuple[float, float]:
    _check_aspect(y)
    r = sqrt(y)
    return (1.0 - r) ** 2, (1.0 + r) ** 2


def mp_pdf(x: float, y: float) -> float:
    a, b = mp_support(y)
    if x <= a or x >= b:
        return 0.0
    return sqrt((b - x) * (x - a)) / (2.0 * pi * x * y)


def mp_moment(ell: int, y: float) -> float:
    """sum_{j=0}^{ell-1} y^j/(j+1) C(ell,j) C(ell-1,j)."""
    _check_aspect(y)
    if ell < 1:
        raise ParameterError(f"moment order must be >= 1, got {ell}")
    return sum(
        y**j / (j + 1) * comb(ell, j) * comb(ell - 1, j) for j in range(ell)
    )


def _adaptive_simpson(f, a: float, b: float, tol: float) -> float:
    def simpson(lo, flo, hi, fhi, fmid):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, flo, hi, fhi, fmid, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        flm = f(lmid)
        frm = f(rmid)
        left = simpson(lo, flo, mid, fmid, flm)
        right = simpson(mid, fmid, hi, fhi, frm)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return recurse(lo, flo, mid, fmid, flm, left, eps / 2.0, depth - 1) + \
            recurse(mid, fmid, hi, fhi, frm, right, eps / 2.0, depth - 1)

    if a >= b:
        return 0.0
    fa, fb = f(a), f(b)
    mid = 0.5 * (a + b)
    fm = f(mid)
    whole = simpson(a, fa, b, fb, fm)
    return recurse(a, fa, b, fb, fm, whole, tol, 48)


def _mp_cdf_left(x: float, y: float) -> float:
    # integral over [a, x] for x at or below the midpoint, with the edge
    # singularity removed by x = a + u^2
    a, b = mp_support(y)
    hi = sqrt(x - a)

    def g(u):
        return 2.0 * u * mp_pdf(a + u * u, y)

    return _adaptive_simpson(g, 0.0, hi, MP_CDF_TOL)


def _mp_cdf_right(x: float, y: float) -> float:
    # integral over [x, b], with the edge singularity removed by x = b - u^2
    a, b = mp_support(y)
    hi = sqrt(b - x)

    def g(u):
        return 2.0 * u * mp_pdf(b - u * u, y)

    return _adaptive_simpson(g, 0.0, hi, MP_CDF_TOL)


def mp_cdf(x: float, y: float) -> float:
    a, b = mp_support(y)
    if x <= a:
        return 0.0
    if x >= b:
        return 1.0
    mid = 0.5 * (a + b)
    if x <= mid:
        return _mp_cdf_left(x, y)
    return 1.0 - _mp_cdf_right(x, y)


def mp_cdf_grid(xs, y: float) -> np.ndarray:
    """CDF on an ascending grid, one quadrature per segment (shared work)."""
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or (np.diff(xs) < 0).any():
        raise ParameterError("grid must be one-dimensional and ascending")
    out = np.empty_like(xs)
    if xs.size == 0:
        return out
    out[0] = mp_cdf(float(xs[0]), y)
    a, b = mp_support(y)
    for i in range(1, xs.size):
        lo, hi = float(xs[i - 1]), float(xs[i])
        lo_c, hi_c = max(lo, a), min(hi, b)
        if hi_c <= lo_c:
            out[i] = out[i - 1]
        else:
            out[i] = out[i - 1] + _adaptive_simpson(
                lambda t: mp_pdf(t, y), lo_c, hi_c, MP_CDF_TOL
            )
    return np.minimum(out, 1.0)


@dataclass(frozen=True)
class LawSpec:
    """Reference law selector: semicircle ("sc") or Marchenko-Pastur ("mp")."""

    kind: str
    y: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("sc", "mp"):
            raise ParameterError(f"unknown law kind: {self.kind!r}")
        if self.kind == "mp":
            if self.y is None:
                raise ParameterError("Marchenko-Pastur law needs an aspect ratio")
            _check_aspect(self.y)
        elif self.y is not None:
            raise ParameterError("the semicircle law carries no parameter")

    @property
    def support(self) -> tuple[float, float]:
        if self.kind == "sc":
            return (-2.0, 2.0)
        return mp_support(self.y)

    def pdf(self, x: float) -> float:
        if self.kind == "sc":
            return sc_pdf(x)
        return mp_pdf(x, self.y)

    def cdf(self, x: float) -> float:
        if self.kind == "sc":
            return sc_cdf(x)
        return mp_cdf(x, self.y)

    def moment(self, ell: int) -> float:
        if self.kind == "sc":
            return sc_moment(ell)
        return mp_moment(ell, self.y)
