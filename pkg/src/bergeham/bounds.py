"""Exact binomial arithmetic, the binomial polynomial and its inverse,
the Bai-Lu edge/spectral bound, and the threshold formulas used by the
verification campaigns.

All threshold comparisons that decide a campaign are exact integer
arithmetic; floating point appears only inside the monotone root-finding
of ``binom_poly_inverse`` and in ``bai_lu_bound`` values derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

#: Thresholds implemented by :func:`threshold`.
THRESHOLD_NAMES = (
    "edge_cycle",      # |H| >  C(n-1, r)  forces a Hamiltonian Berge cycle (unless K_{n-1}^r + e)
    "edge_path",       # |H| >= C(n-1, r)  forces a Hamiltonian Berge path  (unless K_{n-1}^r + v)
    "spectral_cycle",  # lambda >  C(n-2, r-1), same exception
    "spectral_path",   # lambda >= C(n-2, r-1), same exception
    "klm_1i",          # min degree >= C(floor((n-1)/2), r-1) + 1 forces a Hamiltonian Berge cycle
    "klm_1ii",         # min degree >= r, for n-1 >= r >= n/2
    "klm_2i",          # min degree >= C(floor(n/2), r-1) + 1 forces Hamiltonian-connectedness
    "klm_2ii",         # min degree >= r - 1, for n-1 >= r > n/2 >= 3
)


@dataclass(frozen=True)
class Threshold:
    name: str
    value: int


def binom(a: int, b: int) -> int:
    """Exact binomial coefficient; 0 when b > a, error on negative input."""
    if a < 0 or b < 0:
        raise ValueError(f"binom needs nonnegative arguments, got ({a}, {b})")
    return comb(a, b)


def binom_poly(r: int, x):
    """The degree-r polynomial x(x-1)..(x-r+1)/r! extending binom(x, r).

    Exact (int) for integer ``x``, float otherwise; numpy arrays are
    evaluated elementwise in float64.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got r={r}")
    if isinstance(x, np.ndarray):
        acc = np.ones_like(x, dtype=np.float64)
        for i in range(r):
            acc = acc * (x - i)
        return acc / factorial(r)
    if isinstance(x, (int, np.integer)):
        num = 1
        for i in range(r):
            num *= x - i
        return num // factorial(r)
    acc = 1.0
    for i in range(r):
        acc *= x - i
    return acc / factorial(r)


def _grow_upper_bracket(r: int, y: float) -> float:
    # (hi - r + 1)^r >= y * r!  guarantees binom_poly(r, hi) >= y.
    return (y * factorial(r)) ** (1.0 / r) + r


def binom_poly_inverse(r: int, y):
    """The unique x >= r-1 with binom_poly(r, x) = y, for y >= 0.

    Bracketed bisection to ~1e-13 relative accuracy followed by a Newton
    polish; results land exactly on integers whenever y is an exact
    binomial value (checked in integer arithmetic, not floating point).
    Accepts numpy arrays for bulk evaluation.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got r={r}")
    if isinstance(y, np.ndarray):
        return _inverse_array(r, y)
    y = float(y)
    if y < 0:
        raise ValueError(f"need y >= 0, got y={y}")
    if y == 0.0:
        return float(r - 1)
    lo, hi = float(r - 1), _grow_upper_bracket(r, y)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if binom_poly(r, mid) < y:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(2):
        px = binom_poly(r, x)
        if px <= 0.0:
            break
        deriv = px * sum(1.0 / (x - i) for i in range(r))
        if deriv <= 0.0:
            break
        x -= (px - y) / deriv
        x = min(max(x, lo), hi) if lo < hi else x
    cand = round(x)
    if cand >= r - 1 and float(cand).is_integer() and y.is_integer():
        if comb(int(cand), r) == int(y):
            return float(cand)
    return x


def _inverse_array(r: int, ys: np.ndarray) -> np.ndarray:
    ys = np.asarray(ys, dtype=np.float64)
    if np.any(ys < 0):
        raise ValueError("need y >= 0")
    lo = np.full(ys.shape, float(r - 1))
    hi = np.maximum(lo + 1e-9, (np.maximum(ys, 0.0) * factorial(r)) ** (1.0 / r) + r)
    for _ in range(110):
        mid = 0.5 * (lo + hi)
        below = binom_poly(r, mid) < ys
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    xs = 0.5 * (lo + hi)
    xs = np.where(ys == 0.0, float(r - 1), xs)
    # integer snap, verified exactly
    cand = np.rint(xs)
    near = np.abs(xs - cand) < 1e-6
    for idx in np.nonzero(near)[0]:
        c = int(cand[idx])
        yv = ys[idx]
        if c >= r - 1 and float(yv).is_integer() and comb(c, r) == int(yv):
            xs[idx] = float(c)
    return xs


def bai_lu_bound(r: int, m):
    """Upper bound on the spectral radius of any r-graph with m edges.

    This is the Bai-Lu function f_r(m) = binom_poly(r-1, binom_poly_inverse(r, m) - 1);
    it is tight exactly for complete r-graphs plus isolated vertices, and
    for r = 2 it reduces to Stanley's classic bound (sqrt(1+8m)-1)/2.
    """
    if r < 2:
        raise ValueError(f"need r >= 2, got r={r}")
    if isinstance(m, np.ndarray):
        if np.any(m < 0):
            raise ValueError("need m >= 0")
        return binom_poly(r - 1, binom_poly_inverse(r, np.asarray(m, np.float64)) - 1.0)
    if m < 0:
        raise ValueError(f"need m >= 0, got m={m}")
    x = binom_poly_inverse(r, float(m))
    if r - 1 == 1:
        return x - 1.0
    if float(x).is_integer():
        return float(comb(int(x) - 1, r - 1))
    return binom_poly(r - 1, x - 1.0)


def threshold(name: str, n: int, r: int) -> Threshold:
    """Exact integer threshold for the named sufficient condition at (n, r).

    Raises ValueError when the named variant does not apply at (n, r).
    """
    if name not in THRESHOLD_NAMES:
        raise ValueError(f"unknown threshold {name!r}; expected one of {THRESHOLD_NAMES}")
    if name in ("edge_cycle", "edge_path", "spectral_cycle", "spectral_path"):
        if not (r >= 3 and n >= r + 2):
            raise ValueError(f"{name} needs n >= r+2 and r >= 3, got (n={n}, r={r})")
        if name.startswith("edge"):
            return Threshold(name, comb(n - 1, r))
        return Threshold(name, comb(n - 2, r - 1))
    if not n > r >= 3:
        raise ValueError(f"{name} needs n > r >= 3, got (n={n}, r={r})")
    if name == "klm_1i":
        if 2 * r > n - 1:
            raise ValueError(f"klm_1i needs r <= (n-1)/2, got (n={n}, r={r})")
        return Threshold(name, comb((n - 1) // 2, r - 1) + 1)
    if name == "klm_1ii":
        if not (n - 1 >= r and 2 * r >= n):
            raise ValueError(f"klm_1ii needs n-1 >= r >= n/2, got (n={n}, r={r})")
        return Threshold(name, r)
    if name == "klm_2i":
        if 2 * r > n:
            raise ValueError(f"klm_2i needs r <= n/2, got (n={n}, r={r})")
        return Threshold(name, comb(n // 2, r - 1) + 1)
    # klm_2ii
    if not (n - 1 >= r and 2 * r > n and n >= 6):
        raise ValueError(f"klm_2ii needs n-1 >= r > n/2 >= 3, got (n={n}, r={r})")
    return Threshold(name, r - 1)


def convexity_chain_lines(n: int, r: int) -> list[dict]:
    """The edge-count convexity chain at (n, r), line by line, in exact ints.

    For n >= 2r+1 the chain bounds C(n-2,r) + 2*C(floor((n-1)/2), r-1) by
    C(n-1, r) through the convexity middle step; for r+3 <= n <= 2r the
    degree bounds are r-1 and r-2 instead and the chain is a single
    inequality.  Each returned line carries its own verdict so a caller
    can report exactly which step fails (none do, on the supported range).
    """
    if r < 3:
        raise ValueError(f"need r >= 3, got r={r}")
    if n < r + 3:
        raise ValueError(f"need n >= r+3, got (n={n}, r={r})")
    if n <= 2 * r:
        lhs = comb(n - 2, r) + (r - 1) + (r - 2)
        rhs = comb(n - 1, r)
        return [
            {
                "line": "C(n-2,r) + (r-1) + (r-2) <= C(n-1,r)",
                "lhs": lhs,
                "rhs": rhs,
                "holds": lhs <= rhs,
            }
        ]
    half_hi = (n - 1) // 2
    half_lo = (n - 2) // 2
    a = comb(n - 2, r) + 2 * comb(half_hi, r - 1)
    b = comb(n - 2, r) + comb(half_hi + half_lo, r - 1) + comb(half_hi - half_lo, r - 1)
    c = comb(n - 2, r) + comb(n - 2, r - 1)
    d = comb(n - 1, r)
    return [
        {"line": "two equal degree terms <= spread pair (convexity)", "lhs": a, "rhs": b, "holds": a <= b},
        {"line": "spread pair = C(n-2,r) + C(n-2,r-1)", "lhs": b, "rhs": c, "holds": b == c},
        {"line": "Pascal: C(n-2,r) + C(n-2,r-1) = C(n-1,r)", "lhs": c, "rhs": d, "holds": c == d},
    ]


def check_convexity_chain(n: int, r: int) -> bool:
    """True when every line of the convexity chain holds at (n, r)."""
    return all(line["holds"] for line in convexity_chain_lines(n, r))
