"""Riemann and Hurwitz zeta values.

Complex evaluation of zeta_R uses Borwein's accelerated alternating series
for the Dirichlet eta function.  Close to the zeros of 1 - 2^(1-s) the
eta route loses all precision (0/0), so those points fall back to
Euler-Maclaurin summation.  Re(s) < 0 goes through the functional equation.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from scipy.special import loggamma

from .errors import PoleError, ValidationError


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * B[k]
        B.append(-acc / (m + 1))
    return tuple(B)


def bernoulli_number(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValidationError("Bernoulli index must be >= 0")
    return _bernoulli_table(n)[n]


def bernoulli_poly(n: int, x) -> Fraction:
    x = Fraction(x)
    B = _bernoulli_table(n)
    return sum((math.comb(n, k) * B[k] * x ** (n - k) for k in range(n + 1)), Fraction(0))


def hurwitz_neg_int(n: int, a) -> Fraction:
    """zeta_H(-n, a) = -B_{n+1}(a)/(n+1), exact, for integer n >= 0 and 0 < a <= 1."""
    a = Fraction(a)
    if n < 0:
        raise ValidationError("n must be >= 0")
    if not 0 < a <= 1:
        raise ValidationError(f"a={a} outside (0, 1]")
    return -bernoulli_poly(n + 1, a) / (n + 1)


# ----------------------------------------------------------------------
# complex Riemann zeta

_EM_TERMS = 12
_B2 = [float(bernoulli_number(2 * m)) for m in range(_EM_TERMS + 1)]


@lru_cache(maxsize=64)
def _borwein_weights(n: int) -> tuple[float, ...]:
    # e_k = (-1)^k (d_k - d_n) / d_n with d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    terms = []
    acc = Fraction(0)
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4 ** i * n,
                        math.factorial(n - i) * math.factorial(2 * i))
        terms.append(acc)
    dn = terms[-1]
    return tuple(((-1) ** k) * float(Fraction(terms[k] - dn, dn)) for k in range(n))


def _eta_borwein(s: complex) -> complex:
    t = abs(s.imag)
    n = 30 + int(math.ceil(0.95 * t))
    w = _borwein_weights(n)
    total = 0j
    for k in range(n):
        total += w[k] * cmath.exp(-s * math.log(k + 1))
    return -total


def _zeta_euler_maclaurin(s: complex) -> complex:
    N = 30 + int(abs(s))
    total = 0j
    for k in range(1, N):
        total += cmath.exp(-s * math.log(k))
    logN = math.log(N)
    NS = cmath.exp(-s * logN)
    total += N * NS / (s - 1) + NS / 2
    # rising factorial s (s+1) ... (s+2m-2) times N^(-s-2m+1)
    fac = s * NS / N
    for m in range(1, _EM_TERMS + 1):
        total += _B2[m] / math.factorial(2 * m) * fac
        fac *= (s + 2 * m - 1) * (s + 2 * m) / (N * N)
    return total


def riemann_zeta(s) -> complex:
    """zeta_R(s) for complex s != 1."""
    s = complex(s)
    if s == 1:
        raise PoleError("zeta_R has a pole at s = 1")
    if s == 0:
        return complex(-0.5)
    if s.real < -0.5:
        # zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
        if s.imag == 0 and s.real == round(s.real) and int(s.real) % 2 == 0:
            return 0j
        g = cmath.exp(complex(loggamma(1 - s)))
        return (2 ** s) * (math.pi ** (s - 1)) * cmath.sin(math.pi * s / 2) * g * riemann_zeta(1 - s)
    denom = 1 - 2 ** (1 - s)
    if abs(denom) < 0.1 or abs(s - 1) < 0.25:
        return _zeta_euler_maclaurin(s)
    return _eta_borwein(s) / denom


def hurwitz_zeta(s, a) -> complex:
    """zeta_H(s, a) for a in {1, 1/2} (the only offsets the spectra use)."""
    a = Fraction(a)
    s = complex(s)
    if a == 1:
        return riemann_zeta(s)
    if a == Fraction(1, 2):
        # sum_k (k + 1/2)^-s = (2^s - 1) zeta(s)
        return (2 ** s - 1) * riemann_zeta(s)
    raise ValidationError(f"hurwitz_zeta only supports a in {{1, 1/2}}, got {a}")


def offset_sum(z, offset, k_min: int) -> complex:
    """sum_{k >= k_min} (k + offset)^(-z) continued analytically in z."""
    offset = Fraction(offset)
    base = offset if offset > 0 else Fraction(1)
    start = 0 if offset > 0 else 1
    out = hurwitz_zeta(z, base)
    for k in range(start, k_min):
        out -= cmath.exp(-complex(z) * math.log(k + offset))
    return out


# ----------------------------------------------------------------------
# tails by Euler-Maclaurin with a rigorous remainder bound


def power_tail(z: complex, a: float, K: int, p: int = 8) -> tuple[complex, float]:
    """sum_{k >= K} (k + a)^(-z) for Re z > 1, returning (value, error bound).

    The caller picks K large compared with |z|; the bound is
    2 zeta(2p) / (2 pi)^(2p) * |(z)_{2p}| (K+a)^(1-Re z-2p) / (Re z+2p-1).
    """
    z = complex(z)
    if z.real <= 1:
        raise ValidationError("power_tail needs Re z > 1")
    x = K + a
    lx = math.log(x)
    fx = cmath.exp(-z * lx)
    val = x * fx / (z - 1) + fx / 2
    # f^(2m-1)(x) = -(z)_{2m-1} x^(-z-2m+1)
    rising = z  # (z)_1
    term = fx / x
    for m in range(1, p + 1):
        val += _B2[m] / math.factorial(2 * m) * rising * term
        rising *= (z + 2 * m - 1) * (z + 2 * m)
        term /= x * x
    # rising is now (z)_{2p+1}; the bound needs (z)_{2p}
    rising_2p = rising / (z + 2 * p)
    zeta2p = float(sum(k ** (-2.0 * p) for k in range(1, 50)))
    bound = (2 * zeta2p / (2 * math.pi) ** (2 * p) * abs(rising_2p)
             * x ** (1 - z.real - 2 * p) / (z.real + 2 * p - 1))
    return val, bound
