"""Published closed-form displays, kept verbatim for auditing.

These are not used for any primary result.  Each function transcribes a
literature formula as printed so that it can be compared with the
expressions derived here from the eigenvalue families.  In the plated
formulas ``Z`` is the published parameter, which counts interior nodes; a
configuration with q cells between the plates has Z = q - 1.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .sequence import JSequence
from .special import riemann_zeta


def _pref(s: complex) -> complex:
    return riemann_zeta(2 * s) * cmath.exp(-2 * s * math.log(math.pi))


def zeta_laakso_j2(s) -> complex:
    """Published zeta of the j=2 Laakso space."""
    s = complex(s)
    p = lambda b, e: cmath.exp(e * math.log(b))  # noqa: E731
    t1 = 4 * (p(2, 2 * s - 1) + 1) / (p(4, s) * (4 ** 2 - 4))
    t2 = 6 * (p(2, 2 * s - 1) - 1) / (p(4, s) * (p(4, s) - 2))
    t3 = (p(2, s + 1) - 2 + p(2, 2 * s)) / p(4, s)
    return _pref(s) * (t1 + t2 + t3)


def zeta_m(j: int, m: int, s) -> complex:
    """Published zeta of F_m for constant j."""
    s = complex(s)
    lj = math.log(j)
    x = 2 * cmath.exp(-2 * s * lj)
    y = 2 * cmath.exp((1 - 2 * s) * lj)
    j2s = cmath.exp(2 * s * lj)
    a = (1 - x ** m) / (j2s * (1 - x)) * (2 ** (1 + 2 * s) - 3 - 2 / (1 - x))
    b = (1 - y ** m) / (j2s * (1 - y)) * (
        j + 4 ** (2 * s + 2) * cmath.exp((1 - 2 * s) * lj) / (j2s * (1 - y)))
    return _pref(s) * (1 + a + b)


def force_1d(j: int, Z: int, X0) -> Fraction:
    """Published plated force display, exact.  ``Z`` counts interior nodes."""
    j = Fraction(j)
    Z1 = Fraction(Z) + 1
    X0 = Fraction(X0)
    w = 1 - Z1 / j
    e = (1 - 2 * X0) ** 2
    i = X0 ** 2
    return (
        (j - Z1) / (24 * (1 - 2 * j) * e)
        - (j - (Z + 3)) * (j - Z1) / (12 * e)
        - j ** 3 * (j - 2) * w ** 2 / (12 * (1 - 2 * j ** 2) * e)
        - w * j ** 2 * (j - Z1) / (24 * e * (1 - 2 * j ** 2))
        + w * j ** 2 / (24 * e * (1 - 2 * j))
        + Z1 ** 2 / (48 * i)
        + Z1 ** 2 * (j - 2) / (24 * i * (1 - 2 * j ** 2))
        + j * Z1 ** 2 / (96 * (1 - 2 * j ** 2) * i)
        + Fraction(1, 6) / e
        - j ** 2 * w / (24 * (1 - 2 * j) * e)
        + j * Z1 / (96 * i * (1 - 2 * j))
        - j ** 2 * w / (12 * e * (1 - 2 * j))
        + Fraction(1, 48) / i
        + Z1 * j / (48 * i * (1 - 2 * j))
    )


def pressure_constant_bracket(j: int) -> Fraction:
    """First published form of the constant-j pressure, in units of pi^2/240."""
    j = Fraction(j)
    return (1 + 2 * j ** 4 / (1 - 2 * j ** 3)
            + Fraction(17, 8) * (j ** 7 / (1 - 2 * j ** 4) - j ** 6 / (1 - 2 * j ** 3))
            + (j ** 4 / (1 - 2 * j ** 4) - 2 * j ** 3 / (1 - 2 * j ** 4)))


def pressure_constant_quotient(j: int) -> Fraction:
    """Second published form of the constant-j pressure, in units of pi^2/240."""
    j = Fraction(j)
    return ((8 - 16 * j ** 3 - 8 * j ** 4 + 15 * j ** 6 + j ** 7)
            / (8 - 16 * j ** 3 - 16 * j ** 4 + 32 * j ** 7))


def pressure_periodic(seq: JSequence) -> Fraction:
    """Published periodic-data pressure at d=1, in units of pi^2/240.

    The middle sum is printed as sum_i 2 j_k^4; it is read as sum_i 2 j_i^4.
    r^N is the product of one period.
    """
    N = seq.period
    R = Fraction(seq.period_product)
    js = [Fraction(x) for x in seq.entries]
    s1 = sum(math.prod(2 * js[k] ** 3 for k in range(i + 1)) for i in range(N))
    s2 = sum(2 * js[i] ** 4 for i in range(N))
    s3 = sum(math.prod(2 * js[k] ** 4 for k in range(i + 1))
             * js[i] ** (N - i - 1) / (js[i] ** N - R ** 4 * 2 ** N) for i in range(N))
    out = (1 + Fraction(15, 32) * s1 / (1 - R ** 3 * 2 ** N)
           + Fraction(1, 2) * s2 / (1 - R ** 4 * 2 ** N)
           - Fraction(15, 32) * s3)
    return out


def energy_3d_coefficient(seq: JSequence) -> Fraction:
    """Published four-sum 3D energy, regularized: coefficient of pi^3/d^3.

    The second sum is printed without the sheet factor 2^n.  Divergent
    level sums are continued as formal geometric series.
    """
    N = seq.period
    R = Fraction(seq.period_product)
    z3 = Fraction(1, 120)  # zeta_R(-3)

    def levels(n0, term, ratio):
        return sum(Fraction(term(n0 + r)) for r in range(N)) / (1 - ratio)

    d = seq.d
    s2 = levels(1, lambda n: d(n) ** 3, R ** 3)
    s3 = levels(1, lambda n: Fraction(2 ** (n - 1) * d(n - 1) * (seq.j(n) - 2) * d(n) ** 3),
                2 ** N * R ** 4)
    s4a = levels(2, lambda n: Fraction(2 ** (n - 1) * d(n - 1) * d(n) ** 3), 2 ** N * R ** 4)
    s4b = levels(2, lambda n: Fraction(2 ** (n - 1) * d(n) ** 3), 2 ** N * R ** 3)
    return z3 * (1 + s2 + s3 + Fraction(17, 16) * (s4a - s4b))
