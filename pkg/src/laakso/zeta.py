"""Spectral zeta functions built from eigenvalue families.

For a family with eigenvalues (c d_n (k+a) pi)^2 and multiplicity
sum_e (a_e + b_e j_n) 2^n d_{n-1}^e, the k-sum is a Hurwitz zeta at 2s and
the n-sum splits into one geometric series per residue class modulo the
period N, with ratio 2^N R^(e - 2s) where R is the product of one period.
Those series are summed in closed form, which also provides the
meromorphic continuation.  Level-truncated spectra use plain finite sums.

``zeta_direct`` is an independent route: it sums the enumerated
eigenvalues and bounds what is left by Euler-Maclaurin tails per family
and level, never touching the Hurwitz or geometric closed forms.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (CertificationError, InsufficientCutoffError, PoleError,
                     RegularizationError, ValidationError)
from .sequence import JSequence, PlateConfig, constant_sequence
from .special import hurwitz_neg_int, offset_sum, power_tail, riemann_zeta
from .spectrum import EigenFamily, EnumeratedSpectrum, family_stream

POLE_TOL = 1e-12
LN2 = math.log(2.0)


@dataclass(frozen=True)
class PoleDescriptor:
    location: complex
    order: int
    tower: str
    k: int

    def as_row(self) -> tuple:
        return (self.location.real, self.location.imag, self.order, self.tower, self.k)


@dataclass
class RegularizedSum:
    value: complex | float
    method: str
    terms: list = field(default_factory=list)
    coefficient: Fraction | None = None  # value = coefficient * pi^pi_power when exact
    pi_power: int = 0
    error_bound: float = 0.0


def _log_int(x: int) -> float:
    return math.log(x)


def _log_frac(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def _log_d(seq: JSequence, n: int) -> float:
    full, rest = divmod(n, seq.period)
    return full * _log_int(seq.period_product) + sum(_log_int(e) for e in seq.entries[:rest])


def tower_label(seq: JSequence, e: int) -> str:
    if seq.is_constant:
        j = seq.entries[0]
        return f"1-2*{j}^(-2s)" if e == 0 else f"1-2*{j}^({e}-2s)"
    return f"1-2^{seq.period}*{seq.period_product}^({e}-2s)"


def tower_location(seq: JSequence, e: int, k: int) -> complex:
    """Zero of 1 - 2^N R^(e-2s) with imaginary index k."""
    lnR = _log_int(seq.period_product)
    return complex((e + seq.period * LN2 / lnR) / 2, math.pi * k / lnR)


def _nearest_tower_k(seq: JSequence, s: complex) -> int:
    return round(s.imag * _log_int(seq.period_product) / math.pi)


def _level_sum(fam: EigenFamily, s: complex) -> complex:
    """sum_n mult(n) d_n^(-2s), continued through the geometric closed form."""
    seq = fam.seq
    z = 2 * s
    N = seq.period
    lnR = _log_int(seq.period_product)
    total = 0j
    for mono in fam.monomials:
        if fam.n_stop is not None:
            for n in range(fam.n_start, fam.n_stop + 1):
                a = mono.const + mono.jn * seq.j(n)
                if a == 0:
                    continue
                lg = n * LN2 + mono.dprev * _log_d(seq, n - 1) - z * _log_d(seq, n)
                total += float(a) * cmath.exp(lg)
            continue
        rho = cmath.exp(N * LN2 + (mono.dprev - z) * lnR)
        for r in range(N):
            n = fam.n_start + r
            a = mono.const + mono.jn * seq.j(n)
            if a == 0:
                continue
            if abs(1 - rho) < POLE_TOL:
                desc = PoleDescriptor(s, 1, tower_label(seq, mono.dprev),
                                      _nearest_tower_k(seq, s))
                raise PoleError(f"s={s} sits on the pole tower {desc.tower}", desc)
            lg = n * LN2 + mono.dprev * _log_d(seq, n - 1) - z * _log_d(seq, n)
            total += float(a) * cmath.exp(lg) / (1 - rho)
    return total


def family_zeta(fam: EigenFamily, s) -> complex:
    """sum over the family of mult * lambda^(-s), analytically continued."""
    s = complex(s)
    z = 2 * s
    if abs(z - 1) < POLE_TOL:
        raise PoleError("zeta_R(2s) has a pole at s=1/2",
                        PoleDescriptor(complex(0.5, 0), 1, "zeta_R(2s)", 0))
    ksum = offset_sum(z, fam.offset, fam.k_min)
    base = cmath.exp(-z * (_log_frac(fam.coef * fam.stretch) + math.log(math.pi)))
    if not fam.level_indexed:
        return fam.multiplicity() * base * ksum
    return base * ksum * _level_sum(fam, s)


def zeta_families(families, s) -> complex:
    return sum((family_zeta(f, s) for f in families), 0j)


def zeta_interval(s) -> complex:
    """Dirichlet unit interval: zeta_R(2s) / pi^(2s)."""
    s = complex(s)
    if abs(2 * s - 1) < POLE_TOL:
        raise PoleError("pole at s=1/2", PoleDescriptor(complex(0.5, 0), 1, "zeta_R(2s)", 0))
    return riemann_zeta(2 * s) * cmath.exp(-2 * s * math.log(math.pi))


def zeta_laakso_closed(seq: JSequence, s) -> complex:
    """Neumann Laakso zeta for periodic data, zero mode excluded."""
    return zeta_families(family_stream("free", seq=seq), s)


def zeta_finite(j, m: int, s) -> complex:
    """Zeta of the Neumann Laplacian on F_m; ``j`` is an int or a JSequence."""
    seq = j if isinstance(j, JSequence) else constant_sequence(j)
    return zeta_families(family_stream("finite", seq=seq, level=m), s)


def zeta_dirichlet(seq: JSequence, s, m: int | None = None) -> complex:
    return zeta_families(family_stream("dirichlet", seq=seq, level=m), s)


def zeta_plated(cfg: PlateConfig, s, level: int | None = None) -> complex:
    return zeta_families(family_stream("plated", cfg=cfg, plated_level=level), s)


# ----------------------------------------------------------------------
# direct summation with certified tails

MAX_DIRECT_LEVELS = 300


def _real_ksum_bound(sigma2: float, a: float, k_min: int) -> float:
    """Upper bound of sum_{k >= k_min} (k + a)^(-sigma2) for sigma2 > 1."""
    K = max(k_min, 1) + 20
    head = sum((k + a) ** (-sigma2) for k in range(k_min, K) if k + a > 0)
    val, err = power_tail(sigma2, a, K)
    return head + val.real + err


def _family_direct_tail(fam: EigenFamily, s: complex, cutoff: float, tail_bound: float):
    """(value, bound) of family terms with eigenvalue above the cutoff."""
    z = 2 * s
    sig2 = z.real
    a = float(fam.offset)
    k_em = 20 + int(2 * abs(z))
    limit = math.sqrt(cutoff) / math.pi
    total = 0j
    bound = 0.0
    n = fam.n_start if fam.level_indexed else 0
    count = 0
    while True:
        if fam.level_indexed and fam.n_stop is not None and n > fam.n_stop:
            break
        c = fam.scale(n)
        mult = fam.multiplicity(n)
        cf = float(c)
        # first k whose eigenvalue exceeds the cutoff, with the enumerator's test
        K = max(fam.k_min, int(math.floor(limit / cf - a)) - 1)
        while (float(c * (K + fam.offset)) * math.pi) ** 2 <= cutoff:
            K += 1
        if mult:
            pref = mult * cmath.exp(-z * (_log_frac(c) + math.log(math.pi)))
            K2 = max(K, k_em)
            head = sum(cmath.exp(-z * math.log(k + a)) for k in range(K, K2))
            val, err = power_tail(z, a, K2)
            total += pref * (head + val)
            bound += abs(pref) * err
        if not fam.level_indexed:
            break
        if fam.n_stop is not None:
            # finitely many levels: sum them all, nothing to bound
            n += 1
            continue
        count += 1
        if count > MAX_DIRECT_LEVELS:
            raise InsufficientCutoffError(
                f"family {fam.label}: level tail not below {tail_bound} after "
                f"{MAX_DIRECT_LEVELS} levels")
        # bound every level beyond n by a geometric majorant in |s| -> Re s
        rem = _remaining_levels_bound(fam, n + 1, sig2)
        # levels are cheap; go well past the point where the bound alone certifies
        if rem <= tail_bound * 1e-4:
            bound += rem
            break
        n += 1
    return total, bound


def _remaining_levels_bound(fam: EigenFamily, n0: int, sig2: float) -> float:
    if fam.n_stop is not None and n0 > fam.n_stop:
        return 0.0
    seq = fam.seq
    N = seq.period
    lnR = _log_int(seq.period_product)
    ks = _real_ksum_bound(sig2, float(fam.offset), fam.k_min)
    pre = (float(fam.coef * fam.stretch) * math.pi) ** (-sig2) * ks
    out = 0.0
    for mono in fam.monomials:
        rho = math.exp(N * LN2 + (mono.dprev - sig2) * lnR)
        if rho >= 1:
            raise CertificationError(
                f"Re(s)={sig2 / 2} too small: level series of family {fam.label} "
                f"does not converge absolutely (ratio {rho:.4g})")
        for r in range(N):
            n = n0 + r
            a = abs(float(mono.const + mono.jn * seq.j(n)))
            lg = n * LN2 + mono.dprev * _log_d(seq, n - 1) - sig2 * _log_d(seq, n)
            out += a * math.exp(lg) / (1 - rho)
    return pre * out


def zeta_direct(spec: EnumeratedSpectrum, s, tail_bound: float = 1e-8) -> RegularizedSum:
    """Partial sum over enumerated eigenvalues plus certified family tails."""
    s = complex(s)
    if 2 * s.real <= 1:
        raise CertificationError(f"Re(s)={s.real} <= 1/2: Dirichlet series diverges")
    if not spec.families:
        raise ValidationError("spectrum carries no family records for the tail")
    partial = 0j
    for e in spec.entries:
        if e.factor == 0:
            continue
        partial += e.multiplicity * cmath.exp(-2 * s * (_log_frac(e.factor) + math.log(math.pi)))
    tails = []
    total_tail = 0j
    bound = 0.0
    per_family = tail_bound / max(len(spec.families), 1)
    for fam in spec.families:
        v, b = _family_direct_tail(fam, s, spec.cutoff, per_family)
        tails.append((fam.label, v, b))
        total_tail += v
        bound += b
    if bound > tail_bound:
        raise InsufficientCutoffError(
            f"tail bound {bound:.3g} exceeds {tail_bound:.3g}; raise the cutoff",
            required_cutoff=4 * spec.cutoff)
    return RegularizedSum(partial + total_tail, "direct-convergent", tails, error_bound=bound)


# ----------------------------------------------------------------------
# zeta regularization at negative half-integers, exact


def _kconst(fam: EigenFamily, twop: int) -> Fraction:
    """Regularized sum_{k >= k_min} (k + offset)^twop."""
    if fam.offset == 0:
        out = hurwitz_neg_int(twop, 1)
        for k in range(1, fam.k_min):
            out -= Fraction(k) ** twop
    else:
        out = hurwitz_neg_int(twop, fam.offset)
        for k in range(0, fam.k_min):
            out -= (k + fam.offset) ** twop
    return out


def _exact_level_sum(fam: EigenFamily, twop: int) -> Fraction:
    """sum_n mult(n) d_n^twop with divergent geometric series continued formally."""
    seq = fam.seq
    N = seq.period
    R = seq.period_product
    total = Fraction(0)
    for mono in fam.monomials:
        if fam.n_stop is not None:
            for n in range(fam.n_start, fam.n_stop + 1):
                total += mono.value(seq, n) * seq.d(n) ** twop
            continue
        rho = Fraction(2) ** N * Fraction(R) ** (mono.dprev + twop)
        for r in range(N):
            n = fam.n_start + r
            T = mono.value(seq, n) * seq.d(n) ** twop
            if T == 0:
                continue
            if rho == 1:
                raise RegularizationError(
                    f"family {fam.label}: geometric ratio {rho} equals 1, no continuation")
            total += T / (1 - rho)
    return total


def regularized_family_sum(family: EigenFamily, power) -> RegularizedSum:
    """Zeta-regularized sum of mult * lambda^power over a family."""
    p = Fraction(power)
    twop = 2 * p
    if twop.denominator != 1 or twop <= 0:
        raise ValidationError(f"power {p} must be a positive half-integer")
    twop = int(twop)
    kc = _kconst(family, twop)
    scale = (family.coef * family.stretch) ** twop
    if family.level_indexed:
        mult = _exact_level_sum(family, twop)
    else:
        mult = Fraction(family.multiplicity())
    coef = scale * kc * mult
    return RegularizedSum(float(coef) * math.pi ** twop, "zeta-regularized",
                          [(family.label, coef)], coef, twop)


def regularized_total(families, power) -> RegularizedSum:
    terms = []
    coef = Fraction(0)
    twop = None
    for f in families:
        r = regularized_family_sum(f, power)
        terms.append((f.label, r.coefficient))
        coef += r.coefficient
        twop = r.pi_power
    if twop is None:
        twop = int(2 * Fraction(power))
    return RegularizedSum(float(coef) * math.pi ** twop, "zeta-regularized", terms, coef, twop)
