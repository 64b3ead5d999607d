"""Closed-form Laplacian spectra as families of eigenvalues.

Every family has eigenvalues (c_n (k + offset) pi)^2.  For level-indexed
families c_n = coef * stretch * d_n and the multiplicity at level n is a
sum of monomials (a + b j_n) 2^n d_{n-1}^e with e in {0, 1}.  That shape
is what makes the level sums geometric per period of the sequence, which
the zeta and regularization code relies on.

Variants
--------
free       Neumann Laplacian on the Laakso space L (all levels).
finite     Neumann Laplacian on F_m (levels truncated at m).
dirichlet  L with Dirichlet conditions at both ends, used for the plates
           of the L x R^2 arrangement.
plated     constant j, Dirichlet plates at level-1 wormholes, Z level-1
           cells between them, half-separation X0.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import MultiplicityError, ValidationError
from .sequence import JSequence, PlateConfig, constant_sequence, fraction_str

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Monomial:
    """(const + jn * j_n) * 2^n * d_{n-1}^dprev."""

    const: Fraction
    jn: Fraction = Fraction(0)
    dprev: int = 0

    def value(self, seq: JSequence, n: int) -> Fraction:
        base = self.const + self.jn * seq.j(n)
        return base * 2 ** n * seq.d(n - 1) ** self.dprev


@dataclass(frozen=True)
class EigenFamily:
    label: str
    seq: JSequence
    offset: Fraction
    k_min: int
    coef: Fraction
    stretch: Fraction = Fraction(1)
    region: str = "none"
    # level range; n_start None means a single, non level-indexed family
    n_start: int | None = None
    n_stop: int | None = None
    monomials: tuple[Monomial, ...] = ()
    const_mult: int = 1

    @property
    def level_indexed(self) -> bool:
        return self.n_start is not None

    def levels(self) -> Iterator[int]:
        """Levels of the family in increasing order (unbounded when n_stop is None)."""
        if not self.level_indexed:
            yield 0
            return
        n = self.n_start
        while self.n_stop is None or n <= self.n_stop:
            yield n
            n += 1

    def multiplicity_exact(self, n: int) -> Fraction:
        if not self.level_indexed:
            return Fraction(self.const_mult)
        return sum((m.value(self.seq, n) for m in self.monomials), Fraction(0))

    def multiplicity(self, n: int = 0) -> int:
        m = self.multiplicity_exact(n)
        if m.denominator != 1 or m < 0:
            raise MultiplicityError(
                f"family {self.label} has multiplicity {m} at level n={n}; "
                "parameters are outside the range where the counting argument applies")
        return int(m)

    def scale(self, n: int = 0) -> Fraction:
        """Exact c_n (without the stretch factor applied when stretch_free)."""
        base = self.coef * self.stretch
        return base * self.seq.d(n) if self.level_indexed else base

    def frequency(self, n: int, k: int) -> Fraction:
        """Exact rational factor c_n (k + offset); the eigenvalue is (factor * pi)^2."""
        return self.scale(n) * (k + self.offset)

    def describe(self) -> str:
        lev = "" if not self.level_indexed else (
            f", n={self.n_start}..{'inf' if self.n_stop is None else self.n_stop}")
        return f"{self.label}: (c(k+{self.offset})pi)^2, k>={self.k_min}{lev}"


def _free_families(seq: JSequence, n_stop: int | None, k0_first: int,
                   ends: str) -> list[EigenFamily]:
    q = Fraction
    if ends == "neumann":
        v_family = EigenFamily("2", seq, HALF, 0, q(1), n_start=1, n_stop=n_stop,
                               monomials=(Monomial(q(1)),))
    else:
        v_family = EigenFamily("2", seq, q(0), 1, q(1), n_start=1, n_stop=n_stop,
                               monomials=(Monomial(q(1)),))
    fams = [
        EigenFamily("1", seq, q(0), k0_first, q(1)),
        v_family,
        EigenFamily("3", seq, q(0), 1, q(1), n_start=1, n_stop=n_stop,
                    monomials=(Monomial(q(-1), q(1, 2), 1),)),
        EigenFamily("4", seq, q(0), 1, q(1), n_start=2, n_stop=n_stop,
                    monomials=(Monomial(q(1, 2), dprev=1), Monomial(q(-1, 2)))),
        EigenFamily("5", seq, q(0), 1, q(1, 2), n_start=2, n_stop=n_stop,
                    monomials=(Monomial(q(1, 4), dprev=1), Monomial(q(-1, 4)))),
    ]
    return fams


def _plated_families(cfg: PlateConfig) -> list[EigenFamily]:
    j, Zc = cfg.j, cfg.Z
    seq = constant_sequence(j)
    u, v = cfg.interior_stretch, cfg.exterior_stretch
    F = Fraction
    ext = F(j - Zc, j)  # exterior share of the level-1 cells
    inn = F(Zc, j)
    # In the multiplicity table the count of interior cells appears as (Z+1)
    # with Z the number of interior nodes; here Z already counts cells.
    fams = [
        EigenFamily("1", seq, F(0), 1, F(1), u, "interior"),
        EigenFamily("2", seq, HALF, 0, F(2), v, "exterior", const_mult=2),
        EigenFamily("3", seq, HALF, 0, F(j - Zc), v, "exterior", const_mult=2),
        EigenFamily("4", seq, F(0), 1, F(j - Zc), v, "exterior", const_mult=j - Zc - 2),
        EigenFamily("5", seq, F(0), 1, F(Zc), u, "interior", const_mult=Zc),
        EigenFamily("6", seq, HALF, 0, ext, v, "exterior", n_start=2,
                    monomials=(Monomial(F(1)),)),
        EigenFamily("7", seq, F(0), 1, ext, v, "exterior", n_start=2,
                    monomials=(Monomial(ext * (j - 1) / 2, dprev=1),)),
        EigenFamily("8", seq, F(0), 1, ext / 2, v, "exterior", n_start=2,
                    monomials=(Monomial(ext / 4, dprev=1), Monomial(F(-1, 2)))),
        EigenFamily("9", seq, F(0), 1, inn, u, "interior", n_start=2,
                    monomials=(Monomial(inn * (j - 1) / 2, dprev=1), Monomial(F(1, 2)))),
        EigenFamily("10", seq, F(0), 1, inn / 2, u, "interior", n_start=2,
                    monomials=(Monomial(inn / 4, dprev=1), Monomial(F(-1, 4)))),
    ]
    return fams


def family_stream(variant: str, *, seq: JSequence | None = None, level: int | None = None,
                  cfg: PlateConfig | None = None, plated_level: int | None = None
                  ) -> Iterator[EigenFamily]:
    """Yield the families of a spectrum in listing order."""
    if variant == "free":
        fams = _free_families(seq, None, 0, "neumann")
    elif variant == "finite":
        if level is None or level < 0:
            raise ValidationError("finite spectrum needs level m >= 0")
        fams = _free_families(seq, level, 0, "neumann")
    elif variant == "dirichlet":
        fams = _free_families(seq, level, 1, "dirichlet")
    elif variant == "plated":
        if cfg is None:
            raise ValidationError("plated spectrum needs a PlateConfig")
        fams = _plated_families(cfg)
        if plated_level is not None:
            fams = _truncate_plated(fams, plated_level)
    else:
        raise ValidationError(f"unknown spectrum variant {variant!r}")
    for f in fams:
        if f.level_indexed and f.n_stop is not None and f.n_stop < f.n_start:
            continue
        yield f


def _truncate_plated(fams, m):
    # the plates sit on level-1 wormholes, so F_1 is the coarsest graph carrying them
    if m < 1:
        raise ValidationError("plated spectrum needs level >= 1")
    return [EigenFamily(**{**f.__dict__, "n_stop": m}) if f.level_indexed else f
            for f in fams]


@dataclass(frozen=True)
class SpectrumEntry:
    factor: Fraction  # eigenvalue is (factor * pi)^2
    multiplicity: int

    @property
    def lam(self) -> float:
        return (float(self.factor) * math.pi) ** 2

    @property
    def symbolic(self) -> str:
        return f"({fraction_str(self.factor)}*pi)^2"


@dataclass(frozen=True)
class EnumeratedSpectrum:
    entries: tuple[SpectrumEntry, ...]
    cutoff: float
    provenance: str
    params: dict = field(default_factory=dict)
    families: tuple[EigenFamily, ...] = ()

    @property
    def lambdas(self) -> list[float]:
        return [e.lam for e in self.entries]

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def expanded(self) -> list[float]:
        """Eigenvalues repeated by multiplicity."""
        out = []
        for e in self.entries:
            out.extend([e.lam] * e.multiplicity)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "multiplicity", "symbolic"])
        for e in self.entries:
            w.writerow([f"{e.lam:.17g}", e.multiplicity, e.symbolic])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [{"lambda": f"{e.lam:.17g}", "multiplicity": e.multiplicity,
                 "symbolic": e.symbolic} for e in self.entries]
        return json.dumps({"provenance": self.provenance, "cutoff": self.cutoff,
                           "entries": rows}, indent=1)


def enumerate_families(families, cutoff: float) -> tuple[SpectrumEntry, ...]:
    """Merge all family members with (factor pi)^2 <= cutoff.

    Coincidences are decided on the exact rational factors.
    """
    if cutoff <= 0:
        raise ValidationError("cutoff must be positive")
    limit = math.sqrt(cutoff) / math.pi
    acc: dict[Fraction, int] = {}
    for fam in families:
        for n in fam.levels():
            c = fam.scale(n)
            if float(c * (fam.k_min + fam.offset)) > limit * (1 + 1e-15):
                break
            mult = fam.multiplicity(n)
            k = fam.k_min
            while True:
                f = c * (k + fam.offset)
                if (float(f) * math.pi) ** 2 > cutoff:
                    break
                if mult:
                    acc[f] = acc.get(f, 0) + mult
                k += 1
            if not fam.level_indexed:
                break
    return tuple(SpectrumEntry(f, m) for f, m in sorted(acc.items()) if m > 0)


def _build(variant, cutoff, params, **kw) -> EnumeratedSpectrum:
    fams = tuple(family_stream(variant, **kw))
    return EnumeratedSpectrum(enumerate_families(fams, cutoff), float(cutoff), variant,
                              params, fams)


def free_spectrum(seq: JSequence, cutoff: float) -> EnumeratedSpectrum:
    return _build("free", cutoff, {"seq": seq.label()}, seq=seq)


def finite_spectrum(seq: JSequence, m: int, cutoff: float) -> EnumeratedSpectrum:
    return _build("finite", cutoff, {"seq": seq.label(), "m": m}, seq=seq, level=m)


def dirichlet_spectrum(seq: JSequence, cutoff: float, m: int | None = None) -> EnumeratedSpectrum:
    return _build("dirichlet", cutoff, {"seq": seq.label(), "m": m}, seq=seq, level=m)


def plated_spectrum(cfg: PlateConfig, cutoff: float, level: int | None = None
                    ) -> EnumeratedSpectrum:
    params = {"j": cfg.j, "Z": cfg.Z, "X0": fraction_str(cfg.X0), "level": level}
    return _build("plated", cutoff, params, cfg=cfg, plated_level=level)


def counting_function(spec: EnumeratedSpectrum, lam: float) -> int:
    """N(lam): total multiplicity of eigenvalues <= lam."""
    if lam > spec.cutoff:
        raise ValidationError(f"lambda={lam} beyond enumeration cutoff {spec.cutoff}")
    tol = 1e-12 * max(1.0, abs(lam))
    return sum(e.multiplicity for e in spec.entries if e.lam <= lam + tol)
