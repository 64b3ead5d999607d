"""Defining sequences, wormhole level sets and plate placements."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import ResourceError, ValidationError

# Largest wormhole set we are willing to materialise as a frozenset.
MAX_LEVEL_SET = 2_000_000
# d_n beyond this cannot be represented as a float; refuse rather than lose it.
MAX_DN_BITS = 1000


def as_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, decimal string or float.

    Floats go through their shortest repr so that ``0.3`` becomes ``3/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValidationError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot parse rational {x!r}") from exc
    raise ValidationError(f"unsupported numeric type {type(x).__name__}")


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class JSequence:
    """One period of the defining integer sequence j_1, j_2, ...

    Entries are indexed from 1 and repeat with period ``period``.
    """

    entries: tuple[int, ...]
    period: int

    def __post_init__(self):
        if not self.entries:
            raise ValidationError("sequence needs at least one entry")
        if self.period != len(self.entries):
            raise ValidationError(
                f"period {self.period} does not match {len(self.entries)} entries")
        for e in self.entries:
            if isinstance(e, bool) or not isinstance(e, int):
                raise ValidationError(f"entries must be integers, got {e!r}")
            if e < 2:
                raise ValidationError(f"entry {e} < 2: wormhole sets would be empty")

    @property
    def r(self) -> float:
        """Geometric mean of one period."""
        return math.exp(sum(math.log(e) for e in self.entries) / self.period)

    @property
    def period_product(self) -> int:
        return math.prod(self.entries)

    @property
    def is_constant(self) -> bool:
        return len(set(self.entries)) == 1

    def j(self, i: int) -> int:
        if i < 1:
            raise ValidationError(f"sequence index starts at 1, got {i}")
        return self.entries[(i - 1) % self.period]

    def d(self, n: int) -> int:
        """d_n = j_1 ... j_n (d_0 = 1), exact."""
        if n < 0:
            raise ValidationError(f"level must be >= 0, got {n}")
        full, rest = divmod(n, self.period)
        out = self.period_product ** full * math.prod(self.entries[:rest])
        if out.bit_length() > MAX_DN_BITS:
            raise OverflowError(f"d_{n} has {out.bit_length()} bits; refusing to continue")
        return out

    def label(self) -> str:
        return ",".join(str(e) for e in self.entries)


def make_sequence(entries, period: int | None = None) -> JSequence:
    entries = tuple(entries)
    if period is None:
        period = len(entries)
    return JSequence(entries, period)


def constant_sequence(j: int) -> JSequence:
    return JSequence((j,), 1)


@dataclass(frozen=True)
class LevelData:
    """Wormhole locations of level n or lower (L_n) and exactly level n (B_n)."""

    n: int
    d_n: int
    d_prev: int

    def _check_size(self):
        if self.d_n - 1 > MAX_LEVEL_SET:
            raise ResourceError(f"|L_{self.n}| = {self.d_n - 1} exceeds {MAX_LEVEL_SET}")

    @cached_property
    def L(self) -> frozenset:
        self._check_size()
        return frozenset(Fraction(m, self.d_n) for m in range(1, self.d_n))

    @cached_property
    def B(self) -> frozenset:
        if self.n == 0:
            return frozenset()
        return frozenset(x for x in self.L if (x * self.d_prev).denominator != 1)

    def contains(self, x) -> bool:
        """Membership in L_n without materialising the set."""
        x = as_fraction(x)
        return 0 < x < 1 and (x * self.d_n).denominator == 1


def level_data(seq: JSequence, n: int) -> LevelData:
    if n < 0:
        raise ValidationError(f"level must be >= 0, got {n}")
    d_prev = seq.d(n - 1) if n > 0 else 1
    return LevelData(n=n, d_n=seq.d(n), d_prev=d_prev)


def wormhole_level(seq: JSequence, x: Fraction, n: int) -> int | None:
    """Smallest level i <= n with x in L_i, or None for 0, 1 and non-wormholes."""
    if not 0 < x < 1:
        return None
    for i in range(1, n + 1):
        if (x * seq.d(i)).denominator == 1:
            return i
    return None


def dimensions(seq: JSequence) -> tuple[float, float, float]:
    """(Hausdorff, spectral, walk) dimensions; walk dimension is 2 so d_s = d_h."""
    dh = 1.0 + math.log(seq.r) / math.log(2.0)
    return dh, dh, 2.0


@dataclass(frozen=True)
class PlateConfig:
    """Two interior plates placed symmetrically about the centre.

    ``Z`` counts the level-1 cells strictly between the plates, so at the
    nominal placement the plates sit at (1 -/+ Z/j)/2 and are 2*X0 = Z/j apart.
    ``X0`` may be moved off its nominal value to stretch or compress the
    interior and exterior regions.
    """

    j: int
    Z: int
    X0: Fraction = field(default=None)

    def __post_init__(self):
        if isinstance(self.j, bool) or not isinstance(self.j, int) or self.j < 3:
            raise ValidationError(f"plated configuration needs integer j >= 3, got {self.j!r}")
        if isinstance(self.Z, bool) or not isinstance(self.Z, int):
            raise ValidationError(f"Z must be an integer, got {self.Z!r}")
        if not 1 <= self.Z <= self.j - 2:
            raise ValidationError(f"Z={self.Z} outside 1..{self.j - 2} for j={self.j}")
        x0 = self.nominal_X0 if self.X0 is None else as_fraction(self.X0)
        if not 0 < x0 < Fraction(1, 2):
            raise ValidationError(f"X0={x0} must lie in (0, 1/2)")
        object.__setattr__(self, "X0", x0)

    @property
    def nominal_X0(self) -> Fraction:
        return Fraction(self.Z, 2 * self.j)

    @property
    def plates(self) -> tuple[Fraction, Fraction]:
        """Nominal plate coordinates on the unit interval."""
        h = Fraction(self.Z, self.j)
        return (1 - h) / 2, (1 + h) / 2

    @property
    def on_wormholes(self) -> bool:
        """True when the nominal plate coordinates are level-1 wormholes (j - Z even)."""
        return (self.j - self.Z) % 2 == 0

    @property
    def interior_stretch(self) -> Fraction:
        """1/(2 X0): scale of the region between the plates."""
        return 1 / (2 * self.X0)

    @property
    def exterior_stretch(self) -> Fraction:
        """1/(1 - 2 X0): scale of the two outer regions taken together."""
        return 1 / (1 - 2 * self.X0)

    def with_X0(self, X0) -> "PlateConfig":
        return PlateConfig(self.j, self.Z, as_fraction(X0))


def plate_config(j: int, Z: int, X0=None) -> PlateConfig:
    return PlateConfig(j, Z, None if X0 is None else as_fraction(X0))
