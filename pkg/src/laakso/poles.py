"""Locating complex poles of Laakso zeta functions.

Candidates are the zeros of the geometric denominators 1 - 2^N R^(e-2s)
(e = 0, 1) plus the pole of zeta_R(2s) at s = 1/2.  Each candidate is
confirmed by sampling |f| on two small circles around it: for a pole of
order p, |f| grows like r^-p, so the log-log slope between the radii
estimates the order and a slope below 1/2 marks the point as regular.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import PoleError, ValidationError
from .sequence import JSequence, constant_sequence
from .zeta import (PoleDescriptor, tower_label, tower_location, zeta_finite,
                   zeta_laakso_closed)
from . import printed

RADII = (1e-3, 1e-4)
SLOPE_THRESHOLD = 0.5
N_ANGLES = 8
MERGE_TOL = 1e-9


@dataclass(frozen=True)
class Region:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def __post_init__(self):
        vals = (self.re_lo, self.re_hi, self.im_lo, self.im_hi)
        if not all(math.isfinite(v) for v in vals):
            raise ValidationError("region must be bounded")
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise ValidationError("region bounds are reversed")

    def contains(self, s: complex, pad: float = 1e-12) -> bool:
        return (self.re_lo - pad <= s.real <= self.re_hi + pad
                and self.im_lo - pad <= s.imag <= self.im_hi + pad)


@dataclass(frozen=True)
class Candidate:
    location: complex
    tower: str
    k: int


def candidates(seq: JSequence, region: Region) -> list[Candidate]:
    """Denominator zeros and the zeta_R(2s) pole inside the region, merged."""
    lnR = math.log(seq.period_product)
    step = math.pi / lnR
    out: list[Candidate] = []
    for e in (0, 1):
        k_lo = math.ceil(region.im_lo / step - 1e-9)
        k_hi = math.floor(region.im_hi / step + 1e-9)
        for k in range(k_lo, k_hi + 1):
            s0 = tower_location(seq, e, k)
            if region.contains(s0):
                out.append(Candidate(s0, tower_label(seq, e), k))
    half = complex(0.5, 0.0)
    if region.contains(half):
        out.append(Candidate(half, "zeta_R(2s)", 0))
    merged: list[Candidate] = []
    for c in sorted(out, key=lambda c: (c.location.real, c.location.imag)):
        for i, m in enumerate(merged):
            if abs(m.location - c.location) < MERGE_TOL:
                merged[i] = Candidate(m.location, m.tower + "|" + c.tower, m.k)
                break
        else:
            merged.append(c)
    return merged


def order_slope(f: Callable[[complex], complex], s0: complex, radii=RADII) -> float:
    """log-log slope of mean |f| between two circles around s0."""
    r1, r2 = radii
    th = 2 * math.pi * (np.arange(N_ANGLES) + 0.5) / N_ANGLES
    ring = np.exp(1j * th)

    def mean_abs(r):
        return float(np.mean([abs(f(s0 + r * w)) for w in ring]))

    m1, m2 = mean_abs(r1), mean_abs(r2)
    if m1 == 0 or m2 == 0:
        return 0.0
    return math.log(m2 / m1) / math.log(r1 / r2)


def classify(f, cand: Candidate, radii=RADII):
    """PoleDescriptor if the candidate is a pole, else None; also the slope."""
    slope = order_slope(f, cand.location, radii)
    if slope < SLOPE_THRESHOLD:
        return None, slope
    return PoleDescriptor(cand.location, max(1, round(slope)), cand.tower, cand.k), slope


def zeta_function(seq: JSequence, m, form: str = "canonical") -> Callable[[complex], complex]:
    """The function whose poles are searched: canonical or published form."""
    if form == "canonical":
        if m == "infinite":
            return lambda s: zeta_laakso_closed(seq, s)
        return lambda s: zeta_finite(seq, int(m), s)
    if form == "printed":
        if not seq.is_constant:
            raise ValidationError("published forms exist for constant j only")
        j = seq.entries[0]
        if m == "infinite":
            if j != 2:
                raise ValidationError("published infinite-level form exists for j=2 only")
            return printed.zeta_laakso_j2
        return lambda s: printed.zeta_m(j, int(m), s)
    raise ValidationError(f"unknown form {form!r}")


@dataclass
class PoleScan:
    poles: list[PoleDescriptor]
    rejected: list[tuple[Candidate, float]]
    slopes: dict

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "order", "tower", "k"])
        for p in self.poles:
            w.writerow([f"{p.location.real:.17g}", f"{p.location.imag:.17g}", p.order,
                        p.tower, p.k])
        return buf.getvalue()

    def to_rows(self) -> list[dict]:
        return [{"re": p.location.real, "im": p.location.imag, "order": p.order,
                 "tower": p.tower, "k": p.k} for p in self.poles]


def find_poles(j, m, region: Region, form: str = "canonical",
               func: Callable[[complex], complex] | None = None) -> PoleScan:
    """Confirm or reject every candidate pole of the chosen zeta inside ``region``.

    ``j`` is an int or a JSequence, ``m`` a level or "infinite".  ``func``
    overrides the searched function (candidates still come from ``j``).
    """
    seq = j if isinstance(j, JSequence) else constant_sequence(int(j))
    if m != "infinite" and (isinstance(m, bool) or int(m) < 0):
        raise ValidationError(f"level must be >= 0 or 'infinite', got {m!r}")
    f = func if func is not None else zeta_function(seq, m, form)
    poles, rejected, slopes = [], [], {}
    for c in candidates(seq, region):
        try:
            desc, slope = classify(f, c)
        except PoleError:
            # a sample landed on another pole; shrink nothing, record as unresolved
            rejected.append((c, math.nan))
            continue
        slopes[(c.location.real, c.location.imag)] = slope
        if desc is None:
            rejected.append((c, slope))
        else:
            poles.append(desc)
    return PoleScan(poles, rejected, slopes)


def lone_factor(j: int, m: int) -> Callable[[complex], complex]:
    """(1 - y^m)/(1 - y) with y = 2 j^(1-2s): removable at y = 1."""
    lj = math.log(j)

    def g(s):
        y = 2 * np.exp((1 - 2 * complex(s)) * lj)
        return (1 - y ** m) / (1 - y)
    return g
