"""Finite-difference oracle for Laplacian eigenvalues on metric graphs.

Each edge is cut into M cells.  Interior points carry the usual
second-difference stencil and every graph vertex is one shared unknown,
so continuity is built in.  With a lumped mass of h/2 per incident edge
at a vertex, the vertex row is exactly the discrete Kirchhoff condition
(sum of one-sided difference quotients vanishes); degree-1 vertices get
the Neumann condition for free.  Dirichlet vertices are dropped from the
unknowns.  Eigenvalues of M^-1 K are computed as those of the symmetric
M^-1/2 K M^-1/2, shift-inverted about -1.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as sla
from scipy.linalg import eigh

from .errors import OracleConvergenceError, ResourceError, ValidationError
from .graph import DIRICHLET, MetricGraph
from .spectrum import EnumeratedSpectrum

MAX_LEVEL = 3
MAX_UNKNOWNS = 3_000_000
SEED = 20240601


@dataclass(frozen=True)
class DiscretizedGraph:
    M: int
    h: float
    operator: sp.csr_matrix  # symmetric, M^-1/2 K M^-1/2
    stiffness: sp.csr_matrix
    mass: np.ndarray
    n_vertex_unknowns: int
    total_length: float
    has_dirichlet: bool

    @property
    def dimension(self) -> int:
        return self.operator.shape[0]


def discretize(g: MetricGraph, M: int) -> DiscretizedGraph:
    """Assemble the lumped-mass finite-difference Laplacian of ``g``.

    All edges must share one length so that a single step h = len/M applies.
    """
    if isinstance(M, bool) or not isinstance(M, int) or M < 2:
        raise ValidationError(f"need at least 2 cells per edge, got M={M!r}")
    if not g.edges:
        raise ValidationError("graph has no edges")
    lengths = {e.length for e in g.edges}
    if len(lengths) != 1:
        raise ValidationError("discretize expects equilateral graphs")
    h = float(next(iter(lengths))) / M

    nv = len(g.vertices)
    n_edges = len(g.edges)
    deg = np.zeros(nv)
    for e in g.edges:
        deg[e.u] += 1
        deg[e.v] += 1
    keep = np.array([v.bc != DIRICHLET for v in g.vertices])
    vidx = np.full(nv, -1)
    vidx[keep] = np.arange(keep.sum())
    n_vert = int(keep.sum())
    N = n_vert + n_edges * (M - 1)
    if N > MAX_UNKNOWNS:
        raise ResourceError(f"{N} unknowns exceeds budget {MAX_UNKNOWNS}")

    mass = np.full(N, h)
    mass[:n_vert] = deg[keep] * h / 2

    us = vidx[np.array([e.u for e in g.edges])]
    vs = vidx[np.array([e.v for e in g.edges])]
    interior = n_vert + np.arange(n_edges * (M - 1)).reshape(n_edges, M - 1)
    # node chain along each edge: u, interior points, v
    chain = np.hstack([us[:, None], interior, vs[:, None]])
    a = chain[:, :-1].ravel()
    b = chain[:, 1:].ravel()
    diag = np.zeros(N)
    for p in (a, b):
        ok = p >= 0
        np.add.at(diag, p[ok], 1.0 / h)
    ok = (a >= 0) & (b >= 0)
    rows = np.concatenate([a[ok], b[ok], np.arange(N)])
    cols = np.concatenate([b[ok], a[ok], np.arange(N)])
    vals = np.concatenate([np.full(2 * ok.sum(), -1.0 / h), diag])
    K = sp.csr_matrix((vals, (rows, cols)), shape=(N, N))
    Dm = sp.diags(1.0 / np.sqrt(mass))
    S = (Dm @ K @ Dm).tocsr()
    return DiscretizedGraph(M, h, S, K, mass, n_vert, float(g.total_length),
                            bool((~keep).any()))


def lowest_eigenvalues(d: DiscretizedGraph, cutoff: float, margin: float = 0.05,
                       max_iter: int = 200) -> list[float]:
    """All eigenvalues <= cutoff * (1 + margin), ascending, with repetition.

    Block subspace iteration on (S + I)^-1 with Rayleigh-Ritz.  A block
    wider than the wanted count resolves degenerate eigenvalues (some reach
    multiplicity ~50 here), which single-vector Lanczos only recovers through
    rounding.
    """
    if cutoff <= 0:
        raise ValidationError("cutoff must be positive")
    limit = cutoff * (1 + margin)
    S = d.operator
    N = d.dimension
    if N <= 1500:
        w = np.linalg.eigvalsh(S.toarray())
        return [float(x) for x in w if x <= limit]
    # Weyl: N(lam) ~ total_length * sqrt(lam) / pi
    want = int(1.3 * d.total_length * math.sqrt(limit) / math.pi) + 20
    lu = sla.splu((S + sp.identity(N, format="csc")).tocsc())
    # residuals cannot drop below rounding in S, whose norm grows like 1/h^2
    floor = 256 * np.finfo(float).eps * float(abs(S).sum(axis=1).max())
    rng = np.random.default_rng(SEED)
    while True:
        p = min(N, want + max(20, want // 4))
        X, _ = np.linalg.qr(rng.standard_normal((N, p)))
        w = None
        for it in range(max_iter):
            X, _ = np.linalg.qr(lu.solve(X))
            SX = S @ X
            w, V = eigh(X.T @ SX)
            X = X @ V
            sel = w <= limit
            res = np.linalg.norm(SX @ V[:, sel] - X[:, sel] * w[sel], axis=0)
            if np.all(res <= np.maximum(1e-9 * np.maximum(w[sel], 1.0), floor)):
                break
        else:
            worst = float(np.max(res / np.maximum(w[sel], 1.0)))
            raise OracleConvergenceError(
                f"subspace iteration stalled after {max_iter} iterations "
                f"(block {p}, dimension {N}, worst relative residual {worst:.3g})")
        if w[-1] > limit or p == N:
            return [float(x) for x in w if x <= limit]
        want *= 2


def richardson(e_h, e_h2) -> list[float]:
    """(4 e_{h/2} - e_h) / 3 elementwise, cancelling the O(h^2) error."""
    if len(e_h) != len(e_h2):
        raise ValidationError(f"length mismatch {len(e_h)} vs {len(e_h2)}")
    a = np.asarray(e_h, dtype=float)
    b = np.asarray(e_h2, dtype=float)
    return list((4 * b - a) / 3)


def oracle_eigenvalues(g: MetricGraph, cutoff: float, M: int = 512) -> list[float]:
    """Richardson-extrapolated eigenvalues <= cutoff from the mesh pair (M/2, M)."""
    if g.level > MAX_LEVEL:
        raise ResourceError(f"oracle refuses level {g.level} > {MAX_LEVEL}")
    if M < 4 or M % 2:
        raise ValidationError("mesh must be even and >= 4 for the Richardson pair")
    coarse = lowest_eigenvalues(discretize(g, M // 2), cutoff)
    fine = lowest_eigenvalues(discretize(g, M), cutoff)
    # coarse values sit below the fine ones, so extras only appear at the top
    n = min(len(coarse), len(fine))
    ext = richardson(coarse[:n], fine[:n])
    return [x for x in ext if x <= cutoff]


@dataclass
class VerificationRow:
    lam: float
    closed_mult: int
    oracle_mult: int
    rel_err: float
    status: str

    def as_dict(self) -> dict:
        return {"lambda": self.lam, "closed_mult": self.closed_mult,
                "oracle_mult": self.oracle_mult, "rel_err": self.rel_err,
                "status": self.status}


@dataclass
class VerificationReport:
    rows: list[VerificationRow] = field(default_factory=list)
    tol_rel: float = 1e-3

    @property
    def ok(self) -> bool:
        return all(r.status == "match" for r in self.rows)

    @property
    def max_rel_err(self) -> float:
        errs = [r.rel_err for r in self.rows if r.closed_mult and r.oracle_mult]
        return max(errs, default=0.0)

    def mismatches(self) -> list[VerificationRow]:
        return [r for r in self.rows if r.status != "match"]

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok, "tol_rel": self.tol_rel,
                           "rows": [r.as_dict() for r in self.rows]}, indent=1)


def verify_spectrum(closed: EnumeratedSpectrum, oracle, tol_rel: float = 1e-3
                    ) -> VerificationReport:
    """Match oracle eigenvalues to closed-form entries by relative closeness."""
    vals = sorted(float(x) for x in oracle)
    used = [False] * len(vals)
    report = VerificationReport(tol_rel=tol_rel)
    for e in closed.entries:
        lam = e.lam
        tol = tol_rel * max(abs(lam), 1.0)
        hits = [i for i, x in enumerate(vals) if not used[i] and abs(x - lam) <= tol]
        for i in hits:
            used[i] = True
        err = max((abs(vals[i] - lam) / max(abs(lam), 1.0) for i in hits), default=math.nan)
        n = len(hits)
        status = "match" if n == e.multiplicity else ("deficit" if n < e.multiplicity else "surplus")
        report.rows.append(VerificationRow(lam, e.multiplicity, n, err, status))
    # oracle values that belong to no closed-form eigenvalue
    stray = [vals[i] for i in range(len(vals)) if not used[i]]
    i = 0
    while i < len(stray):
        j = i
        while j + 1 < len(stray) and stray[j + 1] - stray[i] <= tol_rel * max(stray[i], 1.0):
            j += 1
        report.rows.append(VerificationRow(stray[i], 0, j - i + 1, math.nan, "surplus"))
        i = j + 1
    report.rows.sort(key=lambda r: r.lam)
    return report
