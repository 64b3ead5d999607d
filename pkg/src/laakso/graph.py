"""Quantum-graph approximations F_n of a Laakso space.

F_n is 2^n copies ("sheets") of the unit interval cut at L_n.  A point with
interval coordinate in B_i is shared by the two sheets that differ only in
bit i of their address, so wormholes of level i are degree-4 vertices
carrying an address with bit i removed.  The endpoints 0 and 1 are never
identified and remain degree-1 vertices.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import ResourceError, ValidationError
from .sequence import JSequence, as_fraction, fraction_str, wormhole_level

KIRCHHOFF = "kirchhoff"
NEUMANN = "neumann"
DIRICHLET = "dirichlet"
BOUNDARY_TAGS = (KIRCHHOFF, NEUMANN, DIRICHLET)

DEFAULT_MAX_EDGES = 1_000_000


@dataclass(frozen=True)
class Vertex:
    x: Fraction
    sheet: str
    bc: str = KIRCHHOFF


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    length: Fraction


@dataclass(frozen=True)
class MetricGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    level: int = 0

    def degrees(self) -> list[int]:
        deg = [0] * len(self.vertices)
        for e in self.edges:
            deg[e.u] += 1
            deg[e.v] += 1
        return deg

    @property
    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = [[] for _ in self.vertices]
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def coordinates(self) -> set[Fraction]:
        return {v.x for v in self.vertices}

    def with_tags(self, coords, bc: str) -> "MetricGraph":
        """Copy with every vertex whose coordinate is in ``coords`` tagged ``bc``."""
        if bc not in BOUNDARY_TAGS:
            raise ValidationError(f"unknown boundary tag {bc!r}")
        coords = {as_fraction(c) for c in coords}
        missing = coords - self.coordinates()
        if missing:
            raise ValidationError(
                "no vertex at " + ", ".join(sorted(fraction_str(c) for c in missing)))
        verts = tuple(replace(v, bc=bc) if v.x in coords else v for v in self.vertices)
        return MetricGraph(verts, self.edges, self.level)

    def to_json(self) -> str:
        doc = {
            "vertices": [{"x": fraction_str(v.x), "sheet": v.sheet, "bc": v.bc}
                         for v in self.vertices],
            "edges": [{"u": e.u, "v": e.v, "len": fraction_str(e.length)} for e in self.edges],
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "MetricGraph":
        doc = json.loads(text)
        verts = []
        for v in doc["vertices"]:
            if v["bc"] not in BOUNDARY_TAGS:
                raise ValidationError(f"unknown boundary tag {v['bc']!r}")
            verts.append(Vertex(Fraction(v["x"]), v["sheet"], v["bc"]))
        edges = tuple(Edge(int(e["u"]), int(e["v"]), Fraction(e["len"])) for e in doc["edges"])
        sheets = [len(v.sheet) for v in verts]
        return cls(tuple(verts), edges, max(sheets, default=0))


def build_graph(seq: JSequence, n: int, max_edges: int = DEFAULT_MAX_EDGES) -> MetricGraph:
    """Build F_n with Kirchhoff interior vertices and Neumann endpoints."""
    if n < 0:
        raise ValidationError(f"level must be >= 0, got {n}")
    dn = seq.d(n)
    n_edges = 2 ** n * dn
    if n_edges > max_edges:
        raise ResourceError(f"F_{n} has {n_edges} edges, budget is {max_edges}")

    levels = [wormhole_level(seq, Fraction(m, dn), n) for m in range(dn + 1)]

    def key(m, addr):
        lev = levels[m]
        if lev is None:
            return m, addr
        return m, addr[:lev - 1] + addr[lev:]

    index: dict[tuple[int, str], int] = {}
    keys = []
    for addr in ("".join(b) for b in itertools.product("01", repeat=n)):
        for m in range(dn + 1):
            k = key(m, addr)
            if k not in index:
                index[k] = len(keys)
                keys.append(k)
    # canonical order: by coordinate, then sheet address
    order = sorted(range(len(keys)), key=lambda i: (keys[i][0], keys[i][1]))
    renum = {old: new for new, old in enumerate(order)}
    vertices = []
    for old in order:
        m, sheet = keys[old]
        bc = NEUMANN if m in (0, dn) else KIRCHHOFF
        vertices.append(Vertex(Fraction(m, dn), sheet, bc))

    length = Fraction(1, dn)
    edges = []
    for addr in ("".join(b) for b in itertools.product("01", repeat=n)):
        for m in range(dn):
            u = renum[index[key(m, addr)]]
            v = renum[index[key(m + 1, addr)]]
            edges.append(Edge(u, v, length))
    return MetricGraph(tuple(vertices), tuple(edges), n)


def degree_profile(g: MetricGraph) -> Counter:
    return Counter(g.degrees())
