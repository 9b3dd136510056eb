"""Weighted carry graphs whose closed walks encode the two simultaneous
additions t = -a - b + u and s = -a - b + v modulo 3^n - 1.

Standard graph: vertices (a', b', c', d', v') with a', b' in {0,1,2},
c', d' in {-2,-1,0}, v' in {0,2}.  There is an arc of weight
a' + b' + 2c'' + 2d'' to (a'', b'', c'', d'', v'') when v'' = 2 - v' and

    s' = -a' - b' + v' + c' - 3c''   and   t' = -a' - b' + v'' + d' - 3d''

both lie in {0, 1, 2}.  Position i of a computation sits at vertex
(a_i, b_i, c_{i-1}, d_{i-1}, v_{i-1}).  Because v_{i-1} = u_i, the carry c is
the chain of the u-addition and d is the chain of the v-addition.

Generalized graph: the same construction layered by digit position, with
arbitrary digit labels (u_i, v_i) subject to u_i = 0 or v_i = 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import carry
from .carry import AwcInstance, awc_solve, digits, from_digits, uvz_constants, weight

DIGITS = (0, 1, 2)
CARRIES = (-2, -1, 0)


class GraphError(ValueError):
    pass


@dataclass
class Graph:
    vertices: list
    arcs: list  # (from index, to index, weight), deterministic order
    index: dict = field(default_factory=dict)
    weight_of: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.weight_of = {(f, t): w for f, t, w in self.arcs}

    def has_arc(self, u, v) -> bool:
        return (self.index[u], self.index[v]) in self.weight_of

    def arc_weight(self, u, v) -> int:
        return self.weight_of[(self.index[u], self.index[v])]

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  n{i} [label="{v}"];')
        for f, t, w in self.arcs:
            lines.append(f'  n{f} -> n{t} [label="{w}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _digit(x: int) -> bool:
    return 0 <= x <= 2


def build_graph() -> Graph:
    vertices = list(itertools.product(DIGITS, DIGITS, CARRIES, CARRIES, (0, 2)))
    index = {v: i for i, v in enumerate(vertices)}
    arcs = []
    for src in vertices:
        a1, b1, c1, d1, v1 = src
        v2 = 2 - v1
        for a2, b2, c2, d2 in itertools.product(DIGITS, DIGITS, CARRIES, CARRIES):
            s1 = -a1 - b1 + v1 + c1 - 3 * c2
            t1 = -a1 - b1 + v2 + d1 - 3 * d2
            if _digit(s1) and _digit(t1):
                arcs.append((index[src], index[(a2, b2, c2, d2, v2)], a1 + b1 + 2 * c2 + 2 * d2))
    return Graph(vertices, arcs)


def verify_arcs_nonpositive(g: Graph) -> tuple[bool, int]:
    top = max(w for _, _, w in g.arcs)
    return top <= 0, top


def arcs_attaining(g: Graph, value: int) -> list:
    return [(g.vertices[f], g.vertices[t]) for f, t, w in g.arcs if w == value]


@dataclass
class Walk:
    vertices: list  # closed: vertices[0] == vertices[-1]
    weights: list

    @property
    def total(self) -> int:
        return sum(self.weights)

    def __len__(self):
        return len(self.weights)


def _chains(a: int, b: int, u: int, v: int, n: int):
    """Carry chains of t = -a-b+u and s = -a-b+v mod 3^n - 1."""
    tc = awc_solve(AwcInstance.from_ints(3, n, (-1, -1, 1), (a, b, u)))
    sc = awc_solve(AwcInstance.from_ints(3, n, (-1, -1, 1), (a, b, v)))
    return tc, sc


def instance_to_walk(a: int, b: int, k: int, g: Graph | None = None) -> Walk:
    """Closed walk of length 2k through the standard graph for the pair (a, b)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    g = g or build_graph()
    n = 2 * k
    c = uvz_constants(k)
    tc, sc = _chains(a, b, c.u, c.v, n)
    ad, bd, vd = digits(a, 3, n), digits(b, 3, n), c.v_digits
    verts = [(ad[i], bd[i], tc.carry(i - 1), sc.carry(i - 1), vd[(i - 1) % n]) for i in range(n)]
    verts.append(verts[0])
    weights = []
    for i in range(n):
        if verts[i] not in g.index or verts[i + 1] not in g.index or not g.has_arc(verts[i], verts[i + 1]):
            raise GraphError(f"step {i} of the walk for (a={a}, b={b}) is not an arc")
        w = g.arc_weight(verts[i], verts[i + 1])
        if w != ad[i] + bd[i] + 2 * tc.c[i] + 2 * sc.c[i]:
            raise GraphError("arc weight disagrees with the digit contribution")
        weights.append(w)
    walk = Walk(verts, weights)
    expected = sum(ad) + sum(bd) + 2 * sum(tc.c) + 2 * sum(sc.c)
    if walk.total != expected:
        raise GraphError("walk weight differs from w(a)+w(b)+2w(c)+2w(d)")
    if walk.total != 4 * k - carry.genwi_check(a, b, k):
        raise GraphError("walk weight differs from 4k - [w(a)+w(b)+w(s)+w(t)]")
    return walk


def walk_to_computation(walk: Walk, g: Graph) -> dict:
    """Recover digits and carries from a closed walk and check both additions.

    Returns the digit vectors of a, b, s, t (digit sums, not reduced residues).
    """
    verts = walk.vertices
    if verts[0] != verts[-1]:
        raise GraphError("walk is not closed")
    n = len(verts) - 1
    a, b, c, d, vv, s, t = [], [], [], [], [], [], []
    for i in range(n):
        a1, b1, c1, d1, v1 = verts[i]
        _, _, c2, d2, v2 = verts[i + 1]
        if not g.has_arc(verts[i], verts[i + 1]):
            raise GraphError(f"step {i} is not an arc")
        a.append(a1)
        b.append(b1)
        c.append(c2)
        d.append(d2)
        vv.append(v2)
        t.append(-a1 - b1 + v1 + c1 - 3 * c2)
        s.append(-a1 - b1 + v2 + d1 - 3 * d2)
    m = 3**n - 1
    u_val = from_digits([vv[(i - 1) % n] for i in range(n)], 3)
    v_val = from_digits(vv, 3)
    av, bv = from_digits(a, 3), from_digits(b, 3)
    if (from_digits(t, 3) - (-av - bv + u_val)) % m or (from_digits(s, 3) - (-av - bv + v_val)) % m:
        raise GraphError("walk digits do not satisfy the two congruences")
    if walk.total != sum(a) + sum(b) + 2 * sum(c) + 2 * sum(d):
        raise GraphError("walk weight mismatch")
    return {"a": a, "b": b, "s": s, "t": t, "c": c, "d": d, "u": u_val, "v": v_val}


# ---------------------------------------------------------------------------
# generalized layered graph

@dataclass
class GeneralizedGraph:
    u_digits: tuple
    v_digits: tuple
    graph: Graph

    @property
    def n(self) -> int:
        return len(self.u_digits)


def canonical_pattern(u_digits, v_digits) -> tuple:
    """Replace u or v by the digits of its residue mod 3^n - 1 (all-2 -> all-0)."""
    n = len(u_digits)
    return (tuple(digits(from_digits(u_digits, 3), 3, n)),
            tuple(digits(from_digits(v_digits, 3), 3, n)))


def build_generalized_graph(u_digits, v_digits) -> GeneralizedGraph:
    u_digits, v_digits = tuple(u_digits), tuple(v_digits)
    if len(u_digits) != len(v_digits) or not u_digits:
        raise ValueError("u and v need the same positive number of digits")
    if any(ui and vi for ui, vi in zip(u_digits, v_digits)):
        raise ValueError("u and v digit supports overlap")
    u_digits, v_digits = canonical_pattern(u_digits, v_digits)
    n = len(u_digits)
    vertices = [(i, a1, b1, c1, d1) for i in range(n)
                for a1, b1, c1, d1 in itertools.product(DIGITS, DIGITS, CARRIES, CARRIES)]
    index = {v: j for j, v in enumerate(vertices)}
    arcs = []
    for src in vertices:
        i, a1, b1, c1, d1 = src
        ui, vi = u_digits[i], v_digits[i]
        for a2, b2, c2, d2 in itertools.product(DIGITS, DIGITS, CARRIES, CARRIES):
            t1 = -a1 - b1 + ui + c1 - 3 * c2
            s1 = -a1 - b1 + vi + d1 - 3 * d2
            if _digit(t1) and _digit(s1):
                arcs.append((index[src], index[((i + 1) % n, a2, b2, c2, d2)],
                             a1 + b1 + 2 * c2 + 2 * d2))
    return GeneralizedGraph(u_digits, v_digits, Graph(vertices, arcs))


def generalized_walk(a: int, b: int, gg: GeneralizedGraph) -> Walk:
    n = gg.n
    u, v = from_digits(gg.u_digits, 3), from_digits(gg.v_digits, 3)
    tc, sc = _chains(a, b, u, v, n)
    ad, bd = digits(a, 3, n), digits(b, 3, n)
    verts = [(i, ad[i], bd[i], tc.carry(i - 1), sc.carry(i - 1)) for i in range(n)]
    verts.append(verts[0])
    g = gg.graph
    weights = []
    for i in range(n):
        if verts[i] not in g.index or not g.has_arc(verts[i], verts[i + 1]):
            raise GraphError(f"step {i} of the generalized walk for (a={a}, b={b}) is not an arc")
        weights.append(g.arc_weight(verts[i], verts[i + 1]))
    return Walk(verts, weights)


def verify_generalized(gg: GeneralizedGraph, pairs=()) -> bool:
    """All arcs non-positive, and walks of the given (a, b) pairs reproduce
    w(u) + w(v) - [w(a)+w(b)+w(s)+w(t)]."""
    ok, _ = verify_arcs_nonpositive(gg.graph)
    if not ok:
        return False
    n = gg.n
    bound = carry.gengenwi_bound(gg.u_digits, gg.v_digits)
    for a, b in pairs:
        lhs = carry.gengenwi_check(a, b, gg.u_digits, gg.v_digits, n)
        if generalized_walk(a, b, gg).total != bound - lhs:
            return False
    return True


def collapses_to_standard(k: int) -> bool:
    """The period-2 layered graph maps arc-for-arc onto the standard graph."""
    c = uvz_constants(k)
    gg = build_generalized_graph(c.u_digits, c.v_digits)
    std = build_graph()
    n = gg.n
    image = set()
    for f, t, w in gg.graph.arcs:
        i, a1, b1, c1, d1 = gg.graph.vertices[f]
        j, a2, b2, c2, d2 = gg.graph.vertices[t]
        src = (a1, b1, c1, d1, c.v_digits[(i - 1) % n])
        dst = (a2, b2, c2, d2, c.v_digits[(j - 1) % n])
        key = (std.index[src], std.index[dst])
        if std.weight_of.get(key) != w:
            return False
        image.add(key)
    return image == set(std.weight_of)


def prove() -> dict:
    g = build_graph()
    ok, top = verify_arcs_nonpositive(g)
    attained = arcs_attaining(g, top)
    return {
        "vertices": len(g.vertices),
        "arcs": len(g.arcs),
        "max_arc_weight": top,
        "attained_at": [list(map(list, attained[0]))] if attained else [],
        "attained_count": len(attained),
        "verdict": "pass" if ok and len(g.vertices) == 162 else "fail",
    }
