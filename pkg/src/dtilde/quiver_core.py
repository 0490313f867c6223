"""Quivers, mutation, acyclicity and Euler/Coxeter data.

Vertices are 1-based throughout, matching the usual labelling of the
affine D diagram: leaves 1, 2 hang off vertex 3, leaves n, n+1 hang
off vertex n-1, and 3 .. n-1 form the central chain.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import DimensionMismatch, LoopError, NotAcyclic, TwoCycleError, VertexIndexError


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def out_arrows(self, i: int) -> list[int]:
        return [k for k, (s, _) in enumerate(self.arrows) if s == i]

    def in_arrows(self, i: int) -> list[int]:
        return [k for k, (_, t) in enumerate(self.arrows) if t == i]

    def is_sink(self, i: int) -> bool:
        return not self.out_arrows(i)

    def is_source(self, i: int) -> bool:
        return not self.in_arrows(i)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertex_count, tuple((t, s) for s, t in self.arrows))

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        return cls(int(data["vertices"]), tuple(tuple(a) for a in data["arrows"]))


@dataclass(frozen=True)
class QuiverReport:
    quiver: Quiver
    acyclic: bool
    topological_order: tuple[int, ...] | None
    affine_rank: int | None  # n when the underlying graph is the affine D_n diagram


def canonical_quiver(n: int) -> Quiver:
    """The orientation 1->3, 2->3, 3->4, ..., (n-1)->n, (n-1)->(n+1)."""
    if n < 4:
        raise ValueError("affine D_n needs n >= 4")
    arrows = [(1, 3), (2, 3)]
    arrows += [(k, k + 1) for k in range(3, n - 1)]
    arrows += [(n - 1, n), (n - 1, n + 1)]
    return Quiver(n + 1, tuple(arrows))


def delta(n: int) -> tuple[int, ...]:
    """The imaginary root (1,1,2,...,2,1,1) of affine D_n."""
    return (1, 1) + (2,) * (n - 3) + (1, 1)


def _check_indices(q: Quiver) -> None:
    for k, (s, t) in enumerate(q.arrows):
        if not (1 <= s <= q.vertex_count and 1 <= t <= q.vertex_count):
            raise VertexIndexError(f"arrow {k} = {s}->{t} leaves 1..{q.vertex_count}", arrow=[s, t])


def topological_order(q: Quiver) -> tuple[int, ...] | None:
    """Kahn order (sources first, smallest label first) or None when cyclic."""
    indeg = Counter(t for _, t in q.arrows)
    succ = defaultdict(list)
    for s, t in q.arrows:
        succ[s].append(t)
    ready = sorted(v for v in q.vertices if indeg[v] == 0)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    return tuple(order) if len(order) == q.vertex_count else None


def require_acyclic(q: Quiver) -> tuple[int, ...]:
    order = topological_order(q)
    if order is None:
        raise NotAcyclic("quiver has an oriented cycle")
    return order


def underlying_edges(q: Quiver) -> set[frozenset]:
    return {frozenset(a) for a in q.arrows}


def affine_d_rank(q: Quiver) -> int | None:
    """Return n when the underlying graph is the affine D_n diagram (n >= 4)."""
    edges = underlying_edges(q)
    nv = q.vertex_count
    if len(q.arrows) != len(edges) or len(edges) != nv - 1 or nv < 5:
        return None
    adj = defaultdict(set)
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {1}, [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nv:
        return None
    deg = {v: len(adj[v]) for v in q.vertices}
    if nv == 5:
        ok = sorted(deg.values()) == [1, 1, 1, 1, 4]
        return 4 if ok else None
    branch = [v for v in q.vertices if deg[v] == 3]
    if len(branch) != 2 or any(d > 3 for d in deg.values()):
        return None
    for b in branch:
        if sum(1 for w in adj[b] if deg[w] == 1) != 2:
            return None
    return nv - 1


def validate_quiver(q: Quiver) -> QuiverReport:
    _check_indices(q)
    present = set()
    for k, (s, t) in enumerate(q.arrows):
        if s == t:
            raise LoopError(f"arrow {k} is a loop at {s}", arrow=[s, t])
        present.add((s, t))
    for k, (s, t) in enumerate(q.arrows):
        if (t, s) in present:
            raise TwoCycleError(f"arrows {s}->{t} and {t}->{s} form a 2-cycle", arrow=[s, t])
    order = topological_order(q)
    return QuiverReport(q, order is not None, order, affine_d_rank(q))


def mutate(q: Quiver, i: int) -> Quiver:
    """Mutation at i: add composites through i, reverse arrows at i, cancel 2-cycles."""
    if not 1 <= i <= q.vertex_count:
        raise VertexIndexError(f"vertex {i} not in 1..{q.vertex_count}", vertex=i)
    incoming = [s for s, t in q.arrows if t == i]
    outgoing = [t for s, t in q.arrows if s == i]
    step1 = list(q.arrows) + [(j, k) for j in incoming for k in outgoing]
    step2 = [(t, s) if i in (s, t) else (s, t) for s, t in step1]
    count = Counter(step2)
    result = []
    for (s, t), c in sorted(count.items()):
        net = c - count.get((t, s), 0)
        result += [(s, t)] * max(net, 0)
    return Quiver(q.vertex_count, tuple(result))


@dataclass(frozen=True)
class EulerData:
    matrix: tuple[tuple[int, ...], ...]
    coxeter: tuple[tuple[Fraction, ...], ...]
    determinant: int

    @property
    def size(self) -> int:
        return len(self.matrix)

    def apply_coxeter(self, x) -> tuple[int, ...]:
        out = []
        for row in self.coxeter:
            v = sum(c * xi for c, xi in zip(row, x))
            if v.denominator != 1:
                raise ValueError("Coxeter image is not integral")
            out.append(int(v))
        return tuple(out)


def euler_data(q: Quiver) -> EulerData:
    size = q.vertex_count
    mat = [[int(r == c) for c in range(size)] for r in range(size)]
    for s, t in q.arrows:
        mat[s - 1][t - 1] -= 1
    e = sympy.Matrix(mat)
    # with E[i][j] = -#(i->j), tau acts on dimension vectors as -E^-1 E^T
    phi = -(e.inv()) * e.T
    cox = tuple(tuple(Fraction(int(x.p), int(x.q)) for x in phi.row(r)) for r in range(size))
    return EulerData(tuple(tuple(r) for r in mat), cox, int(e.det()))


def euler_pairing(e: EulerData, x, y) -> int:
    if len(x) != e.size or len(y) != e.size:
        raise DimensionMismatch(f"vectors must have length {e.size}", lengths=[len(x), len(y)])
    return sum(x[r] * e.matrix[r][c] * y[c] for r in range(e.size) for c in range(e.size) if e.matrix[r][c])
