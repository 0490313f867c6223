"""Quiver representations over exact rationals.

Covers the standard projectives and injectives, the one-parameter family
M_lambda of imaginary-root modules, Hom and Ext dimensions, the
Auslander-Reiten translate via BGP reflections, duality, orientation
transport and a classifier placing an indecomposable in its AR component.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import flint
import sympy

from . import linalg
from .errors import (
    BadColor,
    BadQuiver,
    DiagramMismatch,
    NotAcyclic,
    NotIndecomposable,
    NotSink,
    NotSource,
    OracleDisagreement,
    QuiverMismatch,
    VertexIndexError,
)
from .linalg import Matrix
from .quiver_core import (
    Quiver,
    affine_d_rank,
    canonical_quiver,
    delta,
    euler_data,
    euler_pairing,
    require_acyclic,
    topological_order,
    underlying_edges,
)


class Kind(enum.Enum):
    PROJECTIVE = "Projective"
    INJECTIVE = "Injective"


class Direction(enum.Enum):
    FORWARD = "Forward"
    INVERSE = "Inverse"
    AT_SINK = "AtSink"
    AT_SOURCE = "AtSource"


class Component(enum.Enum):
    PREPROJECTIVE = "Preprojective"
    PREINJECTIVE = "Preinjective"
    REGULAR = "Regular"


# -- colors -------------------------------------------------------------------


@dataclass(frozen=True)
class TubeColor:
    """Either the distinguished color -inf or a point [a:b] of the projective line."""

    is_neg_inf: bool
    a: int = 0
    b: int = 0

    @classmethod
    def neg_inf(cls) -> "TubeColor":
        return cls(True)

    @classmethod
    def point(cls, a: int, b: int) -> "TubeColor":
        a, b = int(a), int(b)
        if a == 0 and b == 0:
            raise BadColor("[0:0] is not a point of the projective line")
        g = gcd(a, b)
        a, b = a // g, b // g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        return cls(False, a, b)

    @classmethod
    def parse(cls, text) -> "TubeColor":
        if isinstance(text, TubeColor):
            return text
        s = str(text).strip().replace(" ", "")
        if s in ("-inf", "-∞", "neginf", "NegInf"):
            return cls.neg_inf()
        if s in ("inf", "∞", "+inf"):
            return cls.point(1, 0)
        if s.startswith("[") and s.endswith("]") and ":" in s:
            a, b = s[1:-1].split(":")
            return cls.point(int(a), int(b))
        try:
            q = Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise BadColor(f"cannot parse color {text!r}") from None
        return cls.point(q.numerator, q.denominator)

    @property
    def is_infinity(self) -> bool:
        return not self.is_neg_inf and self.b == 0

    @property
    def value(self) -> Fraction | None:
        """lambda as a rational, None for infinity and -inf."""
        if self.is_neg_inf or self.b == 0:
            return None
        return Fraction(self.a, self.b)

    @property
    def is_special(self) -> bool:
        return not self.is_neg_inf and (self.a, self.b) in ((0, 1), (1, 1), (1, 0))

    def _key(self):
        if self.is_neg_inf:
            return (0, 0, Fraction(0))
        if self.b == 0:
            return (1, 1, Fraction(0))
        return (1, 0, Fraction(self.a, self.b))

    def __lt__(self, other: "TubeColor") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "TubeColor") -> bool:
        return self._key() <= other._key()

    def __str__(self) -> str:
        return "-inf" if self.is_neg_inf else f"[{self.a}:{self.b}]"

    def to_json(self) -> str:
        return str(self)


NEG_INF = TubeColor(True)
ZERO = TubeColor.point(0, 1)
ONE = TubeColor.point(1, 1)
INFINITY = TubeColor.point(1, 0)


def tube_rank(n: int, color: TubeColor) -> int:
    if color.is_neg_inf:
        raise BadColor("-inf is not a tube")
    if color in (ZERO, ONE):
        return 2
    if color == INFINITY:
        return n - 2
    return 1


# -- representations -----------------------------------------------------------


def _shape_ok(m: Matrix, rows: int, cols: int) -> bool:
    return len(m) == rows and all(len(r) == cols for r in m)


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]  # maps[k] has shape dims[t] x dims[s] for arrow k = s->t

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) != self.quiver.vertex_count:
            raise ValueError("one dimension per vertex expected")
        maps = tuple(linalg.matrix(m) for m in self.maps)
        object.__setattr__(self, "maps", maps)
        if len(maps) != len(self.quiver.arrows):
            raise ValueError("one matrix per arrow expected")
        for k, (s, t) in enumerate(self.quiver.arrows):
            if not _shape_ok(maps[k], dims[t - 1], dims[s - 1]):
                raise ValueError(f"map for arrow {s}->{t} has the wrong shape")
        object.__setattr__(self, "_hash", hash((self.quiver, dims, maps)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def is_zero(self) -> bool:
        return not any(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def dim(self, i: int) -> int:
        return self.dims[i - 1]

    def map_for(self, arrow: tuple[int, int]) -> Matrix:
        return self.maps[self.quiver.arrows.index(tuple(arrow))]

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "dims": list(self.dims),
            "maps": [
                {"arrow": k, "entries": [[str(x) for x in row] for row in m]} for k, m in enumerate(self.maps)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Representation":
        q = Quiver.from_json(data["quiver"])
        dims = tuple(int(d) for d in data["dims"])
        maps = [linalg.zeros(dims[t - 1], dims[s - 1]) for s, t in q.arrows]
        for item in data.get("maps", []):
            maps[int(item["arrow"])] = linalg.matrix([[Fraction(x) for x in row] for row in item["entries"]])
        return cls(q, dims, tuple(maps))


def zero_rep(q: Quiver) -> Representation:
    return Representation(q, (0,) * q.vertex_count, tuple(() for _ in q.arrows))


def simple_rep(q: Quiver, i: int) -> Representation:
    _check_vertex(q, i)
    dims = tuple(int(v == i) for v in q.vertices)
    return Representation(q, dims, tuple(linalg.zeros(dims[t - 1], dims[s - 1]) for s, t in q.arrows))


def _check_vertex(q: Quiver, i: int) -> None:
    if not 1 <= i <= q.vertex_count:
        raise VertexIndexError(f"vertex {i} not in 1..{q.vertex_count}", vertex=i)


def _same_quiver(m: Representation, n: Representation) -> None:
    if m.quiver != n.quiver:
        raise QuiverMismatch("representations live over different quivers")


def _paths_from(q: Quiver, i: int) -> list[tuple[int, ...]]:
    out, stack = [], [(i, ())]
    while stack:
        v, path = stack.pop()
        out.append(path)
        for k in q.out_arrows(v):
            stack.append((q.arrows[k][1], path + (k,)))
    return out


def _path_end(q: Quiver, start: int, path: tuple[int, ...]) -> int:
    return q.arrows[path[-1]][1] if path else start


def standard_rep(q: Quiver, kind: Kind, i: int) -> Representation:
    """P(i) has basis the paths out of i, I(i) the paths into i."""
    _check_vertex(q, i)
    require_acyclic(q)
    if kind is Kind.INJECTIVE:
        p = standard_rep(q.opposite(), Kind.PROJECTIVE, i)
        return dual_rep(p)
    paths = sorted(_paths_from(q, i), key=lambda p: (len(p), p))
    basis = {v: [p for p in paths if _path_end(q, i, p) == v] for v in q.vertices}
    dims = tuple(len(basis[v]) for v in q.vertices)
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        rows = [[Fraction(0)] * dims[s - 1] for _ in range(dims[t - 1])]
        for c, p in enumerate(basis[s]):
            rows[basis[t].index(p + (k,))][c] = Fraction(1)
        maps.append(rows)
    return Representation(q, dims, tuple(maps))


def is_canonical(q: Quiver) -> bool:
    n = q.vertex_count - 1
    return n >= 4 and q == canonical_quiver(n)


def mouth_family_rep(n: int, color: TubeColor) -> Representation:
    """The module M_lambda of dimension delta over the canonical orientation."""
    color = TubeColor.parse(color)
    if color.is_neg_inf:
        raise BadColor("the family is indexed by points of the projective line")
    if n < 5:
        raise BadQuiver("the family needs n >= 5")
    q = canonical_quiver(n)
    one, zero = Fraction(1), Fraction(0)
    maps = []
    for s, t in q.arrows:
        if s == 1:
            maps.append(((one,), (-one,)))
        elif s == 2:
            maps.append(((zero,), (one,)))
        elif t == n:
            maps.append(((zero, one),))
        elif t == n + 1:
            maps.append(((Fraction(color.b), Fraction(color.a)),))
        else:
            maps.append(linalg.identity(2))
    return Representation(q, delta(n), tuple(maps))


# -- morphisms -----------------------------------------------------------------


def _hom_system(m: Representation, n: Representation):
    """Linear system whose kernel is Hom(m, n); unknowns are f_v entries row-major."""
    _same_quiver(m, n)
    q = m.quiver
    offset, total = {}, 0
    for v in q.vertices:
        offset[v] = total
        total += n.dim(v) * m.dim(v)
    rows = []
    for k, (s, t) in enumerate(q.arrows):
        a, b = m.maps[k], n.maps[k]
        ms, mt, ns, nt = m.dim(s), m.dim(t), n.dim(s), n.dim(t)
        for r in range(nt):
            for c in range(ms):
                eq = {}
                # (f_t . a)[r][c] = sum_j f_t[r][j] a[j][c]
                for j in range(mt):
                    if a[j][c]:
                        idx = offset[t] + r * mt + j
                        eq[idx] = eq.get(idx, 0) + a[j][c]
                # (b . f_s)[r][c] = sum_j b[r][j] f_s[j][c]
                for j in range(ns):
                    if b[r][j]:
                        idx = offset[s] + j * ms + c
                        eq[idx] = eq.get(idx, 0) - b[r][j]
                eq = {i: x for i, x in eq.items() if x}
                if eq:
                    rows.append(eq)
    return rows, total, offset


def _sparse_to_flint(rows, ncols: int) -> flint.fmpq_mat:
    mat = flint.fmpq_mat(len(rows), ncols)
    for r, eq in enumerate(rows):
        for c, x in eq.items():
            mat[r, c] = flint.fmpq(x.numerator, x.denominator)
    return mat


@lru_cache(maxsize=200_000)
def hom_dim(m: Representation, n: Representation) -> int:
    rows, total, _ = _hom_system(m, n)
    if total == 0:
        return 0
    if not rows:
        return total
    return total - int(_sparse_to_flint(rows, total).rank())


def end_dim(m: Representation) -> int:
    return hom_dim(m, m)


Morphism = tuple[Matrix, ...]  # one matrix per vertex, shape dims_N[v] x dims_M[v]


def hom_basis(m: Representation, n: Representation) -> list[Morphism]:
    rows, total, offset = _hom_system(m, n)
    if total == 0:
        return []
    if rows:
        red, rk = _sparse_to_flint(rows, total).rref()
        red_rows = [[linalg.frac(red[r, c]) for c in range(total)] for r in range(int(rk))]
        vecs = linalg.nullspace(red_rows, total) if red_rows else _unit_vectors(total)
    else:
        vecs = _unit_vectors(total)
    out = []
    for vec in vecs:
        mats = []
        for v in m.quiver.vertices:
            rr, cc = n.dim(v), m.dim(v)
            base = offset[v]
            mats.append(tuple(tuple(vec[base + r * cc + c] for c in range(cc)) for r in range(rr)))
        out.append(tuple(mats))
    return out


def _unit_vectors(k: int) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(int(i == j)) for i in range(k)) for j in range(k)]


def _combine(basis: list[Morphism], coeffs) -> Morphism:
    first = basis[0]
    out = []
    for v, mat in enumerate(first):
        rows = []
        for r in range(len(mat)):
            rows.append(tuple(sum((c * f[v][r][col] for c, f in zip(coeffs, basis)), Fraction(0)) for col in range(len(mat[r]))))
        out.append(tuple(rows))
    return tuple(out)


def is_isomorphic(m: Representation, n: Representation, trials: int = 3, seed: int = 0) -> bool:
    """Search for an invertible morphism among random combinations of a Hom basis.

    A hit is a certificate.  A miss after ``trials`` draws from a range of
    size 2*10**6 is wrong with probability at most (d / 2e6) ** trials,
    d being the total dimension (the degree of the determinant).
    """
    _same_quiver(m, n)
    if m.dims != n.dims:
        return False
    if m.is_zero:
        return True
    if end_dim(m) != end_dim(n) or hom_dim(m, n) != end_dim(m):
        return False
    basis = hom_basis(m, n)
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [Fraction(rng.randint(-10**6, 10**6)) for _ in basis]
        f = _combine(basis, coeffs)
        if all(linalg.rank(mat, d) == d for mat, d in zip(f, m.dims) if d):
            return True
    return False


def morphism_image(m: Representation, n: Representation, f: Morphism) -> Representation:
    """The image of f : m -> n as a representation with a chosen basis per vertex."""
    q = m.quiver
    bases = {}
    for v in q.vertices:
        bases[v] = linalg.column_basis(f[v - 1], m.dim(v)) if n.dim(v) and m.dim(v) else []
    dims = tuple(len(bases[v]) for v in q.vertices)
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        phi = n.maps[k]
        imgs = [tuple(sum((phi[r][j] * col[j] for j in range(n.dim(s))), Fraction(0)) for r in range(n.dim(t))) for col in bases[s]]
        coords = linalg.solve_columns(bases[t], imgs, n.dim(t)) if imgs else []
        maps.append(tuple(tuple(coords[c][r] for c in range(len(imgs))) for r in range(dims[t - 1])))
    return Representation(q, dims, tuple(maps))


# -- Ext ------------------------------------------------------------------------


@lru_cache(maxsize=200_000)
def _euler_for(q: Quiver):
    return euler_data(q)


def ext1_dim(m: Representation, n: Representation, check: bool = False) -> int:
    """dim Ext^1(m, n); with ``check`` both routes are computed and compared."""
    _same_quiver(m, n)
    require_acyclic(m.quiver)
    b = hom_dim(m, n) - euler_pairing(_euler_for(m.quiver), m.dims, n.dims)
    if check:
        tm = tau(m)
        a = 0 if tm.is_zero else hom_dim(n, tm)
        if a != b:
            raise OracleDisagreement(
                "Ext routes disagree", via_tau=a, via_euler=b, left=list(m.dims), right=list(n.dims)
            )
    return b


def nonsplit_extension(quotient: Representation, sub: Representation) -> Representation:
    """Middle term of a nonsplit sequence 0 -> sub -> E -> quotient -> 0."""
    _same_quiver(quotient, sub)
    x, y, q = quotient, sub, quotient.quiver
    # cochains: C0 = sum_v Hom(x_v, y_v), C1 = sum_arrows Hom(x_s, y_t)
    c1_off, c1 = [], 0
    for s, t in q.arrows:
        c1_off.append(c1)
        c1 += y.dim(t) * x.dim(s)
    images = []
    for v in q.vertices:
        for r in range(y.dim(v)):
            for c in range(x.dim(v)):
                vec = [Fraction(0)] * c1
                for k, (s, t) in enumerate(q.arrows):
                    ys, xs = y.maps[k], x.maps[k]
                    if s == v:  # y_alpha . h_s
                        for rr in range(y.dim(t)):
                            if ys[rr][r]:
                                vec[c1_off[k] + rr * x.dim(s) + c] += ys[rr][r]
                    if t == v:  # - h_t . x_alpha
                        for cc in range(x.dim(s)):
                            if xs[c][cc]:
                                vec[c1_off[k] + r * x.dim(s) + cc] -= xs[c][cc]
                images.append(tuple(vec))
    extra = linalg.complement_basis(images, c1)
    if not extra:
        raise ValueError("Ext^1 vanishes, every extension splits")
    g = extra[0]
    maps = []
    for k, (s, t) in enumerate(q.arrows):
        ys, xs = y.maps[k], x.maps[k]
        yt, ysd, xt, xsd = y.dim(t), y.dim(s), x.dim(t), x.dim(s)
        rows = []
        for r in range(yt):
            rows.append(tuple(ys[r]) + tuple(g[c1_off[k] + r * xsd + c] for c in range(xsd)))
        for r in range(xt):
            rows.append((Fraction(0),) * ysd + tuple(xs[r]))
        maps.append(tuple(rows))
    dims = tuple(a + b for a, b in zip(y.dims, x.dims))
    return Representation(q, dims, tuple(maps))


# -- reflections and tau ------------------------------------------------------------


def _reversed_at(q: Quiver, i: int) -> Quiver:
    return Quiver(q.vertex_count, tuple((t, s) if i in (s, t) else (s, t) for s, t in q.arrows))


def reflect(m: Representation, i: int, direction: Direction) -> Representation:
    q = m.quiver
    _check_vertex(q, i)
    new_q = _reversed_at(q, i)
    maps = list(m.maps)
    if direction is Direction.AT_SINK:
        if not q.is_sink(i):
            raise NotSink(f"vertex {i} is not a sink", vertex=i)
        arrows = q.in_arrows(i)
        blocks = [m.dim(q.arrows[k][0]) for k in arrows]
        width = sum(blocks)
        h = [sum((tuple(m.maps[k][r]) for k in arrows), ()) for r in range(m.dim(i))]
        kernel = linalg.nullspace(h, width) if width else []
        new_dim = len(kernel)
        off = 0
        for k, w in zip(arrows, blocks):
            maps[k] = tuple(tuple(vec[off + r] for vec in kernel) for r in range(w))
            off += w
    elif direction is Direction.AT_SOURCE:
        if not q.is_source(i):
            raise NotSource(f"vertex {i} is not a source", vertex=i)
        arrows = q.out_arrows(i)
        blocks = [m.dim(q.arrows[k][1]) for k in arrows]
        height = sum(blocks)
        h = tuple(row for k in arrows for row in m.maps[k])
        image = linalg.column_basis(h, m.dim(i)) if h and m.dim(i) else []
        extra = linalg.complement_basis(image, height)
        new_dim = len(extra)
        coords = linalg.solve_columns(image + extra, _unit_vectors(height), height) if height else []
        off = 0
        for k, w in zip(arrows, blocks):
            maps[k] = tuple(tuple(coords[off + c][len(image) + r] for c in range(w)) for r in range(new_dim))
            off += w
    else:
        raise ValueError("direction must be AtSink or AtSource")
    dims = list(m.dims)
    dims[i - 1] = new_dim
    return Representation(new_q, tuple(dims), tuple(maps))


@lru_cache(maxsize=100_000)
def tau(m: Representation, direction: Direction = Direction.FORWARD) -> Representation:
    order = require_acyclic(m.quiver)
    x = m
    if direction is Direction.FORWARD:
        for v in reversed(order):
            x = reflect(x, v, Direction.AT_SINK)
    elif direction is Direction.INVERSE:
        for v in order:
            x = reflect(x, v, Direction.AT_SOURCE)
    else:
        raise ValueError("direction must be Forward or Inverse")
    if not x.is_zero:
        e = _euler_for(m.quiver)
        want = e.apply_coxeter(m.dims) if direction is Direction.FORWARD else _inverse_coxeter(e, m.dims)
        if want != x.dims:
            raise OracleDisagreement("Coxeter image disagrees with the reflection sweep", dims=list(x.dims))
    return x


def _inverse_coxeter(e, dims) -> tuple[int, ...]:
    inv = sympy.Matrix(e.coxeter).inv()
    v = inv * sympy.Matrix(list(dims))
    return tuple(int(a) for a in v)


def is_projective(m: Representation) -> bool:
    return tau(m).is_zero


def is_injective(m: Representation) -> bool:
    return tau(m, Direction.INVERSE).is_zero


# -- orientation changes ------------------------------------------------------------


def dual_rep(m: Representation) -> Representation:
    q = m.quiver.opposite()
    maps = tuple(linalg.transpose(mat, m.dim(s)) for mat, (s, _) in zip(m.maps, m.quiver.arrows))
    return Representation(q, m.dims, maps)


def _component(edges: set[frozenset], start: int, cut: frozenset) -> set[int]:
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        for e in edges:
            if e == cut or v not in e:
                continue
            (w,) = e - {v}
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def transport_rep(m: Representation, target: Quiver) -> Representation:
    """Move m to another orientation of the same tree by sink sweeps."""
    q = m.quiver
    edges = underlying_edges(q)
    if (
        target.vertex_count != q.vertex_count
        or underlying_edges(target) != edges
        or len(target.arrows) != len(edges)
        or len(q.arrows) != len(edges)
    ):
        raise DiagramMismatch("target is not an orientation of the same tree")
    if topological_order(target) is None:
        raise NotAcyclic("target orientation has a cycle")
    wanted = set(target.arrows)
    x = m
    for u, v in q.arrows:
        if (u, v) in wanted:
            continue
        side = _component(edges, v, frozenset((u, v)))
        order = require_acyclic(x.quiver)
        for w in reversed(order):
            if w in side:
                x = reflect(x, w, Direction.AT_SINK)
    lookup = {a: mat for a, mat in zip(x.quiver.arrows, x.maps)}
    return Representation(target, x.dims, tuple(lookup[a] for a in target.arrows))


# -- tubes --------------------------------------------------------------------------


def _canonical_n(q: Quiver) -> int:
    n = affine_d_rank(q)
    if n is None or n < 5:
        raise BadQuiver("expected an affine D_n diagram with n >= 5")
    if not underlying_edges(q) == underlying_edges(canonical_quiver(n)):
        raise BadQuiver("vertices must follow the standard D_n labelling")
    return n


@lru_cache(maxsize=None)
def tube_mouths(n: int, color: TubeColor) -> tuple[Representation, ...]:
    """Quasi-simples E_0 .. E_{r-1} over the canonical orientation, tau E_{s+1} = E_s.

    E_0 is the quasi-socle of M_lambda, cut out as the image of the one
    nonzero map from tau^-1 M_lambda to M_lambda.
    """
    color = TubeColor.parse(color)
    r = tube_rank(n, color)
    top = mouth_family_rep(n, color)
    if r == 1:
        return (top,)
    shifted = tau(top, Direction.INVERSE)
    basis = hom_basis(shifted, top)
    if len(basis) != 1:
        raise OracleDisagreement("expected a one-dimensional Hom from the shifted family member", got=len(basis))
    mouths = [morphism_image(shifted, top, basis[0])]
    for _ in range(r - 1):
        mouths.append(tau(mouths[-1], Direction.INVERSE))
    return tuple(mouths)


@lru_cache(maxsize=None)
def tube_module(n: int, color: TubeColor, socle: int, quasi_length: int) -> Representation:
    """The uniserial E[socle, quasi_length] over the canonical orientation."""
    color = TubeColor.parse(color)
    if quasi_length < 1:
        raise ValueError("quasi-length must be positive")
    r = tube_rank(n, color)
    mouths = tube_mouths(n, color)
    s = socle % r
    if quasi_length == 1:
        return mouths[s]
    return nonsplit_extension(tube_module(n, color, (s + 1) % r, quasi_length - 1), mouths[s])


# -- classification ---------------------------------------------------------------


@dataclass(frozen=True)
class ModuleCoordinate:
    component: Component
    vertex: int | None = None  # tau^-k P(vertex) or tau^k I(vertex)
    k: int | None = None
    color: TubeColor | None = None
    socle: int | None = None
    quasi_length: int | None = None

    @classmethod
    def preprojective(cls, j: int, k: int) -> "ModuleCoordinate":
        return cls(Component.PREPROJECTIVE, vertex=j, k=k)

    @classmethod
    def preinjective(cls, j: int, k: int) -> "ModuleCoordinate":
        return cls(Component.PREINJECTIVE, vertex=j, k=k)

    @classmethod
    def regular(cls, color: TubeColor, socle: int, quasi_length: int) -> "ModuleCoordinate":
        return cls(Component.REGULAR, color=color, socle=socle, quasi_length=quasi_length)

    def to_json(self) -> dict:
        if self.component is Component.REGULAR:
            return {
                "component": self.component.value,
                "color": str(self.color),
                "socle": self.socle,
                "quasi_length": self.quasi_length,
            }
        return {"component": self.component.value, "j": self.vertex, "k": self.k}

    @classmethod
    def from_json(cls, data: dict) -> "ModuleCoordinate":
        comp = Component(data["component"])
        if comp is Component.REGULAR:
            return cls.regular(TubeColor.parse(data["color"]), int(data["socle"]), int(data["quasi_length"]))
        return cls(comp, vertex=int(data["j"]), k=int(data["k"]))


def build_module(q: Quiver, coord: ModuleCoordinate) -> Representation:
    """Construct the indecomposable at a coordinate over an orientation of the D_n tree."""
    if coord.component is Component.REGULAR:
        n = _canonical_n(q)
        x = tube_module(n, coord.color, coord.socle, coord.quasi_length)
        return transport_rep(x, q)
    kind = Kind.PROJECTIVE if coord.component is Component.PREPROJECTIVE else Kind.INJECTIVE
    step = Direction.INVERSE if kind is Kind.PROJECTIVE else Direction.FORWARD
    x = standard_rep(q, kind, coord.vertex)
    for _ in range(coord.k):
        x = tau(x, step)
    return x


@lru_cache(maxsize=None)
def _transported_mouths(q: Quiver, color: TubeColor) -> tuple[Representation, ...]:
    n = _canonical_n(q)
    return tuple(transport_rep(e, q) for e in tube_mouths(n, color))


_PROBE_LIMIT = 10_000


def _walk_to_end(m: Representation, kind: Kind) -> ModuleCoordinate:
    step = Direction.FORWARD if kind is Kind.PROJECTIVE else Direction.INVERSE
    x, k = m, 0
    while k < _PROBE_LIMIT:
        y = tau(x, step)
        if y.is_zero:
            for j in x.quiver.vertices:
                cand = standard_rep(x.quiver, kind, j)
                if cand.dims == x.dims and is_isomorphic(cand, x):
                    if kind is Kind.PROJECTIVE:
                        return ModuleCoordinate.preprojective(j, k)
                    return ModuleCoordinate.preinjective(j, k)
            raise NotIndecomposable("tau orbit ends in a module that is not a standard one")
        x, k = y, k + 1
    raise NotIndecomposable("tau orbit probe did not terminate")


def _quasi_length(mouths, socle: int, total: int) -> int | None:
    r, acc, ell = len(mouths), 0, 0
    while acc < total:
        acc += mouths[(socle + ell) % r].total_dim
        ell += 1
    return ell if acc == total else None


def recover_generic_color(m: Representation) -> TubeColor:
    """lambda for a module in a homogeneous tube, read off four half-dimensional subspaces."""
    n = _canonical_n(m.quiver)
    x = transport_rep(m, canonical_quiver(n)) if not is_canonical(m.quiver) else m
    d = x.dim(3)
    half = d // 2
    chain = linalg.identity(d)
    for v in range(3, n - 1):
        step = x.map_for((v, v + 1))
        chain = linalg.mul(step, chain, x.dim(v), d)

    def image(arrow):
        a = x.map_for(arrow)
        return linalg.column_basis(a, x.dim(arrow[0]))

    def kernel(arrow):
        f = linalg.mul(x.map_for(arrow), chain, x.dim(n - 1), d)
        return linalg.nullspace(f, d)

    a1, a2, k6, k7 = image((1, 3)), image((2, 3)), kernel((n - 1, n)), kernel((n - 1, n + 1))
    if not all(len(s) == half for s in (a1, a2, k6, k7)):
        raise NotIndecomposable("subspace configuration is degenerate for a homogeneous tube")

    def graph(k):
        # phi : A1 -> A2 with v + phi(v) in k for every v in A1
        coords = linalg.solve_columns(a2 + k, a1, d)
        return sympy.Matrix(half, half, lambda r, c: -coords[c][r])

    phi6, phi7 = graph(k6), graph(k7)
    t = phi6.inv() * phi7
    roots = [ev for ev in t.eigenvals() if ev.is_rational]
    if len(roots) != 1:
        raise NotIndecomposable("no unique rational eigenvalue, module lies in no single tube")
    mu = Fraction(int(roots[0].p), int(roots[0].q))
    if mu == 1:
        return INFINITY
    lam = 1 / (1 - mu)
    return TubeColor.point(lam.numerator, lam.denominator)


def classify_component(m: Representation) -> ModuleCoordinate:
    q = m.quiver
    require_acyclic(q)
    if m.is_zero:
        raise NotIndecomposable("zero representation")
    n = _canonical_n(q)
    defect = euler_pairing(_euler_for(q), delta(n), m.dims)
    if defect < 0:
        return _walk_to_end(m, Kind.PROJECTIVE)
    if defect > 0:
        return _walk_to_end(m, Kind.INJECTIVE)
    for color in (ZERO, ONE, INFINITY):
        mouths = _transported_mouths(q, color)
        for s, e in enumerate(mouths):
            if hom_dim(e, m):
                ell = _quasi_length(mouths, s, m.total_dim)
                if ell is None:
                    raise NotIndecomposable("dimension does not match a uniserial tube module")
                return ModuleCoordinate.regular(color, s, ell)
    color = recover_generic_color(m)
    base = transport_rep(mouth_family_rep(n, color), q)
    if not hom_dim(base, m):
        raise NotIndecomposable("recovered color does not embed its quasi-simple")
    return ModuleCoordinate.regular(color, 0, m.total_dim // sum(delta(n)))
