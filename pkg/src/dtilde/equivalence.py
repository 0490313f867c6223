"""The correspondence between colored curves and indecomposable modules.

Preprojective and preinjective modules are reached through the rotation
orbits of the triangulation.  Regular modules live on explicit curve
families: windings of gamma0 for the rank-2 and generic tubes, and arcs
parallel to the boundary for the tube at infinity.  Which curve of a
family sits at which socle is calibrated once per triangulation by
matching the dimension vectors of mouth curves with the quasi-simples.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from functools import lru_cache

from .errors import BadCoordinate, IsProjective, NotAdmissible
from .quiver_core import Quiver
from .rep_core import (
    INFINITY,
    ONE,
    ZERO,
    Component,
    ModuleCoordinate,
    Representation,
    TubeColor,
    _transported_mouths,
    build_module,
    ext1_dim,
    tube_rank,
    zero_rep,
)
from .surface_core import (
    Curve,
    Path,
    Triangulation,
    Turn,
    canonical_triangulation,
    dimension_vector,
    intersection_number,
    punctured_intersections,
    quiver_of_triangulation,
    rank_two_equal_color,
    reference,
    require_admissible,
    rho,
    rho_power,
    shift_end,
    winding_curve,
)

ORBIT_LIMIT = 64


class MeshSide(enum.Enum):
    GEOMETRIC = "Geometric"
    ALGEBRAIC = "Algebraic"


@dataclass(frozen=True)
class CorrespondencePair:
    curve: Curve
    coordinate: ModuleCoordinate | None  # None for edges of the triangulation
    dim_vector: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "coordinate": None if self.coordinate is None else self.coordinate.to_json(),
            "dim_vector": list(self.dim_vector),
        }


@dataclass(frozen=True)
class Mesh:
    left: object
    middles: tuple
    right: object

    def to_json(self) -> dict:
        enc = lambda x: x.to_json()
        return {"left": enc(self.left), "middles": [enc(m) for m in self.middles], "right": enc(self.right)}


# -- tube curve families -------------------------------------------------------------------


def boundary_arc(n: int, i: int, quasi_length: int) -> Path:
    """Arc from mark i that cuts off the next quasi_length marks from both punctures."""
    r = reference(n)
    t = r.fans[i % r.m][0][0]
    p = Path(n, i % r.m, r.succ(i), (), t)
    for _ in range(quasi_length):
        p = shift_end(p, 1)
    return p


@dataclass(frozen=True)
class TubeCalibration:
    color: TubeColor
    rank: int
    offset: int  # socle s sits at start tag (s + offset) % 2, or boundary index (offset - s - l) % m


def _mouth_dims(q: Quiver, color: TubeColor) -> list[tuple[int, ...]]:
    return [m.dims for m in _transported_mouths(q, color)]


@lru_cache(maxsize=None)
def calibrate(t: Triangulation, color: TubeColor) -> TubeCalibration:
    """Match mouth curves with quasi-simple modules through dimension vectors."""
    if color.is_neg_inf:
        raise BadCoordinate("-inf has no tube")
    q = quiver_of_triangulation(t)
    n = t.n
    rank = tube_rank(n, color)
    mouths = _mouth_dims(q, color)
    if color in (ZERO, ONE):
        equal = color == rank_two_equal_color()
        for offset in (0, 1):
            dims = []
            for s in range(2):
                k0 = (s + offset) % 2
                c = Curve(winding_curve(n, 0), (k0, k0 if equal else 1 - k0), color)
                dims.append(dimension_vector(c, t))
            if dims == mouths:
                return TubeCalibration(color, rank, offset)
        raise BadCoordinate(f"no tag pattern of color {color} matches its mouth modules")
    if color == INFINITY:
        m = reference(n).m
        index = {}
        for i in range(m):
            d = dimension_vector(Curve(boundary_arc(n, i, 1), color=color), t)
            if d not in mouths:
                raise BadCoordinate("boundary arc does not match a mouth of the tube at infinity")
            index[i] = mouths.index(d)
        offsets = {(index[i] + i + 1) % m for i in range(m)}
        if len(offsets) != 1:
            raise BadCoordinate("boundary arcs do not rotate with the tube at infinity")
        return TubeCalibration(color, rank, offsets.pop())
    c = Curve(winding_curve(n, 1), (0, 1), color)
    if [dimension_vector(c, t)] != mouths:
        raise BadCoordinate(f"the generic loop does not match the mouth of color {color}")
    return TubeCalibration(color, rank, 0)


def tube_curve(t: Triangulation, color: TubeColor, socle: int, quasi_length: int) -> Curve:
    if quasi_length < 1:
        raise BadCoordinate("quasi-length must be positive")
    cal = calibrate(t, color)
    n = t.n
    socle %= cal.rank
    if color in (ZERO, ONE):
        k0 = (socle + cal.offset) % 2
        equal = color == rank_two_equal_color() and (quasi_length - 1) % 2 == 0
        return Curve(winding_curve(n, quasi_length - 1), (k0, k0 if equal else 1 - k0), color)
    if color == INFINITY:
        m = reference(n).m
        return Curve(boundary_arc(n, (cal.offset - socle - quasi_length) % m, quasi_length), color=color)
    if socle:
        raise BadCoordinate("generic tubes have rank 1")
    return Curve(winding_curve(n, 2 * quasi_length - 1), (0, 1), color)


# -- the correspondence ------------------------------------------------------------------------


def _tube_dims(q: Quiver, color: TubeColor, socle: int, ql: int) -> tuple[int, ...]:
    mouths = _mouth_dims(q, color)
    r = len(mouths)
    return tuple(sum(mouths[(socle + k) % r][i] for k in range(ql)) for i in range(len(mouths[0])))


def _orbit_coordinate(c: Curve, t: Triangulation) -> ModuleCoordinate | None:
    if t.index_of(c) is not None:
        return None
    fwd, back = c, c
    for k in range(1, ORBIT_LIMIT + 1):
        fwd, back = rho(fwd), rho(back, Turn.INVERSE)
        j = t.index_of(fwd)
        if j is not None:
            return ModuleCoordinate.preprojective(j, k - 1)
        j = t.index_of(back)
        if j is not None:
            return ModuleCoordinate.preinjective(j, k - 1)
    raise NotAdmissible("-inf curve outside the rotation orbits of the triangulation")


def _tube_coordinate(c: Curve, t: Triangulation, dims) -> ModuleCoordinate:
    q = quiver_of_triangulation(t)
    color = c.color
    rank = tube_rank(t.n, color)
    total = sum(dims)
    for ql in range(1, total + 1):
        for s in range(rank):
            if _tube_dims(q, color, s, ql) != dims:
                continue
            if tube_curve(t, color, s, ql).same(c):
                return ModuleCoordinate.regular(color, s, ql)
    raise NotAdmissible(f"curve of color {color} is not in its tube family")


def curve_to_module(c: Curve, t: Triangulation) -> CorrespondencePair:
    require_admissible(c)
    dims = dimension_vector(c, t)
    if c.color.is_neg_inf:
        coord = _orbit_coordinate(c, t)
    else:
        coord = _tube_coordinate(c, t, dims)
    return CorrespondencePair(c, coord, dims)


def module_to_curve(m: ModuleCoordinate, t: Triangulation) -> CorrespondencePair:
    if m.component is Component.REGULAR:
        c = tube_curve(t, m.color, m.socle, m.quasi_length)
    else:
        if not 1 <= m.vertex <= t.n + 1 or m.k < 0:
            raise BadCoordinate("vertex or shift out of range")
        step = -(m.k + 1) if m.component is Component.PREPROJECTIVE else m.k + 1
        c = rho_power(t.edge(m.vertex), step)
    return CorrespondencePair(c, m, dimension_vector(c, t))


@lru_cache(maxsize=None)
def module_of(t: Triangulation, coord: ModuleCoordinate | None) -> Representation:
    q = quiver_of_triangulation(t)
    if coord is None:
        return zero_rep(q)
    return build_module(q, coord)


def tau_coordinate(m: ModuleCoordinate, n: int) -> ModuleCoordinate | None:
    """Coordinate of tau M; None when M is projective."""
    if m.component is Component.PREPROJECTIVE:
        return None if m.k == 0 else ModuleCoordinate.preprojective(m.vertex, m.k - 1)
    if m.component is Component.PREINJECTIVE:
        return ModuleCoordinate.preinjective(m.vertex, m.k + 1)
    r = tube_rank(n, m.color)
    return ModuleCoordinate.regular(m.color, (m.socle - 1) % r, m.quasi_length)


# -- meshes ------------------------------------------------------------------------------------


def _algebraic_middles(q: Quiver, m: ModuleCoordinate, n: int) -> list[ModuleCoordinate]:
    if m.component is Component.REGULAR:
        r = tube_rank(n, m.color)
        out = [ModuleCoordinate.regular(m.color, (m.socle - 1) % r, m.quasi_length + 1)]
        if m.quasi_length > 1:
            out.append(ModuleCoordinate.regular(m.color, m.socle, m.quasi_length - 1))
        return out
    j, k = m.vertex, m.k
    if m.component is Component.PREPROJECTIVE:
        out = [ModuleCoordinate.preprojective(i, k) for s, i in q.arrows if s == j]
        out += [ModuleCoordinate.preprojective(i, k - 1) for i, s in q.arrows if s == j]
        return out
    out = [ModuleCoordinate.preinjective(a, k) for s, a in q.arrows if s == j]
    out += [ModuleCoordinate.preinjective(i, k + 1) for i, s in q.arrows if s == j]
    return out


def expand_mesh(x, side: MeshSide, t: Triangulation) -> Mesh:
    """Mesh ending at x: translate on the left, elementary moves or AR neighbours in the middle."""
    from .surface_core import elementary_moves, is_projective_edge

    if side is MeshSide.GEOMETRIC:
        if is_projective_edge(x, t):
            raise IsProjective("projective edges end no mesh")
        middles = tuple(mv.target for mv in elementary_moves(x, t))
        return Mesh(rho(x), middles, x)
    q = quiver_of_triangulation(t)
    left = tau_coordinate(x, t.n)
    if left is None:
        raise IsProjective("projective modules end no mesh")
    return Mesh(left, tuple(_algebraic_middles(q, x, t.n)), x)


# -- verification harness --------------------------------------------------------------------


def corpus(t: Triangulation, depth: int, quasi_max: int, colors) -> list[Curve]:
    out = []
    for k in range(1, depth + 1):
        out += [rho_power(e, -k) for e in t.edges]
        out += [rho_power(e, k) for e in t.edges]
    for color in colors:
        color = TubeColor.parse(color)
        for s in range(tube_rank(t.n, color)):
            for ql in range(1, quasi_max + 1):
                out.append(tube_curve(t, color, s, ql))
    return out


def rotation_route(a: Curve, b: Curve, t: Triangulation) -> int | None:
    """Int via rotating a -inf argument into the triangulation and counting crossings of one edge."""
    for x, y in ((a, b), (b, a)):
        if not x.color.is_neg_inf:
            continue
        fwd, back = x, x
        for k in range(0, ORBIT_LIMIT + 1):
            for step, cur in ((k, fwd), (-k, back)):
                j = t.index_of(cur)
                if j is None:
                    continue
                e = t.edge(j)
                label = e.path.empty_side()
                if label is None or label < 0:
                    return None
                yk = rho_power(y, step)
                hits = sum(1 for f, _ in yk.path.crossings if f == label)
                return hits + punctured_intersections(e, yk)
            fwd, back = rho(fwd), rho(back, Turn.INVERSE)
    return None


@dataclass
class Report:
    params: dict
    pairs_checked: int
    failures: list
    elapsed_ms: int

    def to_json(self) -> dict:
        return {
            "params": self.params,
            "pairs_checked": self.pairs_checked,
            "failures": self.failures,
            "elapsed_ms": self.elapsed_ms,
        }

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_intersection_dimension(n: int, depth: int, quasi_max: int, colors) -> Report:
    """Check Int = ext(Ma, Mb) + ext(Mb, Ma) on every unordered pair of the corpus.

    The geometric side is computed twice: by the normal-position counter and by
    the rotation route (or, for two regular curves, by rotating both once).
    """
    began = time.perf_counter()
    colors = [TubeColor.parse(c) for c in colors]
    t, _ = canonical_triangulation(n)
    curves = corpus(t, depth, quasi_max, colors)
    pairs = [curve_to_module(c, t) for c in curves]
    failures = []
    checked = 0
    for i, pa in enumerate(pairs):
        ma = module_of(t, pa.coordinate)
        if ma.dims != pa.dim_vector:
            failures.append({"a": pa.curve.to_json(), "b": pa.curve.to_json(), "reason": "dimension vector", "int": None, "ext_sum": None})
        for pb in pairs[i:]:
            mb = module_of(t, pb.coordinate)
            checked += 1
            a, b = pa.curve, pb.curve
            value = intersection_number(a, b)
            second = rotation_route(a, b, t)
            if second is None:
                second = intersection_number(rho(a), rho(b))
            ext_sum = ext1_dim(ma, mb) + ext1_dim(mb, ma)
            if not value == second == ext_sum:
                failures.append({"a": a.to_json(), "b": b.to_json(), "int": value, "int_second_route": second, "ext_sum": ext_sum})
    elapsed = int((time.perf_counter() - began) * 1000)
    params = {"n": n, "depth": depth, "quasi_max": quasi_max, "colors": [str(c) for c in colors]}
    return Report(params, checked, failures, elapsed)
