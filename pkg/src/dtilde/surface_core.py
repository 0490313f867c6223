"""Curves on the twice-punctured disk as reduced crossing words.

Every homotopy class is encoded against one fixed ideal triangulation R of
the disk with n-2 boundary marks and two punctures.  R contains the arcs of
the standard tagged triangulation, so a tagged arc of that triangulation is
an R-edge plus tags.  A curve is a sequence of signed R-edge crossings; the
reduced form (no backtracks, no crossings of edges at the curve's own
endpoints) is unique per homotopy class rel endpoints, because the disk
minus its marked points retracts onto the dual graph of R.

Vertex numbering: boundary marks are 0 .. m-1 counterclockwise (m = n-2,
mark 0 at the top), puncture P1 is m and P2 is m+1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import (
    ForbiddenRight,
    InconsistentWord,
    InvalidTriangulation,
    IsProjectiveEdge,
    MixedTriangulation,
    NotAdmissible,
    NotFlippable,
    NotPunctureToPuncture,
    TooSmall,
)
from .quiver_core import Quiver
from .rep_core import INFINITY, NEG_INF, ONE, ZERO, TubeColor


class Side(enum.Enum):
    START = "Start"
    END = "End"


class Hand(enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"


class Turn(enum.Enum):
    FORWARD = "Forward"
    INVERSE = "Inverse"


# -- the reference triangulation ------------------------------------------------------


@dataclass(frozen=True)
class Triangle:
    corners: tuple[int, int, int]  # counterclockwise
    sides: tuple[int, int, int]  # side i runs corners[i] -> corners[i+1]; >0 edge label, <0 boundary


def _boundary_id(k: int, m: int) -> int:
    return -((k % m) + 1)


class Reference:
    """The ideal triangulation R used to encode curves.

    Edges: 1 = P1-b0, 2 = P1-b1, k+2 = b0-b_k (k = 1..m-1), n = P2-b0,
    n+1 = P2-b_{m-1}.  Edge k+2 for k = 1..m-1 and edges 1, n are the
    arcs of the standard tagged triangulation.
    """

    def __init__(self, n: int):
        if n < 5:
            raise TooSmall("the twice-punctured disk needs n >= 5", n=n)
        m = n - 2
        self.n, self.m = n, m
        self.p1, self.p2 = m, m + 1
        b = lambda k: _boundary_id(k, m)
        tris = [
            Triangle((0, 1, self.p1), (b(0), 2, 1)),
            Triangle((0, self.p1, 1), (1, 2, 3)),
        ]
        for k in range(1, m - 1):
            tris.append(Triangle((0, k, k + 1), (k + 2, b(k), k + 3)))
        tris.append(Triangle((m - 1, 0, self.p2), (b(m - 1), n, n + 1)))
        tris.append(Triangle((self.p2, 0, m - 1), (n, m + 1, n + 1)))
        self.triangles = tuple(tris)
        ends = {1: (self.p1, 0), 2: (self.p1, 1), n: (self.p2, 0), n + 1: (self.p2, m - 1)}
        for k in range(1, m):
            ends[k + 2] = (0, k)
        self.edge_ends = ends
        self.left, self.right = {}, {}
        for t, tri in enumerate(tris):
            for i in range(3):
                e = tri.sides[i]
                if e < 0:
                    continue
                pair = (tri.corners[i], tri.corners[(i + 1) % 3])
                if pair == ends[e]:
                    self.left[e] = t
                elif pair == ends[e][::-1]:
                    self.right[e] = t
                else:
                    raise AssertionError("reference triangulation is inconsistent")
        assert set(self.left) == set(self.right) == set(ends)
        self.fans = {v: self._fan(v) for v in range(m + 2)}
        self.fan_index = {v: {t: k for k, (t, _) in enumerate(f)} for v, f in self.fans.items()}

    # basic queries
    def is_mark(self, v: int) -> bool:
        return 0 <= v < self.m

    def is_puncture(self, v: int) -> bool:
        return v in (self.p1, self.p2)

    def succ(self, v: int) -> int:
        return (v + 1) % self.m

    def pred(self, v: int) -> int:
        return (v - 1) % self.m

    def corner(self, t: int, v: int) -> int:
        return self.triangles[t].corners.index(v)

    def side_index(self, t: int, e: int) -> int:
        return self.triangles[t].sides.index(e)

    def cross(self, t: int, side: int) -> tuple[tuple[int, int], int]:
        e = self.triangles[t].sides[side]
        if e < 0:
            raise InconsistentWord("cannot cross the boundary")
        if self.left[e] == t:
            return (e, 1), self.right[e]
        return (e, -1), self.left[e]

    def source(self, c: tuple[int, int]) -> int:
        e, s = c
        return self.left[e] if s > 0 else self.right[e]

    def target(self, c: tuple[int, int]) -> int:
        e, s = c
        return self.right[e] if s > 0 else self.left[e]

    def incident(self, e: int, v: int) -> bool:
        return v in self.edge_ends[e]

    def _fan(self, v: int) -> list[tuple[int, int]]:
        """Triangles around v in counterclockwise order with the corner index of v."""
        start = None
        for t, tri in enumerate(self.triangles):
            if v in tri.corners:
                ci = tri.corners.index(v)
                if not self.is_mark(v) or tri.sides[ci] < 0:
                    start = (t, ci)
                    break
        fan = [start]
        while True:
            t, ci = fan[-1]
            nxt = self.triangles[t].sides[(ci + 2) % 3]
            if nxt < 0:
                break
            _, t2 = self.cross(t, (ci + 2) % 3)
            if (t2, self.corner(t2, v)) == fan[0]:
                break
            fan.append((t2, self.corner(t2, v)))
        return fan

    def degree(self, v: int) -> int:
        return len(self.fans[v])


@lru_cache(maxsize=None)
def reference(n: int) -> Reference:
    return Reference(n)


# -- paths -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Path:
    """Reduced curve in R: endpoints, signed crossings, and the base triangle of an empty word."""

    n: int
    start: int
    end: int
    crossings: tuple[tuple[int, int], ...]
    base: int | None = None

    @property
    def ref(self) -> Reference:
        return reference(self.n)

    def triangles(self) -> list[int]:
        if not self.crossings:
            return [self.base]
        r = self.ref
        out = [r.source(self.crossings[0])]
        for c in self.crossings:
            out.append(r.target(c))
        return out

    def reversed(self) -> "Path":
        return Path(self.n, self.end, self.start, tuple((e, -s) for e, s in reversed(self.crossings)), self.base)

    @property
    def is_null(self) -> bool:
        return not self.crossings and self.start == self.end

    def empty_side(self) -> int | None:
        """For an empty word, the side of R the curve is homotopic to."""
        if self.crossings or self.start == self.end:
            return None
        tri = self.ref.triangles[self.base]
        for i in range(3):
            if {tri.corners[i], tri.corners[(i + 1) % 3]} == {self.start, self.end}:
                return tri.sides[i]
        raise AssertionError("empty word without a common side")

    @property
    def is_boundary(self) -> bool:
        side = self.empty_side()
        return side is not None and side < 0

    def word(self) -> list[int]:
        return [e * s for e, s in self.crossings]

    def __len__(self) -> int:
        return len(self.crossings)


def _normalize(n: int, start: int, tris: list[int], crossings: list[tuple[int, int]], end: int) -> Path:
    """Reduce a raw walk: cancel backtracks, then strip crossings of edges at the endpoints."""
    r = reference(n)
    out_t, out_c = [tris[0]], []
    for c, t in zip(crossings, tris[1:]):
        if out_c and out_c[-1] == (c[0], -c[1]):
            out_c.pop()
            out_t.pop()
        else:
            out_c.append(c)
            out_t.append(t)
    lo, hi = 0, len(out_c)
    changed = True
    while changed:
        changed = False
        if lo < hi and r.incident(out_c[lo][0], start):
            lo += 1
            changed = True
        if lo < hi and r.incident(out_c[hi - 1][0], end):
            hi -= 1
            changed = True
    cr = tuple(out_c[lo:hi])
    if cr:
        return Path(n, start, end, cr, None)
    t = out_t[lo]
    tri = r.triangles[t]
    if start not in tri.corners or end not in tri.corners:
        raise InconsistentWord("endpoints are not corners of the final triangle")
    if start == end:
        return Path(n, start, end, (), -1)
    for i in range(3):
        if {tri.corners[i], tri.corners[(i + 1) % 3]} == {start, end}:
            e = tri.sides[i]
            return Path(n, start, end, (), r.left[e] if e > 0 else t)
    raise AssertionError("unreachable")


def path_from_word(n: int, start: int, end: int, word) -> Path:
    """Decode a signed word, checking local consistency, and reduce it."""
    r = reference(n)
    word = [int(w) for w in word]
    if any(w == 0 or abs(w) not in r.edge_ends for w in word):
        raise InconsistentWord("unknown edge in word", word=word)
    if not word:
        for e, ends in r.edge_ends.items():
            if set(ends) == {start, end}:
                return Path(n, start, end, (), r.left[e])
        raise InconsistentWord("empty word does not describe an edge", start=start, end=end)
    crossings = [(abs(w), 1 if w > 0 else -1) for w in word]
    tris = [r.source(crossings[0])]
    for c in crossings:
        if r.source(c) != tris[-1]:
            raise InconsistentWord("consecutive crossings do not share a triangle", word=word)
        tris.append(r.target(c))
    if start not in r.triangles[tris[0]].corners or end not in r.triangles[tris[-1]].corners:
        raise InconsistentWord("word does not start or end at the given endpoints", word=word)
    return _normalize(n, start, tris, crossings, end)


def edge_path(n: int, e: int) -> Path:
    r = reference(n)
    u, v = r.edge_ends[e]
    return Path(n, u, v, (), r.left[e])


def _walk(p: Path) -> tuple[list[int], list[tuple[int, int]]]:
    if p.crossings:
        return p.triangles(), list(p.crossings)
    return [p.base], []


def _rotate(r: Reference, t: int, v: int, steps: int):
    """Fan steps around v from triangle t; positive is counterclockwise."""
    tris, cr = [], []
    for _ in range(abs(steps)):
        ci = r.corner(t, v)
        side = (ci + 2) % 3 if steps > 0 else ci
        c, t = r.cross(t, side)
        tris.append(t)
        cr.append(c)
    return tris, cr


def _join(n, start, parts, end) -> Path:
    tris, cr = list(parts[0][0]), list(parts[0][1])
    for t2, c2 in parts[1:]:
        tris += t2
        cr += c2
    return _normalize(n, start, tris, cr, end)


def shift_end(p: Path, direction: int = 1) -> Path:
    """Slide the end mark one step counterclockwise (direction 1) or clockwise (-1)."""
    r = p.ref
    v = p.end
    if not r.is_mark(v):
        return p
    tris, cr = _walk(p)
    t = tris[-1]
    while True:
        ci = r.corner(t, v)
        side = ci if direction > 0 else (ci + 2) % 3
        if r.triangles[t].sides[side] < 0:
            break
        c, t = r.cross(t, side)
        tris.append(t)
        cr.append(c)
    ci = r.corner(t, v)
    new_end = r.triangles[t].corners[(ci + 1) % 3] if direction > 0 else r.triangles[t].corners[(ci + 2) % 3]
    return _normalize(p.n, p.start, tris, cr, new_end)


def shift_start(p: Path, direction: int = 1) -> Path:
    return shift_end(p.reversed(), direction).reversed()


def completion_path(p: Path) -> Path:
    """Loop at the mark end of a puncture-to-mark path, counterclockwise around the puncture."""
    r = p.ref
    if not (r.is_puncture(p.start) and r.is_mark(p.end)):
        return p
    tris, cr = _walk(p)
    rev_t = list(reversed(tris))
    rev_c = [(e, -s) for e, s in reversed(cr)]
    loop_t, loop_c = _rotate(r, tris[0], p.start, r.degree(p.start))
    return _join(p.n, p.end, [(rev_t, rev_c), (loop_t, loop_c), (tris[1:], cr)], p.end)


def gamma0_path(n: int) -> Path:
    """The straight segment from P1 to P2 across the central chain."""
    r = reference(n)
    word = [-(k + 2) for k in range(1, r.m)]
    return path_from_word(n, r.p1, r.p2, word)


def _poliwhirl_candidates(p: Path) -> list[tuple[int, Path]]:
    r = p.ref
    b = p.end
    g0 = gamma0_path(p.n)
    g = g0 if b == r.p1 else g0.reversed()
    tris, cr = _walk(p)
    gt, gc = _walk(g)
    d = r.degree(b)
    k0 = (r.fan_index[b][gt[0]] - r.fan_index[b][tris[-1]]) % d
    out = []
    for w in range(-2, 3):
        k = k0 + d * w
        rt, rc = _rotate(r, tris[-1], b, k)
        out.append((k, _join(p.n, p.start, [(tris, cr), (rt, rc), (gt[1:], gc)], g.end)))
    return out


def poliwhirl_path(p: Path, hand: Hand) -> Path:
    """gamma theta (Right) lands along gamma0; theta gamma (Left) adds one clockwise turn first."""
    r = p.ref
    if not (r.is_puncture(p.start) and r.is_puncture(p.end)):
        raise NotPunctureToPuncture("poliwhirl needs both ends at punctures")
    cands = _poliwhirl_candidates(p)
    best_k, _ = min(cands, key=lambda kp: (len(kp[1]), -kp[0]))
    k = best_k if hand is Hand.RIGHT else best_k - r.degree(p.end)
    return dict(cands)[k] if k in dict(cands) else _poliwhirl_at(p, k)


def _poliwhirl_at(p: Path, k: int) -> Path:
    r = p.ref
    g0 = gamma0_path(p.n)
    g = g0 if p.end == r.p1 else g0.reversed()
    tris, cr = _walk(p)
    gt, gc = _walk(g)
    rt, rc = _rotate(r, tris[-1], p.end, k)
    return _join(p.n, p.start, [(tris, cr), (rt, rc), (gt[1:], gc)], g.end)


def untagged_equal(a: Path, b: Path) -> bool:
    return a == b or a == b.reversed()


# -- normal crossings -------------------------------------------------------------------


def _position(r: Reference, p: Path, tris, k: int, at_start: bool, crossing=None):
    """('c', corner) when the curve ends in this triangle, else ('s', side)."""
    if crossing is None:
        v = p.start if at_start else p.end
        return ("c", r.corner(tris[k], v))
    return ("s", r.side_index(tris[k], crossing[0]))


def _runs(r: Reference, pa: Path, pb: Path, skip_single: bool):
    ta, ca = _walk(pa)
    tb, cb = _walk(pb)
    where = {}
    for j, t in enumerate(tb):
        where.setdefault(t, []).append(j)
    for i, t in enumerate(ta):
        for j in where.get(t, ()):
            if i > 0 and j > 0 and ca[i - 1] == cb[j - 1]:
                continue
            length = 0
            while i + length < len(ta) - 1 and j + length < len(tb) - 1 and ca[i + length] == cb[j + length]:
                length += 1
            if skip_single and length == 0:
                continue
            yield i, j, length, ta, ca, tb, cb


def _strip_crosses(r: Reference, pa: Path, pb: Path, i, j, length, ta, ca, tb, cb) -> bool:
    corner_uid = {}
    uid = 0

    def new():
        nonlocal uid
        uid += 1
        return ("c", uid)

    for c in range(3):
        corner_uid[(0, c)] = new()
    cyc = []
    for c in range(3):
        cyc += [corner_uid[(0, c)], ("s", 0, c)]
    for k in range(1, length + 1):
        tp, t = ta[i + k - 1], ta[i + k]
        e = ca[i + k - 1][0]
        s = r.side_index(tp, e)
        s2 = r.side_index(t, e)
        corner_uid[(k, s2)] = corner_uid[(k - 1, (s + 1) % 3)]
        corner_uid[(k, (s2 + 1) % 3)] = corner_uid[(k - 1, s)]
        corner_uid[(k, (s2 + 2) % 3)] = new()
        at = cyc.index(("s", k - 1, s))
        cyc[at : at + 1] = [("s", k, (s2 + 1) % 3), corner_uid[(k, (s2 + 2) % 3)], ("s", k, (s2 + 2) % 3)]

    def locate(k, pos):
        kind, idx = pos
        return cyc.index(corner_uid[(k, idx)] if kind == "c" else ("s", k, idx))

    a0 = locate(0, _position(r, pa, ta, i, True, ca[i - 1] if i > 0 else None))
    a1 = locate(length, _position(r, pa, ta, i + length, False, ca[i + length] if i + length < len(ta) - 1 else None))
    b0 = locate(0, _position(r, pb, tb, j, True, cb[j - 1] if j > 0 else None))
    b1 = locate(length, _position(r, pb, tb, j + length, False, cb[j + length] if j + length < len(tb) - 1 else None))
    if len({a0, a1, b0, b1}) < 4:
        return False
    size = len(cyc)

    def inside(x):
        return 0 < (x - a0) % size < (a1 - a0) % size

    return inside(b0) != inside(b1)


def normal_crossings(pa: Path, pb: Path) -> int:
    """Minimal number of transverse crossings in the interior, counted over pairs of lifts."""
    if pa.n != pb.n:
        raise MixedTriangulation("curves live on different surfaces")
    if pa.is_null or pb.is_null:
        return 0
    r = pa.ref
    total = 0
    for skip, qb in ((False, pb), (True, pb.reversed())):
        for run in _runs(r, pa, qb, skip):
            if _strip_crosses(r, pa, qb, *run):
                total += 1
    return total


# -- tagged colored curves --------------------------------------------------------------------


@dataclass(frozen=True)
class Curve:
    path: Path
    tags: tuple[int | None, int | None] = (None, None)
    color: TubeColor = field(default=NEG_INF)

    def __post_init__(self):
        r = self.path.ref
        p, tags = self.path, tuple(self.tags)
        if r.is_mark(p.start) and r.is_puncture(p.end):
            p, tags = p.reversed(), tags[::-1]
        elif p.start == r.p2 and p.end == r.p1:
            p, tags = p.reversed(), tags[::-1]
        fixed = []
        for v, k in zip((p.start, p.end), tags):
            if r.is_puncture(v):
                fixed.append(0 if k is None else int(k))
            else:
                fixed.append(None)
        object.__setattr__(self, "path", p)
        object.__setattr__(self, "tags", tuple(fixed))
        object.__setattr__(self, "color", TubeColor.parse(self.color))

    @property
    def n(self) -> int:
        return self.path.n

    @property
    def start(self) -> int:
        return self.path.start

    @property
    def end(self) -> int:
        return self.path.end

    def with_tags(self, tags) -> "Curve":
        return Curve(self.path, tuple(tags), self.color)

    def with_color(self, color) -> "Curve":
        return Curve(self.path, self.tags, color)

    def reversed(self) -> "Curve":
        c = Curve.__new__(Curve)
        object.__setattr__(c, "path", self.path.reversed())
        object.__setattr__(c, "tags", self.tags[::-1])
        object.__setattr__(c, "color", self.color)
        return c

    def key(self):
        """Orientation-independent identity of the tagged colored curve."""
        a = (self.path, self.tags)
        b = (self.path.reversed(), self.tags[::-1])
        return (min(a, b, key=repr), self.color)

    def same(self, other: "Curve") -> bool:
        return self.key() == other.key()

    def to_json(self) -> dict:
        r = self.path.ref
        tags = {}
        if self.tags[0] is not None:
            tags["start"] = self.tags[0]
        if self.tags[1] is not None:
            tags["end"] = self.tags[1]
        return {
            "n": self.n,
            "start": endpoint_json(r, self.start),
            "end": endpoint_json(r, self.end),
            "word": self.path.word(),
            "tags": tags,
            "color": str(self.color),
        }

    @classmethod
    def from_json(cls, data: dict, n: int | None = None) -> "Curve":
        n = int(data.get("n", n))
        r = reference(n)
        start, end = endpoint_from_json(r, data["start"]), endpoint_from_json(r, data["end"])
        p = path_from_word(n, start, end, data.get("word", []))
        tags = data.get("tags", {}) or {}
        return cls(p, (tags.get("start"), tags.get("end")), TubeColor.parse(data.get("color", "-inf")))


def endpoint_json(r: Reference, v: int) -> dict:
    if r.is_mark(v):
        return {"mark": v}
    return {"puncture": "P1" if v == r.p1 else "P2"}


def endpoint_from_json(r: Reference, data) -> int:
    if "mark" in data:
        v = int(data["mark"])
        if not r.is_mark(v):
            raise InconsistentWord(f"mark {v} outside 0..{r.m - 1}")
        return v
    name = str(data["puncture"]).upper()
    if name in ("P1", "1"):
        return r.p1
    if name in ("P2", "2"):
        return r.p2
    raise InconsistentWord(f"unknown puncture {data['puncture']!r}")


def reduce_word(c: Curve) -> Curve:
    p = c.path
    tris, cr = _walk(p)
    return Curve(_normalize(p.n, p.start, tris, cr, p.end), c.tags, c.color)


# -- admissibility ------------------------------------------------------------------------


def cuts_monogon(p: Path) -> bool:
    """A loop at a mark bounds a once-punctured monogon iff it is the completion of a radius."""
    r = p.ref
    return p.start == p.end and r.is_mark(p.start) and bool(p.crossings) and bool(_eta_for_loop(p))


def admissibility_problem(c: Curve) -> str | None:
    p = c.path
    r = p.ref
    if p.is_null:
        return "null-homotopic"
    if p.is_boundary:
        return "homotopic to a boundary segment"
    if (r.is_mark(p.start) or r.is_mark(p.end)) and cuts_monogon(p):
        return "cuts out a once-punctured monogon"
    return None


def is_admissible(c: Curve) -> bool:
    return admissibility_problem(c) is None


def require_admissible(c: Curve) -> Curve:
    why = admissibility_problem(c)
    if why:
        raise NotAdmissible(f"curve is not admissible: {why}", curve=str(c.to_json()))
    return c


# -- operators on curves -----------------------------------------------------------------------


def shift(c: Curve, side: Side, direction: int = 1) -> Curve:
    """[1] on one end: counterclockwise to the next mark; identity at a puncture end."""
    r = c.path.ref
    if side is Side.START:
        if not r.is_mark(c.start):
            return c
        return Curve(shift_start(c.path, direction), c.tags, c.color)
    if not r.is_mark(c.end):
        return c
    return Curve(shift_end(c.path, direction), c.tags, c.color)


def completion(c: Curve) -> Curve:
    r = c.path.ref
    if not (r.is_puncture(c.start) and r.is_mark(c.end)):
        return c
    return Curve(completion_path(c.path), (None, None), c.color)


def gamma0(n: int, tags=(0, 0), color=NEG_INF) -> Curve:
    return Curve(gamma0_path(n), tags, color)


def poliwhirl(c: Curve, hand: Hand) -> Curve:
    if hand is Hand.RIGHT and untagged_equal(c.path, gamma0_path(c.n)):
        raise ForbiddenRight("the right poliwhirl is undefined on the gamma0 class")
    return Curve(poliwhirl_path(c.path, hand), c.tags, c.color)


def flips_tags(color: TubeColor) -> bool:
    return color.is_neg_inf or color in (ZERO, ONE, INFINITY)


def rho(c: Curve, turn: Turn = Turn.FORWARD) -> Curve:
    r = c.path.ref
    step = 1 if turn is Turn.FORWARD else -1
    p = c.path
    if r.is_mark(p.start) and r.is_mark(p.end):
        p = shift_start(shift_end(p, step), step)
    elif r.is_mark(p.end):
        p = shift_end(p, step)
    tags = c.tags
    if flips_tags(c.color):
        tags = tuple(None if k is None else 1 - k for k in tags)
    return Curve(p, tags, c.color)


def rho_power(c: Curve, k: int) -> Curve:
    turn = Turn.FORWARD if k >= 0 else Turn.INVERSE
    for _ in range(abs(k)):
        c = rho(c, turn)
    return c


# -- intersections ------------------------------------------------------------------------------


def punctured_intersections(a: Curve, b: Curve) -> int:
    r = a.path.ref
    hom = untagged_equal(a.path, b.path)
    if hom and a.path != b.path:
        b = b.reversed()
    va, vb = (a.start, a.end), (b.start, b.end)
    count = 0
    for t1 in (0, 1):
        if not r.is_puncture(va[t1]):
            continue
        for t2 in (0, 1):
            if va[t1] != vb[t2] or a.tags[t1] == b.tags[t2]:
                continue
            if hom:
                o1, o2 = 1 - t1, 1 - t2
                if not (r.is_puncture(va[o1]) and va[o1] == vb[o2] and a.tags[o1] != b.tags[o2]):
                    continue
            count += 1
    return count


def intersection_number(a: Curve, b: Curve) -> int:
    if a.n != b.n:
        raise MixedTriangulation("curves live on different surfaces")
    if not a.color.is_neg_inf and not b.color.is_neg_inf and a.color != b.color:
        return 0
    return normal_crossings(a.path, b.path) + punctured_intersections(a, b)


def crosses_gamma0(c: Curve) -> bool:
    return normal_crossings(c.path, gamma0_path(c.n)) > 0


# -- triangulations -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Triangulation:
    n: int
    edges: tuple[Curve, ...]  # edge i of the quiver is edges[i-1]

    def __post_init__(self):
        if len(self.edges) != self.n + 1:
            raise InvalidTriangulation(f"expected {self.n + 1} edges, got {len(self.edges)}")

    def edge(self, i: int) -> Curve:
        return self.edges[i - 1]

    def index_of(self, c: Curve) -> int | None:
        for i, e in enumerate(self.edges, 1):
            if e.same(c):
                return i
        return None

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [e.to_json() for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        n = int(data["n"])
        return cls(n, tuple(Curve.from_json(e, n) for e in data["edges"]))


def validate_triangulation(t: Triangulation) -> Triangulation:
    for i, e in enumerate(t.edges, 1):
        if not e.color.is_neg_inf:
            raise InvalidTriangulation(f"edge {i} is not colored -inf")
        why = admissibility_problem(e)
        if why:
            raise InvalidTriangulation(f"edge {i} is not admissible: {why}")
        if intersection_number(e, e):
            raise InvalidTriangulation(f"edge {i} intersects itself")
        if e.start == e.end and _eta_for_loop(e.path):
            raise InvalidTriangulation(f"edge {i} bounds a once-punctured monogon")
    for i, a in enumerate(t.edges, 1):
        for j, b in enumerate(t.edges[i:], i + 1):
            if a.same(b):
                raise InvalidTriangulation(f"edges {i} and {j} coincide")
            if intersection_number(a, b):
                raise InvalidTriangulation(f"edges {i} and {j} cross")
    return t


def canonical_triangulation(n: int) -> tuple[Triangulation, Quiver]:
    """Fan triangulation from mark 0: tagged pairs at both punctures, chain arcs in between."""
    r = reference(n)
    e1, en = edge_path(n, 1), edge_path(n, n)
    edges = [Curve(e1, (1, None)), Curve(e1, (0, None))]
    edges += [Curve(edge_path(n, k)) for k in range(3, n)]
    edges += [Curve(en, (0, None)), Curve(en, (1, None))]
    t = Triangulation(n, tuple(edges))
    assert r.m == n - 2
    return t, quiver_of_triangulation(t)


def _plain_at(c: Curve, v: int) -> Curve:
    tags = tuple(0 if (x == v and k is not None) else k for x, k in zip((c.start, c.end), c.tags))
    return c.with_tags(tags)


def _swap_tags_at(c: Curve, v: int) -> Curve:
    tags = tuple(1 - k if (x == v and k is not None) else k for x, k in zip((c.start, c.end), c.tags))
    return c.with_tags(tags)


def _ideal_form(t: Triangulation):
    """Paths for the angular count: notched pair members become their enclosing loops.

    Returns the list of paths and a map radius -> loop for the self-folded pairs.
    """
    r = reference(t.n)
    edges = list(t.edges)
    for v in (r.p1, r.p2):
        at = [i for i, e in enumerate(edges) if v in (e.start, e.end)]
        tags = [k for i in at for x, k in zip((edges[i].start, edges[i].end), edges[i].tags) if x == v]
        if tags and all(k == 1 for k in tags):
            for i in at:
                edges[i] = _plain_at(edges[i], v)
    paths = [e.path for e in edges]
    pairs = {}
    for v in (r.p1, r.p2):
        at = [i for i, e in enumerate(edges) if v in (e.start, e.end)]
        for i in at:
            for j in at:
                if i < j and untagged_equal(edges[i].path, edges[j].path):
                    ti = _tag_at(edges[i], v)
                    tj = _tag_at(edges[j], v)
                    if ti != tj:
                        notched, plain = (i, j) if ti == 1 else (j, i)
                        p = edges[notched].path
                        if p.start != v:
                            p = p.reversed()
                        paths[notched] = completion_at(p)
                        pairs[plain] = notched
    return paths, pairs


def _tag_at(c: Curve, v: int) -> int | None:
    for x, k in zip((c.start, c.end), c.tags):
        if x == v:
            return k
    return None


def completion_at(p: Path) -> Path:
    """Loop at p.end around the puncture p.start (any far endpoint)."""
    r = p.ref
    tris, cr = _walk(p)
    rev_t = list(reversed(tris))
    rev_c = [(e, -s) for e, s in reversed(cr)]
    loop_t, loop_c = _rotate(r, tris[0], p.start, r.degree(p.start))
    return _join(p.n, p.end, [(rev_t, rev_c), (loop_t, loop_c), (tris[1:], cr)], p.end)


def _end_key(p: Path, at_start: bool):
    """Fan position and left-right divergence code of one end of p around its vertex."""
    r = p.ref
    q = p if at_start else p.reversed()
    v = q.start
    if not q.crossings:
        e = q.empty_side()
        for k, (t, ci) in enumerate(r.fans[v]):
            if r.triangles[t].sides[ci] == e:
                return 2 * k, ()
        raise AssertionError("edge missing from fan")
    tris, cr = _walk(q)
    pos = 2 * r.fan_index[v][tris[0]] + 1
    codes = []
    for k in range(1, len(tris)):
        entry = r.side_index(tris[k], cr[k - 1][0])
        if k == len(tris) - 1:
            codes.append(1)
        else:
            out = r.side_index(tris[k], cr[k][0])
            codes.append(2 if out == (entry + 2) % 3 else 0)
    return pos, tuple(codes)


def _ordered_ends(paths):
    """For each vertex, the curve ends there in counterclockwise order."""
    r = paths[0].ref
    at = {v: [] for v in range(r.m + 2)}
    for i, p in enumerate(paths):
        for flag in (0, 1):
            v = p.start if flag == 0 else p.end
            at[v].append((_end_key(p, flag == 0), i, flag))
    return {v: [(i, flag, key) for key, i, flag in sorted(lst)] for v, lst in at.items()}


def _exchange_matrix(t: Triangulation):
    paths, pairs = _ideal_form(t)
    r = reference(t.n)
    size = len(paths)
    b = [[0] * size for _ in range(size)]
    skip = {frozenset((p, l)) for p, l in pairs.items()}
    for v, ends in _ordered_ends(paths).items():
        seq = [i for i, _, _ in ends]
        pairs_here = list(zip(seq, seq[1:]))
        if r.is_puncture(v) and len(seq) > 1:
            pairs_here.append((seq[-1], seq[0]))
        for i, j in pairs_here:
            if i == j or frozenset((i, j)) in skip:
                continue
            b[i][j] += 1
            b[j][i] -= 1
    for plain, loop in pairs.items():
        for x in range(size):
            if x not in (plain, loop):
                b[plain][x] = b[loop][x]
                b[x][plain] = b[x][loop]
        b[plain][loop] = b[loop][plain] = 0
    return b


def quiver_of_triangulation(t: Triangulation) -> Quiver:
    """Arrow i -> j for each direct counterclockwise neighbour j of i, 2-cycles cancelled."""
    b = _exchange_matrix(t)
    arrows = []
    for i in range(len(b)):
        for j in range(len(b)):
            arrows += [(i + 1, j + 1)] * max(b[i][j], 0)
    return Quiver(len(b), tuple(arrows))


def _boundary_pseudo(r: Reference, v: int, clockwise_side: bool) -> Path:
    """The boundary segment leaving v, as a path from v."""
    fan = r.fans[v]
    if clockwise_side:
        t, ci = fan[0]
        return Path(r.n, v, r.triangles[t].corners[(ci + 1) % 3], (), t)
    t, ci = fan[-1]
    return Path(r.n, v, r.triangles[t].corners[(ci + 2) % 3], (), t)


def _concat_through(r: Reference, b: Path, c: Path, v: int, pb: int, pc: int) -> Path:
    """Far end of b, counterclockwise around v, out along c (both leaving v).

    pb and pc are unwrapped fan positions: 2k for fan edge k, 2k+1 inside triangle k.
    """
    d = r.degree(v)
    kb = pb // 2
    kc = (pc - 1) // 2 if pc % 2 else pc // 2 - 1
    tb = r.fans[v][kb % d][0]
    bt, bc = _walk(b.reversed()) if b.crossings else ([tb], [])
    rt, rc = _rotate(r, tb, v, kc - kb)
    last = rt[-1] if rt else tb
    ct, cc = _walk(c) if c.crossings else ([last], [])
    assert bt[-1] == tb and ct[0] == last, "fan rotation missed a neighbouring curve"
    return _join(r.n, b.end, [(bt, bc), (rt, rc), (ct[1:], cc)], c.end)


def _flip_candidates(t: Triangulation, i: int) -> list[Curve]:
    r = reference(t.n)
    paths, _ = _ideal_form(t)
    ends = _ordered_ends(paths)
    out = []
    for v, lst in ends.items():
        seq = [(j, flag, key[0]) for j, flag, key in lst]
        d = r.degree(v)
        for pos, (j, flag, _) in enumerate(seq):
            if j != i - 1:
                continue
            if r.is_puncture(v):
                if len(seq) < 2:
                    continue
                bj, bf, pb = seq[pos - 1]
                cj, cf, pc = seq[(pos + 1) % len(seq)]
                bp, cp = _oriented(paths, (bj, bf)), _oriented(paths, (cj, cf))
                if pos == 0:
                    pb -= 2 * d
                if pos == len(seq) - 1:
                    pc += 2 * d
            else:
                if pos == 0:
                    bp, pb = _boundary_pseudo(r, v, True), 0
                else:
                    bp, pb = _oriented(paths, seq[pos - 1][:2]), seq[pos - 1][2]
                if pos == len(seq) - 1:
                    cp, pc = _boundary_pseudo(r, v, False), 2 * d
                else:
                    cp, pc = _oriented(paths, seq[pos + 1][:2]), seq[pos + 1][2]
            np = _concat_through(r, bp, cp, v, pb, pc)
            shapes = [np]
            if np.start == np.end and np.crossings and _eta_for_loop(np):
                # an enclosing loop is the ideal form of a notched radius
                shapes = _eta_for_loop(np)
            for shape in shapes:
                for tags in product((0, 1), repeat=2):
                    out.append(Curve(shape, tags))
    return out


def _oriented(paths, item) -> Path:
    j, flag = item
    return paths[j] if flag == 0 else paths[j].reversed()


def flip(t: Triangulation, i: int) -> Triangulation:
    """Replace edge i by the unique other admissible edge completing a triangulation."""
    if not 1 <= i <= len(t.edges):
        raise NotFlippable(f"no edge {i}")
    r = reference(t.n)
    a = t.edge(i)
    for v in (a.start, a.end):
        if not r.is_puncture(v) or _tag_at(a, v) != 0:
            continue
        partner = [
            e for j, e in enumerate(t.edges, 1)
            if j != i and v in (e.start, e.end) and untagged_equal(e.path, a.path) and _tag_at(e, v) == 1
        ]
        if partner:
            swapped = Triangulation(t.n, tuple(_swap_tags_at(e, v) for e in t.edges))
            flipped = flip(swapped, i)
            return Triangulation(t.n, tuple(_swap_tags_at(e, v) for e in flipped.edges))
    rest = [e for j, e in enumerate(t.edges, 1) if j != i]
    found = []
    for cand in _flip_candidates(t, i):
        if cand.same(a) or not is_admissible(cand) or normal_crossings(cand.path, cand.path):
            continue
        if punctured_intersections(cand, cand):
            continue
        if any(cand.same(e) or intersection_number(cand, e) for e in rest):
            continue
        if not any(cand.same(f) for f in found):
            found.append(cand)
    if len(found) != 1:
        raise NotFlippable(f"edge {i} has {len(found)} flip candidates", edge=i)
    edges = list(t.edges)
    edges[i - 1] = found[0]
    return Triangulation(t.n, tuple(edges))


def rho_triangulation(t: Triangulation, turn: Turn = Turn.FORWARD) -> Triangulation:
    return Triangulation(t.n, tuple(rho(e, turn) for e in t.edges))


# -- elementary moves -------------------------------------------------------------------------


@dataclass(frozen=True)
class ElementaryMove:
    case_id: int
    source: Curve
    target: Curve

    def to_json(self) -> dict:
        return {"case": self.case_id, "source": self.source.to_json(), "target": self.target.to_json()}


def is_projective_edge(c: Curve, t: Triangulation) -> bool:
    return c.color.is_neg_inf and t.index_of(rho(c)) is not None


def _digon_orientation(c: Curve) -> Curve | None:
    """Orientation with the digon puncture on the left, or None if c bounds no digon."""
    r = c.path.ref
    a, b = c.start, c.end
    if a == b:
        return None
    if r.succ(b) == a:
        return c
    if r.succ(a) == b:
        return c.reversed()
    return None


def _eta_for_loop(loop: Path) -> list[Path]:
    """Puncture-to-mark paths whose completion is the given loop."""
    r = loop.ref
    tris, cr = _walk(loop)
    out = []
    for v in (r.p1, r.p2):
        for k, t in enumerate(tris):
            if v not in r.triangles[t].corners:
                continue
            if v == loop.end:
                continue
            cand = _normalize(loop.n, v, tris[k:], cr[k:], loop.end)
            if cand.is_null:
                continue
            if untagged_equal(completion_at(cand), loop):
                if not any(untagged_equal(cand, o) for o in out):
                    out.append(cand)
    return out


def elementary_moves(c: Curve, t: Triangulation) -> list[ElementaryMove]:
    r = c.path.ref
    if is_projective_edge(c, t):
        raise IsProjectiveEdge("projective edges have no elementary moves")
    moves: list[tuple[int, Curve]] = []
    marks = r.is_mark(c.start) and r.is_mark(c.end)
    punct = r.is_puncture(c.start) and r.is_puncture(c.end)
    if marks and crosses_gamma0(c):
        g = _digon_orientation(c)
        if g is None:
            moves = [(1, shift(c, Side.START)), (1, shift(c, Side.END))]
        else:
            loop = shift(g, Side.END).path
            etas = _eta_for_loop(loop)
            if len(etas) != 1:
                raise NotAdmissible("digon case without a unique enclosed tagged edge")
            moves = [(2, shift(g, Side.START))]
            moves += [(2, Curve(etas[0], (k, None), c.color)) for k in (0, 1)]
    elif marks:
        moves = [(5, shift(c, Side.START)), (5, shift(c, Side.END))]
        moves = [(k, m) for k, m in moves if not m.path.is_boundary]
    elif not punct:
        moves = [(3, shift(completion(c), Side.START))]
    elif c.color in (ZERO, ONE):
        up = poliwhirl(c, Hand.LEFT)
        moves = [(4, up.with_tags(_rank_two_tags(c.color, 1 - c.tags[0], up.path)))]
        if not untagged_equal(c.path, gamma0_path(c.n)):
            down = poliwhirl(c, Hand.RIGHT)
            if not down.path.is_null:
                moves.append((4, down.with_tags(_rank_two_tags(c.color, c.tags[0], down.path))))
    else:
        up = poliwhirl_path(poliwhirl_path(c.path, Hand.LEFT), Hand.LEFT)
        moves = [(6, Curve(up, c.tags, c.color))]
        if not _is_delta(c, t):
            once = poliwhirl_path(c.path, Hand.RIGHT)
            if not untagged_equal(once, gamma0_path(c.n)):
                moves.append((6, Curve(poliwhirl_path(once, Hand.RIGHT), c.tags, c.color)))
    out = []
    for case, m in moves:
        require_admissible(m)
        out.append(ElementaryMove(case, c, m))
    return out


def winding_index(p: Path) -> int | None:
    """k when p is the k-fold left poliwhirl of gamma0, else None."""
    g = gamma0_path(p.n)
    cur = g
    for k in range(0, 64):
        if cur == p:
            return k
        if len(cur) > len(p) + 4 * p.n:
            return None
        cur = poliwhirl_path(cur, Hand.LEFT)
    return None


@lru_cache(maxsize=None)
def winding_curve(n: int, k: int) -> Path:
    p = gamma0_path(n)
    for _ in range(k):
        p = poliwhirl_path(p, Hand.LEFT)
    return p


def rank_two_equal_color() -> TubeColor:
    """The rank-2 color whose even-winding curves carry equal tags."""
    return ZERO


def _rank_two_tags(color: TubeColor, first: int, p: Path) -> tuple[int, int]:
    k = winding_index(p)
    if k is None:
        raise NotAdmissible("rank-2 tube curve is not a winding of gamma0")
    equal = color == rank_two_equal_color() and k % 2 == 0
    return (first, first if equal else 1 - first)


def _is_delta(c: Curve, t: Triangulation) -> bool:
    from .quiver_core import delta

    return tuple(intersection_number(c, e) for e in t.edges) == delta(t.n)


def dimension_vector(c: Curve, t: Triangulation) -> tuple[int, ...]:
    return tuple(intersection_number(c, e) for e in t.edges)


# -- drawing coordinates -------------------------------------------------------------------


def vertex_xy(n: int, v: int) -> tuple[float, float]:
    r = reference(n)
    m = r.m

    def mark(k):
        a = math.pi / 2 + 2 * math.pi * k / m
        return math.cos(a), math.sin(a)

    if r.is_mark(v):
        return mark(v)
    i, j = (0, 1) if v == r.p1 else (m - 1, 0)
    ai = math.pi / 2 + 2 * math.pi * i / m
    aj = math.pi / 2 + 2 * math.pi * (j if j else m) / m
    mid = (ai + aj) / 2
    rad = (1 + math.cos(math.pi / m)) / 2
    return rad * math.cos(mid), rad * math.sin(mid)
