"""Positivity of shadow trees over the chart gamma = 1.

A chart point ``(alpha, beta)`` stands for the root shadows ``(alpha, beta, 1)``.
Positivity to depth ``d`` means every shadow of every node whose free word has
length <= d (the root and the two forced nodes included) is >= 0.
"""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .dualcore import RationalLike, as_rational, format_rational
from .linearity import iter_nodes
from .treewalk import parse_word, path, word_str

log = logging.getLogger(__name__)

SLOTS = ("alpha", "beta", "gamma")  # shadows of the a, b and c entries
DEFAULT_BBOX = ((Fraction(-1, 2), Fraction(-1, 2)), (Fraction(5, 2), Fraction(3)))
DEFAULT_SPACING = Fraction(1, 20)
DEFAULT_DEPTH = 15
DEFAULT_DIGIT_BUDGET = 10 ** 6


class ChartPoint(NamedTuple):
    alpha: Fraction
    beta: Fraction

    @classmethod
    def of(cls, alpha: RationalLike, beta: RationalLike) -> "ChartPoint":
        return cls(as_rational(alpha), as_rational(beta))

    def root(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.alpha, self.beta, Fraction(1))


class HalfPlane(NamedTuple):
    """``u*alpha + v*beta + w >= 0``."""
    u: Fraction
    v: Fraction
    w: Fraction

    @classmethod
    def of(cls, u: RationalLike, v: RationalLike, w: RationalLike) -> "HalfPlane":
        return cls(as_rational(u), as_rational(v), as_rational(w))

    def value(self, p: Sequence[Fraction]) -> Fraction:
        return self.u * p[0] + self.v * p[1] + self.w

    def contains(self, p: Sequence[Fraction]) -> bool:
        return self.value(p) >= 0

    @property
    def degenerate(self) -> bool:
        return self.u == 0 and self.v == 0

    @property
    def vacuous(self) -> bool:
        return self.degenerate and self.w >= 0

    @property
    def infeasible(self) -> bool:
        return self.degenerate and self.w < 0

    def normalized(self) -> "HalfPlane":
        """Primitive integer multiple; same region, canonical coefficients."""
        den = math.lcm(self.u.denominator, self.v.denominator, self.w.denominator)
        ints = [int(x * den) for x in self]
        g = math.gcd(*ints) or 1
        return HalfPlane(*(Fraction(x // g) for x in ints))


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: Tuple[ChartPoint, ...]

    @classmethod
    def of(cls, points: Iterable[Sequence[RationalLike]]) -> "ConvexPolygon":
        return cls(tuple(ChartPoint.of(*p) for p in points))

    @classmethod
    def box(cls, lo: Sequence[RationalLike], hi: Sequence[RationalLike]) -> "ConvexPolygon":
        (x0, y0), (x1, y1) = ChartPoint.of(*lo), ChartPoint.of(*hi)
        if x0 >= x1 or y0 >= y1:
            raise ValueError("box corners must satisfy lo < hi componentwise")
        return cls(((x0, y0), (x1, y0), (x1, y1), (x0, y1))).canonical()

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def edges(self) -> Iterator[Tuple[ChartPoint, ChartPoint]]:
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n]

    def halfplanes(self) -> List[HalfPlane]:
        """Edge half-planes (interior on the left of each CCW edge)."""
        if len(self.vertices) < 3:
            raise ValueError("need a polygon with nonempty interior")
        out = []
        for (x0, y0), (x1, y1) in self.edges():
            # cross((p1 - p0), (q - p0)) >= 0
            out.append(HalfPlane(-(y1 - y0), x1 - x0, (y1 - y0) * x0 - (x1 - x0) * y0))
        return out

    def contains(self, p: Sequence[RationalLike]) -> bool:
        p = ChartPoint.of(*p)
        return all(h.contains(p) for h in self.halfplanes())

    def area2(self) -> Fraction:
        """Twice the signed area."""
        return sum((x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in self.edges()), Fraction(0))

    def canonical(self) -> "ConvexPolygon":
        """Drop repeats and collinear vertices, orient CCW, start at the lowest-leftmost vertex."""
        pts: List[ChartPoint] = []
        for p in self.vertices:
            if not pts or pts[-1] != p:
                pts.append(ChartPoint(*p))
        while len(pts) > 1 and pts[0] == pts[-1]:
            pts.pop()
        changed = True
        while changed and len(pts) > 2:
            changed = False
            for i in range(len(pts)):
                a, b, c = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
                if _cross(a, b, c) == 0:
                    del pts[i]
                    changed = True
                    break
        if len(pts) > 2 and ConvexPolygon(tuple(pts)).area2() < 0:
            pts.reverse()
        if pts:
            k = min(range(len(pts)), key=lambda i: (pts[i].beta, pts[i].alpha))
            pts = pts[k:] + pts[:k]
        return ConvexPolygon(tuple(pts))

    def distance2(self, p: Sequence[RationalLike]) -> Fraction:
        """Squared Euclidean distance from ``p`` to the closed polygon."""
        p = ChartPoint.of(*p)
        if len(self.vertices) >= 3 and self.contains(p):
            return Fraction(0)
        return min(_segment_distance2(p, a, b) for a, b in self.edges())


@dataclass(frozen=True)
class NegativityWitness:
    word: Tuple[str, ...]
    step: int  # index into path(root, word)
    slot: str  # "alpha", "beta" or "gamma": the shadow of a, b or c
    value: Fraction

    @property
    def word_text(self) -> str:
        return word_str(self.word)

    @property
    def label(self) -> str:
        """Word text, or ``(root)``, ``(r)``, ``(rl)`` for the forced nodes."""
        if not self.word:
            return ("(root)", "(r)", "(rl)")[self.step]
        return self.word_text


def _cross(a, b, c) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segment_distance2(p, a, b) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    t = Fraction(0) if L2 == 0 else ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2
    t = min(max(t, Fraction(0)), Fraction(1))
    qx, qy = a[0] + t * dx - p[0], a[1] + t * dy - p[1]
    return qx * qx + qy * qy


# -- the conjectured region ---------------------------------------------------

def conjectured_quadrilateral() -> ConvexPolygon:
    return ConvexPolygon.of([(0, 0), (Fraction(1, 2), 0), (1, 1), (0, 2)])


def classify_conjecture(p: Sequence[RationalLike]) -> str:
    """``"inside"`` (strictly interior), ``"boundary"`` or ``"outside"``."""
    p = ChartPoint.of(*p)
    vals = [h.value(p) for h in conjectured_quadrilateral().halfplanes()]
    if any(v < 0 for v in vals):
        return "outside"
    if any(v == 0 for v in vals):
        return "boundary"
    return "inside"


# -- direct tree walk ----------------------------------------------------------

def _scaled_root(p: ChartPoint) -> Tuple[int, int, int]:
    """Integer shadows ``D*(alpha, beta, 1)``; shadows scale linearly, signs survive."""
    d = math.lcm(p.alpha.denominator, p.beta.denominator)
    return int(p.alpha * d), int(p.beta * d), d


def _exact_div(n: int, d: int) -> int:
    q, r = divmod(n, d)
    if r:
        raise ArithmeticError("integrality lost in shadow walk")
    return q


def _int_move(s: Tuple[int, ...], move: str) -> Tuple[int, ...]:
    a, alpha, b, beta, c, gamma = s
    if move == "L":
        new = _exact_div(a * a + c * c, b)
        return (a, alpha, c, gamma, new, _exact_div(-new * beta + 2 * a * alpha + 2 * c * gamma, b))
    new = _exact_div(b * b + c * c, a)
    return (c, gamma, b, beta, new, _exact_div(-new * alpha + 2 * b * beta + 2 * c * gamma, a))


def _walk(p: ChartPoint, depth: int) -> Iterator[Tuple[Tuple[str, ...], int, Tuple[int, ...]]]:
    """Breadth-first ``(word, step, scaled six-tuple)``, L before R."""
    A, B, D = _scaled_root(p)
    s = (1, A, 1, B, 1, D)
    yield (), 0, s
    s = _int_move(s, "R")
    yield (), 1, s
    s = _int_move(s, "L")
    level = [((), s)]
    for k in range(depth + 1):
        nxt = []
        for w, s in level:
            yield w, k + 2, s
            if k < depth:
                nxt.append((w + ("L",), _int_move(s, "L")))
                nxt.append((w + ("R",), _int_move(s, "R")))
        level = nxt


def _first_negative(p: ChartPoint, depth: int) -> Optional[NegativityWitness]:
    D = _scaled_root(p)[2]
    for w, k, s in _walk(p, depth):
        for slot, v in zip(SLOTS, s[1::2]):
            if v < 0:
                return NegativityWitness(w, k, slot, Fraction(v, D))
    return None


def is_positive_to_depth(p: Sequence[RationalLike], depth: int) -> bool:
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    return _first_negative(ChartPoint.of(*p), depth) is None


def find_witness(p: Sequence[RationalLike], max_depth: int) -> Optional[NegativityWitness]:
    """First negative shadow in breadth-first order (L before R, then slot order)."""
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    return _first_negative(ChartPoint.of(*p), max_depth)


def branch_witness(p: Sequence[RationalLike], max_length: int,
                   stems: Sequence[str] = ("",)) -> Optional[NegativityWitness]:
    """Search straight runs ``stem + m*k`` (m in L, R) far past breadth-first reach.

    Straight branches grow only exponentially, so lengths in the hundreds are
    cheap.  Returns the shortest hit, ties broken by stem order then L before R.
    """
    p = ChartPoint.of(*p)
    A, B, D = _scaled_root(p)
    if A < 0 or B < 0:
        return (NegativityWitness((), 0, "alpha", p.alpha) if A < 0
                else NegativityWitness((), 0, "beta", p.beta))
    best: Optional[NegativityWitness] = None
    for stem in stems:
        for m in "LR":
            word = parse_word(stem) + (m,) * max_length
            s = (1, A, 1, B, 1, D)
            for k, move in enumerate(("R", "L") + word):
                s = _int_move(s, move)
                w = word[:max(k - 1, 0)]
                if best is not None and len(w) >= len(best.word):
                    break
                slot = next((sl for sl, v in zip(SLOTS, s[1::2]) if v < 0), None)
                if slot is not None:
                    v = s[1 + 2 * SLOTS.index(slot)]
                    best = NegativityWitness(w, k + 1, slot, Fraction(v, D))
                    break
    return best


class BudgetExceeded(Exception):
    pass


def replay(root: Sequence[RationalLike], word, step: Optional[int] = None, slot: str = "gamma",
           digit_budget: int = DEFAULT_DIGIT_BUDGET) -> Fraction:
    """Recompute one shadow along ``path``; refuse values past ``digit_budget`` digits."""
    rows = path(*root, word)
    limit_bits = int(digit_budget * math.log2(10)) + 1
    for s in rows:
        for x in s:
            if max(abs(x.numerator).bit_length(), x.denominator.bit_length()) > limit_bits:
                raise BudgetExceeded(f"value exceeds {digit_budget} digits")
    row = rows[-1 if step is None else step]
    return getattr(row, slot)


def replay_witness(p: Sequence[RationalLike], w: NegativityWitness,
                   digit_budget: int = DEFAULT_DIGIT_BUDGET) -> Fraction:
    return replay(ChartPoint.of(*p).root(), w.word, w.step, w.slot, digit_budget)


# -- half-planes from transfer matrices ---------------------------------------

class ConstraintRow(NamedTuple):
    """One shadow slot of one node as an integer linear form in (alpha, beta, 1)."""
    word: Tuple[str, ...]
    step: int
    slot: str
    u: int
    v: int
    w: int


def constraint_rows(depth: int) -> List[ConstraintRow]:
    """All non-vacuous slot rows in breadth-first witness order."""
    out = []
    for node in iter_nodes(depth):
        for slot, row in zip(SLOTS, node.rows):
            if any(x.denominator != 1 for x in row):
                raise ArithmeticError("transfer matrix entry is not an integer")
            u, v, w = (x.numerator for x in row)
            if u == 0 and v == 0 and w >= 0:
                continue
            out.append(ConstraintRow(node.word, node.step, slot, u, v, w))
    return out


def halfplanes_to_depth(depth: int) -> List[HalfPlane]:
    """Distinct half-planes whose intersection is the depth-``depth`` positive set."""
    seen = set()
    out = []
    for r in constraint_rows(depth):
        h = HalfPlane(Fraction(r.u), Fraction(r.v), Fraction(r.w)).normalized()
        if h not in seen:
            seen.add(h)
            out.append(h)
    return out


def clip(poly: ConvexPolygon, h: HalfPlane) -> ConvexPolygon:
    """Sutherland-Hodgman against a single half-plane, exact."""
    if h.vacuous:
        return poly
    if h.infeasible:
        return ConvexPolygon(())
    verts = poly.vertices
    vals = [h.value(p) for p in verts]
    if all(v >= 0 for v in vals):
        return poly
    out: List[ChartPoint] = []
    n = len(verts)
    for i in range(n):
        p, q = verts[i], verts[(i + 1) % n]
        fp, fq = vals[i], vals[(i + 1) % n]
        if fp >= 0:
            out.append(p)
        if (fp > 0 and fq < 0) or (fp < 0 and fq > 0):
            t = fp / (fp - fq)
            out.append(ChartPoint(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return ConvexPolygon(tuple(out)).canonical()


def polygon_intersect(constraints: Iterable[HalfPlane], bbox: ConvexPolygon) -> ConvexPolygon:
    """Clip ``bbox`` by every constraint; an empty result has no vertices."""
    if len(bbox.vertices) < 3:
        raise ValueError("bounding polygon must have at least three vertices")
    poly = bbox.canonical()
    if poly.area2() <= 0 or any(
        _cross(a, b, c) <= 0 for a, b, c in zip(poly.vertices, poly.vertices[1:] + poly.vertices[:1],
                                                 poly.vertices[2:] + poly.vertices[:2])
    ):
        raise ValueError("bounding polygon must be convex with nonempty interior")
    for h in constraints:
        poly = clip(poly, h)
        if poly.is_empty:
            break
    return poly


# -- grid sweep -----------------------------------------------------------------

@dataclass(frozen=True)
class GridRow:
    alpha: Fraction
    beta: Fraction
    conjecture: str  # inside / boundary / outside
    positive: bool
    witness: Optional[NegativityWitness]

    def csv_fields(self) -> List[str]:
        return [
            format_rational(self.alpha),
            format_rational(self.beta),
            self.conjecture,
            "true" if self.positive else "false",
            self.witness.label if self.witness is not None else "",
        ]


CSV_HEADER = ["alpha", "beta", "inside_conjecture", "positive_to_depth", "witness_word"]


def lattice(lo: Fraction, hi: Fraction, spacing: Fraction) -> List[Fraction]:
    start = math.ceil(lo / spacing)
    stop = math.floor(hi / spacing)
    return [k * spacing for k in range(start, stop + 1)]


def grid_points(bbox: ConvexPolygon, spacing: RationalLike) -> List[ChartPoint]:
    """Multiples of ``spacing`` inside ``bbox``, row-major by beta then alpha."""
    spacing = as_rational(spacing)
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    xs = [v.alpha for v in bbox.vertices]
    ys = [v.beta for v in bbox.vertices]
    pts = []
    for b in lattice(min(ys), max(ys), spacing):
        for a in lattice(min(xs), max(xs), spacing):
            p = ChartPoint(a, b)
            if bbox.contains(p):
                pts.append(p)
    return pts


class _Table:
    """Constraint rows plus a float copy scaled into [-1, 1] for fast screening."""

    def __init__(self, rows: List[ConstraintRow]):
        self.rows = rows
        coef = np.empty((len(rows), 3))
        for i, r in enumerate(rows):
            k = max(abs(r.u).bit_length(), abs(r.v).bit_length(), abs(r.w).bit_length())
            shift = max(k - 60, 0)
            scale = 2.0 ** -(k - shift)
            coef[i] = [(r.u >> shift) * scale, (r.v >> shift) * scale, (r.w >> shift) * scale]
        self.coef = coef

    def first_negative(self, A: int, B: int, D: int, g: np.ndarray) -> Optional[int]:
        # |float - exact/2^k| <= (|A|+|B|+D) * 2^-50; 2^-40 leaves a wide margin
        tol = (abs(A) + abs(B) + D) * 2.0 ** -40
        neg = np.flatnonzero(g < -tol)
        stop = neg[0] if neg.size else len(g)
        for i in np.flatnonzero(np.abs(g[:stop]) <= tol):
            r = self.rows[i]
            if r.u * A + r.v * B + r.w * D < 0:
                return int(i)
        return int(stop) if neg.size else None


_TABLE: Optional[_Table] = None


def _init_worker(table: _Table) -> None:
    global _TABLE
    _TABLE = table


def _scan_chunk(points: Sequence[ChartPoint], table: Optional[_Table] = None,
                block: int = 32) -> List[Optional[Tuple[int, Fraction]]]:
    table = table or _TABLE
    out: List[Optional[Tuple[int, Fraction]]] = []
    for j in range(0, len(points), block):
        chunk = points[j:j + block]
        scaled = np.array([_scaled_root(p) for p in chunk], dtype=float).T  # 3 x n
        G = table.coef @ scaled
        for col, p in enumerate(chunk):
            A, B, D = _scaled_root(p)
            i = table.first_negative(A, B, D, G[:, col])
            if i is None:
                out.append(None)
            else:
                r = table.rows[i]
                out.append((i, Fraction(r.u * A + r.v * B + r.w * D, D)))
    return out


def grid_scan(bbox: ConvexPolygon, spacing: RationalLike, depth: int,
              workers: Optional[int] = None) -> List[GridRow]:
    """Classify every lattice point of ``bbox`` against the conjecture and to ``depth``.

    The result does not depend on ``workers``.
    """
    points = grid_points(bbox, spacing)
    table = _Table(constraint_rows(depth))
    log.info("grid scan: %d points, %d constraint rows", len(points), len(table.rows))
    workers = workers or int(os.environ.get("SHADOWMARKOFF_WORKERS", "1"))
    if workers <= 1 or len(points) < 2:
        hits = _scan_chunk(points, table)
    else:
        size = -(-len(points) // workers)
        chunks = [points[i:i + size] for i in range(0, len(points), size)]
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(table,)) as ex:
            hits = [h for part in ex.map(_scan_chunk, chunks) for h in part]
    rows = []
    for p, hit in zip(points, hits):
        wit = None
        if hit is not None:
            r = table.rows[hit[0]]
            wit = NegativityWitness(r.word, r.step, r.slot, hit[1])
        rows.append(GridRow(p.alpha, p.beta, classify_conjecture(p), hit is None, wit))
    return rows


def default_bbox() -> ConvexPolygon:
    return ConvexPolygon.box(*DEFAULT_BBOX)
