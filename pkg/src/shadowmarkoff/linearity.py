"""The shadow part of a node is a fixed linear image of the root shadows.

Bodies along a word do not depend on the root shadows, so each move acts on
``(alpha, beta, gamma)`` by a 3x3 rational matrix determined by the current
bodies.  Composing them gives the transfer matrix of a word.
"""
from __future__ import annotations

import csv
import io
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence, Tuple, Union

from .dualcore import RationalLike, as_rational, format_rational
from .treewalk import PREFIX, parse_word

Row = Tuple[Fraction, Fraction, Fraction]
Rows = Tuple[Row, Row, Row]
Bodies = Tuple[Fraction, Fraction, Fraction]

IDENTITY: Rows = tuple(
    tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3)
)
ROOT_BODIES: Bodies = (Fraction(1), Fraction(1), Fraction(1))


class ShadowVector(NamedTuple):
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    @classmethod
    def of(cls, alpha: RationalLike, beta: RationalLike, gamma: RationalLike) -> "ShadowVector":
        return cls(as_rational(alpha), as_rational(beta), as_rational(gamma))


@dataclass(frozen=True)
class TransferMatrix:
    rows: Rows
    word: Tuple[str, ...]
    bodies: Bodies  # classical (a, b, c) of the node the matrix lands on

    def apply(self, v: Sequence[RationalLike]) -> ShadowVector:
        v = [as_rational(x) for x in v]
        return ShadowVector(*(sum(r[j] * v[j] for j in range(3)) for r in self.rows))

    def det(self) -> Fraction:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in self.rows:
            w.writerow([format_rational(x) for x in r])
        return buf.getvalue()


def move_matrix(direction: str, bodies: Sequence[RationalLike]) -> Rows:
    """Matrix of one move on the shadow vector, at the given classical bodies."""
    (m,) = parse_word(direction)
    a, b, c = (as_rational(x) for x in bodies)
    one, zero = Fraction(1), Fraction(0)
    if m == "L":
        new = (a * a + c * c) / b
        return ((one, zero, zero), (zero, zero, one), (2 * a / b, -new / b, 2 * c / b))
    new = (b * b + c * c) / a
    return ((zero, zero, one), (zero, one, zero), (-new / a, 2 * b / a, 2 * c / a))


def matmul(p: Rows, q: Rows) -> Rows:
    return tuple(
        tuple(sum(p[i][k] * q[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


def step(rows: Rows, bodies: Bodies, move: str) -> Tuple[Rows, Bodies]:
    """Advance a transfer matrix and its bodies by one move.

    Done as row operations, which is what multiplying by the move matrix
    amounts to.
    """
    a, b, c = bodies
    r1, r2, r3 = rows
    if move == "L":
        new = (a * a + c * c) / b
        last = tuple((2 * a * x - new * y + 2 * c * z) / b for x, y, z in zip(r1, r2, r3))
        return (r1, r3, last), (a, c, new)
    new = (b * b + c * c) / a
    last = tuple((-new * x + 2 * b * y + 2 * c * z) / a for x, y, z in zip(r1, r2, r3))
    return (r3, r2, last), (c, b, new)


@lru_cache(maxsize=1 << 14)
def _transfer(word: Tuple[str, ...]) -> Tuple[Rows, Bodies]:
    if not word:
        return IDENTITY, ROOT_BODIES
    rows, bodies = _transfer(word[:-1])
    return step(rows, bodies, word[-1])


def transfer_matrix(word: Union[str, Sequence[str]] = "", prefix: bool = True) -> TransferMatrix:
    """Transfer matrix of ``word``, by default after the forced R, L prefix."""
    w = parse_word(word)
    full = (tuple(PREFIX) if prefix else ()) + w
    rows, bodies = _transfer(full)
    return TransferMatrix(rows, w, bodies)


def shadow_at(word: Union[str, Sequence[str]], v: Sequence[RationalLike]) -> ShadowVector:
    return transfer_matrix(word).apply(v)


def barycenter_check(v1: Sequence[RationalLike], v2: Sequence[RationalLike],
                     lam: RationalLike, mu: RationalLike,
                     word: Union[str, Sequence[str]]) -> bool:
    """Does the shadow of a convex combination equal the combination of shadows?"""
    lam, mu = as_rational(lam), as_rational(mu)
    if lam + mu != 1:
        raise ValueError(f"weights must sum to 1, got {lam} + {mu}")
    v1 = [as_rational(x) for x in v1]
    v2 = [as_rational(x) for x in v2]
    mixed = [lam * x + mu * y for x, y in zip(v1, v2)]
    s1, s2 = shadow_at(word, v1), shadow_at(word, v2)
    return shadow_at(word, mixed) == ShadowVector(*(lam * x + mu * y for x, y in zip(s1, s2)))


class NodeRows(NamedTuple):
    """One node of a breadth-first traversal, with the path-list step index."""
    word: Tuple[str, ...]
    step: int
    rows: Rows
    bodies: Bodies


def iter_nodes(depth: int) -> Iterator[NodeRows]:
    """Every node with word length <= depth in breadth-first order, L before R.

    The two prefix nodes (root and after R) come first with empty word and
    steps 0 and 1; every free word ``w`` sits at step ``len(w) + 2``.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    rows, bodies = IDENTITY, ROOT_BODIES
    yield NodeRows((), 0, rows, bodies)
    rows, bodies = step(rows, bodies, "R")
    yield NodeRows((), 1, rows, bodies)
    rows, bodies = step(rows, bodies, "L")
    queue = deque([NodeRows((), 2, rows, bodies)])
    while queue:
        node = queue.popleft()
        yield node
        if len(node.word) == depth:
            continue
        for m in "LR":
            r, b = step(node.rows, node.bodies, m)
            queue.append(NodeRows(node.word + (m,), node.step + 1, r, b))
