"""Walking the shadow Markoff tree the way the reference Sage code does.

Nodes are six-tuples ``[a, alpha, b, beta, c, gamma]``.  Every walk starts at
``[1, alpha, 1, beta, 1, gamma]`` and first performs the two forced moves
R then L; free branching starts after that.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .dualcore import RationalLike, ShadowTriple, as_rational, format_rational

PREFIX = "RL"
DEFAULT_MAX_HEIGHT = 25


class SixTuple(NamedTuple):
    a: Fraction
    alpha: Fraction
    b: Fraction
    beta: Fraction
    c: Fraction
    gamma: Fraction

    @classmethod
    def of(cls, *values: RationalLike) -> "SixTuple":
        return cls(*(as_rational(v) for v in values))

    @property
    def bodies(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    @property
    def shadows(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.alpha, self.beta, self.gamma)

    def triple(self) -> ShadowTriple:
        return ShadowTriple.from_parts(self.bodies, self.shadows)


FIELDS = SixTuple._fields


def root_tuple(alpha: RationalLike, beta: RationalLike, gamma: RationalLike) -> SixTuple:
    return SixTuple.of(1, alpha, 1, beta, 1, gamma)


def parse_word(word: Union[str, Sequence[str]]) -> Tuple[str, ...]:
    """Normalize a move word such as ``"rlrl"`` to ``('R', 'L', 'R', 'L')``."""
    moves = tuple(m.upper() for m in word)
    bad = [m for m in moves if m not in ("L", "R")]
    if bad:
        raise ValueError(f"moves must be l or r, got {''.join(bad)!r}")
    return moves


def word_str(word: Sequence[str]) -> str:
    return "".join(word).lower()


def sage_move_left(s: SixTuple) -> SixTuple:
    """Mutate the middle entry; the old third entry moves to the middle."""
    a, alpha, b, beta, c, gamma = s
    if b == 0:
        raise ZeroDivisionError("left move needs a nonzero middle body")
    new = (a * a + c * c) / b
    return SixTuple(a, alpha, c, gamma, new, (-new * beta + 2 * a * alpha + 2 * c * gamma) / b)


def sage_move_right(s: SixTuple) -> SixTuple:
    """Mutate the first entry; the old third entry moves to the front."""
    a, alpha, b, beta, c, gamma = s
    if a == 0:
        raise ZeroDivisionError("right move needs a nonzero first body")
    new = (b * b + c * c) / a
    return SixTuple(c, gamma, b, beta, new, (-new * alpha + 2 * b * beta + 2 * c * gamma) / a)


MOVES = {"L": sage_move_left, "R": sage_move_right}


def apply_word(s: SixTuple, word: Sequence[str]) -> SixTuple:
    for m in parse_word(word):
        s = MOVES[m](s)
    return s


def prefix_node(alpha: RationalLike, beta: RationalLike, gamma: RationalLike) -> SixTuple:
    """The node reached after the two forced moves."""
    return apply_word(root_tuple(alpha, beta, gamma), PREFIX)


def path(alpha: RationalLike, beta: RationalLike, gamma: RationalLike,
         word: Union[str, Sequence[str]] = "") -> List[SixTuple]:
    """All visited six-tuples, root included, along R, L, then ``word``."""
    s = root_tuple(alpha, beta, gamma)
    out = [s]
    for m in PREFIX + "".join(parse_word(word)):
        s = MOVES[m](s)
        out.append(s)
    return out


@dataclass(frozen=True)
class ShadowTree:
    node: SixTuple
    left: Optional["ShadowTree"] = None
    right: Optional["ShadowTree"] = None

    def height(self) -> int:
        return 1 + (self.left.height() if self.left is not None else 0)

    def at(self, word: Union[str, Sequence[str]]) -> SixTuple:
        t = self
        for m in parse_word(word):
            t = t.left if m == "L" else t.right
            if t is None:
                raise KeyError(f"word {word_str(word)!r} leaves the tree")
        return t.node

    def walk(self, prefix: Tuple[str, ...] = ()) -> Iterator[Tuple[Tuple[str, ...], SixTuple]]:
        """Pre-order ``(word, node)`` pairs."""
        yield prefix, self.node
        if self.left is not None:
            yield from self.left.walk(prefix + ("L",))
        if self.right is not None:
            yield from self.right.walk(prefix + ("R",))


def _fill(s: SixTuple, height: int) -> Optional[ShadowTree]:
    if height == 0:
        return None
    if height == 1:
        return ShadowTree(s)
    return ShadowTree(s, _fill(sage_move_left(s), height - 1),
                      _fill(sage_move_right(s), height - 1))


def build_tree(alpha: RationalLike, beta: RationalLike, gamma: RationalLike, height: int,
               max_height: int = DEFAULT_MAX_HEIGHT) -> Optional[ShadowTree]:
    """Perfect tree of ``height`` levels below the forced prefix; ``None`` when empty."""
    if height < 0:
        raise ValueError("height must be nonnegative")
    if height > max_height:
        raise ValueError(f"height {height} exceeds the guard {max_height}")
    return _fill(prefix_node(alpha, beta, gamma), height)


def branch_sequence(alpha: RationalLike, beta: RationalLike, gamma: RationalLike,
                    direction: str, count: int) -> List[Tuple[Fraction, Fraction]]:
    """``(c, gamma)`` along a straight branch, starting at the prefix node."""
    if count < 1:
        raise ValueError("count must be positive")
    (move,) = parse_word(direction)
    s = prefix_node(alpha, beta, gamma)
    out = [(s.c, s.gamma)]
    while len(out) < count:
        s = MOVES[move](s)
        out.append((s.c, s.gamma))
    return out


# -- serialization -----------------------------------------------------------

TreeOrList = Union[None, ShadowTree, SixTuple, Sequence[SixTuple]]


def _tuple_text(s: SixTuple) -> str:
    return "[" + ", ".join(format_rational(v) for v in s) + "]"


def _tree_text(t: Optional[ShadowTree]) -> str:
    if t is None:
        return "[]"
    return f"[{_tuple_text(t.node)}, {_tree_text(t.left)}, {_tree_text(t.right)}]"


def serialize(obj: TreeOrList) -> str:
    """Sage nested-list text for a tree, a single six-tuple, or a list of them."""
    if obj is None or isinstance(obj, ShadowTree):
        return _tree_text(obj)
    if isinstance(obj, SixTuple):
        return _tuple_text(obj)
    return "[" + ", ".join(_tuple_text(s) for s in obj) + "]"


def to_jsonable(obj: TreeOrList):
    if obj is None:
        return []
    if isinstance(obj, ShadowTree):
        return [to_jsonable(obj.node), to_jsonable(obj.left), to_jsonable(obj.right)]
    if isinstance(obj, SixTuple):
        return [format_rational(v) for v in obj]
    return [to_jsonable(s) for s in obj]


def to_json(obj: TreeOrList) -> str:
    return json.dumps(to_jsonable(obj))


def tree_from_jsonable(data) -> Optional[ShadowTree]:
    if data == []:
        return None
    node, left, right = data
    return ShadowTree(SixTuple.of(*node), tree_from_jsonable(left), tree_from_jsonable(right))


def tree_from_json(text: str) -> Optional[ShadowTree]:
    return tree_from_jsonable(json.loads(text))
