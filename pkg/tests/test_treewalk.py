import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from shadowmarkoff.dualcore import check_shadow_equation, mutate_at, sigma_of_root
from shadowmarkoff.sequences import fibonacci, pell
from shadowmarkoff.treewalk import (
    SixTuple,
    branch_sequence,
    build_tree,
    parse_word,
    path,
    sage_move_left,
    sage_move_right,
    serialize,
    to_json,
    tree_from_json,
)
from conftest import rationals

S = SixTuple.of

PRINTED_PATH = [
    [1, 0, 1, 0, 1, 1],
    [1, 1, 1, 0, 2, 2],
    [1, 1, 2, 2, 5, 10],
    [1, 1, 5, 10, 13, 38],
    [1, 1, 13, 38, 34, 130],
    [1, 1, 34, 130, 89, 420],
]

PRINTED_TREE = """
[[1, 1, 2, 2, 5, 10],
 [[1, 1, 5, 10, 13, 38],
  [[1, 1, 13, 38, 34, 130], [], []],
  [[13, 38, 5, 10, 194, 894], [], []]],
 [[5, 10, 2, 2, 29, 79],
  [[5, 10, 29, 79, 433, 1908], [], []],
  [[29, 79, 2, 2, 169, 580], [], []]]]
"""


def squash(text):
    return "".join(text.split())


@pytest.mark.parametrize("before, after", list(zip(PRINTED_PATH[2:], PRINTED_PATH[3:])))
def test_move_left_printed_rows(before, after):
    assert sage_move_left(S(*before)) == S(*after)


@pytest.mark.parametrize("before, after", [
    ([1, 0, 1, 0, 1, 1], [1, 1, 1, 0, 2, 2]),
    ([1, 1, 2, 2, 5, 10], [5, 10, 2, 2, 29, 79]),
    ([5, 10, 2, 2, 29, 79], [29, 79, 2, 2, 169, 580]),
])
def test_move_right_examples(before, after):
    assert sage_move_right(S(*before)) == S(*after)


def test_moves_reject_zero_pivot():
    with pytest.raises(ZeroDivisionError):
        sage_move_left(S(1, 0, 0, 0, 1, 0))
    with pytest.raises(ZeroDivisionError):
        sage_move_right(S(0, 0, 1, 0, 1, 0))


def test_path_golden():
    assert path(0, 0, 1, "lll") == [S(*r) for r in PRINTED_PATH]
    assert path(1, 1, 1, "") == [S(1, 1, 1, 1, 1, 1), S(1, 1, 1, 1, 2, 2), S(1, 1, 2, 2, 5, 5)]
    assert path(0, 0, 1)[-1] == S(1, 1, 2, 2, 5, 10)
    assert len(path(0, 0, 1, "lrlrr")) == 5 + 3


def test_parse_word():
    assert parse_word("rLl") == ("R", "L", "L")
    with pytest.raises(ValueError):
        parse_word("lxr")


def test_build_tree_golden():
    tree = build_tree(0, 0, 1, 3)
    assert serialize(tree) == squash(PRINTED_TREE).replace(",", ", ")
    assert squash(serialize(tree)) == squash(PRINTED_TREE)
    assert build_tree(0, 0, 1, 0) is None
    assert build_tree(1, 0, 2, 1).node == S(1, 2, 2, 2, 5, 12)


def test_build_tree_guard():
    with pytest.raises(ValueError):
        build_tree(0, 0, 1, 26)
    with pytest.raises(ValueError):
        build_tree(0, 0, 1, -1)


def test_serialize_shapes():
    assert serialize(build_tree(0, 0, 1, 1)) == "[[1, 1, 2, 2, 5, 10], [], []]"
    assert serialize(None) == "[]"
    assert serialize(S(1, 1, 1, 0, 2, 2)) == "[1, 1, 1, 0, 2, 2]"
    assert serialize(S(1, F(1, 2), 1, F(-3, 4), 2, 0)) == "[1, 1/2, 1, -3/4, 2, 0]"


@given(rationals(), rationals(), rationals(), st.integers(0, 4))
def test_json_round_trip(al, be, ga, h):
    tree = build_tree(al, be, ga, h)
    again = tree_from_json(to_json(tree))
    assert again == tree
    assert to_json(again) == to_json(tree)


def test_branch_sequence_examples():
    assert branch_sequence(0, 0, 1, "L", 5) == [(5, 10), (13, 38), (34, 130), (89, 420), (233, 1308)]
    assert branch_sequence(1, 0, 2, "R", 4) == [(5, 12), (29, 70), (169, 408), (985, 2378)]
    assert [s for _, s in branch_sequence(0, 2, 1, "L", 4)] == [16, 42, 110, 288]
    with pytest.raises(ValueError):
        branch_sequence(0, 0, 1, "L", 0)


@settings(max_examples=10)
@given(rationals(), rationals(), rationals())
def test_tree_matches_path(al, be, ga):
    tree = build_tree(al, be, ga, 9)
    for n in range(9):
        for w in itertools.product("LR", repeat=n):
            assert tree.at(w) == path(al, be, ga, w)[-1]


@given(rationals(), rationals(), rationals(), rationals(), rationals(), rationals())
@settings(max_examples=5)
def test_bodies_independent_of_shadows(a1, b1, c1, a2, b2, c2):
    t1, t2 = build_tree(a1, b1, c1, 7), build_tree(a2, b2, c2, 7)
    for (w1, s1), (w2, s2) in zip(t1.walk(), t2.walk()):
        assert w1 == w2 and s1.bodies == s2.bodies


def test_double_tree():
    for w, s in build_tree(1, 1, 1, 13).walk():
        assert s.shadows == s.bodies


def test_classical_branches():
    left = [b for b, _ in branch_sequence(0, 0, 1, "L", 15)]
    right = [b for b, _ in branch_sequence(0, 0, 1, "R", 15)]
    assert left == [fibonacci(2 * k + 5) for k in range(15)]
    assert right == [pell(2 * k + 3) for k in range(15)]


@given(rationals(), rationals(), rationals())
@settings(max_examples=20)
def test_every_node_solves_equation(al, be, ga):
    sigma = sigma_of_root(al, be, ga)
    for s in path(al, be, ga)[:2]:
        assert check_shadow_equation(s.triple(), sigma)
    for _, s in build_tree(al, be, ga, 6).walk():
        assert check_shadow_equation(s.triple(), sigma)


def _via_mutate_at(s: SixTuple, move: str) -> SixTuple:
    # a Sage move is a pure mutation followed by a reordering of the triple
    t = s.triple()
    if move == "L":
        m = mutate_at(t, 2)
        order = (m.first, m.third, m.second)
    else:
        m = mutate_at(t, 1)
        order = (m.third, m.second, m.first)
    return SixTuple(*(x for e in order for x in (e.body, e.shadow)))


@given(rationals(), rationals(), rationals(), st.text(alphabet="LR", max_size=10))
def test_sage_moves_are_permuted_mutations(al, be, ga, word):
    s = path(al, be, ga)[0]
    for m in "RL" + word:
        nxt = sage_move_left(s) if m == "L" else sage_move_right(s)
        assert nxt == _via_mutate_at(s, m)
        s = nxt
