"""Group arithmetic, words, K-membership, and the 96-row coset table."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetapath.errors import NonClosure
from zetapath.sl2z import (
    IDENTITY, R, S, SHIFT_ELEMENT, SHIFT_WORD, T, CosetTable, GroupElem,
    coset_enumerate, in_k, is_reduced_alternating, load_table, mobius,
    word_eval, word_inverse, word_normalize,
)


def test_group_elem_basics():
    with pytest.raises(ValueError):
        GroupElem(1, 0, 0, 2)
    assert R == S * T
    assert S * S == -IDENTITY
    assert R ** 3 == -IDENTITY
    assert R * R.inv() == IDENTITY
    assert (R * S).inv() == S.inv() * R.inv()
    assert R ** -2 == R.inv() * R.inv()


def test_shift_element():
    assert SHIFT_ELEMENT == (R * S * R * S * R) ** 4
    assert SHIFT_ELEMENT.entries() == (-8, -21, 21, 55)
    # the tabulated word picks up a sign, which K absorbs
    assert word_eval(SHIFT_WORD) == -SHIFT_ELEMENT
    assert len(SHIFT_WORD) == 17
    assert is_reduced_alternating(SHIFT_WORD)


def test_mobius():
    assert mobius(T, 1j) == pytest.approx(1 + 1j)
    assert mobius(S, 2j) == pytest.approx(0.5j)
    # -g acts identically
    z = 0.3 + 1.7j
    assert mobius(-R, z) == pytest.approx(mobius(R, z))
    # composition is compatible with matrix product
    g = GroupElem(2, 15, 1, 8)
    assert mobius(g, mobius(S, z)) == pytest.approx(mobius(g * S, z))


def test_in_k():
    assert in_k(IDENTITY)
    assert in_k(-IDENTITY)
    assert in_k(GroupElem(1, 0, 1, 1))     # lower unipotent, b = 0
    assert in_k(GroupElem(1, 15, 0, 1))
    assert in_k(GroupElem(16, 15, 1, 1))
    assert not in_k(T)                      # b = 1
    assert not in_k(GroupElem(4, 1, -1, 0))
    assert not in_k(SHIFT_ELEMENT)
    assert not in_k(GroupElem(2, 15, 1, 8))  # b = 0 mod 15 but a, d != 1


words = st.text(alphabet="RrS", max_size=12)


@given(words)
@settings(max_examples=150)
def test_word_inverse(w):
    prod = word_eval(w) * word_eval(word_inverse(w))
    assert prod == IDENTITY or prod == -IDENTITY


@given(words)
@settings(max_examples=150)
def test_word_normalize(w):
    norm = word_normalize(w)
    assert is_reduced_alternating(norm)
    m, n = word_eval(w), word_eval(norm)
    assert m == n or m == -n


def test_word_eval_examples():
    assert word_eval("R") == R
    assert word_eval("rS") == R.inv() * S
    assert word_eval("") == IDENTITY
    with pytest.raises(ValueError):
        word_eval("RXS")


def test_coset_enumerate_closes_at_96():
    reps = coset_enumerate()
    assert len(reps) == 96
    with pytest.raises(NonClosure):
        coset_enumerate(max_cosets=50)


@pytest.fixture(scope="module")
def table() -> CosetTable:
    return load_table()


def test_table_shape(table):
    assert len(table) == 96
    assert table.rep(1) == IDENTITY
    assert table.rep(24) == R
    assert table.rep(41).entries() == (4, 1, -1, 0)
    assert table.by_index[2].word == "rSRSR"


def test_table_verification_report(table):
    rep = table.verify()
    assert rep["ok"]
    assert rep["rows"] == 96
    assert rep["enumeration_count"] == 96
    assert rep["sign_flipped_rows"] == []


def test_coset_index(table):
    assert table.coset_index(IDENTITY) == 1
    assert table.coset_index(R) == 24
    assert table.coset_index(S) == 24  # S R^{-1} is lower unipotent, in K
    assert table.coset_index(-R) == 24
    # left multiplication by K members never changes the coset
    rng = random.Random(7)
    k_gens = [GroupElem(1, 15, 0, 1), GroupElem(1, 0, 1, 1), -IDENTITY]
    for _ in range(25):
        k = IDENTITY
        for _ in range(rng.randint(1, 6)):
            k = k * rng.choice(k_gens)
        n = rng.randint(1, 96)
        assert table.coset_index(k * table.rep(n)) == n


def test_avatar_apply_single_letters(table):
    # stepping by one letter matches the table columns
    for row in table.rows:
        assert table.avatar_apply(row.n, "R") == row.n_r
        assert table.avatar_apply(row.n, "S") == row.n_s
        assert table.avatar_apply(row.n_r, "r") == row.n
    # chase of a tabulated word from the identity coset
    assert table.avatar_apply(1, "r") == 15
    assert table.avatar_apply(15, "S") == 11
    assert table.avatar_apply(1, "rSRSR") == 2


def test_avatar_apply_matches_matrix_route(table):
    rng = random.Random(11)
    for _ in range(30):
        w = "".join(rng.choice("RrS") for _ in range(rng.randint(0, 10)))
        n = rng.randint(1, 96)
        assert (table.avatar_apply(n, w)
                == table.coset_index(table.rep(n) * word_eval(w)))


def test_verify_stabilizer(table):
    assert table.verify_stabilizer(41, SHIFT_ELEMENT)
    assert not table.verify_stabilizer(1, SHIFT_ELEMENT)
    # conjugate explicitly, as an independent check
    p = table.rep(41)
    assert in_k(p * SHIFT_ELEMENT * p.inv())
    assert (p * SHIFT_ELEMENT * p.inv()).entries() == (-29, -105, 21, 76)


def test_shift_word_lands_on_shift_coset(table):
    n = table.avatar_apply(41, SHIFT_WORD)
    assert n == 41  # the index-41 avatar is fixed by the shift element
    assert table.avatar_apply(1, SHIFT_WORD) != 1
