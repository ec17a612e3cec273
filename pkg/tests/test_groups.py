import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pskew.groups import FiniteGroup, FreeGroup, FreeWord, GroupTableError, cyclic_group, group_from_json, word_multiply


def test_cyclic_examples():
    assert cyclic_group(1).order == 1
    assert cyclic_group(4).mul(1, 3) == 0
    assert cyclic_group(2).mul(1, 1) == 0
    with pytest.raises(ValueError):
        cyclic_group(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_cyclic_group_axioms(n):
    G = cyclic_group(n)
    for s in G.elements():
        assert G.mul(G.identity, s) == G.mul(s, G.identity) == s
        assert G.mul(s, G.inv(s)) == G.identity
        for t in G.elements():
            for u in G.elements():
                assert G.mul(G.mul(s, t), u) == G.mul(s, G.mul(t, u))


def test_klein_four_from_table():
    V = FiniteGroup(((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)))
    assert all(V.inv(t) == t for t in V.elements())
    assert V.to_json() == {"type": "table", "mul": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]}


@pytest.mark.parametrize("table", [
    ((0, 1), (1, 1)),                  # row not a permutation
    ((1, 0), (0, 1)),                  # identity not at index 0
    ((0, 1, 2), (1, 2, 0), (2, 1, 0)),  # latin-ish but not associative
    ((0, 1), (1,)),                    # ragged
])
def test_bad_tables_rejected(table):
    with pytest.raises(GroupTableError):
        FiniteGroup(table)


def test_group_json_round_trip():
    assert group_from_json({"type": "cyclic", "n": 3}) == cyclic_group(3)
    assert group_from_json(cyclic_group(3).to_json()) == cyclic_group(3)
    with pytest.raises(ValueError):
        group_from_json({"type": "dihedral", "n": 4})


a, b = FreeWord.path("a"), FreeWord.path("b")


def test_word_multiply_examples():
    assert word_multiply(a, a.inverse()).is_identity()
    assert word_multiply(a * b.inverse(), b) == a
    assert word_multiply(FreeWord(), a * b) == a * b


def test_word_printing():
    assert str(a * b.inverse()) == "ab^-1"
    assert str(FreeWord()) == "1"


def test_signs_validated():
    with pytest.raises(ValueError):
        FreeWord((("a", 2),))


letters = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=8)
words = letters.map(FreeWord)


@settings(max_examples=200)
@given(words, words, words)
def test_free_multiplication_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@settings(max_examples=200)
@given(words)
def test_inverse_and_reduction(w):
    assert (w * w.inverse()).is_identity()
    assert w.inverse() == FreeWord(tuple((s, -e) for s, e in reversed(w.letters)))
    assert FreeWord(w.letters) == w
    assert all(not (x[0] == y[0] and x[1] == -y[1]) for x, y in zip(w.letters, w.letters[1:]))


def test_free_group_surface():
    G = FreeGroup(("a", "b"))
    assert G.identity == FreeWord()
    assert G.mul(a, G.inv(a)) == G.identity
