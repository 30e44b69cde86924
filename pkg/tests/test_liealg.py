import pytest
from hypothesis import given, strategies as st

from bvformality import liealg
from bvformality.liealg import FreeLieAlgebra, s, t


def test_lyndon_counts_match_witt():
    for k in range(1, 4):
        for w in range(1, 6):
            assert len(liealg.lyndon_words(k, w)) == liealg.witt_number(k, w)
    assert liealg.lyndon_basis("xy", 1) == [("x",), ("y",)]
    assert len(liealg.lyndon_basis("xy", 2)) == 1
    assert len(liealg.lyndon_basis("xy", 3)) == 2
    assert liealg.lyndon_words(0, 3) == []


def test_free_bracket_basics():
    F = FreeLieAlgebra()
    x, y = F.letter("x"), F.letter("y")
    assert F.bracket(x, x) == {}
    assert F.bracket(x, y) == {("x", "y"): 1}


words = st.lists(st.sampled_from("xyz"), min_size=1, max_size=3)


@given(words, words, words)
def test_free_jacobi(u, v, w):
    F = FreeLieAlgebra()
    a, b, c = ({tuple(p): 1} for p in (u, v, w))
    a, b, c = F.to_lyndon(F.expand(a)), F.to_lyndon(F.expand(b)), F.to_lyndon(F.expand(c))
    total = {}
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        for k, val in F.bracket(p, F.bracket(q, r)).items():
            total[k] = total.get(k, 0) + val
    assert all(v == 0 for v in total.values())


def test_quotient_dims():
    assert liealg.t_plain("abc", 4).graded_dims() == {1: 3, 2: 1, 3: 2, 4: 3}
    assert liealg.t_plain("abcd", 3).graded_dims() == {1: 6, 2: 4, 3: 10}
    assert liealg.t_tilde("abc", 3).graded_dims() == {1: 6, 2: 1, 3: 2}
    assert liealg.t_tilde("ab", 3).graded_dims() == {1: 3, 2: 0, 3: 0}
    assert liealg.t_tilde("a", 2).graded_dims() == {1: 1, 2: 0}


def test_witt_sum_oracle_agrees():
    for n in range(1, 5):
        W = 4 if n < 4 else 3
        assert liealg.t_plain([str(i) for i in range(n)], W).graded_dims() == liealg.witt_sum_dims(n, W)


def test_abelian_and_free_presentations():
    # relations are written over letter positions 0..k-1
    gens = ["x", "y", "z"]
    F = FreeLieAlgebra()
    rels = [F.bracket(F.letter(i), F.letter(j)) for i in range(3) for j in range(3) if i < j]
    assert liealg.nilpotent_quotient(gens, rels, 3).graded_dims() == {1: 3, 2: 0, 3: 0}
    assert liealg.nilpotent_quotient(["x", "y"], [], 3).graded_dims() == {1: 2, 2: 1, 3: 2}


def test_relations_and_jacobi_in_t_tilde():
    L = liealg.t_tilde("abc", 4)
    assert L.check_jacobi() == []
    assert L.bracket(L.gen(s("a")), L.gen(t("b", "c"))) == {}
    # [t_ab, t_ac + t_bc] = 0
    ab, ac, bc = L.gen(t("a", "b")), L.gen(t("a", "c")), L.gen(t("b", "c"))
    assert L.bracket(ab, ac) == {k: -v for k, v in L.bracket(ab, bc).items()}
    assert L.bracket(L.gen(t("a", "b")), L.gen(t("a", "c"))) != {}
    assert L.gen(t("b", "a")) == L.gen(t("a", "b"))


def test_empty_label_set_rejected():
    with pytest.raises(ValueError):
        liealg.t_tilde([], 2)
