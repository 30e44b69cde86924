from math import comb, factorial

from bvformality import homology as H
from bvformality.bvoperad import Leaf, parse_bv
from bvformality.liealg import s, t, t_plain, t_tilde


def test_wedge_signs():
    assert H.sort_wedge((2, 1)) == (-1, (1, 2))
    assert H.sort_wedge((1, 1))[1] is None


def test_d_squared_zero():
    for n in (2, 3):
        C = H.ce_complex(t_tilde("abc"[:n], 4), 4)
        assert C.check_d_squared() == []


def test_abelian_ranks_are_binomial():
    # t~ on two labels is abelian of dimension 3
    ranks = H.homology_ranks(H.ce_complex(t_tilde("ab", 3), 3))
    assert {k: r for (k, w), r in ranks.items() if r} == {k: comb(3, k) for k in range(4)}


def test_ce_differential_example():
    L = t_tilde("abc", 3)
    i, j = next(iter(L.gen(t("a", "b")))), next(iter(L.gen(t("a", "c"))))
    d = H.ce_boundary(L, {tuple(sorted((i, j))): 1})
    br = L.bracket(L.gen(t("a", "b")), L.gen(t("a", "c")))
    assert {k[0]: v for k, v in d.items()} in (br, {k: -v for k, v in br.items()})


def test_arnold_totals_for_plain_t():
    # Poincare polynomial of the configuration space: prod (1 + k x), total n!
    for n in (1, 2, 3):
        ranks = H.homology_ranks(H.ce_complex(t_plain([str(i) for i in range(n)], H.homology_window(n))))
        assert H.total_rank(ranks) == factorial(n)


def test_totals_and_window():
    for n, total in ((1, 2), (2, 8), (3, 48)):
        W = H.homology_window(n)
        ranks = H.homology_ranks(H.ce_complex(t_tilde("abc"[:n], W), W))
        assert H.total_rank(ranks) == total
        assert H.off_diagonal(ranks) == {}


def test_kunneth():
    for n in (1, 2, 3):
        assert H.kunneth_check(n)["passed"]


def test_bv_map_examples():
    labels, chain, deg = H.expression_to_chains(Leaf("a"), 2)
    assert labels == ("a",) and chain == {(): 1} and deg == 0
    L = t_tilde("ab", 2)
    (sa,) = L.gen(s("a"))
    assert H.bv_to_chains(parse_bv("Δa·b"), 2) == {(sa,): 1}
    (tab,) = L.gen(t("a", "b"))
    assert H.bv_to_chains(parse_bv("[a,b]"), 2) == {(tab,): 1}


def test_quasiiso_small():
    for n in (1, 2):
        rep = H.verify_bv_quasiiso("ab"[:n])
        assert rep.passed


def test_quasiiso_fails_when_window_too_small():
    rep = H.verify_bv_quasiiso("abc", 4).as_dict()
    assert not rep["passed"]
    assert rep["outside_window"]
