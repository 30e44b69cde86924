from bvformality import barcx
from bvformality.homology import homology_ranks, wedge_compose
from bvformality.liealg import t, t_tilde


def test_pbw_dims_match_symmetric_algebra():
    for labels, W in (("ab", 4), ("abc", 4)):
        L = t_tilde(labels, W)
        U = barcx.TruncatedUEA(L, W)
        assert U.graded_dims() == barcx.symmetric_algebra_dims(L.graded_dims(), W)


def test_commutator_in_uea_is_lie_bracket():
    L = t_tilde("abc", 3)
    U = barcx.TruncatedUEA(L, 3)
    x, y = L.gen(t("a", "b")), L.gen(t("b", "c"))
    ux, uy = U.from_lie(x), U.from_lie(y)
    comm = U.mul(ux, uy)
    for k, v in U.mul(uy, ux).items():
        comm[k] = comm.get(k, 0) - v
    comm = {k: v for k, v in comm.items() if v}
    assert comm == U.from_lie(L.bracket(x, y))


def test_bar_d_squared_and_ranks():
    U = barcx.TruncatedUEA(t_tilde("ab", 3), 3)
    B = barcx.bar_complex(U, 3)
    assert B.check_d_squared() == []
    ranks = {kw: r for kw, r in homology_ranks(B).items() if r}
    assert ranks == {(0, 0): 1, (1, 1): 3, (2, 2): 3, (3, 3): 1}


def test_shuffle_counts_and_associativity():
    assert sum(1 for _ in barcx.shuffle_sign_pairs(2, 2)) == 6
    p, q, r = {("x",): 1}, {("y", "z"): 1}, {("w",): 1}
    ident = lambda u: u
    lhs = barcx.em_shuffle(barcx.em_shuffle(p, q, ident, ident), r, ident, ident)
    rhs = barcx.em_shuffle(p, barcx.em_shuffle(q, r, ident, ident), ident, ident)
    assert lhs == rhs


def test_antisym_is_chain_map_and_compatible_with_composition():
    for labels in ("ab", "abc"):
        assert barcx.check_antisym_chain_map(t_tilde(labels, 3), 3) == []
    LA, LB = t_tilde("ab", 2), t_tilde("cd", 2)
    (x,) = LA.gen(t("a", "b"))
    (y,) = LB.gen(t("c", "d"))
    lhs = barcx.bar_compose(barcx.antisym_embed({(x,): 1}), "a", barcx.antisym_embed({(y,): 1}), "ab", "cd", 2)
    rhs = barcx.antisym_embed(wedge_compose({(x,): 1}, "a", {(y,): 1}, "ab", "cd", 2))
    assert lhs == rhs


def test_bar_agrees_with_ce():
    for n in (1, 2):
        rep = barcx.verify_bar_quasiiso([str(i) for i in range(n)], 3)
        assert rep["passed"], rep


def test_truncation_stability():
    assert barcx.truncation_stability("ab", 3)["passed"]
