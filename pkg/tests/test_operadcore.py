import pytest

from bvformality import operadcore
from bvformality.liealg import s, t, t_tilde


def _sum(*vs):
    out = {}
    for v in vs:
        for k, c in v.items():
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def test_insert_on_generators():
    T = t_tilde("bcd", 3)
    L = t_tilde("ab", 3)
    img = operadcore.compose(L.gen(t("a", "b")), "a", {}, "ab", "cd", 3)
    assert img == _sum(T.gen(t("b", "c")), T.gen(t("b", "d")))
    img = operadcore.compose(L.gen(s("a")), "a", {}, "ab", "cd", 3)
    assert img == _sum(T.gen(s("c")), T.gen(s("d")), T.gen(t("c", "d")))
    img = operadcore.compose(L.gen(s("b")), "a", {}, "ab", "cd", 3)
    assert img == T.gen(s("b"))


def test_insert_maps_are_homomorphisms():
    for A, B in (("ab", "cd"), ("abc", "de"), ("ab", "cde")):
        M = operadcore.insert_map("a", A, B, 3)
        assert M.check_homomorphism() == []
        assert operadcore.check_relations_preserved(M, 0)
        assert operadcore.check_relations_preserved(M, 1)


def test_relabel_round_trip():
    L = t_tilde("abc", 3)
    x = L.bracket(L.gen(t("a", "b")), L.gen(t("b", "c")))
    y = operadcore.relabel({"a": "c", "b": "a", "c": "b"}, x, "abc", 3)
    back = operadcore.relabel({"c": "a", "a": "b", "b": "c"}, y, "abc", 3)
    assert back == x


def test_label_clash_rejected():
    with pytest.raises(ValueError):
        operadcore.insert_map("a", "ab", "bc", 3)
    with pytest.raises(ValueError):
        operadcore.insert_map("z", "ab", "cd", 3)


def test_operad_laws_pass():
    rep = operadcore.check_operad_laws(max_arity=3, W=3, samples=100, seed=1)
    assert rep.passed, rep.failures[:3]
    assert min(rep.counts.values()) > 0
