import random

from hypothesis import given, strategies as st

from bvformality import bvoperad as B


def nf(text):
    return B.render_element(B.parse_bv(text))


def test_basis_counts():
    for n, bv, g in ((1, 2, 1), (2, 8, 2), (3, 48, 6), (4, 384, 24)):
        labels = "abcd"[:n]
        assert len(B.bv_basis(labels)) == bv == B.expected_bv_dim(n)
        assert len(B.g_basis(labels)) == g


def test_rewrite_examples():
    assert nf("Δ(a·b)") == "a·Δb + [a,b] + Δa·b"
    assert nf("[a,b·c]") == "[a,b]·c + [a,c]·b"
    assert B.parse_bv("[b,Δa]") == -B.parse_bv("[Δa,b]")
    assert nf("ΔΔa") == "0"


def test_degrees():
    assert B.bv_degree(B.parse_bv("[a,b]")) == 1
    assert B.bv_degree(B.parse_bv("Δa·b")) == 1
    assert B.bv_degree(B.parse_bv("a·b")) == 0
    assert B.bv_degree(B.parse_bv("a·b") + B.parse_bv("[a,b]")) == "inhomogeneous"


def test_render_parse_round_trip_on_basis():
    for m in B.bv_basis("abc"):
        text = B.render_monomial(m)
        assert B.render_element(B.parse_bv(text, "abc")) == text


seeds = st.integers(0, 10 ** 6)


@given(seeds)
def test_delta_squares_to_zero(seed):
    rng = random.Random(seed)
    x = B.random_element("abc"[: rng.randint(1, 3)], rng)
    assert not B.bv_delta(B.bv_delta(x)).terms


@given(seeds)
def test_rewrite_orders_agree(seed):
    rng = random.Random(seed)
    e = B.random_expression("abc"[: rng.randint(1, 3)], rng)
    assert B.bv_normal_form(e, order=B.LEFT) == B.bv_normal_form(e, order=B.RIGHT)


@given(seeds)
def test_delta_is_derivation_of_bracket(seed):
    rng = random.Random(seed)
    x = B.random_element("ab", rng)
    y = B.random_element("cd", rng)
    dx = B.bv_degree(x)
    if not isinstance(dx, int):
        return
    lhs = B.bv_delta(B.bv_bracket(x, y))
    rhs = B.bv_bracket(B.bv_delta(x), y) + (-1) ** (dx + 1) * B.bv_bracket(x, B.bv_delta(y))
    assert (lhs - rhs).terms == {}


def test_compose_example():
    assert B.render_element(B.bv_compose(B.parse_bv("[a,b]"), "a", B.parse_bv("c·d"))) == "[b,c]·d + [b,d]·c"


def test_laws_and_confluence():
    assert B.check_confluence(samples=200, max_arity=3, seed=3)["passed"]
    rep = B.check_bv_laws(max_arity=3, samples=60, seed=2)
    assert rep.passed, rep.failures[:3]
