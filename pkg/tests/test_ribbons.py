import random

import pytest
from hypothesis import given, strategies as st

from bvformality import ribbons as R


def test_parse_render():
    w = R.parse_word("s1 s2^-1 s1")
    assert w == (1, -2, 1)
    assert R.render_word(w) == "s1 s2^-1 s1"
    with pytest.raises(ValueError):
        R.parse_word("s0")


def test_braid_relations():
    assert R.garside_equal((1, 2, 1), (2, 1, 2), 3)
    assert R.garside_equal((1, 3), (3, 1), 4)
    assert not R.garside_equal((1, 2), (2, 1), 3)
    assert R.garside_normal_form((1, -1), 2).is_identity()
    assert not R.garside_normal_form((1, 1), 2).is_identity()


def test_full_twist_is_central():
    d2 = R.full_twist(3)
    for g in (1, 2, -1):
        assert R.garside_equal(d2 + (g,), (g,) + d2, 3)


seeds = st.integers(0, 10 ** 6)


@given(seeds)
def test_garside_agrees_with_handle_reduction(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    w1 = R.random_word(n, rng.randint(0, 12), rng)
    w2 = R.random_rewrite(w1, n, rng) if rng.random() < 0.5 else R.random_word(n, rng.randint(0, 12), rng)
    assert R.garside_equal(w1, w2, n) == R.handle_equal(w1, w2)


@given(seeds)
def test_rewrites_preserve_class_and_permutation(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    w1 = R.random_word(n, rng.randint(0, 10), rng)
    w2 = R.random_rewrite(w1, n, rng)
    assert R.garside_equal(w1, w2, n)
    assert R.word_permutation(w1, n) == R.word_permutation(w2, n)


def test_pp_counts():
    assert [len(R.pp_enumerate("abcd"[:n])) for n in range(1, 5)] == [1, 2, 12, 120]


def test_cabling_examples():
    gens = R.parb_generators("a", "b", "c")
    tau = gens["tau"]
    inner = R.identity(("p", "q"))
    cab = R.cable(tau, "a", inner)
    assert R.rb_equal(cab, R.RibbonBraidMorphism.make(("p", "q"), ("p", "q"), (1, 1), {"p": 1, "q": 1}))
    cross = R.RibbonBraidMorphism.make(("a", "c"), ("c", "a"), (1,))
    cab = R.cable(cross, "a", inner)
    assert R.rb_equal(cab, R.RibbonBraidMorphism.make((("p", "q"), "c"), ("c", ("p", "q")), (2, 1)))


def test_compose_inverse_and_json():
    rng = random.Random(5)
    m = R.random_morphism((("a", "b"), "c"), 6, rng)
    assert R.rb_equal(R.rb_compose(R.rb_inverse(m), m), R.identity(m.domain))
    assert R.RibbonBraidMorphism.from_json(m.to_json()) == m
    other = R.random_morphism(m.codomain, 4, rng)
    with pytest.raises(ValueError):
        R.rb_compose(m, other)
