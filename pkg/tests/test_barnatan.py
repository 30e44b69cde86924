from fractions import Fraction

from bvformality import barnatan as BN
from bvformality import ribbons as R


def test_associator_low_degree():
    Phi = BN.solve_associator(3)
    assert Phi.coefficient("AB") == Fraction(-1, 24)
    assert BN.check_associator(Phi)["passed"]
    assert not any(BN.solve_associator(1).log_coefficients.values())


def test_trivial_associator_fails_hexagon():
    rep = BN.check_associator(BN.AssociatorTruncation(2, {}))
    assert not rep["passed"]


def test_associator_json_round_trip():
    Phi = BN.solve_associator(3)
    assert BN.AssociatorTruncation.from_json(Phi.to_json()).log_coefficients == {
        w: c for w, c in Phi.log_coefficients.items() if c}


def test_exp_log_and_bch():
    ctx = BN.Completed("ab", 3)
    x = ctx.t_group("a", "b")
    y = ctx.s_vec("a")
    assert ctx.log(ctx.exp(ctx.lie(x))) == ctx.lie(x)
    u = ctx.exp(ctx.lie(x))
    assert ctx.mul(u, ctx.inverse(u)) == ctx.one()
    c3 = BN.Completed("abc", 3, central=False)
    assert BN.check_bch(c3, c3.t_group("a", "b"), c3.t_group("b", "c"))
    assert BN.check_bch(ctx, x, y)


def test_phi_of_identity_and_twist():
    Phi = BN.solve_associator(3)
    assert BN.phi(R.identity((("a", "b"), "c")), Phi) == BN.Completed("abc", 3).one()
    tau = R.RibbonBraidMorphism.make("a", "a", (), {"a": 1})
    ctx = BN.Completed("a", 3)
    assert BN.phi(tau, Phi) == ctx.exp(ctx.lie(ctx.s_vec("a")))


def test_functoriality():
    rep = BN.verify_phi_functoriality(BN.solve_associator(3), 3, samples=25, seed=0)
    assert rep["passed"], rep
    assert rep["counts"]["equal_pairs"] >= 25
    assert rep["counts"]["cabling"] >= 10


def test_functoriality_negative_control():
    rep = BN.verify_phi_functoriality(BN.AssociatorTruncation(3, {}), 3, samples=10, seed=0)
    assert not rep["passed"]


def test_homology_identity():
    Phi = BN.solve_associator(1)
    assert BN.verify_homology_identity(Phi, 1)["passed"]
    assert not BN.verify_homology_identity(Phi, 1, crossing_sign=-1)["passed"]
