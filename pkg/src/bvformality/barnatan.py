"""Truncated completed enveloping algebras, a rational associator and the functor phi.

Conventions (products read left to right, ``phi(f then g) = phi(f) phi(g)``):

* ``beta_{X,Y}: (XY) -> (YX)`` maps to ``exp(e t_XY / 2)`` for a crossing of sign e;
* ``alpha_{X,Y,Z}: ((XY)Z) -> (X(YZ))`` maps to ``Phi(t_XY, t_YZ)``;
* ``tau_x`` maps to ``exp(s_x)``;

where ``t_XY`` is the sum of ``t_xy`` over ``x in X, y in Y``.  With these,
a morphism-level functor exists iff

    Phi^{123} Phi^{1,23,4} Phi^{234} = Phi^{12,3,4} Phi^{1,2,34}
    exp((t12+t13)/2) = Phi(t12,t23)^-1 e^{t12/2} Phi(t12,t13) e^{t13/2} Phi(t23,t13)^-1
    exp((t13+t23)/2) = Phi(t12,t23) e^{t23/2} Phi(t13,t23)^-1 e^{t13/2} Phi(t13,t12)
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .barcx import TruncatedUEA, induced_algebra_map
from .exactla import SparseMatrix, add_scaled, solve
from .liealg import (GradedLieAlgebra, lyndon_basis, s, sort_labels, standard_factorization, t, t_plain,
                     t_tilde)
from .operadcore import insert_map
from .ribbons import (RibbonBraidMorphism, Tree, cable, full_twist, leaves, random_morphism, random_rewrite,
                      rb_equal)

UElement = Dict[tuple, Fraction]
LieWord = Tuple[str, ...]
ALPHABET = ("A", "B")


# --------------------------------------------------------------------------
# truncated algebra context


class Completed:
    """``U(t~_A)`` (or ``U(t_A)``) modulo weight > N with exp, log and inverses."""

    def __init__(self, A, N: int, central: bool = True):
        if N < 1:
            raise ValueError("truncation degree must be at least 1")
        self.labels = sort_labels(A)
        self.N = N
        self.central = central
        self.L: GradedLieAlgebra = t_tilde(self.labels, N) if central else t_plain(self.labels, N)
        self.U = TruncatedUEA(self.L, N)

    # -- elements
    def one(self) -> UElement:
        return {(): Fraction(1)}

    def lie(self, v: Mapping[int, object]) -> UElement:
        return self.U.from_lie(v)

    def t_group(self, X: Sequence[str], Y: Sequence[str]) -> Dict[int, Fraction]:
        out: dict = {}
        for x in X:
            for y in Y:
                if x == y:
                    raise ValueError("grouped labels overlap")
                add_scaled(out, self.L.gen(t(x, y)))
        return out

    def s_vec(self, x: str) -> Dict[int, Fraction]:
        return self.L.gen(s(x))

    def mul(self, *xs: Mapping[tuple, object]) -> UElement:
        acc = self.one()
        for x in xs:
            acc = self.U.mul(acc, x)
        return acc

    def add(self, x, y, c=1) -> UElement:
        out = dict(x)
        add_scaled(out, y, c)
        return out

    def _power_series(self, x: Mapping[tuple, object], coeffs) -> UElement:
        if x.get((), 0):
            raise ValueError("argument must lie in the augmentation ideal")
        out: dict = {}
        power = self.one()
        for k in range(self.N + 1):
            c = coeffs(k)
            if c:
                add_scaled(out, power, c)
            power = self.U.mul(power, x)
            if not power:
                break
        return out

    def exp(self, x: Mapping[tuple, object]) -> UElement:
        fact = [Fraction(1)]
        for k in range(1, self.N + 1):
            fact.append(fact[-1] * k)
        return self._power_series(x, lambda k: 1 / fact[k])

    def log(self, u: Mapping[tuple, object]) -> UElement:
        if u.get((), 0) != 1:
            raise ValueError("log needs an element with counit 1")
        y = dict(u)
        del y[()]
        return self._power_series(y, lambda k: Fraction((-1) ** (k + 1), k) if k else 0)

    def inverse(self, u: Mapping[tuple, object]) -> UElement:
        c = Fraction(u.get((), 0))
        if not c:
            raise ValueError("element is not invertible (zero counit)")
        y = {m: -v / c for m, v in u.items() if m != ()}
        return {m: v / c for m, v in self._power_series(y, lambda k: 1).items()}

    def weight_part(self, x: Mapping[tuple, object], w: int) -> UElement:
        return {m: c for m, c in x.items() if self.U.weight(m) == w}

    def is_lie(self, x: Mapping[tuple, object]) -> bool:
        return all(len(m) == 1 for m in x)

    def render(self, x: Mapping[tuple, object]) -> str:
        if not x:
            return "0"
        parts = []
        for m in sorted(x, key=lambda m: (self.U.weight(m), m)):
            body = "*".join(self.L.describe(i) for i in m) if m else "1"
            parts.append(f"{x[m]}*{body}")
        return " + ".join(parts)


# --------------------------------------------------------------------------
# the associator


def lie_words(N: int) -> Dict[int, List[LieWord]]:
    return {w: [tuple(x) for x in lyndon_basis(ALPHABET, w)] for w in range(1, N + 1)}


def lie_value(L: GradedLieAlgebra, word: LieWord, X: Mapping[int, object], Y: Mapping[int, object]) -> Dict[int, Fraction]:
    """Standard bracketing of a Lyndon word in A, B evaluated at A = X, B = Y."""
    if len(word) == 1:
        return dict(X if word[0] == "A" else Y)
    u, v = standard_factorization(word)
    return L.bracket(lie_value(L, u, X, Y), lie_value(L, v, X, Y), truncate=True)


@dataclass
class AssociatorTruncation:
    """``Phi = exp(sum c_w P(w))`` over Lyndon words in A < B, modulo weight > N."""

    N: int
    log_coefficients: Dict[LieWord, Fraction] = field(default_factory=dict)
    residuals: Dict[str, int] = field(default_factory=dict)

    def coefficient(self, word: Union[str, Sequence[str]]) -> Fraction:
        return self.log_coefficients.get(tuple(word), Fraction(0))

    def restrict(self, N: int) -> "AssociatorTruncation":
        return AssociatorTruncation(N, {w: c for w, c in self.log_coefficients.items() if len(w) <= N and c})

    def evaluate(self, ctx: Completed, X: Mapping[int, object], Y: Mapping[int, object]) -> UElement:
        psi: dict = {}
        for w, c in self.log_coefficients.items():
            if c and len(w) <= ctx.N:
                add_scaled(psi, lie_value(ctx.L, w, X, Y), c)
        return ctx.exp(ctx.lie(psi))

    def to_json(self) -> dict:
        by_weight: Dict[str, list] = {}
        for w in sorted(self.log_coefficients, key=lambda w: (len(w), w)):
            c = self.log_coefficients[w]
            if c:
                by_weight.setdefault(str(len(w)), []).append(["".join(w), str(c)])
        return {"N": self.N, "alphabet": list(ALPHABET), "log_phi": by_weight}

    @classmethod
    def from_json(cls, data: Union[str, Mapping]) -> "AssociatorTruncation":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = {}
        for _, items in data.get("log_phi", {}).items():
            for word, c in items:
                coeffs[tuple(word)] = Fraction(c)
        return cls(int(data["N"]), coeffs)


def associator_equations(Phi: AssociatorTruncation, N: int) -> Dict[str, UElement]:
    """Residuals (LHS - RHS) of the pentagon and both hexagons modulo weight > N."""
    c3 = Completed("123", N, central=False)
    c4 = Completed("1234", N, central=False)
    T3 = lambda X, Y: c3.t_group(X, Y)
    T4 = lambda X, Y: c4.t_group(X, Y)
    P4 = lambda X, Y: Phi.evaluate(c4, X, Y)
    P3 = lambda X, Y: Phi.evaluate(c3, X, Y)
    half = Fraction(1, 2)

    lhs = c4.mul(P4(T4("1", "2"), T4("2", "3")), P4(T4("1", "23"), T4("23", "4")), P4(T4("2", "3"), T4("3", "4")))
    rhs = c4.mul(P4(T4("12", "3"), T4("3", "4")), P4(T4("1", "2"), T4("2", "34")))
    pent = c4.add(lhs, rhs, -1)

    def e(X, Y):
        return c3.exp(c3.lie({i: half * v for i, v in T3(X, Y).items()}))

    inv = c3.inverse
    h1l = e("1", "23")
    h1r = c3.mul(inv(P3(T3("1", "2"), T3("2", "3"))), e("1", "2"), P3(T3("1", "2"), T3("1", "3")), e("1", "3"),
                 inv(P3(T3("2", "3"), T3("1", "3"))))
    h2l = e("12", "3")
    h2r = c3.mul(P3(T3("1", "2"), T3("2", "3")), e("2", "3"), inv(P3(T3("1", "3"), T3("2", "3"))), e("1", "3"),
                 P3(T3("1", "3"), T3("1", "2")))
    return {
        "pentagon": pent,
        "hexagon1": c3.add(h1l, h1r, -1),
        "hexagon2": c3.add(h2l, h2r, -1),
    }


def check_associator(Phi: AssociatorTruncation, N: Optional[int] = None) -> dict:
    """Exact residuals of pentagon and hexagons, plus group-likeness and evenness."""
    N = Phi.N if N is None else N
    res = associator_equations(Phi, N)
    odd = sorted("".join(w) for w, c in Phi.log_coefficients.items() if c and len(w) % 2)
    c3 = Completed("123", N, central=False)
    value = Phi.evaluate(c3, c3.L.gen(t("1", "2")), c3.L.gen(t("2", "3")))
    group_like = c3.is_lie(c3.log(value))
    report = {
        "N": N,
        "residual_terms": {k: len(v) for k, v in res.items()},
        "even": not odd,
        "odd_terms": odd,
        "group_like": group_like,
    }
    report["passed"] = all(v == 0 for v in report["residual_terms"].values()) and report["even"] and report["group_like"]
    return report


def solve_associator(N: int) -> AssociatorTruncation:
    """Even group-like associator modulo weight > N, solved degree by degree.

    At degree d the weight-d parts of the residuals are affine in the
    degree-d unknowns; the exact solution with free parameters zero is kept.
    """
    if not 1 <= N <= 4:
        raise ValueError("associator degree must be between 1 and 4")
    words = lie_words(N)
    Phi = AssociatorTruncation(N)
    for d in range(1, N + 1):
        unknowns = words[d] if d % 2 == 0 else []
        trial = AssociatorTruncation(d, dict(Phi.log_coefficients))
        base = _weight_residuals(trial, d)
        if unknowns:
            columns = []
            for w in unknowns:
                trial.log_coefficients[w] = Fraction(1)
                r = _weight_residuals(trial, d)
                trial.log_coefficients[w] = Fraction(0)
                columns.append({k: r.get(k, 0) - base.get(k, 0) for k in set(r) | set(base)})
            keys = sorted(set().union(*columns, base))
            row = {k: i for i, k in enumerate(keys)}
            m = SparseMatrix.from_columns(len(keys), [{row[k]: v for k, v in col.items() if v} for col in columns])
            rhs = [-base.get(k, 0) for k in keys]
            sol = solve(m, rhs)
            if sol is None:
                raise ArithmeticError(f"associator equations are inconsistent in degree {d}")
            for w, c in zip(unknowns, sol):
                if c:
                    Phi.log_coefficients[w] = c
        elif base:
            raise ArithmeticError(f"associator equations are inconsistent in degree {d}")
    report = check_associator(Phi, N)
    Phi.residuals = report["residual_terms"]
    return Phi


def _weight_residuals(Phi: AssociatorTruncation, d: int) -> Dict[tuple, Fraction]:
    res = associator_equations(Phi, d)
    out = {}
    for name, x in res.items():
        for m, c in x.items():
            if len(m) and c:
                out[(name, m)] = c
    # every lower weight already vanishes, so only weight d survives
    return out


# --------------------------------------------------------------------------
# BCH identity check


def bch(ctx: Completed, x: Mapping[int, object], y: Mapping[int, object]) -> Dict[int, Fraction]:
    """Baker-Campbell-Hausdorff series through weight four (x, y of positive weight)."""
    br = lambda u, v: ctx.L.bracket(u, v, truncate=True)
    out: dict = {}
    add_scaled(out, x)
    add_scaled(out, y)
    xy = br(x, y)
    add_scaled(out, xy, Fraction(1, 2))
    add_scaled(out, br(x, xy), Fraction(1, 12))
    add_scaled(out, br(y, br(y, x)), Fraction(1, 12))
    add_scaled(out, br(y, br(x, xy)), Fraction(-1, 24))
    return out


def check_bch(ctx: Completed, x: Mapping[int, object], y: Mapping[int, object]) -> bool:
    if ctx.N > 4:
        raise ValueError("the BCH check is implemented through weight four")
    lhs = ctx.mul(ctx.exp(ctx.lie(x)), ctx.exp(ctx.lie(y)))
    rhs = ctx.exp(ctx.lie(bch(ctx, x, y)))
    return lhs == rhs


# --------------------------------------------------------------------------
# phi


Move = Tuple[str, Tuple[str, ...], Tuple[str, ...], Tuple[str, ...]]


def _rotate_to_left_comb(tree: Tree) -> Tuple[Tree, List[Move]]:
    moves: List[Move] = []

    def rec(tr):
        if isinstance(tr, str):
            return tr
        left, right = tr
        while not isinstance(right, str):
            r1, r2 = right
            moves.append(("alpha_inv", leaves(left), leaves(r1), leaves(r2)))
            left, right = (left, r1), r2
        return (rec(left), right)

    return rec(tree), moves


def _rotate_to_right_comb(tree: Tree) -> Tuple[Tree, List[Move]]:
    moves: List[Move] = []

    def rec(tr):
        if isinstance(tr, str):
            return tr
        left, right = tr
        while not isinstance(left, str):
            l1, l2 = left
            moves.append(("alpha", leaves(l1), leaves(l2), leaves(right)))
            left, right = l1, (l2, right)
        return (left, rec(right))

    return rec(tree), moves


class PhiEvaluator:
    """``phi`` for one label set, associator and truncation, with caches."""

    def __init__(self, A, Phi: AssociatorTruncation, N: int, crossing_sign: int = 1):
        self.ctx = Completed(A, N, central=True)
        self.Phi = Phi
        self.N = N
        self.sign = crossing_sign
        self._cache: Dict[tuple, UElement] = {}

    def _alpha(self, X, Y, Z, inverse: bool) -> UElement:
        key = ("alpha", X, Y, Z, inverse)
        if key not in self._cache:
            c = self.ctx
            val = self.Phi.evaluate(c, c.t_group(X, Y), c.t_group(Y, Z))
            self._cache[key] = c.inverse(val) if inverse else val
        return self._cache[key]

    def _beta(self, X, Y, e: int) -> UElement:
        key = ("beta", X, Y, e)
        if key not in self._cache:
            c = self.ctx
            v = c.t_group(X, Y)
            self._cache[key] = c.exp(c.lie({i: Fraction(e * self.sign, 2) * x for i, x in v.items()}))
        return self._cache[key]

    def moves_image(self, moves: Sequence[Move]) -> UElement:
        acc = self.ctx.one()
        for kind, X, Y, Z in moves:
            acc = self.ctx.mul(acc, self._alpha(X, Y, Z, kind == "alpha_inv"))
        return acc

    def __call__(self, m: RibbonBraidMorphism, strategy: str = "left") -> UElement:
        c = self.ctx
        if set(m.labels) != set(c.labels):
            raise ValueError("morphism labels differ from the evaluator's label set")
        comb = _rotate_to_left_comb if strategy == "left" else _rotate_to_right_comb
        if strategy not in ("left", "right"):
            raise ValueError(f"unknown strategy {strategy!r}")
        _, into = comb(m.domain)
        _, out_of = comb(m.codomain)
        acc = self.moves_image(into)
        seq = list(leaves(m.domain))
        n = len(seq)
        for x in m.word:
            i = abs(x) - 1
            e = 1 if x > 0 else -1
            a, b = (seq[i],), (seq[i + 1],)
            if strategy == "left":
                if i == 0:
                    step = self._beta(a, b, e)
                else:
                    C = tuple(seq[:i])
                    step = c.mul(self._alpha(C, a, b, False), self._beta(a, b, e), self._alpha(C, b, a, True))
            else:
                if i == n - 2:
                    step = self._beta(a, b, e)
                else:
                    R = tuple(seq[i + 2:])
                    step = c.mul(self._alpha(a, b, R, True), self._beta(a, b, e), self._alpha(b, a, R, False))
            acc = c.mul(acc, step)
            seq[i], seq[i + 1] = seq[i + 1], seq[i]
        twist: dict = {}
        for lab, k in m.framing_items:
            add_scaled(twist, c.s_vec(lab), k)
        if twist:
            acc = c.mul(acc, c.exp(c.lie(twist)))
        return c.mul(acc, c.inverse(self.moves_image(out_of)))


def phi(m: RibbonBraidMorphism, Phi: AssociatorTruncation, N: Optional[int] = None, strategy: str = "left",
        crossing_sign: int = 1) -> UElement:
    N = Phi.N if N is None else N
    return PhiEvaluator(m.labels, Phi, N, crossing_sign)(m, strategy)


def compose_images(u: Mapping[tuple, object], a, v: Mapping[tuple, object], A, B, N: int) -> UElement:
    """``o_a`` on completed enveloping algebras via the insertion map."""
    A, B = sort_labels(A), sort_labels(B)
    f = insert_map(a, A, B, N)
    target = Completed(sort_labels([x for x in A if x != str(a)] + list(B)), N)
    apply = induced_algebra_map(f, target.U)
    return target.mul(apply(0, u), apply(1, v))


# --------------------------------------------------------------------------
# verification


@dataclass
class PhiReport:
    passed: bool = True
    counts: Dict[str, int] = field(default_factory=dict)
    failures: List[dict] = field(default_factory=list)

    def record(self, kind: str, ok: bool, payload: Optional[dict] = None):
        self.counts[kind] = self.counts.get(kind, 0) + 1
        if not ok:
            self.passed = False
            if len(self.failures) < 20:
                self.failures.append({"check": kind, **(payload or {})})

    def as_dict(self) -> dict:
        return {"passed": self.passed, "counts": dict(sorted(self.counts.items())), "failures": self.failures}


_TREES = {
    1: ["a"],
    2: [("a", "b"), ("b", "a")],
    3: [(("a", "b"), "c"), ("a", ("b", "c")), (("b", "c"), "a"), ("c", ("a", "b"))],
}


def _evaluator(cache: dict, labels, Phi, N) -> PhiEvaluator:
    key = tuple(labels)
    if key not in cache:
        cache[key] = PhiEvaluator(labels, Phi, N)
    return cache[key]


def verify_phi_functoriality(Phi: AssociatorTruncation, N: int = 3, samples: int = 25, seed: int = 0,
                             cabling_samples: int = 10) -> dict:
    """Equal morphisms have equal images; cabling matches composition; images are group-like."""
    rng = random.Random(seed)
    report = PhiReport()
    evals: dict = {}

    # named relation instances
    art1 = RibbonBraidMorphism.make((("a", "b"), "c"), (("c", "b"), "a"), (1, 2, 1))
    art2 = RibbonBraidMorphism.make((("a", "b"), "c"), (("c", "b"), "a"), (2, 1, 2))
    ev = _evaluator(evals, "abc", Phi, N)
    report.record("equal_pairs", ev(art1) == ev(art2), {"pair": "artin"})
    pent = _pentagon_loop()
    ev4 = _evaluator(evals, "abcd", Phi, N)
    report.record("pentagon_loop", ev4.moves_image(pent) == ev4.ctx.one())
    dt = RibbonBraidMorphism.make((("a", "b"), "c"), (("a", "b"), "c"), full_twist(3))
    full = ev.ctx.exp(ev.ctx.lie(_sum(ev.ctx.t_group("a", "b"), ev.ctx.t_group("a", "c"), ev.ctx.t_group("b", "c"))))
    report.record("full_twist", ev(dt) == full)

    # sampled equal pairs
    for k in range(samples):
        n = rng.randint(1, 3)
        labels = "abc"[:n]
        dom = rng.choice(_TREES[n])
        m1 = random_morphism(dom, rng.randint(0, 6), rng)
        w = m1.word
        for _ in range(5):
            w = random_rewrite(w, n, rng)
        m2 = RibbonBraidMorphism.make(m1.domain, m1.codomain, w, m1.framing)
        if not rb_equal(m1, m2):
            report.record("equal_pairs", False, {"reason": "rewrite produced an unequal pair"})
            continue
        ev = _evaluator(evals, labels, Phi, N)
        i1, i2 = ev(m1), ev(m2)
        report.record("equal_pairs", i1 == i2, {"m1": str(m1), "m2": str(m2)})
        report.record("group_like", ev.ctx.is_lie(ev.ctx.log(i1)), {"m": str(m1)})
        if k < 20:
            report.record("strategy_independence", i1 == ev(m1, "right"), {"m": str(m1)})

    # cabling
    pq = ("p", "q")
    tau = RibbonBraidMorphism.make("a", "a", (), {"a": 1})
    idpq = RibbonBraidMorphism.make(pq, pq)
    lhs = phi(cable(tau, "a", idpq), Phi, N)
    c = Completed("pq", N)
    expected = c.exp(c.lie(_sum(c.s_vec("p"), c.s_vec("q"), c.t_group("p", "q"))))
    rhs = compose_images(phi(tau, Phi, N), "a", phi(idpq, Phi, N), "a", "pq", N)
    report.record("cabling", lhs == expected == rhs, {"case": "twist"})
    for _ in range(cabling_samples - 1):
        na = rng.randint(1, 2)
        nb = rng.randint(1, 2)
        A, B = "ac"[:na], "pq"[:nb]
        m = random_morphism(rng.choice(_relabelled(_TREES[na], A)), rng.randint(0, 4), rng, max_framing=1)
        inner = random_morphism(rng.choice(_relabelled(_TREES[nb], B)), rng.randint(0, 3), rng, max_framing=1)
        a = rng.choice(A)
        got = phi(cable(m, a, inner), Phi, N)
        want = compose_images(phi(m, Phi, N), a, phi(inner, Phi, N), A, B, N)
        report.record("cabling", got == want, {"m": str(m), "a": a, "n": str(inner)})
    return report.as_dict()


def _sum(*vs):
    out: dict = {}
    for v in vs:
        add_scaled(out, v)
    return out


def _relabelled(trees, labels):
    sigma = dict(zip("abc", labels))

    def ren(tr):
        return sigma[tr] if isinstance(tr, str) else (ren(tr[0]), ren(tr[1]))

    return [ren(tr) for tr in trees]


def _pentagon_loop() -> List[Move]:
    """Five reassociations around the pentagon, returning to (((ab)c)d)."""
    a, b, c, d = ("a",), ("b",), ("c",), ("d",)
    return [
        ("alpha", a + b, c, d),  # (((ab)c)d) -> ((ab)(cd))
        ("alpha", a, b, c + d),  # -> (a(b(cd)))
        ("alpha_inv", b, c, d),  # -> (a((bc)d))
        ("alpha_inv", a, b + c, d),  # -> ((a(bc))d)
        ("alpha_inv", a, b, c),  # -> (((ab)c)d)
    ]


def verify_homology_identity(Phi: AssociatorTruncation, N: int = 1, crossing_sign: int = 1) -> dict:
    """Degree-one data of phi on the generators: tau_a, identity on (ab), beta squared."""
    if N < 1:
        raise ValueError("N must be at least 1")
    checks = []
    ev1 = PhiEvaluator("a", Phi, N, crossing_sign)
    c1 = ev1.ctx
    img = ev1(RibbonBraidMorphism.make("a", "a", (), {"a": 1}))
    part = c1.weight_part(img, 1)
    want = c1.lie(c1.s_vec("a"))
    coef = part.get(next(iter(want)), Fraction(0))
    checks.append({"name": "tau_a -> 1 + s_a", "coefficient": str(coef), "passed": part == want and img.get(()) == 1})

    ev2 = PhiEvaluator("ab", Phi, N, crossing_sign)
    c2 = ev2.ctx
    img = ev2(RibbonBraidMorphism.make(("a", "b"), ("a", "b")))
    checks.append({"name": "id_(ab) -> 1", "coefficient": str(img.get((), 0)), "passed": img == c2.one()})

    img = ev2(RibbonBraidMorphism.make(("a", "b"), ("a", "b"), (1, 1)))
    part = c2.weight_part(img, 1)
    want = c2.lie(c2.t_group("a", "b"))
    coef = part.get(next(iter(want)), Fraction(0))
    checks.append({"name": "beta^2 -> 1 + t_ab", "coefficient": str(coef), "passed": part == want and img.get(()) == 1})
    return {"N": N, "crossing_sign": crossing_sign, "passed": all(c["passed"] for c in checks), "checks": checks}
