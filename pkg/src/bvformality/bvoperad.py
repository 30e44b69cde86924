"""The BV operad and its Gerstenhaber suboperad in a canonical monomial basis.

A canonical monomial over a label set ``A`` is a graded-commutative product
of *blocks*; a block is a multilinear Lyndon word in the decorated letters
``a < Δa < b < Δb < ...`` and stands for its standard bracketing.  Every
label occurs in exactly one letter of exactly one block.

Sign table (homological degrees, letters ``a`` in degree 0):

* ``|Δx| = |x| + 1`` and ``|[x, y]| = |x| + |y| + 1``;
* products commute as ``xy = (-1)^{|x||y|} yx``;
* the bracket is graded Lie on the shifted space:
  ``[x, y] = -(-1)^{(|x|+1)(|y|+1)} [y, x]``, realised as the super
  commutator of the free associative algebra on letters of parity ``|x|+1``;
* ``[x, yz] = [x, y] z + (-1)^{(|x|+1)|y|} y [x, z]``;
* ``Δ(xy) = (-1)^{|x|} [x, y] + (Δx) y + (-1)^{|x|} x Δy``;
* ``Δ[x, y] = [Δx, y] + (-1)^{|x|+1} [x, Δy]`` and ``ΔΔ = 0``.

Operadic substitution of ``y`` into leaf ``a`` carries the Koszul sign
``(-1)^{|y| k}`` where ``k`` counts the ``Δ`` symbols and bracket commas
written to the left of ``a`` in the infix expression.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .exactla import add_scaled
from .liealg import FreeLieAlgebra, sort_labels, standard_factorization

Letter = Tuple[str, bool]
Block = Tuple[Letter, ...]
Monomial = Tuple[Block, ...]
Terms = Dict[Monomial, Fraction]

LEFT, RIGHT = "left", "right"


def letter_degree(x: Letter) -> int:
    return 1 if x[1] else 0


def block_degree(b: Block) -> int:
    return sum(1 for x in b if x[1]) + len(b) - 1


def monomial_degree(m: Monomial) -> int:
    return sum(block_degree(b) for b in m)


def monomial_labels(m: Monomial) -> Tuple[str, ...]:
    return tuple(sorted(x[0] for b in m for x in b))


_LIE = FreeLieAlgebra(parity=lambda x: 0 if x[1] else 1)


# --------------------------------------------------------------------------
# elements


class BVElement:
    """Finite linear combination of canonical monomials over a label set."""

    __slots__ = ("labels", "terms")

    def __init__(self, labels: Iterable, terms: Optional[Mapping[Monomial, object]] = None):
        self.labels = sort_labels(labels)
        self.terms: Terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}
        for m in self.terms:
            if monomial_labels(m) != self.labels:
                raise ValueError(f"monomial {render_monomial(m)} does not use labels {self.labels} once each")

    @classmethod
    def monomial(cls, m: Monomial, coefficient=1) -> "BVElement":
        return cls(monomial_labels(m), {m: coefficient})

    def __add__(self, other: "BVElement") -> "BVElement":
        self._same(other)
        out = dict(self.terms)
        add_scaled(out, other.terms)
        return BVElement(self.labels, out)

    def __sub__(self, other: "BVElement") -> "BVElement":
        self._same(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, -1)
        return BVElement(self.labels, out)

    def __neg__(self) -> "BVElement":
        return BVElement(self.labels, {m: -c for m, c in self.terms.items()})

    def __rmul__(self, c) -> "BVElement":
        return BVElement(self.labels, {m: c * x for m, x in self.terms.items()})

    def _same(self, other):
        if self.labels != other.labels:
            raise ValueError("elements live over different label sets")

    def __eq__(self, other) -> bool:
        return isinstance(other, BVElement) and self.labels == other.labels and self.terms == other.terms

    def __hash__(self):
        return hash((self.labels, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def by_degree(self) -> Dict[int, Terms]:
        out: Dict[int, Terms] = {}
        for m, c in self.terms.items():
            out.setdefault(monomial_degree(m), {})[m] = c
        return out

    def __repr__(self) -> str:
        return f"BVElement({render_element(self)!r})"

    def __str__(self) -> str:
        return render_element(self)


def bv_degree(x: BVElement) -> Union[int, str, None]:
    """Common degree of the monomials, ``"inhomogeneous"``, or None for zero."""
    degs = {monomial_degree(m) for m in x.terms}
    if not degs:
        return None
    if len(degs) > 1:
        return "inhomogeneous"
    return degs.pop()


# --------------------------------------------------------------------------
# algebra on monomials


def _sort_blocks(blocks: Sequence[Block]) -> Tuple[int, Monomial]:
    items = list(blocks)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1][0] > items[j][0]:
            if block_degree(items[j - 1]) & block_degree(items[j]) & 1:
                sign = -sign
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    return sign, tuple(items)


def _mul_terms(x: Mapping[Monomial, object], y: Mapping[Monomial, object]) -> Terms:
    out: dict = {}
    for m, a in x.items():
        for n, b in y.items():
            sign, mn = _sort_blocks(m + n)
            v = out.get(mn, 0) + sign * a * b
            if v:
                out[mn] = v
            else:
                out.pop(mn, None)
    return out


def _lie_to_terms(lie: Mapping[Block, object]) -> Terms:
    return {(w,): Fraction(c) for w, c in lie.items() if c}


@lru_cache(maxsize=None)
def _delta_lie_word(word: Block) -> Tuple[Tuple[Block, Fraction], ...]:
    if len(word) == 1:
        (lab, dec), = word
        return () if dec else ((((lab, True),), Fraction(1)),)
    u, v = standard_factorization(word)
    du = dict(_delta_lie_word(u))
    dv = dict(_delta_lie_word(v))
    out: dict = {}
    add_scaled(out, _LIE.bracket(du, {v: 1}))
    add_scaled(out, _LIE.bracket({u: 1}, dv), -1 if (block_degree(u) + 1) & 1 else 1)
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _bracket_mono(m: Monomial, n: Monomial, order: str) -> Tuple[Tuple[Monomial, Fraction], ...]:
    dm = monomial_degree(m)
    out: dict = {}
    if len(n) >= 2:
        if order == LEFT:
            head, tail = n[:1], n[1:]
            add_scaled(out, _mul_terms(dict(_bracket_mono(m, head, order)), {tail: 1}))
            sign = -1 if (dm + 1) * monomial_degree(head) & 1 else 1
            add_scaled(out, _mul_terms({head: 1}, dict(_bracket_mono(m, tail, order))), sign)
        else:
            head, tail = n[:-1], n[-1:]
            add_scaled(out, _mul_terms(dict(_bracket_mono(m, head, order)), {tail: 1}))
            sign = -1 if (dm + 1) * monomial_degree(head) & 1 else 1
            add_scaled(out, _mul_terms({head: 1}, dict(_bracket_mono(m, tail, order))), sign)
    elif len(m) == 1:
        add_scaled(out, _lie_to_terms(_LIE.bracket_words(m[0], n[0])))
    else:
        dn = monomial_degree(n)
        sign = 1 if (dm + 1) * (dn + 1) & 1 else -1
        add_scaled(out, dict(_bracket_mono(n, m, order)), sign)
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _delta_mono(m: Monomial, order: str) -> Tuple[Tuple[Monomial, Fraction], ...]:
    out: dict = {}
    if len(m) == 1:
        add_scaled(out, _lie_to_terms(dict(_delta_lie_word(m[0]))))
        return tuple(sorted(out.items()))
    if order == LEFT:
        x, y = m[:1], m[1:]
    else:
        x, y = m[:-1], m[-1:]
    sx = -1 if monomial_degree(x) & 1 else 1
    add_scaled(out, dict(_bracket_mono(x, y, order)), sx)
    add_scaled(out, _mul_terms(dict(_delta_mono(x, order)), {y: 1}))
    add_scaled(out, _mul_terms({x: 1}, dict(_delta_mono(y, order))), sx)
    return tuple(sorted(out.items()))


def _bracket_terms(x: Mapping[Monomial, object], y: Mapping[Monomial, object], order: str = LEFT) -> Terms:
    out: dict = {}
    for m, a in x.items():
        for n, b in y.items():
            add_scaled(out, dict(_bracket_mono(m, n, order)), a * b)
    return out


def _delta_terms(x: Mapping[Monomial, object], order: str = LEFT) -> Terms:
    out: dict = {}
    for m, a in x.items():
        add_scaled(out, dict(_delta_mono(m, order)), a)
    return out


def _disjoint(x: BVElement, y: BVElement) -> Tuple[str, ...]:
    if set(x.labels) & set(y.labels):
        raise ValueError(f"label sets {x.labels} and {y.labels} overlap")
    return sort_labels(x.labels + y.labels)


def bv_product(x: BVElement, y: BVElement) -> BVElement:
    return BVElement(_disjoint(x, y), _mul_terms(x.terms, y.terms))


def bv_bracket(x: BVElement, y: BVElement, order: str = LEFT) -> BVElement:
    return BVElement(_disjoint(x, y), _bracket_terms(x.terms, y.terms, order))


def bv_delta(x: BVElement, order: str = LEFT) -> BVElement:
    return BVElement(x.labels, _delta_terms(x.terms, order))


# --------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class Leaf:
    label: str


@dataclass(frozen=True)
class Delta:
    child: "Expr"


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Product:
    factors: Tuple["Expr", ...]

    def __init__(self, *factors):
        if len(factors) == 1 and isinstance(factors[0], (list, tuple)):
            factors = tuple(factors[0])
        if not factors:
            raise ValueError("empty product")
        object.__setattr__(self, "factors", tuple(factors))


Expr = Union[Leaf, Delta, Bracket, Product]


def expr_leaves(e: Expr) -> List[str]:
    if isinstance(e, Leaf):
        return [e.label]
    if isinstance(e, Delta):
        return expr_leaves(e.child)
    if isinstance(e, Bracket):
        return expr_leaves(e.left) + expr_leaves(e.right)
    return [x for f in e.factors for x in expr_leaves(f)]


def expr_degree(e: Expr) -> int:
    if isinstance(e, Leaf):
        return 0
    if isinstance(e, Delta):
        return 1 + expr_degree(e.child)
    if isinstance(e, Bracket):
        return 1 + expr_degree(e.left) + expr_degree(e.right)
    return sum(expr_degree(f) for f in e.factors)


def koszul_position(e: Expr, a: str) -> Optional[int]:
    """Number of Δ symbols and bracket commas written left of leaf ``a``."""
    if isinstance(e, Leaf):
        return 0 if e.label == a else None
    if isinstance(e, Delta):
        k = koszul_position(e.child, a)
        return None if k is None else 1 + k
    if isinstance(e, Bracket):
        k = koszul_position(e.left, a)
        if k is not None:
            return k
        k = koszul_position(e.right, a)
        return None if k is None else expr_degree(e.left) + 1 + k
    before = 0
    for f in e.factors:
        k = koszul_position(f, a)
        if k is not None:
            return before + k
        before += expr_degree(f)
    return None


def _check_leaves(e: Expr, labels: Optional[Iterable] = None) -> Tuple[str, ...]:
    leaves = expr_leaves(e)
    if len(set(leaves)) != len(leaves):
        raise ValueError(f"label used more than once in expression: {sorted(leaves)}")
    if labels is not None and set(leaves) != set(str(x) for x in labels):
        raise ValueError(f"expression uses {sorted(leaves)}, expected {sorted(str(x) for x in labels)}")
    return sort_labels(leaves)


def _evaluate(e: Expr, env: Mapping[str, Terms], order: str) -> Terms:
    if isinstance(e, Leaf):
        if e.label in env:
            return dict(env[e.label])
        return {((((e.label, False),),)): Fraction(1)}
    if isinstance(e, Delta):
        return _delta_terms(_evaluate(e.child, env, order), order)
    if isinstance(e, Bracket):
        return _bracket_terms(_evaluate(e.left, env, order), _evaluate(e.right, env, order), order)
    factors = [_evaluate(f, env, order) for f in e.factors]
    if order == RIGHT:
        acc = factors[-1]
        for f in reversed(factors[:-1]):
            acc = _mul_terms(f, acc)
        return acc
    acc = factors[0]
    for f in factors[1:]:
        acc = _mul_terms(acc, f)
    return acc


def bv_normal_form(e: Expr, labels: Optional[Iterable] = None, order: str = LEFT) -> BVElement:
    """Canonical form of an expression (each label used exactly once)."""
    if order not in (LEFT, RIGHT):
        raise ValueError(f"unknown rewrite order {order!r}")
    labs = _check_leaves(e, labels)
    return BVElement(labs, _evaluate(e, {}, order))


def monomial_expression(m: Monomial) -> Expr:
    """Infix expression tree of a canonical monomial (standard bracketings)."""

    def block_expr(word: Block) -> Expr:
        if len(word) == 1:
            lab, dec = word[0]
            return Delta(Leaf(lab)) if dec else Leaf(lab)
        u, v = standard_factorization(word)
        return Bracket(block_expr(u), block_expr(v))

    blocks = [block_expr(b) for b in m]
    return blocks[0] if len(blocks) == 1 else Product(*blocks)


def substitute(e: Expr, a: str, y: BVElement, order: str = LEFT) -> BVElement:
    """Normal form of ``e`` with leaf ``a`` replaced by ``y`` (with the Koszul sign)."""
    a = str(a)
    labs = _check_leaves(e)
    if a not in labs:
        raise ValueError(f"{a!r} is not a leaf")
    rest = [x for x in labs if x != a]
    if set(rest) & set(y.labels):
        raise ValueError(f"labels {sorted(set(rest) & set(y.labels))} clash")
    k = koszul_position(e, a)
    out: dict = {}
    for d, part in y.by_degree().items():
        sign = -1 if (d * k) & 1 else 1
        add_scaled(out, _evaluate(e, {a: part}, order), sign)
    return BVElement(sort_labels(rest + list(y.labels)), out)


def bv_compose(x: BVElement, a, y: BVElement, order: str = LEFT) -> BVElement:
    """``x o_a y``: substitute ``y`` into leaf ``a`` of every monomial of ``x``."""
    a = str(a)
    if a not in x.labels:
        raise ValueError(f"{a!r} is not a label of {x.labels}")
    labels = sort_labels([u for u in x.labels if u != a] + list(y.labels))
    out: dict = {}
    for m, c in x.terms.items():
        add_scaled(out, substitute(monomial_expression(m), a, y, order).terms, c)
    return BVElement(labels, out)


def bv_relabel(sigma: Mapping, x: BVElement) -> BVElement:
    """Relabel by a bijection; canonical forms are recomputed through normal form."""
    sigma = {str(k): str(v) for k, v in sigma.items()}
    if set(sigma) != set(x.labels) or len(set(sigma.values())) != len(sigma):
        raise ValueError("relabeling must be a bijection on the label set")

    def ren(e):
        if isinstance(e, Leaf):
            return Leaf(sigma[e.label])
        if isinstance(e, Delta):
            return Delta(ren(e.child))
        if isinstance(e, Bracket):
            return Bracket(ren(e.left), ren(e.right))
        return Product(*[ren(f) for f in e.factors])

    out: dict = {}
    for m, c in x.terms.items():
        add_scaled(out, bv_normal_form(ren(monomial_expression(m))).terms, c)
    return BVElement(sigma.values(), out)


# --------------------------------------------------------------------------
# basis


def set_partitions(items: Sequence) -> Iterator[List[List]]:
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _block_words(labels: Sequence[str], decorated: frozenset) -> List[Block]:
    letters = sorted((x, x in decorated) for x in labels)
    head, tail = letters[0], letters[1:]
    return [(head,) + p for p in permutations(tail)]


def bv_basis(A: Iterable, delta: bool = True) -> List[Monomial]:
    """Canonical monomials over ``A``; ``delta=False`` gives the Gerstenhaber sub-basis."""
    labels = sort_labels(A)
    if not labels:
        raise ValueError("label set must be nonempty")
    subsets = [frozenset(c) for r in range(len(labels) + 1) for c in combinations(labels, r)] if delta else [frozenset()]
    out = []
    for S in subsets:
        for part in set_partitions(labels):
            blocks = sorted(part, key=min)
            for words in product(*[_block_words(sorted(b), S) for b in blocks]):
                out.append(tuple(words))
    out.sort(key=lambda m: (monomial_degree(m), m))
    return out


def g_basis(A: Iterable) -> List[Monomial]:
    return bv_basis(A, delta=False)


def expected_bv_dim(n: int) -> int:
    return 2 ** n * factorial(n)


# --------------------------------------------------------------------------
# text format
#   expr   := term (('·' | '*') term)*
#   term   := 'Δ' term | '[' expr ',' expr ']' | '(' expr ')' | label


def render_expr(e: Expr) -> str:
    if isinstance(e, Leaf):
        return e.label
    if isinstance(e, Delta):
        inner = render_expr(e.child)
        return "Δ" + (inner if isinstance(e.child, (Leaf, Delta, Bracket)) else f"({inner})")
    if isinstance(e, Bracket):
        return f"[{render_expr(e.left)},{render_expr(e.right)}]"
    return "·".join(f"({render_expr(f)})" if isinstance(f, Product) else render_expr(f) for f in e.factors)


def render_monomial(m: Monomial) -> str:
    return render_expr(monomial_expression(m))


def render_element(x: BVElement) -> str:
    if not x.terms:
        return "0"
    parts = []
    for m in sorted(x.terms, key=lambda m: (monomial_degree(m), m)):
        c = x.terms[m]
        if c == 1:
            coef = ""
        elif c == -1:
            coef = "-"
        else:
            coef = f"{c}*"
        parts.append(coef + render_monomial(m))
    return " + ".join(parts).replace("+ -", "- ")


_TOKEN = re.compile(r"\s*(Δ|\[|\]|,|\(|\)|·|\*|[A-Za-z0-9_]+)")


def parse_expression(text: str) -> Expr:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def take(expected=None):
        nonlocal i
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'} at position {i} in {text!r}")
        i += 1
        return tok

    def expr():
        factors = [term()]
        while peek() in ("·", "*"):
            take()
            factors.append(term())
        return factors[0] if len(factors) == 1 else Product(*factors)

    def term():
        tok = peek()
        if tok == "Δ":
            take()
            return Delta(term())
        if tok == "[":
            take()
            left = expr()
            take(",")
            right = expr()
            take("]")
            return Bracket(left, right)
        if tok == "(":
            take()
            inner = expr()
            take(")")
            return inner
        if tok is None or not re.fullmatch(r"[A-Za-z0-9_]+", tok):
            raise ValueError(f"unexpected token {tok!r} in {text!r}")
        take()
        return Leaf(tok)

    e = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return e


def parse_bv(text: str, labels: Optional[Iterable] = None) -> BVElement:
    return bv_normal_form(parse_expression(text), labels)


# --------------------------------------------------------------------------
# random expressions and law checks


def random_expression(labels: Sequence[str], rng, delta_rate: float = 0.3) -> Expr:
    """Random well-formed expression using each label once."""
    labels = list(labels)
    if len(labels) == 1:
        e: Expr = Leaf(labels[0])
        return Delta(e) if rng.random() < delta_rate else e
    labels = rng.sample(labels, len(labels))
    k = rng.randint(1, len(labels) - 1)
    left = random_expression(labels[:k], rng, delta_rate)
    right = random_expression(labels[k:], rng, delta_rate)
    e = Bracket(left, right) if rng.random() < 0.45 else Product(left, right)
    if rng.random() < delta_rate * 0.7:
        e = Delta(e)
    return e


def random_element(labels: Sequence[str], rng, terms: int = 3) -> BVElement:
    out = BVElement(labels)
    for _ in range(terms):
        out = out + rng.choice([-2, -1, 1, 3]) * bv_normal_form(random_expression(labels, rng))
    return out


def check_confluence(samples: int = 200, max_arity: int = 3, seed: int = 0) -> dict:
    """Compare the two rewrite orders on random expressions."""
    import random

    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        n = rng.randint(1, max_arity)
        e = random_expression("abcd"[:n], rng)
        if bv_normal_form(e, order=LEFT) != bv_normal_form(e, order=RIGHT):
            failures.append(render_expr(e))
    return {"passed": not failures, "samples": samples, "failures": failures[:20]}


def _components(y: BVElement) -> List[Tuple[int, BVElement]]:
    return [(d, BVElement(y.labels, t)) for d, t in sorted(y.by_degree().items())]


def check_bv_laws(max_arity: int = 3, samples: int = 100, seed: int = 0):
    """Sampled operad laws for :func:`bv_compose` plus expression well-definedness.

    The parallel law is checked on homogeneous components, where it reads
    ``(x o_a y) o_b z = (-1)^{|y||z|} (x o_b z) o_a y``.
    """
    import random

    from .operadcore import LEFT as LA, MID as LB, RIGHT as LC, LawReport

    rng = random.Random(seed)
    report = LawReport()
    for _ in range(samples):
        na, nb, nc = (rng.randint(1, max_arity) for _ in range(3))
        A, B, C = LA[:na], LB[:nb], LC[:nc]
        x, y, z = random_element(A, rng), random_element(B, rng), random_element(C, rng)
        a = rng.choice(A)
        b = rng.choice(B)
        ok = bv_compose(bv_compose(x, a, y), b, z) == bv_compose(x, a, bv_compose(y, b, z))
        report.record("sequential", ok, {"x": str(x), "a": a, "y": str(y), "b": b, "z": str(z)})
        if na >= 2:
            b = rng.choice([u for u in A if u != a])
            ok = True
            for dy, Y in _components(y):
                for dz, Z in _components(z):
                    lhs = bv_compose(bv_compose(x, a, Y), b, Z)
                    rhs = bv_compose(bv_compose(x, b, Z), a, Y)
                    ok = ok and lhs == (-1) ** (dy * dz) * rhs
            report.record("parallel", ok, {"x": str(x), "a": a, "b": b})
        fresh = [chr(ord("A") + i) for i in range(na + nb)]
        rng.shuffle(fresh)
        sigma = dict(zip(A, fresh[:na]))
        tau = dict(zip(B, fresh[na:]))
        both = {u: sigma[u] for u in A if u != a}
        both.update(tau)
        lhs = bv_relabel(both, bv_compose(x, a, y))
        rhs = bv_compose(bv_relabel(sigma, x), sigma[a], bv_relabel(tau, y))
        report.record("equivariance", lhs == rhs, {"x": str(x), "a": a})
        e = random_expression(A, rng)
        ok = substitute(e, a, y) == bv_compose(bv_normal_form(e), a, y)
        report.record("substitution", ok, {"expr": render_expr(e), "a": a, "y": str(y)})
    return report
