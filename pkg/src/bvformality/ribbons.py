"""Parenthesized ribbon braids: objects, morphisms, normal forms and cabling.

Braid words are tuples of nonzero integers, ``i`` for sigma_i and ``-i`` for
its inverse (1-based, sigma_i exchanges the strands at positions i and i+1).
Words act on leaf sequences left to right.  Parenthesized permutations are
nested pairs with string leaves; JSON uses nested arrays.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .liealg import sort_labels

Word = Tuple[int, ...]
Tree = Union[str, tuple]
Perm = Tuple[int, ...]


# --------------------------------------------------------------------------
# parenthesized permutations


def leaves(tree: Tree) -> Tuple[str, ...]:
    if isinstance(tree, str):
        return (tree,)
    if len(tree) != 2:
        raise ValueError(f"tree nodes must be binary: {tree!r}")
    return leaves(tree[0]) + leaves(tree[1])


def normalize_tree(tree) -> Tree:
    """Accept nested lists/tuples with scalar leaves; return nested tuples of str."""
    if isinstance(tree, (list, tuple)):
        if len(tree) == 1:
            return normalize_tree(tree[0])
        if len(tree) != 2:
            raise ValueError(f"tree nodes must be binary: {tree!r}")
        return (normalize_tree(tree[0]), normalize_tree(tree[1]))
    return str(tree)


def tree_to_json(tree: Tree):
    return tree if isinstance(tree, str) else [tree_to_json(tree[0]), tree_to_json(tree[1])]


def render_tree(tree: Tree) -> str:
    return tree if isinstance(tree, str) else f"({render_tree(tree[0])}{render_tree(tree[1])})"


def _bracketings(seq: Sequence[str]) -> List[Tree]:
    if len(seq) == 1:
        return [seq[0]]
    out = []
    for k in range(1, len(seq)):
        for left in _bracketings(seq[:k]):
            for right in _bracketings(seq[k:]):
                out.append((left, right))
    return out


def pp_enumerate(A: Iterable) -> List[Tree]:
    """All parenthesized permutations of A (labelings in lexicographic order, then shapes)."""
    labels = sort_labels(A)
    if not labels:
        raise ValueError("label set must be nonempty")
    return [t for p in permutations(labels) for t in _bracketings(p)]


def graft(tree: Tree, a: str, sub: Tree) -> Tree:
    if isinstance(tree, str):
        return sub if tree == a else tree
    return (graft(tree[0], a, sub), graft(tree[1], a, sub))


def relabel_tree(tree: Tree, sigma: Mapping[str, str]) -> Tree:
    if isinstance(tree, str):
        return sigma[tree]
    return (relabel_tree(tree[0], sigma), relabel_tree(tree[1], sigma))


# --------------------------------------------------------------------------
# words


def parse_word(text: str) -> Word:
    """Parse ``"s1 s2^-1 s1"`` (also accepts ``s2^+1`` and bare integers)."""
    out = []
    for tok in text.replace(",", " ").split():
        t = tok.strip()
        if t.lstrip("-").isdigit():
            v = int(t)
        else:
            if not t.startswith("s"):
                raise ValueError(f"bad braid letter {tok!r}")
            body, _, exp = t[1:].partition("^")
            i = int(body)
            e = int(exp) if exp else 1
            if e not in (1, -1):
                out.extend([i if e > 0 else -i] * abs(e))
                continue
            v = i * e
        if v == 0:
            raise ValueError("generator index must be nonzero")
        out.append(v)
    return tuple(out)


def render_word(word: Sequence[int]) -> str:
    return " ".join(f"s{abs(x)}" if x > 0 else f"s{abs(x)}^-1" for x in word)


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def word_permutation(word: Sequence[int], n: int) -> Perm:
    """0-based positions: entry p is the final position of the strand starting at p."""
    where = list(range(n))  # where[strand] = position
    at = list(range(n))  # at[position] = strand
    for x in word:
        i = abs(x) - 1
        if not 0 <= i < n - 1:
            raise ValueError(f"generator s{abs(x)} out of range for {n} strands")
        s1, s2 = at[i], at[i + 1]
        at[i], at[i + 1] = s2, s1
        where[s1], where[s2] = i + 1, i
    return tuple(where)


def act_on_sequence(word: Sequence[int], seq: Sequence) -> tuple:
    seq = list(seq)
    for x in word:
        i = abs(x) - 1
        if not 0 <= i < len(seq) - 1:
            raise ValueError(f"generator s{abs(x)} out of range for {len(seq)} strands")
        seq[i], seq[i + 1] = seq[i + 1], seq[i]
    return tuple(seq)


def full_twist(k: int, power: int = 1) -> Word:
    """Delta^(2*power) on k strands: (s1 ... s_{k-1})^(k*power)."""
    if k <= 1 or power == 0:
        return ()
    base = tuple(range(1, k))
    w = base * (k * abs(power))
    return w if power > 0 else invert_word(w)


def shift_word(word: Sequence[int], offset: int) -> Word:
    return tuple(x + offset if x > 0 else x - offset for x in word)


# --------------------------------------------------------------------------
# Garside normal form
#
# A simple braid is stored as the permutation it induces (0-based positions,
# entry p = final position of the strand starting at p).  For positive words
# u, v the permutation of uv is perm(v) o perm(u).


def _compose(p: Perm, q: Perm) -> Perm:
    """Permutation of the product (first p, then q)."""
    return tuple(q[x] for x in p)


def _inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _swap(i: int, n: int) -> Perm:
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def _w0(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def _starting(p: Perm) -> set:
    # sigma_i can be pulled to the front iff strands starting at i, i+1 cross
    return {i for i in range(len(p) - 1) if p[i] > p[i + 1]}


def _finishing(p: Perm) -> set:
    q = _inverse(p)
    return {i for i in range(len(p) - 1) if q[i] > q[i + 1]}


def _tau(p: Perm) -> Perm:
    w = _w0(len(p))
    return _compose(_compose(w, p), w)


@dataclass(frozen=True)
class GarsideForm:
    n: int
    delta_power: int
    factors: Tuple[Perm, ...]

    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.factors

    def as_dict(self) -> dict:
        return {"n": self.n, "delta_power": self.delta_power, "factors": [list(f) for f in self.factors]}


def _right_multiply(n: int, power: int, factors: List[Perm], x: Perm) -> Tuple[int, List[Perm]]:
    ident = tuple(range(n))
    w0 = _w0(n)
    factors = factors + [x]
    # restore left-weightedness from the right end
    for j in range(len(factors) - 2, -1, -1):
        a, b = factors[j], factors[j + 1]
        while True:
            extra = _starting(b) - _finishing(a)
            if not extra:
                break
            i = min(extra)
            s = _swap(i, n)
            a = _compose(a, s)
            b = _compose(s, b)
        factors[j], factors[j + 1] = a, b
    while factors and factors[0] == w0:
        power += 1
        factors.pop(0)
    while factors and factors[-1] == ident:
        factors.pop()
    return power, factors


def garside_normal_form(word: Sequence[int], n: int) -> GarsideForm:
    """Left normal form Delta^r A_1 ... A_k of a braid word on ``n`` strands."""
    if n < 1:
        raise ValueError("need at least one strand")
    power = 0
    factors: List[Perm] = []
    w0 = _w0(n)
    for x in word:
        i = abs(x) - 1
        if not 0 <= i < n - 1:
            raise ValueError(f"generator s{abs(x)} out of range for {n} strands")
        s = _swap(i, n)
        if x > 0:
            power, factors = _right_multiply(n, power, factors, s)
        else:
            # A Delta^-1 = Delta^-1 tau(A), and sigma_i^-1 = Delta^-1 (Delta sigma_i^-1)
            factors = [_tau(f) for f in factors]
            power -= 1
            comp = _compose(w0, s)  # perm of the simple X with X sigma_i = Delta
            power, factors = _right_multiply(n, power, factors, comp)
    return GarsideForm(n, power, tuple(factors))


def garside_equal(w1: Sequence[int], w2: Sequence[int], n: int) -> bool:
    return garside_normal_form(tuple(w1) + invert_word(w2), n).is_identity()


# --------------------------------------------------------------------------
# handle reduction (independent triviality oracle)


def _find_handle(word: Sequence[int]) -> Optional[Tuple[int, int]]:
    best = None
    for p, x in enumerate(word):
        i = abs(x)
        for q in range(p + 1, len(word)):
            y = word[q]
            if abs(y) == i:
                if y == -x and (best is None or q - p < best[1] - best[0]):
                    best = (p, q)
                break
            if abs(y) == i - 1:
                break
    return best


def handle_reduce(word: Sequence[int], max_steps: int = 200000) -> Word:
    """Reduce innermost handles until none is left."""
    w = list(word)
    for _ in range(max_steps):
        h = _find_handle(w)
        if h is None:
            return tuple(w)
        p, q = h
        e = 1 if w[p] > 0 else -1
        i = abs(w[p])
        inner = []
        for y in w[p + 1:q]:
            if abs(y) == i + 1:
                d = 1 if y > 0 else -1
                inner.extend([-e * (i + 1), d * i, e * (i + 1)])
            else:
                inner.append(y)
        w = w[:p] + inner + w[q + 1:]
    raise RuntimeError("handle reduction did not terminate within the step budget")


def handle_trivial(word: Sequence[int]) -> bool:
    return not handle_reduce(word)


def handle_equal(w1: Sequence[int], w2: Sequence[int]) -> bool:
    return handle_trivial(tuple(w1) + invert_word(w2))


# --------------------------------------------------------------------------
# random words and relation fuzzing


def random_word(n: int, length: int, rng: random.Random) -> Word:
    if n < 2:
        return ()
    return tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length))


def random_rewrite(word: Sequence[int], n: int, rng: random.Random) -> Word:
    """Apply one braid relation (or insert a cancelling pair) at a random spot."""
    w = list(word)
    moves = []
    for p in range(len(w) - 1):
        a, b = w[p], w[p + 1]
        if abs(abs(a) - abs(b)) >= 2:
            moves.append(("commute", p))
        if a == -b:
            moves.append(("cancel", p))
    for p in range(len(w) - 2):
        a, b, c = w[p:p + 3]
        if a == c and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0):
            moves.append(("artin", p))
    moves.append(("insert", rng.randint(0, len(w))))
    kind, p = rng.choice(moves)
    if kind == "commute":
        w[p], w[p + 1] = w[p + 1], w[p]
    elif kind == "cancel":
        del w[p:p + 2]
    elif kind == "artin":
        a, b = w[p], w[p + 1]
        w[p:p + 3] = [b, a, b]
    elif n >= 2:
        x = rng.choice([1, -1]) * rng.randint(1, n - 1)
        w[p:p] = [x, -x]
    return tuple(w)


# --------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class RibbonBraidMorphism:
    domain: Tree
    codomain: Tree
    word: Word = ()
    framing_items: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        dom = normalize_tree(self.domain)
        cod = normalize_tree(self.codomain)
        object.__setattr__(self, "domain", dom)
        object.__setattr__(self, "codomain", cod)
        object.__setattr__(self, "word", tuple(int(x) for x in self.word))
        ld, lc = leaves(dom), leaves(cod)
        if len(set(ld)) != len(ld) or sorted(ld) != sorted(lc):
            raise ValueError(f"domain {render_tree(dom)} and codomain {render_tree(cod)} must use the same labels once")
        fr = dict(self.framing_items)
        unknown = set(fr) - set(ld)
        if unknown:
            raise ValueError(f"framing on unknown labels {sorted(unknown)}")
        object.__setattr__(self, "framing_items", tuple((a, int(fr.get(a, 0))) for a in sorted(ld)))
        if act_on_sequence(self.word, ld) != lc:
            raise ValueError(f"word {render_word(self.word)!r} does not carry {render_tree(dom)} to {render_tree(cod)}")

    @classmethod
    def make(cls, domain, codomain, word=(), framing: Optional[Mapping[str, int]] = None) -> "RibbonBraidMorphism":
        return cls(domain, codomain, tuple(word), tuple((framing or {}).items()))

    @property
    def labels(self) -> Tuple[str, ...]:
        return sort_labels(leaves(self.domain))

    @property
    def framing(self) -> Dict[str, int]:
        return dict(self.framing_items)

    @property
    def strands(self) -> int:
        return len(self.labels)

    def is_pure(self) -> bool:
        return leaves(self.domain) == leaves(self.codomain)

    def to_json(self) -> dict:
        return {
            "domain": tree_to_json(self.domain),
            "codomain": tree_to_json(self.codomain),
            "word": list(self.word),
            "framing": self.framing,
        }

    @classmethod
    def from_json(cls, data: Union[str, Mapping]) -> "RibbonBraidMorphism":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.make(data["domain"], data["codomain"], data.get("word", ()), data.get("framing", {}))

    def __str__(self) -> str:
        fr = ",".join(f"{a}:{k}" for a, k in self.framing_items if k)
        return f"{render_tree(self.domain)} -> {render_tree(self.codomain)} [{render_word(self.word)}]{{{fr}}}"


def identity(tree) -> RibbonBraidMorphism:
    return RibbonBraidMorphism.make(tree, tree)


def rb_compose(g: RibbonBraidMorphism, f: RibbonBraidMorphism) -> RibbonBraidMorphism:
    """``g o f``: first f, then g."""
    if f.codomain != g.domain:
        raise ValueError(f"cannot compose: {render_tree(f.codomain)} != {render_tree(g.domain)}")
    fr = f.framing
    for a, k in g.framing_items:
        fr[a] = fr.get(a, 0) + k
    return RibbonBraidMorphism.make(f.domain, g.codomain, f.word + g.word, fr)


def rb_inverse(f: RibbonBraidMorphism) -> RibbonBraidMorphism:
    return RibbonBraidMorphism.make(f.codomain, f.domain, invert_word(f.word), {a: -k for a, k in f.framing_items})


def rb_equal(m1: RibbonBraidMorphism, m2: RibbonBraidMorphism) -> bool:
    if m1.domain != m2.domain or m1.codomain != m2.codomain:
        raise ValueError("morphisms have different source or target")
    if m1.framing != m2.framing:
        return False
    return garside_equal(m1.word, m2.word, m1.strands)


def rb_relabel(sigma: Mapping, m: RibbonBraidMorphism) -> RibbonBraidMorphism:
    sigma = {str(k): str(v) for k, v in sigma.items()}
    if set(sigma) != set(m.labels) or len(set(sigma.values())) != len(sigma):
        raise ValueError("relabeling must be a bijection on the label set")
    return RibbonBraidMorphism.make(relabel_tree(m.domain, sigma), relabel_tree(m.codomain, sigma), m.word,
                                    {sigma[a]: k for a, k in m.framing_items})


def cable(m: RibbonBraidMorphism, a, n: RibbonBraidMorphism) -> RibbonBraidMorphism:
    """Replace the ribbon of ``a`` in ``m`` by the thin ribbon braid ``n``.

    The inner word runs first on the cable block; each crossing involving
    strand ``a`` becomes a band of |B| crossings; a framing k on ``a``
    becomes Delta_B^{2k} at the end plus k on every label of B.
    """
    a = str(a)
    if a not in m.labels:
        raise ValueError(f"{a!r} is not a label of the outer morphism")
    clash = (set(m.labels) - {a}) & set(n.labels)
    if clash:
        raise ValueError(f"labels {sorted(clash)} clash")
    k = n.strands
    seq = list(leaves(m.domain))
    pos = seq.index(a)  # 0-based position of strand a
    word: List[int] = list(shift_word(n.word, pos))
    for x in m.word:
        i = abs(x) - 1
        e = 1 if x > 0 else -1
        if i == pos:  # a on the left, partner moves left across the band
            word.extend(e * (i + j) for j in range(k, 0, -1))
            pos = i + 1
        elif i + 1 == pos:  # a on the right, partner moves right across the band
            word.extend(e * (i + j) for j in range(1, k + 1))
            pos = i
        elif i > pos:
            word.append(e * (i + k))
        else:
            word.append(e * (i + 1))
        seq[i], seq[i + 1] = seq[i + 1], seq[i]
    twist = m.framing.get(a, 0)
    word.extend(shift_word(full_twist(k, twist), pos))
    fr = {b: v for b, v in m.framing_items if b != a}
    for b, v in n.framing_items:
        fr[b] = v + twist
    return RibbonBraidMorphism.make(graft(m.domain, a, n.domain), graft(m.codomain, a, n.codomain), word, fr)


def parb_generators(x: str = "x", y: str = "y", z: str = "z") -> Dict[str, RibbonBraidMorphism]:
    """beta: (xy) -> (yx) with s1; alpha: ((xy)z) -> (x(yz)); tau: x -> x with framing 1."""
    return {
        "beta": RibbonBraidMorphism.make((x, y), (y, x), (1,)),
        "alpha": RibbonBraidMorphism.make(((x, y), z), (x, (y, z))),
        "tau": RibbonBraidMorphism.make(x, x, (), {x: 1}),
    }


def random_morphism(domain: Tree, length: int, rng: random.Random, max_framing: int = 2,
                    codomain: Optional[Tree] = None) -> RibbonBraidMorphism:
    """Random word from ``domain``; the codomain gets a random bracketing unless given."""
    seq = leaves(domain)
    word = random_word(len(seq), length, rng)
    end = act_on_sequence(word, seq)
    if codomain is None:
        shapes = _bracketings(end)
        codomain = rng.choice(shapes)
    elif leaves(codomain) != end:
        raise ValueError("requested codomain does not match the permutation of the word")
    framing = {a: rng.randint(-max_framing, max_framing) for a in seq}
    return RibbonBraidMorphism.make(domain, codomain, word, framing)


def random_pure_morphism(domain: Tree, length: int, rng: random.Random, max_framing: int = 2) -> RibbonBraidMorphism:
    """Random pure morphism: a word followed by its permutation's undoing word."""
    seq = leaves(domain)
    n = len(seq)
    w = list(random_word(n, length, rng))
    cur = list(act_on_sequence(w, seq))
    # bubble sort back to the domain order with positive crossings
    target = {lab: i for i, lab in enumerate(seq)}
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if target[cur[i]] > target[cur[i + 1]]:
                w.append(i + 1)
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                changed = True
    framing = {a: rng.randint(-max_framing, max_framing) for a in seq}
    return RibbonBraidMorphism.make(domain, domain, tuple(w), framing)
