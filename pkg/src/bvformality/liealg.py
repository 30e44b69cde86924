"""Free Lie algebras in the Lyndon basis and weight-graded quotients.

The free Lie algebra is realised inside the free associative algebra: a
Lyndon word ``w`` stands for its standard bracketing ``P(w)``, whose
expansion is ``w`` plus lexicographically larger words.  This triangularity
turns any Lie polynomial back into Lyndon coordinates.

A letter may carry a parity; brackets then use the super commutator
``uv - (-1)^{|u||v|} vu``.  For multilinear words (each letter at most once)
the Lyndon words still give a basis, which :mod:`bvformality.bvoperad` uses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactla import Echelon, Vector, add_scaled

Word = Tuple[Hashable, ...]


class TruncationError(ValueError):
    """Raised when a result would exceed the truncation weight."""


# --------------------------------------------------------------------------
# Lyndon words


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def witt_number(k: int, w: int) -> int:
    """Dimension of the weight-``w`` part of the free Lie algebra on ``k`` letters."""
    if w < 1:
        raise ValueError("weight must be positive")
    total = sum(mobius(d) * k ** (w // d) for d in range(1, w + 1) if w % d == 0)
    return total // w


def lyndon_words(k: int, w: int) -> List[Tuple[int, ...]]:
    """Lyndon words of length ``w`` over ``range(k)`` in lexicographic order (Duval)."""
    if w < 1:
        raise ValueError("weight must be positive")
    if k < 1:
        return []
    out = []
    word = [-1]
    while word:
        word[-1] += 1
        if len(word) == w:
            out.append(tuple(word))
        m = len(word)
        while len(word) < w:
            word.append(word[len(word) - m])
        while word and word[-1] == k - 1:
            word.pop()
    return out


def lyndon_basis(alphabet: Sequence, w: int) -> List[tuple]:
    return [tuple(alphabet[i] for i in word) for word in lyndon_words(len(alphabet), w)]


def is_lyndon(word: Sequence) -> bool:
    n = len(word)
    if n == 0:
        return False
    t = tuple(word)
    return all(t < t[i:] + t[:i] for i in range(1, n))


def standard_factorization(word: Word) -> Tuple[Word, Word]:
    """Split a Lyndon word as ``u v`` with ``v`` its longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word!r} has no standard factorization")


# --------------------------------------------------------------------------
# free Lie algebra


class FreeLieAlgebra:
    """Free Lie (super)algebra over orderable letters.

    Elements are dicts ``{lyndon_word: coefficient}``.
    """

    def __init__(self, parity: Optional[Callable[[Hashable], int]] = None):
        self.parity = parity or (lambda letter: 0)
        self._poly = lru_cache(maxsize=None)(self._poly_uncached)
        self._bracket_words = lru_cache(maxsize=None)(self._bracket_words_uncached)

    def word_parity(self, word: Iterable) -> int:
        return sum(self.parity(x) for x in word) & 1

    def _commutator(self, p: Mapping[Word, int], q: Mapping[Word, int], pu: int, pv: int) -> Dict[Word, int]:
        out: Dict[Word, int] = {}
        sign = -1 if pu & pv else 1
        for a, x in p.items():
            for b, y in q.items():
                ab = a + b
                v = out.get(ab, 0) + x * y
                if v:
                    out[ab] = v
                else:
                    out.pop(ab, None)
                ba = b + a
                v = out.get(ba, 0) - sign * x * y
                if v:
                    out[ba] = v
                else:
                    out.pop(ba, None)
        return out

    def _poly_uncached(self, word: Word) -> Dict[Word, int]:
        if len(word) == 1:
            return {word: 1}
        u, v = standard_factorization(word)
        return self._commutator(self._poly(u), self._poly(v), self.word_parity(u), self.word_parity(v))

    def expand(self, element: Mapping[Word, object]) -> Dict[Word, Fraction]:
        """Associative expansion of a Lie element."""
        out: dict = {}
        for word, c in element.items():
            add_scaled(out, self._poly(tuple(word)), c)
        return out

    def to_lyndon(self, poly: Mapping[Word, object]) -> Dict[Word, Fraction]:
        """Lyndon coordinates of an associative polynomial that is a Lie element."""
        poly = {w: Fraction(c) for w, c in poly.items() if c}
        out: Dict[Word, Fraction] = {}
        while poly:
            w = min(poly, key=lambda x: (len(x), x))
            c = poly[w]
            if not is_lyndon(w):
                raise ValueError(f"polynomial is not a Lie element (leading word {w!r})")
            out[w] = c
            add_scaled(poly, self._poly(w), -c)
        return out

    def _bracket_words_uncached(self, u: Word, v: Word) -> Dict[Word, Fraction]:
        if u == v and not self.word_parity(u):
            return {}
        poly = self._commutator(self._poly(u), self._poly(v), self.word_parity(u), self.word_parity(v))
        return self.to_lyndon(poly)

    def bracket_words(self, u: Word, v: Word) -> Dict[Word, Fraction]:
        return self._bracket_words(tuple(u), tuple(v))

    def bracket(self, x: Mapping[Word, object], y: Mapping[Word, object], max_weight: Optional[int] = None) -> Dict[Word, Fraction]:
        out: dict = {}
        for u, a in x.items():
            for v, b in y.items():
                if max_weight is not None and len(u) + len(v) > max_weight:
                    raise TruncationError(f"bracket of weight {len(u) + len(v)} exceeds {max_weight}")
                add_scaled(out, self._bracket_words(tuple(u), tuple(v)), a * b)
        return out

    def letter(self, x: Hashable) -> Dict[Word, Fraction]:
        return {(x,): Fraction(1)}


# --------------------------------------------------------------------------
# generator symbols of t_A and t~_A


def sort_labels(labels: Iterable) -> Tuple[str, ...]:
    labs = [str(a) for a in labels]
    if len(set(labs)) != len(labs):
        raise ValueError(f"repeated labels in {labs}")
    return tuple(sorted(labs))


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    """``t_{ab}`` (kind ``"T"``, labels sorted) or ``s_a`` (kind ``"S"``)."""

    kind: str
    labels: Tuple[str, ...]

    def __post_init__(self):
        if self.kind == "T":
            if len(self.labels) != 2 or self.labels[0] == self.labels[1]:
                raise ValueError("t needs two distinct labels")
            if self.labels[0] > self.labels[1]:
                object.__setattr__(self, "labels", (self.labels[1], self.labels[0]))
        elif self.kind == "S":
            if len(self.labels) != 1:
                raise ValueError("s needs one label")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @property
    def weight(self) -> int:
        return 1

    def __str__(self) -> str:
        return ("t_" if self.kind == "T" else "s_") + "".join(self.labels) if all(len(x) == 1 for x in self.labels) \
            else ("t_" if self.kind == "T" else "s_") + "{" + ",".join(self.labels) + "}"


def t(a, b) -> GeneratorSymbol:
    return GeneratorSymbol("T", (str(a), str(b)))


def s(a) -> GeneratorSymbol:
    return GeneratorSymbol("S", (str(a),))


def generator_alphabet(labels: Sequence[str], central: bool = True) -> List[GeneratorSymbol]:
    """T-symbols in lexicographic pair order, then S-symbols."""
    labels = sort_labels(labels)
    gens = [t(a, b) for a, b in combinations(labels, 2)]
    if central:
        gens += [s(a) for a in labels]
    return gens


# --------------------------------------------------------------------------
# graded quotients


class GradedLieAlgebra:
    """Truncated weight-graded Lie algebra with an explicit basis.

    Elements are sparse vectors over global basis indices; the global order
    is by weight, then by the Lyndon order of the representative words.
    """

    def __init__(self, generators: Sequence, W: int, basis: Mapping[int, Sequence[Word]],
                 brackets: Mapping[Tuple[int, int], Vector], generator_images: Sequence[Vector],
                 labels: Sequence[str] = (), free: Optional[FreeLieAlgebra] = None,
                 projector=None):
        self.generators = tuple(generators)
        self.W = W
        self.labels = tuple(labels)
        self.basis: Dict[int, Tuple[Word, ...]] = {w: tuple(basis.get(w, ())) for w in range(1, W + 1)}
        self.words: List[Word] = []
        self.weights: List[int] = []
        self.offset: Dict[int, int] = {}
        for w in range(1, W + 1):
            self.offset[w] = len(self.words)
            self.words.extend(self.basis[w])
            self.weights.extend([w] * len(self.basis[w]))
        self._word_index = {wd: i for i, wd in enumerate(self.words)}
        self._brackets = dict(brackets)
        self.generator_images = tuple(dict(v) for v in generator_images)
        self._gen_pos = {g: i for i, g in enumerate(self.generators)}
        self.free = free
        self._projector = projector

    # -- basic data
    @property
    def dim(self) -> int:
        return len(self.words)

    def graded_dims(self) -> Dict[int, int]:
        return {w: len(self.basis[w]) for w in range(1, self.W + 1)}

    def weight_of(self, v: Mapping[int, object]) -> Optional[int]:
        ws = {self.weights[i] for i in v}
        if not ws:
            return None
        if len(ws) > 1:
            raise ValueError("element is not weight-homogeneous")
        return ws.pop()

    def indices_of_weight(self, w: int) -> range:
        return range(self.offset[w], self.offset[w] + len(self.basis[w]))

    def gen(self, symbol) -> Vector:
        """Image of a generator symbol (a GeneratorSymbol or its position)."""
        if isinstance(symbol, int):
            return dict(self.generator_images[symbol])
        return dict(self.generator_images[self._gen_pos[symbol]])

    def has_generator(self, symbol) -> bool:
        return symbol in self._gen_pos

    def index_of_word(self, word: Word) -> int:
        return self._word_index[tuple(word)]

    def describe(self, i: int) -> str:
        word = self.words[i]

        def render(wd):
            if len(wd) == 1:
                return str(self.generators[wd[0]])
            u, v = standard_factorization(wd)
            return f"[{render(u)},{render(v)}]"

        return render(word)

    # -- brackets
    def bracket_basis(self, i: int, j: int) -> Vector:
        if i == j:
            return {}
        if self.weights[i] + self.weights[j] > self.W:
            raise TruncationError(f"bracket weight {self.weights[i] + self.weights[j]} exceeds W={self.W}")
        if i < j:
            return self._brackets.get((i, j), {})
        return {k: -c for k, c in self._brackets.get((j, i), {}).items()}

    def bracket(self, u: Mapping[int, object], v: Mapping[int, object], truncate: bool = False) -> Vector:
        out: dict = {}
        for i, a in u.items():
            wi = self.weights[i]
            for j, b in v.items():
                if wi + self.weights[j] > self.W:
                    if truncate:
                        continue
                    raise TruncationError(f"bracket weight {wi + self.weights[j]} exceeds W={self.W}")
                if i == j:
                    continue
                if i < j:
                    add_scaled(out, self._brackets.get((i, j), {}), a * b)
                else:
                    add_scaled(out, self._brackets.get((j, i), {}), -a * b)
        return out

    def structure_constants(self) -> Dict[Tuple[int, int], Vector]:
        return {k: dict(v) for k, v in self._brackets.items()}

    def evaluate_word(self, word: Word, letter_images: Sequence[Vector], target: "GradedLieAlgebra",
                      cache: Optional[dict] = None) -> Vector:
        """Image of the standard bracketing of ``word`` when letter ``x`` maps to ``letter_images[x]``."""
        if cache is not None and word in cache:
            return cache[word]
        if len(word) == 1:
            res = dict(letter_images[word[0]])
        else:
            u, v = standard_factorization(word)
            res = target.bracket(self.evaluate_word(u, letter_images, target, cache),
                                 self.evaluate_word(v, letter_images, target, cache))
        if cache is not None:
            cache[word] = res
        return res

    def project_free(self, element: Mapping[Word, object]) -> Vector:
        """Image in this quotient of a free Lie element (Lyndon coordinates)."""
        if self._projector is None:
            raise ValueError("algebra was not built as a quotient of a free Lie algebra")
        return self._projector(element)

    def check_jacobi(self, max_total: Optional[int] = None) -> List[Tuple[int, int, int]]:
        """Basis triples (weight sum within the window) where Jacobi fails."""
        limit = self.W if max_total is None else min(self.W, max_total)
        bad = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                if self.weights[i] + self.weights[j] >= limit:
                    continue
                for k in range(j + 1, n):
                    if self.weights[i] + self.weights[j] + self.weights[k] > limit:
                        continue
                    ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
                    acc: dict = {}
                    add_scaled(acc, self.bracket(ei, self.bracket(ej, ek)))
                    add_scaled(acc, self.bracket(ej, self.bracket(ek, ei)))
                    add_scaled(acc, self.bracket(ek, self.bracket(ei, ej)))
                    if acc:
                        bad.append((i, j, k))
        return bad

    def __repr__(self) -> str:
        return f"GradedLieAlgebra(labels={self.labels}, W={self.W}, dims={self.graded_dims()})"


def nilpotent_quotient(generators: Sequence, relations: Sequence[Mapping[Word, object]], W: int,
                       labels: Sequence[str] = ()) -> GradedLieAlgebra:
    """Quotient of the free Lie algebra on ``generators`` by the ideal of ``relations``, up to weight W.

    Relations are free Lie elements in Lyndon coordinates over letter
    positions ``0..k-1`` and must be weight-homogeneous.
    """
    if W < 1:
        raise ValueError("W must be at least 1")
    k = len(generators)
    free = FreeLieAlgebra()
    rel_by_weight: Dict[int, List[Dict[Word, Fraction]]] = {}
    for r in relations:
        r = {tuple(w): Fraction(c) for w, c in r.items() if c}
        if not r:
            continue
        ws = {len(w) for w in r}
        if len(ws) != 1:
            raise ValueError("relation is not weight-homogeneous")
        rel_by_weight.setdefault(ws.pop(), []).append(r)

    col: Dict[int, Dict[Word, int]] = {}
    words: Dict[int, List[Word]] = {}
    ideals: Dict[int, Echelon] = {}
    for w in range(1, W + 1):
        ws = lyndon_words(k, w)
        words[w] = ws
        col[w] = {wd: i for i, wd in enumerate(ws)}
        ech = Echelon(leading="max")
        for r in rel_by_weight.get(w, []):
            ech.add({col[w][wd]: c for wd, c in r.items()})
        if w > 1:
            prev_words = words[w - 1]
            for row in list(ideals[w - 1]._rows.values()):
                for x in range(k):
                    vec: dict = {}
                    for j, c in row.items():
                        for wd, d in free.bracket_words((x,), prev_words[j]).items():
                            vec[col[w][wd]] = vec.get(col[w][wd], 0) + c * d
                    ech.add(vec)
        ideals[w] = ech

    basis: Dict[int, List[Word]] = {}
    qpos: Dict[int, Dict[int, int]] = {}
    for w in range(1, W + 1):
        piv = set(ideals[w].pivots)
        keep = [i for i in range(len(words[w])) if i not in piv]
        basis[w] = [words[w][i] for i in keep]
        qpos[w] = {i: n for n, i in enumerate(keep)}
    offsets, acc = {}, 0
    for w in range(1, W + 1):
        offsets[w] = acc
        acc += len(basis[w])

    def project(element: Mapping[Word, object]) -> Vector:
        by_w: Dict[int, dict] = {}
        for wd, c in element.items():
            wd = tuple(wd)
            w = len(wd)
            if w > W:
                raise TruncationError(f"weight {w} exceeds W={W}")
            bucket = by_w.setdefault(w, {})
            bucket[col[w][wd]] = bucket.get(col[w][wd], 0) + c
        out: Vector = {}
        for w, vec in by_w.items():
            red = ideals[w].reduce(vec)
            for i, c in red.items():
                out[offsets[w] + qpos[w][i]] = c
        return out

    brackets: Dict[Tuple[int, int], Vector] = {}
    flat = [(w, wd) for w in range(1, W + 1) for wd in basis[w]]
    for i, (wi, ui) in enumerate(flat):
        for j in range(i + 1, len(flat)):
            wj, uj = flat[j]
            if wi + wj > W:
                continue
            v = project(free.bracket_words(ui, uj))
            if v:
                brackets[i, j] = v
    gen_images = [project({(x,): 1}) for x in range(k)]
    return GradedLieAlgebra(generators, W, basis, brackets, gen_images, labels=labels, free=free, projector=project)


# --------------------------------------------------------------------------
# Drinfeld-Kohno algebras


def drinfeld_kohno_relations(alphabet: Sequence[GeneratorSymbol]) -> List[Dict[Word, Fraction]]:
    """The defining relations over the given alphabet, as free Lie elements on letter positions."""
    free = FreeLieAlgebra()
    pos = {g: i for i, g in enumerate(alphabet)}
    labels = sorted({x for g in alphabet for x in g.labels})
    rels = []

    def br(g, h):
        return free.bracket_words((pos[g],), (pos[h],))

    for g, h in combinations([g for g in alphabet if g.kind == "T"], 2):
        if not set(g.labels) & set(h.labels):
            rels.append(br(g, h))
    for a, b, c in permutations(labels, 3):
        r: dict = {}
        add_scaled(r, br(t(a, c), t(a, b)))
        add_scaled(r, br(t(a, c), t(b, c)))
        rels.append(r)
    for g in alphabet:
        if g.kind != "S":
            continue
        for h in alphabet:
            if h != g:
                rels.append(br(g, h))
    return [r for r in rels if r]


_CACHE: Dict[Tuple[int, int, bool], GradedLieAlgebra] = {}


def _shape(n: int, W: int, central: bool) -> GradedLieAlgebra:
    # built on canonical labels "0","1",...; order-preserving relabeling reuses it
    key = (n, W, central)
    if key not in _CACHE:
        width = len(str(max(n - 1, 0)))
        labels = tuple(str(i).zfill(width) for i in range(n))
        alphabet = generator_alphabet(labels, central)
        _CACHE[key] = nilpotent_quotient(alphabet, drinfeld_kohno_relations(alphabet), W, labels)
    return _CACHE[key]


def _relabel_shape(shape: GradedLieAlgebra, labels: Tuple[str, ...], central: bool) -> GradedLieAlgebra:
    alphabet = generator_alphabet(labels, central)
    return GradedLieAlgebra(alphabet, shape.W, shape.basis, shape._brackets, shape.generator_images,
                            labels=labels, free=shape.free, projector=shape._projector)


def drinfeld_kohno(A: Iterable, W: int = 4, central: bool = True) -> GradedLieAlgebra:
    """``t~_A`` (``central=True``) or ``t_A`` truncated at weight ``W``."""
    labels = sort_labels(A)
    if not labels:
        raise ValueError("label set must be nonempty")
    if W < 1:
        raise ValueError("W must be at least 1")
    shape = _shape(len(labels), W, central)
    return _relabel_shape(shape, labels, central)


def t_tilde(A: Iterable, W: int = 4) -> GradedLieAlgebra:
    return drinfeld_kohno(A, W, central=True)


def t_plain(A: Iterable, W: int = 4) -> GradedLieAlgebra:
    return drinfeld_kohno(A, W, central=False)


def graded_dims(L: GradedLieAlgebra) -> Dict[int, int]:
    return L.graded_dims()


def witt_sum_dims(n: int, W: int) -> Dict[int, int]:
    """Independent count of ``dim t_n[w]`` from the iterated semidirect decomposition."""
    out = {}
    for w in range(1, W + 1):
        if w == 1:
            out[w] = n * (n - 1) // 2
        else:
            out[w] = sum(witt_number(k, w) for k in range(1, n))
    return out
