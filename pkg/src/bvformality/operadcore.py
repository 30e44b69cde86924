"""Operad structure on t~: relabeling and the insertion maps, with law checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exactla import Vector, add_scaled
from .liealg import GeneratorSymbol, GradedLieAlgebra, drinfeld_kohno, drinfeld_kohno_relations, s, sort_labels, t, t_tilde


@dataclass
class LieMorphism:
    """Lie map from a direct sum of algebras into ``target``.

    ``images[k][i]`` is the image of basis vector ``i`` of summand ``k``.
    """

    sources: Tuple[GradedLieAlgebra, ...]
    target: GradedLieAlgebra
    images: Tuple[Tuple[Vector, ...], ...]

    def apply(self, *elements: Optional[Mapping[int, object]]) -> Vector:
        if len(elements) != len(self.sources):
            raise ValueError(f"expected {len(self.sources)} summands, got {len(elements)}")
        out: dict = {}
        for k, el in enumerate(elements):
            if not el:
                continue
            imgs = self.images[k]
            for i, c in el.items():
                add_scaled(out, imgs[i], c)
        return out

    def apply_summand(self, k: int, element: Mapping[int, object]) -> Vector:
        out: dict = {}
        for i, c in element.items():
            add_scaled(out, self.images[k][i], c)
        return out

    def check_homomorphism(self) -> List[tuple]:
        """Basis pairs (within the truncation window) where brackets are not preserved.

        Pairs from different summands must map to commuting elements.
        """
        bad = []
        tgt = self.target
        flat = [(k, i) for k, src in enumerate(self.sources) for i in range(src.dim)]
        for n, (k, i) in enumerate(flat):
            wi = self.sources[k].weights[i]
            for (l, j) in flat[n + 1:]:
                wj = self.sources[l].weights[j]
                if wi + wj > tgt.W:
                    continue
                lhs = tgt.bracket(self.images[k][i], self.images[l][j])
                if k == l:
                    if wi + wj > self.sources[k].W:
                        continue
                    rhs = self.apply_summand(k, self.sources[k].bracket({i: 1}, {j: 1}))
                else:
                    rhs = {}
                if lhs != rhs:
                    bad.append(((k, i), (l, j)))
        return bad


def _images_from_generators(src: GradedLieAlgebra, gen_images: Sequence[Vector], target: GradedLieAlgebra) -> Tuple[Vector, ...]:
    cache: dict = {}
    return tuple(src.evaluate_word(word, gen_images, target, cache) for word in src.words)


def _gen_vector(L: GradedLieAlgebra, symbols: Sequence[GeneratorSymbol]) -> Vector:
    out: dict = {}
    for g in symbols:
        add_scaled(out, L.gen(g))
    return out


def _letter_image(g: GeneratorSymbol, sigma: Mapping[str, str]):
    if g.kind == "T":
        return t(sigma[g.labels[0]], sigma[g.labels[1]])
    return s(sigma[g.labels[0]])


def _check_bijection(sigma: Mapping, A: Sequence[str]) -> Dict[str, str]:
    sigma = {str(k): str(v) for k, v in sigma.items()}
    if set(sigma) != set(A):
        raise ValueError(f"relabeling domain {sorted(sigma)} differs from label set {list(A)}")
    if len(set(sigma.values())) != len(sigma):
        raise ValueError("relabeling is not injective")
    return sigma


def relabel_map(sigma: Mapping, A, W: int = 4, central: bool = True) -> LieMorphism:
    """The isomorphism ``t~_A -> t~_{sigma(A)}`` induced by a bijection of labels."""
    A = sort_labels(A)
    sigma = _check_bijection(sigma, A)
    src = drinfeld_kohno(A, W, central)
    tgt = drinfeld_kohno(sigma.values(), W, central)
    gens = [tgt.gen(_letter_image(g, sigma)) for g in src.generators]
    return LieMorphism((src,), tgt, (_images_from_generators(src, gens, tgt),))


def relabel(sigma: Mapping, x, A=None, W: int = 4, central: bool = True):
    """Relabel an element of ``t~_A`` (needs ``A``) or a :class:`LieMorphism` (relabels its target)."""
    if isinstance(x, LieMorphism):
        tgt = x.target
        central = any(g.kind == "S" for g in tgt.generators)
        R = relabel_map(sigma, tgt.labels, tgt.W, central)
        images = tuple(tuple(R.apply(img) for img in imgs) for imgs in x.images)
        return LieMorphism(x.sources, R.target, images)
    if A is None:
        raise ValueError("label set required to relabel an element")
    return relabel_map(sigma, A, W, central).apply(x)


@lru_cache(maxsize=None)
def _insert_map_cached(a: str, A: Tuple[str, ...], B: Tuple[str, ...], W: int, central: bool) -> LieMorphism:
    rest = tuple(x for x in A if x != a)
    tgt_labels = sort_labels(rest + B)
    LA = drinfeld_kohno(A, W, central)
    LB = drinfeld_kohno(B, W, central)
    T = drinfeld_kohno(tgt_labels, W, central)
    gens_a = []
    for g in LA.generators:
        if g.kind == "T":
            x, y = g.labels
            if a not in (x, y):
                gens_a.append(T.gen(g))
            else:
                other = y if x == a else x
                gens_a.append(_gen_vector(T, [t(other, b) for b in B]))
        else:
            (x,) = g.labels
            if x != a:
                gens_a.append(T.gen(g))
            else:
                syms = [s(b) for b in B] + [t(p, q) for p, q in combinations(B, 2)]
                gens_a.append(_gen_vector(T, syms))
    gens_b = [T.gen(g) for g in LB.generators]
    return LieMorphism((LA, LB), T, (_images_from_generators(LA, gens_a, T), _images_from_generators(LB, gens_b, T)))


def insert_map(a, A, B, W: int = 4, central: bool = True) -> LieMorphism:
    """The composition ``o_a: t~_A + t~_B -> t~_{(A - a) u B}``."""
    A = sort_labels(A)
    B = sort_labels(B)
    a = str(a)
    if a not in A:
        raise ValueError(f"{a!r} is not a label of {A}")
    clash = (set(A) - {a}) & set(B)
    if clash:
        raise ValueError(f"labels {sorted(clash)} occur on both sides of the composition")
    return _insert_map_cached(a, A, B, W, central)


def check_relations_preserved(M: LieMorphism, summand: int = 0) -> bool:
    """Every defining relation of the source summand maps to zero."""
    src = M.sources[summand]
    letters = [M.images[summand][src.index_of_word((x,))] if (x,) in src._word_index else {}
               for x in range(len(src.generators))]
    for rel in drinfeld_kohno_relations(src.generators):
        acc: dict = {}
        for word, c in rel.items():
            add_scaled(acc, src.evaluate_word(word, letters, M.target), c)
        if acc:
            return False
    return True


def compose(x: Optional[Mapping], a, y: Optional[Mapping], A, B, W: int = 4) -> Vector:
    """``x o_a y`` for ``x`` in ``t~_A`` and ``y`` in ``t~_B``."""
    return insert_map(a, A, B, W).apply(x or {}, y or {})


# --------------------------------------------------------------------------
# law checking


LEFT = "abcdefg"
MID = "pqrst"
RIGHT = "uvwxyz"


@dataclass
class LawReport:
    passed: bool = True
    counts: Dict[str, int] = field(default_factory=dict)
    failures: List[dict] = field(default_factory=list)

    def record(self, kind: str, ok: bool, payload: Optional[dict] = None):
        self.counts[kind] = self.counts.get(kind, 0) + 1
        if not ok:
            self.passed = False
            if len(self.failures) < 20:
                self.failures.append({"law": kind, **(payload or {})})

    def as_dict(self) -> dict:
        return {"passed": self.passed, "counts": dict(sorted(self.counts.items())), "failures": self.failures}


def _basis_vectors(L: GradedLieAlgebra, max_weight: int) -> List[Vector]:
    return [{i: Fraction(1)} for i in range(L.dim) if L.weights[i] <= max_weight]


def _random_element(L: GradedLieAlgebra, rng: random.Random, max_weight: int) -> Vector:
    pool = [i for i in range(L.dim) if L.weights[i] <= max_weight]
    out: dict = {}
    for i in rng.sample(pool, min(len(pool), rng.randint(1, 4))):
        c = rng.randint(-3, 3)
        if c:
            out[i] = Fraction(c)
    return out


def _parallel(x, y, z, a, b, A, B, C, W):
    A1 = sort_labels([u for u in A if u != a] + list(B))
    A2 = sort_labels([u for u in A if u != b] + list(C))
    r1 = insert_map(b, A1, C, W).apply(insert_map(a, A, B, W).apply(x, y), z)
    r2 = insert_map(a, A2, B, W).apply(insert_map(b, A, C, W).apply(x, z), y)
    return r1, r2


def _sequential(x, y, z, a, b, A, B, C, W):
    AB = sort_labels([u for u in A if u != a] + list(B))
    BC = sort_labels([u for u in B if u != b] + list(C))
    r1 = insert_map(b, AB, C, W).apply(insert_map(a, A, B, W).apply(x, y), z)
    r2 = insert_map(a, A, BC, W).apply(x, insert_map(b, B, C, W).apply(y, z))
    return r1, r2


def _equivariance(x, y, a, A, B, sigma, tau, W):
    res = insert_map(a, A, B, W).apply(x, y)
    rest = sort_labels([u for u in A if u != a] + list(B))
    both = {u: sigma[u] for u in A if u != a}
    both.update(tau)
    lhs = relabel(both, res, rest, W)
    A2 = sort_labels(sigma.values())
    B2 = sort_labels(tau.values())
    rhs = insert_map(sigma[a], A2, B2, W).apply(relabel(sigma, x, A, W), relabel(tau, y, B, W))
    return lhs, rhs


def check_operad_laws(max_arity: int = 3, W: int = 3, samples: int = 100, seed: int = 0,
                      sample_arity: int = 2) -> LawReport:
    """Parallel commutativity, sequential associativity and equivariance of the insertion maps.

    Composition with singleton label sets is also recorded; no unit law is
    asserted beyond that.

    Generator-level checks run exhaustively for every arity up to
    ``max_arity``; ``samples`` random elements of weight up to ``W`` are
    checked on label sets of size up to ``sample_arity``.
    """
    rng = random.Random(seed)
    report = LawReport()
    sizes = range(1, max_arity + 1)

    # exhaustive on generators (weight 1 suffices there)
    for na in sizes:
        A = tuple(LEFT[:na])
        LA = t_tilde(A, 1)
        for nb in sizes:
            B = tuple(MID[:nb])
            LB = t_tilde(B, 1)
            for nc in sizes:
                C = tuple(RIGHT[:nc])
                LC = t_tilde(C, 1)
                for a in A:
                    for b in A:
                        if b == a:
                            continue
                        for k, gens in enumerate((_basis_vectors(LA, 1), _basis_vectors(LB, 1), _basis_vectors(LC, 1))):
                            for g in gens:
                                x, y, z = [g if k == m else {} for m in range(3)]
                                r1, r2 = _parallel(x, y, z, a, b, A, B, C, 1)
                                report.record("parallel", r1 == r2, {"A": A, "a": a, "b": b, "summand": k})
                    for b in B:
                        for k, gens in enumerate((_basis_vectors(LA, 1), _basis_vectors(LB, 1), _basis_vectors(LC, 1))):
                            for g in gens:
                                x, y, z = [g if k == m else {} for m in range(3)]
                                r1, r2 = _sequential(x, y, z, a, b, A, B, C, 1)
                                report.record("sequential", r1 == r2, {"A": A, "B": B, "a": a, "b": b, "summand": k})
            for a in A:
                perms_a = list(permutations(A))
                perms_b = list(permutations(B))
                for pa in perms_a[:6]:
                    sigma = dict(zip(A, pa))
                    for pb in perms_b[:6]:
                        tau = dict(zip(B, pb))
                        for k, gens in enumerate((_basis_vectors(LA, 1), _basis_vectors(LB, 1))):
                            for g in gens:
                                x, y = (g, {}) if k == 0 else ({}, g)
                                lhs, rhs = _equivariance(x, y, a, A, B, sigma, tau, 1)
                                report.record("equivariance", lhs == rhs, {"A": A, "B": B, "a": a})

    # singleton composition: o_a with t~_{p} renames a, and t~_{a} o_a y is y
    for na in sizes:
        A = tuple(LEFT[:na])
        LA = t_tilde(A, W)
        for a in A:
            rename = {u: ("p" if u == a else u) for u in A}
            for g in _basis_vectors(LA, W):
                got = insert_map(a, A, ("p",), W).apply(g, {})
                report.record("singleton", got == relabel(rename, g, A, W), {"A": A, "a": a})
        LB = t_tilde(tuple(MID[:na]), W)
        for g in _basis_vectors(LB, W):
            got = insert_map("a", ("a",), tuple(MID[:na]), W).apply({}, g)
            report.record("singleton", got == g, {"B": tuple(MID[:na])})

    # sampled elements up to weight W
    for _ in range(samples):
        na, nb, nc = (rng.randint(1, sample_arity) for _ in range(3))
        A, B, C = tuple(LEFT[:na]), tuple(MID[:nb]), tuple(RIGHT[:nc])
        LA, LB, LC = t_tilde(A, W), t_tilde(B, W), t_tilde(C, W)
        x, y, z = (_random_element(L, rng, W) for L in (LA, LB, LC))
        a = rng.choice(A)
        if na >= 2:
            b = rng.choice([u for u in A if u != a])
            r1, r2 = _parallel(x, y, z, a, b, A, B, C, W)
            report.record("parallel", r1 == r2, {"A": A, "a": a, "b": b})
        b = rng.choice(B)
        r1, r2 = _sequential(x, y, z, a, b, A, B, C, W)
        report.record("sequential", r1 == r2, {"A": A, "B": B, "a": a, "b": b})
        sigma = dict(zip(A, rng.sample(A, na)))
        tau = dict(zip(B, rng.sample(B, nb)))
        lhs, rhs = _equivariance(x, y, a, A, B, sigma, tau, W)
        report.record("equivariance", lhs == rhs, {"A": A, "B": B, "a": a})
    return report
