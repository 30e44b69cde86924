"""Truncated enveloping algebras, the reduced bar complex and the shuffle product.

PBW monomials are non-decreasing tuples of global Lie basis indices (the
Lie basis is already ordered by weight, then index).  Bar chains are dicts
``{(u_1, ..., u_n): coefficient}`` whose factors are PBW monomials of
positive weight; the differential is

    d(u_1 | ... | u_n) = sum_{i=1}^{n-1} (-1)^i u_1 | ... | u_i u_{i+1} | ... | u_n.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactla import Echelon, SparseMatrix, add_scaled, reduce
from .homology import ChainComplex, ce_complex, homology_ranks, sort_wedge
from .liealg import GradedLieAlgebra, sort_labels, t_tilde
from .operadcore import LieMorphism, insert_map

PBW = Tuple[int, ...]
UElement = Dict[PBW, Fraction]
BarChain = Dict[tuple, Fraction]


class TruncatedUEA:
    """``U(L)`` modulo elements of weight > W, in the PBW basis."""

    def __init__(self, L: GradedLieAlgebra, W: Optional[int] = None):
        W = L.W if W is None else W
        if W > L.W:
            raise ValueError(f"enveloping algebra window W={W} exceeds the Lie truncation {L.W}")
        self.L = L
        self.W = W
        self.weights = L.weights
        self.basis: Dict[int, List[PBW]] = {w: [] for w in range(W + 1)}
        self._enumerate((), 0, 0)
        for w in self.basis:
            self.basis[w].sort()
        self.index: Dict[PBW, int] = {}
        for w in range(W + 1):
            for m in self.basis[w]:
                self.index[m] = len(self.index)
        self._straighten = lru_cache(maxsize=None)(self._straighten_uncached)

    def _enumerate(self, prefix: PBW, start: int, weight: int):
        self.basis[weight].append(prefix)
        for i in range(start, self.L.dim):
            w = weight + self.weights[i]
            if w > self.W:
                break
            self._enumerate(prefix + (i,), i, w)

    def weight(self, m: Sequence[int]) -> int:
        return sum(self.weights[i] for i in m)

    def graded_dims(self) -> Dict[int, int]:
        return {w: len(b) for w, b in self.basis.items()}

    def _straighten_uncached(self, word: PBW) -> Tuple[Tuple[PBW, Fraction], ...]:
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                out: dict = {}
                swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
                add_scaled(out, dict(self._straighten(swapped)))
                for c, x in self.L.bracket_basis(word[i], word[i + 1]).items():
                    add_scaled(out, dict(self._straighten(word[:i] + (c,) + word[i + 2:])), x)
                return tuple(sorted(out.items()))
        return ((word, Fraction(1)),)

    def straighten(self, word: Sequence[int]) -> UElement:
        """PBW expansion of an arbitrary word in the Lie basis (zero above W)."""
        word = tuple(word)
        if self.weight(word) > self.W:
            return {}
        return dict(self._straighten(word))

    def mul(self, x: Mapping[PBW, object], y: Mapping[PBW, object]) -> UElement:
        out: dict = {}
        for u, a in x.items():
            for v, b in y.items():
                if self.weight(u) + self.weight(v) <= self.W:
                    add_scaled(out, self.straighten(u + v), a * b)
        return out

    def one(self) -> UElement:
        return {(): Fraction(1)}

    def from_lie(self, v: Mapping[int, object]) -> UElement:
        return {(i,): Fraction(c) for i, c in v.items() if c}

    @staticmethod
    def counit(x: Mapping[PBW, object]) -> Fraction:
        return Fraction(x.get((), 0))

    def __repr__(self) -> str:
        return f"TruncatedUEA(W={self.W}, dims={self.graded_dims()})"


def uea_truncated(L: GradedLieAlgebra, W: Optional[int] = None) -> TruncatedUEA:
    return TruncatedUEA(L, W)


def symmetric_algebra_dims(lie_dims: Mapping[int, int], W: int) -> Dict[int, int]:
    """Coefficients of prod_w (1 - t^w)^(-d_w) up to t^W."""
    series = [1] + [0] * W
    for w, d in lie_dims.items():
        for _ in range(d):
            for k in range(w, W + 1):
                series[k] += series[k - w]
    return dict(enumerate(series))


def induced_algebra_map(f: LieMorphism, target: TruncatedUEA) -> Callable:
    """``U(f)`` on one summand: ``x_1...x_k -> f(x_1)...f(x_k)``."""

    def apply(k: int, x: Mapping[PBW, object]) -> UElement:
        out: dict = {}
        for m, c in x.items():
            acc = target.one()
            for i in m:
                acc = target.mul(acc, target.from_lie(f.images[k][i]))
            add_scaled(out, acc, c)
        return out

    return apply


# --------------------------------------------------------------------------
# bar complex


def bar_basis(U: TruncatedUEA, n: int, w: int) -> List[tuple]:
    out = []

    def rec(k_left, w_left, prefix):
        if k_left == 0:
            if w_left == 0:
                out.append(tuple(prefix))
            return
        for wi in range(1, w_left - (k_left - 1) + 1):
            for m in U.basis.get(wi, ()):
                prefix.append(m)
                rec(k_left - 1, w_left - wi, prefix)
                prefix.pop()

    rec(n, w, [])
    return out


def bar_differential(U: TruncatedUEA, tensor: tuple) -> BarChain:
    out: dict = {}
    for i in range(len(tensor) - 1):
        sign = -1 if i % 2 == 0 else 1  # (-1)^(i+1) for the 0-based position
        prod = U.straighten(tensor[i] + tensor[i + 1])
        for m, c in prod.items():
            add_scaled(out, {tensor[:i] + (m,) + tensor[i + 2:]: Fraction(sign)}, c)
    return out


def bar_boundary(U: TruncatedUEA, x: Mapping[tuple, object]) -> BarChain:
    out: dict = {}
    for t, c in x.items():
        add_scaled(out, bar_differential(U, t), c)
    return out


def bar_complex(U: TruncatedUEA, W: Optional[int] = None) -> ChainComplex:
    W = U.W if W is None else W
    if W > U.W:
        raise ValueError("bar window exceeds the algebra truncation")
    bases, index, d = {}, {}, {}
    for w in range(W + 1):
        for n in range(w + 1):
            b = bar_basis(U, n, w)
            if not b:
                continue
            bases[(n, w)] = b
            index[(n, w)] = {t: i for i, t in enumerate(b)}
    for (n, w), b in bases.items():
        if n == 0:
            continue
        tgt = index.get((n - 1, w), {})
        d[(n, w)] = [{tgt[x]: c for x, c in bar_differential(U, t).items()} for t in b]
    return ChainComplex(U, W, bases, index, d)


# --------------------------------------------------------------------------
# shuffle product and antisymmetrization


def shuffle_sign_pairs(p_len: int, q_len: int):
    """All (p, q)-shuffles as (sign, slots of the p factors)."""
    from itertools import combinations

    n = p_len + q_len
    for slots in combinations(range(n), p_len):
        inv = 0
        for k, s in enumerate(slots):
            inv += s - k  # q factors placed before this p factor
        yield (-1 if inv & 1 else 1), slots


def em_shuffle(p: Mapping[tuple, object], q: Mapping[tuple, object],
               left: Callable[[Hashable], Hashable] = lambda u: (u, ()),
               right: Callable[[Hashable], Hashable] = lambda v: ((), v)) -> BarChain:
    """Eilenberg-MacLane shuffle; factors are tagged by ``left`` and ``right``."""
    out: dict = {}
    for tp, a in p.items():
        for tq, b in q.items():
            n = len(tp) + len(tq)
            for sign, slots in shuffle_sign_pairs(len(tp), len(tq)):
                res = [None] * n
                it_p, it_q = iter(tp), iter(tq)
                slotset = set(slots)
                for k in range(n):
                    res[k] = left(next(it_p)) if k in slotset else right(next(it_q))
                add_scaled(out, {tuple(res): Fraction(sign)}, a * b)
    return out


def antisym_embed(omega: Mapping[Tuple[int, ...], object]) -> BarChain:
    """``x_1 ^ ... ^ x_n -> sum_sigma sgn(sigma) x_sigma(1) | ... | x_sigma(n)``."""
    out: dict = {}
    for mono, c in omega.items():
        for perm in permutations(range(len(mono))):
            sign, _ = sort_wedge(perm)
            add_scaled(out, {tuple((mono[i],) for i in perm): Fraction(sign)}, c)
    return out


def bar_compose(x: Mapping[tuple, object], a, y: Mapping[tuple, object], A, B, W: int) -> BarChain:
    """Composite in C(U(t~)): shuffle into U(t~_A) (x) U(t~_B), then push along the insertion map."""
    A, B = sort_labels(A), sort_labels(B)
    f = insert_map(a, A, B, W)
    target = TruncatedUEA(f.target, W)
    apply = induced_algebra_map(f, target)
    out: dict = {}
    for tensor, c in em_shuffle(x, y).items():
        acc: BarChain = {(): Fraction(c)}
        for u, v in tensor:
            img = target.mul(apply(0, {u: 1}), apply(1, {v: 1}))
            acc = {t + (m,): a1 * a2 for t, a1 in acc.items() for m, a2 in img.items()}
        add_scaled(out, acc)
    return out


# --------------------------------------------------------------------------
# verification


def _vec(index: Mapping[tuple, int], chain: Mapping[tuple, object]) -> Dict[int, Fraction]:
    return {index[t]: Fraction(c) for t, c in chain.items() if c}


def check_antisym_chain_map(L: GradedLieAlgebra, W: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Wedge basis elements where d_bar o antisym != antisym o d_CE."""
    from .homology import ce_differential

    W = L.W if W is None else W
    U = TruncatedUEA(L, W)
    C = ce_complex(L, W)
    bad = []
    for (k, w), basis in C.bases.items():
        for mono in basis:
            lhs = bar_boundary(U, antisym_embed({mono: 1}))
            rhs = antisym_embed(ce_differential(L, mono))
            if lhs != rhs:
                bad.append(mono)
    return bad


def verify_bar_quasiiso(A: Iterable, W: int = 3) -> dict:
    """Bar homology ranks against CE ranks, and the map induced by antisymmetrization."""
    labels = sort_labels(A)
    L = t_tilde(labels, W)
    U = TruncatedUEA(L, W)
    CE = ce_complex(L, W)
    BAR = bar_complex(U, W)
    ce_ranks = homology_ranks(CE)
    bar_ranks = homology_ranks(BAR)
    keys = sorted(set(ce_ranks) | set(bar_ranks))
    mismatches = [[k, w, ce_ranks.get((k, w), 0), bar_ranks.get((k, w), 0)] for k, w in keys
                  if ce_ranks.get((k, w), 0) != bar_ranks.get((k, w), 0)]

    induced = {}
    for (k, w), basis in CE.bases.items():
        h = ce_ranks.get((k, w), 0)
        if not h:
            continue
        # cycles of the CE block
        tgt = CE.index.get((k - 1, w), {})
        m = SparseMatrix.from_columns(len(tgt), CE.d[(k, w)]) if k > 0 else SparseMatrix(0, len(basis))
        cycles = reduce(m).kernel_basis
        bidx = BAR.index[(k, w)]
        ech = Echelon()
        for col in BAR.d.get((k + 1, w), []):
            ech.add(col)
        before = len(ech)
        for z in cycles:
            chain = {basis[i]: c for i, c in z.items()}
            ech.add(_vec(bidx, antisym_embed(chain)))
        induced[(k, w)] = len(ech) - before
    induced_bad = [[k, w, r, ce_ranks[(k, w)]] for (k, w), r in sorted(induced.items()) if r != ce_ranks[(k, w)]]
    d2 = BAR.check_d_squared()
    passed = not mismatches and not induced_bad and not d2
    return {
        "labels": list(labels),
        "W": W,
        "passed": passed,
        "ce_ranks": [[k, w, r] for (k, w), r in sorted(ce_ranks.items()) if r],
        "bar_ranks": [[k, w, r] for (k, w), r in sorted(bar_ranks.items()) if r],
        "mismatches": mismatches,
        "induced_rank_failures": induced_bad,
        "bar_dims": [[k, w, n] for (k, w), n in sorted(BAR.dims().items())],
        "d_squared_failures": [list(x) for x in d2],
    }


def truncation_stability(A: Iterable, W: int) -> dict:
    """Bar ranks in weight <= W recomputed with truncation W + 1."""
    labels = sort_labels(A)
    low = homology_ranks(bar_complex(TruncatedUEA(t_tilde(labels, W), W)))
    high = homology_ranks(bar_complex(TruncatedUEA(t_tilde(labels, W + 1), W + 1)))
    high = {kw: r for kw, r in high.items() if kw[1] <= W}
    diff = sorted(kw for kw in set(low) | set(high) if low.get(kw, 0) != high.get(kw, 0))
    return {"labels": list(labels), "W": W, "passed": not diff, "differences": [list(kw) for kw in diff]}
