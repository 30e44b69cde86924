"""Chevalley-Eilenberg chains of truncated Lie algebras and the map from BV.

Wedge monomials are strictly increasing tuples of global basis indices of a
:class:`GradedLieAlgebra`.  The differential is

    d(x_1 ^ ... ^ x_k) = sum_{i<j} (-1)^{i+j} [x_i, x_j] ^ x_1 ^ .. ^ x_k  (x_i, x_j omitted)

and homology is computed blockwise in (degree k, weight w).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .bvoperad import (BVElement, Bracket, Delta, Expr, Leaf, bv_basis, monomial_degree,
                       monomial_expression, render_monomial)
from .exactla import Echelon, add_scaled
from .liealg import GradedLieAlgebra, s, sort_labels, t, t_plain, t_tilde
from .operadcore import LieMorphism, insert_map

Wedge = Tuple[int, ...]
WedgeChain = Dict[Wedge, Fraction]


# --------------------------------------------------------------------------
# exterior algebra


def sort_wedge(indices: Sequence[int]) -> Tuple[int, Optional[Wedge]]:
    """Sign and sorted tuple of a wedge of odd letters; (0, None) on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def wedge(x: Mapping[Wedge, object], y: Mapping[Wedge, object]) -> WedgeChain:
    out: dict = {}
    for u, a in x.items():
        for v, b in y.items():
            sign, uv = sort_wedge(u + v)
            if sign:
                add_scaled(out, {uv: Fraction(sign)}, a * b)
    return out


def wedge_of_vectors(vectors: Sequence[Mapping[int, object]]) -> WedgeChain:
    """``v_1 ^ ... ^ v_k`` for Lie algebra vectors."""
    acc: WedgeChain = {(): Fraction(1)}
    for v in vectors:
        acc = wedge(acc, {(i,): c for i, c in v.items()})
        if not acc:
            break
    return acc


def pushforward(f: LieMorphism, chains: Sequence[Optional[Mapping[Wedge, object]]]) -> WedgeChain:
    """``f_*(w_1 ^ w_2 ^ ...)`` with ``w_k`` a chain on summand ``k``."""
    if len(chains) != len(f.sources):
        raise ValueError("one chain per source summand expected")
    acc: WedgeChain = {(): Fraction(1)}
    for k, ch in enumerate(chains):
        if ch is None:
            continue
        part: dict = {}
        for mono, c in ch.items():
            add_scaled(part, wedge_of_vectors([f.images[k][i] for i in mono]), c)
        acc = wedge(acc, part)
    return acc


def wedge_compose(x: Mapping[Wedge, object], a, y: Mapping[Wedge, object], A, B, W: int) -> WedgeChain:
    """Operadic composite ``x o_a y`` in the chains on t~."""
    return pushforward(insert_map(a, A, B, W), [x, y])


def render_chain(L: GradedLieAlgebra, x: Mapping[Wedge, object]) -> str:
    if not x:
        return "0"
    parts = []
    for mono in sorted(x):
        c = x[mono]
        body = "^".join(L.describe(i) for i in mono) if mono else "1"
        parts.append(f"{c}*{body}" if c != 1 else body)
    return " + ".join(parts)


# --------------------------------------------------------------------------
# the complex


def wedge_basis(L: GradedLieAlgebra, k: int, w: int) -> List[Wedge]:
    """Increasing k-tuples of basis indices of total weight w."""
    out: List[Wedge] = []
    weights = L.weights

    def rec(start, k_left, w_left, prefix):
        if k_left == 0:
            if w_left == 0:
                out.append(tuple(prefix))
            return
        for i in range(start, L.dim):
            wi = weights[i]
            # weights are non-decreasing in the index, so the rest weigh >= wi each
            if wi * k_left > w_left:
                break
            prefix.append(i)
            rec(i + 1, k_left - 1, w_left - wi, prefix)
            prefix.pop()

    rec(0, k, w, [])
    return out


def ce_differential(L: GradedLieAlgebra, mono: Wedge) -> WedgeChain:
    out: dict = {}
    k = len(mono)
    for i in range(k):
        for j in range(i + 1, k):
            br = L.bracket_basis(mono[i], mono[j])
            if not br:
                continue
            rest = mono[:i] + mono[i + 1:j] + mono[j + 1:]
            sgn = -1 if (i + j) & 1 else 1  # 0-based i, j have the same parity sum as 1-based
            for idx, c in br.items():
                s2, m = sort_wedge((idx,) + rest)
                if s2:
                    add_scaled(out, {m: Fraction(s2 * sgn)}, c)
    return out


def ce_boundary(L: GradedLieAlgebra, x: Mapping[Wedge, object]) -> WedgeChain:
    out: dict = {}
    for mono, c in x.items():
        add_scaled(out, ce_differential(L, mono), c)
    return out


@dataclass
class ChainComplex:
    """Weight-split CE complex; ``d[(k, w)]`` maps (k, w) to (k-1, w) as column dicts."""

    L: GradedLieAlgebra
    W: int
    bases: Dict[Tuple[int, int], List[Wedge]]
    index: Dict[Tuple[int, int], Dict[Wedge, int]]
    d: Dict[Tuple[int, int], List[Dict[int, Fraction]]]

    def dims(self) -> Dict[Tuple[int, int], int]:
        return {kw: len(b) for kw, b in sorted(self.bases.items())}

    def max_degree(self) -> int:
        return max(k for k, _ in self.bases)

    def to_vector(self, k: int, w: int, chain: Mapping[Wedge, object]) -> Dict[int, Fraction]:
        idx = self.index[(k, w)]
        return {idx[m]: Fraction(c) for m, c in chain.items() if c}

    def check_d_squared(self) -> List[Tuple[int, int]]:
        """Blocks where d o d is nonzero (empty list means d^2 = 0 everywhere)."""
        bad = []
        for (k, w), cols in self.d.items():
            if k < 2:
                continue
            lower = self.d.get((k - 1, w))
            if lower is None:
                continue
            for col in cols:
                acc: dict = {}
                for r, c in col.items():
                    add_scaled(acc, lower[r], c)
                if acc:
                    bad.append((k, w))
                    break
        return bad


def ce_complex(L: GradedLieAlgebra, W: Optional[int] = None) -> ChainComplex:
    W = L.W if W is None else W
    if W > L.W:
        raise ValueError(f"complex window W={W} exceeds the truncation of the algebra ({L.W})")
    bases, index, d = {}, {}, {}
    for w in range(0, W + 1):
        for k in range(0, w + 1):
            b = wedge_basis(L, k, w)
            if not b and not (k == 0 and w == 0):
                continue
            bases[(k, w)] = b
            index[(k, w)] = {m: i for i, m in enumerate(b)}
    for (k, w), b in bases.items():
        if k == 0:
            continue
        tgt = index.get((k - 1, w), {})
        cols = []
        for m in b:
            img = ce_differential(L, m)
            cols.append({tgt[x]: c for x, c in img.items()})
        d[(k, w)] = cols
    return ChainComplex(L, W, bases, index, d)


def _rank(cols: Iterable[Mapping[int, object]]) -> int:
    return len(Echelon.from_vectors(cols))


def homology_ranks(C: ChainComplex) -> Dict[Tuple[int, int], int]:
    ranks_d = {kw: _rank(cols) for kw, cols in C.d.items()}
    out = {}
    for (k, w), b in C.bases.items():
        ker = len(b) - ranks_d.get((k, w), 0)
        out[(k, w)] = ker - ranks_d.get((k + 1, w), 0)
    return out


def total_rank(ranks: Mapping[Tuple[int, int], int], max_weight: Optional[int] = None) -> int:
    return sum(r for (k, w), r in ranks.items() if max_weight is None or w <= max_weight)


def off_diagonal(ranks: Mapping[Tuple[int, int], int]) -> Dict[Tuple[int, int], int]:
    return {kw: r for kw, r in ranks.items() if r and kw[0] != kw[1]}


def homology_window(n: int) -> int:
    """Weight window holding all classes of t~_n: top degree 2n-1 sits in weight 2n-1."""
    return max(1, 2 * n - 1)


# --------------------------------------------------------------------------
# Kunneth


def exterior_table(n: int) -> Dict[Tuple[int, int], int]:
    return {(j, j): comb(n, j) for j in range(n + 1)}


def convolve(p: Mapping[Tuple[int, int], int], q: Mapping[Tuple[int, int], int], W: int) -> Dict[Tuple[int, int], int]:
    out: Dict[Tuple[int, int], int] = {}
    for (k1, w1), a in p.items():
        for (k2, w2), b in q.items():
            if a and b and w1 + w2 <= W:
                out[(k1 + k2, w1 + w2)] = out.get((k1 + k2, w1 + w2), 0) + a * b
    return out


def _nonzero(table):
    return {kw: r for kw, r in table.items() if r}


def kunneth_check(n: int, W: Optional[int] = None) -> dict:
    labels = [str(i) for i in range(1, n + 1)]
    W = homology_window(n) if W is None else W
    tilde = _nonzero(homology_ranks(ce_complex(t_tilde(labels, W))))
    plain = _nonzero(homology_ranks(ce_complex(t_plain(labels, W))))
    if not plain:
        plain = {(0, 0): 1}
    predicted = _nonzero(convolve(plain, exterior_table(n), W))
    return {"n": n, "W": W, "passed": tilde == predicted, "tilde": tilde, "plain": plain, "predicted": predicted}


# --------------------------------------------------------------------------
# BV -> chains


def _min_label(e: Expr) -> str:
    from .bvoperad import expr_leaves

    return min(expr_leaves(e))


def _labels(e: Expr) -> Tuple[str, ...]:
    from .bvoperad import expr_leaves

    return sort_labels(expr_leaves(e))


def expression_to_chains(e: Expr, W: int) -> Tuple[Tuple[str, ...], WedgeChain, int]:
    """Image of an expression as an operadic composite of ab -> 1, [a,b] -> t_ab, Δa -> s_a.

    Returns (labels, chain in the wedge on t~_labels, degree).  The signs
    invert the Koszul signs of the BV composition, so that e.g.
    ``Δ(U) = (-1)^{|U|} Δx o_x U``.
    """
    if isinstance(e, Leaf):
        return (e.label,), {(): Fraction(1)}, 0
    if isinstance(e, Delta):
        B, om, d = expression_to_chains(e.child, W)
        x = B[0]
        L1 = t_tilde([x], W)
        gen = {(i,): c for i, c in L1.gen(s(x)).items()}
        img = wedge_compose(gen, x, om, (x,), B, W)
        return B, _scaled(img, -1 if d & 1 else 1), d + 1
    if isinstance(e, Bracket):
        BU, ou, du = expression_to_chains(e.left, W)
        BV, ov, dv = expression_to_chains(e.right, W)
        return _binary(BU, ou, du, BV, ov, dv, W, bracket=True)
    acc = expression_to_chains(e.factors[0], W)
    for f in e.factors[1:]:
        BV, ov, dv = expression_to_chains(f, W)
        acc = _binary(*acc, BV, ov, dv, W, bracket=False)
    return acc


def _scaled(x: WedgeChain, c) -> WedgeChain:
    return {m: c * v for m, v in x.items()}


def _binary(BU, ou, du, BV, ov, dv, W, bracket: bool):
    if set(BU) & set(BV):
        raise ValueError("label used more than once")
    x, y = BU[0], BV[0]
    if x == y:
        raise ValueError("label clash")
    xy = sort_labels([x, y])
    if bracket:
        L2 = t_tilde(xy, W)
        gen = {(i,): c for i, c in L2.gen(t(x, y)).items()}
        sign = -1 if (dv * (du + 1)) & 1 else 1
        deg = du + dv + 1
    else:
        gen = {(): Fraction(1)}
        sign = -1 if (du * dv) & 1 else 1
        deg = du + dv
    mid = sort_labels([y] + list(BU))
    step = wedge_compose(gen, x, ou, xy, BU, W)
    out = wedge_compose(step, y, ov, mid, BV, W)
    labels = sort_labels(list(BU) + list(BV))
    return labels, _scaled(out, sign), deg


def bv_to_chains(x: BVElement, W: Optional[int] = None) -> WedgeChain:
    """Image of a BV element in the CE chains of t~ on its label set."""
    W = homology_window(len(x.labels)) if W is None else W
    out: dict = {}
    for m, c in x.terms.items():
        _, img, _ = expression_to_chains(monomial_expression(m), W)
        add_scaled(out, img, c)
    return out


def chain_degree_weights(L: GradedLieAlgebra, x: Mapping[Wedge, object]) -> List[Tuple[int, int]]:
    return sorted({(len(m), sum(L.weights[i] for i in m)) for m in x})


# --------------------------------------------------------------------------
# the quasi-isomorphism check


@dataclass
class QuasiIsoReport:
    labels: Tuple[str, ...]
    W: int
    passed: bool
    basis_size: int
    expected: int
    homology_total: int
    ranks: Dict[Tuple[int, int], int]
    independent: int
    non_cycles: List[str] = field(default_factory=list)
    dependent: List[str] = field(default_factory=list)
    outside_window: List[str] = field(default_factory=list)
    off_diagonal_images: List[str] = field(default_factory=list)
    off_diagonal_homology: Dict[Tuple[int, int], int] = field(default_factory=dict)
    d_squared_failures: List[Tuple[int, int]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "W": self.W,
            "passed": self.passed,
            "basis_size": self.basis_size,
            "expected": self.expected,
            "homology_total": self.homology_total,
            "independent_classes": self.independent,
            "ranks": [[k, w, r] for (k, w), r in sorted(self.ranks.items()) if r],
            "non_cycles": self.non_cycles,
            "dependent": self.dependent,
            "outside_window": self.outside_window,
            "off_diagonal_images": self.off_diagonal_images,
            "off_diagonal_homology": [[k, w, r] for (k, w), r in sorted(self.off_diagonal_homology.items())],
            "d_squared_failures": [list(x) for x in self.d_squared_failures],
        }


def verify_bv_quasiiso(A: Iterable, W: Optional[int] = None) -> QuasiIsoReport:
    """Check that canonical BV monomials map to independent cycles spanning homology.

    The default window is ``2|A| - 1``, the weight of the top class.
    Monomials whose degree exceeds ``W`` cannot be represented and are listed
    in ``outside_window`` (the check then fails).
    """
    labels = sort_labels(A)
    n = len(labels)
    W = homology_window(n) if W is None else W
    L = t_tilde(labels, W)
    C = ce_complex(L, W)
    ranks = homology_ranks(C)
    basis = bv_basis(labels)
    expected = 2 ** n * factorial(n)

    non_cycles, outside, off_diag = [], [], []
    images: Dict[int, List[Tuple[str, WedgeChain]]] = {}
    for m in basis:
        deg = monomial_degree(m)
        name = render_monomial(m)
        if deg > W:
            outside.append(name)
            continue
        _, img, _ = expression_to_chains(monomial_expression(m), W)
        if ce_boundary(L, img):
            non_cycles.append(name)
        if any(kw != (deg, deg) for kw in chain_degree_weights(L, img)):
            off_diag.append(name)
        images.setdefault(deg, []).append((name, img))

    # independence modulo boundaries, one degree at a time over all weights
    dependent = []
    independent = 0
    for k, imgs in sorted(images.items()):
        cols: Dict[Tuple[int, Wedge], int] = {}

        def vec(chain):
            out = {}
            for mono, c in chain.items():
                key = (sum(L.weights[i] for i in mono), mono)
                out[cols.setdefault(key, len(cols))] = c
            return out

        ech = Echelon()
        for w in range(0, W + 1):
            src = C.bases.get((k + 1, w), [])
            for mono in src:
                ech.add(vec(ce_differential(L, mono)))
        for name, img in imgs:
            if ech.add(vec(img)):
                independent += 1
            else:
                dependent.append(name)

    htotal = total_rank(ranks)
    passed = (not non_cycles and not dependent and not outside and len(basis) == expected
              and htotal == expected and independent == expected)
    return QuasiIsoReport(labels, W, passed, len(basis), expected, htotal, ranks, independent,
                          non_cycles, dependent, outside, off_diag, off_diagonal(ranks), C.check_d_squared())


def diagonal_ranks(L: GradedLieAlgebra, max_degree: Optional[int] = None) -> Dict[int, int]:
    """Ranks of H_k in weight k, for all k.

    A diagonal block (k, k) consists of wedges of weight-one elements and
    receives no boundaries, so its homology is the kernel of d into (k-1, k);
    a truncation at weight 2 suffices.
    """
    if L.W < 2:
        raise ValueError("diagonal ranks need the algebra truncated at weight >= 2")
    n1 = len(L.indices_of_weight(1))
    top = n1 if max_degree is None else min(n1, max_degree)
    out = {}
    for k in range(0, top + 1):
        src = wedge_basis(L, k, k)
        if k < 2:
            out[k] = len(src)
            continue
        tgt = {m: i for i, m in enumerate(wedge_basis(L, k - 1, k))}
        cols = [{tgt[x]: c for x, c in ce_differential(L, m).items()} for m in src]
        out[k] = len(src) - _rank(cols)
    return out


def verify_bv_quasiiso_diagonal(A: Iterable, off_diagonal_window: int = 4) -> dict:
    """Diagonal form of the quasi-isomorphism check, feasible at four labels.

    Images of degree-k monomials lie in the (k, k) block, where classes are
    cycles modulo nothing, so independence is plain linear independence.
    Off-diagonal homology is checked only up to ``off_diagonal_window``.
    """
    labels = sort_labels(A)
    n = len(labels)
    L = t_tilde(labels, 2)
    basis = bv_basis(labels)
    expected = 2 ** n * factorial(n)
    non_cycles, off_diag = [], []
    by_degree: Dict[int, Echelon] = {}
    independent = 0
    for m in basis:
        name = render_monomial(m)
        deg = monomial_degree(m)
        _, img, _ = expression_to_chains(monomial_expression(m), 2)
        if any(kw != (deg, deg) for kw in chain_degree_weights(L, img)):
            off_diag.append(name)
            continue
        if ce_boundary(L, img):
            non_cycles.append(name)
        ech = by_degree.setdefault(deg, Echelon())
        cols = {mono: i for i, mono in enumerate(wedge_basis(L, deg, deg))}
        if ech.add({cols[mono]: c for mono, c in img.items()}):
            independent += 1
    diag = diagonal_ranks(L)
    window = homology_ranks(ce_complex(t_tilde(labels, off_diagonal_window)))
    extra = off_diagonal(window)
    total = sum(diag.values())
    passed = not non_cycles and not off_diag and not extra and total == expected and independent == expected
    return {
        "labels": list(labels),
        "passed": passed,
        "expected": expected,
        "diagonal_total": total,
        "diagonal_ranks": [[k, r] for k, r in sorted(diag.items()) if r],
        "independent_classes": independent,
        "non_cycles": non_cycles,
        "off_diagonal_images": off_diag,
        "off_diagonal_window": off_diagonal_window,
        "off_diagonal_homology": [[k, w, r] for (k, w), r in sorted(extra.items())],
    }
