"""Pointwise identities of the calculus, evaluated on dual-basis arguments.

On invariant data every function Lambda(omega, gamma) is constant, so all
terms of the form X(f) drop out.  Each check returns the list of argument
tuples where the two sides differ; an empty list means the identity holds.
"""

from __future__ import annotations

import itertools
import random
from typing import List, Optional, Sequence, Tuple

from .algebra import ComplexifiedAlgebra
from .calculus import dbar, lambda_sharp, phi, schouten
from .exterior import SparseElement, enumerate_basis, evaluate, wedge
from .scalars import ZERO, GaussianRational
from .linalg import SparseVec


def _pair(form_index: int, v: SparseVec) -> GaussianRational:
    """omega^m(v) for a g_C vector v."""
    return v.get(form_index, ZERO)


def _vec_element(n: int, v: SparseVec) -> SparseElement:
    return SparseElement("A", n, (1, 0), {((a,), ()): c for a, c in v.items()})


def random_bivector(n: int, rng: random.Random, lo: int = -2, hi: int = 2) -> SparseElement:
    terms = {}
    for m in enumerate_basis(n, 2, 0):
        c = GaussianRational(rng.randint(lo, hi), rng.randint(lo, hi))
        if c:
            terms[m] = c
    return SparseElement("A", n, (2, 0), terms)


def schouten_square_residuals(alg: ComplexifiedAlgebra, lam: SparseElement) -> List[Tuple[int, int, int]]:
    """1/2 [L, L](w, g, d) = w([Lg, Ld]) + g([Ld, Lw]) + d([Lw, Lg])."""
    n = alg.n
    sq = schouten(alg, lam, lam)
    sharp = [lambda_sharp(lam, m) for m in range(n)]
    bad = []
    for w, g, d in itertools.combinations(range(n), 3):
        lhs = evaluate(sq, [("v", w), ("v", g), ("v", d)]) / 2
        rhs = (_pair(w, alg.bracket(sharp[g], sharp[d]))
               + _pair(g, alg.bracket(sharp[d], sharp[w]))
               + _pair(d, alg.bracket(sharp[w], sharp[g])))
        if lhs != rhs:
            bad.append((w, g, d))
    return bad


def vector_bracket_residuals(alg: ComplexifiedAlgebra, lam: SparseElement) -> List[Tuple[int, int, int]]:
    """[L, X](g, d) = -g([Ld, X]) + d([Lg, X]) for basis (1,0)-vectors X."""
    n = alg.n
    sharp = [lambda_sharp(lam, m) for m in range(n)]
    bad = []
    for x in range(n):
        X = {x: GaussianRational(1)}
        left = schouten(alg, lam, SparseElement.generator("A", n, "v", x))
        for g, d in itertools.combinations(range(n), 2):
            lhs = evaluate(left, [("v", g), ("v", d)]) if left.terms else ZERO
            rhs = -_pair(g, alg.bracket(sharp[d], X)) + _pair(d, alg.bracket(sharp[g], X))
            if lhs != rhs:
                bad.append((x, g, d))
    return bad


def form_bracket_residuals(alg: ComplexifiedAlgebra, lam: SparseElement) -> List[Tuple[int, int, int]]:
    """[L, wbar](g, Zbar) = Zbar([Lg, wbar]) for all wbar, g, Zbar."""
    n = alg.n
    bad = []
    for w in range(n):
        wbar = SparseElement.generator("A", n, "f", w)
        left = schouten(alg, lam, wbar)
        for g in range(n):
            inner = schouten(alg, _vec_element(n, lambda_sharp(lam, g)), wbar)
            for z in range(n):
                lhs = evaluate(left, [("v", g), ("f", z)]) if left.terms else ZERO
                rhs = evaluate(inner, [("f", z)]) if inner.terms else ZERO
                if lhs != rhs:
                    bad.append((w, g, z))
    return bad


def dbar_bivector_residuals(alg: ComplexifiedAlgebra, lam: SparseElement) -> List[Tuple[int, int, int]]:
    """(dbar L)(w, g, Zbar) = -w([Zbar, Lg]) + g([Zbar, Lw])."""
    n = alg.n
    d = dbar(alg, lam)
    bad = []
    for w, g in itertools.combinations(range(n), 2):
        for z in range(n):
            zbar = {z + n: GaussianRational(1)}
            lhs = evaluate(d, [("v", w), ("v", g), ("f", z)]) if d.terms else ZERO
            rhs = (-_pair(w, alg.bracket(zbar, lambda_sharp(lam, g)))
                   + _pair(g, alg.bracket(zbar, lambda_sharp(lam, w))))
            if lhs != rhs:
                bad.append((w, g, z))
    return bad


def holomorphic_pairing_residuals(alg: ComplexifiedAlgebra, lam: SparseElement) -> List[Tuple[int, int, int]]:
    """For holomorphic L: w([Zbar, Lg]) = g([Zbar, Lw])."""
    n = alg.n
    bad = []
    for w in range(n):
        for g in range(n):
            for z in range(n):
                zbar = {z + n: GaussianRational(1)}
                if _pair(w, alg.bracket(zbar, lambda_sharp(lam, g))) != \
                        _pair(g, alg.bracket(zbar, lambda_sharp(lam, w))):
                    bad.append((w, g, z))
    return bad


def _eval_b(x: SparseElement, vectors: Sequence[SparseVec], zbars: Sequence[int]) -> GaussianRational:
    """A B-side (p,q) form on p g^{1,0} vectors and q basis vectors Tbar."""
    total = ZERO
    for idx in itertools.product(*[sorted(v) for v in vectors]):
        coef = GaussianRational(1)
        for v, a in zip(vectors, idx):
            coef = coef * v[a]
        total = total + coef * evaluate(x, [("v", a) for a in idx] + [("f", z) for z in zbars])
    return total


def phi_pullback_residuals(alg: ComplexifiedAlgebra, lam: SparseElement) -> List[Tuple]:
    """phi(O)(g, d) = O(Lg, Ld) on (2,0)-forms; phi(G)(g, Zbar) = G(Lg, Zbar) on (1,1)-forms."""
    n = alg.n
    bad = []
    sharp = [lambda_sharp(lam, m) for m in range(n)]
    for m in enumerate_basis(n, 2, 0):
        omega = SparseElement("B", n, (2, 0), {m: GaussianRational(1)})
        img = phi(alg, lam, omega)
        for g, d in itertools.combinations(range(n), 2):
            lhs = evaluate(img, [("v", g), ("v", d)]) if img.terms else ZERO
            if lhs != _eval_b(omega, [sharp[g], sharp[d]], []):
                bad.append(("20", m, g, d))
    for m in enumerate_basis(n, 1, 1):
        gamma = SparseElement("B", n, (1, 1), {m: GaussianRational(1)})
        img = phi(alg, lam, gamma)
        for g in range(n):
            for z in range(n):
                lhs = evaluate(img, [("v", g), ("f", z)]) if img.terms else ZERO
                if lhs != _eval_b(gamma, [sharp[g]], [z]):
                    bad.append(("11", m, g, z))
    return bad


def form_sign_law_residuals(alg: ComplexifiedAlgebra, lam: SparseElement,
                            forms: Optional[Sequence[SparseElement]] = None) -> List[Tuple]:
    """ad(Obar ^ t) = (-1)^q Obar ^ ad(t) for dbar-closed (0,q) Obar and polyvectors t.

    Holds when [L, (0,1)-forms] = 0, e.g. on complex parallelizable algebras.
    """
    n = alg.n
    if forms is None:
        forms = []
        for q in range(n + 1):
            for m in enumerate_basis(n, 0, q):
                f = SparseElement("A", n, (0, q), {m: GaussianRational(1)})
                if q == n or dbar(alg, f).is_zero():
                    forms.append(f)
    bad = []
    for f in forms:
        q = f.bidegree[1]
        for p in range(n + 1):
            for m in enumerate_basis(n, p, 0):
                t = SparseElement("A", n, (p, 0), {m: GaussianRational(1)})
                lhs = schouten(alg, lam, wedge(f, t))
                rhs = wedge(f, schouten(alg, lam, t))
                if q & 1:
                    rhs = -rhs
                if lhs != rhs:
                    bad.append((f, m))
    return bad


# ---------------------------------------------------------------------------
# the four-index decomposition (a, b; k, l) on 2-step algebras with a t/c split

FourIndex = Tuple[int, int, int, int]


def four_index(alg: ComplexifiedAlgebra, mono) -> FourIndex:
    """(t-forms, c-forms; t-vectors, c-vectors) of an A-side monomial."""
    vec, form = mono
    c = set(alg.c_indices)
    kk = sum(1 for i in vec if i not in c)
    ll = len(vec) - kk
    bb = sum(1 for j in form if j in c)
    return (len(form) - bb, bb, kk, ll)


def split_lambda(alg: ComplexifiedAlgebra, lam: SparseElement) -> Tuple[SparseElement, SparseElement]:
    """Lambda = Lambda_1 + Lambda_2 with Lambda_1 in c ^ t and Lambda_2 in t ^ t."""
    c = set(alg.c_indices)
    one, two = {}, {}
    for m, x in lam.terms.items():
        hits = sum(1 for i in m[0] if i in c)
        if hits == 2:
            raise ValueError("Lambda has a c ^ c component")
        (one if hits == 1 else two)[m] = x
    n = alg.n
    return SparseElement("A", n, (2, 0), one), SparseElement("A", n, (2, 0), two)


def containment_violations(alg: ComplexifiedAlgebra, lam: SparseElement) -> List[Tuple[str, object, FourIndex]]:
    """Output components of dbar, ad_{L1}, ad_{L2} outside the permitted ones.

    dbar:     (a, b; k, l) -> (a+1, b;   k-1, l+1)
    ad_{L1}:  (a, b; k, l) -> (a+1, b-1; k,   l+1)
    ad_{L2}:  (a, b; k, l) -> (a+1, b-1; k+1, l)
    """
    if not alg.has_tc_split:
        raise ValueError("algebra has no coordinate t/c split")
    n = alg.n
    lam1, lam2 = split_lambda(alg, lam)
    shifts = {
        "dbar": ((1, 0, -1, 1), lambda x: dbar(alg, x)),
        "ad1": ((1, -1, 0, 1), lambda x: schouten(alg, lam1, x)),
        "ad2": ((1, -1, 1, 0), lambda x: schouten(alg, lam2, x)),
    }
    bad = []
    for p in range(n + 1):
        for q in range(n + 1):
            for m in enumerate_basis(n, p, q):
                x = SparseElement("A", n, (p, q), {m: GaussianRational(1)})
                src = four_index(alg, m)
                for name, (shift, op) in shifts.items():
                    allowed = tuple(s + d for s, d in zip(src, shift))
                    for out in op(x).terms:
                        if four_index(alg, out) != allowed:
                            bad.append((name, m, four_index(alg, out)))
    return bad
