"""Differential operators on invariant elements.

A-side: the algebroid L = g^{1,0} + g^{*(0,1)} with bracket
  [T_a, T_b]      = Lie bracket (stays in g^{1,0}),
  [T_a, wbar^b]   = Lie derivative of wbar^b along T_a,
  [wbar, wbar']   = 0,
extended to the exterior algebra as the Schouten bracket

    [u1^...^uk, w1^...^wl] = sum_{i,j} (-1)^{i+j} [ui, wj] ^ (u without i) ^ (w without j).

dbar is the Chevalley-Eilenberg differential of the dual algebroid acting on
that exterior algebra; on generators
  dbar T      = sum_k wbar^k ^ pr^{1,0}[Tbar_k, T],
  dbar wbar   = (0,2)-part of d wbar,
and it is extended by the graded Leibniz rule.  Anchor terms vanish on
invariant data.

B-side: forms on g_C with d the Chevalley-Eilenberg differential, split as
d = partial + dbar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from .algebra import ComplexifiedAlgebra
from .errors import DegreeMismatch, NotPoisson, SideMismatch, UnsupportedPair
from .exterior import (Monomial, SparseElement, Token, canonical, contract,
                       tokens_of, wedge)
from .scalars import ZERO, GaussianRational

# an expansion of a generator image: list of (token tuple, coefficient)
Expansion = List[Tuple[Tuple[Token, ...], GaussianRational]]


def _cache(alg: ComplexifiedAlgebra) -> dict:
    return alg.__dict__.setdefault("_calculus_cache", {})


# ---------------------------------------------------------------------------
# generator-level data


def generator_bracket(alg: ComplexifiedAlgebra, s: Token, t: Token) -> Expansion:
    """Bracket of two generators of L as a degree-one expansion."""
    n = alg.n
    ks, i = s
    kt, j = t
    if ks == "v" and kt == "v":
        out = []
        for c, x in sorted(alg.bracket_index(i, j).items()):
            if c >= n:
                raise AssertionError("non-integrable bracket reached the calculus")
            out.append(((("v", c),), x))
        return out
    if ks == "v" and kt == "f":
        # (L_{T_i} wbar^j)(Tbar_c) = -wbar^j([T_i, Tbar_c])
        out = []
        for c in range(n):
            x = alg.bracket_index(i, c + n).get(j + n)
            if x:
                out.append(((("f", c),), -x))
        return out
    if ks == "f" and kt == "v":
        return [(tok, -x) for tok, x in generator_bracket(alg, t, s)]
    return []


def _dbar_generator(alg: ComplexifiedAlgebra, t: Token) -> Expansion:
    n = alg.n
    kind, i = t
    out: Expansion = []
    if kind == "v":
        for k in range(n):
            for c, x in sorted(alg.bracket_index(k + n, i).items()):
                if c < n:
                    out.append(((("f", k), ("v", c)), x))
    else:
        for a in range(n):
            for b in range(a + 1, n):
                x = alg.bracket_index(a + n, b + n).get(i + n)
                if x:
                    out.append(((("f", a), ("f", b)), -x))
    return out


def _form_token(n: int, x: int) -> Token:
    return ("v", x) if x < n else ("f", x - n)


def _d_form_generator(alg: ComplexifiedAlgebra, t: Token) -> Expansion:
    """d of a dual-basis one-form on g_C: d theta(x, y) = -theta([x, y])."""
    n = alg.n
    kind, i = t
    target = i if kind == "v" else i + n
    out: Expansion = []
    for y in range(2 * n):
        for z in range(y + 1, 2 * n):
            x = alg.bracket_index(y, z).get(target)
            if x:
                out.append(((_form_token(n, y), _form_token(n, z)), -x))
    return out


def _generator_table(alg: ComplexifiedAlgebra, key: str, fn) -> Dict[Token, Expansion]:
    cache = _cache(alg)
    if key not in cache:
        table = {}
        for i in range(alg.n):
            table[("v", i)] = fn(alg, ("v", i))
            table[("f", i)] = fn(alg, ("f", i))
        cache[key] = table
    return cache[key]


def _apply_derivation(x: SparseElement, table: Dict[Token, Expansion],
                      target: Tuple[int, int] = None) -> Dict[Monomial, GaussianRational]:
    """Odd derivation of degree +1 given on generators; returns raw terms."""
    terms: Dict[Monomial, GaussianRational] = {}
    for m, c in x.terms.items():
        toks = tokens_of(m)
        for pos, t in enumerate(toks):
            sgn = -1 if pos & 1 else 1
            for img, a in table[t]:
                s, mono = canonical(toks[:pos] + list(img) + toks[pos + 1:])
                if not s:
                    continue
                if target is not None and (len(mono[0]), len(mono[1])) != target:
                    continue
                v = c * a
                terms[mono] = terms.get(mono, ZERO) + (v if s * sgn > 0 else -v)
    return terms


# ---------------------------------------------------------------------------
# operators


def dbar(alg: ComplexifiedAlgebra, x: SparseElement) -> SparseElement:
    """dbar: (p,q) -> (p,q+1) on either side."""
    p, q = x.bidegree
    if x.side == "A":
        table = _generator_table(alg, "dbar_A", _dbar_generator)
        return SparseElement("A", alg.n, (p, q + 1), _apply_derivation(x, table))
    table = _generator_table(alg, "d_B", _d_form_generator)
    return SparseElement("B", alg.n, (p, q + 1), _apply_derivation(x, table, (p, q + 1)))


def partial(alg: ComplexifiedAlgebra, x: SparseElement) -> SparseElement:
    """partial on B-side forms: the (p+1,q) part of d."""
    if x.side != "B":
        raise SideMismatch("partial acts on B-side forms")
    p, q = x.bidegree
    table = _generator_table(alg, "d_B", _d_form_generator)
    return SparseElement("B", alg.n, (p + 1, q), _apply_derivation(x, table, (p + 1, q)))


def d_full(alg: ComplexifiedAlgebra, x: SparseElement) -> Dict[Tuple[int, int], SparseElement]:
    """Full Chevalley-Eilenberg d of a B-side form, split by bidegree."""
    if x.side != "B":
        raise SideMismatch("d acts on B-side forms")
    table = _generator_table(alg, "d_B", _d_form_generator)
    raw = _apply_derivation(x, table)
    parts: Dict[Tuple[int, int], Dict[Monomial, GaussianRational]] = {}
    for m, c in raw.items():
        parts.setdefault((len(m[0]), len(m[1])), {})[m] = c
    return {bd: SparseElement("B", alg.n, bd, t) for bd, t in parts.items()
            if any(t.values())}


def schouten(alg: ComplexifiedAlgebra, a: SparseElement, b: SparseElement) -> SparseElement:
    """Schouten bracket on the A side.

    Supported: polyvector with polyvector, and a polyvector against any
    A-side element (e.g. a (0,q)-form or a mixed element).
    """
    if a.side != "A" or b.side != "A":
        raise UnsupportedPair("Schouten bracket is defined on A-side elements only")
    if a.bidegree[1] > 0 and b.bidegree[1] > 0 and a.terms and b.terms:
        raise UnsupportedPair("both arguments carry (0,1)-form factors")
    bideg = (a.bidegree[0] + b.bidegree[0] - 1, a.bidegree[1] + b.bidegree[1])
    terms: Dict[Monomial, GaussianRational] = {}
    for ma, ca in a.terms.items():
        ta = tokens_of(ma)
        for mb, cb in b.terms.items():
            tb = tokens_of(mb)
            cab = ca * cb
            for i, u in enumerate(ta):
                rest_a = ta[:i] + ta[i + 1:]
                for j, w in enumerate(tb):
                    br = generator_bracket(alg, u, w)
                    if not br:
                        continue
                    rest_b = tb[:j] + tb[j + 1:]
                    sgn = -1 if (i + j) & 1 else 1
                    for img, x in br:
                        s, mono = canonical(list(img) + rest_a + rest_b)
                        if not s:
                            continue
                        v = cab * x
                        terms[mono] = terms.get(mono, ZERO) + (v if s * sgn > 0 else -v)
    if bideg[0] < 0:
        return SparseElement("A", alg.n, (0, bideg[1]))
    return SparseElement("A", alg.n, bideg, terms)


@dataclass(frozen=True)
class PoissonCandidate:
    lam: SparseElement
    is_holomorphic: bool
    is_poisson: bool

    @property
    def ok(self) -> bool:
        return self.is_holomorphic and self.is_poisson


def check_holomorphic_poisson(alg: ComplexifiedAlgebra, lam: SparseElement) -> PoissonCandidate:
    if lam.side != "A" or (lam.terms and lam.bidegree != (2, 0)):
        raise DegreeMismatch("a Poisson candidate is an A-side (2,0) element")
    if not lam.terms:
        lam = SparseElement("A", alg.n, (2, 0))
    holo = dbar(alg, lam).is_zero()
    poisson = schouten(alg, lam, lam).is_zero()
    return PoissonCandidate(lam, holo, poisson)


LambdaLike = Union[PoissonCandidate, SparseElement]


def _as_bivector(alg, lam: LambdaLike, raw: bool) -> SparseElement:
    if isinstance(lam, PoissonCandidate):
        if not raw and not lam.ok:
            raise NotPoisson("bivector is not holomorphic Poisson")
        return lam.lam
    if not raw:
        cand = check_holomorphic_poisson(alg, lam)
        if not cand.ok:
            raise NotPoisson("bivector is not holomorphic Poisson")
    return lam


def ad_lambda(alg: ComplexifiedAlgebra, lam: LambdaLike, x: SparseElement, raw: bool = False) -> SparseElement:
    """[Lambda, x]: A^{p,q} -> A^{p+1,q}.  ``raw=True`` skips the Poisson check."""
    bivector = _as_bivector(alg, lam, raw)
    p, q = x.bidegree
    out = schouten(alg, bivector, x)
    if not out.terms:
        return SparseElement("A", alg.n, (p + 1, q))
    return out


def phi(alg: ComplexifiedAlgebra, lam: LambdaLike, x: SparseElement) -> SparseElement:
    """Multiplicative map B^{p,q} -> A^{p,q}: omega -> -(Lambda omega), identity on (0,q)."""
    if x.side != "B":
        raise DegreeMismatch("phi maps B-side forms")
    bivector = lam.lam if isinstance(lam, PoissonCandidate) else lam
    n = alg.n
    images = [(-contract(bivector, m)) for m in range(n)]
    out = SparseElement("A", n, x.bidegree)
    for (vec, form), c in x.terms.items():
        prod = SparseElement("A", n, (0, len(form)), {((), form): c})
        # phi(w_{i1}^...^w_{ip} ^ F) = phi(w_{i1}) ^ ... ^ phi(w_{ip}) ^ F
        for i in reversed(vec):
            prod = wedge(images[i], prod)
            if not prod.terms:
                break
        if prod.terms:
            out = out + prod
    return out


# ---------------------------------------------------------------------------
# g_C-level helpers used by the identity checks


def vector_of(x: SparseElement) -> Dict[int, GaussianRational]:
    """An A-side (1,0) element as a 2n-index g_C vector."""
    if x.terms and x.bidegree != (1, 0):
        raise DegreeMismatch("expected a (1,0) vector")
    return {vec[0]: c for (vec, _), c in x.terms.items()}


def lambda_sharp(lam: SparseElement, m: int) -> Dict[int, GaussianRational]:
    """Lambda omega^m as a g_C vector."""
    return vector_of(contract(lam, m))


def lambda_pair(lam: SparseElement, a: int, b: int) -> GaussianRational:
    """Lambda(omega^a, omega^b)."""
    return lambda_sharp(lam, a).get(b, ZERO)
