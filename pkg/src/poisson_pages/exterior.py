"""Bigraded exterior algebras A^{p,q} and B^{p,q}.

A monomial is a pair ``(vec, form)`` of strictly increasing index tuples.
On the A side ``vec`` indexes holomorphic vectors T_a and ``form`` indexes
the (0,1)-forms dual to Tbar_b; on the B side ``vec`` indexes the
(1,0)-forms dual to T_a.  The stored monomial means
``v_{i1} ^ ... ^ v_{ip} ^ f_{j1} ^ ... ^ f_{jq}``: degree-one factors first,
then the (0,1)-forms, and every factor is odd in the total degree p + q.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DegreeMismatch, SchemaError, SideMismatch
from .scalars import ONE, ZERO, GaussianRational

Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]
# a generator token: ("v", i) or ("f", j)
Token = Tuple[str, int]

SIDES = ("A", "B")


def _sort_sign(keys: Sequence) -> int:
    """Sign of the permutation sorting ``keys``; 0 on a repeated key."""
    if len(set(keys)) != len(keys):
        return 0
    inv = 0
    for i in range(len(keys)):
        ki = keys[i]
        for j in range(i + 1, len(keys)):
            if keys[j] < ki:
                inv += 1
    return -1 if inv & 1 else 1


def canonical(tokens: Sequence[Token]) -> Tuple[int, Optional[Monomial]]:
    """Sign and canonical monomial of an ordered product of generators."""
    keys = [(0 if kind == "v" else 1, i) for kind, i in tokens]
    s = _sort_sign(keys)
    if s == 0:
        return 0, None
    vec = tuple(sorted(i for kind, i in tokens if kind == "v"))
    form = tuple(sorted(i for kind, i in tokens if kind == "f"))
    return s, (vec, form)


def tokens_of(m: Monomial) -> List[Token]:
    return [("v", i) for i in m[0]] + [("f", j) for j in m[1]]


class SparseElement:
    """Homogeneous element of A^{p,q} or B^{p,q} with exact coefficients."""

    __slots__ = ("side", "n", "bidegree", "terms")

    def __init__(self, side: str, n: int, bidegree: Tuple[int, int],
                 terms: Optional[Dict[Monomial, GaussianRational]] = None):
        if side not in SIDES:
            raise ValueError(f"side must be 'A' or 'B', got {side!r}")
        self.side = side
        self.n = n
        self.bidegree = (int(bidegree[0]), int(bidegree[1]))
        clean: Dict[Monomial, GaussianRational] = {}
        for m, c in (terms or {}).items():
            c = GaussianRational.coerce(c)
            if not c:
                continue
            vec, form = tuple(m[0]), tuple(m[1])
            if (len(vec), len(form)) != self.bidegree:
                raise DegreeMismatch(f"monomial {m} does not have bidegree {self.bidegree}")
            if list(vec) != sorted(set(vec)) or list(form) != sorted(set(form)):
                raise ValueError(f"monomial {m} is not canonical")
            if any(not 0 <= i < n for i in vec + form):
                raise ValueError(f"monomial {m} out of range for n={n}")
            clean[(vec, form)] = c
        self.terms = clean

    # construction helpers

    @classmethod
    def zero(cls, side: str, n: int, bidegree) -> "SparseElement":
        return cls(side, n, bidegree)

    @classmethod
    def one(cls, side: str, n: int) -> "SparseElement":
        return cls(side, n, (0, 0), {((), ()): ONE})

    @classmethod
    def generator(cls, side: str, n: int, kind: str, index: int, coef=ONE) -> "SparseElement":
        if kind == "v":
            return cls(side, n, (1, 0), {((index,), ()): coef})
        return cls(side, n, (0, 1), {((), (index,)): coef})

    @classmethod
    def from_tokens(cls, side: str, n: int, tokens: Sequence[Token], coef=ONE) -> "SparseElement":
        p = sum(1 for k, _ in tokens if k == "v")
        s, m = canonical(tokens)
        if s == 0:
            return cls(side, n, (p, len(tokens) - p))
        return cls(side, n, m and (len(m[0]), len(m[1])), {m: GaussianRational.coerce(coef) * s})

    # algebra

    @property
    def degree(self) -> int:
        return self.bidegree[0] + self.bidegree[1]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "SparseElement"):
        if not isinstance(other, SparseElement):
            raise TypeError("expected SparseElement")
        if other.side != self.side:
            raise SideMismatch(f"{self.side}-side vs {other.side}-side")
        if other.n != self.n:
            raise SideMismatch("elements live over algebras of different dimension")

    def __add__(self, other: "SparseElement") -> "SparseElement":
        self._check(other)
        if other.bidegree != self.bidegree:
            if not other.terms:
                return self
            if not self.terms:
                return other
            raise DegreeMismatch(f"adding bidegrees {self.bidegree} and {other.bidegree}")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return SparseElement(self.side, self.n, self.bidegree, terms)

    def __neg__(self):
        return SparseElement(self.side, self.n, self.bidegree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "SparseElement":
        a = GaussianRational.coerce(a)
        return SparseElement(self.side, self.n, self.bidegree, {m: a * c for m, c in self.terms.items()})

    def __mul__(self, a):
        if isinstance(a, SparseElement):
            return NotImplemented
        return self.scale(a)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparseElement):
            return NotImplemented
        if self.side != other.side or self.n != other.n:
            return False
        if not self.terms and not other.terms:
            return True
        return self.bidegree == other.bidegree and self.terms == other.terms

    def __hash__(self):
        return hash((self.side, self.n, self.bidegree, frozenset(self.terms.items())))

    def conjugate_coefficients(self) -> "SparseElement":
        return SparseElement(self.side, self.n, self.bidegree,
                             {m: c.conjugate() for m, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return f"SparseElement({self.side}, {self.bidegree}, 0)"
        body = " + ".join(f"{c}*{_mono_str(m)}" for m, c in sorted(self.terms.items()))
        return f"SparseElement({self.side}, {self.bidegree}, {body})"

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "n": self.n,
            "bidegree": list(self.bidegree),
            "terms": [
                {"monomial": {"vec": list(m[0]), "form": list(m[1])}, "coefficient": c.to_json()}
                for m, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, doc, side: Optional[str] = None, n: Optional[int] = None) -> "SparseElement":
        try:
            if isinstance(doc, list):
                doc = {"terms": doc}
            side = doc.get("side", side) or "A"
            n = doc.get("n", n)
            terms = {}
            bideg = doc.get("bidegree")
            for t in doc["terms"]:
                m = (tuple(t["monomial"]["vec"]), tuple(t["monomial"]["form"]))
                terms[m] = terms.get(m, ZERO) + GaussianRational.from_json(t["coefficient"])
                if bideg is None:
                    bideg = (len(m[0]), len(m[1]))
            if n is None:
                raise SchemaError("element JSON needs 'n'")
            return cls(side, n, tuple(bideg or (0, 0)), terms)
        except (KeyError, TypeError, AttributeError) as exc:
            raise SchemaError(f"malformed element JSON: {exc}") from exc
        except (ValueError, DegreeMismatch) as exc:
            raise SchemaError(str(exc)) from exc


def _mono_str(m: Monomial) -> str:
    v = "^".join(f"v{i}" for i in m[0])
    f = "^".join(f"f{j}" for j in m[1])
    if v and f:
        return f"{v}(x){f}"
    return v or f or "1"


def _mono_wedge(a: Monomial, b: Monomial) -> Tuple[int, Optional[Monomial]]:
    if set(a[0]) & set(b[0]) or set(a[1]) & set(b[1]):
        return 0, None
    s = -1 if (len(a[1]) * len(b[0])) & 1 else 1
    s *= _sort_sign(a[0] + b[0]) * _sort_sign(a[1] + b[1])
    return s, (tuple(sorted(a[0] + b[0])), tuple(sorted(a[1] + b[1])))


def wedge(a: SparseElement, b: SparseElement) -> SparseElement:
    a._check(b)
    bideg = (a.bidegree[0] + b.bidegree[0], a.bidegree[1] + b.bidegree[1])
    terms: Dict[Monomial, GaussianRational] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s, m = _mono_wedge(ma, mb)
            if s:
                c = ca * cb
                terms[m] = terms.get(m, ZERO) + (c if s > 0 else -c)
    return SparseElement(a.side, a.n, bideg, terms)


def wedge_all(elements: Iterable[SparseElement], side: str, n: int) -> SparseElement:
    out = SparseElement.one(side, n)
    for e in elements:
        out = wedge(out, e)
    return out


def enumerate_basis(n: int, p: int, q: int) -> List[Monomial]:
    """Monomials of bidegree (p, q), lexicographic; C(n,p)*C(n,q) of them.

    Both sides share the same index combinatorics, so the side is not needed
    here; ``basis_for`` accepts it for readability at call sites.
    """
    if not (0 <= p <= n and 0 <= q <= n):
        return []
    return [(v, f) for v in itertools.combinations(range(n), p)
            for f in itertools.combinations(range(n), q)]


def basis_for(algebra, side: str, p: int, q: int) -> List[Monomial]:
    if side not in SIDES:
        raise ValueError(side)
    return enumerate_basis(algebra.n, p, q)


def block_dim(n: int, p: int, q: int) -> int:
    if not (0 <= p <= n and 0 <= q <= n):
        return 0
    return comb(n, p) * comb(n, q)


def contract(bivector: SparseElement, form_index: int) -> SparseElement:
    """Contraction of an A-side (2,0) element with the (1,0)-form dual to T_m.

    For X ^ Y this is omega(X) Y - omega(Y) X, so that
    gamma(contract(L, omega)) = L(omega, gamma).
    """
    if bivector.side != "A" or (bivector.terms and bivector.bidegree != (2, 0)):
        raise DegreeMismatch("contract needs an A-side (2,0) element")
    n = bivector.n
    terms: Dict[Monomial, GaussianRational] = {}
    for (vec, _), c in bivector.terms.items():
        a, b = vec
        if a == form_index:
            terms[((b,), ())] = terms.get(((b,), ()), ZERO) + c
        if b == form_index:
            terms[((a,), ())] = terms.get(((a,), ()), ZERO) - c
    return SparseElement("A", n, (1, 0), terms)


def contract_form(bivector: SparseElement, form: Dict[int, GaussianRational]) -> SparseElement:
    """``contract`` extended linearly to a (1,0)-form given by its coefficients."""
    out = SparseElement.zero("A", bivector.n, (1, 0))
    for m, c in form.items():
        out = out + contract(bivector, m).scale(c)
    return out


def evaluate(element: SparseElement, args: Sequence[Token]) -> GaussianRational:
    """Value of a degree-k element on k dual basis tokens.

    A ``("v", m)`` argument pairs with the degree-one factor of index m, an
    ``("f", m)`` argument with the (0,1)-form factor of index m (on the A side
    these are the (1,0)-forms and the vectors Tbar_m of the dual algebroid).
    Pairing of a k-fold product uses the determinant rule.
    """
    if len(args) != element.degree:
        raise DegreeMismatch("wrong number of arguments")
    total = ZERO
    for m, c in element.terms.items():
        toks = tokens_of(m)
        # determinant of delta-pairings: nonzero only for a permutation match
        pos = []
        for a in args:
            try:
                pos.append(toks.index(a))
            except ValueError:
                pos = None
                break
        if pos is None or len(set(pos)) != len(pos):
            continue
        s = _sort_sign(pos)
        total = total + (c if s > 0 else -c)
    return total
