"""Example algebras and a sampler of invariant holomorphic Poisson bivectors."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg
from .algebra import (ComplexifiedAlgebra, ComplexPresentation, RealLieAlgebraSpec,
                      complexify, realify, validate)
from .calculus import PoissonCandidate, check_holomorphic_poisson, dbar
from .errors import NoneFound
from .exterior import SparseElement, enumerate_basis, wedge
from .scalars import ONE, GaussianRational

HALF_NEG = Fraction(-1, 2)
HALF_POS = Fraction(1, 2)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: RealLieAlgebraSpec
    parameters: Dict[str, int] = field(default_factory=dict)
    expected: Dict[str, object] = field(default_factory=dict)

    def complexified(self) -> ComplexifiedAlgebra:
        return complexify(self.spec)

    def check_expected(self) -> List[str]:
        """Names of expected flags that ``validate`` contradicts."""
        rep = validate(self.spec)
        actual = {
            "abelian_J": rep.abelian_J,
            "parallelizable": rep.parallelizable,
            "nil_step": rep.nil_step,
            "center_dim": rep.center_dim,
            "ok": rep.ok,
        }
        actual["theorem_2_applies"] = rep.abelian_J and rep.nil_step == 2 and rep.center_dim == 2
        return [k for k, v in self.expected.items() if actual.get(k) != v]


def _J_pairs(dim: int, pairs) -> Tuple[Tuple[Fraction, ...], ...]:
    """J from a list of (source, target, sign): J e_source = sign * e_target."""
    J = [[Fraction(0)] * dim for _ in range(dim)]
    for s, t, sign in pairs:
        J[t][s] = Fraction(sign)
    return tuple(tuple(r) for r in J)


def _complex_structure(dim: int, pairs) -> Tuple[Tuple[Fraction, ...], ...]:
    """J with J a = b and J b = -a for each (a, b) in ``pairs``."""
    moves = []
    for a, b in pairs:
        moves.append((a, b, 1))
        moves.append((b, a, -1))
    return _J_pairs(dim, moves)


def _entry(name, basis, brackets, J, params, **expected) -> CatalogEntry:
    spec = RealLieAlgebraSpec(name, len(basis), tuple(basis),
                              tuple((i, j, tuple((k, Fraction(c)) for k, c in terms))
                                    for i, j, terms in brackets),
                              J)
    expected.setdefault("ok", True)
    entry = CatalogEntry(name, spec, dict(params), expected)
    bad = entry.check_expected()
    if bad:
        raise AssertionError(f"catalog entry {name} fails expected flags: {bad}")
    return entry


def h_times_r(n: int = 1) -> CatalogEntry:
    """Heisenberg algebra h_{2n+1} times R, with [X_k, Y_k] = Z1 and J Z1 = Z2."""
    if n < 1:
        raise ValueError("n >= 1")
    basis = []
    for k in range(1, n + 1):
        basis += [f"X{k}", f"Y{k}"]
    basis += ["Z1", "Z2"]
    z1, z2 = 2 * n, 2 * n + 1
    brackets = [(2 * k, 2 * k + 1, [(z1, 1)]) for k in range(n)]
    J = _complex_structure(len(basis), [(2 * k, 2 * k + 1) for k in range(n)] + [(z1, z2)])
    return _entry(f"h_r({n})", basis, brackets, J, {"n": n},
                  abelian_J=True, nil_step=2, center_dim=2, theorem_2_applies=True)


def kodaira() -> CatalogEntry:
    """Kodaira surface algebra H_3 x R: [X, Y] = Z1, JX = Y, JZ1 = Z2."""
    basis = ["X", "Y", "Z1", "Z2"]
    J = _complex_structure(4, [(0, 1), (2, 3)])
    return _entry("kodaira", basis, [(0, 1, [(2, 1)])], J, {},
                  abelian_J=True, nil_step=2, center_dim=2, theorem_2_applies=True)


def h_times_h(n: int = 1, m: int = 1) -> CatalogEntry:
    """h_{2n+1} + h_{2m+1} with centers Z1, Z2 and J Z1 = Z2."""
    if n < 1 or m < 1:
        raise ValueError("n, m >= 1")
    basis = []
    for k in range(1, n + 1):
        basis += [f"X{k}", f"Y{k}"]
    for l in range(1, m + 1):
        basis += [f"U{l}", f"V{l}"]
    basis += ["Z1", "Z2"]
    z1, z2 = 2 * n + 2 * m, 2 * n + 2 * m + 1
    brackets = [(2 * k, 2 * k + 1, [(z1, 1)]) for k in range(n)]
    brackets += [(2 * n + 2 * l, 2 * n + 2 * l + 1, [(z2, 1)]) for l in range(m)]
    J = _complex_structure(len(basis), [(2 * k, 2 * k + 1) for k in range(n + m)] + [(z1, z2)])
    return _entry(f"h_h({n},{m})", basis, brackets, J, {"n": n, "m": m},
                  abelian_J=True, nil_step=2, center_dim=2, theorem_2_applies=True)


def _w_or_p(n: int, name: str, block_brackets) -> CatalogEntry:
    if n < 1:
        raise ValueError("n >= 1")
    basis = [f"X{4 * k + i}" for k in range(n) for i in range(1, 5)] + ["Z1", "Z2"]
    z1, z2 = 4 * n, 4 * n + 1
    zs = {1: z1, 2: z2}
    brackets = []
    moves = []
    for k in range(n):
        o = 4 * k
        for a, b, z, c in block_brackets:
            brackets.append((o + a - 1, o + b - 1, [(zs[z], c)]))
        # J X1 = X2, J X3 = -X4
        moves += [(o, o + 1, 1), (o + 1, o, -1), (o + 2, o + 3, -1), (o + 3, o + 2, 1)]
    # J Z1 = -Z2
    moves += [(z1, z2, -1), (z2, z1, 1)]
    J = _J_pairs(len(basis), moves)
    return _entry(f"{name}({n})", basis, brackets, J, {"n": n},
                  abelian_J=True, nil_step=2, center_dim=2, theorem_2_applies=True)


def w_family(n: int = 1) -> CatalogEntry:
    """W_{4n+2}: the four -1/2, +1/2 brackets into Z1, Z2 per block."""
    return _w_or_p(n, "w", [(1, 3, 1, HALF_NEG), (1, 4, 2, HALF_NEG),
                            (2, 3, 2, HALF_NEG), (2, 4, 1, HALF_POS)])


def p_family(n: int = 1) -> CatalogEntry:
    """P_{4n+2}: degeneration of W_{4n+2} with three brackets per block."""
    return _w_or_p(n, "p", [(1, 2, 1, HALF_NEG), (1, 4, 2, HALF_NEG), (2, 3, 2, HALF_NEG)])


def iwasawa() -> CatalogEntry:
    """Complex Heisenberg algebra: [W1, W3] = W2, all mixed brackets zero."""
    cp = ComplexPresentation(("W1", "W2", "W3"), ((0, 2, ((1, GaussianRational(1)),)),))
    spec = realify("iwasawa", cp)
    entry = CatalogEntry("iwasawa", spec, {},
                         {"ok": True, "parallelizable": True, "abelian_J": False,
                          "nil_step": 2, "center_dim": 2, "theorem_2_applies": False})
    bad = entry.check_expected()
    if bad:
        raise AssertionError(f"iwasawa fails expected flags: {bad}")
    return entry


def torus(n: int = 2) -> CatalogEntry:
    basis = []
    for k in range(1, n + 1):
        basis += [f"X{k}", f"Y{k}"]
    J = _complex_structure(2 * n, [(2 * k, 2 * k + 1) for k in range(n)])
    return _entry(f"torus({n})", basis, [], J, {"n": n},
                  abelian_J=True, parallelizable=True, nil_step=1, center_dim=2 * n,
                  theorem_2_applies=False)


NAMES = ("kodaira", "iwasawa", "torus", "h_r", "h_h", "w", "p")


def by_name(name: str, n: Optional[int] = None, m: Optional[int] = None) -> CatalogEntry:
    if name == "kodaira":
        return kodaira()
    if name == "iwasawa":
        return iwasawa()
    if name == "torus":
        return torus(n or 2)
    if name == "h_r":
        return h_times_r(n or 1)
    if name == "h_h":
        return h_times_h(n or 1, m or 1)
    if name == "w":
        return w_family(n or 1)
    if name == "p":
        return p_family(n or 1)
    raise KeyError(f"unknown catalog name {name!r}; choose from {', '.join(NAMES)}")


# ---------------------------------------------------------------------------
# Poisson bivectors


def standard_lambda(alg: ComplexifiedAlgebra) -> Optional[SparseElement]:
    """W ^ T with W the first c^{1,0} vector and T the first t^{1,0} vector."""
    if not alg.has_tc_split or not alg.c_indices or not alg.t_indices:
        return None
    n = alg.n
    W = SparseElement.generator("A", n, "v", alg.c_indices[0])
    T = SparseElement.generator("A", n, "v", alg.t_indices[0])
    return wedge(W, T)


def holomorphic_bivectors(alg: ComplexifiedAlgebra) -> List[SparseElement]:
    """Reduced-echelon basis of ker(dbar) on A^{2,0}."""
    n = alg.n
    basis = enumerate_basis(n, 2, 0)
    target = {m: i for i, m in enumerate(enumerate_basis(n, 2, 1))}
    cols = []
    for m in basis:
        img = dbar(alg, SparseElement("A", n, (2, 0), {m: ONE}))
        cols.append({target[k]: c for k, c in img.terms.items()})
    out = []
    for v in linalg.kernel(cols):
        out.append(SparseElement("A", n, (2, 0), {basis[i]: c for i, c in v.items()}))
    return out


def draw_bivector(alg: ComplexifiedAlgebra, rng: random.Random,
                  span: Optional[List[SparseElement]] = None) -> SparseElement:
    """Random combination of ``span`` with Gaussian-integer weights in {-2..2}."""
    if span is None:
        span = holomorphic_bivectors(alg)
    out = SparseElement("A", alg.n, (2, 0))
    for b in span:
        c = GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))
        if c:
            out = out + b.scale(c)
    return out


def poisson_trials(alg: ComplexifiedAlgebra, trials: int, seed: int) -> List[Tuple[SparseElement, PoissonCandidate]]:
    rng = random.Random(seed)
    span = holomorphic_bivectors(alg)
    return [(lam, check_holomorphic_poisson(alg, lam))
            for lam in (draw_bivector(alg, rng, span) for _ in range(trials))]


def sample_poisson(alg: ComplexifiedAlgebra, count: int, seed: int = 0,
                   budget: Optional[int] = None) -> List[PoissonCandidate]:
    """Deterministic list of holomorphic Poisson bivectors.

    Always starts with Lambda = 0 and, when the algebra has a t/c split with
    both parts nonzero and is 2-step with abelian J, Lambda = W ^ T.  Then up
    to ``count`` distinct random accepted draws.  Draws are taken inside
    ker(dbar) on A^{2,0}, so rejection only tests the Schouten condition.
    """
    if count < 1:
        raise ValueError("count >= 1")
    out: List[PoissonCandidate] = [check_holomorphic_poisson(alg, SparseElement("A", alg.n, (2, 0)))]
    seen = {out[0].lam}
    std = standard_lambda(alg)
    if std is not None and alg.is_abelian_J and alg.nil_step == 2:
        cand = check_holomorphic_poisson(alg, std)
        out.append(cand)
        seen.add(std)
    budget = budget if budget is not None else max(200, 50 * count)
    rng = random.Random(seed)
    span = holomorphic_bivectors(alg)
    found = 0
    for _ in range(budget):
        if found >= count or not span:
            break
        lam = draw_bivector(alg, rng, span)
        if lam in seen:
            continue
        cand = check_holomorphic_poisson(alg, lam)
        if cand.ok:
            out.append(cand)
            seen.add(lam)
            found += 1
    if found < count:
        warnings.warn(f"{alg.name}: found {found} of {count} Poisson bivectors within budget {budget}",
                      NoneFound, stacklevel=2)
    return out
