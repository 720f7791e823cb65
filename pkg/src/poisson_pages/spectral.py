"""Double complexes, spectral-sequence pages and total cohomology.

Pages use the first (column) filtration F^p K = sum_{p' >= p} K^{p', *} and
the generic formula

    Z_r^p(k) = {x in F^p K^k : D x in F^{p+r} K^{k+1}}
    E_r^{p,q} = Z_r^p(k) / (Z_{r-1}^{p+1}(k) + D Z_{r-1}^{p-r+1}(k-1)),   k = p + q.

Vectors of the total complex are sparse dicts over a global index per total
degree; blocks are laid out with p ascending.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .algebra import ComplexifiedAlgebra
from .calculus import (LambdaLike, PoissonCandidate, _as_bivector, ad_lambda, dbar,
                       partial, phi)
from .errors import ChainMapViolation, NotACycle, NotE2Class, SquareZeroViolation
from .exterior import Monomial, SparseElement, enumerate_basis
from .linalg import SparseVec
from .scalars import ONE, GaussianRational

Block = Tuple[int, int]
Matrix = List[SparseVec]


def _matrix(op, side: str, n: int, src: Block, basis: Sequence[Monomial],
            target: Dict[Monomial, int]) -> Matrix:
    cols = []
    for m in basis:
        img = op(SparseElement(side, n, src, {m: ONE}))
        col = {}
        for mono, c in img.terms.items():
            col[target[mono]] = c
        cols.append(col)
    return cols


@dataclass
class DoubleComplex:
    side: str
    n: int
    blocks: Dict[Block, List[Monomial]]
    vertical: Dict[Block, Matrix]
    horizontal: Dict[Block, Matrix]
    algebra: Optional[ComplexifiedAlgebra] = None
    lam: Optional[SparseElement] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- layout of the total complex ---------------------------------------

    def degree_blocks(self, k: int) -> List[Block]:
        n = self.n
        return [(p, k - p) for p in range(max(0, k - n), min(k, n) + 1)]

    def offsets(self, k: int) -> Dict[Block, int]:
        key = ("off", k)
        if key not in self._cache:
            off, pos = {}, 0
            for b in self.degree_blocks(k):
                off[b] = pos
                pos += len(self.blocks[b])
            self._cache[key] = off
        return self._cache[key]

    def total_dim(self, k: int) -> int:
        if k < 0 or k > 2 * self.n:
            return 0
        return sum(len(self.blocks[b]) for b in self.degree_blocks(k))

    def filtration_indices(self, p: int, k: int) -> List[int]:
        """Global indices of F^p K^k."""
        off = self.offsets(k) if 0 <= k <= 2 * self.n else {}
        out = []
        for b, o in off.items():
            if b[0] >= max(p, 0):
                out.extend(range(o, o + len(self.blocks[b])))
        return out

    def embed(self, block: Block, local: SparseVec) -> SparseVec:
        o = self.offsets(sum(block))[block]
        return {o + i: c for i, c in local.items()}

    def component(self, k: int, x: SparseVec, block: Block) -> SparseVec:
        o = self.offsets(k)[block]
        size = len(self.blocks[block])
        return {i - o: c for i, c in x.items() if o <= i < o + size}

    def element(self, block: Block, local: SparseVec) -> SparseElement:
        basis = self.blocks[block]
        return SparseElement(self.side, self.n, block, {basis[i]: c for i, c in local.items()})

    def local(self, x: SparseElement) -> SparseVec:
        index = self._index(x.bidegree)
        return {index[m]: c for m, c in x.terms.items()}

    def _index(self, block: Block) -> Dict[Monomial, int]:
        key = ("idx", block)
        if key not in self._cache:
            self._cache[key] = {m: i for i, m in enumerate(self.blocks[block])}
        return self._cache[key]

    def total_differential(self, k: int) -> Matrix:
        """Columns of D = vertical + horizontal on K^k."""
        key = ("D", k)
        if key in self._cache:
            return self._cache[key]
        cols: Matrix = []
        n = self.n
        if 0 <= k <= 2 * n:
            for p, q in self.degree_blocks(k):
                for i in range(len(self.blocks[(p, q)])):
                    col: SparseVec = {}
                    if q < n:
                        for j, c in self.vertical[(p, q)][i].items():
                            col[self.offsets(k + 1)[(p, q + 1)] + j] = c
                    if p < n:
                        for j, c in self.horizontal[(p, q)][i].items():
                            col[self.offsets(k + 1)[(p + 1, q)] + j] = c
                    cols.append(col)
        self._cache[key] = cols
        return cols

    # -- checks -------------------------------------------------------------

    def square_zero_residuals(self) -> Dict[str, List[Block]]:
        """Blocks where one of the three identities fails."""
        n = self.n
        bad: Dict[str, List[Block]] = {"vv": [], "hh": [], "vh": []}
        for (p, q) in self.blocks:
            if q + 2 <= n and not linalg.is_zero_map(
                    linalg.compose(self.vertical[(p, q + 1)], self.vertical[(p, q)])):
                bad["vv"].append((p, q))
            if p + 2 <= n and not linalg.is_zero_map(
                    linalg.compose(self.horizontal[(p + 1, q)], self.horizontal[(p, q)])):
                bad["hh"].append((p, q))
            if p + 1 <= n and q + 1 <= n:
                a = linalg.compose(self.vertical[(p + 1, q)], self.horizontal[(p, q)])
                b = linalg.compose(self.horizontal[(p, q + 1)], self.vertical[(p, q)])
                if not linalg.is_zero_map(linalg.add(x, y) for x, y in zip(a, b)):
                    bad["vh"].append((p, q))
        return bad

    def verify(self) -> None:
        bad = self.square_zero_residuals()
        if any(bad.values()):
            raise SquareZeroViolation(f"double complex identities fail: {bad}")

    def horizontal_is_zero(self) -> bool:
        return all(linalg.is_zero_map(m) for m in self.horizontal.values())

    # -- subspaces for the page formula ------------------------------------

    def _F(self, p: int, k: int) -> List[SparseVec]:
        return [{i: ONE} for i in self.filtration_indices(p, k)]

    def Z(self, r: int, p: int, k: int) -> List[SparseVec]:
        """Basis of Z_r^p(k); Z_r^p = F^p for r <= 0."""
        if k < 0 or k > 2 * self.n:
            return []
        if r <= 0:
            return self._F(p, k)
        # F^p = F^0 for p < 0, but the condition on D x still uses p + r
        key = ("Z", r, max(p, 0), p + r, k)
        if key not in self._cache:
            allowed = set(self.filtration_indices(p + r, k + 1))
            mask = [i for i in range(self.total_dim(k + 1)) if i not in allowed]
            self._cache[key] = linalg.intersect_with_preimage(
                self._F(p, k), self.total_differential(k), mask)
        return self._cache[key]

    def page_quotient(self, r: int, p: int, q: int) -> linalg.Quotient:
        key = ("E", r, p, q)
        if key not in self._cache:
            k = p + q
            z = self.Z(r, p, k)
            den = list(self.Z(r - 1, p + 1, k))
            D = self.total_differential(k - 1)
            for y in self.Z(r - 1, p - r + 1, k - 1):
                den.append(linalg.apply(D, y))
            self._cache[key] = linalg.Quotient(z, den)
        return self._cache[key]


def _block_layout(n: int) -> Dict[Block, List[Monomial]]:
    return {(p, q): enumerate_basis(n, p, q) for p in range(n + 1) for q in range(n + 1)}


def _assemble(side: str, alg: ComplexifiedAlgebra, vop, hop, lam=None, check: bool = True) -> DoubleComplex:
    n = alg.n
    blocks = _block_layout(n)
    index = {b: {m: i for i, m in enumerate(ms)} for b, ms in blocks.items()}
    vertical, horizontal = {}, {}
    for (p, q), basis in blocks.items():
        vertical[(p, q)] = (_matrix(vop, side, n, (p, q), basis, index[(p, q + 1)])
                            if q < n else [{} for _ in basis])
        horizontal[(p, q)] = (_matrix(hop, side, n, (p, q), basis, index[(p + 1, q)])
                              if p < n else [{} for _ in basis])
    dc = DoubleComplex(side, n, blocks, vertical, horizontal, alg, lam)
    if check:
        dc.verify()
    return dc


def build(alg: ComplexifiedAlgebra, lam: LambdaLike, check: bool = True) -> DoubleComplex:
    """The Poisson double complex (A^{p,q}, dbar, ad_Lambda).

    Raises NotPoisson unless ``lam`` is holomorphic Poisson, and
    SquareZeroViolation if the three square-zero identities fail.
    """
    bivector = _as_bivector(alg, lam, raw=False)
    return _assemble("A", alg, lambda x: dbar(alg, x),
                     lambda x: ad_lambda(alg, bivector, x, raw=True), bivector, check)


def frolicher(alg: ComplexifiedAlgebra, check: bool = True) -> DoubleComplex:
    """The invariant Dolbeault double complex (B^{p,q}, dbar, partial)."""
    return _assemble("B", alg, lambda x: dbar(alg, x), lambda x: partial(alg, x), None, check)


# ---------------------------------------------------------------------------
# pages


@dataclass
class PageEntry:
    dim: int
    reps: List[SparseVec]          # total-complex vectors in Z_r^p(p+q)
    d: Matrix                      # column i = coordinates of d_r(rep_i) in the target entry
    target: Optional[Block]

    @property
    def d_rank(self) -> int:
        return linalg.rank(self.d)


@dataclass
class SpectralPage:
    r: int
    entries: Dict[Block, PageEntry]

    def dims(self) -> Dict[Block, int]:
        return {b: e.dim for b, e in self.entries.items()}

    def grid(self, n: int) -> List[List[int]]:
        """Rows q descending, columns p ascending."""
        return [[self.entries[(p, q)].dim if (p, q) in self.entries else 0 for p in range(n + 1)]
                for q in range(n, -1, -1)]

    def nonzero_differentials(self) -> Dict[Block, int]:
        out = {}
        for b, e in self.entries.items():
            rk = e.d_rank
            if rk:
                out[b] = rk
        return out

    def is_trivial(self) -> bool:
        return not self.nonzero_differentials()


def page(dc: DoubleComplex, r: int) -> SpectralPage:
    n = dc.n
    entries: Dict[Block, PageEntry] = {}
    for p in range(n + 1):
        for q in range(n + 1):
            quo = dc.page_quotient(r, p, q)
            tp, tq = p + r, q - r + 1
            d: Matrix = []
            target = (tp, tq) if 0 <= tp <= n and 0 <= tq <= n else None
            if target is not None and quo.dim:
                tquo = dc.page_quotient(r, tp, tq)
                D = dc.total_differential(p + q)
                for rep in quo.reps:
                    coords = tquo.coordinates(linalg.apply(D, rep))
                    if coords is None:
                        raise AssertionError(f"d_{r} leaves Z at {(p, q)}")
                    d.append({i: c for i, c in enumerate(coords) if c})
            elif quo.dim:
                d = [{} for _ in quo.reps]
            entries[(p, q)] = PageEntry(quo.dim, list(quo.reps), d, target)
    return SpectralPage(r, entries)


def pages(dc: DoubleComplex, r_max: Optional[int] = None) -> List[SpectralPage]:
    """Pages E_0 .. E_{r_max} (default 2n+1)."""
    if r_max is None:
        r_max = 2 * dc.n + 1
    if r_max < 1:
        raise ValueError("r_max >= 1")
    return [page(dc, r) for r in range(r_max + 1)]


def stable_page(dc: DoubleComplex) -> SpectralPage:
    """E_infinity; every d_r with r > n leaves the lattice."""
    return page(dc, dc.n + 1)


def degeneracy_page(dc: DoubleComplex) -> int:
    """Smallest r >= 1 with d_s = 0 for all s >= r."""
    last = 0
    for r in range(1, dc.n + 1):
        if not page(dc, r).is_trivial():
            last = r
    return last + 1


def total_cohomology(dc: DoubleComplex) -> List[int]:
    ranks = [linalg.rank(dc.total_differential(k)) for k in range(2 * dc.n + 1)]
    return [dc.total_dim(k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(2 * dc.n + 1)]


def euler_characteristics(dc: DoubleComplex) -> Tuple[int, int]:
    h = total_cohomology(dc)
    chi_h = sum((-1) ** k * d for k, d in enumerate(h))
    chi_k = sum((-1) ** k * dc.total_dim(k) for k in range(2 * dc.n + 1))
    return chi_h, chi_k


def einfty_consistent(dc: DoubleComplex, e_inf: Optional[SpectralPage] = None) -> bool:
    """Sum of E_inf along each anti-diagonal equals dim H^k, and chi(H) = chi(K)."""
    e_inf = e_inf or stable_page(dc)
    h = total_cohomology(dc)
    for k in range(2 * dc.n + 1):
        if sum(e_inf.entries[b].dim for b in dc.degree_blocks(k)) != h[k]:
            return False
    chi_h, chi_k = euler_characteristics(dc)
    return chi_h == chi_k


# ---------------------------------------------------------------------------
# column and row cohomology


def column_cohomology(dc: DoubleComplex, p: int, q: int) -> Tuple[List[SparseVec], linalg.Quotient]:
    """H^q of the vertical complex in column p, in block coordinates."""
    n = dc.n
    cycles = linalg.kernel(dc.vertical[(p, q)]) if q < n else [{i: ONE} for i in range(len(dc.blocks[(p, q)]))]
    bounds = [c for c in dc.vertical[(p, q - 1)]] if q > 0 else []
    quo = linalg.Quotient(cycles, bounds)
    return quo.reps, quo


def row_cohomology(dc: DoubleComplex, p: int, q: int) -> int:
    """dim H^p of the horizontal complex in row q."""
    n = dc.n
    size = len(dc.blocks[(p, q)])
    rk_out = linalg.rank(dc.horizontal[(p, q)]) if p < n else 0
    rk_in = linalg.rank(dc.horizontal[(p - 1, q)]) if p > 0 else 0
    return size - rk_out - rk_in


def e1_matches_columns(dc: DoubleComplex) -> bool:
    e1 = page(dc, 1)
    return all(e1.entries[(p, q)].dim == column_cohomology(dc, p, q)[1].dim
               for p in range(dc.n + 1) for q in range(dc.n + 1))


def e2_factor_dims(dc: DoubleComplex) -> Dict[Block, int]:
    """dim H^q_dbar(Lambda^q of (0,1)-forms) * dim H^p(ad_Lambda on Lambda^p g^{1,0})."""
    n = dc.n
    out = {}
    for p in range(n + 1):
        for q in range(n + 1):
            out[(p, q)] = column_cohomology(dc, 0, q)[1].dim * row_cohomology(dc, p, 0)
    return out


# ---------------------------------------------------------------------------
# the d2 chasing oracle


def d2_by_chasing(dc: DoubleComplex, p: int, q: int, cycle: SparseElement) -> SparseElement:
    """Chase an E_2 class: with dbar w = ad v, the image is -ad w.

    The sign matches D = dbar + ad on the total complex, where v + (-w) is
    the lift of v to Z_2.
    """
    n = dc.n
    if cycle.terms and cycle.bidegree != (p, q):
        raise NotACycle(f"expected bidegree {(p, q)}, got {cycle.bidegree}")
    tgt = (p + 2, q - 1)
    v = dc.local(cycle) if cycle.terms else {}
    if q < n and linalg.apply(dc.vertical[(p, q)], v):
        raise NotACycle("dbar of the representative is nonzero")
    if p + 2 > n or q < 1:
        return SparseElement(dc.side, n, (min(p + 2, n + 1), max(q - 1, 0)))
    adv = linalg.apply(dc.horizontal[(p, q)], v)
    w = linalg.Solver(dc.vertical[(p + 1, q - 1)]).solve(adv)
    if w is None:
        raise NotE2Class("ad of the representative is not dbar-exact")
    out = linalg.apply(dc.horizontal[(p + 1, q - 1)], w)
    return dc.element(tgt, linalg.scale(out, GaussianRational(-1)))


def d2_chase_agrees(dc: DoubleComplex, e2: Optional[SpectralPage] = None) -> bool:
    """Compare the chase with the d_2 matrix on every E_2 basis class."""
    e2 = e2 or page(dc, 2)
    for (p, q), entry in e2.entries.items():
        if not entry.dim:
            continue
        for i, rep in enumerate(entry.reps):
            v = dc.element((p, q), dc.component(p + q, rep, (p, q)))
            y = d2_by_chasing(dc, p, q, v)
            expected = entry.d[i] if entry.target else {}
            if entry.target is None:
                if y.terms:
                    return False
                continue
            coords = dc.page_quotient(2, *entry.target).coordinates(dc.embed(entry.target, dc.local(y)))
            if coords is None:
                return False
            if {j: c for j, c in enumerate(coords) if c} != expected:
                return False
    return True


# ---------------------------------------------------------------------------
# the map phi on E_1


@dataclass
class PageMap:
    matrices: Dict[Block, Matrix]        # induced phi on E_1, per block
    square_residuals: Dict[Block, Matrix]
    chain_map_ok: bool

    def commutes(self) -> bool:
        return all(linalg.is_zero_map(m) for m in self.square_residuals.values())

    def identity_on_p0(self) -> bool:
        for (p, q), m in self.matrices.items():
            if p == 0 and m != [{i: ONE} for i in range(len(m))]:
                return False
        return True


def phi_matrix(alg: ComplexifiedAlgebra, lam, b_dc: DoubleComplex, a_dc: DoubleComplex, block: Block) -> Matrix:
    index = a_dc._index(block)
    return _matrix(lambda x: phi(alg, lam, x), "B", b_dc.n, block, b_dc.blocks[block], index)


def chain_map_residuals(alg: ComplexifiedAlgebra, lam, b_dc: DoubleComplex, a_dc: DoubleComplex) -> List[Tuple[str, Block]]:
    """Blocks where dbar phi != phi dbar or ad phi != phi partial."""
    n = alg.n
    phis = {b: phi_matrix(alg, lam, b_dc, a_dc, b) for b in b_dc.blocks}
    bad = []
    for (p, q) in b_dc.blocks:
        if q < n:
            lhs = linalg.compose(a_dc.vertical[(p, q)], phis[(p, q)])
            rhs = linalg.compose(phis[(p, q + 1)], b_dc.vertical[(p, q)])
            if lhs != rhs:
                bad.append(("dbar", (p, q)))
        if p < n:
            lhs = linalg.compose(a_dc.horizontal[(p, q)], phis[(p, q)])
            rhs = linalg.compose(phis[(p + 1, q)], b_dc.horizontal[(p, q)])
            if lhs != rhs:
                bad.append(("partial", (p, q)))
    return bad


def page_map(lam: LambdaLike, b_dc: DoubleComplex, a_dc: DoubleComplex) -> PageMap:
    """phi on E_1 = column cohomology, and the residual of the d_1 square."""
    alg = a_dc.algebra
    bivector = lam.lam if isinstance(lam, PoissonCandidate) else lam
    bad = chain_map_residuals(alg, bivector, b_dc, a_dc)
    if bad:
        raise ChainMapViolation(f"phi is not a chain map on {bad}")
    n = alg.n
    mats: Dict[Block, Matrix] = {}
    resid: Dict[Block, Matrix] = {}
    col = {("A", b): column_cohomology(a_dc, *b) for b in a_dc.blocks}
    col.update({("B", b): column_cohomology(b_dc, *b) for b in b_dc.blocks})
    for b in b_dc.blocks:
        phis = phi_matrix(alg, bivector, b_dc, a_dc, b)
        reps, _ = col[("B", b)]
        _, aquo = col[("A", b)]
        m = []
        for rep in reps:
            coords = aquo.coordinates(linalg.apply(phis, rep))
            if coords is None:
                raise ChainMapViolation(f"phi of a dbar-cycle is not a cycle at {b}")
            m.append({i: c for i, c in enumerate(coords) if c})
        mats[b] = m
    for (p, q) in b_dc.blocks:
        if p >= n:
            continue
        t = (p + 1, q)
        breps, _ = col[("B", (p, q))]
        _, bq_t = col[("B", t)]
        areps, aquo = col[("A", (p, q))]
        _, aq_t = col[("A", t)]
        out = []
        for i, rep in enumerate(breps):
            # phi(d1 x) - d1(phi x), in E_1^{p+1,q} of the A side
            d1b = bq_t.coordinates(linalg.apply(b_dc.horizontal[(p, q)], rep))
            left: SparseVec = {}
            for j, c in enumerate(d1b):
                if c:
                    linalg.axpy(left, c, mats[t][j])
            phix: SparseVec = {}
            for j, c in mats[(p, q)][i].items():
                linalg.axpy(phix, c, areps[j])
            right = aq_t.coordinates(linalg.apply(a_dc.horizontal[(p, q)], phix))
            res = dict(left)
            for j, c in enumerate(right):
                if c:
                    linalg.axpy(res, -c, {j: ONE})
            out.append(res)
        resid[(p, q)] = out
    return PageMap(mats, resid, True)


def frolicher_d1_vanishes_on_p0(b_dc: DoubleComplex) -> bool:
    e1 = page(b_dc, 1)
    return all(not e1.entries[(0, q)].d_rank for q in range(b_dc.n + 1))


def poisson_vanishes_out_of_p0(a_dc: DoubleComplex) -> bool:
    for r in range(1, a_dc.n + 1):
        e = page(a_dc, r)
        if any(e.entries[(0, q)].d_rank for q in range(a_dc.n + 1)):
            return False
    return True


def p0_column_transfer(b_dc: DoubleComplex, a_dc: DoubleComplex) -> bool:
    """Frolicher d_1 = 0 on p = 0 implies Poisson d_r = 0 out of p = 0."""
    return not frolicher_d1_vanishes_on_p0(b_dc) or poisson_vanishes_out_of_p0(a_dc)


# ---------------------------------------------------------------------------
# report


def report(dc: DoubleComplex, r_max: Optional[int] = None, name: Optional[str] = None,
           chain_map: Optional[bool] = None) -> dict:
    ps = pages(dc, r_max)
    e_inf = stable_page(dc)
    deg = 1
    for pg in ps[1:dc.n + 1]:
        if not pg.is_trivial():
            deg = pg.r + 1
    if len(ps) <= dc.n:
        deg = degeneracy_page(dc)
    sq = not any(dc.square_zero_residuals().values())
    if chain_map is None and dc.side == "A" and dc.algebra is not None:
        b_dc = frolicher(dc.algebra, check=False)
        chain_map = not chain_map_residuals(dc.algebra, dc.lam, b_dc, dc)
    return {
        "algebra": name or (dc.algebra.name if dc.algebra else ""),
        "lambda": dc.lam.to_json() if dc.lam is not None else None,
        "pages": [
            {"r": pg.r,
             "entries": [{"p": p, "q": q, "dim": e.dim} for (p, q), e in sorted(pg.entries.items())],
             "d_nonzero": [{"p": p, "q": q, "rank": rk}
                           for (p, q), rk in sorted(pg.nonzero_differentials().items())]}
            for pg in ps
        ],
        "degeneracy_page": deg,
        "total_cohomology": total_cohomology(dc),
        "checks": {"square_zero": sq,
                   "chain_map": True if chain_map is None else bool(chain_map),
                   "einfty_consistency": einfty_consistent(dc, e_inf)},
    }
