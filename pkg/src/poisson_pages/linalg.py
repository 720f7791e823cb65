"""Sparse exact linear algebra over Q(i).

Vectors are ``dict[int, GaussianRational]`` with no zero entries stored.
A linear map is a list of column vectors (images of the domain basis).
All reductions choose the smallest available coordinate as pivot, so every
basis produced here is a reduced-echelon basis in the fixed coordinate order.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import ONE, GaussianRational

SparseVec = Dict[int, GaussianRational]


def axpy(v: SparseVec, a: GaussianRational, w: SparseVec) -> None:
    """v += a * w, in place."""
    if not a:
        return
    for k, x in w.items():
        y = v.get(k)
        y = a * x if y is None else y + a * x
        if y:
            v[k] = y
        else:
            v.pop(k, None)


def scale(v: SparseVec, a: GaussianRational) -> SparseVec:
    if not a:
        return {}
    return {k: a * x for k, x in v.items()}


def add(v: SparseVec, w: SparseVec) -> SparseVec:
    out = dict(v)
    axpy(out, ONE, w)
    return out


def apply(columns: Sequence[SparseVec], x: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for j, a in x.items():
        axpy(out, a, columns[j])
    return out


def compose(outer: Sequence[SparseVec], inner: Sequence[SparseVec]) -> List[SparseVec]:
    return [apply(outer, c) for c in inner]


def is_zero_map(columns: Iterable[SparseVec]) -> bool:
    return all(not c for c in columns)


class Echelon:
    """Fully reduced echelon basis of a subspace, built incrementally.

    Optionally tracks, for each stored row, the combination of inserted
    vectors that produced it (``track=True``), which gives kernels and
    preimages for free.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: Dict[int, SparseVec] = {}
        self.combos: Dict[int, SparseVec] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, v: SparseVec, combo: Optional[SparseVec] = None) -> Tuple[SparseVec, Optional[SparseVec]]:
        v = dict(v)
        combo = dict(combo) if combo is not None else ({} if self.track else None)
        for p in [p for p in v if p in self.rows]:
            a = v.get(p)
            if a:
                axpy(v, -a, self.rows[p])
                if self.track:
                    axpy(combo, -a, self.combos[p])
        return v, combo

    def insert(self, v: SparseVec, combo: Optional[SparseVec] = None) -> Tuple[bool, Optional[SparseVec]]:
        """Add ``v``. Returns (added, residual_combo).

        When ``v`` is dependent and tracking is on, the returned combination
        is a relation: sum of tracked inputs with those weights is zero.
        """
        r, c = self.reduce(v, combo)
        if not r:
            return False, c
        p = min(r)
        inv = r[p].inverse()
        r = scale(r, inv)
        if self.track:
            c = scale(c, inv)
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                axpy(row, -a, r)
                if self.track:
                    axpy(self.combos[q], -a, c)
        self.rows[p] = r
        if self.track:
            self.combos[p] = c
        return True, None

    def contains(self, v: SparseVec) -> bool:
        r, _ = self.reduce(v)
        return not r

    def basis(self) -> List[SparseVec]:
        return [self.rows[p] for p in self.pivots]

    def copy(self) -> "Echelon":
        e = Echelon(self.track)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        e.combos = {p: dict(c) for p, c in self.combos.items()}
        return e


def span(vectors: Iterable[SparseVec]) -> Echelon:
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return e


def rank(columns: Iterable[SparseVec]) -> int:
    return len(span(columns))


def kernel(columns: Sequence[SparseVec]) -> List[SparseVec]:
    """Reduced-echelon basis of the kernel of the map given by ``columns``."""
    e = Echelon(track=True)
    rel = Echelon()
    for j, c in enumerate(columns):
        added, relation = e.insert(c, {j: ONE})
        if not added:
            rel.insert(relation)
    return rel.basis()


def image(columns: Sequence[SparseVec]) -> List[SparseVec]:
    return span(columns).basis()


class Solver:
    """Solves ``M x = y`` for a fixed map ``M``."""

    def __init__(self, columns: Sequence[SparseVec]):
        self.columns = list(columns)
        self.echelon = Echelon(track=True)
        for j, c in enumerate(self.columns):
            self.echelon.insert(c, {j: ONE})

    def solve(self, y: SparseVec) -> Optional[SparseVec]:
        r, c = self.echelon.reduce(y, {})
        if r:
            return None
        return scale(c, GaussianRational(-1))

    @property
    def rank(self) -> int:
        return len(self.echelon)


def intersect_with_preimage(basis: Sequence[SparseVec], columns: Sequence[SparseVec],
                            mask: Iterable[int]) -> List[SparseVec]:
    """Vectors x in span(basis) whose image under ``columns`` vanishes on ``mask``.

    Returns a reduced-echelon basis of that subspace (in ambient coordinates).
    """
    mask = set(mask)
    restricted = []
    for b in basis:
        img = apply(columns, b)
        restricted.append({k: a for k, a in img.items() if k in mask})
    combos = kernel(restricted)
    out = Echelon()
    for c in combos:
        x: SparseVec = {}
        for j, a in c.items():
            axpy(x, a, basis[j])
        out.insert(x)
    return out.basis()


class Quotient:
    """Quotient ``Z / S`` of subspaces (S contained in Z) with canonical coordinates.

    Representatives are the reduced-echelon basis of Z reduced modulo S.
    """

    def __init__(self, z_basis: Sequence[SparseVec], s_basis: Sequence[SparseVec]):
        self.sub = span(s_basis)
        reps = Echelon()
        for z in z_basis:
            r, _ = self.sub.reduce(z)
            if r:
                reps.insert(r)
        # reps rows are zero on the pivots of ``sub``; order by pivot
        self.rep_echelon = reps
        self.reps = reps.basis()
        self.rep_pivots = reps.pivots

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coordinates(self, v: SparseVec) -> Optional[List[GaussianRational]]:
        """Coordinates of the class of ``v``; None if v is not in Z."""
        r, _ = self.sub.reduce(v)
        coords = []
        for p, rep in zip(self.rep_pivots, self.reps):
            a = r.get(p)
            coords.append(a if a else GaussianRational(0))
            if a:
                axpy(r, -a, rep)
        if r:
            return None
        return coords
