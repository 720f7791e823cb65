"""Rational nilpotent Lie algebras with invariant complex structures.

A real algebra is given by structure constants ``[e_i, e_j] = sum_k c_ij^k e_k``
and a rational matrix ``J`` acting on coordinate columns, so ``J e_j`` is the
j-th column of ``J``.  Complexification picks holomorphic vectors
``T = (X - iJX)/2`` and records every bracket of ``g_C = g^{1,0} + g^{0,1}`` in
the index space ``0..n-1`` (holomorphic) and ``n..2n-1`` (conjugates).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from . import linalg
from .errors import BadJ, DegreeMismatch, JacobiFailure, NonIntegrable, SchemaError
from .linalg import SparseVec
from .scalars import HALF, I, ONE, GaussianRational

BracketTerms = Tuple[Tuple[int, GaussianRational], ...]


@dataclass(frozen=True)
class ComplexPresentation:
    """Direct complex data: ``labels`` name the holomorphic basis, brackets
    live in the 2n-index space (holomorphic first, then conjugates)."""

    labels: Tuple[str, ...]
    brackets: Tuple[Tuple[int, int, BracketTerms], ...]

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class RealLieAlgebraSpec:
    name: str
    dim: int
    basis: Tuple[str, ...]
    brackets: Tuple[Tuple[int, int, BracketTerms], ...]
    J: Tuple[Tuple[Fraction, ...], ...]
    complex_presentation: Optional[ComplexPresentation] = None

    def structure_constants(self) -> Dict[Tuple[int, int], SparseVec]:
        """Full antisymmetric table over ordered pairs (i != j).

        Raises SchemaError when the listed brackets contradict antisymmetry.
        """
        table: Dict[Tuple[int, int], SparseVec] = {}
        for i, j, terms in self.brackets:
            v: SparseVec = {}
            for k, c in terms:
                linalg.axpy(v, GaussianRational.coerce(c), {k: ONE})
            if i == j:
                if v:
                    raise SchemaError(f"nonzero self-bracket [e{i}, e{i}]")
                continue
            neg = linalg.scale(v, GaussianRational(-1))
            for key, val in (((i, j), v), ((j, i), neg)):
                if key in table and table[key] != val:
                    raise SchemaError(f"inconsistent brackets for pair {key}")
                table[key] = val
        return {k: v for k, v in table.items() if v}

    def j_columns(self) -> List[SparseVec]:
        cols = []
        for j in range(self.dim):
            cols.append({i: GaussianRational(self.J[i][j]) for i in range(self.dim) if self.J[i][j] != 0})
        return cols


def bracket_vectors(table: Mapping[Tuple[int, int], SparseVec], u: SparseVec, v: SparseVec) -> SparseVec:
    """Bilinear extension of a structure-constant table."""
    out: SparseVec = {}
    for i, a in u.items():
        for j, b in v.items():
            if i == j:
                continue
            c = table.get((i, j))
            if c:
                linalg.axpy(out, a * b, c)
    return out


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    antisymmetric: bool
    jacobi: bool
    j_squared_minus_identity: bool
    integrable: bool
    abelian_J: bool
    parallelizable: bool
    nil_step: Optional[int]
    center_dim: int
    notes: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.antisymmetric and self.jacobi and self.j_squared_minus_identity and self.integrable

    @property
    def failures(self) -> List[str]:
        out = []
        if not self.antisymmetric:
            out.append("antisymmetry")
        if not self.jacobi:
            out.append("jacobi")
        if not self.j_squared_minus_identity:
            out.append("BadJ: J^2 != -1")
        if self.j_squared_minus_identity and not self.integrable:
            out.append("NonIntegrable: Nijenhuis tensor nonzero")
        return out

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "antisymmetric": self.antisymmetric,
            "jacobi": self.jacobi,
            "j_squared_minus_identity": self.j_squared_minus_identity,
            "integrable": self.integrable,
            "abelian_J": self.abelian_J,
            "parallelizable": self.parallelizable,
            "nil_step": self.nil_step,
            "center_dim": self.center_dim,
            "failures": self.failures,
            "notes": list(self.notes),
        }


def _unit(i: int) -> SparseVec:
    return {i: ONE}


def _jacobi_holds(table, dim: int) -> bool:
    for i, j, k in itertools.combinations(range(dim), 3):
        ei, ej, ek = _unit(i), _unit(j), _unit(k)
        s = bracket_vectors(table, bracket_vectors(table, ei, ej), ek)
        s = linalg.add(s, bracket_vectors(table, bracket_vectors(table, ej, ek), ei))
        s = linalg.add(s, bracket_vectors(table, bracket_vectors(table, ek, ei), ej))
        if s:
            return False
    return True


def lower_central_step(table, dim: int) -> Optional[int]:
    """Nilpotency step, or None if the algebra is not nilpotent."""
    current = [_unit(i) for i in range(dim)]
    for step in range(1, dim + 2):
        nxt = linalg.span(
            bracket_vectors(table, _unit(i), v) for i in range(dim) for v in current
        ).basis()
        if not nxt:
            return step if dim else 0
        if len(nxt) == len(current):
            return None
        current = nxt
    return None


def center_basis(table, dim: int) -> List[SparseVec]:
    """Kernel of v -> ([e_i, v])_i, stacked into one long coordinate vector."""
    cols = []
    for j in range(dim):
        col: SparseVec = {}
        for i in range(dim):
            for k, a in table.get((i, j), {}).items():
                col[i * dim + k] = a
        cols.append(col)
    return linalg.kernel(cols)


def validate(spec: RealLieAlgebraSpec) -> ValidationReport:
    notes: List[str] = []
    try:
        table = spec.structure_constants()
        antisym = True
    except SchemaError:
        antisym = False
        table = {}
        for i, j, terms in spec.brackets:
            if i < j:
                table[(i, j)] = {k: GaussianRational.coerce(c) for k, c in terms if c}
                table[(j, i)] = linalg.scale(table[(i, j)], GaussianRational(-1))
    dim = spec.dim
    jac = _jacobi_holds(table, dim)
    Jc = spec.j_columns()
    j2 = all(linalg.apply(Jc, Jc[j]) == {j: GaussianRational(-1)} for j in range(dim))

    def J(v):
        return linalg.apply(Jc, v)

    integrable = abelian = parallel = j2
    if j2:
        for i, j in itertools.combinations(range(dim), 2):
            ei, ej = _unit(i), _unit(j)
            b = bracket_vectors(table, ei, ej)
            bJJ = bracket_vectors(table, J(ei), J(ej))
            bJi = bracket_vectors(table, J(ei), ej)
            biJ = bracket_vectors(table, ei, J(ej))
            nij = linalg.add(bJJ, linalg.scale(linalg.add(linalg.add(J(bJi), J(biJ)), b), GaussianRational(-1)))
            if nij:
                integrable = False
            if bJJ != b:
                abelian = False
        for i in range(dim):
            for j in range(dim):
                if bracket_vectors(table, _unit(i), J(_unit(j))) != J(bracket_vectors(table, _unit(i), _unit(j))):
                    parallel = False
                    break
    step = lower_central_step(table, dim)
    if step is None:
        notes.append("not nilpotent")
    elif step > 2:
        notes.append(f"step {step} > 2: 2-step hypotheses of the degeneracy theorem fail")
    cdim = len(center_basis(table, dim))
    return ValidationReport(antisym, jac, j2, integrable, abelian, parallel, step, cdim, tuple(notes))


# ---------------------------------------------------------------------------
# complexified algebra


@dataclass(frozen=True)
class ComplexifiedAlgebra:
    """Complexified algebra with chosen bases of g^{1,0} and g^{0,1}.

    ``constants[(a, b)]`` is ``[x_a, x_b]`` in the 2n-index space, stored for
    all ordered pairs with a nonzero bracket.
    """

    name: str
    n: int
    holo_labels: Tuple[str, ...]
    constants: Mapping[Tuple[int, int], SparseVec]
    t_indices: Optional[Tuple[int, ...]]
    c_indices: Optional[Tuple[int, ...]]
    is_abelian_J: bool
    is_parallelizable: bool
    nil_step: Optional[int]
    center_dim: int
    spec: Optional[RealLieAlgebraSpec] = field(default=None, compare=False, repr=False)
    notes: Tuple[str, ...] = ()

    @property
    def anti_labels(self) -> Tuple[str, ...]:
        return tuple(f"{s}bar" for s in self.holo_labels)

    @property
    def dual_labels(self) -> Tuple[str, ...]:
        return tuple(f"w[{s}]" for s in self.holo_labels)

    @property
    def anti_dual_labels(self) -> Tuple[str, ...]:
        return tuple(f"wbar[{s}]" for s in self.holo_labels)

    def conj_index(self, a: int) -> int:
        return a + self.n if a < self.n else a - self.n

    def conj(self, v: SparseVec) -> SparseVec:
        return {self.conj_index(k): x.conjugate() for k, x in v.items()}

    def bracket_index(self, a: int, b: int) -> SparseVec:
        return self.constants.get((a, b), {})

    def bracket(self, u: SparseVec, v: SparseVec) -> SparseVec:
        return bracket_vectors(self.constants, u, v)

    def pr10(self, v: SparseVec) -> SparseVec:
        return {k: x for k, x in v.items() if k < self.n}

    def pr01(self, v: SparseVec) -> SparseVec:
        return {k: x for k, x in v.items() if k >= self.n}

    @property
    def has_tc_split(self) -> bool:
        return self.t_indices is not None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "holo_basis": list(self.holo_labels),
            "t_indices": None if self.t_indices is None else list(self.t_indices),
            "c_indices": None if self.c_indices is None else list(self.c_indices),
            "is_abelian_J": self.is_abelian_J,
            "is_parallelizable": self.is_parallelizable,
            "nil_step": self.nil_step,
            "center_dim": self.center_dim,
            "notes": list(self.notes),
        }


def _as_vector(x, alg: ComplexifiedAlgebra) -> SparseVec:
    if isinstance(x, dict):
        return x
    # A-side SparseElement of bidegree (1, 0)
    bideg = getattr(x, "bidegree", None)
    if bideg != (1, 0) or getattr(x, "side", None) != "A":
        raise DegreeMismatch(f"bracket needs degree-1 vectors, got bidegree {bideg}")
    return {vec[0]: c for (vec, _), c in x.terms.items()}


def bracket(alg: ComplexifiedAlgebra, a, b) -> SparseVec:
    """Lie bracket of two elements of g_C.

    Inputs are 2n-index vectors or A-side (1,0) elements.  Use ``alg.pr10`` /
    ``alg.pr01`` on the result for the type projections.
    """
    return alg.bracket(_as_vector(a, alg), _as_vector(b, alg))


def _center_split(constants, n: int) -> Tuple[Optional[Tuple[int, ...]], Optional[Tuple[int, ...]]]:
    """Holomorphic indices spanning c^{1,0}, when that subspace is coordinate-aligned."""
    cols = []
    for j in range(n):
        col: SparseVec = {}
        for i in range(2 * n):
            for k, a in constants.get((i, j), {}).items():
                col[i * 2 * n + k] = a
        cols.append(col)
    ker = linalg.kernel(cols)
    c = []
    for v in ker:
        if len(v) != 1:
            return None, None
        c.append(next(iter(v)))
    c = tuple(sorted(c))
    t = tuple(i for i in range(n) if i not in c)
    return t, c


def _check_and_raise(report: ValidationReport) -> None:
    if not report.antisymmetric:
        raise SchemaError("brackets are not antisymmetric")
    if not report.j_squared_minus_identity:
        raise BadJ("J^2 != -identity")
    if not report.jacobi:
        raise JacobiFailure("Jacobi identity fails")
    if not report.integrable:
        raise NonIntegrable("Nijenhuis tensor of J does not vanish")


def complexify(spec: RealLieAlgebraSpec) -> ComplexifiedAlgebra:
    report = validate(spec)
    _check_and_raise(report)
    if spec.complex_presentation is not None:
        _check_presentation_matches(spec)
        constants, labels = _constants_from_presentation(spec.complex_presentation)
        notes = ("holomorphic basis taken from the complex presentation",)
    else:
        constants, labels, notes = _constants_from_real(spec)
    n = spec.dim // 2
    # integrability: [g10, g10] stays in g10
    for a in range(n):
        for b in range(n):
            if any(k >= n for k in constants.get((a, b), {})):
                raise NonIntegrable("[g^{1,0}, g^{1,0}] leaves g^{1,0}")
    t, c = _center_split(constants, n)
    return ComplexifiedAlgebra(
        name=spec.name, n=n, holo_labels=tuple(labels), constants=constants,
        t_indices=t, c_indices=c,
        is_abelian_J=report.abelian_J, is_parallelizable=report.parallelizable,
        nil_step=report.nil_step, center_dim=report.center_dim, spec=spec,
        notes=tuple(notes) + report.notes,
    )


def _constants_from_real(spec: RealLieAlgebraSpec):
    dim = spec.dim
    table = spec.structure_constants()
    Jc = spec.j_columns()

    def J(v):
        return linalg.apply(Jc, v)

    # c = center ∩ J(center), J-stable
    center = center_basis(table, dim)
    cspan = linalg.span(center)
    stable_cols = []
    for v in center:
        r, _ = cspan.reduce(J(v))
        stable_cols.append(r)
    combos = linalg.kernel(stable_cols)
    c_vecs = []
    for comb in combos:
        x: SparseVec = {}
        for j, a in comb.items():
            linalg.axpy(x, a, center[j])
        c_vecs.append(x)
    c_vecs = linalg.span(c_vecs).basis()

    chosen = linalg.Echelon()
    c_reps: List[SparseVec] = []
    for v in c_vecs:
        if not chosen.contains(v):
            chosen.insert(v)
            chosen.insert(J(v))
            c_reps.append(v)
    t_reps: List[SparseVec] = []
    t_labels: List[str] = []
    for j in range(dim):
        e = _unit(j)
        if not chosen.contains(e):
            chosen.insert(e)
            chosen.insert(J(e))
            t_reps.append(e)
            t_labels.append(spec.basis[j])
    c_labels = []
    for v in c_reps:
        if len(v) == 1 and next(iter(v.values())) == ONE:
            c_labels.append(spec.basis[next(iter(v))])
        else:
            c_labels.append("+".join(f"{a}*{spec.basis[k]}" for k, a in sorted(v.items())))
    reps = t_reps + c_reps
    labels = [f"T({s})" for s in t_labels] + [f"W({s})" for s in c_labels]
    minus_i_half = HALF * (-I)
    i_half = HALF * I
    holo = [linalg.add(linalg.scale(x, HALF), linalg.scale(J(x), minus_i_half)) for x in reps]
    anti = [linalg.add(linalg.scale(x, HALF), linalg.scale(J(x), i_half)) for x in reps]
    frame = holo + anti
    solver = linalg.Solver(frame)
    if solver.rank != dim:
        raise BadJ("could not build a complex frame from J")
    constants: Dict[Tuple[int, int], SparseVec] = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            br = bracket_vectors(table, frame[a], frame[b])
            if not br:
                continue
            coords = solver.solve(br)
            constants[(a, b)] = coords
            constants[(b, a)] = linalg.scale(coords, GaussianRational(-1))
    notes = [f"complement of center chosen lexicographically: {', '.join(t_labels) or '-'}"]
    return constants, labels, notes


def _constants_from_presentation(cp: ComplexPresentation):
    n = cp.n
    table: Dict[Tuple[int, int], SparseVec] = {}

    def conj_i(a):
        return a + n if a < n else a - n

    def put(a, b, v):
        if a == b:
            if v:
                raise SchemaError("nonzero self-bracket in complex presentation")
            return
        for key, val in (((a, b), v), ((b, a), linalg.scale(v, GaussianRational(-1)))):
            if key in table and table[key] != val:
                raise SchemaError(f"inconsistent complex brackets for pair {key}")
            table[key] = val

    for a, b, terms in cp.brackets:
        v: SparseVec = {}
        for k, c in terms:
            linalg.axpy(v, GaussianRational.coerce(c), {k: ONE})
        put(a, b, v)
        put(conj_i(a), conj_i(b), {conj_i(k): x.conjugate() for k, x in v.items()})
    return {k: v for k, v in table.items() if v}, list(cp.labels)


def _check_presentation_matches(spec: RealLieAlgebraSpec) -> None:
    ref = realify(spec.name, spec.complex_presentation)
    if ref.dim != spec.dim or ref.J != spec.J or ref.structure_constants() != spec.structure_constants():
        raise SchemaError("complex_presentation disagrees with the real brackets/J")


def realify(name: str, cp: ComplexPresentation) -> RealLieAlgebraSpec:
    """Real spec with basis X_k = T_k + Tbar_k, Y_k = i(T_k - Tbar_k) = J X_k."""
    n = cp.n
    constants, _ = _constants_from_presentation(cp)
    # real basis vectors in the 2n-index complex frame
    frame = []
    labels = []
    for k in range(n):
        frame.append({k: ONE, k + n: ONE})
        frame.append({k: I, k + n: -I})
        labels += [f"X{k + 1}", f"Y{k + 1}"]
    solver = linalg.Solver(frame)
    brackets = []
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            br = bracket_vectors(constants, frame[i], frame[j])
            if not br:
                continue
            coords = solver.solve(br)
            if coords is None or any(not x.is_real() for x in coords.values()):
                raise SchemaError("complex presentation does not close over a real form")
            brackets.append((i, j, tuple((k, coords[k]) for k in sorted(coords))))
    J = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for k in range(n):
        J[2 * k + 1][2 * k] = Fraction(1)
        J[2 * k][2 * k + 1] = Fraction(-1)
    return RealLieAlgebraSpec(name, 2 * n, tuple(labels), tuple(brackets),
                              tuple(tuple(r) for r in J), cp)
