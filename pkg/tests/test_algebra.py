import itertools
from fractions import Fraction

import pytest

from poisson_pages.algebra import (ComplexPresentation, RealLieAlgebraSpec, bracket,
                                   complexify, realify, validate)
from poisson_pages.errors import BadJ, DegreeMismatch, JacobiFailure, NonIntegrable, SchemaError
from poisson_pages.exterior import SparseElement
from poisson_pages.scalars import GaussianRational, gr

from conftest import ENTRY_NAMES, algebra, entry
from oracles import kodaira_tbar_t
import sympy

HALF_I = gr(0, "-1/2")


def J_of(pairs, dim):
    J = [[Fraction(0)] * dim for _ in range(dim)]
    for s, t, sign in pairs:
        J[t][s] = Fraction(sign)
    return tuple(tuple(r) for r in J)


def spec(name, basis, brackets, J):
    return RealLieAlgebraSpec(name, len(basis), tuple(basis),
                              tuple((i, j, tuple((k, Fraction(c)) for k, c in t)) for i, j, t in brackets), J)


def test_kodaira_tbar_t_matches_substitution_oracle():
    k = algebra("kodaira")
    # holomorphic order: T (index 0), W (index 1); conjugates at n + index
    got = k.bracket_index(k.conj_index(0), 0)
    a, b = kodaira_tbar_t(entry("kodaira").spec)
    assert (a, b) == (-sympy.I / 2, -sympy.I / 2)
    assert got == {1: HALF_I, 3: HALF_I}


def test_kodaira_bracket_operation():
    k = algebra("kodaira")
    assert bracket(k, {2: GaussianRational(1)}, {0: GaussianRational(1)}) == {1: HALF_I, 3: HALF_I}


def test_abelian_algebra_brackets_vanish():
    t = algebra("torus2")
    assert t.is_abelian_J
    for a, b in itertools.product(range(4), repeat=2):
        assert not t.bracket_index(a, b)


def test_iwasawa_flags_and_bracket():
    iw = algebra("iwasawa")
    assert iw.is_parallelizable
    assert iw.holo_labels == ("W1", "W2", "W3")
    w = [SparseElement.generator("A", 3, "v", i) for i in range(3)]
    assert bracket(iw, w[0], w[2]) == {1: GaussianRational(1)}
    assert bracket(iw, w[2], w[0]) == {1: GaussianRational(-1)}


def test_bracket_rejects_other_degrees():
    iw = algebra("iwasawa")
    with pytest.raises(DegreeMismatch):
        bracket(iw, SparseElement.one("A", 3), {0: GaussianRational(1)})


def test_validate_kodaira():
    rep = validate(entry("kodaira").spec)
    assert rep.ok and rep.jacobi and rep.abelian_J
    assert rep.nil_step == 2 and rep.center_dim == 2


def test_validate_w_family():
    rep = validate(entry("w1").spec)
    assert rep.abelian_J and rep.nil_step == 2 and rep.center_dim == 2
    assert entry("w1").spec.dim == 6


def test_bad_j_reported_and_raised():
    s = spec("bad", ["X", "Y"], [], J_of([(0, 1, 1), (1, 0, 1)], 2))
    rep = validate(s)
    assert not rep.j_squared_minus_identity
    assert any("BadJ" in f for f in rep.failures)
    with pytest.raises(BadJ):
        complexify(s)


def test_jacobi_failure():
    # [e0,e1]=e2, [e1,e2]=e0, [e0,e2]=e0: Jacobi fails
    s = spec("nj", ["a", "b", "c", "d"], [(0, 1, [(2, 1)]), (1, 2, [(0, 1)]), (0, 2, [(0, 1)])],
             J_of([(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)], 4))
    assert not validate(s).jacobi
    with pytest.raises(JacobiFailure):
        complexify(s)


def test_non_integrable():
    # h3 x R with J mixing the center into the non-central plane is not integrable
    s = spec("ni", ["X", "Y", "Z1", "Z2"], [(0, 1, [(2, 1)])],
             J_of([(0, 2, 1), (2, 0, -1), (1, 3, 1), (3, 1, -1)], 4))
    rep = validate(s)
    assert rep.j_squared_minus_identity and not rep.integrable
    with pytest.raises(NonIntegrable):
        complexify(s)


def test_non_antisymmetric_is_schema_error():
    s = spec("na", ["X", "Y"], [(0, 1, [(0, 1)]), (1, 0, [(0, 1)])], J_of([(0, 1, 1), (1, 0, -1)], 2))
    assert not validate(s).antisymmetric
    with pytest.raises(SchemaError):
        complexify(s)


def test_step_three_is_flagged():
    # filiform-like: [e0,e1]=e2, [e0,e2]=e3 (J need not be integrable for the note)
    s = spec("f4", ["e0", "e1", "e2", "e3"], [(0, 1, [(2, 1)]), (0, 2, [(3, 1)])],
             J_of([(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)], 4))
    rep = validate(s)
    assert rep.nil_step == 3
    assert any("step 3" in n for n in rep.notes)


def test_presentation_mismatch_is_schema_error():
    iw = entry("iwasawa").spec
    other = realify("x", ComplexPresentation(("A", "B", "C"), ((0, 1, ((2, GaussianRational(1)),)),)))
    bad = RealLieAlgebraSpec("mix", iw.dim, iw.basis, iw.brackets, iw.J, other.complex_presentation)
    with pytest.raises(SchemaError):
        complexify(bad)


def test_realify_round_trip_constants():
    cp = ComplexPresentation(("W1", "W2", "W3"), ((0, 2, ((1, GaussianRational(1)),)),))
    s = realify("iw", cp)
    plain = RealLieAlgebraSpec("iw", s.dim, s.basis, s.brackets, s.J)
    a, b = complexify(s), complexify(plain)
    assert a.is_parallelizable and b.is_parallelizable
    assert validate(plain).ok


# -- invariants, exhaustive over every catalog algebra ----------------------


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_jacobi_exhaustive(name):
    assert validate(entry(name).spec).jacobi


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_conjugation_symmetry(name):
    a = algebra(name)
    for x, y in itertools.product(range(2 * a.n), repeat=2):
        lhs = a.conj(a.bracket_index(x, y))
        rhs = a.bracket_index(a.conj_index(x), a.conj_index(y))
        assert lhs == rhs


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_abelian_j_means_holomorphic_part_abelian(name):
    a = algebra(name)
    if a.is_abelian_J:
        for x, y in itertools.product(range(a.n), repeat=2):
            assert not a.bracket_index(x, y)


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_parallelizable_means_no_mixed_brackets(name):
    a = algebra(name)
    if a.is_parallelizable:
        for x, y in itertools.product(range(a.n), repeat=2):
            assert not a.bracket_index(x, a.conj_index(y))
            assert all(k < a.n for k in a.bracket_index(x, y))


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_two_step_derived_algebra_is_central(name):
    a = algebra(name)
    if a.nil_step != 2:
        return
    for x, y in itertools.product(range(2 * a.n), repeat=2):
        v = a.bracket_index(x, y)
        for z in range(2 * a.n):
            assert not a.bracket({z: GaussianRational(1)}, v)


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_abelian_two_step_brackets_only_between_t_and_tbar(name):
    a = algebra(name)
    if not (a.is_abelian_J and a.nil_step == 2):
        return
    t = set(a.t_indices)
    c = set(a.c_indices)
    cc = c | {a.conj_index(i) for i in c}
    for x, y in itertools.product(range(2 * a.n), repeat=2):
        v = a.bracket_index(x, y)
        if not v:
            continue
        xs = {x, a.conj_index(x)}
        ys = {y, a.conj_index(y)}
        assert xs & t and ys & t
        assert (x < a.n) != (y < a.n)
        assert set(v) <= cc


def test_tc_split_of_catalog():
    assert algebra("kodaira").t_indices == (0,) and algebra("kodaira").c_indices == (1,)
    assert algebra("iwasawa").c_indices == (1,)
    assert algebra("h_r2").c_indices == (2,)


def test_to_json_has_flags():
    doc = algebra("iwasawa").to_json()
    assert doc["is_parallelizable"] is True and doc["n"] == 3
    assert validate(entry("kodaira").spec).to_json()["ok"] is True
