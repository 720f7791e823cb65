from math import comb

import pytest

from poisson_pages import catalog, linalg, spectral
from poisson_pages.errors import NotACycle, NotE2Class, NotPoisson
from poisson_pages.exterior import SparseElement, wedge
from poisson_pages.scalars import GaussianRational

from conftest import ENTRY_NAMES, TWO_STEP_NAMES, algebra, sampled
from oracles import iwasawa_e1_dim, iwasawa_total_cohomology, page_dims_oracle, total_cohomology_oracle


def iw_lambda(a=1, b=1):
    v = [SparseElement.generator("A", 3, "v", i) for i in range(3)]
    return wedge(v[0], v[1]).scale(a) + wedge(v[1], v[2]).scale(b)


def test_block_dims_kodaira():
    k = algebra("kodaira")
    dc = spectral.build(k, catalog.standard_lambda(k))
    assert [[len(dc.blocks[(p, q)]) for p in range(3)] for q in range(3)] == [[1, 2, 1], [2, 4, 2], [1, 2, 1]]


def test_torus_all_matrices_zero():
    t = algebra("torus2")
    for cand in sampled("torus2"):
        dc = spectral.build(t, cand)
        assert dc.horizontal_is_zero()
        assert all(linalg.is_zero_map(m) for m in dc.vertical.values())


def test_iwasawa_horizontal_zero():
    dc = spectral.build(algebra("iwasawa"), iw_lambda(1, 0))
    assert dc.horizontal_is_zero()


def test_build_refuses_non_poisson():
    v = [SparseElement.generator("A", 3, "v", i) for i in range(3)]
    with pytest.raises(NotPoisson):
        spectral.build(algebra("iwasawa"), wedge(v[0], v[2]))


def test_iwasawa_pages():
    dc = spectral.build(algebra("iwasawa"), iw_lambda(1, GaussianRational(0, 1)))
    ps = spectral.pages(dc, 3)
    for r in (1, 2, 3):
        for (p, q), e in ps[r].entries.items():
            assert e.dim == iwasawa_e1_dim(p, q)
    assert spectral.degeneracy_page(dc) == 1
    assert spectral.total_cohomology(dc) == iwasawa_total_cohomology() == [1, 5, 11, 14, 11, 5, 1]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_torus_pages(n):
    a = algebra(f"torus{n}")
    dc = spectral.build(a, SparseElement("A", n, (2, 0)))
    for pg in spectral.pages(dc, 2 * n + 1)[1:]:
        assert pg.dims() == {(p, q): comb(n, p) * comb(n, q) for p in range(n + 1) for q in range(n + 1)}
        assert pg.is_trivial()
    assert spectral.total_cohomology(dc) == [comb(2 * n, k) for k in range(2 * n + 1)]


def test_kodaira_standard_d2_zero():
    k = algebra("kodaira")
    dc = spectral.build(k, catalog.standard_lambda(k))
    assert spectral.page(dc, 2).is_trivial()
    assert spectral.degeneracy_page(dc) <= 2


@pytest.mark.parametrize("name", ["kodaira", "w1", "p1", "iwasawa", "h_r1"])
def test_page_dims_match_dense_oracle(name):
    a = algebra(name)
    for cand in sampled(name)[:3]:
        dc = spectral.build(a, cand)
        for r in range(0, a.n + 2):
            assert spectral.page(dc, r).dims() == page_dims_oracle(dc, r)


@pytest.mark.parametrize("name", ["kodaira", "iwasawa", "w1"])
def test_frolicher_page_dims_match_dense_oracle(name):
    dc = spectral.frolicher(algebra(name))
    for r in range(0, dc.n + 2):
        assert spectral.page(dc, r).dims() == page_dims_oracle(dc, r)


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_total_cohomology_matches_dense_oracle(name):
    a = algebra(name)
    for cand in sampled(name)[:2]:
        dc = spectral.build(a, cand)
        assert spectral.total_cohomology(dc) == total_cohomology_oracle(dc)


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_page_invariants(name):
    a = algebra(name)
    n = a.n
    for cand in sampled(name):
        dc = spectral.build(a, cand)
        ps = spectral.pages(dc, n + 1)
        for r, pg in enumerate(ps):
            assert set(pg.entries) == {(p, q) for p in range(n + 1) for q in range(n + 1)}
            if r + 1 < len(ps):
                for b, e in pg.entries.items():
                    assert ps[r + 1].entries[b].dim <= e.dim
            # d_r o d_r = 0 on composable pairs
            for (p, q), e in pg.entries.items():
                if e.target is None or not e.dim:
                    continue
                t = pg.entries[e.target]
                if t.target is None:
                    continue
                assert linalg.is_zero_map(linalg.compose(t.d, e.d)) if t.d else True
            # representatives are cycles in F^p K^{p+q}
            for (p, q), e in pg.entries.items():
                allowed = set(dc.filtration_indices(p, p + q))
                for rep in e.reps:
                    assert set(rep) <= allowed
        assert spectral.einfty_consistent(dc, ps[-1])
        assert spectral.e1_matches_columns(dc)


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_d2_chase_agrees_with_pages(name):
    a = algebra(name)
    for cand in sampled(name):
        assert spectral.d2_chase_agrees(spectral.build(a, cand))


def test_d2_chase_errors():
    k = algebra("kodaira")
    dc = spectral.build(k, catalog.standard_lambda(k))
    T = SparseElement.generator("A", 2, "v", 0)
    with pytest.raises(NotACycle):
        spectral.d2_by_chasing(dc, 1, 0, T)
    with pytest.raises(NotACycle):
        spectral.d2_by_chasing(dc, 0, 1, T)


def test_d2_chase_not_e2_class():
    # on w(1) with a sampled Lambda, d_1 is nonzero somewhere: a dbar-cycle whose
    # ad-image is not exact is rejected
    a = algebra("w1")
    cand = sampled("w1")[2]
    dc = spectral.build(a, cand)
    e1 = spectral.page(dc, 1)
    hit = [(b, e) for b, e in e1.entries.items() if e.d_rank and b[1] >= 1 and b[0] + 2 <= a.n]
    assert hit
    (p, q), e = hit[0]
    for i, rep in enumerate(e.reps):
        if e.d[i]:
            v = dc.element((p, q), dc.component(p + q, rep, (p, q)))
            with pytest.raises(NotE2Class):
                spectral.d2_by_chasing(dc, p, q, v)
            return
    pytest.fail("no class with nonzero d_1")


def test_d2_chase_torus_zero():
    t = algebra("torus2")
    dc = spectral.build(t, SparseElement("A", 2, (2, 0)))
    one = SparseElement.one("A", 2)
    wbar = SparseElement.generator("A", 2, "f", 0)
    assert spectral.d2_by_chasing(dc, 0, 1, wbar).is_zero()
    assert spectral.d2_by_chasing(dc, 0, 0, one).is_zero()


@pytest.mark.parametrize("name", TWO_STEP_NAMES)
def test_degeneracy_at_most_two(name):
    a = algebra(name)
    for cand in sampled(name):
        assert spectral.degeneracy_page(spectral.build(a, cand)) <= 2


def test_w_family_reaches_page_two():
    # nontrivial d_1 exists, so the bound is attained
    a = algebra("w1")
    assert any(spectral.degeneracy_page(spectral.build(a, c)) == 2 for c in sampled("w1"))


@pytest.mark.parametrize("name", ["iwasawa", "torus2"])
def test_parallelizable_factorization(name):
    a = algebra(name)
    for cand in sampled(name):
        dc = spectral.build(a, cand)
        for r in range(2, a.n + 2):
            assert spectral.page(dc, r).is_trivial()
        assert spectral.page(dc, 2).dims() == spectral.e2_factor_dims(dc)


@pytest.mark.parametrize("name", ["iwasawa", "kodaira", "torus2"])
def test_frolicher(name):
    a = algebra(name)
    dc = spectral.frolicher(a)
    n = a.n
    assert spectral.page(dc, 0).dims() == {(p, q): comb(n, p) * comb(n, q) for p in range(n + 1) for q in range(n + 1)}
    assert spectral.einfty_consistent(dc)
    if name == "torus2":
        assert spectral.degeneracy_page(dc) == 1


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_page_map(name):
    a = algebra(name)
    b_dc = spectral.frolicher(a)
    for cand in sampled(name):
        a_dc = spectral.build(a, cand)
        pm = spectral.page_map(cand, b_dc, a_dc)
        assert pm.commutes()
        assert pm.identity_on_p0()
        assert spectral.p0_column_transfer(b_dc, a_dc)


def test_page_map_zero_lambda():
    a = algebra("kodaira")
    b_dc = spectral.frolicher(a)
    zero = SparseElement("A", 2, (2, 0))
    pm = spectral.page_map(zero, b_dc, spectral.build(a, zero))
    for (p, q), m in pm.matrices.items():
        if p >= 1:
            assert linalg.is_zero_map(m)
    assert pm.identity_on_p0()


def test_report_shape():
    k = algebra("kodaira")
    dc = spectral.build(k, catalog.standard_lambda(k))
    doc = spectral.report(dc, 4)
    assert set(doc) == {"algebra", "lambda", "pages", "degeneracy_page", "total_cohomology", "checks"}
    assert [pg["r"] for pg in doc["pages"]] == [0, 1, 2, 3, 4]
    assert doc["checks"] == {"square_zero": True, "chain_map": True, "einfty_consistency": True}
    assert doc["degeneracy_page"] == spectral.degeneracy_page(dc)


def test_pages_r_max_validation():
    k = algebra("kodaira")
    with pytest.raises(ValueError):
        spectral.pages(spectral.build(k, catalog.standard_lambda(k)), 0)
