import random

import pytest

from poisson_pages import catalog, identities as I
from poisson_pages.calculus import schouten
from poisson_pages.exterior import SparseElement, wedge

from conftest import ENTRY_NAMES, TWO_STEP_NAMES, algebra, sampled


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_schouten_square_six_term_identity_on_random_bivectors(name):
    a = algebra(name)
    rng = random.Random(11)
    for _ in range(20):
        assert I.schouten_square_residuals(a, I.random_bivector(a.n, rng)) == []


def test_six_term_identity_detects_non_poisson():
    iw = algebra("iwasawa")
    v = [SparseElement.generator("A", 3, "v", i) for i in range(3)]
    lam = wedge(v[0], v[2])
    # both sides equal -1 on (omega_1, omega_2, omega_3)
    assert I.schouten_square_residuals(iw, lam) == []
    from poisson_pages.calculus import schouten
    from poisson_pages.exterior import evaluate
    assert evaluate(schouten(iw, lam, lam), [("v", 0), ("v", 1), ("v", 2)]) == -2


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_lie_derivative_pairing_identity(name):
    a = algebra(name)
    for b in catalog.holomorphic_bivectors(a):
        assert I.form_bracket_residuals(a, b) == []


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_holomorphy_expansion(name):
    a = algebra(name)
    rng = random.Random(5)
    for _ in range(10):
        assert I.dbar_bivector_residuals(a, I.random_bivector(a.n, rng)) == []


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_holomorphic_pairing_symmetry(name):
    a = algebra(name)
    for b in catalog.holomorphic_bivectors(a):
        assert I.holomorphic_pairing_residuals(a, b) == []


def test_holomorphic_pairing_fails_for_non_holomorphic():
    k = algebra("kodaira")
    v = [SparseElement.generator("A", 2, "v", i) for i in range(2)]
    # T ^ W is holomorphic; on h_r(2), T1 ^ T2 is not
    h = algebra("h_r2")
    t = [SparseElement.generator("A", 3, "v", i) for i in range(3)]
    lam = wedge(t[0], t[1])
    from poisson_pages.calculus import dbar
    assert not dbar(h, lam).is_zero()
    assert I.holomorphic_pairing_residuals(h, lam) != []
    assert I.holomorphic_pairing_residuals(k, wedge(v[0], v[1])) == []


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_phi_pullback(name):
    a = algebra(name)
    rng = random.Random(2)
    for _ in range(5):
        assert I.phi_pullback_residuals(a, I.random_bivector(a.n, rng)) == []


@pytest.mark.parametrize("name", ["iwasawa", "torus2"])
def test_form_sign_law_parallelizable(name):
    a = algebra(name)
    for cand in sampled(name):
        assert I.form_sign_law_residuals(a, cand.lam) == []


@pytest.mark.parametrize("name", TWO_STEP_NAMES)
def test_containment_lattice(name):
    a = algebra(name)
    for cand in sampled(name):
        assert I.containment_violations(a, cand.lam) == []


def test_split_lambda():
    a = algebra("h_r2")
    t = [SparseElement.generator("A", 3, "v", i) for i in range(3)]
    lam = wedge(t[2], t[0]) + wedge(t[0], t[1])
    one, two = I.split_lambda(a, lam)
    assert one == wedge(t[2], t[0]) and two == wedge(t[0], t[1])


def test_four_index():
    a = algebra("h_r2")
    # vec T1, W; forms wbar^1, rhobar
    assert I.four_index(a, ((0, 2), (0, 2))) == (1, 1, 1, 1)


@pytest.mark.parametrize("name", ENTRY_NAMES)
def test_vector_bracket_identity(name):
    a = algebra(name)
    rng = random.Random(17)
    for _ in range(20):
        assert I.vector_bracket_residuals(a, I.random_bivector(a.n, rng)) == []


def test_vector_bracket_identity_is_not_vacuous():
    a = algebra("iwasawa")
    lam = I.random_bivector(a.n, random.Random(3))
    X = SparseElement.generator("A", a.n, "v", 0)
    assert not schouten(a, lam, X).is_zero()
