"""Tests for the symbolic Grassmann layer.

Hand-computed oracles are frozen as exact coefficient tables.  Algebraic laws
are checked property-style with small Gaussian-integer coefficients, so every
float operation involved is exact and equality can be tested without
tolerances.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudospin.grassmann import (
    AlgebraSpec,
    Generator,
    GrassmannElement,
    canonical_constraints,
    canonicalize,
    commutation_factor,
    dirac_bracket,
    graded_poisson,
    is_plus_real,
    left_derivative,
    multiply,
    plus_involution,
    right_derivative,
    star_involution,
)

ALG = AlgebraSpec((3, 3), momenta_attached=True)
XI = [ALG.coordinate(0, i) for i in range(3)]
CHI = [ALG.coordinate(1, i) for i in range(3)]
PI = [ALG.momentum(0, i) for i in range(3)]
VARPI = [ALG.momentum(1, i) for i in range(3)]
ALL_GENS = list(ALG.coordinates()) + list(ALG.momenta())

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_j, _i, _k] = -1.0


def elem(*gens, c=1.0):
    return GrassmannElement.from_terms(ALG, [(gens, c)])


def gen_elem(gen):
    return GrassmannElement.from_generator(ALG, gen)


gaussian_ints = st.builds(complex, st.integers(-3, 3), st.integers(-3, 3))
words = st.lists(st.sampled_from(ALL_GENS), max_size=4)
elements = st.lists(st.tuples(words, gaussian_ints), max_size=3).map(
    lambda terms: GrassmannElement.from_terms(ALG, terms)
)


FAM0 = [g for g in ALL_GENS if g.family == 0]
FAM1 = [g for g in ALL_GENS if g.family == 1]


@st.composite
def family_homogeneous(draw, p0, p1):
    """Elements whose monomials all share the family parity (p0, p1)."""
    n0 = draw(st.sampled_from([p0, p0 + 2]))
    n1 = draw(st.sampled_from([p1, p1 + 2]))
    terms = []
    for _ in range(draw(st.integers(1, 3))):
        w0 = draw(st.lists(st.sampled_from(FAM0), min_size=n0, max_size=n0))
        w1 = draw(st.lists(st.sampled_from(FAM1), min_size=n1, max_size=n1))
        terms.append((tuple(w0 + w1), draw(gaussian_ints)))
    return GrassmannElement.from_terms(ALG, terms)


# ---------------------------------------------------------------------------
# canonical form


def test_canonicalize_counts_same_family_inversions():
    assert canonicalize([XI[1], XI[0]], 1.0, ALG) == ((XI[0], XI[1]), -1.0)
    assert canonicalize([CHI[0], XI[0]], 1.0, ALG) == ((XI[0], CHI[0]), 1.0)
    assert canonicalize([PI[0], XI[2]], 2.0, ALG) == ((XI[2], PI[0]), -2.0)
    assert canonicalize([XI[0], XI[0]], 1.0, ALG) is None


def test_canonical_order_is_family_kind_index():
    word = [VARPI[0], CHI[2], PI[1], XI[0]]
    mono, _ = canonicalize(word, 1.0, ALG)
    assert mono == (XI[0], PI[1], CHI[2], VARPI[0])


def test_coefficient_lookup_adjusts_sign():
    f = elem(XI[0], XI[1], c=2.0)
    assert f.coefficient([XI[1], XI[0]]) == -2.0
    assert f.coefficient([XI[0], XI[1]]) == 2.0
    assert f.coefficient([XI[0], XI[2]]) == 0.0


def test_validation_errors():
    with pytest.raises(ValueError):
        ALG.coordinate(0, 3)
    with pytest.raises(ValueError):
        ALG.coordinate(2, 0)
    with pytest.raises(ValueError):
        AlgebraSpec((3,)).momentum(0, 0)
    other = GrassmannElement.unit(AlgebraSpec((3,)))
    with pytest.raises(ValueError):
        multiply(GrassmannElement.unit(ALG), other)
    with pytest.raises(ValueError):
        (elem(XI[0]) + elem(XI[0], XI[1])).parity


# ---------------------------------------------------------------------------
# product structure


def test_generator_pair_relations_exhaustive():
    for a in ALL_GENS:
        for b in ALL_GENS:
            ab = multiply(gen_elem(a), gen_elem(b))
            ba = multiply(gen_elem(b), gen_elem(a))
            if a == b:
                assert ab.terms == {}
            elif a.family == b.family:
                assert (ab + ba).terms == {}
            else:
                assert (ab - ba).terms == {}


def test_known_four_generator_product():
    lhs = multiply(elem(XI[0], CHI[1]), elem(XI[1], CHI[0]))
    assert lhs.terms == elem(XI[0], XI[1], CHI[0], CHI[1], c=-1.0).terms


@settings(deadline=None)
@given(elements, elements, elements)
def test_multiply_associative(f, g, h):
    assert multiply(multiply(f, g), h).terms == multiply(f, multiply(g, h)).terms


@settings(deadline=None)
@given(elements, elements, elements)
def test_multiply_distributive(f, g, h):
    lhs = multiply(f, g + h)
    rhs = multiply(f, g) + multiply(f, h)
    assert lhs.terms == rhs.terms


@settings(deadline=None)
@given(words, words)
def test_monomials_commute_family_wise(word_a, word_b):
    # Swapping two monomials costs one sign per same-family generator pair.
    sign = 1
    for fam in (0, 1):
        ka = sum(1 for g in word_a if g.family == fam)
        kb = sum(1 for g in word_b if g.family == fam)
        sign *= (-1) ** (ka * kb)
    f = GrassmannElement.from_terms(ALG, [(word_a, 1.0)])
    g = GrassmannElement.from_terms(ALG, [(word_b, 1.0)])
    assert multiply(f, g).terms == (sign * multiply(g, f)).terms


# ---------------------------------------------------------------------------
# derivatives


def test_right_derivative_known_values():
    f = elem(XI[0], XI[1], XI[2])
    assert right_derivative(f, XI[1]).terms == elem(XI[0], XI[2], c=-1.0).terms
    assert right_derivative(f, XI[2]).terms == elem(XI[0], XI[1]).terms
    assert right_derivative(f, CHI[0]).terms == {}
    # Cross-family generators are passed without sign.
    g = elem(XI[0], CHI[0])
    assert right_derivative(g, XI[0]).terms == elem(CHI[0]).terms
    assert right_derivative(g, CHI[0]).terms == elem(XI[0]).terms


def test_left_derivative_known_values():
    f = elem(XI[0], XI[1])
    assert left_derivative(f, XI[0]).terms == elem(XI[1]).terms
    assert left_derivative(f, XI[1]).terms == elem(XI[0], c=-1.0).terms
    # On a degree-2 word the left and right derivatives differ by a sign.
    assert left_derivative(f, XI[1]).terms == (-right_derivative(f, XI[1])).terms
    # Cross-family generators contribute no sign on either side.
    g = elem(CHI[0], XI[0], XI[1])
    assert left_derivative(g, XI[1]).terms == elem(CHI[0], XI[0], c=-1.0).terms


@settings(deadline=None)
@given(elements)
def test_right_derivative_nilpotent(f):
    d1 = right_derivative(f, XI[0])
    assert right_derivative(d1, XI[0]).terms == {}


# ---------------------------------------------------------------------------
# involutions


def test_star_sign_table():
    assert star_involution(elem(XI[0], XI[1])).terms == elem(XI[0], XI[1], c=-1).terms
    assert star_involution(elem(XI[0], XI[1], c=1j)).terms == elem(XI[0], XI[1], c=1j).terms
    assert (
        star_involution(elem(XI[0], XI[1], XI[2])).terms
        == elem(XI[0], XI[1], XI[2], c=-1).terms
    )
    # Degree four with a 2+2 family split: both blocks flip, net sign +1.
    f = elem(XI[0], XI[1], CHI[0], CHI[1], c=2 + 1j)
    assert star_involution(f).terms == elem(XI[0], XI[1], CHI[0], CHI[1], c=2 - 1j).terms


@settings(deadline=None)
@given(elements)
def test_star_is_involutive(f):
    assert star_involution(star_involution(f)).terms == f.terms


@settings(deadline=None)
@given(elements, elements)
def test_star_reverses_products(f, g):
    lhs = star_involution(multiply(f, g))
    rhs = multiply(star_involution(g), star_involution(f))
    assert lhs.terms == rhs.terms


def test_plus_involution_with_identity_is_star():
    f = GrassmannElement.from_terms(
        ALG, [((XI[0], CHI[1]), 1 + 2j), ((XI[1],), -3j), ((), 0.5)]
    )
    rho = np.eye(6)
    assert plus_involution(f, rho).terms == star_involution(f).terms


def test_plus_involution_involutive_for_orthogonal_transport():
    # rho from a complex orthogonal map satisfies rho rho^T = I, which makes
    # the involution square to the identity.
    a = 0.7
    lam = np.array(
        [
            [np.cosh(a), 1j * np.sinh(a), 0.0],
            [-1j * np.sinh(a), np.cosh(a), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    assert np.max(np.abs(lam @ lam.T - np.eye(3))) < 1e-12
    rho = lam @ lam.conj().T
    alg = AlgebraSpec((3,))
    z = [alg.coordinate(0, i) for i in range(3)]
    f = GrassmannElement.from_terms(
        alg, [((z[0], z[1]), 1 + 2j), ((z[1], z[2]), 0.5 - 1j), ((z[0],), 3.0)]
    )
    f_pp = plus_involution(plus_involution(f, rho), rho)
    assert f_pp.allclose(f, 1e-12)
    assert is_plus_real(f, np.eye(3)) is False


def test_plus_involution_rejects_momenta():
    with pytest.raises(ValueError):
        plus_involution(elem(PI[0]), np.eye(6))
    with pytest.raises(ValueError):
        plus_involution(elem(XI[0]), np.eye(5))


# ---------------------------------------------------------------------------
# brackets


def test_poisson_generator_table():
    for fam, coords, moms in ((0, XI, PI), (1, CHI, VARPI)):
        for i in range(3):
            for j in range(3):
                delta = 1.0 if i == j else 0.0
                assert graded_poisson(
                    gen_elem(coords[i]), gen_elem(moms[j])
                ).terms == ({(): delta} if delta else {})
                assert graded_poisson(
                    gen_elem(moms[i]), gen_elem(coords[j])
                ).terms == ({(): delta} if delta else {})
                assert graded_poisson(gen_elem(coords[i]), gen_elem(coords[j])).terms == {}
                assert graded_poisson(gen_elem(moms[i]), gen_elem(moms[j])).terms == {}
    # Cross-family brackets vanish identically.
    for a in (XI[0], PI[2]):
        for b in (CHI[1], VARPI[0]):
            assert graded_poisson(gen_elem(a), gen_elem(b)).terms == {}


def test_poisson_known_composites():
    # Right derivative on the first slot, left derivative on the second:
    # {xi1 xi2, pi2 pi1} picks up two compensating inversions per pairing.
    f = elem(XI[0], XI[1])
    g = elem(PI[1], PI[0])
    expect = elem(XI[0], PI[0]) + elem(XI[1], PI[1])
    assert graded_poisson(f, g).terms == expect.terms
    # Degree-1 against degree-2 probes the left derivative in isolation.
    assert graded_poisson(elem(XI[0]), elem(XI[1], PI[0])).terms == elem(
        XI[1], c=-1.0
    ).terms


@settings(deadline=None)
@given(
    family_homogeneous(1, 0),
    family_homogeneous(0, 1),
    family_homogeneous(1, 1),
)
def test_poisson_color_antisymmetry(f01, g10, h11):
    for f, g in ((f01, g10), (f01, h11), (g10, h11), (h11, h11)):
        eps = commutation_factor(f.family_parity, g.family_parity)
        lhs = graded_poisson(f, g)
        rhs = -eps * graded_poisson(g, f)
        assert lhs.terms == rhs.terms


@settings(deadline=None)
@given(elements, elements, elements)
def test_poisson_bilinear(f, g, h):
    lhs = graded_poisson(f + g, h)
    rhs = graded_poisson(f, h) + graded_poisson(g, h)
    assert lhs.terms == rhs.terms
    lhs = graded_poisson(h, f + g)
    rhs = graded_poisson(h, f) + graded_poisson(h, g)
    assert lhs.terms == rhs.terms


@settings(deadline=None)
@given(family_homogeneous(1, 0), family_homogeneous(0, 1), elements)
def test_poisson_color_leibniz(f, g, h):
    eps = commutation_factor(f.family_parity, g.family_parity)
    lhs = graded_poisson(f, g * h)
    rhs = graded_poisson(f, g) * h + eps * (g * graded_poisson(f, h))
    assert lhs.terms == rhs.terms


def test_poisson_requires_momenta():
    no_momenta = AlgebraSpec((3,))
    u = GrassmannElement.unit(no_momenta)
    with pytest.raises(ValueError):
        graded_poisson(u, u)


def test_constraint_matrix_is_minus_i_identity():
    phis = canonical_constraints(ALG)
    assert len(phis) == 6
    for i, phi_i in enumerate(phis):
        for j, phi_j in enumerate(phis):
            expect = {(): -1j} if i == j else {}
            assert graded_poisson(phi_i, phi_j).terms == expect


def test_dirac_generator_table_exact():
    # {xi,xi}_D = -i, {xi,pi}_D = 1/2, {pi,pi}_D = i/4 within a family,
    # everything cross-family vanishes; all values exact in floats.
    for a in ALL_GENS:
        for b in ALL_GENS:
            bracket = dirac_bracket(gen_elem(a), gen_elem(b))
            if a.family != b.family or a.index != b.index:
                assert bracket.terms == {}
                continue
            key = (a.momentum, b.momentum)
            expect = {
                (False, False): -1j,
                (False, True): 0.5,
                (True, False): 0.5,
                (True, True): 0.25j,
            }[key]
            assert bracket.terms == {(): expect}


def test_dirac_known_composite():
    # Hand-derived: {xi1, xi1 pi1}_D = -(1/2) xi1 - i pi1.
    bracket = dirac_bracket(elem(XI[0]), elem(XI[0], PI[0]))
    expect = elem(XI[0], c=-0.5) + elem(PI[0], c=-1j)
    assert bracket.terms == expect.terms


def test_dirac_reproduces_precession_equations():
    # With H = -(i/2) eps_ijk xi_i xi_j B_k the Dirac bracket generates
    # xidot_i = -eps_ijk xi_j B_k, the classical precession equation.
    alg = AlgebraSpec((3,), momenta_attached=True)
    xi = [GrassmannElement.from_generator(alg, alg.coordinate(0, i)) for i in range(3)]
    field = (1.5, -2.25, 0.75)
    ham = GrassmannElement.zero(alg)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                if LEVI_CIVITA[i, j, k]:
                    ham = ham + (-0.5j * LEVI_CIVITA[i, j, k] * field[k]) * (
                        xi[i] * xi[j]
                    )
    for i in range(3):
        expect = GrassmannElement.zero(alg)
        for j in range(3):
            for k in range(3):
                if LEVI_CIVITA[i, j, k]:
                    expect = expect - LEVI_CIVITA[i, j, k] * field[k] * xi[j]
        assert dirac_bracket(xi[i], ham).terms == expect.terms


def test_dirac_jacobi_on_generator_triples():
    # Inner generator brackets are scalars, so each cyclic term vanishes and
    # the graded Jacobi identity holds exactly.
    zero = GrassmannElement.zero(ALG)
    sample = [XI[0], XI[1], PI[0], CHI[2], VARPI[1]]
    for a in sample:
        for b in sample:
            for c in sample:
                total = zero
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    inner = dirac_bracket(gen_elem(y), gen_elem(z))
                    total = total + dirac_bracket(gen_elem(x), inner)
                assert total.terms == {}


def test_dirac_with_explicit_constraints_matches_default():
    phis = canonical_constraints(ALG)
    f = elem(XI[0], XI[1])
    g = elem(PI[1])
    assert dirac_bracket(f, g, phis).terms == dirac_bracket(f, g).terms
