import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from powexpint import integral_family as fam
from powexpint.errors import DomainError, InadmissibleParametersError, SideConditionError
from powexpint.quadrature_oracle import QuadratureSpec, gauss_kronrod, oracle_I
from powexpint.special_core import expint

from . import oracles

P = fam.ParamTriple


def rel(a, b):
    return abs(a - b) / abs(b)


@st.composite
def admissible(draw):
    mu = draw(st.floats(0.2, 4.0))
    nu = draw(st.floats(-2.0, 4.0))
    bound = max(-1.0, -1.0 - mu * (nu - 1.0))
    lam = bound + draw(st.floats(0.05, 4.0))
    z = draw(st.floats(0.05, 6.0))
    return P(lam, mu, nu), z


# -- check_domain -------------------------------------------------------------

def test_check_domain_examples():
    v = fam.check_domain(P(2.0, 2.0, -0.5))
    assert not v.admissible and v.binding_bound == 2.0 and v.branch is fam.Branch.NU_LE_1
    v = fam.check_domain(P(0.0, 1.0, 2.0))
    assert v.admissible and v.binding_bound == -1.0 and v.branch is fam.Branch.NU_GE_1
    v = fam.check_domain(P(-0.5, 2.0, 0.0))
    assert not v.admissible and v.binding_bound == 1.0


def test_check_domain_nu_one_consistent():
    # both branches give -1 at nu = 1
    assert fam.check_domain(P(-0.999, 3.0, 1.0)).binding_bound == -1.0
    assert fam.check_domain(P(-0.999, 3.0, 1.0)).admissible


def test_mu_must_be_positive():
    with pytest.raises(DomainError):
        P(1.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        P(1.0, -1.0, 1.0)


@given(admissible())
def test_denominator_and_gamma_order_positive(pz):
    p, _ = pz
    assert p.denominator > 0
    assert p.gamma_order > 0


# -- closed_form ----------------------------------------------------------------

def test_closed_form_at_zero():
    r = fam.closed_form(P(2.0, 2.0, 1.0), 0.0)
    assert r.value == 0.0 and r.boundary_term == 0.0


def test_closed_form_reduces_to_lower_gamma():
    # x**0.5 E_0(x) = x**-0.5 e**-x, so I(0.5, 1, 0; 1) = gamma(1/2, 1)
    v = fam.closed_form(P(0.5, 1.0, 0.0), 1.0).value
    assert rel(v, oracles.gamma_lower(0.5, 1.0)) < 1e-12
    assert rel(v, oracle_I(0.5, 1.0, 0.0, 1.0).value) < 1e-10


def test_closed_form_matches_oracle_example():
    v = fam.closed_form(P(2.0, 2.0, 1.0), 1.5).value
    assert rel(v, 0.27180385118674333) < 1e-10


def test_closed_form_terms():
    r = fam.closed_form(P(1.0, 1.5, 0.5), 2.0)
    assert r.denominator > 0
    assert abs(r.value * r.denominator - (r.gamma_term + r.boundary_term)) <= 1e-14 * r.value * r.denominator
    assert not r.boundary_underflow


def test_closed_form_errors():
    with pytest.raises(InadmissibleParametersError) as info:
        fam.closed_form(P(0.0, 1.0, 0.0), 1.0)
    assert info.value.bound == 0.0
    with pytest.raises(DomainError):
        fam.closed_form(P(1.0, 1.0, 1.0), -0.1)


def test_closed_form_large_argument_flushes_boundary_term():
    r = fam.closed_form(P(1.0, 2.0, 0.5), 40.0)
    assert r.boundary_underflow and r.boundary_term == 0.0
    assert r.value == pytest.approx(math.gamma(1.0) / r.denominator, rel=1e-15)
    assert fam.closed_form(P(1.0, 2.0, 0.5), math.inf).value == r.value


def test_accepts_plain_tuples():
    assert fam.integral((2.0, 2.0, 1.0), 1.5) == fam.integral(P(2.0, 2.0, 1.0), 1.5)


@settings(max_examples=150, deadline=None)
@given(admissible(), st.floats(1.01, 2.0))
def test_increasing_in_z(pz, factor):
    p, z = pz
    lo, hi = fam.integral(p, z), fam.integral(p, z * factor)
    # once z**mu is large the increment falls below one ulp of the value
    if z ** p.mu < 30:
        assert hi > lo
    else:
        assert hi >= lo


@settings(max_examples=60, deadline=None)
@given(admissible())
def test_closed_form_matches_oracle_random(pz):
    p, z = pz
    # in u = x**mu the integrand behaves like u**(min(s, D/mu) - 1) at 0; keep that
    # exponent away from -1 so a double-precision quadrature can resolve the head
    assume(min(p.gamma_order, p.denominator / p.mu) > 0.1)
    o = oracle_I(p.lam, p.mu, p.nu, z)
    assert rel(fam.integral(p, z), o.value) <= 1e-8


# -- transform_scaling ----------------------------------------------------------

def test_transform_examples():
    p = P(2.0, 2.0, 0.7)
    assert fam.transform_scaling(p, 1.0) == p
    q = fam.transform_scaling(p, 2.0)
    assert q == P(0.5, 1.0, 0.7)
    z = 1.3
    assert rel(fam.integral(p, z), 0.5 * fam.integral(q, z * z)) < 1e-12
    p = P(0.5, 1.0, 0.0)
    q = fam.transform_scaling(p, 0.5)
    assert q == P(2.0, 2.0, 0.0)
    assert rel(fam.integral(p, z), fam.integral(q, z ** 0.5) / 0.5) < 1e-12


def test_transform_rejects_nonpositive_r():
    with pytest.raises(DomainError):
        fam.transform_scaling(P(1.0, 1.0, 1.0), 0.0)


@settings(max_examples=150, deadline=None)
@given(admissible(), st.floats(0.2, 5.0))
def test_transform_identity(pz, r):
    p, z = pz
    q = fam.transform_scaling(p, r)
    assert fam.check_domain(q).admissible
    assert rel(fam.integral(p, z), fam.integral(q, z ** r) / r) <= 1e-12


# -- by parts, ladder, reduced form -------------------------------------------

@pytest.mark.parametrize("p,z", [(P(1.0, 1.0, 2.0), 1.0), (P(2.0, 2.0, 1.0), 0.7), (P(0.5, 2.0, 3.0), 4.0)])
def test_reduce_by_parts_examples(p, z):
    assert rel(fam.reduce_by_parts(p, z), fam.integral(p, z)) <= 1e-12


@settings(max_examples=150, deadline=None)
@given(admissible())
def test_reduce_by_parts_identity(pz):
    p, z = pz
    assert rel(fam.reduce_by_parts(p, z), fam.integral(p, z)) <= 1e-12


@pytest.mark.parametrize("p,z", [(P(1.0, 1.0, 1.0), 2.0), (P(2.0, 2.0, 2.0), 1.0), (P(0.2, 0.5, 0.5), 3.0)])
def test_ladder_examples(p, z):
    g = fam.closed_form(p, z).gamma_term
    assert abs(fam.ladder_identity_residual(p, z)) <= 1e-12 * abs(g)


@settings(max_examples=150, deadline=None)
@given(admissible())
def test_ladder_identity(pz):
    p, z = pz
    q = fam.shifted_triple(p)
    i = fam.integral(p, z)
    terms = (p.mu * fam.integral(q, z), fam.closed_form(p, z).gamma_term, p.mu * (p.nu - 1) * i)
    assert abs(fam.ladder_identity_residual(p, z)) <= 1e-12 * max(map(abs, terms))


def test_reduced_form_examples():
    for nu in (0.0, 1.0, 2.5):
        p = P(2.0, 2.0, nu)
        assert rel(fam.reduced_form(p, 1.1), fam.integral(p, 1.1)) <= 1e-12
    p = P(0.5, 1.0, 2.0)
    assert rel(fam.reduced_form(p, 1.0), fam.integral(p, 1.0)) <= 1e-12


def test_reduced_form_side_condition():
    with pytest.raises(SideConditionError):
        fam.reduced_form(P(0.0, 2.0, 3.0), 1.0)
    with pytest.raises(InadmissibleParametersError):
        fam.reduced_form(P(2.0, 2.0, -0.5), 1.0)


@settings(max_examples=150, deadline=None)
@given(admissible())
def test_reduced_form_identity(pz):
    p, z = pz
    assume(p.lam > p.mu - 1.0 + 0.05)
    # the two terms of the reduced form partly cancel when z**mu is small
    assume(z ** p.mu > 0.01)
    assert rel(fam.reduced_form(p, z), fam.integral(p, z)) <= 1e-12


# -- small-z leading order ------------------------------------------------------

def test_small_z_leading_examples():
    assert fam.small_z_leading(P(1.0, 1.0, 3.0), 1e-3) == pytest.approx(2.5e-7, rel=1e-12)
    z = 1e-3
    assert fam.small_z_leading(P(0.5, 2.0, 0.5), z) == pytest.approx(math.sqrt(math.pi) * z ** 0.5 / 0.5, rel=1e-12)
    assert fam.small_z_leading(P(1.0, 1.0, 1.0), 1e-4) == pytest.approx(-0.5 * 1e-8 * math.log(1e-4), rel=1e-12)


@pytest.mark.parametrize("p", [P(1.0, 1.0, 3.0), P(1.0, 1.0, 1.0), P(0.5, 2.0, 0.5), P(2.0, 0.5, 1.0), P(0.0, 1.0, 2.0)])
def test_small_z_ratio_converges(p):
    errs = [abs(fam.integral(p, z) / fam.small_z_leading(p, z) - 1.0) for z in (1e-2, 1e-3, 1e-4)]
    assert errs[0] > errs[1] > errs[2]


def test_log_branch_mu_factor():
    # the nu = 1 leading term carries a factor mu: for mu = 2 the ratio tends to 1,
    # while the same expression without mu would tend to 2
    p = P(1.0, 2.0, 1.0)
    z = 1e-6
    assert abs(fam.integral(p, z) / fam.small_z_leading(p, z) - 1.0) < 0.05


# -- region boundary ------------------------------------------------------------

def test_region_boundary_examples():
    assert fam.region_boundary(2.0, [0.5, 1.0, 7.0]) == [(0.5, -1.0), (1.0, -1.0), (7.0, -1.0)]
    assert fam.region_boundary(0.0, [2.0]) == [(2.0, 1.0)]
    assert fam.region_boundary(-0.5, [2.0]) == [(2.0, 2.0)]
    assert fam.region_boundary(1.0, []) == []
    with pytest.raises(DomainError):
        fam.region_boundary(0.0, [0.0])


@given(st.floats(-3.0, 0.999), st.floats(0.01, 10.0))
def test_region_line_below_nu_one(nu, mu):
    [(m, lam_min)] = fam.region_boundary(nu, [mu])
    assert lam_min == pytest.approx(-1.0 + (1.0 - nu) * mu, rel=1e-14)


def test_boundary_triple_diverges():
    # (1, 2, 0) sits on the bound: x E_0(x**2) = exp(-x**2)/x, so the integral from eps grows like ln(1/eps)
    p = P(1.0, 2.0, 0.0)
    assert not fam.check_domain(p).admissible
    values = []
    for eps in (1e-2, 1e-4, 1e-6, 1e-8):
        v, _, _ = gauss_kronrod(lambda x: x * expint(0.0, x * x), eps, 1.0, 1e-10, max_depth=60)
        values.append(v)
    steps = [b - a for a, b in zip(values, values[1:])]
    for s in steps:
        assert s == pytest.approx(math.log(100.0), rel=1e-3)


def test_boundary_gate_matches_oracle_gate():
    with pytest.raises(DomainError):
        oracle_I(1.0, 2.0, 0.0, 1.0, QuadratureSpec())
