import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from premaxwell import (FiveVector, FourVector, Signature, UniformSource,
                        classify, concatenate, contract5, convolve_ums,
                        delta_decomposition, eval_field, extrapolated_field,
                        p_tau, pairing_convolution, rho_sequence,
                        semi_analytic_ums)
from premaxwell.oracle import concatenate_numeric
from premaxwell.fivespace import contract4
from premaxwell.errors import (DomainError, OnCone, OnSingularSupport,
                               RegulatorTooSmall)

SIG_P = Signature(1)
SIG_M = Signature(-1)

SRC_SMOOTH_P = UniformSource(b=FiveVector.of(2.0, 0.0, 0.0, 0.0, 1.0))
SRC_SMOOTH_M = UniformSource(b=FiveVector.of(0.3, 1.5, 0.2, -0.1, 1.0))
SRC_DELTA_P = UniformSource(b=FiveVector.of(0.5, 2.0, 0.0, 0.0, 1.0))
SRC_DELTA_M = UniformSource(b=FiveVector.of(2.0, 0.3, 0.1, 0.0, 1.0))

coord = st.floats(min_value=-3, max_value=3, allow_nan=False)
vel = st.floats(min_value=-2.5, max_value=2.5, allow_nan=False)


# ------------------------------------------------------------------- p(tau)


@given(st.sampled_from([1, -1]), vel, vel, vel, coord, coord, coord, coord,
       st.floats(min_value=0.0, max_value=0.1, allow_nan=False))
@settings(max_examples=80)
def test_p_tau_is_the_kernel_argument(s5, b0, b1, b5, t, x1, tau_obs, tp, eps):
    """p(τ′) must equal −σ₅(X(τ′)·X(τ′) − σ₅ε) sampled along the worldline."""
    sig = Signature(s5)
    if abs(b5) < 0.1:
        b5 = 0.1
    src = UniformSource(b=FiveVector.of(b0, b1, 0.0, 0.0, b5))
    x = FourVector(t, x1, 0.0, 0.0)
    co = p_tau(src, sig, x, tau_obs, eps)
    X0 = FiveVector(x, tau_obs)
    X = X0 - src.b * tp
    direct = -s5 * (contract5(X, X, sig) - s5 * eps)
    poly = co.quad * tp * tp + co.lin * tp + co.const
    scale = max(abs(direct), abs(poly),
                (src.b.euclid() * max(abs(tp), 1.0) + X0.euclid()) ** 2, 1.0)
    assert abs(direct - poly) <= 1e-12 * scale


@given(st.sampled_from([1, -1]), vel, vel, vel, coord, coord, coord,
       st.floats(min_value=0.0, max_value=0.1, allow_nan=False))
@settings(max_examples=80)
def test_p_tau_discriminant_is_four_r_squared(s5, b0, b1, b5, t, x1, tau_obs,
                                              eps):
    sig = Signature(s5)
    if abs(b5) < 0.1:
        b5 = 0.1
    src = UniformSource(b=FiveVector.of(b0, b1, 0.0, 0.0, b5))
    co = p_tau(src, sig, FourVector(t, x1, 0.0, 0.0), tau_obs, eps)
    disc = co.lin * co.lin - 4.0 * co.quad * co.const
    scale = max(abs(disc), 1.0)
    assert abs(disc - 4.0 * co.R2) <= 1e-10 * scale


def test_p_tau_vertex_and_roots():
    co = p_tau(SRC_SMOOTH_P, SIG_P, FourVector(0.3, 2.0, 0.5, -0.2), 0.3, 0.0)
    bb = contract5(SRC_SMOOTH_P.b, SRC_SMOOTH_P.b, SIG_P)
    assert co.A == pytest.approx(math.sqrt(abs(bb)), rel=1e-14)
    if co.R2 > 0:
        for sgn in (-1.0, 1.0):
            r = co.B + sgn * math.sqrt(co.R2) / abs(bb)
            val = co.quad * r * r + co.lin * r + co.const
            assert abs(val) <= 1e-10 * max(abs(co.const), 1.0)


# --------------------------------------------------------------- convolution


@pytest.mark.parametrize("src,sig", [(SRC_SMOOTH_P, SIG_P),
                                     (SRC_SMOOTH_M, SIG_M)])
def test_convolution_matches_closed_form(src, sig):
    x = FourVector(0.3, 2.0, 0.5, -0.2)
    tau = 0.3
    closed = np.array(eval_field(src, sig, x, tau).a.components())
    ext = extrapolated_field(src, sig, x, tau)
    got = np.array(ext.value.components())
    rel = np.max(np.abs(got - closed)) / np.max(np.abs(closed))
    assert rel <= 1e-3
    assert ext.c1_ratio <= 1e-3


def test_convolution_result_metadata():
    res = convolve_ums(SRC_SMOOTH_P, SIG_P, FourVector(0.0, 2.0, 0.0, 0.0),
                       0.0, 1e-4, 1e-3, fit_divergent=False)
    assert res.evaluations > 0
    assert res.abs_error_estimate < 1e-6
    assert math.isnan(res.divergent_coefficient)  # not requested


def test_divergent_coefficient_is_small_when_fitted():
    res = convolve_ums(SRC_SMOOTH_P, SIG_P, FourVector(0.0, 2.0, 0.0, 0.0),
                       0.0, 1e-4, 1e-3)
    base = np.max(np.abs(np.array(res.value.components())))
    assert abs(res.divergent_coefficient) <= 1e-3 * base


def test_semi_analytic_agrees_with_quadrature():
    for src, sig in [(SRC_SMOOTH_P, SIG_P), (SRC_SMOOTH_M, SIG_M)]:
        x = FourVector(0.3, 2.0, 0.5, -0.2)
        rho = 1e-3
        quad = np.array(convolve_ums(src, sig, x, 0.3, 1e-4, rho)
                        .value.components())
        closed = np.array(semi_analytic_ums(src, sig, x, 0.3, 1e-4, rho)
                          .components())
        assert np.max(np.abs(quad - closed)) <= 1e-6 * np.max(np.abs(closed))


def test_semi_analytic_rejects_delta_regime():
    with pytest.raises(DomainError):
        semi_analytic_ums(SRC_DELTA_P, SIG_P, FourVector(1.5, 0.3, 0.2, 0.0),
                          0.0, 1e-4, 1e-3)


def test_regulator_guards():
    x = FourVector(0.0, 2.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        convolve_ums(SRC_SMOOTH_P, SIG_P, x, 0.0, -1e-4, 1e-3)
    with pytest.raises(RegulatorTooSmall):
        convolve_ums(SRC_SMOOTH_P, SIG_P, x, 0.0, 1e-4, 1e-12)


def test_rho_sequence_shape():
    seq = rho_sequence(2.0)
    assert len(seq) == 6
    assert seq[0] == pytest.approx(2e-2)
    for a, b in zip(seq, seq[1:]):
        assert b == pytest.approx(0.5 * a)


# ------------------------------------------------------------ delta pairing


@pytest.mark.parametrize("src,sig,x", [
    (SRC_DELTA_P, SIG_P, FourVector(1.5, 0.3, 0.2, 0.0)),
    (SRC_DELTA_M, SIG_M, FourVector(0.4, 1.3, -0.5, 0.2)),
])
def test_pairing_convolution_matches_two_spike_form(src, sig, x):
    dec = delta_decomposition(src, sig, x)
    mu = 0.5 * (dec.tau1 + dec.tau2)
    s = max(0.5 * (dec.tau2 - dec.tau1), 0.5)
    phi = lambda t: math.exp(-0.5 * ((t - mu) / s) ** 2)
    closed = dec.coefficient * (phi(dec.tau1) + phi(dec.tau2))
    num = pairing_convolution(src, sig, x, phi)
    assert abs(num - closed) <= 1e-3 * abs(closed)


def test_pairing_convolution_rejects_smooth_regime():
    with pytest.raises(DomainError):
        pairing_convolution(SRC_SMOOTH_P, SIG_P,
                            FourVector(0.0, 2.0, 0.0, 0.0), lambda t: 1.0)


# ------------------------------------------------------ concatenation routes


def test_concatenate_numeric_smooth_route():
    x = FourVector(0.3, 2.0, 0.5, -0.2)
    closed = np.array(concatenate(SRC_SMOOTH_P, SIG_P, x).components())
    numeric = np.array(concatenate_numeric(SRC_SMOOTH_P, SIG_P, x)
                       .components())
    assert np.max(np.abs(closed - numeric)) <= 1e-6 * np.max(np.abs(closed))


def test_concatenate_numeric_principal_value_region():
    """Where the τ-quadratic has real roots the closed form gates to zero and
    the numeric route must reproduce it as a principal value."""
    src = SRC_SMOOTH_M  # spatial-dominant b under (3,2)
    x = FourVector(0.0, 0.0, 0.0, 1.7)  # transverse: (b.x)_4 small, x^2 > 0
    closed = concatenate(src, SIG_M, x)
    assert closed.components() == (0.0, 0.0, 0.0, 0.0)
    numeric = concatenate_numeric(src, SIG_M, x)
    scale = abs(src.charge)
    assert np.max(np.abs(numeric.components())) <= 1e-6 * scale


def test_concatenate_numeric_delta_route():
    """ζ=+1: sum of the two spike weights equals the closed form, and the
    θ gate maps to the no-real-roots region."""
    for src, sig in [(SRC_DELTA_P, SIG_P), (SRC_DELTA_M, SIG_M)]:
        x_in = FourVector(1.5, 0.3, 0.2, 0.0) if sig is SIG_P else \
            FourVector(2.0, 0.4, 0.1, 0.0)
        closed = np.array(concatenate(src, sig, x_in).components())
        numeric = np.array(concatenate_numeric(src, sig, x_in).components())
        assert np.max(np.abs(closed - numeric)) <= \
            1e-12 * max(np.max(np.abs(closed)), 1e-300)

    out = concatenate_numeric(SRC_DELTA_P, SIG_P,
                              FourVector(0.0, 0.0, 1.5, 0.0))
    assert out.components() == (0.0, 0.0, 0.0, 0.0)


def test_concatenate_numeric_lightlike_reduced_velocity():
    """b4 exactly lightlike: the quadric is linear in τ, so the literal
    τ-integral is a single spike — exactly half the closed form, which is the
    continuous-in-b extension (the second root of any neighbouring source
    escapes to infinity carrying constant weight)."""
    src = UniformSource(b=FiveVector.of(1.0, 1.0, 0.0, 0.0, 1.0))
    x = FourVector(0.5, 2.0, 0.3, 0.1)
    for sig in (SIG_P, SIG_M):
        closed = np.array(concatenate(src, sig, x).components())
        numeric = np.array(concatenate_numeric(src, sig, x).components())
        ref = np.max(np.abs(closed))
        assert ref > 0.0
        assert np.max(np.abs(2.0 * numeric - closed)) <= 1e-12 * ref
        # and the closed form itself is e*b4/(4π|b·x|)
        bx = abs(contract4(src.b.mu, x))
        want = np.array((src.b.mu * (1.0 / (4.0 * math.pi * bx))).components())
        assert np.max(np.abs(closed - want)) <= 1e-12 * ref


def test_concatenate_numeric_static_source_is_on_cone():
    """A source at rest in spacetime has a τ-independent quadric: neither
    route assigns the concatenation a finite value."""
    src = UniformSource(b=FiveVector.of(0.0, 0.0, 0.0, 0.0, 1.0))
    x = FourVector(0.3, 1.0, 0.2, -0.1)
    with pytest.raises(OnCone):
        concatenate(src, SIG_P, x)
    with pytest.raises(OnCone):
        concatenate_numeric(src, SIG_P, x)
