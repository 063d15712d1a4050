import math

import numpy as np
import pytest

from premaxwell import (FiveVector, FourVector, Signature, UniformSource,
                        classify, continuity_residual, dalembert_residual,
                        eval_field, field_tensor, gradient_check, interval4,
                        mollified_density, pairing_check)
from premaxwell.errors import StencilOnSupport
from premaxwell.greens import eval_unified

SIG_P = Signature(1)
SIG_M = Signature(-1)
SRC_SMOOTH_P = UniformSource(b=FiveVector.of(2.0, 0.0, 0.0, 0.0, 1.0))
SRC_SMOOTH_M = UniformSource(b=FiveVector.of(0.3, 1.5, 0.2, -0.1, 1.0))
SRC_DELTA_P = UniformSource(b=FiveVector.of(0.5, 2.0, 0.0, 0.0, 1.0))


# ------------------------------------------------------------------ stencil


def test_dalembert_on_quadratic_is_exact_trace():
    """□₅ applied to x_αx^α is 2·tr(1₅) = 10 in either metric: second
    differences of a quadratic are exact, so this pins the stencil wiring."""
    for sig in (SIG_P, SIG_M):
        f = lambda x4, tau: interval4(x4) + sig.sigma5 * tau * tau
        rep = dalembert_residual(f, sig, FourVector(0.4, 1.0, -0.2, 0.7), 0.3)
        assert rep.residual == pytest.approx(10.0, abs=1e-6)


def test_dalembert_smooth_field_is_harmonic():
    for src, sig in [(SRC_SMOOTH_P, SIG_P), (SRC_SMOOTH_M, SIG_M)]:
        f = lambda x4, tau: 1.0 / eval_field(src, sig, x4, tau).denominator
        rep = dalembert_residual(f, sig, FourVector(0.5, 2.5, 0.3, 0.1), -0.4)
        assert rep.normalized_residual <= 1e-4
        assert 1.7 <= rep.order_estimate <= 2.3


def test_dalembert_unified_kernel_smooth_part():
    x = FourVector(0.9, 0.2, 0.1, 0.0)
    g = lambda x4, tau: eval_unified(SIG_P, x4, tau, 0.0).smooth
    rep = dalembert_residual(g, SIG_P, x, 0.1)
    assert rep.normalized_residual <= 1e-4
    assert 1.7 <= rep.order_estimate <= 2.3


def test_stencil_on_support_raises():
    f = lambda x4, tau: 1.0 / eval_field(SRC_SMOOTH_P, SIG_P, x4, tau).denominator
    with pytest.raises(StencilOnSupport):
        # the source's own location is a pole of the smooth field
        dalembert_residual(f, SIG_P, FourVector(0.0, 0.0, 0.0, 0.0), 0.0)


# --------------------------------------------------------------- continuity


def test_mollified_density_normalization():
    """4D Gaussian integrates to the charge (check on a coarse grid)."""
    src = UniformSource(b=FiveVector.of(0.0, 0.0, 0.0, 0.0, 1.0), charge=2.0)
    w = 0.25
    n, lim = 25, 1.6
    axis = np.linspace(-lim, lim, n)
    dv = (axis[1] - axis[0]) ** 4
    total = 0.0
    for t in axis:
        for x1 in axis:
            for x2 in axis:
                for x3 in axis:
                    total += mollified_density(
                        src, FourVector(t, x1, x2, x3), 0.0, w) * dv
    assert total == pytest.approx(2.0, rel=5e-3)


def test_continuity_static_source_is_exact():
    src = UniformSource(b=FiveVector.of(0.0, 0.0, 0.0, 0.0, 1.0))
    res = continuity_residual(src, FourVector(0.1, 0.2, 0.0, 0.0), 0.5,
                              1e-3, 5e-2)
    assert res <= 1e-9


def test_continuity_moving_source_is_small():
    res = continuity_residual(SRC_DELTA_P, FourVector(0.52, 2.05, 0.0, 0.0),
                              1.0, 1e-3, 5e-2)
    assert res <= 1e-2


# ----------------------------------------------------------- gradient check


def test_gradient_check_on_analytic_tensor():
    for src, sig in [(SRC_SMOOTH_P, SIG_P), (SRC_SMOOTH_M, SIG_M)]:
        x = FourVector(0.3, 2.0, 0.5, -0.2)
        tau = 0.3
        ft = field_tensor(src, sig, x, tau)
        sampler = lambda x4, t: eval_field(src, sig, x4, t).a
        assert gradient_check(ft, sampler, sig, x, tau) <= 1e-6


# ------------------------------------------------------------------ pairing


def test_pairing_check_gaussians():
    x = FourVector(1.5, 0.3, 0.2, 0.0)
    val = eval_field(SRC_DELTA_P, SIG_P, x, 0.0)
    t1, t2 = val.roots
    for center, width in [(t1, 0.8), (t2, 1.2), (0.5 * (t1 + t2), 2.0)]:
        phi = lambda t: math.exp(-0.5 * ((t - center) / width) ** 2)
        err = pairing_check(val, phi, 1e-2)
        assert err <= 1e-6


def test_pairing_check_constant_test_function():
    """φ ≡ 1 over both spikes pairs to exactly 2·coefficient per unit b."""
    x = FourVector(1.5, 0.3, 0.2, 0.0)
    val = eval_field(SRC_DELTA_P, SIG_P, x, 0.0)
    err = pairing_check(val, lambda t: 1.0, 1e-2)
    assert err <= 1e-6


def test_pairing_check_off_support_gaussian_is_zero():
    x = FourVector(1.5, 0.3, 0.2, 0.0)
    val = eval_field(SRC_DELTA_P, SIG_P, x, 0.0)
    t1, t2 = val.roots
    far = t2 + 50.0
    phi = lambda t: math.exp(-0.5 * ((t - far) / 0.1) ** 2)
    err = pairing_check(val, phi, 1e-2)
    assert err <= 1e-12


def test_pairing_width_convergence_is_quadratic():
    """Without Richardson the mollification error scales like w²."""
    x = FourVector(1.5, 0.3, 0.2, 0.0)
    val = eval_field(SRC_DELTA_P, SIG_P, x, 0.0)
    t1, t2 = val.roots
    phi = lambda t: math.exp(-0.5 * (t - t1) ** 2)
    e1 = pairing_check(val, phi, 4e-2, extrapolate=False)
    e2 = pairing_check(val, phi, 2e-2, extrapolate=False)
    assert e1 / e2 == pytest.approx(4.0, rel=0.25)
