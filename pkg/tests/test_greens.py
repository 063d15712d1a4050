import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from premaxwell import (FourVector, KernelFamily, KernelSpec, Signature,
                        eval_classic_41, eval_land_horwitz, eval_laplace4,
                        eval_maxwell_pp, eval_oron_horwitz, eval_unified,
                        interval4)
from premaxwell.errors import BranchSingularity, DomainError, OnCone

SIG_P = Signature(1)
SIG_M = Signature(-1)

# high-precision spot values, frozen from a 50-digit evaluation of the same
# closed forms (independent of the float implementation under test)
OH_SPOTS = [
    # (x with the stated interval, tau, expected)
    (FourVector(2.0, 0.5, 0.3, 0.1), 1.2, 9.88849259237836085e-4),   # x2=-3.65
    (FourVector(0.5, 2.0, 0.0, 0.0), 0.8, -7.4436942556157189617e-4),  # x2=3.75
    (FourVector(1.0, 0.2, 0.0, 0.0), 0.5, 8.0377091257986983493e-3),  # x2=-.96
    (FourVector(1.0, 3.0, 0.0, 0.0), 2.0, -2.9569718496898349867e-4),  # x2=8
]


# ---------------------------------------------------------------- unified 5D


def test_unified_frozen_value():
    # sigma5=+1, q = x.x + tau^2 = -1: smooth part is -1/(8 pi^2)
    x = FourVector(1.0, 0.0, 0.0, 0.0)
    kv = eval_unified(SIG_P, x, 0.0, 0.0)
    assert kv.smooth == pytest.approx(-0.01266514795529222143, abs=1e-17)


def test_unified_sign_flips_with_metric():
    # same |arg| in both metrics: smooth parts differ by the sigma5 prefactor
    xp = FourVector(1.0, 0.0, 0.0, 0.0)   # q = -1 under (4,1), arg = 1
    xm = FourVector(0.0, 1.0, 0.0, 0.0)   # q = +1 under (3,2), arg = 1
    kp = eval_unified(SIG_P, xp, 0.0, 0.0)
    km = eval_unified(SIG_M, xm, 0.0, 0.0)
    assert kp.smooth == pytest.approx(-km.smooth, rel=1e-14)


def test_unified_zero_outside_support():
    # arg = -sigma5*q + eps < 0: no smooth part, no boundary atom
    x = FourVector(0.0, 2.0, 0.0, 0.0)  # q = 4 under (4,1), arg = -4
    kv = eval_unified(SIG_P, x, 0.0, 0.0)
    assert kv.smooth == 0.0
    assert kv.boundary_delta is None


def test_unified_boundary_weight():
    x = FourVector(1.0, 0.0, 0.0, 0.0)
    eps = 1e-3
    kv = eval_unified(SIG_P, x, 0.0, eps)
    arg = 1.0 + eps
    assert kv.boundary_delta is not None
    expect = SIG_P.sigma5 / (4.0 * math.pi**2 * math.sqrt(arg))
    assert kv.boundary_delta.weight == pytest.approx(expect, rel=1e-14)


def test_unified_on_cone_raises_at_zero_epsilon():
    x = FourVector(1.0, 1.0, 0.0, 0.0)  # q = 0
    with pytest.raises(OnCone):
        eval_unified(SIG_P, x, 0.0, 0.0)


def test_unified_epsilon_widens_support():
    """ε-monotonicity: support arg > 0 only grows with ε."""
    x = FourVector(0.0, 1.0, 0.0, 0.0)  # q = 1, arg = -1 + eps under (4,1)
    assert eval_unified(SIG_P, x, 0.0, 0.5).smooth == 0.0
    assert eval_unified(SIG_P, x, 0.0, 1.5).smooth != 0.0


@given(st.floats(min_value=0.1, max_value=10.0, allow_nan=False))
@settings(max_examples=40)
def test_unified_homogeneity_degree_minus_three(lam):
    x = FourVector(1.0, 0.3, 0.1, 0.0)
    tau = 0.2
    k1 = eval_unified(SIG_P, x, tau, 0.0).smooth
    k2 = eval_unified(SIG_P, x * lam, tau * lam, 0.0).smooth
    assert k2 == pytest.approx(k1 / lam**3, rel=1e-12)


# ------------------------------------------------------------- Land-Horwitz


def test_land_horwitz_frozen_value():
    # sigma=+1 (timelike O(4,1) ancestor), g = -x^2 - tau^2 = 2 at x^2 = -2,
    # tau = 0: smooth = -(1/4pi^2) * 2^(-3/2)
    x = FourVector(math.sqrt(2.0), 0.0, 0.0, 0.0)
    kv = eval_land_horwitz(SIG_P, x, 0.0, 0.0)
    assert kv.smooth == pytest.approx(-0.0089556120039180666073, abs=1e-16)


def test_land_horwitz_atom_descriptor():
    x = FourVector(1.0, 0.5, 0.0, 0.0)
    kv = eval_land_horwitz(SIG_P, x, 0.3, 0.0)
    assert kv.boundary_delta is not None
    assert kv.boundary_delta.surface == pytest.approx(interval4(x), rel=1e-14)
    assert kv.boundary_delta.weight == pytest.approx(-1.0 / (4.0 * math.pi))


def test_land_horwitz_support_gate():
    # g = -sigma x^2 - tau^2 < 0 -> no smooth part
    x = FourVector(0.0, 1.0, 0.0, 0.0)  # x^2 = 1, sigma=+1: g = -1 - tau^2
    kv = eval_land_horwitz(SIG_P, x, 0.5, 0.0)
    assert kv.smooth == 0.0


# ------------------------------------------------------------- Oron-Horwitz


def test_oron_horwitz_retardation():
    x = FourVector(2.0, 0.5, 0.3, 0.1)
    for tau in (0.0, -1e-12, -0.5, -100.0):
        assert eval_oron_horwitz(x, tau) == 0.0


def test_oron_horwitz_frozen_spots():
    for x, tau, expect in OH_SPOTS:
        assert eval_oron_horwitz(x, tau) == pytest.approx(expect, rel=1e-13)


def test_oron_horwitz_branch_guards():
    with pytest.raises(BranchSingularity):
        eval_oron_horwitz(FourVector(1.0, 1.0, 0.0, 0.0), 0.5)  # x^2 = 0
    with pytest.raises(BranchSingularity):
        eval_oron_horwitz(FourVector(1.0, 0.0, 0.0, 0.0), 1.0)  # x^2+tau^2 = 0


# --------------------------------------------------------- classic41 G and H


def test_classic41_frozen_value():
    kv = eval_classic_41((1.0, 0.0, 0.0), 2.0, "G", 0.0)
    assert kv.smooth == pytest.approx(-0.0048748177208762682534, abs=1e-16)


def test_classic41_outside_lightcone():
    for variant in ("G", "H"):
        kv = eval_classic_41((2.0, 0.0, 0.0), 1.0, variant, 0.0)
        assert kv.smooth == 0.0


def test_classic41_g_h_smooth_parts_identical(rng):
    """The two fundamental-solution variants differ only by a boundary atom."""
    for _ in range(200):
        r = rng.uniform(0.1, 3.0, size=3)
        t = float(np.linalg.norm(r) + rng.uniform(0.1, 3.0))
        g = eval_classic_41(tuple(r), t, "G", 0.0)
        h = eval_classic_41(tuple(r), t, "H", 0.0)
        assert g.smooth == h.smooth  # identical expressions, bitwise
        assert g.boundary_delta is None
        assert h.boundary_delta is not None


def test_classic41_h_boundary_weight():
    t, r = 2.0, 1.0
    kv = eval_classic_41((r, 0.0, 0.0), t, "H", 0.0)
    arg = t * t - r * r
    expect = 1.0 / (2.0 * math.pi**2) / (2.0 * t * math.sqrt(arg))
    assert kv.boundary_delta.weight == pytest.approx(expect, rel=1e-14)


def test_classic41_variant_validation():
    with pytest.raises(DomainError):
        eval_classic_41((1.0, 0.0, 0.0), 2.0, "X", 0.0)


# ------------------------------------------------------- Maxwell PP, Laplace


def test_maxwell_pp_pairing_converges_to_quarter_pi_delta():
    """∫ φ(x²) N_w(x²) dx² → φ(0): Richardson in w, error ≤ 1e-6."""
    phi = lambda s: math.exp(-0.5 * (s - 0.3) ** 2)

    def paired(w):
        f = lambda s: phi(s) * math.exp(-0.5 * (s / w) ** 2) / (
            w * math.sqrt(2.0 * math.pi))
        val, _ = integrate.quad(f, -12.0 * w, 12.0 * w, limit=100)
        return val

    w = 1e-2
    rich = (4.0 * paired(w / 2.0) - paired(w)) / 3.0
    assert abs(rich - phi(0.0)) <= 1e-6


def test_maxwell_pp_value_matches_gaussian():
    x = FourVector(1.0, 0.5, 0.0, 0.0)
    w = 0.3
    x2 = interval4(x)
    expect = math.exp(-0.5 * (x2 / w) ** 2) / (
        w * math.sqrt(2.0 * math.pi) * 4.0 * math.pi)
    assert eval_maxwell_pp(x, w) == pytest.approx(expect, rel=1e-14)
    with pytest.raises(DomainError):
        eval_maxwell_pp(x, 0.0)


def test_laplace4_value():
    assert eval_laplace4(2.0) == pytest.approx(0.01266514795529222143,
                                               abs=1e-17)
    with pytest.raises(DomainError):
        eval_laplace4(0.0)


def test_kernel_spec_validation():
    with pytest.raises(ValueError):
        KernelSpec(KernelFamily.UNIFIED_5D, SIG_P, epsilon=-1.0)
