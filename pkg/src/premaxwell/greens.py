"""Green-function kernels of the 5D wave operator and their 4D relatives.

All kernels are evaluated as ε-regularized families: the θ/√ ancestor
    (σ₅/4π²) ∂/∂ε [ θ(−σ₅q + ε) / √(−σ₅q + ε) ],   q = x_αx^α (5D),
splits into a smooth part −(σ₅/8π²)(−σ₅q+ε)^(−3/2) on the open support and a
boundary δ on the surface −σ₅q+ε = 0.  Singular atoms are always returned as
*descriptors* (surface value + weight), never folded into floating-point
numbers: they matter in the worldline convolution where their 1/ρ divergence
cancels against the smooth part's.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import BranchSingularity, DomainError, OnCone
from .fivespace import (FiveVector, FourVector, Signature, contract5,
                        interval4)

CONE_TOL = 1e-12

TWO_PI_SQ = 2.0 * math.pi**2
FOUR_PI_SQ = 4.0 * math.pi**2
EIGHT_PI_SQ = 8.0 * math.pi**2


class KernelFamily(enum.Enum):
    UNIFIED_5D = "unified5d"
    LAND_HORWITZ_PP = "land-horwitz"
    ORON_HORWITZ_RETARDED = "oron-horwitz"
    MAXWELL_PP_4D = "maxwell-pp"
    CLASSIC41_G = "classic41-g"
    CLASSIC41_H = "classic41-h"
    LAPLACE_4D = "laplace4"


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family selector with metric signature and regulators."""

    family: KernelFamily
    sig: Signature = Signature(1)
    epsilon: float = 0.0
    rho: float = 0.0

    def __post_init__(self):
        if self.epsilon < 0 or self.rho < 0:
            raise ValueError("regulators must be nonnegative")


@dataclass(frozen=True)
class BoundaryDelta:
    """Descriptor of a δ-atom: the surface function's value at the queried
    point and the weight the δ carries there."""

    surface: float
    weight: float


@dataclass(frozen=True)
class KernelValue:
    smooth: float
    boundary_delta: Optional[BoundaryDelta] = None


def _q5(sig: Signature, x: FourVector, tau: float) -> float:
    return contract5(FiveVector(x, tau), FiveVector(x, tau), sig)


def eval_unified(sig: Signature, x: FourVector, tau: float, eps: float,
                 tol: float = CONE_TOL) -> KernelValue:
    """Unified 5D kernel, valid for both metric signatures.

    smooth = −(σ₅/8π²)(−σ₅q+ε)^(−3/2) on −σ₅q+ε > 0, else 0.  The boundary
    δ(−σ₅q+ε) atom is reported with weight (σ₅/4π²)/√(−σ₅q+ε) whenever the
    radical is positive.  Raises OnCone at ε=0 within ``tol`` of the 5D cone.
    """
    if eps < 0:
        raise DomainError("epsilon must be nonnegative")
    q = _q5(sig, x, tau)
    scale2 = max(x.euclid() ** 2 + tau * tau, 1.0)
    if eps == 0.0 and abs(q) <= tol * scale2:
        raise OnCone(f"|q| = {abs(q):g} on the 5D cone")
    s5 = sig.sigma5
    arg = -s5 * q + eps
    smooth = -(s5 / EIGHT_PI_SQ) * arg**-1.5 if arg > 0.0 else 0.0
    delta = None
    if arg > 0.0:
        delta = BoundaryDelta(surface=q, weight=(s5 / FOUR_PI_SQ) / math.sqrt(arg))
    return KernelValue(smooth=smooth, boundary_delta=delta)


def eval_land_horwitz(sig: Signature, x: FourVector, tau: float, eps: float,
                      tol: float = CONE_TOL) -> KernelValue:
    """Principal-part kernel −(1/4π)δ(x²)δ(τ) − (1/2π²)∂_{x²}[θ(g)/√g],
    g = −σx² − τ² + ε with σ = σ₅.

    The ∂_{x²} derivative of the regularized θ/√ gives the smooth part
    −(σ/4π²)θ(g)·g^(−3/2).  The δ(x²)δ(τ) atom is reported as a descriptor
    with surface = x² and constant weight −1/4π (the δ(τ) factor is implied:
    the atom lives on x²=0 ∧ τ=0).
    """
    if eps < 0:
        raise DomainError("epsilon must be nonnegative")
    s = sig.sigma5
    x2 = interval4(x)
    g = -s * x2 - tau * tau + eps
    scale2 = max(x.euclid() ** 2 + tau * tau, 1.0)
    if eps == 0.0 and abs(g) <= tol * scale2:
        raise OnCone(f"|g| = {abs(g):g} on the support boundary")
    smooth = -(s / FOUR_PI_SQ) * g**-1.5 if g > 0.0 else 0.0
    atom = BoundaryDelta(surface=x2, weight=-1.0 / (4.0 * math.pi))
    return KernelValue(smooth=smooth, boundary_delta=atom)


def eval_oron_horwitz(x: FourVector, tau: float,
                      tol: float = CONE_TOL) -> float:
    """τ-retarded kernel: exactly 0 for τ ≤ 0; for τ > 0,

        (2/(2π)³) · { (−x²−τ²)^(−3/2)·arctan(√(−x²−τ²)/τ) − τ/(x²(x²+τ²))
                                                   if x²+τ² < 0,
                      ½(x²+τ²)^(−3/2)·ln|(τ−√(τ²+x²))/(τ+√(τ²+x²))|
                                      − τ/(x²(x²+τ²))   if x²+τ² > 0 }.

    Raises BranchSingularity within ``tol`` of x² = 0 or x²+τ² = 0.
    """
    if tau <= 0.0:
        return 0.0
    x2 = interval4(x)
    s = x2 + tau * tau
    scale2 = max(x.euclid() ** 2 + tau * tau, 1.0)
    if abs(x2) <= tol * scale2 or abs(s) <= tol * scale2:
        raise BranchSingularity(f"x^2 = {x2:g}, x^2+tau^2 = {s:g}")
    pref = 2.0 / (2.0 * math.pi) ** 3
    common = -tau / (x2 * s)
    if s < 0.0:
        v = math.sqrt(-s)
        return pref * ((-s) ** -1.5 * math.atan(v / tau) + common)
    v = math.sqrt(s)
    return pref * (0.5 * s**-1.5 * math.log(abs((tau - v) / (tau + v))) + common)


def eval_maxwell_pp(x: FourVector, w: float) -> float:
    """Principal-part Maxwell kernel (1/4π)δ(x²), mollified: the δ in the
    variable x² is replaced by a unit-mass Gaussian of width w."""
    if w <= 0:
        raise DomainError("mollifier width must be positive")
    x2 = interval4(x)
    nw = math.exp(-0.5 * (x2 / w) ** 2) / (w * math.sqrt(2.0 * math.pi))
    return nw / (4.0 * math.pi)


def eval_classic_41(x3, t: float, variant: str = "G", eps: float = 0.0,
                    tol: float = CONE_TOL) -> KernelValue:
    """The two classic fundamental-solution variants on (4,1):

        G = −(1/4π²) θ(t−|x|) (t²−|x|²+ε)^(−3/2)
        H = (1/2π²) ∂/∂(t²) [ θ(t−|x|)/√(t²−|x|²+ε) ]

    Their smooth parts coincide on the open interior t > |x| — the difference
    H−G is purely a boundary distribution on the cone t = |x|.  H's boundary
    term (from θ′) is reported as a descriptor; G has none.
    """
    if eps < 0:
        raise DomainError("epsilon must be nonnegative")
    if variant not in ("G", "H"):
        raise DomainError(f"unknown variant {variant!r}")
    r = math.sqrt(sum(float(c) ** 2 for c in x3))
    arg = t * t - r * r + eps
    scale2 = max(t * t + r * r, 1.0)
    if eps == 0.0 and abs(t * t - r * r) <= tol * scale2:
        raise OnCone(f"|t^2-r^2| = {abs(t*t - r*r):g}")
    inside = t > r
    smooth = -(1.0 / FOUR_PI_SQ) * arg**-1.5 if (inside and arg > 0.0) else 0.0
    delta = None
    if variant == "H" and arg > 0.0 and t > 0.0:
        # theta'(t-|x|) term of the t^2-derivative, weight per unit delta(t-|x|)
        delta = BoundaryDelta(surface=t - r,
                              weight=(1.0 / TWO_PI_SQ) / (2.0 * t * math.sqrt(arg)))
    return KernelValue(smooth=smooth, boundary_delta=delta)


def eval_laplace4(r: float) -> float:
    """Static 4D kernel 1/(2π² r²)."""
    if r <= 0:
        raise DomainError("r must be positive")
    return 1.0 / (TWO_PI_SQ * r * r)
