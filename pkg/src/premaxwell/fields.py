"""Closed-form gauge fields of a uniformly moving point source.

The field of a source with constant 5-velocity b splits by ζ = σ₅·sign(b·b):

* ζ = −1 — a smooth profile parallel to the unit velocity n,
      a^α(x,τ) = (e/4π²) · n^α / [(n·X)² + σ₅ X·X],
  with X the 5D separation from the worldline origin.

* ζ = +1 — a δ-distribution on the moving quadric
      a^α(x,τ) = (e/4π) · n^α · δ[Q(x,τ)],   Q = (n·X)² − σ₅ X·X,
  represented symbolically (weight + quadric + τ-roots), never as
  floating-point spikes: pointwise sampling of a surface δ is meaningless.

The τ-roots of Q at fixed x give the two-spike view
      a^α = e b^α [δ(τ−τ₁) + δ(τ−τ₂)] / (8π|b⁵|√((b′·x)² − b′² x²)),
and integrating the field over τ concatenates it into a Maxwell potential
      A^μ(x) = e b^μ θ(X̃) / (4π √X̃),   X̃ = (b·x)₄² − b₄² x₄²,
which is scale-invariant in b (so it needs no normalized velocity and is
finite even for 5D-lightlike b).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from .errors import (ComplexRoots, DegenerateFifthComponent,
                     DegenerateVelocity, DomainError, LightlikeVelocity,
                     OnCone, OnSingularSupport, SingularRegimeUnsupported)
from .fivespace import (FiveVector, FourVector, Signature, ZERO4, contract4,
                        contract5, interval4, reduced_velocity)
from .source import Regime, UniformSource, classify

POLE_TOL = 1e-13  # |denominator| <= POLE_TOL * scale^2 counts as on-support
ROOT_TOL = 1e-12  # |b'^2| below this has no root decomposition


@dataclass(frozen=True)
class SmoothField:
    """ζ = −1 branch: a finite vector value parallel to n."""

    a: FiveVector
    denominator: float
    n: FiveVector


@dataclass(frozen=True)
class SingularSurfaceField:
    """ζ = +1 branch: coefficient of δ[Q] plus the quadric itself.

    ``roots`` and ``root_coefficient`` give the equivalent two-spike view in τ
    at the queried 4-position; they are None when the reduced velocity is
    degenerate (static-type sources have a τ-independent quadric) or when the
    point lies outside the support (complex roots).
    """

    weight: float
    q: Callable[[FourVector, float], float]
    q_value: float
    roots: Optional[Tuple[float, float]]
    root_coefficient: Optional[float]
    n: FiveVector
    x4: FourVector  # 4-position the descriptor was evaluated at


FieldValue = Union[SmoothField, SingularSurfaceField]


@dataclass(frozen=True)
class FieldTensor:
    """Antisymmetric field-strength components f^{αβ} (both indices up)."""

    f: np.ndarray  # shape (5, 5)


@dataclass(frozen=True)
class DeltaDecomposition:
    """Scalar per-root amplitude c and the two roots: the δ-field pairs with a
    test function φ(τ) as  ∫dτ a^α φ = c · b^α · (φ(τ₁) + φ(τ₂))."""

    coefficient: float
    tau1: float
    tau2: float


def _separation(src: UniformSource, x: FourVector, tau: float) -> FiveVector:
    return FiveVector(x - src.offset.mu, tau - src.offset.five)


def _regime_or_raise(src: UniformSource, sig: Signature) -> Regime:
    reg = classify(src.b, sig)
    if reg.zeta == 0:
        raise LightlikeVelocity("source velocity is on the lightlike boundary")
    return reg


def tau_roots(bprime: FourVector, sig: Signature, x: FourVector,
              tol: float = ROOT_TOL) -> Tuple[float, float]:
    """Both τ-roots of the quadric Q(x,τ) at fixed 4-position x, in terms of
    the reduced velocity b′ = b/b⁵.

    Computed from the covariant quadratic (never from the per-regime printed
    radicals):  b′²·τ² root pair
        τ = (b′·x)/b′² ± √[(1 + σ₅b′²)·((b′·x)² − b′²x²)] / b′².
    Returned ordered τ₁ ≤ τ₂.
    """
    bp2 = interval4(bprime)
    if abs(bp2) <= tol:
        raise DegenerateVelocity(f"|b'^2| = {abs(bp2):g} <= {tol:g}")
    bx = contract4(bprime, x)
    disc = bx * bx - bp2 * interval4(x)
    radicand = (1.0 + sig.sigma5 * bp2) * disc
    if radicand < 0.0:
        raise ComplexRoots(f"radicand = {radicand:g} < 0: off support")
    r = math.sqrt(radicand)
    t1 = (bx - r) / bp2
    t2 = (bx + r) / bp2
    return (t1, t2) if t1 <= t2 else (t2, t1)


def eval_field(src: UniformSource, sig: Signature, x: FourVector,
               tau: float) -> FieldValue:
    """Field of a uniformly moving source at event (x, τ).

    Smooth regime (ζ=−1) returns the vector value; the δ-regime (ζ=+1)
    returns the symbolic surface data.  Raises OnSingularSupport when a
    smooth-regime point sits on the cone (n·X)² + σ₅X·X = 0, and
    LightlikeVelocity on the regime boundary.  Where the two τ-roots
    coincide (the caustic of the traveling cone) the per-root coefficient
    1/√disc has a pole and is left unset alongside the merged root pair.
    """
    reg = _regime_or_raise(src, sig)
    e = src.charge
    X = _separation(src, x, tau)
    nx = contract5(reg.n, X, sig)
    xx = contract5(X, X, sig)
    scale2 = max(X.euclid(), 1.0) ** 2

    if reg.smooth:
        denom = nx * nx + sig.sigma5 * xx
        if abs(denom) <= POLE_TOL * scale2:
            raise OnSingularSupport(f"|denominator| = {abs(denom):g}")
        return SmoothField(a=reg.n * (e / (4.0 * math.pi**2 * denom)),
                           denominator=denom, n=reg.n)

    # zeta = +1: delta field on Q = 0
    n = reg.n
    off = src.offset

    def q(x4: FourVector, t: float) -> float:
        Y = FiveVector(x4 - off.mu, t - off.five)
        ny = contract5(n, Y, sig)
        return ny * ny - sig.sigma5 * contract5(Y, Y, sig)

    q_here = nx * nx - sig.sigma5 * xx
    roots = None
    coeff = None
    try:
        bp = reduced_velocity(src.b)
        xt = x - off.mu
        r1, r2 = tau_roots(bp, sig, xt)
        roots = (off.five + r1, off.five + r2)
        disc4 = contract4(bp, xt) ** 2 - interval4(bp) * interval4(xt)
        sc = max(bp.euclid() * max(xt.euclid(), 1.0), 1.0)
        if disc4 > 1e-26 * sc**4:
            coeff = e / (8.0 * math.pi * abs(src.b.five) * math.sqrt(disc4))
    except (DegenerateFifthComponent, DegenerateVelocity, ComplexRoots):
        pass
    return SingularSurfaceField(weight=e / (4.0 * math.pi), q=q,
                                q_value=q_here, roots=roots,
                                root_coefficient=coeff, n=n, x4=x)


def delta_decomposition(src: UniformSource, sig: Signature,
                        x: FourVector) -> DeltaDecomposition:
    """Two-spike view of the δ-regime field at fixed 4-position x.

    The scalar coefficient c = e/(8π|b⁵|√((b′·x)²−b′²x²)) multiplies b^α per
    root.  Raises OnSingularSupport when the discriminant is too close to
    zero (the coefficient's pole), ComplexRoots off-support, and DomainError
    when the source is in the smooth regime.
    """
    reg = _regime_or_raise(src, sig)
    if reg.smooth:
        raise DomainError("smooth-regime field has no delta decomposition")
    bp = reduced_velocity(src.b)
    xt = x - src.offset.mu
    t1, t2 = tau_roots(bp, sig, xt)
    disc4 = contract4(bp, xt) ** 2 - interval4(bp) * interval4(xt)
    sc = max(bp.euclid() * max(xt.euclid(), 1.0), 1.0)
    if disc4 <= 1e-26 * sc**4:
        raise OnSingularSupport(f"pairing coefficient pole: disc = {disc4:g}")
    c = src.charge / (8.0 * math.pi * abs(src.b.five) * math.sqrt(disc4))
    return DeltaDecomposition(coefficient=c, tau1=src.offset.five + t1,
                              tau2=src.offset.five + t2)


def field_tensor(src: UniformSource, sig: Signature, x: FourVector,
                 tau: float) -> FieldTensor:
    """Analytic field strength of the smooth-regime field.

    Differentiating a^β = (e/4π²) n^β / D with D = (n·X)² + σ₅X·X gives
        f^{αβ} = −(e σ₅ / 2π²) (X^α n^β − X^β n^α) / D².
    Antisymmetry is exact by construction.  δ-regime sources are rejected
    (their distributional derivative is out of scope).
    """
    reg = _regime_or_raise(src, sig)
    if reg.singular:
        raise SingularRegimeUnsupported(
            "field tensor of the delta-surface regime is distributional")
    X = _separation(src, x, tau)
    nx = contract5(reg.n, X, sig)
    xx = contract5(X, X, sig)
    denom = nx * nx + sig.sigma5 * xx
    scale2 = max(X.euclid(), 1.0) ** 2
    if abs(denom) <= POLE_TOL * scale2:
        raise OnSingularSupport(f"|denominator| = {abs(denom):g}")
    Xc = X.to_array()
    nc = reg.n.to_array()
    m = np.outer(Xc, nc)
    pref = -src.charge * sig.sigma5 / (2.0 * math.pi**2 * denom * denom)
    return FieldTensor(f=pref * (m - m.T))


def concatenate(src: UniformSource, sig: Signature, x: FourVector,
                tol: float = 1e-12) -> FourVector:
    """Maxwell potential A^μ(x) obtained by integrating the field over τ.

    Covariant closed form A^μ = e b^μ θ(X̃)/(4π√X̃), X̃ = (b·x)₄² − b₄²x₄²
    (4D contractions).  Because X̃ scales as b², the expression is invariant
    under rescaling b, so it equals the usual three-case form in the
    normalized 4-velocity n′ (timelike n′ → Coulomb e/4πr; lightlike n′ →
    e n′^μ/(4π|n′·x|); spacelike n′ → gated by θ).  Returns the zero vector
    on zero support; raises OnCone within ``tol`` of X̃ = 0.

    The lightlike-b₄ row is the continuous-in-b extension: exactly at
    b₄² = 0 the field's quadric is linear in τ and its literal τ-integral is
    half this value (the second root of any neighbouring source escapes to
    infinity still carrying constant weight).  The numerical route computes
    the literal integral, so the two differ by exactly 2 on that boundary.
    """
    b4 = src.b.mu
    xt = x - src.offset.mu
    bx = contract4(b4, xt)
    big_x = bx * bx - interval4(b4) * interval4(xt)
    ref = max((b4.euclid() * max(xt.euclid(), 1.0)) ** 2, 1e-30)
    if abs(big_x) <= tol * ref:
        raise OnCone(f"|X| = {abs(big_x):g} <= {tol * ref:g}")
    if big_x < 0.0:
        return ZERO4
    return b4 * (src.charge / (4.0 * math.pi * math.sqrt(big_x)))


def smooth_denominator_coefficients(src: UniformSource, sig: Signature,
                                    x: FourVector):
    """Coefficients (α, β, γ) of D(s) = αs² + βs + γ, the smooth-regime
    denominator as a quadratic in s = τ − offset⁵ at fixed x.

    Satisfies 4αγ − β² = 4[(n·x)₄² − n₄²x₄²], linking the τ-integral of the
    smooth field to the concatenated closed form.
    """
    reg = _regime_or_raise(src, sig)
    if reg.singular:
        raise DomainError("denominator coefficients defined for smooth regime")
    n = reg.n
    xt = x - src.offset.mu
    n4x = contract4(n.mu, xt)
    alpha = n.five * n.five + 1.0
    beta = 2.0 * sig.sigma5 * n.five * n4x
    gamma = n4x * n4x + sig.sigma5 * interval4(xt)
    return alpha, beta, gamma
