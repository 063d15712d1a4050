"""Test-particle propagation under the 5D Lorentz force in the smooth field
of a uniformly moving source.

The force law is M ẍ^μ = e₀ ẋ^ν f^μ_ν + e₀ f^μ_5, with the particle's fifth
velocity fixed to ż⁵ ≡ 1 (its fifth coordinate *is* the evolution parameter).
For the smooth closed-form field the contraction collapses to

    ẍ^μ = (e₀/M)·pref·[ X^μ (u·n₄ + σ₅ n⁵) − n^μ (u·X₄ + σ₅ X⁵) ],
    pref = −e σ₅ / (2π² D²),

which the integrator evaluates with plain scalars (no array allocation per
step).  A classical fixed-step 4th-order scheme is used: trajectories are
short diagnostic runs, and a fixed step keeps convergence measurements clean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

from .errors import (LightlikeVelocity, SingularRegimeUnsupported,
                     SingularSupportCrossed, StepRejected)
from .fields import FieldTensor
from .fivespace import FourVector, Signature, contract4
from .source import UniformSource, classify

POLE_TOL = 1e-13


@dataclass(frozen=True)
class EventState:
    x: FourVector
    u: FourVector  # dx/dtau
    tau: float


def mass_ratio_sq(state: EventState) -> float:
    """Dynamical m²/M² = −u_μu^μ of a test particle."""
    return -contract4(state.u, state.u)


def lorentz_accel(state: EventState, f: FieldTensor, e0: float, M: float,
                  sig: Signature = Signature(1)) -> FourVector:
    """Acceleration (e₀/M)(u^ν f^μ_ν + f^μ_5), indices via the 5D metric."""
    if M <= 0:
        raise ValueError("M must be positive")
    eta = (-1.0, 1.0, 1.0, 1.0)
    u = state.u.components()
    fm = f.f
    s5 = sig.sigma5
    out = []
    for mu in range(4):
        acc = sum(eta[nu] * u[nu] * fm[mu][nu] for nu in range(4))
        acc += s5 * fm[mu][4]
        out.append(e0 / M * acc)
    return FourVector(*out)


def integrate(src: UniformSource, sig: Signature, init: EventState,
              e0: float, M: float, h: float, n_steps: int) -> List[EventState]:
    """Fixed-step 4th-order propagation; returns n_steps+1 states.

    Zero-charge particles travel exactly straight (the field is never
    sampled).  Raises SingularSupportCrossed when a stage lands on the field
    pole and StepRejected on nonfinite state.
    """
    if M <= 0:
        raise ValueError("M must be positive")
    if e0 != 0.0:
        reg = classify(src.b, sig)
        if reg.zeta == 0:
            raise LightlikeVelocity("source on the lightlike boundary")
        if reg.zeta == +1:
            raise SingularRegimeUnsupported(
                "trajectories only run in smooth-regime fields")
        n0, n1, n2, n3 = reg.n.mu.components()
        n5 = reg.n.five
    s5 = float(sig.sigma5)
    o0, o1, o2, o3 = src.offset.mu.components()
    o5 = src.offset.five
    e = src.charge
    eM = e0 / M
    two_pi_sq = 2.0 * math.pi**2

    def accel(x0, x1, x2, x3, u0, u1, u2, u3, tau):
        X0, X1, X2, X3 = x0 - o0, x1 - o1, x2 - o2, x3 - o3
        X5 = tau - o5
        nx = -n0 * X0 + n1 * X1 + n2 * X2 + n3 * X3 + s5 * n5 * X5
        xx = -X0 * X0 + X1 * X1 + X2 * X2 + X3 * X3 + s5 * X5 * X5
        D = nx * nx + s5 * xx
        scale2 = max(X0 * X0 + X1 * X1 + X2 * X2 + X3 * X3 + X5 * X5, 1.0)
        if abs(D) <= POLE_TOL * scale2:
            raise SingularSupportCrossed(f"|D| = {abs(D):g} at tau = {tau:g}")
        pref = eM * (-e * s5 / (two_pi_sq * D * D))
        cu = -u0 * n0 + u1 * n1 + u2 * n2 + u3 * n3 + s5 * n5
        cx = -u0 * X0 + u1 * X1 + u2 * X2 + u3 * X3 + s5 * X5
        return (pref * (X0 * cu - n0 * cx), pref * (X1 * cu - n1 * cx),
                pref * (X2 * cu - n2 * cx), pref * (X3 * cu - n3 * cx))

    x0, x1, x2, x3 = init.x.components()
    u0, u1, u2, u3 = init.u.components()
    tau = init.tau
    out = [init]
    free = e0 == 0.0
    for _ in range(n_steps):
        if free:
            x0 += h * u0
            x1 += h * u1
            x2 += h * u2
            x3 += h * u3
        else:
            a1 = accel(x0, x1, x2, x3, u0, u1, u2, u3, tau)
            hh = 0.5 * h
            b0, b1_, b2_, b3_ = (x0 + hh * u0, x1 + hh * u1,
                                 x2 + hh * u2, x3 + hh * u3)
            v0, v1, v2, v3 = (u0 + hh * a1[0], u1 + hh * a1[1],
                              u2 + hh * a1[2], u3 + hh * a1[3])
            a2 = accel(b0, b1_, b2_, b3_, v0, v1, v2, v3, tau + hh)
            c0, c1_, c2_, c3_ = (x0 + hh * v0, x1 + hh * v1,
                                 x2 + hh * v2, x3 + hh * v3)
            w0, w1, w2, w3 = (u0 + hh * a2[0], u1 + hh * a2[1],
                              u2 + hh * a2[2], u3 + hh * a2[3])
            a3 = accel(c0, c1_, c2_, c3_, w0, w1, w2, w3, tau + hh)
            d0, d1_, d2_, d3_ = (x0 + h * w0, x1 + h * w1,
                                 x2 + h * w2, x3 + h * w3)
            y0, y1, y2, y3 = (u0 + h * a3[0], u1 + h * a3[1],
                              u2 + h * a3[2], u3 + h * a3[3])
            a4 = accel(d0, d1_, d2_, d3_, y0, y1, y2, y3, tau + h)
            six = h / 6.0
            x0 += six * (u0 + 2.0 * (v0 + w0) + y0)
            x1 += six * (u1 + 2.0 * (v1 + w1) + y1)
            x2 += six * (u2 + 2.0 * (v2 + w2) + y2)
            x3 += six * (u3 + 2.0 * (v3 + w3) + y3)
            u0 += six * (a1[0] + 2.0 * (a2[0] + a3[0]) + a4[0])
            u1 += six * (a1[1] + 2.0 * (a2[1] + a3[1]) + a4[1])
            u2 += six * (a1[2] + 2.0 * (a2[2] + a3[2]) + a4[2])
            u3 += six * (a1[3] + 2.0 * (a2[3] + a3[3]) + a4[3])
        tau += h
        vals = (x0, x1, x2, x3, u0, u1, u2, u3)
        if not all(math.isfinite(v) for v in vals):
            raise StepRejected(f"nonfinite state at tau = {tau:g}")
        out.append(EventState(x=FourVector(x0, x1, x2, x3),
                              u=FourVector(u0, u1, u2, u3), tau=tau))
    return out
