"""Uniformly moving point sources: worldline, velocity-regime classification,
and mass-shell bookkeeping.

A source moving uniformly through the 5D event space is characterized entirely
by its constant 5-velocity b, an affine offset, and a charge.  The sign of
b·b together with the metric's σ₅ splits the dynamics into four regimes; the
product ζ = σ₅·sign(b·b) decides whether the generated field is a smooth
inverse-square profile (ζ = −1) or a δ-distribution on a moving quadric
surface (ζ = +1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import LightlikeVelocity
from .fivespace import (FiveVector, FourVector, Signature, ZERO5, contract5)

LIGHTLIKE_TOL = 1e-12


@dataclass(frozen=True)
class UniformSource:
    """Worldline z(τ) = offset + b·τ with charge e."""

    b: FiveVector
    offset: FiveVector = field(default_factory=FiveVector)
    charge: float = 1.0

    def worldline(self, tau: float) -> FiveVector:
        return self.offset + self.b * tau


class RegimeLabel(enum.Enum):
    UNDERSHELL = "Undershell"
    SUPERSHELL = "Supershell"
    UNDER_SPACELIKE = "UnderSpacelike"
    SUPER_SPACELIKE = "SuperSpacelike"
    LIGHTLIKE_BOUNDARY = "LightlikeBoundary"


# (sigma5, sign bb) -> label.  Timelike-metric sources split by the sign of
# b·b into under/over the mass shell; the spacelike metric mirrors the split.
_LABELS = {
    (1, 1): RegimeLabel.UNDERSHELL,
    (1, -1): RegimeLabel.SUPERSHELL,
    (-1, -1): RegimeLabel.UNDER_SPACELIKE,
    (-1, 1): RegimeLabel.SUPER_SPACELIKE,
}


@dataclass(frozen=True)
class Regime:
    zeta: int
    bb: float
    sign_bb: int
    label: RegimeLabel
    mass_ratio_sq: float
    n: FiveVector  # normalized velocity; ZERO5 on the lightlike boundary

    @property
    def smooth(self) -> bool:
        return self.zeta == -1

    @property
    def singular(self) -> bool:
        return self.zeta == +1


def mass_shell_ratio(b: FiveVector, sig: Signature) -> float:
    """m²/M² of the uniformly moving source.

    Inverts b·b = σ₅(−σ₅ m²/M² + 1) using σ₅² = 1, giving m²/M² = σ₅ − b·b.
    """
    return sig.sigma5 - contract5(b, b, sig)


def normalized_velocity(b: FiveVector, sig: Signature,
                        tol: float = LIGHTLIKE_TOL) -> FiveVector:
    """n = b/√|b·b|, the unit 5-velocity with n·n = sign(b·b).

    Raises LightlikeVelocity on the |b·b| ≤ tol boundary, where no finite
    normalization exists.
    """
    bb = contract5(b, b, sig)
    if abs(bb) <= tol:
        raise LightlikeVelocity(f"|b.b| = {abs(bb):g} <= {tol:g}")
    return b * (1.0 / math.sqrt(abs(bb)))


def classify(b: FiveVector, sig: Signature, tol: float = LIGHTLIKE_TOL) -> Regime:
    """Velocity-regime classification of a constant 5-velocity.

    The boundary |b·b| ≤ tol is a first-class label (LIGHTLIKE_BOUNDARY), not
    an error: the zero-measure case is meaningful as a limit.
    """
    bb = contract5(b, b, sig)
    ratio = sig.sigma5 - bb
    if abs(bb) <= tol:
        return Regime(zeta=0, bb=bb, sign_bb=0,
                      label=RegimeLabel.LIGHTLIKE_BOUNDARY,
                      mass_ratio_sq=ratio, n=ZERO5)
    sgn = 1 if bb > 0 else -1
    zeta = sig.sigma5 * sgn
    n = b * (1.0 / math.sqrt(abs(bb)))
    return Regime(zeta=zeta, bb=bb, sign_bb=sgn, label=_LABELS[(sig.sigma5, sgn)],
                  mass_ratio_sq=ratio, n=n)


@dataclass(frozen=True)
class CurrentSupport:
    """Distributional descriptor of the point current at one event.

    The current of a point source is b^α times a 4D δ pinned to the worldline;
    it never has finite pointwise values, so evaluation returns only whether
    the query point lies on the support and the direction the current points.
    """

    on_worldline: bool
    direction: FiveVector
    distance: float  # euclidean 4-distance to the worldline point at this τ


def current_at(src: UniformSource, x: FourVector, tau: float,
               tol: float = 1e-9) -> CurrentSupport:
    z = src.worldline(tau)
    d = (x - z.mu).euclid()
    scale = max(z.mu.euclid(), x.euclid(), 1.0)
    return CurrentSupport(on_worldline=d <= tol * scale, direction=src.b,
                          distance=d)
