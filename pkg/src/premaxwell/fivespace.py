"""Signature-aware vector algebra on 4D Minkowski space and its 5D extension.

The 4D metric is fixed to diag(−,+,+,+).  The fifth axis carries a sign σ₅ that
is ±1, so the 5D metric is diag(−,+,+,+,σ₅).  Everything downstream derives its
signs from the two contraction functions defined here.

Components are stored contravariantly (upper indices); the metric only ever
enters through ``contract4``/``contract5`` and the explicit index-raising
helpers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateFifthComponent

DEGENERATE_B5_TOL = 1e-12


@dataclass(frozen=True)
class Signature:
    """Metric signature of the fifth axis: diag(−,+,+,+,σ₅) with σ₅ = ±1."""

    sigma5: int = 1

    def __post_init__(self):
        if self.sigma5 not in (1, -1):
            raise ValueError("sigma5 must be +1 or -1")


@dataclass(frozen=True)
class FourVector:
    t: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t + other.t, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t - other.t, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __mul__(self, s: float) -> "FourVector":
        return FourVector(self.t * s, self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def components(self):
        return (self.t, self.x, self.y, self.z)

    def to_array(self) -> np.ndarray:
        return np.array(self.components())

    @staticmethod
    def from_array(a) -> "FourVector":
        return FourVector(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def euclid(self) -> float:
        """Plain euclidean length, used only for scale estimates."""
        return float(np.sqrt(self.t**2 + self.x**2 + self.y**2 + self.z**2))


@dataclass(frozen=True)
class FiveVector:
    """A 4-vector plus the fifth (τ-like) component x⁵."""

    mu: FourVector = field(default_factory=FourVector)
    five: float = 0.0

    @staticmethod
    def of(t=0.0, x=0.0, y=0.0, z=0.0, five=0.0) -> "FiveVector":
        return FiveVector(FourVector(t, x, y, z), five)

    def __add__(self, other: "FiveVector") -> "FiveVector":
        return FiveVector(self.mu + other.mu, self.five + other.five)

    def __sub__(self, other: "FiveVector") -> "FiveVector":
        return FiveVector(self.mu - other.mu, self.five - other.five)

    def __mul__(self, s: float) -> "FiveVector":
        return FiveVector(self.mu * s, self.five * s)

    __rmul__ = __mul__

    def components(self):
        return (*self.mu.components(), self.five)

    def to_array(self) -> np.ndarray:
        return np.array(self.components())

    @staticmethod
    def from_array(a) -> "FiveVector":
        return FiveVector(FourVector.from_array(a[:4]), float(a[4]))

    def euclid(self) -> float:
        return float(np.sqrt(sum(c * c for c in self.components())))


ZERO4 = FourVector()
ZERO5 = FiveVector()


@dataclass(frozen=True)
class Constants:
    """Charge bookkeeping: the Maxwell charge e is the event charge e0 per
    unit of the dimensional constant λ (a length)."""

    e0: float
    lam: float

    @property
    def e(self) -> float:
        return self.e0 / self.lam


def contract4(u: FourVector, v: FourVector) -> float:
    """η_{μν} u^μ v^ν with η = diag(−,+,+,+)."""
    return -u.t * v.t + u.x * v.x + u.y * v.y + u.z * v.z


def interval4(v: FourVector) -> float:
    return contract4(v, v)


def contract5(u: FiveVector, v: FiveVector, sig: Signature) -> float:
    """Full 5D contraction: contract4 of the 4-parts plus σ₅·u⁵v⁵."""
    return contract4(u.mu, v.mu) + sig.sigma5 * u.five * v.five


def metric_diag(sig: Signature) -> np.ndarray:
    """The 5D metric as a diagonal component array (−1, 1, 1, 1, σ₅).

    Since σ₅² = 1 the inverse metric has the same diagonal, so this array
    serves for both raising and lowering.
    """
    return np.array([-1.0, 1.0, 1.0, 1.0, float(sig.sigma5)])


def reduced_velocity(b: FiveVector, tol: float = DEGENERATE_B5_TOL) -> FourVector:
    """The (3,1) velocity b′^μ = b^μ / b⁵ of a source with 5-velocity b.

    Raises DegenerateFifthComponent for |b⁵| below ``tol`` — a vanishing fifth
    component has no reduced description.
    """
    if abs(b.five) < tol:
        raise DegenerateFifthComponent(f"|b5| = {abs(b.five):g} < {tol:g}")
    return b.mu * (1.0 / b.five)
