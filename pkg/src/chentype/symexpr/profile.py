"""Numeric evaluation environments for expressions."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ..errors import MissingSymbol
from .symbols import (
    SLOT_COS,
    SLOT_COSU,
    SLOT_R,
    SLOT_SIN,
    SLOT_SINU,
    SLOT_U,
    Symbol,
    symbol_for_slot,
)

# random profiles draw from [-2, -0.1] U [0.1, 2]
_MAG_LO, _MAG_HI = 0.1, 2.0
R_RANGE = (0.05, 0.3)
MIN_ABS_COS = 0.05
RANDOM_DERIVATIVES = 24


class UFunction:
    """A smooth function of u that can report any derivative."""

    def deriv(self, order: int, u: float) -> float:
        raise NotImplementedError

    def __call__(self, u: float) -> float:
        return self.deriv(0, u)

    def taylor(self, u0: float, n: int) -> np.ndarray:
        """Taylor coefficients f^(i)(u0)/i! for i < n."""
        return np.array([self.deriv(i, u0) / math.factorial(i) for i in range(n)])


@dataclass(frozen=True)
class Sinusoid(UFunction):
    """offset + amplitude * sin(u + phase)."""

    offset: float = 0.0
    amplitude: float = 1.0
    phase: float = 0.0

    def deriv(self, order, u):
        val = self.amplitude * math.sin(u + self.phase + order * math.pi / 2)
        return val + (self.offset if order == 0 else 0.0)


@dataclass(frozen=True)
class TaylorFunction(UFunction):
    """Polynomial with prescribed derivatives at ``u0`` (higher ones vanish)."""

    u0: float
    derivs: tuple

    def deriv(self, order, u):
        h = u - self.u0
        total = 0.0
        for j in range(order, len(self.derivs)):
            total += self.derivs[j] * h ** (j - order) / math.factorial(j - order)
        return total


def constant(value: float, u0: float = 0.0) -> TaylorFunction:
    return TaylorFunction(u0, (float(value),))


@dataclass(frozen=True)
class NumericProfile:
    """Values for every symbol: radius, chart point and the curve functions."""

    r: float
    u: float
    phi: float
    kappa: UFunction | None = None
    tau: UFunction | None = None

    def at(self, u: float | None = None, phi: float | None = None) -> "NumericProfile":
        return replace(self, u=self.u if u is None else u, phi=self.phi if phi is None else phi)

    def value(self, sym: Symbol) -> float:
        kind = sym.kind
        if kind == "cos_phi":
            return math.cos(self.phi)
        if kind == "sin_phi":
            return math.sin(self.phi)
        if kind == "r":
            return self.r
        if kind == "u":
            return self.u
        if kind == "cos_u":
            return math.cos(self.u)
        if kind == "sin_u":
            return math.sin(self.u)
        if kind == "delta":
            return 1.0 - self.r * self.value(Symbol("kappa")) * math.cos(self.phi)
        fn = self.kappa if kind == "kappa" else self.tau
        if fn is None:
            raise MissingSymbol(f"profile has no {kind}")
        return fn.deriv(sym.order, self.u)

    @property
    def delta(self) -> float:
        return self.value(Symbol("delta"))


def default_profile(r: float = 0.2, u: float = 0.0, phi: float = 1.0) -> NumericProfile:
    """kappa(u) = 2 + sin u, tau(u) = cos u."""
    return NumericProfile(r=r, u=u, phi=phi, kappa=Sinusoid(2.0, 1.0, 0.0), tau=Sinusoid(0.0, 1.0, math.pi / 2))


def ring_profile(kappa: float, r: float, u: float = 0.0, phi: float = 1.0) -> NumericProfile:
    return NumericProfile(r=r, u=u, phi=phi, kappa=constant(kappa, u), tau=constant(0.0, u))


def _signed_magnitude(rng: np.random.Generator, size=None):
    mag = rng.uniform(_MAG_LO, _MAG_HI, size)
    sign = rng.choice([-1.0, 1.0], size)
    return mag * sign


def sample_phi(rng: np.random.Generator, min_abs_cos: float = MIN_ABS_COS) -> float:
    while True:
        phi = rng.uniform(0.0, 2 * math.pi)
        if abs(math.cos(phi)) >= min_abs_cos:
            return phi


def random_profile(rng: np.random.Generator, min_abs_cos: float = MIN_ABS_COS) -> NumericProfile:
    """Independent random derivative values, realised as a Taylor polynomial in u."""
    u = float(rng.uniform(0.0, 2 * math.pi))
    kd = tuple(float(x) for x in _signed_magnitude(rng, RANDOM_DERIVATIVES))
    td = tuple(float(x) for x in _signed_magnitude(rng, RANDOM_DERIVATIVES))
    r = float(rng.uniform(*R_RANGE))
    phi = sample_phi(rng, min_abs_cos)
    return NumericProfile(r=r, u=u, phi=phi, kappa=TaylorFunction(u, kd), tau=TaylorFunction(u, td))


def slot_env(profile: NumericProfile, nslots: int) -> dict:
    """Float value of every packed slot below ``nslots`` (always includes the fixed ones)."""
    env = {
        SLOT_COS: math.cos(profile.phi),
        SLOT_SIN: math.sin(profile.phi),
        SLOT_R: profile.r,
        SLOT_U: profile.u,
        SLOT_COSU: math.cos(profile.u),
        SLOT_SINU: math.sin(profile.u),
    }
    for slot in range(6, max(nslots, 8)):
        sym = symbol_for_slot(slot)
        fn = profile.kappa if sym.kind == "kappa" else profile.tau
        if fn is None:
            if slot < nslots:
                raise MissingSymbol(f"profile has no {sym.kind}")
            env[slot] = float("nan")
            continue
        env[slot] = fn.deriv(sym.order, profile.u)
    return env
