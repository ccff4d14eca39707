"""Truncated bivariate Taylor series in (u, phi) about a chart point.

A :class:`Jet` of order N stores the coefficients a[i, j] of eps_u^i eps_phi^j
for i + j <= N.  Arithmetic propagates exact Taylor coefficients (no step
sizes), so derivatives of any order come out at float precision; each
partial derivative lowers the order by one.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import convolve2d

from .errors import DivisionNearZero


def _triangle(n: int) -> np.ndarray:
    i, j = np.indices((n + 1, n + 1))
    return (i + j) <= n


class Jet:
    __slots__ = ("a", "order")
    __array_priority__ = 100

    def __init__(self, a: np.ndarray, order: int):
        self.order = order
        self.a = np.where(_triangle(order), a[: order + 1, : order + 1], 0.0)

    # construction -----------------------------------------------------------
    @classmethod
    def const(cls, value: float, order: int) -> "Jet":
        a = np.zeros((order + 1, order + 1))
        a[0, 0] = value
        return cls(a, order)

    @classmethod
    def from_u(cls, coeffs, order: int) -> "Jet":
        """Series in eps_u only, ``coeffs[n]`` multiplying eps_u^n."""
        a = np.zeros((order + 1, order + 1))
        c = np.asarray(coeffs, dtype=float)[: order + 1]
        a[: len(c), 0] = c
        return cls(a, order)

    @classmethod
    def from_phi(cls, coeffs, order: int) -> "Jet":
        a = np.zeros((order + 1, order + 1))
        c = np.asarray(coeffs, dtype=float)[: order + 1]
        a[0, : len(c)] = c
        return cls(a, order)

    # access -----------------------------------------------------------------
    @property
    def value(self) -> float:
        return float(self.a[0, 0])

    def partial(self, i: int, j: int) -> float:
        """d^(i+j) / du^i dphi^j at the expansion point."""
        return float(self.a[i, j]) * math.factorial(i) * math.factorial(j)

    def at(self, du: float, dphi: float) -> float:
        """Value of the truncated polynomial at a small offset."""
        pu = du ** np.arange(self.order + 1)
        pp = dphi ** np.arange(self.order + 1)
        return float(pu @ self.a @ pp)

    # calculus ---------------------------------------------------------------
    def du(self) -> "Jet":
        if self.order == 0:
            raise ValueError("jet order exhausted")
        n = self.order
        a = self.a[1:, :n] * np.arange(1, n + 1)[:, None]
        return Jet(a, n - 1)

    def dphi(self) -> "Jet":
        if self.order == 0:
            raise ValueError("jet order exhausted")
        n = self.order
        a = self.a[:n, 1:] * np.arange(1, n + 1)[None, :]
        return Jet(a, n - 1)

    def truncate(self, order: int) -> "Jet":
        return self if order >= self.order else Jet(self.a, order)

    # arithmetic -------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Jet):
            return other
        return Jet.const(float(other), self.order)

    def __add__(self, other):
        if not isinstance(other, Jet):
            a = self.a.copy()
            a[0, 0] += float(other)
            return Jet(a, self.order)
        n = min(self.order, other.order)
        return Jet(self.a[: n + 1, : n + 1] + other.a[: n + 1, : n + 1], n)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.a, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.a * float(other), self.order)
        n = min(self.order, other.order)
        prod = convolve2d(self.a[: n + 1, : n + 1], other.a[: n + 1, : n + 1])
        return Jet(prod, n)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        a0 = self.a[0, 0]
        if abs(a0) < 1e-300:
            raise DivisionNearZero("jet with vanishing constant term")
        # 1/(a0 (1 + e)) = (1/a0) sum (-e)^k, e nilpotent
        e = self * (1.0 / a0) - 1.0
        out = Jet.const(1.0, self.order)
        for _ in range(self.order):
            out = 1.0 - e * out
        return out * (1.0 / a0)

    def sqrt(self) -> "Jet":
        a0 = self.a[0, 0]
        if a0 <= 0:
            raise DivisionNearZero("square root of a non-positive jet")
        e = self * (1.0 / a0) - 1.0
        # binomial series of (1 + e)^(1/2), Horner form
        coeffs = [1.0]
        for k in range(1, self.order + 1):
            coeffs.append(coeffs[-1] * (0.5 - (k - 1)) / k)
        out = Jet.const(coeffs[-1], self.order)
        for c in reversed(coeffs[:-1]):
            out = out * e + c
        return out * math.sqrt(a0)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self * (1.0 / float(other))
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * float(other)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("jets take integer powers only")
        if n < 0:
            return self.reciprocal() ** (-n)
        out = Jet.const(1.0, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __repr__(self):
        return f"Jet(order={self.order}, value={self.value:.6g})"


def trig_coeffs(x0: float, order: int, shift: float = 0.0) -> list:
    """Taylor coefficients of cos(x0 + eps - shift) about eps = 0."""
    return [math.cos(x0 - shift + k * math.pi / 2) / math.factorial(k) for k in range(order + 1)]


def cos_series(x0: float, order: int) -> list:
    return trig_coeffs(x0, order)


def sin_series(x0: float, order: int) -> list:
    return trig_coeffs(x0, order, shift=math.pi / 2)


# ---------------------------------------------------------------- vector helpers


def vdot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def vcross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def vscale(s, v):
    return tuple(s * x for x in v)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vvalue(v) -> np.ndarray:
    return np.array([x.value if isinstance(x, Jet) else float(x) for x in v])
