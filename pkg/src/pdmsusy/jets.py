"""Truncated Taylor jets for exact derivative propagation.

A :class:`Jet` of order K carries the Taylor coefficients ``c[k] = f^(k)(x)/k!``
for ``k = 0..K`` of some function at a point.  The coefficient axis is the
first axis; any trailing axes are batch axes, so a single jet can represent a
function sampled on a whole grid.  Binary operations between jets of different
order truncate to the lower order.

``Jet2(value, d1, d2)`` builds the common second-order case.
"""

from __future__ import annotations

import math
from typing import Callable, Union

import numpy as np

Scalar = Union[float, int, np.ndarray]


class Jet:
    __slots__ = ("c",)
    __array_ufunc__ = None  # let numpy scalars/arrays defer to our reflected ops

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.ndim == 0:
            c = c[None]
        self.c = c

    # construction -------------------------------------------------------
    @classmethod
    def variable(cls, x: Scalar, order: int = 2) -> "Jet":
        """The identity function ``t -> t`` expanded at ``x``."""
        x = np.asarray(x, dtype=float)
        c = np.zeros((order + 1,) + x.shape)
        c[0] = x
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value: Scalar, order: int = 2) -> "Jet":
        value = np.asarray(value, dtype=float)
        c = np.zeros((order + 1,) + value.shape)
        c[0] = value
        return cls(c)

    @classmethod
    def from_derivatives(cls, *derivs: Scalar) -> "Jet":
        """Build a jet from ``f, f', f'', ...`` (not Taylor coefficients)."""
        arrs = np.broadcast_arrays(*[np.asarray(d, dtype=float) for d in derivs])
        return cls(np.stack([a / math.factorial(k) for k, a in enumerate(arrs)]))

    # access ---------------------------------------------------------------
    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def value(self):
        return self.c[0]

    @property
    def d1(self):
        return self.derivative(1)

    @property
    def d2(self):
        return self.derivative(2)

    def derivative(self, k: int):
        if k > self.order:
            raise ValueError(f"jet of order {self.order} carries no derivative {k}")
        return self.c[k] * math.factorial(k)

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.c[: order + 1])

    def diff(self) -> "Jet":
        """Jet of the derivative function (one order lower)."""
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * (self.c.ndim - 1))
        return Jet(self.c[1:] * k)

    def integral(self, value0: Scalar) -> "Jet":
        """Jet of the antiderivative whose value at the expansion point is ``value0``."""
        k = np.arange(1, self.order + 2).reshape((-1,) + (1,) * (self.c.ndim - 1))
        head = np.broadcast_to(np.asarray(value0, dtype=float), self.c.shape[1:])[None]
        return Jet(np.concatenate([head, self.c / k]))

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, coeffs={self.c!r})"

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _pair(a, b):
        if not isinstance(b, Jet):
            b = np.asarray(b, dtype=float)
            c = np.zeros((a.c.shape[0],) + np.broadcast_shapes(a.c.shape[1:], b.shape))
            c[0] = b
            return a, Jet(c)
        k = min(a.order, b.order)
        return a.truncate(k), b.truncate(k)

    def __neg__(self):
        return Jet(-self.c)

    def __pos__(self):
        return self

    def __add__(self, other):
        a, b = self._pair(self, other)
        return Jet(a.c + b.c)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(self, other)
        return Jet(a.c - b.c)

    def __rsub__(self, other):
        a, b = self._pair(self, other)
        return Jet(b.c - a.c)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * np.asarray(other, dtype=float))
        a, b = self._pair(self, other)
        K = a.order
        shape = (K + 1,) + np.broadcast_shapes(a.c.shape[1:], b.c.shape[1:])
        out = np.zeros(shape)
        for k in range(K + 1):
            for j in range(k + 1):
                out[k] += a.c[j] * b.c[k - j]
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c / np.asarray(other, dtype=float))
        a, b = self._pair(self, other)
        K = a.order
        shape = (K + 1,) + np.broadcast_shapes(a.c.shape[1:], b.c.shape[1:])
        out = np.zeros(shape)
        for k in range(K + 1):
            acc = a.c[k] - sum((b.c[j] * out[k - j] for j in range(1, k + 1)), 0.0)
            out[k] = acc / b.c[0]
        return Jet(out)

    def __rtruediv__(self, other):
        return Jet.constant(np.asarray(other, dtype=float), self.order) / self

    def __pow__(self, p):
        if isinstance(p, Jet):
            return exp(p * log(self))
        p = float(p)
        if p == 0.0:
            return Jet.constant(np.ones(self.c.shape[1:]), self.order)
        if p.is_integer() and p > 0:
            # repeated products stay valid where the value is zero
            result, base, e = None, self, int(p)
            while e:
                if e & 1:
                    result = base if result is None else result * base
                base = base * base
                e >>= 1
            return result
        a = self.c
        K = self.order
        out = np.zeros_like(np.broadcast_to(a, a.shape), dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            out[0] = np.power(a[0], p)
            for k in range(1, K + 1):
                s = sum(((p + 1.0) * j - k) * a[j] * out[k - j] for j in range(1, k + 1))
                out[k] = s / (k * a[0])
        return Jet(out)


def _compose(a: Jet, value0, derivative_of_outer: Callable[[Jet], Jet]) -> Jet:
    """f(a) from f(a0) and f' expressed as a jet function: f(a)' = a' * f'(a)."""
    if a.order == 0:
        return Jet(np.asarray(value0, dtype=float)[None])
    inner = a.truncate(a.order - 1)
    return (a.diff() * derivative_of_outer(inner)).integral(value0)


def exp(a: Jet) -> Jet:
    if not isinstance(a, Jet):
        return np.exp(a)
    K = a.order
    out = np.zeros(a.c.shape)
    out[0] = np.exp(a.c[0])
    for k in range(1, K + 1):
        out[k] = sum(j * a.c[j] * out[k - j] for j in range(1, k + 1)) / k
    return Jet(out)


def log(a: Jet) -> Jet:
    if not isinstance(a, Jet):
        return np.log(a)
    K = a.order
    out = np.zeros(a.c.shape)
    out[0] = np.log(a.c[0])
    for k in range(1, K + 1):
        s = sum(j * out[j] * a.c[k - j] for j in range(1, k))
        out[k] = (a.c[k] - s / k) / a.c[0]
    return Jet(out)


def sqrt(a: Jet) -> Jet:
    if not isinstance(a, Jet):
        return np.sqrt(a)
    return a ** 0.5


def arctan(a: Jet) -> Jet:
    if not isinstance(a, Jet):
        return np.arctan(a)
    return _compose(a, np.arctan(a.c[0]), lambda t: 1.0 / (1.0 + t * t))


def Jet2(value: Scalar, d1: Scalar, d2: Scalar) -> Jet:
    """Second-order jet from a value and its first two derivatives."""
    return Jet.from_derivatives(value, d1, d2)
