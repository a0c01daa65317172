"""Forward-mode automatic differentiation on small fixed-size gradients.

Jet carries a value and a gradient vector, Jet2 adds the dense Hessian.
Only ring operations are implemented (add/sub/mul/integer pow): every
quantity in this package is polynomial in the multipliers, so no division
or transcendental rules are needed.  Gradients are numpy arrays; float64
for numeric work, object dtype works too if exact coefficients are pushed
through.
"""
from __future__ import annotations

import numpy as np


class Jet:
    """First-order jet: value plus gradient of length n."""

    __slots__ = ("val", "g")

    def __init__(self, val, g):
        self.val = val
        self.g = g

    @classmethod
    def seed(cls, val, n, index, dtype=np.float64):
        g = np.zeros(n, dtype=dtype)
        g[index] = 1.0
        return cls(val, g)

    @classmethod
    def const(cls, val, n, dtype=np.float64):
        return cls(val, np.zeros(n, dtype=dtype))

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.g + other.g)
        return Jet(self.val + other, self.g)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val - other.val, self.g - other.g)
        return Jet(self.val - other, self.g)

    def __rsub__(self, other):
        return Jet(other - self.val, -self.g)

    def __neg__(self):
        return Jet(-self.val, -self.g)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val * other.val, self.val * other.g + other.val * self.g)
        return Jet(self.val * other, self.g * other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("jets support nonnegative integer powers only")
        out = Jet(1.0, np.zeros_like(self.g))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"Jet({self.val!r}, grad={self.g!r})"


class Jet2:
    """Second-order jet: value, gradient and symmetric Hessian."""

    __slots__ = ("val", "g", "h")

    def __init__(self, val, g, h):
        self.val = val
        self.g = g
        self.h = h

    @classmethod
    def seed(cls, val, n, index, dtype=np.float64):
        g = np.zeros(n, dtype=dtype)
        g[index] = 1.0
        return cls(val, g, np.zeros((n, n), dtype=dtype))

    @classmethod
    def const(cls, val, n, dtype=np.float64):
        return cls(val, np.zeros(n, dtype=dtype), np.zeros((n, n), dtype=dtype))

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.val + other.val, self.g + other.g, self.h + other.h)
        return Jet2(self.val + other, self.g, self.h)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.val - other.val, self.g - other.g, self.h - other.h)
        return Jet2(self.val - other, self.g, self.h)

    def __rsub__(self, other):
        return Jet2(other - self.val, -self.g, -self.h)

    def __neg__(self):
        return Jet2(-self.val, -self.g, -self.h)

    def __mul__(self, other):
        if isinstance(other, Jet2):
            cross = np.outer(self.g, other.g)
            return Jet2(self.val * other.val,
                        self.val * other.g + other.val * self.g,
                        self.val * other.h + other.val * self.h + cross + cross.T)
        return Jet2(self.val * other, self.g * other, self.h * other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("jets support nonnegative integer powers only")
        out = Jet2(1.0, np.zeros_like(self.g), np.zeros_like(self.h))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"Jet2({self.val!r})"


def value_of(x):
    """Plain value of a scalar that may be a jet."""
    return x.val if isinstance(x, (Jet, Jet2)) else x
