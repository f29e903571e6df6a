"""Scalars, dense matrices and exact arithmetic in Z[1/2, e^{i pi/4}]."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

import numpy as np

DEFAULT_TOL = 1e-9
MAX_ENTRIES = 1 << 26

SQRT2 = math.sqrt(2.0)
OMEGA = complex(SQRT2 / 2, SQRT2 / 2)


class ShapeError(ValueError):
    pass


class DimensionOverflow(ValueError):
    pass


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.atleast_2d(np.asarray(a))
    b = np.atleast_2d(np.asarray(b))
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows * cols > MAX_ENTRIES:
        raise DimensionOverflow(f"kron result {rows}x{cols} too large")
    return np.kron(a, b)


def scalar_equiv(a, b, tol: float = DEFAULT_TOL) -> complex | None:
    """Return c with a ~= c*b, or None.

    c is read off the largest entry of b. Zero matches only zero (c = 1).
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    na = float(np.max(np.abs(a))) if a.size else 0.0
    nb = float(np.max(np.abs(b))) if b.size else 0.0
    if nb <= tol:
        return 1.0 + 0j if na <= tol else None
    idx = np.unravel_index(int(np.argmax(np.abs(b))), b.shape)
    c = complex(a[idx] / b[idx])
    if abs(c) <= tol:
        return None
    if float(np.max(np.abs(a - c * b))) <= tol * max(1.0, na):
        return c
    return None


def max_dev(a, b) -> float:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return float(np.max(np.abs(a - b))) if a.size else 0.0


# ---------------------------------------------------------------- dyadics

@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """numerator / 2**exponent, kept canonical."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        n, e = int(self.numerator), int(self.exponent)
        if e < 0:
            n, e = n << -e, 0
        if n == 0:
            e = 0
        while e > 0 and n % 2 == 0:
            n //= 2
            e -= 1
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def from_fraction(cls, x) -> "Dyadic":
        f = Fraction(x)
        d = f.denominator
        if d & (d - 1):
            raise ValueError(f"{x} is not dyadic")
        return cls(f.numerator, d.bit_length() - 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __float__(self):
        return self.numerator / (1 << self.exponent)

    def __lt__(self, other):
        return self.to_fraction() < Fraction(other.to_fraction() if isinstance(other, Dyadic) else other)

    def __repr__(self):
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"


# ---------------------------------------------------------------- ring T

def _negacyclic(a, b):
    out = [0, 0, 0, 0]
    for i in range(4):
        if a[i] == 0:
            continue
        for j in range(4):
            k = i + j
            if k < 4:
                out[k] += a[i] * b[j]
            else:
                out[k - 4] -= a[i] * b[j]
    return out


class RingElement:
    """(c0 + c1 w + c2 w^2 + c3 w^3) / 2**k with w = e^{i pi/4}.

    Canonical: k minimal. Works as a numpy object-dtype scalar.
    """

    __slots__ = ("c", "k")

    def __init__(self, c=(0, 0, 0, 0), k: int = 0):
        c = [int(x) for x in c]
        if len(c) != 4:
            raise ValueError("need four coefficients")
        k = int(k)
        if k < 0:
            c = [x << -k for x in c]
            k = 0
        if not any(c):
            k = 0
        while k > 0 and all(x % 2 == 0 for x in c):
            c = [x // 2 for x in c]
            k -= 1
        self.c = tuple(c)
        self.k = k

    # construction helpers
    @classmethod
    def from_dyadics(cls, a0, a1, a2, a3) -> "RingElement":
        ds = [a if isinstance(a, Dyadic) else Dyadic.from_fraction(a) for a in (a0, a1, a2, a3)]
        k = max(d.exponent for d in ds)
        return cls([d.numerator << (k - d.exponent) for d in ds], k)

    @classmethod
    def omega(cls, j: int = 1) -> "RingElement":
        j %= 8
        c = [0, 0, 0, 0]
        c[j % 4] = -1 if j >= 4 else 1
        return cls(c)

    @classmethod
    def coerce(cls, x) -> "RingElement":
        if isinstance(x, RingElement):
            return x
        if isinstance(x, (int, np.integer)):
            return cls([int(x), 0, 0, 0])
        if isinstance(x, (Fraction, Dyadic)):
            return cls.from_dyadics(x, 0, 0, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} into the ring")

    @classmethod
    def inv_sqrt2(cls) -> "RingElement":
        return cls([0, 1, 0, -1], 1)

    @property
    def a0(self):
        return Dyadic(self.c[0], self.k)

    @property
    def a1(self):
        return Dyadic(self.c[1], self.k)

    @property
    def a2(self):
        return Dyadic(self.c[2], self.k)

    @property
    def a3(self):
        return Dyadic(self.c[3], self.k)

    def coefficients(self) -> tuple:
        return (self.a0, self.a1, self.a2, self.a3)

    # arithmetic
    def __add__(self, other):
        try:
            o = RingElement.coerce(other)
        except TypeError:
            return NotImplemented
        k = max(self.k, o.k)
        a = [x << (k - self.k) for x in self.c]
        b = [x << (k - o.k) for x in o.c]
        return RingElement([x + y for x, y in zip(a, b)], k)

    __radd__ = __add__

    def __neg__(self):
        return RingElement([-x for x in self.c], self.k)

    def __sub__(self, other):
        return self + (-RingElement.coerce(other))

    def __rsub__(self, other):
        return RingElement.coerce(other) + (-self)

    def __mul__(self, other):
        try:
            o = RingElement.coerce(other)
        except TypeError:
            return NotImplemented
        return RingElement(_negacyclic(self.c, o.c), self.k + o.k)

    __rmul__ = __mul__

    def conj(self) -> "RingElement":
        # w -> w^7 = -w^3, w^2 -> -w^2, w^3 -> -w
        c0, c1, c2, c3 = self.c
        return RingElement([c0, -c3, -c2, -c1], self.k)

    def __eq__(self, other):
        try:
            o = RingElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self.c == o.c and self.k == o.k

    def __hash__(self):
        return hash((self.c, self.k))

    def is_zero(self) -> bool:
        return not any(self.c)

    def to_complex(self) -> complex:
        z = complex(self.c[0]) + self.c[1] * OMEGA + self.c[2] * 1j + self.c[3] * (OMEGA * 1j)
        return z / (1 << self.k)

    __complex__ = to_complex

    def __repr__(self):
        return "(" + ", ".join(repr(a) for a in self.coefficients()) + ")"


def ring_mul(r: RingElement, s: RingElement) -> RingElement:
    return r * s


def ring_to_complex(r: RingElement) -> complex:
    return r.to_complex()


def ring_array_to_complex(a: np.ndarray) -> np.ndarray:
    flat = [complex(RingElement.coerce(x).to_complex()) for x in a.ravel()]
    return np.array(flat, dtype=complex).reshape(a.shape)
