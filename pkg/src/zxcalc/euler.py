"""Colour swap of generalised phase triples and ZXZ -> XZX Euler angles."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

EPS = 1e-12
TWO_PI = 2 * math.pi


class DegenerateDecomposition(ArithmeticError):
    pass


@dataclass(frozen=True)
class GeneralTriple:
    l1: complex
    l2: complex
    l3: complex


@dataclass(frozen=True)
class AngleTriple:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for f in ("alpha", "beta", "gamma"):
            object.__setattr__(self, f, norm_angle(getattr(self, f)))


def norm_angle(x: float) -> float:
    r = float(x) % TWO_PI
    return 0.0 if r >= TWO_PI - 1e-15 else r


def arg(z: complex) -> float:
    return 0.0 if z == 0 else cmath.phase(z)


# generalised phase matrices (unnormalised)
def zg(lam) -> np.ndarray:
    return np.array([[1, 0], [0, lam]], dtype=complex)


def xg(lam) -> np.ndarray:
    return np.array([[1 + lam, 1 - lam], [1 - lam, 1 + lam]], dtype=complex)


def zphase(a: float) -> np.ndarray:
    return zg(cmath.exp(1j * a))


def xphase(a: float) -> np.ndarray:
    return xg(cmath.exp(1j * a)) / 2


def zxz_matrix(t) -> np.ndarray:
    """Z(l3) X(l2) Z(l1) for a GeneralTriple, or with angles for an AngleTriple."""
    if isinstance(t, AngleTriple):
        return zphase(t.gamma) @ xphase(t.beta) @ zphase(t.alpha)
    return zg(t.l3) @ xg(t.l2) @ zg(t.l1)


def xzx_matrix(t) -> np.ndarray:
    if isinstance(t, AngleTriple):
        return xphase(t.gamma) @ zphase(t.beta) @ xphase(t.alpha)
    return xg(t.l3) @ zg(t.l2) @ xg(t.l1)


def color_swap_general(t: GeneralTriple) -> GeneralTriple:
    """(s1, s2, s3) with X(s3) Z(s2) X(s1) ~ Z(l3) X(l2) Z(l1)."""
    l1, l2, l3 = complex(t.l1), complex(t.l2), complex(t.l3)
    tau = (1 - l2) * (l1 + l3) + (1 + l2) * (1 + l1 * l3)
    u = (1 + l2) * (l1 * l3 - 1)
    v = (1 - l2) * (l1 - l3)
    s = (1 - l2) * (l1 + l3) - (1 + l2) * (1 + l1 * l3)
    tt = tau * (u * u - v * v)
    if abs(s) < EPS or abs(tt) < EPS:
        raise DegenerateDecomposition("S or T vanishes")
    r = cmath.sqrt(s / tt)
    q = cmath.sqrt(tt / s)
    if abs(tau - 1j * q) < EPS:  # other root pair keeps sigma2 finite
        r, q = -r, -q
    s1 = -1j * (u + v) * r
    s2 = (tau + 1j * q) / (tau - 1j * q)
    s3 = -1j * (u - v) * r
    return GeneralTriple(s1, s2, s3)


def zxz_to_xzx(t: AngleTriple) -> AngleTriple:
    """(a2, b2, g2) with X(g2) Z(b2) X(a2) ~ Z(g1) X(b1) Z(a1)."""
    a1, b1, g1 = t.alpha, t.beta, t.gamma
    z = (math.cos(b1 / 2) * math.cos((a1 + g1) / 2)
         + 1j * math.sin(b1 / 2) * math.cos((a1 - g1) / 2))
    z1 = (math.cos(b1 / 2) * math.sin((a1 + g1) / 2)
          - 1j * math.sin(b1 / 2) * math.sin((a1 - g1) / 2))
    if abs(z1) < EPS:
        a = arg(z)
        return AngleTriple(a, 0.0, a)
    if abs(z) < EPS:
        return AngleTriple(arg(z1) + math.pi / 2, math.pi, math.pi / 2 - arg(z1))
    a2 = arg(z) + arg(z1)
    b2 = 2 * arg(abs(z / z1) + 1j)
    g2 = arg(z) - arg(z1)
    return AngleTriple(a2, b2, g2)
