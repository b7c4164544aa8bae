"""Scalar arithmetic over the three normed division rings R, C and H.

Quaternions are stored as four reals in (w, x, y, z) order, q = w + xi + yj + zk.
Complex numbers embed as w + xi, reals as w; coercion is always explicit.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import ZeroDivisor

#: Absolute threshold below which a scalar counts as zero.
EPS_ZERO = 1e-12


class RingTag(enum.Enum):
    """Scalar ring of a matrix: reals, complex numbers or quaternions."""

    R = "R"
    C = "C"
    H = "H"

    @property
    def real_dim(self) -> int:
        return {RingTag.R: 1, RingTag.C: 2, RingTag.H: 4}[self]

    def contains(self, other: "RingTag") -> bool:
        """True when `other` embeds in self along R < C < H."""
        order = {RingTag.R: 0, RingTag.C: 1, RingTag.H: 2}
        return order[other] <= order[self]


class Quaternion:
    """A quaternion q = w + xi + yj + zk with i*j = k, j*i = -k."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w: float, x: float = 0.0, y: float = 0.0, z: float = 0.0):
        self.w = float(w)
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)

    @classmethod
    def from_complex(cls, c: complex) -> "Quaternion":
        return cls(c.real, c.imag, 0.0, 0.0)

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        w, x, y, z = (float(v) for v in a)
        return cls(w, x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)

    @property
    def real(self) -> float:
        return self.w

    def imag_norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    def is_real(self, tol: float = EPS_ZERO) -> bool:
        return self.imag_norm() <= tol

    def __add__(self, other: "Quaternion") -> "Quaternion":
        other = _as_quaternion(other)
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        other = _as_quaternion(other)
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other) -> "Quaternion":
        return qmul(self, _as_quaternion(other))

    def __rmul__(self, other) -> "Quaternion":
        return qmul(_as_quaternion(other), self)

    def scale(self, t: float) -> "Quaternion":
        return Quaternion(t * self.w, t * self.x, t * self.y, t * self.z)

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - _as_quaternion(other)).norm() <= tol

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _as_quaternion(v) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, complex):
        return Quaternion.from_complex(v)
    if isinstance(v, (int, float, np.floating, np.integer)):
        return Quaternion(float(v))
    raise TypeError(f"cannot coerce {type(v).__name__} to Quaternion")


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product. Bilinear, associative, norm-multiplicative."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def qinv(a: Quaternion) -> Quaternion:
    """Multiplicative inverse conj(a) / |a|^2.

    Raises ZeroDivisor when |a| <= EPS_ZERO.
    """
    n = a.norm()
    if n <= EPS_ZERO:
        raise ZeroDivisor(f"quaternion norm {n} below zero threshold")
    s = 1.0 / (n * n)
    return Quaternion(a.w * s, -a.x * s, -a.y * s, -a.z * s)


def study_embed(a: Quaternion) -> np.ndarray:
    """Complex 2x2 image of a quaternion.

    Writing a = alpha + j*beta with alpha = w + xi and beta = y - zi, the
    image is [[alpha, -conj(beta)], [beta, conj(alpha)]].  The map is an
    injective ring homomorphism, so it turns quaternionic invertibility
    questions into complex ones.
    """
    alpha = complex(a.w, a.x)
    beta = complex(a.y, -a.z)
    return np.array(
        [[alpha, -beta.conjugate()], [beta, alpha.conjugate()]],
        dtype=np.complex128,
    )
