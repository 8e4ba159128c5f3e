"""The rank-3 numerical lattice of coherent-system classes.

A class is an integer triple (r, d, n): the rank and degree of the sheaf
part and the dimension of the section space.  This module provides the
Euler pairing on the lattice, the induced actions of the numerical Serre
and dual functors, left mutation through exceptional classes, and the
projection of a positive-rank class into the (b, w)-plane.

All arithmetic is over Python ints (arbitrary precision); nothing here
ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .errors import GenusOutOfRange, NotExceptional, ZeroRank


@dataclass(frozen=True)
class NumClass:
    """Integer triple (r, d, n) in the numerical lattice."""

    r: int
    d: int
    n: int

    def __post_init__(self):
        for name in ("r", "d", "n"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise TypeError(f"{name} must be an int, got {value!r}")

    def __add__(self, other: "NumClass") -> "NumClass":
        return NumClass(self.r + other.r, self.d + other.d, self.n + other.n)

    def __sub__(self, other: "NumClass") -> "NumClass":
        return NumClass(self.r - other.r, self.d - other.d, self.n - other.n)

    def __neg__(self) -> "NumClass":
        return NumClass(-self.r, -self.d, -self.n)

    def __mul__(self, k: int) -> "NumClass":
        return NumClass(self.r * k, self.d * k, self.n * k)

    __rmul__ = __mul__

    @property
    def is_primitive(self) -> bool:
        """True when gcd(|r|, |d|, |n|) == 1; the zero class is not primitive."""
        return gcd(gcd(abs(self.r), abs(self.d)), abs(self.n)) == 1

    def as_tuple(self) -> tuple:
        return (self.r, self.d, self.n)

    def __str__(self):
        return f"({self.r},{self.d},{self.n})"


@dataclass(frozen=True)
class Genus:
    """Genus of the base curve; the stability theory needs g >= 1."""

    g: int

    def __post_init__(self):
        if not isinstance(self.g, int) or isinstance(self.g, bool):
            raise TypeError(f"genus must be an int, got {self.g!r}")
        if self.g < 1:
            raise GenusOutOfRange(f"genus must be >= 1, got {self.g}")


GenusLike = Union[Genus, int]


def genus_value(g: GenusLike) -> int:
    """Coerce a Genus or a plain int to a validated integer genus."""
    if isinstance(g, Genus):
        return g.g
    return Genus(g).g


# Classes of the four distinguished objects: the pure-sections triple
# [O -> 0], the identity pair [O -> O], a skyscraper [0 -> O_x], and the
# structure sheaf [0 -> O].
SECTION_CLASS = NumClass(0, 0, 1)
PAIR_CLASS = NumClass(1, 0, 1)
POINT_CLASS = NumClass(0, 1, 0)
SHEAF_CLASS = NumClass(1, 0, 0)


def euler(v1: NumClass, v2: NumClass, g: GenusLike) -> int:
    """Euler pairing chi(v1, v2) on the lattice, exact and bilinear.

    chi = r1*(d2 + r2*(1-g)) - d1*r2 + n1*(n2 - d2 - r2*(1-g)).
    """
    gg = genus_value(g)
    twist = v2.d + v2.r * (1 - gg)
    return v1.r * twist - v1.d * v2.r + v1.n * (v2.n - twist)


def serre_class(v: NumClass, g: GenusLike) -> NumClass:
    """Class map of the Serre functor: an integral lattice automorphism.

    (r, d, n) |-> (n-r, -d + 2(n-r)(g-1), n - d + (n-r)(g-1)).
    """
    gg = genus_value(g)
    m = v.n - v.r
    return NumClass(m, -v.d + 2 * m * (gg - 1), v.n - v.d + m * (gg - 1))


def serre_matrix(g: GenusLike) -> list:
    """3x3 integer matrix of serre_class in the (r, d, n) basis (columns)."""
    basis = (NumClass(1, 0, 0), NumClass(0, 1, 0), NumClass(0, 0, 1))
    images = [serre_class(e, g) for e in basis]
    return [[im.as_tuple()[row] for im in images] for row in range(3)]


def dual_class(v: NumClass) -> NumClass:
    """Class map of the involutive dual functor: (r, d, n) |-> (n-r, d, n)."""
    return NumClass(v.n - v.r, v.d, v.n)


def mutate_left(e: NumClass, v: NumClass, g: GenusLike) -> NumClass:
    """Left mutation of v through the exceptional class e.

    Requires chi(e, e) = 1; returns v - chi(e, v) * e.
    """
    if euler(e, e, g) != 1:
        raise NotExceptional(f"{e} has self-pairing {euler(e, e, g)}, not 1")
    return v - euler(e, v, g) * e


def project(v: NumClass) -> tuple:
    """Projection (d/r, n/r) of a nonzero-rank class into the (b, w)-plane."""
    if v.r == 0:
        raise ZeroRank(f"cannot project rank-zero class {v}")
    return (Fraction(v.d, v.r), Fraction(v.n, v.r))


def det3(m: list) -> int:
    """Determinant of a 3x3 integer matrix."""
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
