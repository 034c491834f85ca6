"""Biquaternions as exact 2x2 complex matrices, half-integer bookkeeping,
fractional-linear maps, and the symmetric-power matrix representations.

The algebra convention: a biquaternion X = x0*e0 + x1*e1 + x2*e2 + x3*e3 is
stored as the 2x2 matrix

    ( x0 - i*x3,   -i*x1 - x2 )
    ( -i*x1 + x2,   x0 + i*x3 )

so that e0 is the identity, the ei square to -e0, and e1*e2 = e3.  The norm
N(X) is the determinant, X.plus() is the adjugate (so X * X.plus() = N(X)),
star() is the conjugate transpose, and conj_c() conjugates the four
coefficients x_i without transposing the quaternion factors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from ._scalars import I, ONE, QQi, ZERO, invert_exact
from .errors import BadIndex, BadParameters, SingularDenominator


class Biquaternion:
    """Exact biquaternion; also used as a plain 2x2 QQi matrix."""

    __slots__ = ("z11", "z12", "z21", "z22")

    def __init__(self, z11=0, z12=0, z21=0, z22=0):
        object.__setattr__(self, "z11", QQi.coerce(z11))
        object.__setattr__(self, "z12", QQi.coerce(z12))
        object.__setattr__(self, "z21", QQi.coerce(z21))
        object.__setattr__(self, "z22", QQi.coerce(z22))

    def __setattr__(self, name, value):
        raise AttributeError("Biquaternion is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_components(x0, x1, x2, x3) -> "Biquaternion":
        x0, x1, x2, x3 = map(QQi.coerce, (x0, x1, x2, x3))
        return Biquaternion(
            x0 - I * x3,
            -I * x1 - x2,
            -I * x1 + x2,
            x0 + I * x3,
        )

    @staticmethod
    def from_minkowski(y0, y1, y2, y3) -> "Biquaternion":
        """Point of the real form with signature (3,1): y0*e0~ + sum yi*ei."""
        return Biquaternion.from_components(-I * QQi.coerce(y0), y1, y2, y3)

    @staticmethod
    def scalar(c) -> "Biquaternion":
        c = QQi.coerce(c)
        return Biquaternion(c, 0, 0, c)

    @staticmethod
    def zero() -> "Biquaternion":
        return Biquaternion()

    # -- views ------------------------------------------------------------

    def entries(self):
        return ((self.z11, self.z12), (self.z21, self.z22))

    def components(self):
        half = Fraction(1, 2)
        x0 = (self.z11 + self.z22) * half
        x3 = (self.z22 - self.z11) * half * (-I)  # divide by 2i
        x1 = I * (self.z12 + self.z21) * half
        x2 = (self.z21 - self.z12) * half
        return (x0, x1, x2, x3)

    def minkowski_components(self):
        x0, x1, x2, x3 = self.components()
        return (I * x0, x1, x2, x3)

    def to_array(self):
        import numpy as np

        return np.array(
            [[complex(self.z11), complex(self.z12)],
             [complex(self.z21), complex(self.z22)]]
        )

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Biquaternion):
            return NotImplemented
        return Biquaternion(
            self.z11 + other.z11, self.z12 + other.z12,
            self.z21 + other.z21, self.z22 + other.z22,
        )

    def __sub__(self, other):
        if not isinstance(other, Biquaternion):
            return NotImplemented
        return Biquaternion(
            self.z11 - other.z11, self.z12 - other.z12,
            self.z21 - other.z21, self.z22 - other.z22,
        )

    def __neg__(self):
        return Biquaternion(-self.z11, -self.z12, -self.z21, -self.z22)

    def __mul__(self, other):
        if isinstance(other, Biquaternion):
            return Biquaternion(
                self.z11 * other.z11 + self.z12 * other.z21,
                self.z11 * other.z12 + self.z12 * other.z22,
                self.z21 * other.z11 + self.z22 * other.z21,
                self.z21 * other.z12 + self.z22 * other.z22,
            )
        if not isinstance(other, (QQi, int, Fraction)):
            return NotImplemented
        c = QQi.coerce(other)
        return Biquaternion(self.z11 * c, self.z12 * c, self.z21 * c, self.z22 * c)

    def __rmul__(self, other):
        # scalars commute with entrywise scaling
        return self.__mul__(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise BadParameters("matrix power wants a nonnegative int")
        out = Biquaternion.scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- quaternionic structure -------------------------------------------

    def norm_N(self) -> QQi:
        return self.z11 * self.z22 - self.z12 * self.z21

    def plus(self) -> "Biquaternion":
        """Adjugate: X * X.plus() == N(X) * e0."""
        return Biquaternion(self.z22, -self.z12, -self.z21, self.z11)

    def star(self) -> "Biquaternion":
        """Conjugate transpose."""
        return Biquaternion(
            self.z11.conj(), self.z21.conj(), self.z12.conj(), self.z22.conj()
        )

    def conj_c(self) -> "Biquaternion":
        """Conjugate the four e-coefficients (adjugate of the conjugate
        transpose); fixes exactly the real quaternions."""
        return self.star().plus()

    def inverse(self) -> "Biquaternion":
        n = self.norm_N()
        if n.is_zero():
            raise SingularDenominator("inverting a biquaternion with N = 0")
        return self.plus() * n.inverse()

    def trace(self) -> QQi:
        return self.z11 + self.z22

    def re_part(self) -> QQi:
        return self.trace() * Fraction(1, 2)

    def inner(self, other: "Biquaternion") -> QQi:
        """Symmetric bilinear form (1/2) Tr(self.plus() * other); its
        diagonal is norm_N."""
        p = self.plus() * other
        return p.trace() * Fraction(1, 2)

    def frobenius_sq(self) -> Fraction:
        """Squared length with the 1/2 normalization, an exact Fraction."""
        s = self.z11.abs2() + self.z12.abs2() + self.z21.abs2() + self.z22.abs2()
        return s / 2

    def second_invariant(self) -> QQi:
        """The quadratic invariant S(Z) = -(z11^2 + z22^2 + 2 z12 z21)."""
        return -(self.z11 * self.z11 + self.z22 * self.z22
                 + self.z12 * self.z21 * 2)

    def is_quaternionic(self) -> bool:
        return self == self.conj_c()

    def is_minkowski(self) -> bool:
        return self.star() == -self

    def epsilon_deform(self, eps, center: "Biquaternion | None" = None):
        """Nudge off the real slice: Z - i*eps*(Z - center).plus()."""
        eps = QQi.coerce(eps)
        d = self if center is None else self - center
        return self - d.plus() * (I * eps)

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Biquaternion):
            return NotImplemented
        return (self.z11 == other.z11 and self.z12 == other.z12
                and self.z21 == other.z21 and self.z22 == other.z22)

    def __hash__(self):
        return hash((self.z11, self.z12, self.z21, self.z22))

    def __repr__(self):
        return (f"Biquaternion({self.z11!r}, {self.z12!r}, "
                f"{self.z21!r}, {self.z22!r})")


def epsilon_deform(z: Biquaternion, eps, center: Biquaternion | None = None):
    return z.epsilon_deform(eps, center)


E0 = Biquaternion.from_components(1, 0, 0, 0)
E1 = Biquaternion.from_components(0, 1, 0, 0)
E2 = Biquaternion.from_components(0, 0, 1, 0)
E3 = Biquaternion.from_components(0, 0, 0, 1)
E0_TILDE = E0 * (-I)
BASIS = (E0, E1, E2, E3)


class SemiInt:
    """Half-integer stored as its doubled value, for spin-style labels."""

    __slots__ = ("twice",)

    def __init__(self, value):
        if isinstance(value, SemiInt):
            t = value.twice
        elif isinstance(value, int):
            t = 2 * value
        elif isinstance(value, Fraction):
            if value.denominator not in (1, 2):
                raise BadIndex(f"{value} is not a half-integer")
            t = int(value * 2)
        else:
            raise BadIndex(f"cannot read {value!r} as a half-integer")
        object.__setattr__(self, "twice", t)

    def __setattr__(self, name, value):
        raise AttributeError("SemiInt is immutable")

    @staticmethod
    def from_twice(t: int) -> "SemiInt":
        s = SemiInt(0)
        object.__setattr__(s, "twice", t)
        return s

    @property
    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_int(self) -> int:
        if not self.is_integer():
            raise BadIndex(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other):
        other = SemiInt(other) if not isinstance(other, SemiInt) else other
        return SemiInt.from_twice(self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other):
        other = SemiInt(other) if not isinstance(other, SemiInt) else other
        return SemiInt.from_twice(self.twice - other.twice)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return SemiInt.from_twice(-self.twice)

    def _twice_of(self, other) -> int:
        if isinstance(other, SemiInt):
            return other.twice
        return SemiInt(other).twice

    def __eq__(self, other):
        try:
            return self.twice == self._twice_of(other)
        except BadIndex:
            return NotImplemented

    def __lt__(self, other):
        return self.twice < self._twice_of(other)

    def __le__(self, other):
        return self.twice <= self._twice_of(other)

    def __gt__(self, other):
        return self.twice > self._twice_of(other)

    def __ge__(self, other):
        return self.twice >= self._twice_of(other)

    def __hash__(self):
        return hash(Fraction(self.twice, 2))

    def __repr__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def semi_range(lo, hi):
    """Inclusive list from lo to hi in steps of 1, as SemiInt."""
    lo = SemiInt(lo) if not isinstance(lo, SemiInt) else lo
    hi = SemiInt(hi) if not isinstance(hi, SemiInt) else hi
    return [SemiInt.from_twice(t) for t in range(lo.twice, hi.twice + 1, 2)]


@lru_cache(maxsize=None)
def t_monomials(l2: int, n2: int, m2: int):
    """Monomial expansion of the (n, m) matrix coefficient at doubled spin l2.

    Returns a tuple of (integer coefficient, (e11, e12, e21, e22)) pairs; the
    empty tuple encodes the zero function for out-of-range labels.
    """
    if l2 < 0 or abs(n2) > l2 or abs(m2) > l2:
        return ()
    if (l2 - n2) % 2 or (l2 - m2) % 2:
        return ()
    p = (l2 - m2) // 2
    q = (l2 + m2) // 2
    r = (l2 - n2) // 2
    out = []
    for j in range(max(0, r - q), min(p, r) + 1):
        out.append((comb(p, j) * comb(q, r - j), (j, r - j, p - j, q - r + j)))
    return tuple(out)


def t_coeff(l, n, m, z: Biquaternion) -> QQi:
    """Evaluate one matrix coefficient exactly at z."""
    l, n, m = SemiInt(l), SemiInt(n), SemiInt(m)
    total = QQi(0)
    vals = (z.z11, z.z12, z.z21, z.z22)
    for coef, exps in t_monomials(l.twice, n.twice, m.twice):
        term = QQi(coef)
        for v, e in zip(vals, exps):
            if e:
                term = term * v ** e
        total = total + term
    return total


class SymPowerRep:
    """The irreducible n-dimensional representation by matrix coefficients.

    apply(Z) returns the n x n matrix [t^l_{a,b}(Z)] with l = (n-1)/2 and
    labels a (rows), b (columns) running from -l to l in steps of 1.
    """

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise BadIndex("representation dimension must be a positive int")
        self.dim = n

    @property
    def spin(self) -> SemiInt:
        return SemiInt.from_twice(self.dim - 1)

    def labels(self):
        l = self.spin
        return semi_range(-l, l)

    def apply(self, z: Biquaternion):
        labs = self.labels()
        return [[t_coeff(self.spin, a, b, z) for b in labs] for a in labs]


def tau_n(z: Biquaternion, n: int):
    return SymPowerRep(n).apply(z)


def _blocks_to_matrix4(a, b, c, d):
    rows = []
    for (p, q) in ((a, b), (c, d)):
        (p11, p12), (p21, p22) = p.entries()
        (q11, q12), (q21, q22) = q.entries()
        rows.append([p11, p12, q11, q12])
        rows.append([p21, p22, q21, q22])
    return rows


def _matrix4_to_blocks(m):
    a = Biquaternion(m[0][0], m[0][1], m[1][0], m[1][1])
    b = Biquaternion(m[0][2], m[0][3], m[1][2], m[1][3])
    c = Biquaternion(m[2][0], m[2][1], m[3][0], m[3][1])
    d = Biquaternion(m[2][2], m[2][3], m[3][2], m[3][3])
    return a, b, c, d


class FracLinear:
    """An element of GL(2, H_C) acting by fractional-linear maps.

    The constructor takes the element's own blocks (a, b; c, d).  The
    left action on points uses the blocks of the inverse, which is computed
    exactly once and cached.
    """

    __slots__ = ("a", "b", "c", "d", "_inv")

    def __init__(self, a, b, c, d):
        for name, blk in zip("abcd", (a, b, c, d)):
            if not isinstance(blk, Biquaternion):
                raise BadParameters(f"block {name} must be a Biquaternion")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_inv", None)

    def __setattr__(self, name, value):
        raise AttributeError("FracLinear is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def identity() -> "FracLinear":
        one, zero = Biquaternion.scalar(1), Biquaternion.zero()
        return FracLinear(one, zero, zero, one)

    @staticmethod
    def translation(b: Biquaternion) -> "FracLinear":
        """Element whose point action is Z -> Z + b."""
        one, zero = Biquaternion.scalar(1), Biquaternion.zero()
        return FracLinear(one, -b, zero, one)

    @staticmethod
    def dilation(a: Biquaternion, d: Biquaternion) -> "FracLinear":
        """Element whose point action is Z -> a Z d^{-1}."""
        zero = Biquaternion.zero()
        return FracLinear(a.inverse(), zero, zero, d.inverse())

    @staticmethod
    def inversion() -> "FracLinear":
        """Self-inverse element whose point action is Z -> Z^{-1}."""
        one, zero = Biquaternion.scalar(1), Biquaternion.zero()
        return FracLinear(zero, one, one, zero)

    @staticmethod
    def cayley() -> "FracLinear":
        """The map between the unit-sphere picture and the tube picture;
        sends 0 to i*e0."""
        i1 = Biquaternion.scalar(I)
        one = Biquaternion.scalar(1)
        return FracLinear(i1, one, i1, -one)

    # -- group structure ----------------------------------------------------

    def blocks(self):
        return (self.a, self.b, self.c, self.d)

    def inverse_blocks(self):
        if self._inv is None:
            m = _blocks_to_matrix4(self.a, self.b, self.c, self.d)
            object.__setattr__(self, "_inv", _matrix4_to_blocks(invert_exact(m)))
        return self._inv

    def inverse(self) -> "FracLinear":
        g = FracLinear(*self.inverse_blocks())
        object.__setattr__(g, "_inv", (self.a, self.b, self.c, self.d))
        return g

    def compose(self, other: "FracLinear") -> "FracLinear":
        """Matrix product self * other."""
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        return FracLinear(a, b, c, d)

    def __eq__(self, other):
        if not isinstance(other, FracLinear):
            return NotImplemented
        return self.blocks() == other.blocks()

    def __hash__(self):
        return hash(self.blocks())

    # -- the point action ---------------------------------------------------

    def mobius_apply(self, z: Biquaternion) -> Biquaternion:
        a, b, c, d = self.inverse_blocks()
        den = c * z + d
        if den.norm_N().is_zero():
            raise SingularDenominator("fractional-linear map: N(cZ + d) = 0")
        return (a * z + b) * den.inverse()

    def classify(self):
        """Return ('translation', b), ('diagonal', (a, d)), ('inversion',
        None), or None, judged on the acting (inverse) blocks."""
        a, b, c, d = self.inverse_blocks()
        zero, one = Biquaternion.zero(), Biquaternion.scalar(1)
        if a == zero and d == zero and b == one and c == one:
            return ("inversion", None)
        if b == zero and c == zero:
            return ("diagonal", (a, d))
        if a == one and d == one and c == zero:
            return ("translation", b)
        return None

    # -- membership in the two real forms -----------------------------------

    def in_u22(self) -> bool:
        """Preserves the split Hermitian form with matrix diag(1, -1)."""
        a, b, c, d = self.a, self.b, self.c, self.d
        one, zero = Biquaternion.scalar(1), Biquaternion.zero()
        return (
            a.star() * a - c.star() * c == one
            and d.star() * d - b.star() * b == one
            and a.star() * b - c.star() * d == zero
        )

    def in_u22_prime(self) -> bool:
        """Preserves the Hermitian form with matrix (0 1; 1 0)."""
        a, b, c, d = self.a, self.b, self.c, self.d
        one, zero = Biquaternion.scalar(1), Biquaternion.zero()
        return (
            a * b.star() + b * a.star() == zero
            and c * d.star() + d * c.star() == zero
            and a * d.star() + b * c.star() == one
        )

    def __repr__(self):
        return f"FracLinear(a={self.a!r}, b={self.b!r}, c={self.c!r}, d={self.d!r})"
