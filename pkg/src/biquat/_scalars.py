"""Exact Gaussian-rational scalars and small exact linear algebra.

`QQi` is the coefficient field for everything exact in this package: a complex
number whose real and imaginary parts are `fractions.Fraction`.  It exists
because float contamination must be impossible to introduce by accident; all
constructors reject floats outright (see :class:`biquat.errors.BackendMismatch`).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BackendMismatch, SingularDenominator

_EXACT_TYPES = (int, Fraction)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise BackendMismatch(
        f"exact scalar expected int or Fraction parts, got {type(x).__name__}"
    )


class QQi:
    """A Gaussian rational ``re + im*i`` with exact Fraction parts.

    Instances are immutable by convention and hashable.  Arithmetic accepts
    ints and Fractions on either side; floats raise BackendMismatch.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    # -- conversions ------------------------------------------------------

    @staticmethod
    def coerce(x) -> "QQi":
        if isinstance(x, QQi):
            return x
        return QQi(_frac(x))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            other = QQi.coerce(other)
        except BackendMismatch:
            return NotImplemented
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = QQi.coerce(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QQi.coerce(other) - self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        try:
            other = QQi.coerce(other)
        except BackendMismatch:
            return NotImplemented
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QQi":
        d = self.re * self.re + self.im * self.im
        if not d:
            raise SingularDenominator("division by zero in QQi")
        return QQi(self.re / d, -self.im / d)

    def __truediv__(self, other):
        return self * QQi.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QQi.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise BackendMismatch("QQi exponent must be int")
        if n < 0:
            return self.inverse() ** (-n)
        out = QQi(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "QQi":
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, _EXACT_TYPES):
            other = QQi(other)
        if not isinstance(other, QQi):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"


ZERO = QQi(0)
ONE = QQi(1)
I = QQi(0, 1)


def solve_exact(rows, rhs):
    """Solve A x = b over QQi by Gauss-Jordan with exact pivoting.

    `rows` is an n x n nested list of QQi-coercible entries, `rhs` a list of
    length-n column lists (or a single column).  Returns columns in the same
    shape.  Raises SingularDenominator when A is singular.
    """
    n = len(rows)
    a = [[QQi.coerce(v) for v in row] for row in rows]
    single = rhs and not isinstance(rhs[0], (list, tuple))
    cols = [list(rhs)] if single else [list(c) for c in rhs]
    cols = [[QQi.coerce(v) for v in c] for c in cols]
    for j in range(n):
        p = next((k for k in range(j, n) if a[k][j]), None)
        if p is None:
            raise SingularDenominator("singular matrix in exact solve")
        a[j], a[p] = a[p], a[j]
        for c in cols:
            c[j], c[p] = c[p], c[j]
        inv = a[j][j].inverse()
        a[j] = [v * inv for v in a[j]]
        for c in cols:
            c[j] = c[j] * inv
        for k in range(n):
            if k == j or not a[k][j]:
                continue
            f = a[k][j]
            a[k] = [a[k][t] - f * a[j][t] for t in range(n)]
            for c in cols:
                c[k] = c[k] - f * c[j]
    return cols[0] if single else cols


def invert_exact(rows):
    """Exact inverse of an n x n QQi matrix (nested lists)."""
    n = len(rows)
    eye = [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    cols = solve_exact(rows, eye)
    # solve_exact returned columns of the inverse; transpose back to rows
    return [[cols[j][i] for j in range(n)] for i in range(n)]
