"""Matrix coefficients of the symmetric-power representations.

This module builds the scalar coefficient functions t^l_{n,m} exactly, checks
the derivative and multiplication identities they satisfy, assembles the
graded bases of harmonic and regular Laurent polynomials, and evaluates
truncated separated expansions of the three conformal kernels.
"""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._scalars import QQi
from .algebra import Biquaternion, SemiInt, semi_range, t_monomials
from .algebra import t_coeff as _point_coeff
from .calculus import RationalFn, SpinorFn, _from_grid
from .errors import (
    BadIndex,
    BadParameters,
    EmptySpace,
    RegionViolation,
)
from .reporting import VerificationReport

_HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# coefficient labels
# ---------------------------------------------------------------------------

class MatCoeffIndex:
    """Label (l, m, n) of the coefficient with row n and column m at spin l.

    Labels whose m or n falls outside [-l, l] are allowed and denote the
    zero function; labels that differ from l by a non-integer are malformed.
    """

    __slots__ = ("l", "m", "n")

    def __init__(self, l, m, n):
        l, m, n = SemiInt(l), SemiInt(m), SemiInt(n)
        if (l.twice - m.twice) % 2 or (l.twice - n.twice) % 2:
            raise BadIndex("m and n must differ from l by whole integers")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("MatCoeffIndex is immutable")

    @property
    def in_range(self) -> bool:
        return (self.l.twice >= 0
                and abs(self.m.twice) <= self.l.twice
                and abs(self.n.twice) <= self.l.twice)

    def sort_key(self):
        return (self.l.twice, self.m.twice, self.n.twice)

    def __eq__(self, other):
        if not isinstance(other, MatCoeffIndex):
            return NotImplemented
        return self.sort_key() == other.sort_key()

    def __hash__(self):
        return hash(self.sort_key())

    def __repr__(self):
        return f"MatCoeffIndex(l={self.l}, m={self.m}, n={self.n})"


@lru_cache(maxsize=None)
def _t_fn_cached(l2: int, n2: int, m2: int) -> RationalFn:
    poly = {}
    for coef, exps in t_monomials(l2, n2, m2):
        poly[exps] = QQi(coef)
    return RationalFn(((poly,),), (0,), 1, (1, 1))


def _t(l: SemiInt, n, m) -> RationalFn:
    """The coefficient with row label n and column label m, as a function."""
    return _t_fn_cached(SemiInt(l).twice, SemiInt(n).twice, SemiInt(m).twice)


def t_coeff(idx) -> RationalFn:
    """The scalar polynomial t^l_{n,m}, by exact binomial expansion.

    Accepts a MatCoeffIndex or an (l, m, n) triple.  Out-of-range labels
    give the zero function.
    """
    if not isinstance(idx, MatCoeffIndex):
        try:
            idx = MatCoeffIndex(*idx)
        except TypeError as exc:
            raise BadParameters(
                "t_coeff wants a MatCoeffIndex or an (l, m, n) triple"
            ) from exc
    return _t(idx.l, idx.n, idx.m)


# ---------------------------------------------------------------------------
# derivative and multiplication identities
# ---------------------------------------------------------------------------

def check_derivative_identities(l) -> VerificationReport:
    """Check all four lowering identities for every in-range label at spin l.

    Each partial derivative of t^l_{n,m} must equal the matching spin
    l - 1/2 coefficient scaled by (l -+ m).
    """
    start = time.perf_counter()
    l = SemiInt(l)
    checked = 0
    failures = []
    for n in semi_range(-l, l):
        for m in semi_range(-l, l):
            base = _t(l, n, m)
            low = (l - m).as_fraction
            high = (l + m).as_fraction
            cases = (
                ((0, 0), low, n + _HALF, m + _HALF),
                ((0, 1), high, n + _HALF, m - _HALF),
                ((1, 0), low, n - _HALF, m + _HALF),
                ((1, 1), high, n - _HALF, m - _HALF),
            )
            for (i, j), coef, nn, mm in cases:
                lhs = base.derivative(i, j)
                rhs = coef * _t(l - _HALF, nn, mm)
                checked += 1
                if lhs != rhs:
                    failures.append(f"d{i+1}{j+1} t^{l}_{{{n},{m}}}")
    return VerificationReport.build(
        "matcoef.derivative_identities",
        inputs={"l": str(l)},
        computed={"checked": checked, "failed": len(failures),
                  "failures": failures[:8]},
        expected={"failed": 0},
        residual=float(len(failures)),
        tolerance=0.0,
        runtime=time.perf_counter() - start,
    )


def check_multiplication_identities(l) -> VerificationReport:
    """Check both matrix-product identities for every in-range label at l.

    The first contracts a spin l - 1/2 row with the coordinate matrix, the
    second raises a weighted spin l column to spin l + 1/2.
    """
    start = time.perf_counter()
    l = SemiInt(l)
    coord = RationalFn.coordinate()
    checked = 0
    failures = []
    # row identity: spin l - 1/2 pair times X gives the spin l pair
    for m in semi_range(-l, l):
        for n in semi_range(-l + _HALF, l - _HALF):
            row = _from_grid([[_t(l - _HALF, m + _HALF, n),
                               _t(l - _HALF, m - _HALF, n)]])
            rhs = _from_grid([[_t(l, m, n - _HALF), _t(l, m, n + _HALF)]])
            checked += 1
            if row * coord != rhs:
                failures.append(f"row identity at (m,n)=({m},{n})")
    # column identity: X times the weighted spin l column raises the spin
    for m in semi_range(-l - _HALF, l + _HALF):
        for n in semi_range(-l, l):
            col = _from_grid([
                [(l - m + _HALF).as_fraction * _t(l, n, m + _HALF)],
                [(l + m + _HALF).as_fraction * _t(l, n, m - _HALF)],
            ])
            rhs = _from_grid([
                [(l - n + 1).as_fraction * _t(l + _HALF, n - _HALF, m)],
                [(l + n + 1).as_fraction * _t(l + _HALF, n + _HALF, m)],
            ])
            checked += 1
            if coord * col != rhs:
                failures.append(f"column identity at (m,n)=({m},{n})")
    return VerificationReport.build(
        "matcoef.multiplication_identities",
        inputs={"l": str(l)},
        computed={"checked": checked, "failed": len(failures),
                  "failures": failures[:8]},
        expected={"failed": 0},
        residual=float(len(failures)),
        tolerance=0.0,
        runtime=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# graded bases
# ---------------------------------------------------------------------------

class BasisElement:
    """One element of a graded basis, tagged with its labels."""

    __slots__ = ("space", "degree", "l", "m", "n", "payload")

    def __init__(self, space, degree, l, m, n, payload):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "l", SemiInt(l))
        object.__setattr__(self, "m", SemiInt(m))
        object.__setattr__(self, "n", SemiInt(n))
        object.__setattr__(self, "payload", payload)

    def __setattr__(self, name, value):
        raise AttributeError("BasisElement is immutable")

    @property
    def tag(self) -> str:
        return f"{self.space}({self.degree})"

    def __repr__(self):
        return (f"BasisElement({self.tag}, l={self.l}, m={self.m}, "
                f"n={self.n})")


_NAMES = {"H": "H", "V": "V", "Vprime": "Vprime", "V'": "Vprime"}
_EMPTY_DEGREES = {"H": (-1,), "V": (-1, -2), "Vprime": (-1, -2)}


def _inverted(fn: RationalFn) -> RationalFn:
    return fn.invert_var() * RationalFn.inverse_norm(1)


def _h_elements(degree):
    if degree >= 0:
        l = SemiInt.from_twice(degree)
        make = lambda n, m: _t(l, n, m)
    else:
        l = SemiInt.from_twice(-degree - 2)
        make = lambda n, m: _inverted(_t(l, n, m))
    return [BasisElement("H", degree, l, m, n, make(n, m))
            for m in semi_range(-l, l) for n in semi_range(-l, l)]


def _v_elements(degree):
    out = []
    if degree >= 0:
        l = SemiInt.from_twice(degree)
        for m in semi_range(-l - _HALF, l + _HALF):
            for n in semi_range(-l, l):
                top = (l - m + _HALF).as_fraction * _t(l, n, m + _HALF)
                bot = (l + m + _HALF).as_fraction * _t(l, n, m - _HALF)
                col = SpinorFn.column(_from_grid([[top], [bot]]))
                out.append(BasisElement("V", degree, l, m, n, col))
    else:
        l = SemiInt.from_twice(-degree - 2)
        for m in semi_range(-l, l):
            for n in semi_range(-l + _HALF, l - _HALF):
                top = (l - n + _HALF).as_fraction * _inverted(
                    _t(l, n - _HALF, m))
                bot = (l + n + _HALF).as_fraction * _inverted(
                    _t(l, n + _HALF, m))
                col = SpinorFn.column(_from_grid([[top], [bot]]))
                out.append(BasisElement("V", degree, l, m, n, col))
    return out


def _vprime_elements(degree):
    out = []
    if degree >= 0:
        l = SemiInt.from_twice(degree + 1)
        for m in semi_range(-l, l):
            for n in semi_range(-l + _HALF, l - _HALF):
                row = SpinorFn.row(_from_grid([[
                    _t(l - _HALF, m + _HALF, n),
                    _t(l - _HALF, m - _HALF, n),
                ]]))
                out.append(BasisElement("Vprime", degree, l, m, n, row))
    else:
        l = SemiInt.from_twice(-degree - 3)
        for m in semi_range(-l - _HALF, l + _HALF):
            for n in semi_range(-l, l):
                row = SpinorFn.row(_from_grid([[
                    _inverted(_t(l + _HALF, m, n - _HALF)),
                    _inverted(_t(l + _HALF, m, n + _HALF)),
                ]]))
                out.append(BasisElement("Vprime", degree, l, m, n, row))
    return out


def basis(space: str, degree: int):
    """The graded basis of the requested space at the requested degree.

    Harmonic scalars come from 'H'; left-regular columns from 'V';
    right-regular rows from 'Vprime'.  Elements are ordered
    lexicographically by their (l, m, n) labels.
    """
    name = _NAMES.get(space)
    if name is None:
        raise BadParameters(
            f"unknown space {space!r}; choose from 'H', 'V', 'Vprime'")
    degree = int(degree)
    if degree in _EMPTY_DEGREES[name]:
        raise EmptySpace(f"{name}({degree}) is zero-dimensional")
    if name == "H":
        return _h_elements(degree)
    if name == "V":
        return _v_elements(degree)
    return _vprime_elements(degree)


# ---------------------------------------------------------------------------
# truncated kernel expansions
# ---------------------------------------------------------------------------

def _spins(top: SemiInt):
    """All spins 0, 1/2, 1, ... up to top inclusive (half-unit steps)."""
    return [SemiInt.from_twice(t) for t in range(0, top.twice + 1)]


def _as_point(p) -> Biquaternion:
    if isinstance(p, Biquaternion):
        return p
    arr = np.asarray(p, dtype=complex)
    if arr.shape != (2, 2):
        raise BadParameters("expansion points must be 2x2 matrices")
    vals = [QQi(Fraction(v.real), Fraction(v.imag)) for v in arr.reshape(-1)]
    return Biquaternion(*vals)


def _region_key(which_region: str) -> str:
    flat = "".join(str(which_region).split())
    if flat in ("|Y|<|X|", "Y<X", "inner"):
        return "inner"
    if flat in ("|X|<|Y|", "X<Y", "mirrored", "mirror"):
        return "mirror"
    raise BadParameters(
        f"unknown region {which_region!r}; use '|Y|<|X|' or '|X|<|Y|'")


class KernelExpansion:
    """Truncated separated series for one of the conformal kernels.

    Calling the object at a pair of points evaluates the partial sum
    exactly; it refuses points outside the declared convergence region.
    """

    __slots__ = ("kind", "region", "L_max")

    def __init__(self, kind: str, region: str, L_max):
        if kind not in ("k0", "k", "N2"):
            raise BadParameters("kind must be one of 'k0', 'k', 'N2'")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "region", _region_key(region))
        object.__setattr__(self, "L_max", SemiInt(L_max))

    def __setattr__(self, name, value):
        raise AttributeError("KernelExpansion is immutable")

    def __repr__(self):
        return (f"KernelExpansion(kind={self.kind!r}, region={self.region!r},"
                f" L_max={self.L_max})")

    def _check_region(self, X: Biquaternion, Y: Biquaternion):
        sx = np.linalg.svd(X.to_array(), compute_uv=False)
        sy = np.linalg.svd(Y.to_array(), compute_uv=False)
        if self.region == "inner":
            if not sy[0] < sx[-1]:
                raise RegionViolation(
                    "this expansion converges only where |Y| < |X|")
        else:
            if not sx[0] < sy[-1]:
                raise RegionViolation(
                    "the mirrored expansion converges only where |X| < |Y|")

    def __call__(self, X, Y):
        X, Y = _as_point(X), _as_point(Y)
        self._check_region(X, Y)
        if self.kind == "k0":
            return self._eval_k0(X, Y)
        if self.kind == "k":
            return self._eval_k(X, Y)
        return self._eval_n2(X, Y)

    def _eval_k0(self, X, Y):
        acc = QQi(0)
        if self.region == "inner":
            a, b = X.inverse(), Y
            scale = X.norm_N().inverse()
        else:
            a, b = X, Y.inverse()
            scale = Y.norm_N().inverse()
        for l in _spins(self.L_max):
            for m in semi_range(-l, l):
                for n in semi_range(-l, l):
                    acc = acc + _point_coeff(l, n, m, a) * _point_coeff(l, m, n, b)
        return acc * scale

    def _eval_k(self, X, Y):
        acc = [[QQi(0), QQi(0)], [QQi(0), QQi(0)]]
        if self.region == "inner":
            xi = X.inverse()
            nxi = X.norm_N().inverse()
            for l in _spins(self.L_max):
                for m in semi_range(-l - _HALF, l + _HALF):
                    for n in semi_range(-l, l):
                        col = (
                            (l - m + _HALF).as_fraction
                            * _point_coeff(l, n, m + _HALF, Y),
                            (l + m + _HALF).as_fraction
                            * _point_coeff(l, n, m - _HALF, Y),
                        )
                        row = (
                            _point_coeff(l + _HALF, m, n - _HALF, xi) * nxi,
                            _point_coeff(l + _HALF, m, n + _HALF, xi) * nxi,
                        )
                        for i in range(2):
                            for j in range(2):
                                acc[i][j] = acc[i][j] + col[i] * row[j]
        else:
            yi = Y.inverse()
            nyi = Y.norm_N().inverse()
            for l in _spins(self.L_max):
                for m in semi_range(-l, l):
                    for n in semi_range(-l + _HALF, l - _HALF):
                        col = (
                            (l - n + _HALF).as_fraction
                            * _point_coeff(l, n - _HALF, m, yi) * nyi,
                            (l + n + _HALF).as_fraction
                            * _point_coeff(l, n + _HALF, m, yi) * nyi,
                        )
                        row = (
                            _point_coeff(l - _HALF, m + _HALF, n, X),
                            _point_coeff(l - _HALF, m - _HALF, n, X),
                        )
                        for i in range(2):
                            for j in range(2):
                                acc[i][j] = acc[i][j] - col[i] * row[j]
        return Biquaternion(acc[0][0], acc[0][1], acc[1][0], acc[1][1])

    def _eval_n2(self, X, Y):
        k_top = self.L_max.twice // 2
        acc = QQi(0)
        if self.region == "inner":
            a, b = X.inverse(), Y
            na, nb = X.norm_N().inverse(), Y.norm_N()
        else:
            a, b = X, Y.inverse()
            na, nb = X.norm_N(), Y.norm_N().inverse()
        for l in _spins(self.L_max):
            block = QQi(0)
            for m in semi_range(-l, l):
                for n in semi_range(-l, l):
                    block = block + _point_coeff(l, n, m, a) * _point_coeff(l, m, n, b)
            weight = QQi(0)
            for k in range(k_top + 1):
                if self.region == "inner":
                    weight = weight + na ** (k + 2) * nb ** k
                else:
                    weight = weight + na ** k * nb ** (k + 2)
            acc = acc + QQi(l.twice + 1) * block * weight
        return acc


def expand_kernel(kind: str, which_region: str, L_max) -> KernelExpansion:
    """A callable partial sum of the separated series for the named kernel.

    kind 'k0' is the scalar kernel 1/N(X-Y); 'k' is the two-sided regular
    kernel (X-Y)^{-1}/N(X-Y); 'N2' is 1/N(X-Y)^2 (this one also truncates
    its inner geometric index at L_max).
    """
    return KernelExpansion(kind, which_region, L_max)
