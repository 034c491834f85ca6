"""Rational functions of biquaternion variables and the conformal calculus.

The symbolic class consists of matrices of polynomials in the entries of one
or two 2x2 variables, divided by integer powers of the determinant of each
variable.  The class is closed under the Dirac-type derivative pairs, the
degree operator, the second-order wave operator, the conformal group action
restricted to its three generator families, the Lie-algebra actions, the
Casimir element, and the Maxwell calculus in space-time coordinates.
"""

from __future__ import annotations

import numpy as np

from fractions import Fraction

from ._scalars import QQi, invert_exact
from .algebra import (
    Biquaternion,
    E0,
    E1,
    E2,
    E3,
    E0_TILDE,
    FracLinear,
    SymPowerRep,
    t_monomials,
)
from .errors import (
    BackendMismatch,
    BadParameters,
    NotPolynomial,
    SingularDenominator,
    UnsupportedGroupElement,
)

_I = QQi(0, 1)


# ---------------------------------------------------------------------------
# polynomial dictionaries: exponent tuple -> QQi coefficient
# ---------------------------------------------------------------------------

def _padd(p, q):
    out = dict(p)
    for e, c in q.items():
        s = out.get(e)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _pneg(p):
    return {e: -c for e, c in p.items()}


def _pscale(p, c):
    if c.is_zero():
        return {}
    return {e: v * c for e, v in p.items()}


def _pmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e)
            s = c1 * c2 if s is None else s + c1 * c2
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
    return out


def _pdiff(p, i):
    out = {}
    for e, c in p.items():
        if e[i]:
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            s = out.get(e2)
            add = c * QQi(e[i])
            s = add if s is None else s + add
            if s.is_zero():
                out.pop(e2, None)
            else:
                out[e2] = s
    return out


def _peval(p, vals):
    total = QQi(0)
    for e, c in p.items():
        term = c
        for v, k in zip(vals, e):
            if k:
                term = term * v ** k
        total = total + term
    return total


def _pcompose(p, images, nv_new):
    """Substitute variable i by the polynomial images[i] (dicts over nv_new
    variables)."""
    pows = [[{(0,) * nv_new: QQi(1)}, img] for img in images]
    out = {}
    for e, c in p.items():
        term = {(0,) * nv_new: c}
        for i, k in enumerate(e):
            if not k:
                continue
            cache = pows[i]
            while len(cache) <= k:
                cache.append(_pmul(cache[-1], cache[1]))
            term = _pmul(term, cache[k])
        out = _padd(out, term)
    return out


def _pn_block(nvars, b):
    """The determinant polynomial of the variable in block b."""
    nv = 4 * nvars
    e = [0] * nv
    e[4 * b], e[4 * b + 3] = 1, 1
    lead = tuple(e)
    e = [0] * nv
    e[4 * b + 1], e[4 * b + 2] = 1, 1
    anti = tuple(e)
    return {lead: QQi(1), anti: QQi(-1)}


def _pdiv_n(p, b):
    """Exact division of p by the block-b determinant; None if not divisible."""
    rem = dict(p)
    quo = {}
    lo = 4 * b
    while rem:
        top = max(e[lo:lo + 4] for e in rem)
        if not (top[0] >= 1 and top[3] >= 1):
            return None
        qexp = (top[0] - 1, top[1], top[2], top[3] - 1)
        moved = {}
        for e, c in list(rem.items()):
            if e[lo:lo + 4] == top:
                qe = e[:lo] + qexp + e[lo + 4:]
                quo[qe] = c
                moved[qe] = c
                del rem[e]
        # subtract the anti-diagonal tail of (moved terms) * determinant
        for qe, c in moved.items():
            blk = qe[lo:lo + 4]
            te = qe[:lo] + (blk[0], blk[1] + 1, blk[2] + 1, blk[3]) + qe[lo + 4:]
            s = rem.get(te)
            s = c if s is None else s + c
            if s.is_zero():
                rem.pop(te, None)
            else:
                rem[te] = s
    return quo


def _pdeg_block(p, b):
    lo = 4 * b
    return max((sum(e[lo:lo + 4]) for e in p), default=0)


# ---------------------------------------------------------------------------
# the rational-function class
# ---------------------------------------------------------------------------

class RationalFn:
    """A matrix of polynomials over one or two 2x2 variables, divided by
    N(Z_v)^k_v.

    Entry dictionaries map exponent tuples (z11, z12, z21, z22[, w11, ...])
    to exact Gaussian-rational coefficients.  Instances are immutable and
    kept in canonical form: the numerator matrix is not divisible by any
    N(Z_v) while k_v > 0.
    """

    __slots__ = ("shape", "nvars", "dpow", "entries")

    def __init__(self, entries, dpow, nvars=1, shape=None):
        rows = tuple(tuple(dict(e) for e in row) for row in entries)
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        dpow = tuple(int(k) for k in dpow)
        if len(dpow) != nvars:
            raise ValueError("denominator powers must match variable count")
        # fold negative powers into the numerator
        for b, k in enumerate(dpow):
            while k < 0:
                nb = _pn_block(nvars, b)
                rows = tuple(tuple(_pmul(e, nb) for e in row) for row in rows)
                k += 1
            dpow = dpow[:b] + (k,) + dpow[b + 1:]
        if all(not e for row in rows for e in row):
            dpow = (0,) * nvars
        # cancel common determinant factors
        for b in range(nvars):
            while dpow[b] > 0:
                divided = []
                ok = True
                for row in rows:
                    new_row = []
                    for e in row:
                        q = _pdiv_n(e, b)
                        if q is None:
                            ok = False
                            break
                        new_row.append(q)
                    if not ok:
                        break
                    divided.append(tuple(new_row))
                if not ok:
                    break
                rows = tuple(divided)
                dpow = dpow[:b] + (dpow[b] - 1,) + dpow[b + 1:]
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "dpow", dpow)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(shape=(1, 1), nvars=1) -> "RationalFn":
        rows = tuple(tuple({} for _ in range(shape[1])) for _ in range(shape[0]))
        return RationalFn(rows, (0,) * nvars, nvars, shape)

    @staticmethod
    def constant(c, nvars=1) -> "RationalFn":
        return RationalFn((({(0,) * (4 * nvars): QQi.coerce(c)},),), (0,) * nvars, nvars)

    @staticmethod
    def constant_matrix(z: Biquaternion, nvars=1) -> "RationalFn":
        nv = 4 * nvars
        rows = tuple(
            tuple({(0,) * nv: c} if not c.is_zero() else {} for c in row)
            for row in z.entries()
        )
        return RationalFn(rows, (0,) * nvars, nvars, (2, 2))

    @staticmethod
    def coordinate_entry(i, j, var=0, nvars=1) -> "RationalFn":
        nv = 4 * nvars
        e = [0] * nv
        e[4 * var + 2 * i + j] = 1
        return RationalFn((({tuple(e): QQi(1)},),), (0,) * nvars, nvars)

    @staticmethod
    def coordinate(var=0, nvars=1) -> "RationalFn":
        nv = 4 * nvars
        rows = []
        for i in range(2):
            row = []
            for j in range(2):
                e = [0] * nv
                e[4 * var + 2 * i + j] = 1
                row.append({tuple(e): QQi(1)})
            rows.append(tuple(row))
        return RationalFn(tuple(rows), (0,) * nvars, nvars, (2, 2))

    @staticmethod
    def inverse_norm(power=1, var=0, nvars=1) -> "RationalFn":
        dpow = [0] * nvars
        dpow[var] = power
        return RationalFn((({(0,) * (4 * nvars): QQi(1)},),), tuple(dpow), nvars)

    @staticmethod
    def k_function() -> "RationalFn":
        """Z^{-1} / N(Z), the two-sided regular kernel with a point source."""
        return RationalFn.coordinate().adjugate_of_value() * RationalFn.inverse_norm(2)

    # -- inspection -----------------------------------------------------------

    @property
    def numerator(self):
        """The numerator as a map from exponent tuples to coefficient matrices."""
        out = {}
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                for exp, c in e.items():
                    mat = out.setdefault(
                        exp, [[QQi(0)] * self.shape[1] for _ in range(self.shape[0])]
                    )
                    mat[i][j] = c
        return {e: tuple(tuple(r) for r in m) for e, m in out.items()}

    @property
    def denom_power(self):
        return self.dpow[0] if self.nvars == 1 else self.dpow

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    @property
    def is_polynomial(self) -> bool:
        return all(k == 0 for k in self.dpow)

    def is_scalar(self) -> bool:
        """True when the value is a scalar multiple of the identity."""
        if self.shape == (1, 1):
            return True
        if self.shape[0] != self.shape[1]:
            return False
        d = self.entries[0][0]
        for i in range(self.shape[0]):
            for j in range(self.shape[1]):
                if i == j:
                    if self.entries[i][j] != d:
                        return False
                elif self.entries[i][j]:
                    return False
        return True

    def homogeneous_degree(self):
        """The common degree (variables count +1, inverse determinants -2),
        or None when the terms are not all of one degree."""
        shift = -2 * sum(self.dpow)
        degs = {
            sum(exp) + shift
            for row in self.entries
            for e in row
            for exp in e
        }
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def total_degree(self) -> int:
        return max(
            (sum(exp) for row in self.entries for e in row for exp in e),
            default=0,
        )

    def term_count(self) -> int:
        return sum(len(e) for row in self.entries for e in row)

    def __repr__(self):
        return (
            f"RationalFn(shape={self.shape}, nvars={self.nvars}, "
            f"dpow={self.dpow}, terms={self.term_count()})"
        )

    # -- ring structure -------------------------------------------------------

    def _common_denominator(self, other):
        dpow = tuple(max(a, b) for a, b in zip(self.dpow, other.dpow))

        def raise_to(f):
            rows = f.entries
            for b in range(f.nvars):
                diff = dpow[b] - f.dpow[b]
                if diff:
                    nb = _pn_block(f.nvars, b)
                    mult = nb
                    for _ in range(diff - 1):
                        mult = _pmul(mult, nb)
                    rows = tuple(tuple(_pmul(e, mult) for e in row) for row in rows)
            return rows

        return dpow, raise_to(self), raise_to(other)

    def _broadcast_pair(self, other):
        if self.shape == other.shape:
            return self, other
        if self.shape == (1, 1) and other.shape[0] == other.shape[1]:
            return self._embed_scalar(other.shape[0]), other
        if other.shape == (1, 1) and self.shape[0] == self.shape[1]:
            return self, other._embed_scalar(self.shape[0])
        raise ValueError(f"incompatible shapes {self.shape} and {other.shape}")

    def _embed_scalar(self, n):
        d = self.entries[0][0]
        rows = tuple(
            tuple(dict(d) if i == j else {} for j in range(n)) for i in range(n)
        )
        return RationalFn(rows, self.dpow, self.nvars, (n, n))

    def __add__(self, other):
        if isinstance(other, (QQi, int, Fraction)):
            other = RationalFn.constant(other, self.nvars)
        if isinstance(other, Biquaternion):
            other = RationalFn.constant_matrix(other, self.nvars)
        if not isinstance(other, RationalFn):
            return NotImplemented
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")
        a, b = self._broadcast_pair(other)
        dpow, rows_a, rows_b = a._common_denominator(b)
        rows = tuple(
            tuple(_padd(ea, eb) for ea, eb in zip(ra, rb))
            for ra, rb in zip(rows_a, rows_b)
        )
        return RationalFn(rows, dpow, self.nvars, a.shape)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if isinstance(other, (QQi, int, Fraction)):
            other = RationalFn.constant(other, self.nvars)
        elif isinstance(other, Biquaternion):
            other = RationalFn.constant_matrix(other, self.nvars)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.__add__(-other)

    def __neg__(self):
        rows = tuple(tuple(_pneg(e) for e in row) for row in self.entries)
        return RationalFn(rows, self.dpow, self.nvars, self.shape)

    def __mul__(self, other):
        if isinstance(other, (QQi, int, Fraction)):
            c = QQi.coerce(other)
            rows = tuple(tuple(_pscale(e, c) for e in row) for row in self.entries)
            return RationalFn(rows, self.dpow, self.nvars, self.shape)
        if isinstance(other, Biquaternion):
            other = RationalFn.constant_matrix(other, self.nvars)
        if not isinstance(other, RationalFn):
            return NotImplemented
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")
        dpow = tuple(a + b for a, b in zip(self.dpow, other.dpow))
        if self.shape == (1, 1) or other.shape == (1, 1):
            scal = self if self.shape == (1, 1) else other
            mat = other if self.shape == (1, 1) else self
            s = scal.entries[0][0]
            rows = tuple(tuple(_pmul(s, e) for e in row) for row in mat.entries)
            return RationalFn(rows, dpow, self.nvars, mat.shape)
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply shapes {self.shape} x {other.shape}")
        rows = []
        for i in range(self.shape[0]):
            row = []
            for j in range(other.shape[1]):
                acc = {}
                for k in range(self.shape[1]):
                    acc = _padd(acc, _pmul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            rows.append(tuple(row))
        return RationalFn(tuple(rows), dpow, self.nvars, (self.shape[0], other.shape[1]))

    def __rmul__(self, other):
        if isinstance(other, (QQi, int, Fraction)):
            return self.__mul__(other)
        if isinstance(other, Biquaternion):
            return RationalFn.constant_matrix(other, self.nvars) * self
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.nvars == other.nvars
            and self.dpow == other.dpow
            and self.entries == other.entries
        )

    __hash__ = None

    # -- matrix structure ------------------------------------------------------

    def entry(self, i, j) -> "RationalFn":
        return RationalFn(((self.entries[i][j],),), self.dpow, self.nvars)

    def transpose(self) -> "RationalFn":
        rows = tuple(
            tuple(self.entries[i][j] for i in range(self.shape[0]))
            for j in range(self.shape[1])
        )
        return RationalFn(rows, self.dpow, self.nvars, (self.shape[1], self.shape[0]))

    def plus(self) -> "RationalFn":
        """The adjugate, entrywise on the value: (F22, -F12; -F21, F11)."""
        f = self._as_two_by_two()
        e = f.entries
        rows = (
            (e[1][1], _pneg(e[0][1])),
            (_pneg(e[1][0]), e[0][0]),
        )
        return RationalFn(rows, f.dpow, f.nvars, (2, 2))

    def trace(self) -> "RationalFn":
        if self.shape[0] != self.shape[1]:
            raise ValueError("trace needs a square matrix")
        acc = {}
        for i in range(self.shape[0]):
            acc = _padd(acc, self.entries[i][i])
        return RationalFn(((acc,),), self.dpow, self.nvars)

    def re_part(self) -> "RationalFn":
        """Half the trace: the scalar e0-component of a 2x2 value."""
        return self.trace() * Fraction(1, 2)

    def _as_two_by_two(self) -> "RationalFn":
        if self.shape == (2, 2):
            return self
        if self.shape == (1, 1):
            return self._embed_scalar(2)
        raise ValueError(f"need a 2x2 (or scalar) value, got shape {self.shape}")

    # -- differentiation -------------------------------------------------------

    def derivative(self, i, j, var=0) -> "RationalFn":
        """Partial derivative with respect to entry (i, j) of variable var."""
        idx = 4 * var + 2 * i + j
        k = self.dpow[var]
        if k == 0:
            rows = tuple(tuple(_pdiff(e, idx) for e in row) for row in self.entries)
            return RationalFn(rows, self.dpow, self.nvars, self.shape)
        nb = _pn_block(self.nvars, var)
        dn = _pdiff(nb, idx)
        rows = []
        for row in self.entries:
            new_row = []
            for e in row:
                term = _pmul(_pdiff(e, idx), nb)
                term = _padd(term, _pscale(_pmul(e, dn), QQi(-k)))
                new_row.append(term)
            rows.append(tuple(new_row))
        dpow = self.dpow[:var] + (k + 1,) + self.dpow[var + 1:]
        return RationalFn(tuple(rows), dpow, self.nvars, self.shape)

    def del_left(self, var=0) -> "RationalFn":
        """Left half-gradient: (del F)_{ik} = sum_j d F_{jk} / d z_{ji}."""
        f = self._as_two_by_two() if self.shape[0] != 2 else self
        rows = []
        for i in range(2):
            row = []
            for k in range(f.shape[1]):
                acc = RationalFn.zero((1, 1), f.nvars)
                for j in range(2):
                    acc = acc + f.entry(j, k).derivative(j, i, var)
                row.append(acc)
            rows.append(row)
        return _from_grid(rows)

    def del_right(self, var=0) -> "RationalFn":
        """Right half-gradient: (F del)_{ik} = sum_j d F_{ij} / d z_{kj}."""
        f = self._as_two_by_two() if self.shape[1] != 2 else self
        rows = []
        for i in range(f.shape[0]):
            row = []
            for k in range(2):
                acc = RationalFn.zero((1, 1), f.nvars)
                for j in range(2):
                    acc = acc + f.entry(i, j).derivative(k, j, var)
                row.append(acc)
            rows.append(row)
        return _from_grid(rows)

    def del_plus_left(self, var=0) -> "RationalFn":
        """Left conjugate half-gradient, built from the adjugate pattern."""
        f = self._as_two_by_two() if self.shape[0] != 2 else self
        top = []
        bottom = []
        for k in range(f.shape[1]):
            col0 = f.entry(0, k)
            col1 = f.entry(1, k)
            top.append(col0.derivative(1, 1, var) - col1.derivative(1, 0, var))
            bottom.append(col1.derivative(0, 0, var) - col0.derivative(0, 1, var))
        return _from_grid([top, bottom])

    def del_plus_right(self, var=0) -> "RationalFn":
        """Right conjugate half-gradient."""
        f = self._as_two_by_two() if self.shape[1] != 2 else self
        rows = []
        for i in range(f.shape[0]):
            g0 = f.entry(i, 0)
            g1 = f.entry(i, 1)
            rows.append(
                [
                    g0.derivative(1, 1, var) - g1.derivative(0, 1, var),
                    g1.derivative(0, 0, var) - g0.derivative(1, 0, var),
                ]
            )
        return _from_grid(rows)

    def laplacian(self, var=0) -> "RationalFn":
        """4 (d11 d22 - d12 d21), applied entrywise."""
        a = self.derivative(0, 0, var).derivative(1, 1, var)
        b = self.derivative(0, 1, var).derivative(1, 0, var)
        return (a - b) * 4

    def deg_tilde(self, var=0) -> "RationalFn":
        """Euler degree operator plus one."""
        acc = self
        for i in range(2):
            for j in range(2):
                zed = RationalFn.coordinate_entry(i, j, var, self.nvars)
                acc = acc + zed * self.derivative(i, j, var)
        return acc

    def mx(self) -> "RationalFn":
        """Second-order conformal operator on 2x2 values."""
        f = self._as_two_by_two()
        return f.del_left().del_right() * 4 - f.plus().laplacian()

    # -- substitutions -----------------------------------------------------------

    def translate(self, *shifts) -> "RationalFn":
        """Substitute Z_v -> Z_v + shift_v; only for polynomial numerators."""
        if not self.is_polynomial:
            raise NotPolynomial("translation leaves the rational class unless k = 0")
        if len(shifts) != self.nvars:
            raise ValueError("need one shift per variable")
        nv = 4 * self.nvars
        images = []
        for v, sh in enumerate(shifts):
            vals = (sh.z11, sh.z12, sh.z21, sh.z22)
            for t in range(4):
                e = [0] * nv
                e[4 * v + t] = 1
                img = {tuple(e): QQi(1)}
                if not vals[t].is_zero():
                    img[(0,) * nv] = vals[t]
                images.append(img)
        rows = tuple(
            tuple(_pcompose(e, images, nv) for e in row) for row in self.entries
        )
        return RationalFn(rows, self.dpow, self.nvars, self.shape)

    def sandwich(self, a: Biquaternion, d: Biquaternion, var=0) -> "RationalFn":
        """Substitute Z_var -> a Z_var d for constant invertible a, d."""
        n_ad = a.norm_N() * d.norm_N()
        if n_ad.is_zero():
            raise SingularDenominator("sandwich by a non-invertible constant")
        nv = 4 * self.nvars
        (a11, a12), (a21, a22) = a.entries()
        (d11, d12), (d21, d22) = d.entries()
        images = []
        for v in range(self.nvars):
            for i in range(2):
                for j in range(2):
                    if v != var:
                        e = [0] * nv
                        e[4 * v + 2 * i + j] = 1
                        images.append({tuple(e): QQi(1)})
                        continue
                    img = {}
                    for k in range(2):
                        for m in range(2):
                            coef = (a11 if i == 0 else a21) if k == 0 else (
                                a12 if i == 0 else a22
                            )
                            coef = coef * ((d11 if j == 0 else d12) if m == 0 else (
                                d21 if j == 0 else d22
                            ))
                            if coef.is_zero():
                                continue
                            e = [0] * nv
                            e[4 * v + 2 * k + m] = 1
                            img = _padd(img, {tuple(e): coef})
                    images.append(img)
        scale = n_ad.inverse() ** self.dpow[var]
        rows = tuple(
            tuple(_pscale(_pcompose(e, images, nv), scale) for e in row)
            for row in self.entries
        )
        return RationalFn(rows, self.dpow, self.nvars, self.shape)

    def compose_adjugate(self, var=0) -> "RationalFn":
        """Substitute Z_var -> Z_var^+ (entry swap with sign flips)."""
        nv = 4 * self.nvars
        images = []
        for v in range(self.nvars):
            base = 4 * v
            if v != var:
                order = ((0, QQi(1)), (1, QQi(1)), (2, QQi(1)), (3, QQi(1)))
            else:
                order = ((3, QQi(1)), (1, QQi(-1)), (2, QQi(-1)), (0, QQi(1)))
            for t, c in order:
                e = [0] * nv
                e[base + t] = 1
                images.append({tuple(e): c})
        rows = tuple(
            tuple(_pcompose(e, images, nv) for e in row) for row in self.entries
        )
        return RationalFn(rows, self.dpow, self.nvars, self.shape)

    def invert_var(self, var=0) -> "RationalFn":
        """Substitute Z_var -> Z_var^{-1}."""
        deg = max(_pdeg_block(e, var) for row in self.entries for e in row)
        nb = _pn_block(self.nvars, var)
        npows = [{(0,) * (4 * self.nvars): QQi(1)}]
        for _ in range(deg):
            npows.append(_pmul(npows[-1], nb))
        adj = self.compose_adjugate(var)
        rows = []
        for row in adj.entries:
            new_row = []
            for e in row:
                acc = {}
                for exp, c in e.items():
                    d = sum(exp[4 * var:4 * var + 4])
                    acc = _padd(acc, _pmul({exp: c}, npows[deg - d]))
                new_row.append(acc)
            rows.append(tuple(new_row))
        dpow = list(self.dpow)
        dpow[var] = deg - dpow[var]
        return RationalFn(tuple(rows), tuple(dpow), self.nvars, self.shape)

    def adjugate_of_value(self) -> "RationalFn":
        """Alias of plus(), named for use in kernel constructions."""
        return self.plus()

    def tensor(self, other: "RationalFn") -> "RationalFn":
        """Two-variable product f(Z1) g(Z2) of two one-variable scalars."""
        if self.nvars != 1 or other.nvars != 1:
            raise ValueError("tensor factors must each have one variable")
        if self.shape != (1, 1) or other.shape != (1, 1):
            raise ValueError("tensor factors must be scalar-shaped")
        p = {
            e + (0, 0, 0, 0): c for e, c in self.entries[0][0].items()
        }
        q = {
            (0, 0, 0, 0) + e: c for e, c in other.entries[0][0].items()
        }
        return RationalFn(
            ((_pmul(p, q),),), (self.dpow[0], other.dpow[0]), 2
        )

    def promote(self, slot: int) -> "RationalFn":
        """View a one-variable function as a two-variable one via slot 0 or 1."""
        if self.nvars != 1:
            raise ValueError("promote applies to one-variable functions")
        pad = (0, 0, 0, 0)
        if slot == 0:
            rows = tuple(
                tuple({e + pad: c for e, c in ent.items()} for ent in row)
                for row in self.entries
            )
            dpow = (self.dpow[0], 0)
        else:
            rows = tuple(
                tuple({pad + e: c for e, c in ent.items()} for ent in row)
                for row in self.entries
            )
            dpow = (0, self.dpow[0])
        return RationalFn(rows, dpow, 2, self.shape)

    def restrict_diagonal(self) -> "RationalFn":
        """Set both variables of a two-variable function equal."""
        if self.nvars != 2:
            raise ValueError("diagonal restriction needs two variables")
        images = []
        for v in range(2):
            for t in range(4):
                e = [0, 0, 0, 0]
                e[t] = 1
                images.append({tuple(e): QQi(1)})
        rows = tuple(
            tuple(_pcompose(e, images, 4) for e in row) for row in self.entries
        )
        return RationalFn(rows, (self.dpow[0] + self.dpow[1],), 1, self.shape)

    # -- evaluation ---------------------------------------------------------------

    def eval_exact(self, *points):
        if len(points) != self.nvars:
            raise ValueError("need one evaluation point per variable")
        vals = []
        scale = QQi(1)
        for v, pt in enumerate(points):
            vals.extend((pt.z11, pt.z12, pt.z21, pt.z22))
            if self.dpow[v]:
                n = pt.norm_N()
                if n.is_zero():
                    raise SingularDenominator(
                        "evaluation point lies on the null cone of the denominator"
                    )
                scale = scale * n.inverse() ** self.dpow[v]
        vals = tuple(vals)
        out = [
            [_peval(e, vals) * scale for e in row] for row in self.entries
        ]
        if self.shape == (1, 1):
            return out[0][0]
        if self.shape == (2, 2):
            return Biquaternion(out[0][0], out[0][1], out[1][0], out[1][1])
        return tuple(tuple(r) for r in out)

    def compile_numpy(self):
        """Return a vectorized evaluator over complex arrays of shape
        (..., 2, 2), one argument per variable.  Scalar-shaped functions
        return a bare array, otherwise shape (..., r, c)."""
        terms = [
            [
                [(complex(c), exp) for exp, c in e.items()]
                for e in row
            ]
            for row in self.entries
        ]
        shape, nvars, dpow = self.shape, self.nvars, self.dpow

        def evaluate(*zs):
            if len(zs) != nvars:
                raise ValueError("need one array argument per variable")
            flats = []
            dets = []
            for z in zs:
                z = np.asarray(z, dtype=complex)
                flats.extend((z[..., 0, 0], z[..., 0, 1], z[..., 1, 0], z[..., 1, 1]))
                dets.append(z[..., 0, 0] * z[..., 1, 1] - z[..., 0, 1] * z[..., 1, 0])
            base = np.zeros(np.broadcast(*flats).shape, dtype=complex) if flats else 0
            den = 1
            for v, k in enumerate(dpow):
                if k:
                    den = den * dets[v] ** k
            rows_out = []
            for row in terms:
                row_out = []
                for ent in row:
                    acc = np.zeros_like(base)
                    for coeff, exp in ent:
                        term = np.full_like(base, coeff)
                        for idx, k in enumerate(exp):
                            if k:
                                term = term * flats[idx] ** k
                        acc = acc + term
                    if dpow and any(dpow):
                        acc = acc / den
                    row_out.append(acc)
                rows_out.append(row_out)
            if shape == (1, 1):
                return rows_out[0][0]
            return np.stack(
                [np.stack(r, axis=-1) for r in rows_out], axis=-2
            )

        return evaluate


def _from_grid(grid) -> "RationalFn":
    """Assemble a matrix function from a grid of scalar-shaped functions."""
    nvars = grid[0][0].nvars
    dpow = tuple(
        max(cell.dpow[v] for row in grid for cell in row) for v in range(nvars)
    )
    rows = []
    for row in grid:
        new_row = []
        for cell in row:
            e = cell.entries[0][0]
            for v in range(nvars):
                diff = dpow[v] - cell.dpow[v]
                if diff:
                    nb = _pn_block(nvars, v)
                    for _ in range(diff):
                        e = _pmul(e, nb)
            new_row.append(e)
        rows.append(tuple(new_row))
    return RationalFn(tuple(rows), dpow, nvars, (len(grid), len(grid[0])))


# ---------------------------------------------------------------------------
# spinor-valued functions
# ---------------------------------------------------------------------------

class SpinorFn:
    """A column- or row-valued function with its transformation chirality."""

    __slots__ = ("fn", "chirality")

    def __init__(self, fn: RationalFn, chirality: str):
        if chirality not in ("left", "right"):
            raise BadParameters("chirality must be 'left' or 'right'")
        want = (2, 1) if chirality == "left" else (1, 2)
        if fn.shape != want:
            raise BadParameters(
                f"{chirality} spinor must have shape {want}, got {fn.shape}"
            )
        object.__setattr__(self, "fn", fn)
        object.__setattr__(self, "chirality", chirality)

    def __setattr__(self, name, value):
        raise AttributeError("SpinorFn is immutable")

    @staticmethod
    def column(fn: RationalFn) -> "SpinorFn":
        return SpinorFn(fn, "left")

    @staticmethod
    def row(fn: RationalFn) -> "SpinorFn":
        return SpinorFn(fn, "right")

    def eval_exact(self, *points):
        vals = self.fn.eval_exact(*points)
        if self.chirality == "left":
            return (vals[0][0], vals[1][0])
        return (vals[0][0], vals[0][1])

    def __eq__(self, other):
        if not isinstance(other, SpinorFn):
            return NotImplemented
        return self.chirality == other.chirality and self.fn == other.fn

    __hash__ = None

    def __repr__(self):
        return f"SpinorFn({self.chirality}, {self.fn!r})"


def spinor_pairing(row: SpinorFn, col: SpinorFn) -> RationalFn:
    """The invariant pairing s'_1 s_1 + s'_2 s_2 as a scalar function."""
    if row.chirality != "right" or col.chirality != "left":
        raise BadParameters("pairing takes a row spinor and a column spinor")
    return row.fn * col.fn


# ---------------------------------------------------------------------------
# named operators and regularity
# ---------------------------------------------------------------------------

_OPERATORS = {
    "nabla_left": lambda f: f.del_left() * 2,
    "nabla_right": lambda f: f.del_right() * 2,
    "nabla_plus_left": lambda f: f.del_plus_left() * 2,
    "nabla_plus_right": lambda f: f.del_plus_right() * 2,
    "laplacian": lambda f: f.laplacian(),
    "deg_tilde": lambda f: f.deg_tilde(),
    "mx": lambda f: f.mx(),
}


def apply_operator(op: str, f):
    """Apply one of the named conformal differential operators."""
    if op not in _OPERATORS:
        raise BadParameters(f"unknown operator {op!r}; choose from "
                            f"{sorted(_OPERATORS)}")
    if isinstance(f, SpinorFn):
        side = {"nabla_left": "left", "nabla_plus_left": "left",
                "nabla_right": "right", "nabla_plus_right": "right"}.get(op)
        if side is not None and side != f.chirality:
            raise BadParameters(
                f"operator {op} acts on {side} spinors, got {f.chirality}"
            )
        out = _OPERATORS[op](f.fn)
        if side is not None:
            return SpinorFn(out, f.chirality)
        return out
    if not isinstance(f, RationalFn):
        raise BackendMismatch(
            "symbolic operators require the exact rational-function backend"
        )
    return _OPERATORS[op](f)


def is_regular(f, side: str = "left") -> bool:
    """True when the conjugate half-gradient annihilates f on the given side."""
    if side not in ("left", "right"):
        raise BadParameters("side must be 'left' or 'right'")
    if isinstance(f, SpinorFn):
        if side != f.chirality:
            raise BadParameters("spinor chirality does not match the tested side")
        f = f.fn
    if not isinstance(f, RationalFn):
        raise BackendMismatch(
            "regularity test requires the exact rational-function backend"
        )
    if side == "left":
        return f.del_plus_left().is_zero()
    return f.del_plus_right().is_zero()


# ---------------------------------------------------------------------------
# the group action on functions
# ---------------------------------------------------------------------------

_SCALAR_REPS = ("pi0_l", "pi0_r", "rho_1")
_ACT_REPS = (
    "pi_l", "pi_r", "pi0_l", "pi0_r",
    "rho_1", "rho_2", "rho_2_prime", "rho_n", "rho_n_prime",
)


def tau_fn(n: int, m: RationalFn) -> RationalFn:
    """The n-dimensional symmetric-power matrix of a 2x2 function argument."""
    rep = SymPowerRep(n)
    labs = rep.labels()
    l2 = n - 1
    e11 = m.entry(0, 0)
    e12 = m.entry(0, 1)
    e21 = m.entry(1, 0)
    e22 = m.entry(1, 1)
    pieces = (e11, e12, e21, e22)
    grid = []
    for a in labs:
        row = []
        for b in labs:
            acc = RationalFn.zero((1, 1), m.nvars)
            for coef, exps in t_monomials(l2, a.twice, b.twice):
                term = RationalFn.constant(coef, m.nvars)
                for piece, k in zip(pieces, exps):
                    for _ in range(k):
                        term = term * piece
                acc = acc + term
            row.append(acc)
        grid.append(row)
    return _from_grid(grid)


def tau_numpy(n: int, m):
    """Vectorized symmetric-power matrix: (..., 2, 2) -> (..., n, n)."""
    m = np.asarray(m, dtype=complex)
    labs = range(-(n - 1), n, 2)
    flats = (m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1])
    rows = []
    for a2 in labs:
        row = []
        for b2 in labs:
            acc = np.zeros(m.shape[:-2], dtype=complex)
            for coef, exps in t_monomials(n - 1, a2, b2):
                term = np.full(m.shape[:-2], complex(coef))
                for flat, k in zip(flats, exps):
                    if k:
                        term = term * flat ** k
                acc = acc + term
            row.append(acc)
        rows.append(np.stack(row, axis=-1))
    return np.stack(rows, axis=-2)


def _rep_dimension(rep, n, f):
    if rep in ("rho_n", "rho_n_prime"):
        if n is None:
            n = f.shape[0] if isinstance(f, RationalFn) else None
        if not isinstance(n, int) or n < 1:
            raise BadParameters("rho_n actions need the dimension n")
        return n
    return {"rho_1": 1, "rho_2": 2, "rho_2_prime": 2}.get(rep)


def act(rep: str, h: FracLinear, f, n: int | None = None):
    """Exact action of a group generator on a symbolic function.

    Supported elements are the three generator families (translations,
    diagonal elements, the inversion); anything else raises
    UnsupportedGroupElement.  Spinor inputs pair with pi_l / pi_r.
    """
    if rep not in _ACT_REPS:
        raise BadParameters(f"unknown representation {rep!r}")
    if isinstance(f, SpinorFn):
        want = "left" if rep == "pi_l" else "right" if rep == "pi_r" else None
        if want is None:
            raise BadParameters("spinor inputs transform under pi_l or pi_r")
        if f.chirality != want:
            raise BadParameters("spinor chirality does not match the action")
        return SpinorFn(act(rep, h, f.fn, n), f.chirality)
    if not isinstance(f, RationalFn):
        raise BackendMismatch("exact action requires a RationalFn input")
    if f.nvars != 1:
        raise BadParameters("group action applies to one-variable functions")
    kind = h.classify()
    if kind is None:
        raise UnsupportedGroupElement(
            "exact action supports translations, diagonal elements and the "
            "inversion; use act_pointwise for other elements"
        )
    name, data = kind
    ndim = _rep_dimension(rep, n, f)

    if name == "translation":
        return f.translate(data)

    if name == "diagonal":
        a, d = data
        sub = f.sandwich(a, d.inverse())
        na, nd = a.norm_N(), d.norm_N()
        if rep == "pi0_l":
            return sub * nd.inverse()
        if rep == "pi0_r":
            return sub * na
        if rep == "pi_l":
            return (d.inverse() * nd.inverse()) * sub
        if rep == "pi_r":
            return sub * (a * na)
        if rep == "rho_1":
            return sub * (na / nd)
        if rep == "rho_2":
            return (d.inverse() * nd.inverse()) * sub * (a * na)
        if rep == "rho_2_prime":
            return (a.inverse() * na) * sub * (d * nd.inverse())
        tau = SymPowerRep(ndim)
        if rep == "rho_n":
            left = _const_rows(tau.apply(d.inverse())) * nd.inverse()
            right = _const_rows(tau.apply(a)) * na
        else:
            left = _const_rows(tau.apply(a.inverse())) * na
            right = _const_rows(tau.apply(d)) * nd.inverse()
        return left * sub * right

    # inversion
    sub = f.invert_var()
    n1 = RationalFn.inverse_norm(1)
    if rep in ("pi0_l", "pi0_r"):
        return sub * n1
    if rep == "rho_1":
        return sub * RationalFn.inverse_norm(2)
    kf = RationalFn.k_function()
    if rep == "pi_l":
        return kf * sub
    if rep == "pi_r":
        return -(sub * kf)
    if rep == "rho_2":
        return -(kf * sub * kf)
    zed = RationalFn.coordinate()
    if rep == "rho_2_prime":
        return -((zed * n1) * sub * (zed * n1))
    adjpart = tau_fn(ndim, RationalFn.coordinate().plus())
    zpart = tau_fn(ndim, RationalFn.coordinate())
    sign = QQi((-1) ** (ndim - 1))
    if rep == "rho_n":
        left = adjpart * RationalFn.inverse_norm(ndim)
        right = adjpart * RationalFn.inverse_norm(ndim) * sign
        return left * sub * right
    left = zpart * n1 * sign
    right = zpart * n1
    return left * sub * right


def _const_rows(rows) -> RationalFn:
    n = len(rows)
    grid = [
        [RationalFn.constant(c) for c in row]
        for row in rows
    ]
    return _from_grid(grid) if n > 1 else grid[0][0]


def act_two_var(h: FracLinear, f: RationalFn) -> RationalFn:
    """Exact two-variable scalar action, left-type prefactor in the first
    slot, right-type in the second."""
    if not isinstance(f, RationalFn) or f.nvars != 2:
        raise BackendMismatch("two-variable action requires a two-variable RationalFn")
    kind = h.classify()
    if kind is None:
        raise UnsupportedGroupElement("only generator families act exactly")
    name, data = kind
    if name == "translation":
        return f.translate(data, data)
    if name == "diagonal":
        a, d = data
        sub = f.sandwich(a, d.inverse(), var=0).sandwich(a, d.inverse(), var=1)
        return sub * (a.norm_N() / d.norm_N())
    sub = f.invert_var(0).invert_var(1)
    return sub * RationalFn.inverse_norm(1, var=0, nvars=2) * RationalFn.inverse_norm(
        1, var=1, nvars=2
    )


def act_pointwise(rep: str, h: FracLinear, f, n: int | None = None):
    """Float-backend action: returns a closure over (..., 2, 2) arrays.

    Any invertible element is accepted; f may be a RationalFn or a callable."""
    if rep not in _ACT_REPS:
        raise BadParameters(f"unknown representation {rep!r}")
    fn = f.compile_numpy() if isinstance(f, RationalFn) else f
    ndim = _rep_dimension(rep, n, f if isinstance(f, RationalFn) else None)
    a, b, c, d = (blk.to_array() for blk in h.inverse_blocks())
    ap, bp, cp, dp = (blk.to_array() for blk in h.blocks())

    def _inv2(m):
        det = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
        adj = np.empty_like(m)
        adj[..., 0, 0] = m[..., 1, 1]
        adj[..., 0, 1] = -m[..., 0, 1]
        adj[..., 1, 0] = -m[..., 1, 0]
        adj[..., 1, 1] = m[..., 0, 0]
        return adj / det[..., None, None], det

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        # cZ + d and a' - Z c', with constant blocks broadcast over the grid
        czd = np.einsum("ij,...jk->...ik", c, z) + d
        azc = ap - np.einsum("...ij,jk->...ik", z, cp)
        czd_inv, n_czd = _inv2(czd)
        azc_inv, n_azc = _inv2(azc)
        znew = np.einsum(
            "...ij,...jk->...ik",
            np.einsum("ij,...jk->...ik", a, z) + b,
            czd_inv,
        )
        val = fn(znew)

        def scal(arr, den):
            if arr.ndim == den.ndim:
                return arr / den
            return arr / den[..., None, None]

        if rep == "pi0_l":
            return scal(val, n_czd)
        if rep == "pi0_r":
            return scal(val, n_azc)
        if rep == "pi_l":
            return np.einsum("...ij,...jk->...ik", czd_inv, val) / n_czd[..., None, None]
        if rep == "pi_r":
            return np.einsum("...ij,...jk->...ik", val, azc_inv) / n_azc[..., None, None]
        if rep == "rho_1":
            return scal(val, n_czd * n_azc)
        if rep == "rho_2":
            out = np.einsum("...ij,...jk,...km->...im", czd_inv, val, azc_inv)
            return out / (n_czd * n_azc)[..., None, None]
        if rep == "rho_2_prime":
            out = np.einsum("...ij,...jk,...km->...im", azc, val, czd)
            return out / (n_czd * n_azc)[..., None, None]
        if rep == "rho_n":
            left = tau_numpy(ndim, czd_inv)
            right = tau_numpy(ndim, azc_inv)
        else:
            left = tau_numpy(ndim, azc)
            right = tau_numpy(ndim, czd)
        out = np.einsum("...ij,...jk,...km->...im", left, val, right)
        return out / (n_czd * n_azc)[..., None, None]

    return evaluate


# ---------------------------------------------------------------------------
# Lie-algebra actions, pinned against the one-parameter-subgroup flows
# ---------------------------------------------------------------------------

_LIE_REPS = ("pi0_l", "pi0_r", "pi0_lr", "rho_1")

# zero-order coefficients multiplying tr(P) f (kinds A and D) and
# tr(P Z_v) f (kind C, per variable); the first-order parts are common.
_LIE_ZERO = {
    "pi0_l": {"A": 0, "C": 1, "D": 1},
    "pi0_r": {"A": -1, "C": 1, "D": 0},
    "rho_1": {"A": -1, "C": 2, "D": 1},
    "pi0_lr": {"A": -1, "C": 1, "D": 1},
}


def act_lie(rep: str, kind: str, payload: Biquaternion, f: RationalFn,
            shift=None) -> RationalFn:
    """Lie-algebra action of a block generator; applied entrywise.

    shift re-centers the variables: the input is read as a function of
    U_v = Z_v - shift_v, so multiplication operators use Z_v = U_v + shift_v
    while derivatives are unchanged.
    """
    if rep not in _LIE_REPS:
        raise BadParameters(f"unknown Lie representation {rep!r}")
    if kind not in ("A", "B", "C", "D"):
        raise BadParameters("block kind must be one of A, B, C, D")
    if not isinstance(f, RationalFn):
        raise BackendMismatch("Lie actions require the exact backend")
    want_vars = 2 if rep == "pi0_lr" else 1
    if f.nvars != want_vars:
        raise ValueError(f"{rep} needs a {want_vars}-variable function")
    if shift is None:
        shifts = (Biquaternion.zero(),) * want_vars
    elif isinstance(shift, Biquaternion):
        shifts = (shift,) * want_vars
    else:
        shifts = tuple(shift)
        if len(shifts) != want_vars:
            raise BadParameters("need one shift per variable")

    pmat = RationalFn.constant_matrix(payload, want_vars)
    ptrace = payload.trace()
    xmats = [
        RationalFn.coordinate(var=v, nvars=want_vars)
        + RationalFn.constant_matrix(shifts[v], want_vars)
        for v in range(want_vars)
    ]
    zero_coef = _LIE_ZERO[rep]

    grid = []
    for row in range(f.shape[0]):
        grid_row = []
        for col in range(f.shape[1]):
            g = f.entry(row, col)
            dmats = [_del_matrix(g, v) for v in range(want_vars)]
            if kind == "A":
                acc = RationalFn.zero((1, 1), want_vars)
                for x, dm in zip(xmats, dmats):
                    acc = acc + (pmat * x * dm).trace()
                acc = -acc
                za = zero_coef["A"]
                if za:
                    acc = acc + g * (ptrace * za)
            elif kind == "B":
                acc = RationalFn.zero((1, 1), want_vars)
                for dm in dmats:
                    acc = acc + (pmat * dm).trace()
                acc = -acc
            elif kind == "C":
                acc = RationalFn.zero((1, 1), want_vars)
                for x, dm in zip(xmats, dmats):
                    acc = acc + (pmat * x * dm * x).trace()
                    acc = acc + (pmat * x).trace() * g * zero_coef["C"]
            else:
                acc = RationalFn.zero((1, 1), want_vars)
                for x, dm in zip(xmats, dmats):
                    acc = acc + (pmat * dm * x).trace()
                zd = zero_coef["D"]
                if zd:
                    acc = acc + g * (ptrace * zd)
            grid_row.append(acc)
        grid.append(grid_row)
    return _from_grid(grid)


def _del_matrix(g: RationalFn, var: int) -> RationalFn:
    """The half-gradient matrix of a scalar: entry (i, j) = d g / d z_{ji}."""
    grid = [
        [g.derivative(j, i, var) for j in range(2)]
        for i in range(2)
    ]
    return _from_grid(grid)


def _casimir_pairs():
    """Dual pairs for the invariant bilinear form tr(XY) on the 4x4 blocks."""
    basis = []
    for kindpos, kind in enumerate("ABCD"):
        for p in range(2):
            for q in range(2):
                basis.append((kind, p, q))

    def embed(spec):
        kind, p, q = spec
        m = [[QQi(0)] * 4 for _ in range(4)]
        ro = 0 if kind in ("A", "B") else 2
        co = 0 if kind in ("A", "C") else 2
        m[ro + p][co + q] = QQi(1)
        return m

    mats = [embed(s) for s in basis]
    gram = []
    for x in mats:
        grow = []
        for y in mats:
            tr = QQi(0)
            for i in range(4):
                for j in range(4):
                    tr = tr + x[i][j] * y[j][i]
            grow.append(tr)
        gram.append(grow)
    ginv = invert_exact(gram)
    pairs = []
    for ia, sa in enumerate(basis):
        for ib, sb in enumerate(basis):
            coef = ginv[ia][ib]
            if coef.is_zero():
                continue
            pa = Biquaternion(*(QQi(1) if (r, c) == (sa[1], sa[2]) else QQi(0)
                                for r in range(2) for c in range(2)))
            pb = Biquaternion(*(QQi(1) if (r, c) == (sb[1], sb[2]) else QQi(0)
                                for r in range(2) for c in range(2)))
            pairs.append((sa[0], pa, sb[0], pb, coef))
    return tuple(pairs)


_CASIMIR_CACHE = None


def casimir(rep: str, f: RationalFn, shift=None) -> RationalFn:
    """The quadratic Casimir element in the given representation."""
    global _CASIMIR_CACHE
    if rep not in ("rho_1", "pi0_lr"):
        raise BadParameters("the Casimir action is provided for rho_1 and pi0_lr")
    if _CASIMIR_CACHE is None:
        _CASIMIR_CACHE = _casimir_pairs()
    total = RationalFn.zero(f.shape, f.nvars)
    for kind_a, pay_a, kind_b, pay_b, coef in _CASIMIR_CACHE:
        inner = act_lie(rep, kind_b, pay_b, f, shift)
        outer = act_lie(rep, kind_a, pay_a, inner, shift)
        total = total + outer * coef
    return total


# ---------------------------------------------------------------------------
# space-time fields and the Maxwell calculus
# ---------------------------------------------------------------------------

# z-entries of a space-time point in terms of y^0..y^3
_Y_IMAGES = (
    # y^0 = i (z11 + z22) / 2, etc.
    {(1, 0, 0, 0): QQi(0, Fraction(1, 2)), (0, 0, 0, 1): QQi(0, Fraction(1, 2))},
    {(0, 1, 0, 0): QQi(0, Fraction(1, 2)), (0, 0, 1, 0): QQi(0, Fraction(1, 2))},
    {(0, 0, 1, 0): QQi(Fraction(1, 2)), (0, 1, 0, 0): QQi(Fraction(-1, 2))},
    {(1, 0, 0, 0): QQi(0, Fraction(1, 2)), (0, 0, 0, 1): QQi(0, Fraction(-1, 2))},
)

# d/dy^mu as combinations of the z-derivatives: (i, j, coefficient)
_DY_TABLE = {
    0: ((0, 0, QQi(0, -1)), (1, 1, QQi(0, -1))),
    1: ((0, 1, QQi(0, -1)), (1, 0, QQi(0, -1))),
    2: ((0, 1, QQi(-1)), (1, 0, QQi(1))),
    3: ((0, 0, QQi(0, -1)), (1, 1, QQi(0, 1))),
}


def scalar_from_y_poly(terms) -> RationalFn:
    """Build a scalar function from a polynomial in the space-time
    coordinates, given as a map (k0, k1, k2, k3) -> coefficient."""
    acc = {}
    for exps, coef in terms.items():
        term = {(0, 0, 0, 0): QQi.coerce(coef)}
        for mu, k in enumerate(exps):
            for _ in range(k):
                term = _pmul(term, _Y_IMAGES[mu])
        acc = _padd(acc, term)
    return RationalFn(((acc,),), (0,), 1)


def dy(f: RationalFn, mu: int) -> RationalFn:
    """Space-time partial derivative d/dy^mu of a symbolic function."""
    if mu not in _DY_TABLE:
        raise BadParameters("space-time index must be 0, 1, 2 or 3")
    acc = RationalFn.zero(f.shape, f.nvars)
    for i, j, coef in _DY_TABLE[mu]:
        acc = acc + f.derivative(i, j) * coef
    return acc


def y_component(f: RationalFn, mu: int) -> RationalFn:
    """Space-time coefficient of a 2x2 value in the tilde-basis
    (e0-tilde, e1, e2, e3)."""
    f = f._as_two_by_two()
    a = f.entry(0, 0)
    b = f.entry(0, 1)
    c = f.entry(1, 0)
    d = f.entry(1, 1)
    half = Fraction(1, 2)
    if mu == 0:
        # coefficient of e0-tilde = i * (e0-component)
        return (a + d) * QQi(0, half)
    if mu == 1:
        return (b + c) * QQi(0, half)
    if mu == 2:
        return (c - b) * half
    if mu == 3:
        return (a - d) * QQi(0, half)
    raise BadParameters("space-time index must be 0, 1, 2 or 3")


def div3(vec) -> RationalFn:
    """Spatial divergence of a 3-tuple of scalar functions."""
    return dy(vec[0], 1) + dy(vec[1], 2) + dy(vec[2], 3)


def curl3(vec):
    """Spatial curl of a 3-tuple of scalar functions."""
    return (
        dy(vec[2], 2) - dy(vec[1], 3),
        dy(vec[0], 3) - dy(vec[2], 1),
        dy(vec[1], 1) - dy(vec[0], 2),
    )


class GaugeField:
    """A scalar potential and three-vector potential on space-time."""

    __slots__ = ("a0", "avec")

    def __init__(self, a0, a1, a2, a3):
        comps = []
        for c in (a0, a1, a2, a3):
            if isinstance(c, dict):
                c = scalar_from_y_poly(c)
            if not isinstance(c, RationalFn) or c.shape != (1, 1) or c.nvars != 1:
                raise BadParameters("potential components must be scalar functions")
            if not c.is_polynomial:
                raise NotPolynomial("potential components must be polynomial")
            comps.append(c)
        object.__setattr__(self, "a0", comps[0])
        object.__setattr__(self, "avec", tuple(comps[1:]))

    def __setattr__(self, name, value):
        raise AttributeError("GaugeField is immutable")

    @staticmethod
    def from_gauge_scalar(phi) -> "GaugeField":
        """The pure-gauge field whose packed form is the conjugate gradient
        of the scalar phi."""
        if isinstance(phi, dict):
            phi = scalar_from_y_poly(phi)
        return GaugeField(*(-dy(phi, mu) for mu in range(4)))

    def components(self):
        return (self.a0,) + self.avec

    def pack(self) -> RationalFn:
        """The 2x2 packed field A0 e0-tilde - A1 e1 - A2 e2 - A3 e3."""
        out = self.a0 * E0_TILDE
        for comp, basis in zip(self.avec, (E1, E2, E3)):
            out = out - comp * basis
        return out

    def unpack_check(self) -> bool:
        """Round-trip invariant: packing then extracting reproduces the
        components exactly."""
        packed = self.pack()
        comps = [y_component(packed, 0)] + [
            -y_component(packed, mu) for mu in (1, 2, 3)
        ]
        return all(a == b for a, b in zip(comps, self.components()))

    def magnetic_vector(self):
        """The curl of the three-vector potential."""
        return curl3(self.avec)

    def mixed_gradient(self):
        """The three-vector grad(A0) - d/dy^0 (vector potential)."""
        return tuple(
            dy(self.a0, mu) - dy(self.avec[mu - 1], 0) for mu in (1, 2, 3)
        )


def maxwell_residuals(field: GaugeField):
    """Scalar and vector residuals of the packed second-order field equation
    against its classical vector-calculus form; both vanish identically."""
    if not isinstance(field, GaugeField):
        raise BackendMismatch("maxwell_residuals takes an exact GaugeField")
    m = apply_operator("mx", field.pack())
    g = field.mixed_gradient()
    scalar_res = y_component(m, 0) * _I + div3(g) * QQi(0, 2)
    curl_curl = curl3(curl3(field.avec))
    vec_res = tuple(
        y_component(m, mu) - curl_curl[mu - 1] * 2 + dy(g[mu - 1], 0) * 2
        for mu in (1, 2, 3)
    )
    return scalar_res, vec_res


def gauge_complex_composites(phi=None, field=None):
    """Values of the two consecutive composites in the gauge complex; each
    is identically zero.  Either argument may be omitted (None is returned
    in its slot)."""
    first = None
    second = None
    if phi is not None:
        if not isinstance(phi, RationalFn) or phi.shape != (1, 1):
            raise BackendMismatch("the first composite takes a scalar RationalFn")
        first = apply_operator("mx", apply_operator("nabla_plus_left", phi))
    if field is not None:
        if not isinstance(field, RationalFn):
            raise BackendMismatch("the second composite takes a RationalFn")
        second = apply_operator(
            "nabla_plus_left", apply_operator("mx", field)
        ).re_part()
    return first, second
