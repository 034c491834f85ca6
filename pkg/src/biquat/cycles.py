"""Oriented integration cycles with quadrature.

Three-dimensional cycles (spheres, deformed Minkowski sphere boundaries,
fractional-linear images of those) carry the matrix-valued 3-form evaluated
by :func:`eval_Dz`; the four-dimensional group cycle carries the coordinate
volume form evaluated as a plain 4x4 determinant.  Everything integrates by
tensor-product rules: Gauss-Legendre across the polar angle, equally
weighted nodes with a half-step offset across each periodic angle (same
spectral accuracy as the trapezoid rule, but no node ever sits on the
standard charts' singular great circles).  Node accumulation uses numpy's
pairwise summation on fixed shapes, so results are bit-reproducible
regardless of thread count.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from ._scalars import QQi
from .algebra import Biquaternion, FracLinear
from .calculus import RationalFn, SpinorFn
from .errors import BadParameters, NotPolynomial, SingularOnCycle

# Orientation of the polar/periodic/periodic angle order against the
# outward-normal-first boundary convention, fixed once by the volume and
# kernel benchmarks in the tests (the chart frame is left-handed).
_S3_SIGN = -1.0

# The phase-times-unit-sphere chart runs over the group twice.
_U2_COVER = 2.0

_DEFAULT_S3_AXES = (32, 64, 64)
_DEFAULT_U2_AXES = (32, 16, 32, 32)

_POLE_GUARD = 1e12


# ---------------------------------------------------------------------------
# componentwise plumbing
# ---------------------------------------------------------------------------

def _components_to_entries(x0, x1, x2, x3):
    out = np.empty(np.shape(x0) + (2, 2), dtype=complex)
    out[..., 0, 0] = x0 - 1j * x3
    out[..., 0, 1] = -1j * x1 - x2
    out[..., 1, 0] = -1j * x1 + x2
    out[..., 1, 1] = x0 + 1j * x3
    return out


def _entries_to_components(e):
    z11, z12 = e[..., 0, 0], e[..., 0, 1]
    z21, z22 = e[..., 1, 0], e[..., 1, 1]
    return ((z11 + z22) / 2, 1j * (z12 + z21) / 2,
            (z21 - z12) / 2, 1j * (z11 - z22) / 2)


def _adjugate(e):
    out = np.empty_like(e)
    out[..., 0, 0] = e[..., 1, 1]
    out[..., 1, 1] = e[..., 0, 0]
    out[..., 0, 1] = -e[..., 0, 1]
    out[..., 1, 0] = -e[..., 1, 0]
    return out


def _det(e):
    return e[..., 0, 0] * e[..., 1, 1] - e[..., 0, 1] * e[..., 1, 0]


def _to_biquat(arr):
    arr = np.asarray(arr)
    return Biquaternion(
        *(QQi(Fraction(complex(v).real), Fraction(complex(v).imag))
          for v in (arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1])))


def _block_complex(z: Biquaternion):
    return np.array([[complex(z.z11), complex(z.z12)],
                     [complex(z.z21), complex(z.z22)]])


# ---------------------------------------------------------------------------
# the matrix-valued 3-form
# ---------------------------------------------------------------------------

def eval_Dz(t1: Biquaternion, t2: Biquaternion, t3: Biquaternion) -> Biquaternion:
    """The alternating matrix-valued 3-form on a frame of tangent vectors.

    Exact: the inputs' basis components are rational Gaussian numbers and so
    is every 3x3 minor.  On a positively oriented orthonormal tangent frame
    of the unit sphere at X the value is X itself.
    """
    for t in (t1, t2, t3):
        if not isinstance(t, Biquaternion):
            raise BadParameters("eval_Dz expects three Biquaternion tangents")
    cols = [t.components() for t in (t1, t2, t3)]

    def minor(i, j, k):
        a, b, c = cols
        return (a[i] * (b[j] * c[k] - b[k] * c[j])
                - a[j] * (b[i] * c[k] - b[k] * c[i])
                + a[k] * (b[i] * c[j] - b[j] * c[i]))

    return Biquaternion.from_components(
        minor(1, 2, 3), -minor(0, 2, 3), minor(0, 1, 3), -minor(0, 1, 2))


def _dz_batch(frames):
    """frames (3, P, 2, 2) -> form values (P, 2, 2)."""
    comp = np.stack([np.stack(_entries_to_components(frames[k]))
                     for k in range(3)])  # (3, 4, P)
    a, b, c = comp[0], comp[1], comp[2]

    def minor(i, j, k):
        return (a[i] * (b[j] * c[k] - b[k] * c[j])
                - a[j] * (b[i] * c[k] - b[k] * c[i])
                + a[k] * (b[i] * c[j] - b[j] * c[i]))

    return _components_to_entries(
        minor(1, 2, 3), -minor(0, 2, 3), minor(0, 1, 3), -minor(0, 1, 2))


def _dz4_batch(frames):
    """frames (4, P, 2, 2) -> coordinate volume values (P,).

    Wedge of the four entry differentials in the order (11, 12, 21, 22),
    evaluated as the determinant of the coordinate tangent matrix.
    """
    rows = np.stack([
        np.stack([frames[k][..., 0, 0], frames[k][..., 0, 1],
                  frames[k][..., 1, 0], frames[k][..., 1, 1]], axis=-1)
        for k in range(4)], axis=1)  # (P, 4, 4)
    return np.linalg.det(rows)


@dataclass(frozen=True)
class FormValue:
    """One evaluated form against a cycle's tangent frame at a node.

    ``kind`` is "Dz" (matrix value) on 3-cycles and "dZ4" (scalar value) on
    the 4-cycle; the value includes the chart's Jacobian because the frame
    is made of the chart's parameter derivatives.
    """

    kind: str
    value: object


@dataclass(frozen=True)
class QuadratureResult:
    """A quadrature value with the two-level refinement error estimate."""

    value: object
    error_estimate: float


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------

def _axis_rule(kind, n, lo, hi):
    if kind == "gl":
        x, w = np.polynomial.legendre.leggauss(n)
        return 0.5 * (hi - lo) * x + 0.5 * (hi + lo), 0.5 * (hi - lo) * w
    if kind == "ptrap":
        h = (hi - lo) / n
        return lo + (np.arange(n) + 0.5) * h, np.full(n, h)
    raise BadParameters(f"unknown axis kind {kind!r}")


class Cycle:
    """A parametrized, oriented cycle with its tensor-product rule.

    ``axes`` lists (kind, count, lo, hi) per parameter; ``chart`` maps the
    flattened parameter arrays to node points (P, 2, 2) and tangent frames
    (dim, P, 2, 2).  Weights already carry the orientation sign and the
    chart's covering multiplicity.
    """

    __slots__ = ("tag", "dimension", "axes", "orientation", "cover",
                 "params", "_chart", "_points", "_forms", "_coarse")

    def __init__(self, tag, dimension, axes, chart, orientation,
                 cover=1.0, params=None):
        self.tag = tag
        self.dimension = dimension
        self.axes = tuple(axes)
        self.orientation = orientation
        self.cover = cover
        self.params = dict(params or {})
        self._chart = chart
        self._points = None
        self._forms = None
        self._coarse = None

    def __repr__(self):
        shape = "x".join(str(n) for _, n, _, _ in self.axes)
        return f"Cycle({self.tag}, {self.dimension}d, rule {shape})"

    def _evaluate_chart(self):
        grids = [_axis_rule(*ax) for ax in self.axes]
        mesh = np.meshgrid(*(g[0] for g in grids), indexing="ij")
        flat = [m.ravel() for m in mesh]
        w = np.ones(1)
        for _, wi in grids:
            w = np.multiply.outer(w, wi)
        w = w.ravel() * (self.orientation / self.cover)
        pts, frames = self._chart(*flat)
        if self._points is None:
            self._points = (pts, w)
        return pts, frames, w

    def nodes(self):
        """(points (P,2,2), frames (dim,P,2,2), signed weights (P,)).

        The frame block is large at fine rules and is not retained; points
        and weights are cached on the cycle.
        """
        return self._evaluate_chart()

    def points_weights(self):
        """(points (P,2,2), signed weights (P,)), cached."""
        if self._points is None:
            pts, _, w = self._evaluate_chart()
            return pts, w
        return self._points

    def form_array(self):
        """All form values against the chart frames, as one cached array."""
        if self._forms is None:
            _, frames, _ = self._evaluate_chart()
            self._forms = (_dz_batch(frames) if self.dimension == 3
                           else _dz4_batch(frames))
        return self._forms

    def form_value_at(self, index) -> FormValue:
        vals = self.form_array()
        if self.dimension == 3:
            return FormValue("Dz", _to_biquat(vals[index]))
        return FormValue("dZ4", complex(vals[index]))

    def coarsened(self) -> "Cycle":
        """The same cycle at half the nodes per axis (for error estimates)."""
        if self._coarse is None:
            axes = tuple((k, max(n // 2, 4), lo, hi)
                         for k, n, lo, hi in self.axes)
            self._coarse = Cycle(self.tag, self.dimension, axes, self._chart,
                                 self.orientation, self.cover, self.params)
        return self._coarse


def _scaled(counts, mult):
    if mult <= 0:
        raise BadParameters("resolution multiplier must be positive")
    return tuple(max(4, int(round(n * mult))) for n in counts)


def _hopf(radius, th, x1, x2):
    """Real components and tangents of the standard angle chart."""
    ct, st = np.cos(th), np.sin(th)
    c1, s1 = np.cos(x1), np.sin(x1)
    c2, s2 = np.cos(x2), np.sin(x2)
    x = (radius * ct * c1, radius * st * c2, radius * st * s2,
         radius * ct * s1)
    zero = np.zeros_like(th)
    d_th = (-radius * st * c1, radius * ct * c2, radius * ct * s2,
            -radius * st * s1)
    d_x1 = (-radius * ct * s1, zero, zero, radius * ct * c1)
    d_x2 = (zero, -radius * st * s2, radius * st * c2, zero)
    return x, (d_th, d_x1, d_x2)


def _sphere_chart(radius, center_entries):
    def chart(th, x1, x2):
        x, frame = _hopf(radius, th, x1, x2)
        pts = _components_to_entries(*x)
        if center_entries is not None:
            pts = pts + center_entries
        frames = np.stack([_components_to_entries(*t) for t in frame])
        return pts, frames
    return chart


def _minkowski_entries(y0, y1, y2, y3):
    # a real 4-vector sits in the space-time form with first component -i y0
    return _components_to_entries(-1j * np.asarray(y0, dtype=complex),
                                  y1, y2, y3)


def _deformed_ball_chart(center, radius, eps, deform_center=None):
    c = _block_complex(center)
    dc = c if deform_center is None else _block_complex(deform_center)

    def chart(th, x1, x2):
        y, frame = _hopf(radius, th, x1, x2)
        rel = _minkowski_entries(*y)
        base = c + rel
        pts = base - 1j * eps * _adjugate(base - dc)
        deformed = []
        for t in frame:
            te = _minkowski_entries(*t)
            deformed.append(te - 1j * eps * _adjugate(te))
        return pts, np.stack(deformed)
    return chart


def _pullback_chart(source, element, scale):
    a, b, c, d = (_block_complex(z) for z in element.inverse_blocks())

    def chart(*flat):
        pts, frames = source._chart(*flat)
        den = np.einsum("ij,pjk->pik", c, pts) + d
        dd = _det(den)
        floor = 1e-9 * float(np.median(np.abs(dd)))
        if not np.all(np.abs(dd) > floor):
            raise SingularOnCycle(
                "a node of the source cycle hits the singular set of the "
                "fractional-linear map")
        den_inv = _adjugate(den) / dd[..., None, None]
        img = np.einsum("pij,pjk->pik",
                        np.einsum("ij,pjk->pik", a, pts) + b, den_inv)
        lead = a[None] - np.einsum("pij,jk->pik", img, c)
        new_frames = np.stack([
            np.einsum("pij,pjk,pkl->pil", lead, frames[k], den_inv)
            for k in range(frames.shape[0])])
        return scale * img, scale * new_frames
    return chart


def build_cycle(tag, *, resolution_mult=1.0, **params) -> Cycle:
    """Construct one of the supported cycle families.

    S3_R:              R (default 1.0), center (Biquaternion, default 0),
                       hemisphere (None | "plus" | "minus" on the first
                       periodic angle, making that axis Gauss-Legendre).
    U2_R:              R (default 1.0).
    eps_deformed_ball: center (Minkowski point), R, eps (default
                       0.1 R / (1 + R)), deform_center (Minkowski point the
                       complex push rotates about; defaults to center).
    cayley_pullback:   source (a 3-cycle), element (FracLinear whose point
                       action maps it; default the sphere-to-hyperboloid
                       direction), scale (complex multiplier, default 1),
                       sign (+1 or -1, the stored per-sheet orientation
                       choice).
    """
    if tag == "S3_R":
        radius = float(params.pop("R", 1.0))
        center = params.pop("center", None)
        hemisphere = params.pop("hemisphere", None)
        if params:
            raise BadParameters(f"unknown S3_R parameters {sorted(params)}")
        if radius <= 0:
            raise BadParameters("sphere radius must be positive")
        c_entries = None
        if center is not None:
            if not isinstance(center, Biquaternion):
                raise BadParameters("center must be a Biquaternion")
            c_entries = _block_complex(center)[None]
        n_th, n_1, n_2 = _scaled(_DEFAULT_S3_AXES, resolution_mult)
        if hemisphere is None:
            ax1 = ("ptrap", n_1, 0.0, 2 * math.pi)
        elif hemisphere == "plus":
            ax1 = ("gl", n_1, -math.pi / 2, math.pi / 2)
        elif hemisphere == "minus":
            ax1 = ("gl", n_1, math.pi / 2, 3 * math.pi / 2)
        else:
            raise BadParameters("hemisphere must be None, 'plus' or 'minus'")
        axes = (("gl", n_th, 0.0, math.pi / 2), ax1,
                ("ptrap", n_2, 0.0, 2 * math.pi))
        return Cycle("S3_R", 3, axes, _sphere_chart(radius, c_entries),
                     _S3_SIGN, params={"R": radius, "center": center,
                                       "hemisphere": hemisphere})

    if tag == "U2_R":
        radius = float(params.pop("R", 1.0))
        if params:
            raise BadParameters(f"unknown U2_R parameters {sorted(params)}")
        if radius <= 0:
            raise BadParameters("group cycle radius must be positive")
        n_al, n_th, n_1, n_2 = _scaled(_DEFAULT_U2_AXES, resolution_mult)
        axes = (("ptrap", n_al, 0.0, 2 * math.pi),
                ("gl", n_th, 0.0, math.pi / 2),
                ("ptrap", n_1, 0.0, 2 * math.pi),
                ("ptrap", n_2, 0.0, 2 * math.pi))

        def chart(al, th, x1, x2):
            x, frame = _hopf(1.0, th, x1, x2)
            phase = radius * np.exp(1j * al)
            pts = _components_to_entries(*(phase * xi for xi in x))
            d_al = 1j * pts
            rest = [_components_to_entries(*(phase * ti for ti in t))
                    for t in frame]
            return pts, np.stack([d_al] + rest)

        return Cycle("U2_R", 4, axes, chart, 1.0, cover=_U2_COVER,
                     params={"R": radius})

    if tag == "eps_deformed_ball":
        center = params.pop("center", Biquaternion.zero())
        radius = float(params.pop("R", 1.0))
        eps = params.pop("eps", None)
        deform_center = params.pop("deform_center", None)
        if params:
            raise BadParameters(
                f"unknown eps_deformed_ball parameters {sorted(params)}")
        if not isinstance(center, Biquaternion):
            raise BadParameters("center must be a Biquaternion")
        if deform_center is not None and not isinstance(deform_center,
                                                        Biquaternion):
            raise BadParameters("deform_center must be a Biquaternion")
        if radius <= 0:
            raise BadParameters("ball radius must be positive")
        if eps is None:
            eps = 0.1 * radius / (1.0 + radius)
        eps = float(eps)
        if eps == 0.0:
            raise BadParameters("the deformation parameter must be nonzero")
        n_th, n_1, n_2 = _scaled(_DEFAULT_S3_AXES, resolution_mult)
        axes = (("gl", n_th, 0.0, math.pi / 2),
                ("ptrap", n_1, 0.0, 2 * math.pi),
                ("ptrap", n_2, 0.0, 2 * math.pi))
        return Cycle("eps_deformed_ball", 3, axes,
                     _deformed_ball_chart(center, radius, eps, deform_center),
                     _S3_SIGN,
                     params={"center": center, "R": radius, "eps": eps,
                             "deform_center": deform_center})

    if tag == "cayley_pullback":
        source = params.pop("source", None)
        element = params.pop("element", None)
        scale = complex(params.pop("scale", 1.0))
        sign = float(params.pop("sign", 1.0))
        if params:
            raise BadParameters(
                f"unknown cayley_pullback parameters {sorted(params)}")
        if not isinstance(source, Cycle) or source.dimension != 3:
            raise BadParameters("source must be a 3-dimensional Cycle")
        if element is None:
            element = FracLinear.cayley().inverse()
        if not isinstance(element, FracLinear):
            raise BadParameters("element must be a FracLinear")
        if sign not in (1.0, -1.0):
            raise BadParameters("sign must be +1 or -1")
        if scale == 0:
            raise BadParameters("scale must be nonzero")
        return Cycle("cayley_pullback", 3, source.axes,
                     _pullback_chart(source, element, scale),
                     source.orientation * sign, cover=source.cover,
                     params={"source": source, "element": element,
                             "scale": scale, "sign": sign})

    raise BadParameters(f"unknown cycle tag {tag!r}")


@lru_cache(maxsize=6)
def _u2_cycle(radius, resolution_mult):
    return build_cycle("U2_R", R=radius, resolution_mult=resolution_mult)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _field_values(obj, pts):
    """Evaluate an integrand factor at the nodes.

    Accepts callables on (P, 2, 2) arrays (including compiled rational
    functions), symbolic one-variable functions, constants (numbers, exact
    scalars, Biquaternions), or None for the constant 1.  Returns either a
    scalar array (P,) / () or a matrix array (P, 2, 2).
    """
    if obj is None:
        return np.complex128(1.0)
    if isinstance(obj, (RationalFn, SpinorFn)):
        fn = obj.fn if isinstance(obj, SpinorFn) else obj
        if fn.nvars != 1:
            raise BadParameters("integrand must be a one-variable function")
        obj = fn.compile_numpy()
    if isinstance(obj, Biquaternion):
        return _block_complex(obj)[None]
    if isinstance(obj, QQi):
        return np.complex128(complex(obj))
    if isinstance(obj, (int, float, complex, Fraction)):
        return np.complex128(complex(obj))
    if callable(obj):
        out = np.asarray(obj(pts), dtype=complex)
        if out.ndim == 0 or out.shape == pts.shape[:1]:
            return out
        ok_shapes = ((2, 2), (2, 1), (1, 2), (1, 1))
        if out.ndim in (2, 3) and out.shape[-2:] in ok_shapes:
            return out if out.ndim == 3 else out[None]
        raise BadParameters(
            f"integrand returned shape {out.shape}; expected a scalar per "
            "node or a small matrix per node")
    raise BadParameters(f"cannot evaluate integrand of type {type(obj)!r}")


def _is_scalar_field(v):
    return v.ndim <= 1


def _per_node(v, count):
    if v.shape[0] == 1 and count != 1:
        return np.broadcast_to(v, (count,) + v.shape[1:])
    return v


def _guard(values):
    if not np.all(np.isfinite(values)):
        raise SingularOnCycle("integrand is not finite at a quadrature node")
    if np.abs(values).max() > _POLE_GUARD:
        raise SingularOnCycle(
            "integrand exceeds the pole guard at a quadrature node")


def _sum3(cycle, g, f):
    pts, w = cycle.points_weights()
    dz = cycle.form_array()
    count = dz.shape[0]
    gv = _field_values(g, pts)
    fv = _field_values(f, pts)
    vals = dz
    if _is_scalar_field(gv):
        vals = gv[..., None, None] * vals if gv.ndim else gv * vals
    else:
        vals = np.einsum("pij,pjk->pik", _per_node(gv, count), vals)
    if _is_scalar_field(fv):
        vals = vals * (fv[..., None, None] if fv.ndim else fv)
    else:
        vals = np.einsum("pij,pjk->pik", vals, _per_node(fv, count))
    _guard(vals)
    return (vals * w[:, None, None]).sum(axis=0)


def _value3(arr):
    if arr.shape == (2, 2):
        return _to_biquat(arr)
    if arr.shape == (1, 1):
        return complex(arr[0, 0])
    return arr


def integrate_3form(g, f, cycle: Cycle, *, details=False):
    """Quadrature of the sandwich integral of g, the 3-form, and f.

    Square integrands give a Biquaternion; a column-valued f or row-valued
    g narrows the result to the matching spinor shape (a plain complex
    array), and a row times a column collapses to a complex number.  The
    error estimate compares against the same integral with half the nodes
    per axis; pass ``details=True`` to receive it alongside the value.
    """
    if not isinstance(cycle, Cycle) or cycle.dimension != 3:
        raise BadParameters("integrate_3form needs a 3-dimensional cycle")
    fine = _sum3(cycle, g, f)
    coarse = _sum3(cycle.coarsened(), g, f)
    err = float(np.abs(fine - coarse).max())
    value = _value3(fine)
    if details:
        return QuadratureResult(value, err)
    return value


def _sum4(cycle, F):
    pts, w = cycle.points_weights()
    d4 = cycle.form_array()
    fv = _field_values(F, pts)
    _guard(fv)
    if _is_scalar_field(fv):
        return complex((d4 * fv * w).sum())
    if fv.shape[-2:] != (2, 2):
        raise BadParameters("a matrix integrand on the group cycle must "
                            "be 2x2 valued")
    return (fv * (d4 * w)[:, None, None]).sum(axis=0)


def integrate_U2(F, R=1.0, *, resolution_mult=1.0, details=False):
    """Quadrature of F against the coordinate volume form on the group
    cycle of radius R.

    Scalar-valued F yields a complex number.  A matrix-valued F (needed by
    the second-order-pole machinery, whose integrands are matrix
    sandwiches) yields a Biquaternion; the volume form itself is always the
    scalar determinant factor.
    """
    if R <= 0:
        raise BadParameters("group cycle radius must be positive")
    cycle = _u2_cycle(float(R), float(resolution_mult))
    fine = _sum4(cycle, F)
    coarse = _sum4(cycle.coarsened(), F)
    if isinstance(fine, complex):
        err = abs(fine - coarse)
        value = fine
    else:
        err = float(np.abs(fine - coarse).max())
        value = _to_biquat(fine)
    if details:
        return QuadratureResult(value, err)
    return value


# ---------------------------------------------------------------------------
# exact polynomial integration over the unit sphere
# ---------------------------------------------------------------------------

# images of the four matrix entries under restriction to real components
_ENTRY_IMAGES = (
    {(1, 0, 0, 0): QQi(1), (0, 0, 0, 1): QQi(0, -1)},
    {(0, 1, 0, 0): QQi(0, -1), (0, 0, 1, 0): QQi(-1)},
    {(0, 1, 0, 0): QQi(0, -1), (0, 0, 1, 0): QQi(1)},
    {(1, 0, 0, 0): QQi(1), (0, 0, 0, 1): QQi(0, 1)},
)


def _poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(p + q for p, q in zip(ea, eb))
            c = out.get(e, QQi(0)) + ca * cb
            if c.is_zero():
                out.pop(e, None)
            else:
                out[e] = c
    return out


@lru_cache(maxsize=None)
def _entry_monomial_in_components(exps):
    poly = {(0, 0, 0, 0): QQi(1)}
    for pos, e in enumerate(exps):
        for _ in range(e):
            poly = _poly_mul(poly, _ENTRY_IMAGES[pos])
    return poly


@lru_cache(maxsize=None)
def _component_monomial_average(exps):
    """Unit-sphere integral of a component monomial, over pi^2."""
    if any(e % 2 for e in exps):
        return Fraction(0)
    halves = [e // 2 for e in exps]
    c = Fraction(2)
    for a in halves:
        c *= Fraction(factorial(2 * a), 4 ** a * factorial(a))
    return c / factorial(sum(halves) + 1)


def _entry_poly_sphere(poly):
    total = QQi(0)
    for exps, coef in poly.items():
        for ce, cc in _entry_monomial_in_components(exps).items():
            weight = _component_monomial_average(ce)
            if weight:
                total = total + coef * cc * weight
    return total


def exact_sphere_integral(p: RationalFn):
    """Exact unit-sphere integral of a polynomial, as the coefficient of
    pi^2.

    Matrix-shaped inputs integrate entrywise: (2, 2) gives a Biquaternion,
    scalars give an exact Gaussian rational, and other shapes give a nested
    tuple.  Only genuine polynomials qualify; anything carrying an inverse
    norm factor is rejected.
    """
    if not isinstance(p, RationalFn):
        raise BadParameters("exact_sphere_integral expects a RationalFn")
    if p.nvars != 1:
        raise BadParameters("exact_sphere_integral expects one variable")
    if any(p.dpow):
        raise NotPolynomial("the integrand has an inverse-norm factor")
    table = [[_entry_poly_sphere(ent) for ent in row] for row in p.entries]
    if p.shape == (1, 1):
        return table[0][0]
    if p.shape == (2, 2):
        return Biquaternion(table[0][0], table[0][1],
                            table[1][0], table[1][1])
    return tuple(tuple(row) for row in table)
