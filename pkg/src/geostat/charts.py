"""Coordinate charts and jet evaluation of scalar and tensor fields.

A chart is three Cartesian-style coordinates plus a validity predicate
(domains exclude horizons and rod/strut tubes).  Fields over a chart are
either defining expressions evaluated through the jet algebra or custom
evaluators that return jet data directly (used where a field value comes
from quadrature but its derivatives are closed-form).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import jets
from .errors import NonFinite, OutOfDomain

__all__ = [
    "Chart", "Jet2Scalar", "Jet1Metric", "Jet2Metric",
    "ChartedScalar", "ChartedMetric",
    "eval_scalar_jet", "finite_difference_jet", "scale_metric_jets",
]


def _always(points):
    return np.ones(np.asarray(points).shape[:-1], dtype=bool)


@dataclass(frozen=True)
class Chart:
    """A 3d coordinate chart with a validity predicate.

    `harmonic_flag` records whether the chart coordinates are harmonic for
    the conformally rescaled metric living on it: "exact", "asymptotic"
    (defect decaying fast enough for the extrapolation protocol) or
    "unknown".
    """

    name: str
    domain: Callable = _always
    dimension: int = 3
    harmonic_flag: str = "unknown"

    def __post_init__(self):
        if self.dimension != 3:
            raise ValueError("only 3d spatial charts are supported")

    def contains(self, points):
        return np.asarray(self.domain(np.asarray(points, dtype=float)), dtype=bool)

    def require(self, points):
        ok = self.contains(points)
        if not np.all(ok):
            bad = np.asarray(points, dtype=float).reshape(-1, 3)[~ok.reshape(-1)]
            raise OutOfDomain(
                f"chart '{self.name}': {bad.shape[0]} point(s) outside domain, "
                f"first offender {bad[0].tolist()}")


@dataclass
class Jet2Scalar:
    """Value, gradient and Hessian of a scalar field at point(s)."""

    value: np.ndarray     # (...,)
    gradient: np.ndarray  # (..., 3)
    hessian: np.ndarray   # (..., 3, 3)


@dataclass
class Jet1Metric:
    """Metric components and first partials.

    `partials[..., k, i, j]` is d_k g_ij; symmetric in the last two indices.
    """

    components: np.ndarray  # (..., 3, 3)
    partials: np.ndarray    # (..., 3, 3, 3)


@dataclass
class Jet2Metric(Jet1Metric):
    """Adds second partials: `second[..., l, k, i, j]` = d_l d_k g_ij."""

    second: np.ndarray      # (..., 3, 3, 3, 3)


class ChartedScalar:
    """Scalar field over a chart, evaluable to second-order jets.

    `fn(x, y, z)` must be written against the dispatching functions in
    :mod:`geostat.jets` so that it works on jets and on plain arrays alike.
    Evaluators are pure; repeated evaluation at the same points is
    bit-identical.
    """

    def __init__(self, chart: Chart, fn: Callable, name: str = ""):
        self.chart = chart
        self.fn = fn
        self.name = name

    def value(self, points):
        pts = np.asarray(points, dtype=float)
        v = self.fn(pts[..., 0], pts[..., 1], pts[..., 2])
        return np.broadcast_to(np.asarray(v, dtype=float), pts.shape[:-1]).copy()

    def jet(self, points) -> Jet2Scalar:
        pts = np.asarray(points, dtype=float)
        x, y, z = jets.coordinate_jets(pts)
        out = self.fn(x, y, z)
        if not isinstance(out, jets.Jet):
            out = jets.constant_jet(out, pts.shape[:-1])
        return Jet2Scalar(np.asarray(out.val, dtype=float), out.grad, out.hess)

    def scaled(self, k: float) -> "ChartedScalar":
        fn = self.fn
        return ChartedScalar(self.chart, lambda x, y, z: k * fn(x, y, z),
                             name=f"{k}*{self.name}")


class ChartedMetric:
    """Riemannian 3-metric over a chart with exact jets.

    Built either from a component expression `fn(x, y, z) -> 3x3 nested list`
    of jets/constants (shared subexpressions evaluate once), or from a
    direct jet evaluator `points -> Jet2Metric`.
    """

    def __init__(self, chart: Chart, fn=None, jet_evaluator=None, name: str = ""):
        if (fn is None) == (jet_evaluator is None):
            raise ValueError("provide exactly one of fn / jet_evaluator")
        self.chart = chart
        self.fn = fn
        self._jet_evaluator = jet_evaluator
        self.name = name

    def jet2(self, points) -> Jet2Metric:
        pts = np.asarray(points, dtype=float)
        if self._jet_evaluator is not None:
            return self._jet_evaluator(pts)
        base = pts.shape[:-1]
        x, y, z = jets.coordinate_jets(pts)
        rows = self.fn(x, y, z)
        comps = np.zeros(base + (3, 3))
        partials = np.zeros(base + (3, 3, 3))
        second = np.zeros(base + (3, 3, 3, 3))
        for i in range(3):
            for j in range(i, 3):
                entry = rows[i][j]
                if not isinstance(entry, jets.Jet):
                    entry = jets.constant_jet(entry, base)
                comps[..., i, j] = entry.val
                partials[..., :, i, j] = entry.grad
                second[..., :, :, i, j] = entry.hess
                if j != i:
                    comps[..., j, i] = entry.val
                    partials[..., :, j, i] = entry.grad
                    second[..., :, :, j, i] = entry.hess
        return Jet2Metric(comps, partials, second)

    def jet1(self, points) -> Jet1Metric:
        j2 = self.jet2(points)
        return Jet1Metric(j2.components, j2.partials)

    def components(self, points) -> np.ndarray:
        return self.jet2(points).components


def eval_scalar_jet(fld: ChartedScalar, p) -> Jet2Scalar:
    """Jet of `fld` at p by forward-mode differentiation; exact to roundoff."""
    pts = np.asarray(p, dtype=float)
    fld.chart.require(pts)
    out = fld.jet(pts)
    if not (np.all(np.isfinite(out.value)) and np.all(np.isfinite(out.gradient))
            and np.all(np.isfinite(out.hessian))):
        raise NonFinite(f"field '{fld.name}' produced non-finite jet data")
    return out


def finite_difference_jet(fld: ChartedScalar, p, h: float) -> Jet2Scalar:
    """Central-difference jet, second-order accurate.  Test oracle only."""
    pts = np.asarray(p, dtype=float)
    eye = np.eye(3)

    # whole stencil (the corner points reach sqrt(2) h; require radius 2h)
    stencil = [pts]
    for i in range(3):
        stencil += [pts + 2 * h * eye[i], pts - 2 * h * eye[i]]
    fld.chart.require(np.stack(stencil, axis=0))

    f0 = fld.value(pts)
    grad = np.zeros(pts.shape[:-1] + (3,))
    hess = np.zeros(pts.shape[:-1] + (3, 3))
    fp = np.zeros(pts.shape[:-1] + (3,))
    fm = np.zeros(pts.shape[:-1] + (3,))
    for i in range(3):
        fp[..., i] = fld.value(pts + h * eye[i])
        fm[..., i] = fld.value(pts - h * eye[i])
        grad[..., i] = (fp[..., i] - fm[..., i]) / (2 * h)
        hess[..., i, i] = (fp[..., i] - 2 * f0 + fm[..., i]) / h ** 2
    for i in range(3):
        for j in range(i + 1, 3):
            di, dj = h * eye[i], h * eye[j]
            mixed = (fld.value(pts + di + dj) - fld.value(pts + di - dj)
                     - fld.value(pts - di + dj) + fld.value(pts - di - dj)) / (4 * h ** 2)
            hess[..., i, j] = mixed
            hess[..., j, i] = mixed
    return Jet2Scalar(f0, grad, hess)


def scale_metric_jets(s: Jet2Scalar, mj: Jet2Metric) -> Jet2Metric:
    """Jets of s*g from the jets of the scalar s and the metric g."""
    v, dv, ddv = s.value, s.gradient, s.hessian
    comps = v[..., None, None] * mj.components
    partials = (dv[..., :, None, None] * mj.components[..., None, :, :]
                + v[..., None, None, None] * mj.partials)
    second = (ddv[..., :, :, None, None] * mj.components[..., None, None, :, :]
              + dv[..., None, :, None, None] * mj.partials[..., :, None, :, :]
              + dv[..., :, None, None, None] * mj.partials[..., None, :, :, :]
              + v[..., None, None, None, None] * mj.second)
    return Jet2Metric(comps, partials, second)
