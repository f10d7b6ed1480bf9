"""Curvature and differential operators on 3-metrics; induced surface geometry.

Christoffel symbols are assembled once, generically over the scalar type of
the metric data.  Running the same assembly on :class:`~geostat.jets.Dual`
entries differentiates the Christoffel map in all three coordinate
directions at once, which is everything the Ricci tensor needs; third
derivatives of the metric never appear.

Matrix inversion is the explicit 3x3 adjugate with a condition-number
guard.  No linear-algebra library calls sit on any result-bearing path, so
results are bit-reproducible regardless of thread count.
"""

from dataclasses import dataclass

import numpy as np

from .charts import ChartedMetric, ChartedScalar, Jet1Metric, Jet2Metric, Jet2Scalar
from .errors import DegenerateTangents, SingularMetric
from .jets import Dual

__all__ = [
    "ConnectionCoefficients", "CurvatureData", "SurfaceGeometry",
    "christoffel", "ricci", "hessian", "laplacian", "surface_geometry",
    "invert_metric", "frame_norm_2tensor", "coordinate_laplacians",
]

_COND_LIMIT = 1e12


@dataclass
class ConnectionCoefficients:
    """Christoffel symbols of the second kind, gamma[..., k, i, j]."""

    gamma: np.ndarray


@dataclass
class CurvatureData:
    """Ricci tensor and scalar curvature at point(s)."""

    ricci: np.ndarray   # (..., 3, 3)
    scalar: np.ndarray  # (...,)


@dataclass
class SurfaceGeometry:
    """Induced geometry of an embedded surface at parameter point(s)."""

    point: np.ndarray          # (..., 3)
    tangents: np.ndarray       # (..., 3, 2)  columns d(emb)/dtheta, d(emb)/dphi
    induced_metric: np.ndarray  # (..., 2, 2)
    unit_normal: np.ndarray    # (..., 3)  outward, ambient-unit, contravariant
    area_element: np.ndarray   # (...,)  sqrt(det induced)


# ---- generic scalar-level assembly (ndarray or Dual entries) -------------

def _inv3(a):
    """Inverse of a 3x3 nested-scalar matrix via adjugate; returns (inv, det)."""
    c00 = a[1][1] * a[2][2] - a[1][2] * a[2][1]
    c01 = a[1][2] * a[2][0] - a[1][0] * a[2][2]
    c02 = a[1][0] * a[2][1] - a[1][1] * a[2][0]
    det = a[0][0] * c00 + a[0][1] * c01 + a[0][2] * c02
    c10 = a[0][2] * a[2][1] - a[0][1] * a[2][2]
    c11 = a[0][0] * a[2][2] - a[0][2] * a[2][0]
    c12 = a[0][1] * a[2][0] - a[0][0] * a[2][1]
    c20 = a[0][1] * a[1][2] - a[0][2] * a[1][1]
    c21 = a[0][2] * a[1][0] - a[0][0] * a[1][2]
    c22 = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    cof = [[c00, c10, c20], [c01, c11, c21], [c02, c12, c22]]
    inv = [[cof[i][j] / det for j in range(3)] for i in range(3)]
    return inv, det


def _christoffel_nested(ginv, dg):
    """Gamma^k_ij = 1/2 g^{kl}(d_i g_jl + d_j g_il - d_l g_ij), nested lists."""
    gamma = [[[None] * 3 for _ in range(3)] for _ in range(3)]
    for k in range(3):
        for i in range(3):
            for j in range(3):
                acc = None
                for l in range(3):
                    term = dg[i][j][l] + dg[j][i][l] - dg[l][i][j]
                    t = ginv[k][l] * term
                    acc = t if acc is None else acc + t
                gamma[k][i][j] = 0.5 * acc
    return gamma


def _nested_from(arr):
    return [[arr[..., i, j] for j in range(3)] for i in range(3)]


def _guard_condition(comps, inv, det):
    fro_g = np.sqrt(np.einsum("...ij,...ij->...", comps, comps))
    fro_i = np.sqrt(np.einsum("...ij,...ij->...", inv, inv))
    bad = ~(np.asarray(det) > 0) | (fro_g * fro_i > _COND_LIMIT)
    if np.any(bad):
        raise SingularMetric(
            f"metric not safely invertible at {int(np.count_nonzero(bad))} point(s)")


def invert_metric(comps):
    """Inverse metric by 3x3 adjugate, with condition-number guard."""
    nested, det = _inv3(_nested_from(np.asarray(comps, dtype=float)))
    inv = np.stack([np.stack([np.asarray(nested[i][j], dtype=float)
                              for j in range(3)], axis=-1) for i in range(3)], axis=-2)
    _guard_condition(comps, inv, det)
    return inv


def christoffel_core(mj: Jet1Metric):
    """(inverse metric, Christoffel array) from metric jets."""
    ginv_nested, det = _inv3(_nested_from(mj.components))
    ginv = np.stack([np.stack([ginv_nested[i][j] for j in range(3)], axis=-1)
                     for i in range(3)], axis=-2)
    _guard_condition(mj.components, ginv, det)
    dg = [[[mj.partials[..., k, i, j] for j in range(3)] for i in range(3)]
          for k in range(3)]
    nested = _christoffel_nested(ginv_nested, dg)
    gamma = np.stack(
        [np.stack([np.stack([nested[k][i][j] for j in range(3)], axis=-1)
                   for i in range(3)], axis=-2) for k in range(3)], axis=-3)
    return ginv, gamma


def curvature_core(mj: Jet2Metric):
    """(ginv, gamma, ricci, scalar) from second-order metric jets.

    The Christoffel map is evaluated on dual-number entries seeded with the
    metric's first and second partials; its eps parts are the Christoffel
    derivatives entering the Ricci tensor.
    """
    g = [[Dual(mj.components[..., i, j], mj.partials[..., :, i, j])
          for j in range(3)] for i in range(3)]
    dg = [[[Dual(mj.partials[..., k, i, j], mj.second[..., :, k, i, j])
            for j in range(3)] for i in range(3)] for k in range(3)]
    ginv_d, det = _inv3(g)
    _guard_condition(mj.components,
                     np.stack([np.stack([ginv_d[i][j].val for j in range(3)],
                                        axis=-1) for i in range(3)], axis=-2),
                     det.val)
    gam = _christoffel_nested(ginv_d, dg)

    base = mj.components.shape[:-2]
    gamma = np.empty(base + (3, 3, 3))
    dgamma = np.empty(base + (3, 3, 3, 3))  # [m, k, i, j] = d_m Gamma^k_ij
    for k in range(3):
        for i in range(3):
            for j in range(3):
                gamma[..., k, i, j] = gam[k][i][j].val
                dgamma[..., :, k, i, j] = gam[k][i][j].eps

    # Ric_ij = d_k G^k_ij - d_i G^k_kj + G^k_kl G^l_ij - G^k_il G^l_kj
    div_term = np.einsum("...kkij->...ij", dgamma)
    grad_trace = np.einsum("...ikkj->...ij", dgamma)
    trace_gamma = np.einsum("...kkl->...l", gamma)
    quad1 = np.einsum("...l,...lij->...ij", trace_gamma, gamma)
    quad2 = np.einsum("...kil,...lkj->...ij", gamma, gamma)
    ric = div_term - grad_trace + quad1 - quad2

    ginv = np.stack([np.stack([ginv_d[i][j].val for j in range(3)], axis=-1)
                     for i in range(3)], axis=-2)
    scal = np.einsum("...ij,...ij->...", ginv, ric)
    return ginv, gamma, ric, scal


def hessian_core(gamma, fj: Jet2Scalar):
    """Covariant Hessian: d^2 f - Gamma^k df_k."""
    return fj.hessian - np.einsum("...kij,...k->...ij", gamma, fj.gradient)


def frame_norm_2tensor(ginv, T):
    """Orthonormal-frame Frobenius norm of a covariant 2-tensor."""
    sq = np.einsum("...ik,...jl,...ij,...kl->...", ginv, ginv, T, T)
    return np.sqrt(np.maximum(sq, 0.0))


# ---- public operations ----------------------------------------------------

def christoffel(g: ChartedMetric, p) -> ConnectionCoefficients:
    """Christoffel symbols of g at p from exact jets."""
    g.chart.require(p)
    _, gamma = christoffel_core(g.jet1(p))
    return ConnectionCoefficients(gamma)


def ricci(g: ChartedMetric, p) -> CurvatureData:
    """Ricci tensor and scalar curvature of g at p."""
    g.chart.require(p)
    _, _, ric, scal = curvature_core(g.jet2(p))
    return CurvatureData(ric, scal)


def hessian(g: ChartedMetric, f: ChartedScalar, p) -> np.ndarray:
    """Covariant Hessian of f with respect to g at p."""
    g.chart.require(p)
    _, gamma = christoffel_core(g.jet1(p))
    return hessian_core(gamma, f.jet(np.asarray(p, dtype=float)))


def laplacian(g: ChartedMetric, f: ChartedScalar, p) -> np.ndarray:
    """Covariant Laplacian of f: metric trace of the Hessian."""
    g.chart.require(p)
    mj = g.jet1(p)
    ginv, gamma = christoffel_core(mj)
    H = hessian_core(gamma, f.jet(np.asarray(p, dtype=float)))
    return np.einsum("...ij,...ij->...", ginv, H)


def coordinate_laplacians(g: ChartedMetric, p) -> np.ndarray:
    """Laplacians of the three chart coordinate functions: -g^{ij} Gamma^k_ij."""
    ginv, gamma = christoffel_core(g.jet1(p))
    return -np.einsum("...ij,...kij->...k", ginv, gamma)


def surface_geometry(g: ChartedMetric, emb, theta, phi) -> SurfaceGeometry:
    """Induced metric, outward unit normal and area element of an embedding.

    The outward direction is fixed against `emb.interior_point`.  The
    returned area element is sqrt(det induced); the quadrature rule supplies
    the sin(theta) parametrization factor separately.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    point = emb.point(theta, phi)
    tang = emb.d1(theta, phi)
    comps = g.components(point)

    induced = np.einsum("...ij,...ia,...jb->...ab", comps, tang, tang)
    det_h = (induced[..., 0, 0] * induced[..., 1, 1]
             - induced[..., 0, 1] * induced[..., 1, 0])
    scale = np.einsum("...ia,...ia->...", tang, tang)
    if np.any(det_h <= 1e-24 * np.maximum(scale, 1.0) ** 2):
        raise DegenerateTangents("embedding tangents linearly dependent")

    e_t, e_p = tang[..., 0], tang[..., 1]
    conormal = np.cross(e_t, e_p)  # annihilates both tangents, metric-free
    normal = np.einsum("...ij,...j->...i", invert_metric(comps), conormal)
    nrm2 = np.einsum("...ij,...i,...j->...", comps, normal, normal)
    normal = normal / np.sqrt(nrm2)[..., None]

    outward = point - np.asarray(emb.interior_point, dtype=float)
    sign = np.sign(np.einsum("...ij,...i,...j->...", comps, normal, outward))
    normal = normal * np.where(sign == 0, 1.0, sign)[..., None]

    return SurfaceGeometry(point, tang, induced, normal, np.sqrt(det_h))
