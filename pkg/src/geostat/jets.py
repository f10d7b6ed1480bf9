"""Forward-mode differentiation carriers.

Fields are written as ordinary Python expressions over three coordinate
symbols.  Evaluating the same expression on :class:`Jet` inputs propagates
value, gradient and Hessian through every operation, so downstream curvature
formulas see derivatives that are exact up to roundoff (no truncation).
:class:`Dual` carries first-order directional data in all three coordinate
directions at once and is used to push derivatives through maps whose inputs
are already jet data (the Christoffel map, in practice).

The module-level math functions (`exp`, `log`, `sqrt`, ...) dispatch on the
argument type, so a single defining expression can be evaluated either on
jets or on plain float arrays (the plain path feeds root finders and the
finite-difference test oracle).

Everything is vectorized: `val` may have any leading batch shape, `grad`
appends an axis of length 3 and `hess` two of them.
"""

import numpy as np

__all__ = [
    "Jet", "Dual", "coordinate_jets", "constant_jet", "compose_2var",
    "exp", "log", "sqrt", "sin", "cos",
]


def _outer(a, b):
    return a[..., :, None] * b[..., None, :]


class Jet:
    """Second-order jet: value, gradient and Hessian in chart coordinates."""

    __slots__ = ("val", "grad", "hess")

    def __init__(self, val, grad, hess):
        self.val = val
        self.grad = grad
        self.hess = hess

    # ---- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.grad + other.grad,
                       self.hess + other.hess)
        return Jet(self.val + other, self.grad, self.hess)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val - other.val, self.grad - other.grad,
                       self.hess - other.hess)
        return Jet(self.val - other, self.grad, self.hess)

    def __rsub__(self, other):
        return Jet(other - self.val, -self.grad, -self.hess)

    def __neg__(self):
        return Jet(-self.val, -self.grad, -self.hess)

    def __mul__(self, other):
        if isinstance(other, Jet):
            val = self.val * other.val
            grad = self.val[..., None] * other.grad + other.val[..., None] * self.grad
            hess = (self.val[..., None, None] * other.hess
                    + other.val[..., None, None] * self.hess
                    + _outer(self.grad, other.grad)
                    + _outer(other.grad, self.grad))
            return Jet(val, grad, hess)
        other = np.asarray(other, dtype=float)
        return Jet(self.val * other, self.grad * other[..., None],
                   self.hess * other[..., None, None])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other._reciprocal()
        return self * (1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other):
        return self._reciprocal() * other

    def __pow__(self, p):
        if p == 2:
            return self * self
        v = self.val
        return self._chain(v ** p, p * v ** (p - 1), p * (p - 1) * v ** (p - 2))

    def _reciprocal(self):
        v = self.val
        return self._chain(1.0 / v, -1.0 / v ** 2, 2.0 / v ** 3)

    def _chain(self, f, fp, fpp):
        """Compose with a univariate function given f(v), f'(v), f''(v)."""
        grad = fp[..., None] * self.grad
        hess = (fp[..., None, None] * self.hess
                + fpp[..., None, None] * _outer(self.grad, self.grad))
        return Jet(f, grad, hess)

    # ---- elementary functions ------------------------------------------

    def exp(self):
        e = np.exp(self.val)
        return self._chain(e, e, e)

    def log(self):
        v = self.val
        return self._chain(np.log(v), 1.0 / v, -1.0 / v ** 2)

    def sqrt(self):
        s = np.sqrt(self.val)
        return self._chain(s, 0.5 / s, -0.25 / (s * self.val))

    def sin(self):
        s, c = np.sin(self.val), np.cos(self.val)
        return self._chain(s, c, -s)

    def cos(self):
        s, c = np.sin(self.val), np.cos(self.val)
        return self._chain(c, -s, -c)


class Dual:
    """First-order dual number carrying derivatives in all 3 directions.

    `val` has shape (...,), `eps` has shape (..., 3) with eps[..., k] the
    derivative in coordinate direction k.
    """

    __slots__ = ("val", "eps")

    def __init__(self, val, eps):
        self.val = val
        self.eps = eps

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.eps + other.eps)
        return Dual(self.val + other, self.eps)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self.eps - other.eps)
        return Dual(self.val - other, self.eps)

    def __rsub__(self, other):
        return Dual(other - self.val, -self.eps)

    def __neg__(self):
        return Dual(-self.val, -self.eps)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val * other.val,
                        self.val[..., None] * other.eps
                        + other.val[..., None] * self.eps)
        return Dual(self.val * other, self.eps * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            inv = 1.0 / other.val
            val = self.val * inv
            eps = (self.eps - val[..., None] * other.eps) * inv[..., None]
            return Dual(val, eps)
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        inv = 1.0 / self.val
        val = other * inv
        return Dual(val, -val[..., None] * self.eps * inv[..., None])


def coordinate_jets(points):
    """Seed jets for the three chart coordinates at `points` (..., 3)."""
    pts = np.asarray(points, dtype=float)
    base = pts.shape[:-1]
    hess = np.zeros(base + (3, 3))
    out = []
    for i in range(3):
        grad = np.zeros(base + (3,))
        grad[..., i] = 1.0
        out.append(Jet(pts[..., i], grad, hess))
    return tuple(out)


def constant_jet(value, base_shape):
    """Jet of a constant field broadcast to `base_shape`."""
    val = np.broadcast_to(np.asarray(value, dtype=float), base_shape).copy()
    return Jet(val, np.zeros(base_shape + (3,)), np.zeros(base_shape + (3, 3)))


def compose_2var(vals, a, b):
    """Compose a two-variable function with jets a, b.

    `vals` = (F, F_a, F_b, F_aa, F_ab, F_bb) evaluated at (a.val, b.val).
    """
    F, Fa, Fb, Faa, Fab, Fbb = vals
    grad = Fa[..., None] * a.grad + Fb[..., None] * b.grad
    hess = (Fa[..., None, None] * a.hess + Fb[..., None, None] * b.hess
            + Faa[..., None, None] * _outer(a.grad, a.grad)
            + Fab[..., None, None] * (_outer(a.grad, b.grad) + _outer(b.grad, a.grad))
            + Fbb[..., None, None] * _outer(b.grad, b.grad))
    return Jet(F, grad, hess)


# ---- dispatching math functions (work on Jet or ndarray) ----------------

def exp(x):
    return x.exp() if isinstance(x, Jet) else np.exp(x)


def log(x):
    return x.log() if isinstance(x, Jet) else np.log(x)


def sqrt(x):
    return x.sqrt() if isinstance(x, Jet) else np.sqrt(x)


def sin(x):
    return x.sin() if isinstance(x, Jet) else np.sin(x)


def cos(x):
    return x.cos() if isinstance(x, Jet) else np.cos(x)
