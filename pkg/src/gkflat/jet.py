"""Second-order forward differentiation.

A :class:`Jet` carries a value together with its gradient and Hessian with
respect to ``D`` parameters. All three arrays may carry leading batch axes, so
a whole parameter grid is differentiated in one pass::

    >>> u, v = variables([2.0, 3.0])
    >>> w = u * v
    >>> w.val, w.grad, w.hess
    (array(6.), array([3., 2.]), array([[0., 1.], [1., 0.]]))

Charts are written as ordinary Python callables built from the arithmetic
operators and the functions of this module (``sin``, ``cosh``, ``sqrt``...).
The same callable works on floats, numpy arrays and jets; wrapping it in an
:class:`Expr` fixes its parameter dimension.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, StencilOutOfDomain

FD_STEP = 1e-4


class Jet:
    __slots__ = ("val", "grad", "hess")
    # make numpy scalars and arrays defer to the reflected operators
    __array_ufunc__ = None

    def __init__(self, val, grad, hess):
        self.val = val
        self.grad = grad
        self.hess = hess

    @property
    def dim(self):
        return self.grad.shape[-1]

    def _const(self, c):
        c = np.asarray(c, dtype=float)
        shape = np.broadcast_shapes(c.shape, self.val.shape)
        d = self.dim
        return Jet(np.broadcast_to(c, shape).copy(), np.zeros(shape + (d,)), np.zeros(shape + (d, d)))

    def _chain(self, f0, f1, f2):
        g = self.grad
        return Jet(
            f0,
            f1[..., None] * g,
            f1[..., None, None] * self.hess + f2[..., None, None] * (g[..., :, None] * g[..., None, :]),
        )

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.grad + other.grad, self.hess + other.hess)
        c = np.asarray(other, dtype=float)
        return Jet(self.val + c, self.grad + np.zeros(c.shape + (1,)), self.hess + np.zeros(c.shape + (1, 1)))

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.grad, -self.hess)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self, other
            ga, gb = a.grad, b.grad
            cross = ga[..., :, None] * gb[..., None, :]
            return Jet(
                a.val * b.val,
                a.val[..., None] * gb + b.val[..., None] * ga,
                a.val[..., None, None] * b.hess + b.val[..., None, None] * a.hess
                + cross + np.swapaxes(cross, -1, -2),
            )
        c = np.asarray(other, dtype=float)
        return Jet(self.val * c, self.grad * c[..., None], self.hess * c[..., None, None])

    __rmul__ = __mul__

    def reciprocal(self):
        x = self.val
        if np.any(x == 0):
            raise DomainError("division by zero")
        r = 1.0 / x
        return self._chain(r, -r * r, 2.0 * r * r * r)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        c = np.asarray(other, dtype=float)
        if np.any(c == 0):
            raise DomainError("division by zero")
        return self * (1.0 / c)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if isinstance(n, Jet):
            return exp(n * log(self))
        n = float(n)
        x = self.val
        if n == int(n) and n >= 0:
            k = int(n)
            if k == 0:
                return self._const(1.0)
            if k == 1:
                return self
            f1 = k * x ** (k - 1)
            f2 = k * (k - 1) * x ** (k - 2) if k >= 2 else np.zeros_like(x)
            return self._chain(x ** k, f1, f2)
        if n == int(n):
            if np.any(x == 0):
                raise DomainError("negative power of zero")
        elif np.any(x <= 0):
            raise DomainError("fractional power of a nonpositive number")
        return self._chain(x ** n, n * x ** (n - 1), n * (n - 1) * x ** (n - 2))

    def __rpow__(self, base):
        return exp(self * np.log(base))

    def __repr__(self):
        return f"Jet(val={self.val!r}, grad={self.grad!r}, hess={self.hess!r})"


def variables(point):
    """Seed jets for the coordinates of ``point`` (shape ``(..., D)``)."""
    p = np.asarray(point, dtype=float)
    d = p.shape[-1]
    batch = p.shape[:-1]
    out = []
    for i in range(d):
        g = np.zeros(batch + (d,))
        g[..., i] = 1.0
        out.append(Jet(p[..., i].copy(), g, np.zeros(batch + (d, d))))
    return out


def _unary(name, f0, f1, f2, check=None):
    def fn(x):
        if isinstance(x, Jet):
            if check is not None:
                check(x.val)
            return x._chain(f0(x.val), f1(x.val), f2(x.val))
        if check is not None:
            check(np.asarray(x, dtype=float))
        return f0(np.asarray(x, dtype=float)) if np.ndim(x) else float(f0(float(x)))

    fn.__name__ = name
    return fn


def _positive(what):
    def check(x):
        if np.any(x <= 0):
            raise DomainError(f"{what} of a nonpositive argument")
    return check


sin = _unary("sin", np.sin, np.cos, lambda x: -np.sin(x))
cos = _unary("cos", np.cos, lambda x: -np.sin(x), lambda x: -np.cos(x))
sinh = _unary("sinh", np.sinh, np.cosh, np.sinh)
cosh = _unary("cosh", np.cosh, np.sinh, np.cosh)
exp = _unary("exp", np.exp, np.exp, np.exp)
log = _unary("log", np.log, lambda x: 1.0 / x, lambda x: -1.0 / (x * x), _positive("log"))
sqrt = _unary("sqrt", np.sqrt, lambda x: 0.5 / np.sqrt(x), lambda x: -0.25 / (x * np.sqrt(x)),
              _positive("sqrt"))


def power(x, n):
    if isinstance(x, Jet):
        return x ** n
    x = np.asarray(x, dtype=float)
    if n != int(n) and np.any(x <= 0):
        raise DomainError("fractional power of a nonpositive number")
    return x ** n


@dataclass(frozen=True)
class MapJet:
    """Value, first and second derivatives of a vector-valued map.

    Shapes are ``value (..., m)``, ``grad (..., m, D)``, ``hess (..., m, D, D)``
    where ``m`` is the number of components (5 for maps into R^5_1).
    """

    value: np.ndarray
    grad: np.ndarray
    hess: np.ndarray

    @property
    def dim(self):
        return self.grad.shape[-1]

    def component(self, k):
        return Jet(self.value[..., k], self.grad[..., k, :], self.hess[..., k, :, :])

    def at(self, index):
        """Select one point from a batched jet."""
        return MapJet(self.value[index], self.grad[index], self.hess[index])

    def partial(self, i):
        """Vector ``d map / d x_i``."""
        return self.grad[..., :, i]

    def second(self, i, j):
        return self.hess[..., :, i, j]


def _stack(components, batch):
    cols = [np.broadcast_to(np.asarray(c, dtype=float), batch) for c in components]
    return np.stack(cols, axis=-1)


def jet_eval(expr, p):
    """Differentiate ``expr`` (an :class:`Expr` or callable) at ``p``.

    ``p`` has shape ``(D,)`` or ``(..., D)`` for a batch of points.
    """
    p = np.asarray(p, dtype=float)
    if isinstance(expr, Expr) and p.shape[-1] != expr.dim:
        raise ValueError(f"{expr.name or 'expression'} takes {expr.dim} parameters, got {p.shape[-1]}")
    xs = variables(p)
    batch = p.shape[:-1]
    d = p.shape[-1]
    out = []
    for c in expr(xs):
        if not isinstance(c, Jet):
            c = xs[0]._const(c)
        out.append(c)
    val = _stack([c.val for c in out], batch)
    grad = np.stack([np.broadcast_to(c.grad, batch + (d,)) for c in out], axis=-2)
    hess = np.stack([np.broadcast_to(c.hess, batch + (d, d)) for c in out], axis=-3)
    return MapJet(val, grad, hess)


@dataclass(frozen=True)
class Expr:
    """A chart ``fn`` of ``dim`` parameters returning a sequence of components."""

    fn: Callable
    dim: int
    name: str = ""

    def __call__(self, xs):
        return self.fn(xs)

    def evaluate(self, p):
        """Plain values at ``p`` (shape ``(..., dim)``) as an array ``(..., m)``."""
        p = np.asarray(p, dtype=float)
        if p.shape[-1] != self.dim:
            raise ValueError(f"{self.name or 'expression'} takes {self.dim} parameters, got {p.shape[-1]}")
        xs = [p[..., i] for i in range(self.dim)]
        return _stack(self.fn(xs), p.shape[:-1])

    def jet(self, p):
        return jet_eval(self, p)


def fd_oracle(fmap, p, h=FD_STEP, box=None):
    """Central finite-difference estimate of value, gradient and Hessian.

    ``fmap`` maps a point of shape ``(D,)`` to an array of components. If
    ``box`` (a sequence of ``(lo, hi)`` pairs) is given, the whole stencil must
    lie inside it.
    """
    if not h > 0:
        raise StencilOutOfDomain(f"finite-difference step must be positive, got {h}")
    p = np.asarray(p, dtype=float)
    d = p.size
    if box is not None:
        for i, (lo, hi) in enumerate(box):
            if p[i] - h < lo or p[i] + h > hi:
                raise StencilOutOfDomain(f"stencil leaves the box along axis {i}")
    f = fmap.evaluate if isinstance(fmap, Expr) else fmap
    e = np.eye(d) * h
    f0 = np.asarray(f(p), dtype=float)
    m = f0.size
    grad = np.empty((m, d))
    hess = np.empty((m, d, d))
    plus = [np.asarray(f(p + e[i]), dtype=float) for i in range(d)]
    minus = [np.asarray(f(p - e[i]), dtype=float) for i in range(d)]
    for i in range(d):
        grad[:, i] = (plus[i] - minus[i]) / (2 * h)
        hess[:, i, i] = (plus[i] - 2 * f0 + minus[i]) / (h * h)
        for j in range(i + 1, d):
            hij = (f(p + e[i] + e[j]) - f(p + e[i] - e[j]) - f(p - e[i] + e[j]) + f(p - e[i] - e[j])) / (4 * h * h)
            hess[:, i, j] = hess[:, j, i] = hij
    return MapJet(f0, grad, hess)
