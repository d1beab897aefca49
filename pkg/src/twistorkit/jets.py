"""Truncated multivariate Taylor (jet) arithmetic and Wirtinger calculus.

A :class:`Jet` is the Taylor expansion of a smooth function at a base point,
truncated at a fixed total order.  Sums, products and quotients of jets are
exact modulo truncation, so all derivatives read off a jet are exact up to
floating-point rounding -- this is the derivative engine behind every
residual checker in the package.  Complex coefficients are allowed
throughout; a complex-valued jet represents a C-valued function of real
variables, and conjugation acts on coefficients.

The identification C^m = R^(2m) is fixed once and for all as
``z_j = x_{2j} + i x_{2j+1}`` (0-based pairs), and the Wirtinger operators
``dz``/``dzbar`` are derived from it.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product as _iproduct

import numpy as np

DEFAULT_JET_ORDER = 4
JET_EXACT_TOL = 1e-9
NEWTON_TOL = 1e-6


class JetError(ValueError):
    pass


@lru_cache(maxsize=None)
class _Table:
    """Enumeration of multi-indices of total degree <= order, with cached
    convolution and differentiation index maps.  Indices are sorted by
    (degree, lex) so lower-order tables are prefixes of higher-order ones."""

    def __init__(self, nvars, order):
        self.nvars = nvars
        self.order = order
        idx = [a for a in _iproduct(range(order + 1), repeat=nvars) if sum(a) <= order]
        idx.sort(key=lambda a: (sum(a), a))
        self.indices = idx
        self.position = {a: i for i, a in enumerate(idx)}
        self.degrees = np.array([sum(a) for a in idx])
        self.size = len(idx)
        # prefix length per degree, for truncation
        self._prefix = np.searchsorted(self.degrees, np.arange(order + 2))
        self._mul = None
        self._partial = {}

    def prefix_size(self, order):
        return int(self._prefix[order + 1])

    def mul_triples(self):
        if self._mul is None:
            I, J, K = [], [], []
            for i, a in enumerate(self.indices):
                da = self.degrees[i]
                for j, b in enumerate(self.indices):
                    if da + self.degrees[j] > self.order:
                        continue
                    I.append(i)
                    J.append(j)
                    K.append(self.position[tuple(x + y for x, y in zip(a, b))])
            self._mul = (np.array(I), np.array(J), np.array(K))
        return self._mul

    def partial_map(self, var):
        """(src, mult) so that (d/dx_var f).coef[q] = mult[q] * f.coef[src[q]]
        over the prefix table of order-1."""
        if var not in self._partial:
            n = self.prefix_size(self.order - 1) if self.order > 0 else 0
            src = np.zeros(n, dtype=int)
            mult = np.zeros(n)
            for q in range(n):
                b = self.indices[q]
                up = tuple(x + (1 if k == var else 0) for k, x in enumerate(b))
                src[q] = self.position[up]
                mult[q] = b[var] + 1
            self._partial[var] = (src, mult)
        return self._partial[var]


def _factorial_multi(alpha):
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


class Jet:
    """Truncated Taylor expansion of one scalar quantity at a base point.

    ``coef[i]`` is the coefficient of ``prod (x_k - base_k)**alpha_k`` for the
    multi-index ``alpha = table.indices[i]``; the derivative of order alpha at
    the base point is ``alpha! * coef[i]``.
    """

    __slots__ = ("table", "base", "coef")

    def __init__(self, table, base, coef):
        self.table = table
        self.base = base
        self.coef = coef

    # -- construction -------------------------------------------------
    @staticmethod
    def constant(value, nvars, order, base):
        t = _Table(nvars, order)
        c = np.zeros(t.size, dtype=complex)
        c[0] = value
        return Jet(t, base, c)

    @staticmethod
    def variable(i, nvars, order, base):
        t = _Table(nvars, order)
        c = np.zeros(t.size, dtype=complex)
        c[0] = base[i]
        if order >= 1:
            e = tuple(1 if k == i else 0 for k in range(nvars))
            c[t.position[e]] = 1.0
        return Jet(t, base, c)

    # -- metadata ------------------------------------------------------
    @property
    def nvars(self):
        return self.table.nvars

    @property
    def order(self):
        return self.table.order

    @property
    def value(self):
        return self.coef[0]

    def __repr__(self):
        return f"Jet(nvars={self.nvars}, order={self.order}, value={self.value})"

    # -- helpers ---------------------------------------------------------
    def _like(self, coef, order=None):
        t = self.table if order is None else _Table(self.nvars, order)
        return Jet(t, self.base, coef)

    def truncated(self, order):
        if order > self.order:
            raise JetError(f"cannot raise jet order {self.order} -> {order}")
        if order == self.order:
            return self
        t = _Table(self.nvars, order)
        return Jet(t, self.base, self.coef[: t.size].copy())

    def _coerce(self, other):
        """Align two jets (or jet and scalar) to a common table."""
        if not isinstance(other, Jet):
            return self, Jet.constant(other, self.nvars, self.order, self.base)
        if other.nvars != self.nvars:
            raise JetError(f"jet variable count mismatch: {self.nvars} vs {other.nvars}")
        if not np.array_equal(np.asarray(self.base), np.asarray(other.base)):
            raise JetError("jet base points differ")
        order = min(self.order, other.order)
        return self.truncated(order), other.truncated(order)

    # -- ring operations ---------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        return a._like(a.coef + b.coef)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        return a._like(a.coef - b.coef)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        return a._like(b.coef - a.coef)

    def __neg__(self):
        return self._like(-self.coef)

    def __mul__(self, other):
        a, b = self._coerce(other)
        if not isinstance(other, Jet):
            return a._like(a.coef * b.coef[0])
        I, J, K = a.table.mul_triples()
        out = np.zeros(a.table.size, dtype=complex)
        np.add.at(out, K, a.coef[I] * b.coef[J])
        return a._like(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self._like(self.coef / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise JetError("jet powers must be nonnegative integers")
        out = Jet.constant(1.0, self.nvars, self.order, self.base)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def conj(self):
        return self._like(np.conj(self.coef))

    @property
    def real(self):
        return (self + self.conj()) * 0.5

    @property
    def imag(self):
        return (self - self.conj()) * (-0.5j)

    # -- analytic composition ------------------------------------------
    def _series(self, a):
        """sum_k a[k] * (self - value)**k, truncated; a[k] = f^(k)(value)/k!."""
        u = self - self.value
        out = Jet.constant(a[0], self.nvars, self.order, self.base)
        p = Jet.constant(1.0, self.nvars, self.order, self.base)
        for k in range(1, min(len(a), self.order + 1)):
            p = p * u
            out = out + a[k] * p
        return out

    def reciprocal(self):
        c = self.value
        if c == 0:
            raise JetError("jet division requires a nonzero constant term")
        return self._series([(-1) ** k / c ** (k + 1) for k in range(self.order + 1)])

    def sqrt(self):
        c = self.value
        if c == 0:
            raise JetError("jet sqrt requires a nonzero constant term")
        r = np.sqrt(complex(c))
        a = [r]
        for k in range(1, self.order + 1):
            a.append(a[-1] * (0.5 - (k - 1)) / k / c)
        return self._series(a)

    def exp(self):
        e = np.exp(complex(self.value))
        return self._series([e / math.factorial(k) for k in range(self.order + 1)])

    def log(self):
        c = self.value
        if c == 0:
            raise JetError("jet log requires a nonzero constant term")
        a = [np.log(complex(c))]
        for k in range(1, self.order + 1):
            a.append((-1) ** (k + 1) / (k * c ** k))
        return self._series(a)

    # -- derivatives ----------------------------------------------------
    def coefficient(self, alpha):
        return self.coef[self.table.position[tuple(alpha)]]

    def deriv(self, alpha):
        """Exact partial derivative of multi-order alpha at the base point."""
        alpha = tuple(alpha)
        if sum(alpha) > self.order:
            raise JetError(f"derivative order {alpha} exceeds jet order {self.order}")
        return _factorial_multi(alpha) * self.coefficient(alpha)

    def partial(self, var):
        """Jet of d(self)/dx_var, one order lower."""
        if self.order == 0:
            raise JetError("cannot differentiate an order-0 jet")
        src, mult = self.table.partial_map(var)
        t = _Table(self.nvars, self.order - 1)
        return Jet(t, self.base, self.coef[src] * mult)


class JetSpace:
    """Factory for jets sharing one base point and truncation order."""

    def __init__(self, base_point, order):
        self.base = tuple(float(x) for x in np.atleast_1d(base_point))
        self.order = int(order)
        self.nvars = len(self.base)

    def var(self, i):
        return Jet.variable(i, self.nvars, self.order, self.base)

    def const(self, value):
        return Jet.constant(value, self.nvars, self.order, self.base)

    def vars(self):
        return [self.var(i) for i in range(self.nvars)]

    def complex_vars(self):
        """z_j = x_{2j} + i x_{2j+1}; requires an even number of variables."""
        if self.nvars % 2:
            raise JetError("complex variables need an even-dimensional space")
        xs = self.vars()
        return [xs[2 * j] + 1j * xs[2 * j + 1] for j in range(self.nvars // 2)]


# ---------------------------------------------------------------------------
# point conversions C^m <-> R^(2m)

def complex_to_real_point(z):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty(2 * z.size)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def real_to_complex_point(x):
    x = np.asarray(x, dtype=float)
    return x[0::2] + 1j * x[1::2]


def complex_view(vec):
    """Pair consecutive entries of a real-component vector: v_{2j}+i v_{2j+1}.

    This is the C^n-identified view of a (complexified) tangent vector; the
    full 2n-component vector is the primary representation and is what the
    bilinear pairings consume.
    """
    vec = np.asarray(vec)
    return vec[0::2] + 1j * vec[1::2]


# ---------------------------------------------------------------------------
# smooth maps between flat spaces

class SmoothMap:
    """A map R^(2m) -> R^(2n) given by a jet evaluator.

    ``evaluator(point, order)`` must return one :class:`Jet` per real output
    component, deterministically (same point and order give identical
    coefficients).
    """

    def __init__(self, domain_dim, codomain_dim, evaluator, name=None):
        self.domain_dim = int(domain_dim)
        self.codomain_dim = int(codomain_dim)
        self.evaluator = evaluator
        self.name = name

    def jets(self, point, order):
        point = np.asarray(point, dtype=float)
        if point.size != self.domain_dim:
            raise JetError(
                f"point dimension {point.size} != domain dimension {self.domain_dim}")
        out = self.evaluator(point, order)
        if len(out) != self.codomain_dim:
            raise JetError("evaluator returned wrong number of components")
        return out

    def complex_jets(self, point, order):
        js = self.jets(point, order)
        return [js[2 * k] + 1j * js[2 * k + 1] for k in range(self.codomain_dim // 2)]

    def __call__(self, point):
        return np.array([j.value.real for j in self.jets(point, 0)])

    def jacobian(self, point):
        js = self.jets(point, 1)
        J = np.empty((self.codomain_dim, self.domain_dim))
        for r, jet in enumerate(js):
            for c in range(self.domain_dim):
                e = tuple(1 if k == c else 0 for k in range(self.domain_dim))
                J[r, c] = jet.coefficient(e).real
        return J

    @classmethod
    def from_complex(cls, m, n, fn, name=None):
        """Build a map from a function of complex jet variables.

        ``fn`` receives m complex jets (with ``.conj()`` available) and must
        return n complex jets; real and imaginary parts become the 2n real
        components.
        """

        def evaluator(point, order):
            space = JetSpace(point, order)
            ws = fn(*space.complex_vars())
            if isinstance(ws, Jet):
                ws = [ws]
            out = []
            for w in ws:
                out.append(w.real)
                out.append(w.imag)
            return out

        return cls(2 * m, 2 * n, evaluator, name=name)

    @classmethod
    def from_real(cls, domain_dim, codomain_dim, fn, name=None):
        def evaluator(point, order):
            space = JetSpace(point, order)
            out = fn(*space.vars())
            if isinstance(out, Jet):
                out = [out]
            return list(out)

        return cls(domain_dim, codomain_dim, evaluator, name=name)


# ---------------------------------------------------------------------------
# Wirtinger operators

def dz(jet, i=0):
    """d/dz_i = (d/dx_{2i} - i d/dx_{2i+1}) / 2 acting on a jet."""
    return (jet.partial(2 * i) - 1j * jet.partial(2 * i + 1)) * 0.5


def dzbar(jet, i=0):
    return (jet.partial(2 * i) + 1j * jet.partial(2 * i + 1)) * 0.5


def dz_power(phi, r, z0, direction=0, order=None):
    """Exact r-th iterated d/dz_{direction} derivative of every real component.

    Returns the complex 2n-vector of Wirtinger derivatives of the real
    components (flat target, so iterated covariant derivatives are plain
    partials).  Use :func:`complex_view` for the C^n-identified view.
    """
    if r < 1:
        raise JetError("dz_power needs r >= 1")
    order = DEFAULT_JET_ORDER if order is None else order
    if r > order:
        raise JetError(f"r={r} exceeds jet order {order}")
    z0 = np.atleast_1d(np.asarray(z0))
    if np.iscomplexobj(z0) or 2 * z0.size == phi.domain_dim:
        point = complex_to_real_point(z0)
    else:
        point = np.asarray(z0, dtype=float)
    jets = phi.jets(point, r)
    out = np.empty(phi.codomain_dim, dtype=complex)
    for k, jet in enumerate(jets):
        for _ in range(r):
            jet = dz(jet, direction)
        out[k] = jet.value
    return out


def laplacian(phi, x0, order=2):
    """Sum of pure second partials over all domain coordinates (flat spaces)."""
    if order < 2:
        raise JetError("laplacian needs jet order >= 2")
    x0 = np.asarray(x0, dtype=float)
    jets = phi.jets(x0, order)
    d = phi.domain_dim
    out = np.zeros(phi.codomain_dim)
    for k, jet in enumerate(jets):
        s = 0.0
        for v in range(d):
            e = tuple(2 if c == v else 0 for c in range(d))
            s += 2.0 * jet.coefficient(e).real
        out[k] = s
    return out


# ---------------------------------------------------------------------------
# composition and local inversion of jet maps

def compose(f, gs):
    """Substitute jets gs (in new variables) for the offsets of jet f.

    All g in gs must share a table; g_k stands for x_k - base_k of f's space,
    so each g must have zero constant term.
    """
    g0 = gs[0]
    for g in gs:
        if abs(g.value) > 0:
            raise JetError("composition offsets must have zero constant term")
    order = g0.order
    powers = []
    for g in gs:
        ps = [Jet.constant(1.0, g0.nvars, order, g0.base)]
        for _ in range(order):
            ps.append(ps[-1] * g)
        powers.append(ps)
    out = Jet.constant(f.coef[0], g0.nvars, order, g0.base)
    for pos, alpha in enumerate(f.table.indices):
        d = f.table.degrees[pos]
        if d == 0 or d > order:
            continue
        c = f.coef[pos]
        if c == 0:
            continue
        term = Jet.constant(c, g0.nvars, order, g0.base)
        for k, e in enumerate(alpha):
            if e:
                term = term * powers[k][e]
        out = out + term
    return out


def invert_jet_map(F):
    """Local series inverse of a jet map.

    F is a list of K jets in K variables (taken at some base y0).  Returns a
    list G of K jets, in variables w = F(y) - F(y0), representing y - y0; the
    base point of the returned jets is F(y0) split into real parts.
    """
    K = len(F)
    order = F[0].order
    q0 = np.array([f.value for f in F])
    A = np.empty((K, K), dtype=complex)
    for r, f in enumerate(F):
        for c in range(K):
            e = tuple(1 if k == c else 0 for k in range(K))
            A[r, c] = f.coefficient(e)
    Ainv = np.linalg.inv(A)
    new_base = tuple(v.real for v in q0)

    def const(v):
        return Jet.constant(v, K, order, new_base)

    w = [Jet.variable(i, K, order, new_base) - new_base[i] for i in range(K)]
    # shifted forward map: components of F(y0 + u) - q0 as series in u
    Fs = [f._like(f.coef.copy()) for f in F]
    for f in Fs:
        f.coef[0] = 0.0
    G = [sum((Ainv[i, j] * w[j] for j in range(K)), const(0.0)) for i in range(K)]
    for _ in range(max(1, order)):
        R = [compose(Fs[i], G) - w[i] for i in range(K)]
        if all(np.max(np.abs(r.coef)) == 0 for r in R):
            break
        G = [G[i] - sum((Ainv[i, j] * R[j] for j in range(K)), const(0.0))
             for i in range(K)]
    return G
