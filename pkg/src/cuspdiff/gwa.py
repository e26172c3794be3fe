"""Generalized Weyl algebras over shift polynomial rings, with exact products.

A rank n presentation consists of base elements a_1..a_n (a_i a polynomial in
h_i alone) and positive shift steps s_1..s_n.  The algebra is generated over
the base by X_i, Y_i subject to

    X_i d = sigma_i(d) X_i,   Y_i d = sigma_i^{-1}(d) Y_i,
    Y_i X_i = a_i,            X_i Y_i = sigma_i(a_i),

where sigma_i sends h_i to h_i - s_i and fixes the other variables, and
generators of distinct factors commute.  Elements are stored on the basis
v_alpha = prod_i v_{alpha_i}(i) with v_k(i) = X_i^k for k >= 0 and
Y_i^{-k} for k < 0, with base coefficients written on the left.
"""

from __future__ import annotations

from fractions import Fraction

from .exactpoly import (ArityMismatch, BasePoly, NotDivisible, exact_divide,
                        grlex_key, parse_poly, render_poly)
from .skewlaurent import LaurentOp


class PresentationMismatch(ValueError):
    """Elements of different presentations cannot be combined."""


class ImagesViolateRelations(ValueError):
    """Proposed generator images fail the defining relations."""


class NotInImage(ArithmeticError):
    """A Laurent operator is not in the image of the embedding."""


class GwaPresentation:
    """Defining data: one base polynomial and one shift step per factor."""

    __slots__ = ("nvars", "a", "steps", "_pair_cache", "_shift_cache")

    def __init__(self, a, steps):
        a = list(a)
        steps = [int(s) for s in steps]
        if len(a) != len(steps) or not a:
            raise ValueError("need one base polynomial and one step per factor")
        nvars = len(a)
        stored = []
        for i, poly in enumerate(a):
            if not isinstance(poly, BasePoly):
                raise TypeError("base elements must be BasePoly")
            if poly.nvars == 1 and nvars > 1:
                poly = poly.inject(nvars, i)
            if poly.nvars != nvars:
                raise ArityMismatch("base element %d has arity %d, expected %d"
                                    % (i, poly.nvars, nvars))
            if poly.is_zero():
                raise ValueError("base element %d is zero" % i)
            for exp in poly.terms:
                if any(e and j != i for j, e in enumerate(exp)):
                    raise ValueError(
                        "base element %d must involve only h%d" % (i, i + 1))
            stored.append(poly)
        for i, s in enumerate(steps):
            if s < 1:
                raise ValueError("step %d must be a positive integer" % i)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "a", tuple(stored))
        object.__setattr__(self, "steps", tuple(steps))
        object.__setattr__(self, "_pair_cache", {})
        object.__setattr__(self, "_shift_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("GwaPresentation is immutable")

    def __eq__(self, other):
        if not isinstance(other, GwaPresentation):
            return NotImplemented
        return self.a == other.a and self.steps == other.steps

    def __hash__(self):
        return hash((self.a, self.steps))

    def __repr__(self):
        return "GwaPresentation(a=[%s], steps=%s)" % (
            ", ".join(render_poly(p) for p in self.a), list(self.steps))

    def sigma_power(self, d: BasePoly, alpha) -> BasePoly:
        """Apply prod_i sigma_i^{alpha_i} to a base polynomial."""
        key = tuple(int(v) for v in alpha)
        return d.shift([k * s for k, s in zip(key, self.steps)])

    def sigma_of_a(self, i: int, t: int) -> BasePoly:
        """sigma_i^t(a_i), cached."""
        key = (i, t)
        if key not in self._shift_cache:
            shift_vec = [0] * self.nvars
            shift_vec[i] = t * self.steps[i]
            self._shift_cache[key] = self.a[i].shift(shift_vec)
        return self._shift_cache[key]

    def pair_coefficient(self, i: int, n: int, m: int) -> BasePoly:
        """The base coefficient (n, m) with v_n(i) v_m(i) = (n, m) v_{n+m}(i).

        Same signs give 1.  Mixed signs give a product of sigma-shifts of a_i:
        for n > 0 > -m', the factors are sigma^t(a_i) for t descending from n,
        min(n, m') of them; for -n' < 0 < m, the factors are sigma^t(a_i) for
        t ascending from -n'+1, min(n', m) of them.
        """
        key = (i, n, m)
        cached = self._pair_cache.get(key)
        if cached is not None:
            return cached
        if n == 0 or m == 0 or (n > 0) == (m > 0):
            out = BasePoly.one(self.nvars)
        elif n > 0:
            mp = -m
            count = min(n, mp)
            out = BasePoly.one(self.nvars)
            for t in range(n - count + 1, n + 1):
                out = out * self.sigma_of_a(i, t)
        else:
            np = -n
            count = min(np, m)
            out = BasePoly.one(self.nvars)
            for t in range(-np + 1, -np + count + 1):
                out = out * self.sigma_of_a(i, t)
        self._pair_cache[key] = out
        return out

    def pair_coefficient_right(self, i: int, n: int, m: int) -> BasePoly:
        """The right-handed pair coefficient <n, m> = sigma^{-n-m}((n, m))."""
        shift_vec = [0] * self.nvars
        shift_vec[i] = -(n + m) * self.steps[i]
        return self.pair_coefficient(i, n, m).shift(shift_vec)

    # -- element constructors --------------------------------------------

    def element(self, coords) -> "GwaElement":
        return GwaElement(self, coords)

    def zero(self) -> "GwaElement":
        return GwaElement(self, {})

    def one(self) -> "GwaElement":
        return self.basis((0,) * self.nvars)

    def basis(self, alpha) -> "GwaElement":
        return GwaElement(self, {tuple(alpha): BasePoly.one(self.nvars)})

    def from_base(self, d: BasePoly) -> "GwaElement":
        return GwaElement(self, {(0,) * self.nvars: d})


class GwaElement:
    """Element sum_alpha c_alpha v_alpha with left base coefficients."""

    __slots__ = ("presentation", "coords")

    def __init__(self, presentation: GwaPresentation, coords=None):
        clean = {}
        n = presentation.nvars
        for alpha, poly in (coords or {}).items():
            alpha = tuple(int(v) for v in alpha)
            if len(alpha) != n:
                raise ArityMismatch("coordinate %r has length != %d" % (alpha, n))
            if not isinstance(poly, BasePoly):
                poly = BasePoly.constant(n, poly)
            if poly.nvars != n:
                raise ArityMismatch("coefficient arity %d != %d" % (poly.nvars, n))
            if not poly.is_zero():
                clean[alpha] = poly
        object.__setattr__(self, "presentation", presentation)
        object.__setattr__(self, "coords", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GwaElement is immutable")

    def support(self):
        return sorted(self.coords, key=grlex_key, reverse=True)

    def is_zero(self) -> bool:
        return not self.coords

    def _coerce(self, other):
        if isinstance(other, GwaElement):
            if other.presentation != self.presentation:
                raise PresentationMismatch("elements of different presentations")
            return other
        if isinstance(other, BasePoly):
            return self.presentation.from_base(other)
        if isinstance(other, (int, Fraction)):
            n = self.presentation.nvars
            return self.presentation.from_base(BasePoly.constant(n, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        coords = dict(self.coords)
        n = self.presentation.nvars
        for alpha, poly in other.coords.items():
            coords[alpha] = coords.get(alpha, BasePoly.zero(n)) + poly
        return GwaElement(self.presentation, coords)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self):
        return GwaElement(self.presentation,
                          {a: -p for a, p in self.coords.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return gwa_multiply(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return gwa_multiply(other, self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("element powers must be nonnegative integers")
        out = self.presentation.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.presentation,
                     frozenset(self.coords.items())))

    def __repr__(self):
        return "GwaElement(%s)" % render_gwa(self)


def gwa_multiply(u: GwaElement, v: GwaElement) -> GwaElement:
    """Product via the closed-form pair coefficients, factor by factor."""
    if u.presentation != v.presentation:
        raise PresentationMismatch("elements of different presentations")
    pres = u.presentation
    n = pres.nvars
    coords = {}
    for alpha, c in u.coords.items():
        for beta, d in v.coords.items():
            poly = c * pres.sigma_power(d, alpha)
            for i in range(n):
                pc = pres.pair_coefficient(i, alpha[i], beta[i])
                if not pc.is_constant() or pc.constant_value() != 1:
                    poly = poly * pc
            gamma = tuple(a + b for a, b in zip(alpha, beta))
            if gamma in coords:
                coords[gamma] = coords[gamma] + poly
            else:
                coords[gamma] = poly
    return GwaElement(pres, coords)


def render_gwa(u: GwaElement) -> str:
    """Text form on the v-basis using X/Y names (X1, Y1, ... for rank > 1)."""
    if u.is_zero():
        return "0"
    n = u.presentation.nvars
    parts = []
    for alpha in u.support():
        pieces = ["(%s)" % render_poly(u.coords[alpha])]
        for i, k in enumerate(alpha):
            if k == 0:
                continue
            name = ("X" if k > 0 else "Y") if n == 1 else \
                ("X%d" % (i + 1) if k > 0 else "Y%d" % (i + 1))
            e = abs(k)
            pieces.append(name if e == 1 else "%s^%d" % (name, e))
        parts.append(" * ".join(pieces))
    return " + ".join(parts)


def verify_presentation(pres: GwaPresentation, depth: int = 3,
                        extra_base=()) -> "GwaReport":
    """Check defining relations and associativity up to a coordinate bound.

    Runs the relations Y_i X_i = a_i, X_i Y_i = sigma_i(a_i), the commutation
    rules X_i d = sigma_i(d) X_i and Y_i d = sigma_i^{-1}(d) Y_i on sample base
    elements, cross-factor commutation, and associativity of v_alpha v_beta
    v_gamma for all coordinate vectors bounded by depth.
    """
    checks = []
    n = pres.nvars

    def record(name, ok, witness=""):
        checks.append(GwaCheck(name, bool(ok), witness))

    base_samples = [BasePoly.one(n)]
    for i in range(n):
        base_samples.append(BasePoly.variable(n, i))
    base_samples.extend(pres.a)
    base_samples.extend(extra_base)

    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        X = pres.basis(e)
        Y = pres.basis(tuple(-v for v in e))
        prod = Y * X
        record("yx=a[%d]" % i, prod == pres.from_base(pres.a[i]),
               render_gwa(prod))
        prod = X * Y
        record("xy=sigma(a)[%d]" % i,
               prod == pres.from_base(pres.sigma_of_a(i, 1)), render_gwa(prod))
        for k, d in enumerate(base_samples):
            lhs = X * pres.from_base(d)
            rhs = pres.from_base(pres.sigma_power(d, e)) * X
            record("x-shift[%d,%d]" % (i, k), lhs == rhs, render_gwa(lhs))
            lhs = Y * pres.from_base(d)
            rhs = pres.from_base(pres.sigma_power(d, tuple(-v for v in e))) * Y
            record("y-shift[%d,%d]" % (i, k), lhs == rhs, render_gwa(lhs))
        for j in range(i + 1, n):
            f = tuple(1 if k == j else 0 for k in range(n))
            for u in (pres.basis(e), pres.basis(tuple(-v for v in e))):
                for v in (pres.basis(f), pres.basis(tuple(-w for w in f))):
                    record("commute[%d,%d]" % (i, j), u * v == v * u,
                           render_gwa(u * v))

    span = range(-depth, depth + 1)
    if n == 1:
        triples = [((p,), (q,), (r,)) for p in span for q in span for r in span]
    else:
        # bound the coordinate sum for higher rank to keep the sweep small
        vecs = [v for v in _box(n, depth) if sum(abs(c) for c in v) <= depth]
        triples = [(a, b, c) for a in vecs for b in vecs for c in vecs]
    bad = None
    for a, b, c in triples:
        va, vb, vc = pres.basis(a), pres.basis(b), pres.basis(c)
        if (va * vb) * vc != va * (vb * vc):
            bad = (a, b, c)
            break
    record("associativity(depth=%d)" % depth, bad is None,
           "" if bad is None else "failed at %r" % (bad,))
    return GwaReport(checks)


def _box(n, depth):
    if n == 0:
        return [()]
    rest = _box(n - 1, depth)
    return [(v,) + r for v in range(-depth, depth + 1) for r in rest]


class GwaCheck:
    __slots__ = ("name", "ok", "witness")

    def __init__(self, name, ok, witness=""):
        self.name = name
        self.ok = ok
        self.witness = witness


class GwaReport:
    """Outcome of verify_presentation: named checks plus an overall verdict."""

    def __init__(self, checks):
        self.checks = list(checks)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def __repr__(self):
        return "GwaReport(ok=%s, checks=%d)" % (self.ok, len(self.checks))


class Embedding:
    """A homomorphism into the skew Laurent ring given by generator images.

    The images must satisfy every defining relation of the presentation inside
    the Laurent ring; this is checked on construction and violations raise
    ImagesViolateRelations.  Base polynomials map to degree zero operators.
    """

    __slots__ = ("presentation", "x_images", "y_images", "_powers")

    def __init__(self, presentation: GwaPresentation, x_images, y_images,
                 check: bool = True):
        n = presentation.nvars
        x_images = tuple(x_images)
        y_images = tuple(y_images)
        if len(x_images) != n or len(y_images) != n:
            raise ArityMismatch("need one X and one Y image per factor")
        for img in x_images + y_images:
            if not isinstance(img, LaurentOp) or img.nvars != n:
                raise ArityMismatch("images must be LaurentOp of arity %d" % n)
        object.__setattr__(self, "presentation", presentation)
        object.__setattr__(self, "x_images", x_images)
        object.__setattr__(self, "y_images", y_images)
        object.__setattr__(self, "_powers", {})
        if check:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("Embedding is immutable")

    def _validate(self):
        pres = self.presentation
        n = pres.nvars
        for i in range(n):
            X, Y = self.x_images[i], self.y_images[i]
            if Y * X != LaurentOp.from_poly(pres.a[i]):
                raise ImagesViolateRelations("Y%d*X%d != a%d" % (i + 1, i + 1, i + 1))
            if X * Y != LaurentOp.from_poly(pres.sigma_of_a(i, 1)):
                raise ImagesViolateRelations("X%d*Y%d != sigma(a%d)"
                                             % (i + 1, i + 1, i + 1))
            for j in range(n):
                hj = BasePoly.variable(n, j)
                shift_vec = [0] * n
                shift_vec[i] = pres.steps[i]
                sig_h = hj.shift(shift_vec)
                if X * hj != LaurentOp.from_poly(sig_h) * X:
                    raise ImagesViolateRelations(
                        "X%d does not shift h%d correctly" % (i + 1, j + 1))
                inv = hj.shift([-v for v in shift_vec])
                if Y * hj != LaurentOp.from_poly(inv) * Y:
                    raise ImagesViolateRelations(
                        "Y%d does not shift h%d correctly" % (i + 1, j + 1))
            for j in range(i + 1, n):
                for u in (self.x_images[i], self.y_images[i]):
                    for v in (self.x_images[j], self.y_images[j]):
                        if u * v != v * u:
                            raise ImagesViolateRelations(
                                "factor %d and %d images do not commute"
                                % (i + 1, j + 1))

    def _power(self, i: int, k: int) -> LaurentOp:
        key = (i, k)
        if key not in self._powers:
            if k == 0:
                self._powers[key] = LaurentOp.one(self.presentation.nvars)
            elif k > 0:
                self._powers[key] = self._power(i, k - 1) * self.x_images[i]
            else:
                self._powers[key] = self._power(i, k + 1) * self.y_images[i]
        return self._powers[key]

    def apply(self, u: GwaElement) -> LaurentOp:
        if u.presentation != self.presentation:
            raise PresentationMismatch("element from a different presentation")
        n = self.presentation.nvars
        out = LaurentOp.zero(n)
        for alpha, c in u.coords.items():
            img = LaurentOp.from_poly(c)
            for i, k in enumerate(alpha):
                if k:
                    img = img * self._power(i, k)
            out = out + img
        return out

    def basis_image(self, alpha) -> LaurentOp:
        out = LaurentOp.one(self.presentation.nvars)
        for i, k in enumerate(alpha):
            if k:
                out = out * self._power(i, k)
        return out

    def pullback(self, op: LaurentOp) -> GwaElement:
        """Inverse of apply on the image subalgebra; NotInImage otherwise.

        Each basis image is homogeneous of Laurent degree (alpha_i * s_i), so
        the coordinates are recovered one graded component at a time by exact
        division.
        """
        pres = self.presentation
        n = pres.nvars
        if op.nvars != n:
            raise ArityMismatch("operator arity %d != %d" % (op.nvars, n))
        coords = {}
        for deg, poly in op.components.items():
            alpha = []
            for v, s in zip(deg, pres.steps):
                if v % s:
                    raise NotInImage(
                        "degree %r is not a multiple of the steps" % (deg,))
                alpha.append(v // s)
            alpha = tuple(alpha)
            img = self.basis_image(alpha)
            psi = img.components.get(deg)
            if psi is None:
                raise NotInImage("basis image at %r vanishes" % (alpha,))
            try:
                coords[alpha] = exact_divide(poly, psi)
            except NotDivisible as exc:
                raise NotInImage(
                    "component at %r is not a multiple of the basis image"
                    % (deg,)) from exc
        return GwaElement(pres, coords)


def embed(u: GwaElement, embedding: Embedding) -> LaurentOp:
    """Apply an embedding to an element (function form of Embedding.apply)."""
    return embedding.apply(u)


def presentation_to_json(pres: GwaPresentation) -> dict:
    return {
        "rank": pres.nvars,
        "a": [render_poly(p) for p in pres.a],
        "steps": list(pres.steps),
    }


def presentation_from_json(data: dict) -> GwaPresentation:
    rank = int(data["rank"])
    a = [parse_poly(text, nvars=rank) for text in data["a"]]
    return GwaPresentation(a, data["steps"])
