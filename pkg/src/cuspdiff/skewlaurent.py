"""The ambient skew Laurent ring: Laurent operators over shift polynomials.

Elements are finite sums  sum_alpha  d_alpha(h) * x^alpha  with alpha in Z^n
and d_alpha in Q[h1..hn].  Multiplication moves x past coefficients by the
shift rule  x^alpha * d = shift(d, alpha) * x^alpha, which encodes
x_i h_i = (h_i - 1) x_i.  The Weyl algebra sits inside via
partial_i = h_i x_i^{-1}.
"""

from __future__ import annotations

from fractions import Fraction

from .exactpoly import (ArityMismatch, BasePoly, NotDivisible, divides,
                        exact_divide, grlex_key, parse_poly, poly_from_json,
                        poly_to_json, render_poly)


class LaurentOp:
    """An element of the skew Laurent ring, graded by x-degree in Z^n.

    components maps degree vectors to nonzero BasePoly coefficients, always
    written with the polynomial on the left of the monomial x^alpha.
    """

    __slots__ = ("nvars", "components")

    def __init__(self, nvars: int, components=None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        clean = {}
        for deg, poly in (components or {}).items():
            deg = tuple(int(v) for v in deg)
            if len(deg) != nvars:
                raise ArityMismatch("degree %r has length != %d" % (deg, nvars))
            if not isinstance(poly, BasePoly):
                poly = BasePoly.constant(nvars, poly)
            if poly.nvars != nvars:
                raise ArityMismatch("coefficient arity %d != %d"
                                    % (poly.nvars, nvars))
            if not poly.is_zero():
                clean[deg] = poly
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "components", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentOp is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentOp":
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "LaurentOp":
        return cls.monomial(nvars, (0,) * nvars, 1)

    @classmethod
    def monomial(cls, nvars: int, degree, coeff) -> "LaurentOp":
        return cls(nvars, {tuple(degree): coeff})

    @classmethod
    def from_poly(cls, poly: BasePoly) -> "LaurentOp":
        return cls(poly.nvars, {(0,) * poly.nvars: poly})

    @classmethod
    def x(cls, nvars: int, j: int = 0, power: int = 1) -> "LaurentOp":
        """x_{j+1}^power (power may be negative)."""
        deg = tuple(power if i == j else 0 for i in range(nvars))
        return cls.monomial(nvars, deg, 1)

    @classmethod
    def h(cls, nvars: int, j: int = 0) -> "LaurentOp":
        return cls.from_poly(BasePoly.variable(nvars, j))

    @classmethod
    def d(cls, nvars: int, j: int = 0) -> "LaurentOp":
        """The partial derivative operator for factor j: h_j * x_j^{-1}."""
        deg = tuple(-1 if i == j else 0 for i in range(nvars))
        return cls.monomial(nvars, deg, BasePoly.variable(nvars, j))

    # -- structure --------------------------------------------------------

    def support(self):
        """Degree vectors with nonzero coefficient, graded-lex descending."""
        return sorted(self.components, key=grlex_key, reverse=True)

    def graded_component(self, degree) -> BasePoly:
        return self.components.get(tuple(degree), BasePoly.zero(self.nvars))

    def is_zero(self) -> bool:
        return not self.components

    def is_homogeneous(self) -> bool:
        return len(self.components) <= 1

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentOp):
            return other
        if isinstance(other, BasePoly):
            return LaurentOp.from_poly(other)
        if isinstance(other, (int, Fraction)):
            return LaurentOp.monomial(self.nvars, (0,) * self.nvars, other)
        return NotImplemented

    def _check_arity(self, other: "LaurentOp"):
        if self.nvars != other.nvars:
            raise ArityMismatch("mixed arities %d and %d"
                                % (self.nvars, other.nvars))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_arity(other)
        comps = dict(self.components)
        for deg, poly in other.components.items():
            comps[deg] = comps.get(deg, BasePoly.zero(self.nvars)) + poly
        return LaurentOp(self.nvars, comps)

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
        return LaurentOp(self.nvars,
                         {d: -p for d, p in self.components.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_arity(other)
        comps = {}
        for alpha, dpoly in self.components.items():
            for beta, epoly in other.components.items():
                deg = tuple(a + b for a, b in zip(alpha, beta))
                term = dpoly * epoly.shift(alpha)
                if deg in comps:
                    comps[deg] = comps[deg] + term
                else:
                    comps[deg] = term
        return LaurentOp(self.nvars, comps)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("operator powers must be nonnegative integers")
        out = LaurentOp.one(self.nvars)
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
        return self.nvars == other.nvars and self.components == other.components

    def __hash__(self):
        return hash((self.nvars,
                     frozenset((d, p) for d, p in self.components.items())))

    def __repr__(self):
        return "LaurentOp(%d, %s)" % (self.nvars, render_op(self))


def commutator(u: LaurentOp, v: LaurentOp) -> LaurentOp:
    return u * v - v * u


def weyl_generators(nvars: int):
    """(xs, ds, hs): the Weyl generators x_i, partial_i and the products h_i."""
    xs = [LaurentOp.x(nvars, j) for j in range(nvars)]
    ds = [LaurentOp.d(nvars, j) for j in range(nvars)]
    hs = [LaurentOp.h(nvars, j) for j in range(nvars)]
    return xs, ds, hs


def rising_product(nvars: int, j: int, count: int) -> BasePoly:
    """prod_{k=0}^{count-1} (h_{j+1} + k); equals the coefficient of partial^count."""
    out = BasePoly.one(nvars)
    h = BasePoly.variable(nvars, j)
    for k in range(count):
        out = out * (h + k)
    return out


def weyl_membership(u: LaurentOp) -> bool:
    """Whether u lies in the Weyl subalgebra generated by the x_i and partial_i.

    A component d * x^alpha belongs exactly when d is divisible by
    prod_{k=0}^{-alpha_i-1} (h_i + k) for every i with alpha_i < 0, because
    x_i^{-1} only enters through partial_i = h_i x_i^{-1}.
    """
    for alpha, dpoly in u.components.items():
        divisor = BasePoly.one(u.nvars)
        for j, a in enumerate(alpha):
            if a < 0:
                divisor = divisor * rising_product(u.nvars, j, -a)
        if not divides(divisor, dpoly):
            return False
    return True


def weyl_decompose(u: LaurentOp) -> dict:
    """Coefficients of u in the basis c(h) * prod partial_i^{|alpha_i|} layers.

    Raises NotDivisible when u is outside the Weyl subalgebra.
    """
    out = {}
    for alpha in u.support():
        divisor = BasePoly.one(u.nvars)
        for j, a in enumerate(alpha):
            if a < 0:
                divisor = divisor * rising_product(u.nvars, j, -a)
        out[alpha] = exact_divide(u.components[alpha], divisor)
    return out


# -- canonical text and json forms ----------------------------------------

def _x_names(nvars: int) -> list[str]:
    if nvars == 1:
        return ["x"]
    return ["x%d" % (i + 1) for i in range(nvars)]


def render_op(u: LaurentOp) -> str:
    """Canonical text form, e.g. (h^2-3*h) * x1^-1 * x2^2 + (h-2).

    Components are sorted graded-lex descending on the degree vector; each
    coefficient polynomial is parenthesized.
    """
    if u.is_zero():
        return "0"
    names = _x_names(u.nvars)
    parts = []
    for deg in u.support():
        poly = u.components[deg]
        pieces = ["(%s)" % render_poly(poly)]
        for name, e in zip(names, deg):
            if e == 0:
                continue
            pieces.append(name if e == 1 else "%s^%d" % (name, e))
        parts.append(" * ".join(pieces))
    return " + ".join(parts)


def op_to_json(u: LaurentOp) -> dict:
    return {
        "nvars": u.nvars,
        "components": [{"degree": list(deg), "coeff": poly_to_json(u.components[deg])}
                       for deg in u.support()],
    }


def op_from_json(data: dict) -> LaurentOp:
    nvars = int(data["nvars"])
    comps = {}
    for item in data["components"]:
        comps[tuple(item["degree"])] = poly_from_json(item["coeff"])
    return LaurentOp(nvars, comps)
