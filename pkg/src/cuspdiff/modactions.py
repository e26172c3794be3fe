"""Actions of Laurent operators on Laurent polynomial modules.

The ambient module is the span of the monomials x^beta, beta in Z^n, with
(d * x^alpha) acting on x^beta as d evaluated at (alpha + beta + 1) times
x^{alpha+beta}; in particular h_i acts on x^beta as beta_i + 1.  Submodules
and quotients are cut out by masks on the exponent lattice.
"""

from __future__ import annotations

from fractions import Fraction

from .exactpoly import ArityMismatch, BasePoly
from .skewlaurent import LaurentOp, render_op
from .cuspops import CuspShape, as_shape, delta_op, generating_set, membership


class NotStable(ValueError):
    """An operator outside the ring was asked to act on a quotient."""


class LaurentVector:
    """Finite rational combination of monomials x^beta, beta in Z^n."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        clean = {}
        for deg, c in (coeffs or {}).items():
            deg = tuple(int(v) for v in deg)
            if len(deg) != nvars:
                raise ArityMismatch("degree %r has length != %d" % (deg, nvars))
            c = Fraction(c)
            if c:
                clean[deg] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentVector is immutable")

    @classmethod
    def monomial(cls, nvars: int, degree, c=1) -> "LaurentVector":
        return cls(nvars, {tuple(degree): c})

    @classmethod
    def zero(cls, nvars: int) -> "LaurentVector":
        return cls(nvars, {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs, key=lambda d: (sum(d), d), reverse=True)

    def __add__(self, other):
        if not isinstance(other, LaurentVector):
            return NotImplemented
        if self.nvars != other.nvars:
            raise ArityMismatch("mixed arities")
        coeffs = dict(self.coeffs)
        for deg, c in other.coeffs.items():
            coeffs[deg] = coeffs.get(deg, Fraction(0)) + c
        return LaurentVector(self.nvars, coeffs)

    def __sub__(self, other):
        if not isinstance(other, LaurentVector):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return LaurentVector(self.nvars, {d: -c for d, c in self.coeffs.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentVector(self.nvars,
                                 {d: other * c for d, c in self.coeffs.items()})
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LaurentVector):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def __repr__(self):
        return "LaurentVector(%s)" % render_vector(self)


def render_vector(v: LaurentVector) -> str:
    if v.is_zero():
        return "0"
    names = ["x"] if v.nvars == 1 else ["x%d" % (i + 1) for i in range(v.nvars)]
    parts = []
    for deg in v.support():
        c = v.coeffs[deg]
        factors = []
        for name, e in zip(names, deg):
            if e == 0:
                continue
            factors.append(name if e == 1 else "%s^%d" % (name, e))
        cstr = str(c)
        if not factors:
            parts.append(cstr)
        elif c == 1:
            parts.append("*".join(factors))
        elif c == -1:
            parts.append("-" + "*".join(factors))
        else:
            parts.append("*".join([cstr] + factors))
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out


def act(u, v: LaurentVector) -> LaurentVector:
    """Apply an operator to a vector.

    Componentwise, (d * x^alpha) sends x^beta to
    d(alpha_1 + beta_1 + 1, ..., alpha_n + beta_n + 1) x^{alpha + beta}.
    """
    op = u.op if hasattr(u, "op") else u
    if not isinstance(op, LaurentOp):
        raise TypeError("expected an operator")
    if op.nvars != v.nvars:
        raise ArityMismatch("operator arity %d != vector arity %d"
                            % (op.nvars, v.nvars))
    out = {}
    for alpha, dpoly in op.components.items():
        for beta, c in v.coeffs.items():
            scalar = dpoly.eval([a + b + 1 for a, b in zip(alpha, beta)])
            if not scalar:
                continue
            deg = tuple(a + b for a, b in zip(alpha, beta))
            out[deg] = out.get(deg, Fraction(0)) + c * scalar
    return LaurentVector(v.nvars, out)


class ExponentSet:
    """Subset of Z given by finitely many points plus up and down rays."""

    __slots__ = ("points", "ge", "le")

    def __init__(self, points=(), ge=None, le=None):
        object.__setattr__(self, "points", frozenset(int(p) for p in points))
        object.__setattr__(self, "ge", None if ge is None else int(ge))
        object.__setattr__(self, "le", None if le is None else int(le))

    def __setattr__(self, name, value):
        raise AttributeError("ExponentSet is immutable")

    def __contains__(self, k: int) -> bool:
        if k in self.points:
            return True
        if self.ge is not None and k >= self.ge:
            return True
        if self.le is not None and k <= self.le:
            return True
        return False

    def window(self, lo: int, hi: int) -> list[int]:
        return [k for k in range(lo, hi + 1) if k in self]

    def translate(self, offset: int) -> "ExponentSet":
        return ExponentSet(
            points=(p + offset for p in self.points),
            ge=None if self.ge is None else self.ge + offset,
            le=None if self.le is None else self.le + offset)

    def __eq__(self, other):
        if not isinstance(other, ExponentSet):
            return NotImplemented
        return (self.points == other.points and self.ge == other.ge
                and self.le == other.le)

    def __hash__(self):
        return hash((self.points, self.ge, self.le))

    def __repr__(self):
        bits = []
        if self.le is not None:
            bits.append("<=%d" % self.le)
        if self.points:
            bits.append("{%s}" % ",".join(str(p) for p in sorted(self.points)))
        if self.ge is not None:
            bits.append(">=%d" % self.ge)
        return "ExponentSet(%s)" % " | ".join(bits or ["empty"])

    def to_json(self) -> dict:
        return {"points": sorted(self.points), "ge": self.ge, "le": self.le}


class GradedMask:
    """Product mask on Z^n: one ExponentSet per factor.

    A monomial x^gamma is inside the mask when every coordinate lies in its
    factor's set.  Masks produced by cusp_mask remember their shape so that
    quotient actions can check stability.
    """

    __slots__ = ("factors", "shape")

    def __init__(self, factors, shape=None):
        factors = tuple(factors)
        if not factors:
            raise ValueError("mask needs at least one factor")
        for f in factors:
            if not isinstance(f, ExponentSet):
                raise TypeError("mask factors must be ExponentSet")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "shape", shape)

    def __setattr__(self, name, value):
        raise AttributeError("GradedMask is immutable")

    @property
    def nvars(self) -> int:
        return len(self.factors)

    def contains(self, degree) -> bool:
        degree = tuple(degree)
        if len(degree) != self.nvars:
            raise ArityMismatch("degree %r has length != %d"
                                % (degree, self.nvars))
        return all(k in f for k, f in zip(degree, self.factors))

    def masked_monomials(self, window: int):
        """All degree vectors inside the mask with coordinates in [-window, window]."""
        axes = [f.window(-window, window) for f in self.factors]
        out = [()]
        for axis in axes:
            out = [v + (k,) for v in out for k in axis]
        return out

    def project_inside(self, v: LaurentVector) -> LaurentVector:
        return LaurentVector(v.nvars, {d: c for d, c in v.coeffs.items()
                                       if self.contains(d)})

    def project_outside(self, v: LaurentVector) -> LaurentVector:
        return LaurentVector(v.nvars, {d: c for d, c in v.coeffs.items()
                                       if not self.contains(d)})


def cusp_mask(shape) -> GradedMask:
    """Exponent mask of the subalgebra itself: {0} union [m_i, infinity) per factor."""
    shape = as_shape(shape)
    return GradedMask([ExponentSet(points=(0,), ge=mi) for mi in shape.m],
                      shape=shape)


def quotient_mask(shape) -> GradedMask:
    """Exponent mask of the quotient module: the complement, per factor.

    Only meaningful factorwise; a rank one quotient has basis exponents
    (-infinity, -1] union [1, m-1].
    """
    shape = as_shape(shape)
    factors = []
    for mi in shape.m:
        factors.append(ExponentSet(points=range(1, mi), le=-1))
    return GradedMask(factors, shape=shape)


def act_on_quotient(u, v: LaurentVector, mask: GradedMask) -> LaurentVector:
    """Action on the quotient by the masked submodule.

    The operator must belong to the operator ring of the mask's shape, so the
    masked submodule is stable and the induced action is well defined; apply
    then discard every component inside the mask.
    """
    if mask.shape is None:
        raise NotStable("mask carries no shape; stability cannot be checked")
    if not membership(u, mask.shape):
        raise NotStable("operator is outside the ring; quotient action undefined")
    return mask.project_outside(act(u, v))


def stability_check(gens, mask: GradedMask, window: int) -> bool:
    """Whether every generator maps masked monomials inside the window into the mask.

    The window must comfortably exceed the generator degrees; a window below
    twice the largest degree would miss the interesting transitions.
    """
    gens = [g.op if hasattr(g, "op") else g for g in gens]
    maxdeg = 0
    for g in gens:
        for deg in g.components:
            maxdeg = max(maxdeg, max(abs(k) for k in deg))
    if window < 2 * maxdeg:
        raise ValueError("window %d too small for generator degree %d"
                         % (window, maxdeg))
    for gamma in mask.masked_monomials(window):
        vec = LaurentVector.monomial(mask.nvars, gamma)
        for g in gens:
            image = act(g, vec)
            for deg in image.coeffs:
                if not mask.contains(deg):
                    return False
    return True


class WeightSupport:
    """Support of a module over the base: the set of roots of its weight ideals.

    Stored as an ExponentSet of integer roots; the ideal at root r is (h - r).
    """

    __slots__ = ("roots",)

    def __init__(self, roots: ExponentSet):
        object.__setattr__(self, "roots", roots)

    def __setattr__(self, name, value):
        raise AttributeError("WeightSupport is immutable")

    def contains_root(self, r: int) -> bool:
        return r in self.roots

    def window(self, lo: int, hi: int) -> list[int]:
        return self.roots.window(lo, hi)

    def __eq__(self, other):
        if not isinstance(other, WeightSupport):
            return NotImplemented
        return self.roots == other.roots

    def __hash__(self):
        return hash(self.roots)

    def __repr__(self):
        return "WeightSupport(%r)" % (self.roots,)

    def render(self) -> str:
        bits = []
        if self.roots.le is not None:
            bits.append("{(h-j) : j <= %d}" % self.roots.le)
        for p in sorted(self.roots.points):
            bits.append("{(h-%d)}" % p if p else "{(h)}")
        if self.roots.ge is not None:
            bits.append("{(h-j) : j >= %d}" % self.roots.ge)
        return " u ".join(bits or ["{}"])

    def to_json(self) -> dict:
        return self.roots.to_json()


def support(mask: GradedMask) -> WeightSupport:
    """Weight support of a masked monomial module at rank one.

    The monomial x^k is an h-eigenvector of eigenvalue k + 1, so the weight
    ideals are (h - k - 1) for k in the mask.
    """
    if mask.nvars != 1:
        raise ArityMismatch("weight supports are computed factorwise; rank 1 only")
    return WeightSupport(mask.factors[0].translate(1))


def simplicity_probe(module: str, shape, window: int,
                     gap_jump: int | None = None) -> bool:
    """Probe that each adjacent pair of module exponents is linked both ways.

    module is "A" (the subalgebra) or "Aprime" (its quotient in the Laurent
    module).  Runs of consecutive exponents are linked by the degree +-1
    generators; the gap between the two runs needs the wider generators, of
    degree +-m for "A" and +-2 for "Aprime".  gap_jump overrides the gap
    generator degree, which is how a deliberately wrong probe is demonstrated.
    """
    shape = as_shape(shape)
    if shape.rank != 1:
        raise ArityMismatch("simplicity probes are rank one")
    m = shape.m[0]
    if window < 2 * m + 2:
        raise ValueError("window %d too small; need at least %d"
                         % (window, 2 * m + 2))
    up1 = delta_op(shape, (1,))
    down1 = delta_op(shape, (-1,))

    def nonzero(op, k, quotient):
        vec = LaurentVector.monomial(1, (k,))
        if quotient:
            image = act_on_quotient(op, vec, cusp_mask(shape))
        else:
            image = act(op, vec)
        return not image.is_zero()

    if module == "A":
        jump = m if gap_jump is None else gap_jump
        for k in range(m, window):
            if not nonzero(up1, k, False):
                return False
            if not nonzero(down1, k + 1, False):
                return False
        if not nonzero(delta_op(shape, (jump,)), 0, False):
            return False
        if not nonzero(delta_op(shape, (-jump,)), m, False):
            return False
        return True
    if module == "Aprime":
        jump = 2 if gap_jump is None else gap_jump
        for k in range(-window, -1):
            if not nonzero(up1, k, True):
                return False
            if not nonzero(down1, k + 1, True):
                return False
        for k in range(1, m - 1):
            if not nonzero(up1, k, True):
                return False
            if not nonzero(down1, k + 1, True):
                return False
        if not nonzero(delta_op(shape, (jump,)), -1, True):
            return False
        if not nonzero(delta_op(shape, (-jump,)), 1, True):
            return False
        return True
    raise ValueError("module must be 'A' or 'Aprime'")


def restriction_blocks(shape, window: int):
    """Connected blocks of the two monomial modules under the degree +-1 pair.

    Returns (blocks_A, blocks_Aprime): for each module, the partition of its
    exponents into components linked by nonzero delta_{+-1} transitions,
    computed inside [-window, window] and described as ExponentSets; a block
    touching the window boundary is reported as a ray.

    The decomposition is what restriction to the subalgebra generated by
    delta_{+-1} and h sees: the wider gap-crossing generators are not
    available, so the gap disconnects each module into two blocks.
    """
    shape = as_shape(shape)
    if shape.rank != 1:
        raise ArityMismatch("restriction blocks are rank one")
    m = shape.m[0]
    if window <= m + 2:
        raise ValueError("window too small")
    up1 = delta_op(shape, (1,))
    down1 = delta_op(shape, (-1,))
    mask = cusp_mask(shape)

    def blocks(exponents, quotient):
        exponents = sorted(exponents)
        out = []
        current = []
        for k in exponents:
            if current and k == current[-1] + 1:
                vec_up = LaurentVector.monomial(1, (current[-1],))
                vec_dn = LaurentVector.monomial(1, (k,))
                if quotient:
                    linked = (not act_on_quotient(up1, vec_up, mask).is_zero()
                              or not act_on_quotient(down1, vec_dn, mask).is_zero())
                else:
                    linked = (not act(up1, vec_up).is_zero()
                              or not act(down1, vec_dn).is_zero())
                if linked:
                    current.append(k)
                    continue
            if current:
                out.append(current)
            current = [k]
        if current:
            out.append(current)
        sets = []
        for block in out:
            if block[0] == exponents[0] and block[0] == -window:
                sets.append(ExponentSet(le=block[-1]))
            elif block[-1] == exponents[-1] and block[-1] == window:
                sets.append(ExponentSet(ge=block[0]))
            else:
                sets.append(ExponentSet(points=block))
        return sets

    exps_a = [k for k in range(-window, window + 1)
              if mask.factors[0].__contains__(k)]
    exps_q = [k for k in range(-window, window + 1)
              if k not in mask.factors[0]]
    return blocks(exps_a, False), blocks(exps_q, True)
