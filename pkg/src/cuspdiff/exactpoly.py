"""Exact sparse polynomial arithmetic over Q in the shift variables h1, ..., hn.

Polynomials are the coefficient objects for everything else in this package:
operator coefficients, structure constants, weight scalars.  All arithmetic is
exact; there is no floating point anywhere.  Coefficients are stored as python
ints when integral and as fractions.Fraction otherwise, which keeps the common
all-integer computations on the fast path.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt


class ArityMismatch(ValueError):
    """Operands live over different numbers of variables."""


class NotDivisible(ArithmeticError):
    """Exact division was requested but the remainder is nonzero."""


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial."""


def _norm_coef(c):
    # ints and integral Fractions are the same coefficient; store the int.
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    raise TypeError("coefficient must be int or Fraction, got %r" % type(c).__name__)


def _div_coef(a, b):
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


def grlex_key(exp: tuple[int, ...]):
    """Sort key for graded lexicographic order (total degree first, then lex)."""
    return (sum(exp), exp)


class BasePoly:
    """Sparse multivariate polynomial with exact rational coefficients.

    Terms map exponent tuples of length nvars to nonzero coefficients.  The
    variables are written h1..hn (plain h when nvars == 1).  Instances are
    treated as immutable; no method mutates self.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ArityMismatch("exponent %r has length != %d" % (exp, nvars))
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent in polynomial term: %r" % (exp,))
            c = _norm_coef(c)
            if c:
                clean[exp] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("BasePoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "BasePoly":
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "BasePoly":
        return cls.constant(nvars, 1)

    @classmethod
    def constant(cls, nvars: int, c) -> "BasePoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, j: int) -> "BasePoly":
        """The variable h_{j+1} (0-based index j)."""
        if not 0 <= j < nvars:
            raise ValueError("variable index %d out of range for nvars=%d" % (j, nvars))
        exp = tuple(1 if k == j else 0 for k in range(nvars))
        return cls(nvars, {exp: 1})

    # -- predicates and views --------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self.terms.get((0,) * self.nvars, 0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, j: int) -> int:
        if not self.terms:
            return -1
        return max(e[j] for e in self.terms)

    def leading_term(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def coefficient(self, exp) -> Fraction:
        return Fraction(self.terms.get(tuple(exp), 0))

    def sorted_terms(self):
        """Terms in graded-lex descending order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- ring operations --------------------------------------------------

    def _check_arity(self, other: "BasePoly"):
        if self.nvars != other.nvars:
            raise ArityMismatch(
                "mixed arities %d and %d" % (self.nvars, other.nvars))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_arity(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return BasePoly(self.nvars, terms)

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
        return BasePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_arity(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, 0) + c1 * c2
        return BasePoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        out = BasePoly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, BasePoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BasePoly.constant(self.nvars, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BasePoly.constant(self.nvars, other)
        if not isinstance(other, BasePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return "BasePoly(%d, %s)" % (self.nvars, render_poly(self))

    # -- shift, evaluation ------------------------------------------------

    def shift(self, k) -> "BasePoly":
        """Substitute h_i -> h_i - k_i for an integer vector k.

        This is the automorphism sigma^k of the coefficient ring; shift is a
        ring homomorphism and shift(shift(p, k), l) == shift(p, k + l).
        """
        k = tuple(int(v) for v in k)
        if len(k) != self.nvars:
            raise ArityMismatch("shift vector has length %d, nvars=%d"
                                % (len(k), self.nvars))
        if not any(k):
            return self
        out = {}
        for exp, c in self.terms.items():
            # expand prod_i (h_i - k_i)^{e_i} one variable at a time
            partial = {(0,) * self.nvars: c}
            for j, (e, kj) in enumerate(zip(exp, k)):
                if e == 0:
                    continue
                if kj == 0:
                    partial = {tuple(v + (e if i == j else 0) for i, v in enumerate(pe)): pc
                               for pe, pc in partial.items()}
                    continue
                expanded = {}
                for t in range(e + 1):
                    coef = comb(e, t) * (-kj) ** (e - t)
                    for pe, pc in partial.items():
                        ne = tuple(v + (t if i == j else 0) for i, v in enumerate(pe))
                        expanded[ne] = expanded.get(ne, 0) + pc * coef
                partial = expanded
            for pe, pc in partial.items():
                out[pe] = out.get(pe, 0) + pc
        return BasePoly(self.nvars, out)

    def eval(self, point) -> Fraction:
        """Evaluate at a rational point (one value per variable)."""
        point = [Fraction(v) for v in point]
        if len(point) != self.nvars:
            raise ArityMismatch("point has length %d, nvars=%d"
                                % (len(point), self.nvars))
        total = Fraction(0)
        powcache = [{0: Fraction(1)} for _ in range(self.nvars)]
        for exp, c in self.terms.items():
            val = Fraction(c)
            for j, e in enumerate(exp):
                if e not in powcache[j]:
                    powcache[j][e] = point[j] ** e
                val *= powcache[j][e]
            total += val
        return total

    def inject(self, nvars: int, j: int) -> "BasePoly":
        """View a univariate polynomial as a polynomial in h_{j+1} of a larger ring."""
        if self.nvars != 1:
            raise ArityMismatch("inject expects a univariate polynomial")
        if not 0 <= j < nvars:
            raise ValueError("variable index %d out of range for nvars=%d" % (j, nvars))
        terms = {}
        for (e,), c in self.terms.items():
            exp = tuple(e if i == j else 0 for i in range(nvars))
            terms[exp] = c
        return BasePoly(nvars, terms)


def exact_divide(p: BasePoly, q: BasePoly) -> BasePoly:
    """Return p / q when q divides p exactly, else raise NotDivisible.

    Reduction by the single divisor's graded-lex leading term decides exact
    divisibility: if p == c*q, the reduction can never get stuck, because a
    stuck remainder would be a multiple of q whose leading monomial is not
    divisible by the leading monomial of q.
    """
    if not isinstance(p, BasePoly) or not isinstance(q, BasePoly):
        raise TypeError("exact_divide expects BasePoly operands")
    if p.nvars != q.nvars:
        raise ArityMismatch("mixed arities %d and %d" % (p.nvars, q.nvars))
    if q.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if p.is_zero():
        return BasePoly.zero(p.nvars)
    qlead, qc = q.leading_term()
    rem = dict(p.terms)
    quot = {}
    while rem:
        exp = max(rem, key=grlex_key)
        if any(a < b for a, b in zip(exp, qlead)):
            raise NotDivisible("%r does not divide %r" % (q, p))
        t = tuple(a - b for a, b in zip(exp, qlead))
        c = _div_coef(rem[exp], qc)
        quot[t] = quot.get(t, 0) + c
        for qe, qco in q.terms.items():
            ne = tuple(a + b for a, b in zip(t, qe))
            nc = rem.get(ne, 0) - c * qco
            if nc:
                rem[ne] = nc
            else:
                rem.pop(ne, None)
    return BasePoly(p.nvars, quot)


def divides(q: BasePoly, p: BasePoly) -> bool:
    try:
        exact_divide(p, q)
        return True
    except NotDivisible:
        return False


# -- rational roots -------------------------------------------------------

def _divisors(n: int) -> list[int]:
    """Positive divisors of |n|, n != 0, by trial division."""
    n = abs(n)
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    divs = [1]
    for prime, mult in factors.items():
        divs = [dv * prime ** e for dv in divs for e in range(mult + 1)]
    return sorted(divs)


def rational_roots(p: BasePoly):
    """All rational roots of a univariate polynomial, with multiplicity.

    Returns (roots, cofactor) where roots is an ascending list of Fractions
    (repeated according to multiplicity) and cofactor is the polynomial left
    after dividing out every (h - root) factor; the cofactor has no rational
    root and keeps the leading coefficient, so
    p == cofactor * prod (h - root).  Candidates come from the rational root
    theorem applied to the primitive integer form of p.
    """
    if p.nvars != 1:
        raise ArityMismatch("rational_roots expects a univariate polynomial")
    if p.is_zero():
        raise ValueError("the zero polynomial has every root")
    roots = []
    # roots at 0 come from the trailing exponent
    val = min(e for (e,) in p.terms)
    if val:
        h = BasePoly.variable(1, 0)
        for _ in range(val):
            p = exact_divide(p, h)
            roots.append(Fraction(0))
    if p.is_constant():
        return sorted(roots), p
    # primitive integer form for candidate generation
    denom_lcm = 1
    for c in p.terms.values():
        if isinstance(c, Fraction):
            denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = {e: int(c * denom_lcm) if isinstance(c, Fraction) else c * denom_lcm
            for (e,), c in p.terms.items()}
    content = 0
    for c in ints.values():
        content = _gcd(content, c)
    ints = {e: c // content for e, c in ints.items()}
    deg = max(ints)
    a0, alead = ints[min(ints)], ints[deg]
    candidates = set()
    for num in _divisors(a0):
        for den in _divisors(alead):
            g = _gcd(num, den)
            candidates.add(Fraction(num // g, den // g))
            candidates.add(Fraction(-(num // g), den // g))
    for r in sorted(candidates):
        while not p.is_constant() and p.eval([r]) == 0:
            p = exact_divide(p, BasePoly(1, {(1,): 1, (0,): -r}))
            roots.append(r)
    return sorted(roots), p


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def linear_factors(roots, nvars: int = 1, j: int = 0) -> BasePoly:
    """prod (h_{j+1} - r) over the given roots, as a polynomial in nvars variables."""
    out = BasePoly.one(nvars)
    h = BasePoly.variable(nvars, j)
    for r in roots:
        out = out * (h - BasePoly.constant(nvars, Fraction(r)))
    return out


# -- canonical text form --------------------------------------------------

def _var_names(nvars: int) -> list[str]:
    if nvars == 1:
        return ["h"]
    return ["h%d" % (i + 1) for i in range(nvars)]


def _coef_str(c) -> str:
    if isinstance(c, Fraction):
        return "%d/%d" % (c.numerator, c.denominator)
    return str(c)


def render_poly(p: BasePoly) -> str:
    """Canonical text form: graded-lex descending terms, e.g. h^2-3*h+2."""
    if p.is_zero():
        return "0"
    names = _var_names(p.nvars)
    chunks = []
    for exp, c in p.sorted_terms():
        factors = []
        for name, e in zip(names, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        negative = c < 0
        mag = -c if negative else c
        if not factors:
            body = _coef_str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_coef_str(mag)] + factors)
        if not chunks:
            chunks.append(("-" if negative else "") + body)
        else:
            chunks.append(("-" if negative else "+") + body)
    return "".join(chunks)


class PolyParseError(ValueError):
    """Raised with a position when polynomial text cannot be parsed."""


def parse_poly(text: str, nvars: int | None = None) -> BasePoly:
    """Parse the canonical polynomial text form.

    Accepts sums of terms c*h1^e1*...*hn^en with rational coefficients p/q,
    the alias h for h1, and optional whitespace.  The arity is inferred from
    the highest variable index unless nvars is given.
    """
    tokens = _tokenize_poly(text)
    parser = _PolyParser(tokens, text)
    raw_terms = parser.parse_sum()
    parser.expect_end()
    max_index = 1
    for factors, _ in raw_terms:
        for idx, _ in factors:
            max_index = max(max_index, idx)
    if nvars is None:
        nvars = max_index
    elif max_index > nvars:
        raise PolyParseError("variable h%d out of range for nvars=%d"
                             % (max_index, nvars))
    terms = {}
    for factors, coef in raw_terms:
        exp = [0] * nvars
        for idx, e in factors:
            exp[idx - 1] += e
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coef
    return BasePoly(nvars, terms)


def _tokenize_poly(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^/":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch == "h":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            idx = int(text[i + 1:j]) if j > i + 1 else 1
            tokens.append(("var", idx, i))
            i = j
            continue
        raise PolyParseError("unexpected character %r at position %d" % (ch, i))
    return tokens


class _PolyParser:
    def __init__(self, tokens, text):
        self.tokens = tokens
        self.text = text
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_end(self):
        kind, _, at = self.peek()
        if kind is not None:
            raise PolyParseError("unexpected token at position %d" % at)

    def parse_sum(self):
        terms = []
        sign = 1
        kind, _, _ = self.peek()
        if kind == "-":
            self.next()
            sign = -1
        elif kind == "+":
            self.next()
        terms.append(self.parse_term(sign))
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.next()
                terms.append(self.parse_term(1))
            elif kind == "-":
                self.next()
                terms.append(self.parse_term(-1))
            else:
                return terms

    def parse_term(self, sign):
        factors = []
        coef = Fraction(sign)
        while True:
            kind, value, at = self.peek()
            if kind == "int":
                self.next()
                num = value
                if self.peek()[0] == "/":
                    self.next()
                    dkind, dval, dat = self.next()
                    if dkind != "int" or dval == 0:
                        raise PolyParseError("bad denominator at position %d" % dat)
                    coef *= Fraction(num, dval)
                else:
                    coef *= num
            elif kind == "var":
                self.next()
                e = 1
                if self.peek()[0] == "^":
                    self.next()
                    e = self._parse_int_exponent()
                if e < 0:
                    raise PolyParseError(
                        "negative exponent on h at position %d" % at)
                factors.append((value, e))
            else:
                raise PolyParseError("expected a factor at position %d" % at)
            if self.peek()[0] == "*":
                self.next()
                continue
            break
        c = coef.numerator if coef.denominator == 1 else coef
        return factors, c

    def _parse_int_exponent(self):
        sign = 1
        kind, value, at = self.next()
        if kind == "-":
            sign = -1
            kind, value, at = self.next()
        if kind != "int":
            raise PolyParseError("expected an integer exponent at position %d" % at)
        return sign * value


def poly_to_json(p: BasePoly) -> dict:
    return {
        "nvars": p.nvars,
        "terms": [{"exp": list(exp), "coef": _coef_str(c)}
                  for exp, c in p.sorted_terms()],
    }


def poly_from_json(data: dict) -> BasePoly:
    nvars = int(data["nvars"])
    terms = {}
    for item in data["terms"]:
        terms[tuple(item["exp"])] = Fraction(item["coef"])
    return BasePoly(nvars, terms)
