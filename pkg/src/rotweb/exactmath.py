"""Exact arithmetic kernel: rationals, sparse multivariate polynomials,
dense univariate polynomials, rational functions, and real-root machinery.

Every classification decision downstream is a sign or vanishing test, so
everything here is exact.  Coefficients are Python ints or
``fractions.Fraction``; integer-valued coefficients are stored as ints
because plain int arithmetic is much faster than Fraction arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class ExactMathError(ValueError):
    """Domain error raised by the exact-arithmetic layer."""


def rat(value: int | str | Fraction) -> Fraction:
    """Parse a rational from an int, Fraction, or a string "p/q" / "p"."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ExactMathError(f"not a rational: {value!r}") from exc
    raise ExactMathError(f"cannot convert {type(value).__name__} to rational")


def rat_str(value: int | Fraction) -> str:
    """Format a rational as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _norm(c):
    # Keep integer-valued coefficients as ints (fast path).
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials


class Poly:
    """Sparse polynomial over the rationals in a fixed number of variables.

    ``terms`` maps exponent tuples to nonzero coefficients.  Variables 0, 1, 2
    are the Cartesian coordinates x, y, z throughout the package; additional
    variables act as inert symbolic parameters.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, nvars: int = 3) -> Poly:
        return cls(nvars)

    @classmethod
    def const(cls, value, nvars: int = 3) -> Poly:
        value = _norm(Fraction(value) if not isinstance(value, (int, Fraction)) else value)
        if value == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int = 3) -> Poly:
        if not 0 <= index < nvars:
            raise ExactMathError(f"variable index {index} out of range for {nvars} variables")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {exps: 1})

    @classmethod
    def from_terms(cls, mapping: dict, nvars: int = 3) -> Poly:
        terms = {}
        for exps, coeff in mapping.items():
            coeff = _norm(coeff if isinstance(coeff, (int, Fraction)) else Fraction(coeff))
            if coeff != 0:
                terms[tuple(exps)] = coeff
        return cls(nvars, terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    __hash__ = None

    def _check(self, other: Poly) -> None:
        if self.nvars != other.nvars:
            raise ExactMathError("polynomials live in different variable sets")

    def __add__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        self._check(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = terms.get(exps, 0) + coeff
            if new == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = _norm(new)
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = _norm(other)
            if other == 0:
                return Poly(self.nvars)
            return Poly(self.nvars, {e: _norm(c * other) for e, c in self.terms.items()})
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(exps, 0) + c1 * c2
                if new == 0:
                    terms.pop(exps, None)
                else:
                    terms[exps] = new
        return Poly(self.nvars, {e: _norm(c) for e, c in terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ExactMathError("negative polynomial power")
        result = Poly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def diff(self, var: int) -> Poly:
        terms = {}
        for exps, coeff in self.terms.items():
            k = exps[var]
            if k:
                new_exps = exps[:var] + (k - 1,) + exps[var + 1:]
                new = terms.get(new_exps, 0) + coeff * k
                if new != 0:
                    terms[new_exps] = _norm(new)
        return Poly(self.nvars, terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return Fraction(self.terms.get(tuple(exps), 0))

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ExactMathError("evaluation point has wrong dimension")
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = Fraction(coeff)
            for value, k in zip(point, exps):
                if k:
                    term *= Fraction(value) ** k
            total += term
        return total

    def extend(self, nvars: int) -> Poly:
        """Embed into a larger variable set (new variables appended)."""
        if nvars < self.nvars:
            raise ExactMathError("cannot shrink variable set")
        if nvars == self.nvars:
            return self
        pad = (0,) * (nvars - self.nvars)
        return Poly(nvars, {e + pad: c for e, c in self.terms.items()})

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(1)
        from math import gcd, lcm

        nums = [Fraction(c).numerator for c in self.terms.values()]
        dens = [Fraction(c).denominator for c in self.terms.values()]
        g = 0
        for n in nums:
            g = gcd(g, abs(n))
        l = 1
        for d in dens:
            l = lcm(l, d)
        return Fraction(g, l)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = ["x", "y", "z"] + [f"t{i}" for i in range(max(0, self.nvars - 3))]
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = [] if coeff == 1 and any(exps) else [rat_str(coeff)]
            for name, k in zip(names, exps):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __repr__ = __str__


def variables(nvars: int = 3) -> list[Poly]:
    return [Poly.variable(i, nvars) for i in range(nvars)]


# ---------------------------------------------------------------------------
# Dense univariate polynomials


class UniPoly:
    """Dense univariate polynomial over the rationals, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm(c if isinstance(c, (int, Fraction)) else Fraction(c)) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> UniPoly:
        return cls(())

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> UniPoly:
        return cls([0] * degree + [coeff])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ExactMathError("zero polynomial has no leading coefficient")
        return Fraction(self.coeffs[-1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def __add__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1) if self.coeffs and other.coeffs else []
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero:
            raise ExactMathError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = Fraction(other.coeffs[-1])
        for i in range(len(rem) - 1, d - 1, -1):
            c = Fraction(rem[i]) / lead
            if c == 0:
                continue
            quot[i - d] = c
            for j, b in enumerate(other.coeffs):
                rem[i - d + j] -= c * b
        return UniPoly(quot), UniPoly(rem)

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    def exact_div(self, other: UniPoly) -> UniPoly:
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ExactMathError("inexact polynomial division")
        return q

    def monic(self) -> UniPoly:
        if self.is_zero:
            return self
        lead = self.lead
        return UniPoly([Fraction(c) / lead for c in self.coeffs])

    def derivative(self) -> UniPoly:
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * Fraction(x) + c
        return total

    def eval_float(self, x: float) -> float:
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * x + float(c)
        return total

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(rat_str(c))
            elif i == 1:
                parts.append(f"{rat_str(c)}*z")
            else:
                parts.append(f"{rat_str(c)}*z^{i}")
        return " + ".join(parts)

    __repr__ = __str__


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    if p.is_zero and q.is_zero:
        raise ExactMathError("gcd of two zero polynomials is undefined")
    a, b = p, q
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: pairwise-coprime monic square-free factors with
    multiplicities.  The product of factor**mult equals p up to a nonzero
    rational constant; a nonzero constant input yields the empty list.
    """
    if p.is_zero:
        raise ExactMathError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    factors: list[tuple[UniPoly, int]] = []
    g = poly_gcd(p, p.derivative())
    b = p.exact_div(g)
    c = p.derivative().exact_div(g)
    d = c - b.derivative()
    mult = 1
    while b.degree > 0:
        a = poly_gcd(b, d) if not (b.is_zero and d.is_zero) else b.monic()
        if a.degree > 0:
            factors.append((a.monic(), mult))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        mult += 1
    return factors


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero:
        raise ExactMathError("square-free part of the zero polynomial")
    if p.degree == 0:
        return UniPoly([1])
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero:
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    cleaned = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(cleaned, cleaned[1:]) if a != b)


def _variations_at(seq: list[UniPoly], x: Fraction) -> int:
    return _variations(_sign(q.eval(x)) for q in seq)


def _variations_at_inf(seq: list[UniPoly], positive: bool) -> int:
    signs = []
    for q in seq:
        if q.is_zero:
            signs.append(0)
        else:
            s = _sign(q.lead)
            if not positive and q.degree % 2 == 1:
                s = -s
            signs.append(s)
    return _variations(signs)


def real_root_count(p: UniPoly) -> int:
    """Number of distinct real roots, by a Sturm sequence over the whole line.

    Non-square-free input is tolerated: p is divided by gcd(p, p') first, so
    the count is always over distinct roots.
    """
    if p.is_zero:
        raise ExactMathError("root count of the zero polynomial")
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return 0
    seq = sturm_sequence(sf)
    return _variations_at_inf(seq, positive=False) - _variations_at_inf(seq, positive=True)


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root lies strictly inside (-B, B)."""
    if p.is_zero or p.degree <= 0:
        return Fraction(1)
    lead = abs(p.lead)
    return 1 + max(abs(Fraction(c)) for c in p.coeffs[:-1]) / lead


def isolate_real_roots(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals (lo, hi] for the distinct real roots of p,
    sorted increasingly.  Exact roots found along the way come back as
    degenerate intervals (r, r).
    """
    if p.is_zero:
        raise ExactMathError("cannot isolate roots of the zero polynomial")
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return []
    seq = sturm_sequence(sf)
    bound = root_bound(sf)

    def var(x: Fraction) -> int:
        return _variations_at(seq, x)

    out: list[tuple[Fraction, Fraction]] = []

    def split_point(lo: Fraction, hi: Fraction) -> Fraction:
        # Sturm endpoints must not be roots; nudge toward lo if we hit one.
        mid = (lo + hi) / 2
        while sf.eval(mid) == 0:
            out.append((mid, mid))
            mid = (lo + mid) / 2
        return mid

    def recurse(lo: Fraction, hi: Fraction, vlo: int, vhi: int) -> None:
        count = vlo - vhi
        if count == 0:
            return
        if count == 1:
            out.append((lo, hi))
            return
        mid = split_point(lo, hi)
        vmid = var(mid)
        recurse(lo, mid, vlo, vmid)
        recurse(mid, hi, vmid, vhi)

    recurse(-bound, bound, var(-bound), var(bound))
    # Exact roots recorded by split_point also show up in a surrounding
    # one-root interval; drop that duplicate.
    exact = {lo for lo, hi in out if lo == hi}
    deduped = []
    for lo, hi in sorted(set(out)):
        if lo != hi and any(lo < r <= hi for r in exact):
            continue
        deduped.append((lo, hi))
    return deduped


def refine_root(p: UniPoly, lo: Fraction, hi: Fraction, max_width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval (lo, hi] of a square-free p by bisection
    until its width is below max_width or the root is hit exactly.
    """
    if lo == hi:
        return lo, hi
    if p.eval(hi) == 0:
        return hi, hi
    slo = _sign(p.eval(lo))
    while hi - lo > max_width:
        mid = (lo + hi) / 2
        smid = _sign(p.eval(mid))
        if smid == 0:
            return mid, mid
        if smid == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def rational_roots(p: UniPoly, max_denominator: int = 10**6) -> list[Fraction]:
    """Exactly verified rational roots of p with denominator up to the bound.

    Every returned value satisfies p(r) == 0 exactly.  Real roots that are
    irrational (or have larger denominators) are not returned.
    """
    roots = []
    width = Fraction(1, 4 * max_denominator * max_denominator)
    for lo, hi in isolate_real_roots(p):
        lo, hi = refine_root(squarefree_part(p), lo, hi, width)
        if lo == hi:
            candidate = lo
        else:
            candidate = Fraction((lo + hi) / 2).limit_denominator(max_denominator)
        if p.eval(candidate) == 0 and lo <= candidate <= hi:
            roots.append(candidate)
    return roots


# ---------------------------------------------------------------------------
# Rational functions


class RationalFunction:
    """Quotient of two multivariate polynomials.

    Reduced by content only (no multivariate gcd); equality is tested by
    cross-multiplication, so representations need not be canonical.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(1, num.nvars)
        if den.is_zero:
            raise ExactMathError("rational function with zero denominator")
        if num.nvars != den.nvars:
            raise ExactMathError("numerator and denominator variable sets differ")
        if num.is_zero:
            den = Poly.const(1, num.nvars)
        else:
            c = den.content()
            lead = den.sorted_terms()[-1][1]
            if lead < 0:
                c = -c
            if c != 1:
                inv = 1 / Fraction(c)
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def const(cls, value, nvars: int = 3) -> RationalFunction:
        return cls(Poly.const(value, nvars))

    @classmethod
    def from_poly(cls, p: Poly) -> RationalFunction:
        return cls(p)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(other, self.nvars)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction(other if isinstance(other, Poly) else Poly.const(other, self.nvars))
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction(other if isinstance(other, Poly) else Poly.const(other, self.nvars))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num * other, self.den)
        if isinstance(other, Poly):
            return RationalFunction(self.num * other, self.den)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ExactMathError("division by zero")
            return RationalFunction(self.num, self.den * other)
        if isinstance(other, Poly):
            other = RationalFunction(other)
        if other.num.is_zero:
            raise ExactMathError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RationalFunction.const(other, self.nvars) / self

    def __pow__(self, n: int) -> RationalFunction:
        if n < 0:
            return RationalFunction.const(1, self.nvars) / (self ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def diff(self, var: int) -> RationalFunction:
        return RationalFunction(
            self.num.diff(var) * self.den - self.num * self.den.diff(var),
            self.den * self.den,
        )

    def eval(self, point: Sequence) -> Fraction:
        d = self.den.eval(point)
        if d == 0:
            raise ExactMathError("evaluation at a pole")
        return self.num.eval(point) / d

    def __str__(self) -> str:
        if self.den == Poly.const(1, self.nvars):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__
