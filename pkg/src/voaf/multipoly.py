"""Sparse multivariate polynomials over Q.

A polynomial is a dict mapping exponent tuples (one slot per variable in
VARS order) to nonzero Fractions.  The variable set is fixed; polynomials
that do not mention a variable simply have exponent 0 in its slot.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .scalars import Scalar

VARS: Tuple[str, ...] = ("x", "y", "z", "s", "t", "u")
NVARS = len(VARS)
_VAR_INDEX = {v: i for i, v in enumerate(VARS)}

Expo = Tuple[int, ...]
Terms = Dict[Expo, Fraction]

_ZERO_EXPO: Expo = (0,) * NVARS


class MultiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Terms] = None):
        self.terms: Terms = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(e)] = c

    # ------------------------------------------------------------------

    @staticmethod
    def const(c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly({_ZERO_EXPO: c}) if c else MultiPoly()

    @staticmethod
    def var(name: str) -> "MultiPoly":
        e = [0] * NVARS
        e[_VAR_INDEX[name]] = 1
        return MultiPoly({tuple(e): Fraction(1)})

    @staticmethod
    def monomial(c, **powers) -> "MultiPoly":
        e = [0] * NVARS
        for name, k in powers.items():
            e[_VAR_INDEX[name]] = k
        c = Fraction(c)
        return MultiPoly({tuple(e): c}) if c else MultiPoly()

    def copy(self) -> "MultiPoly":
        p = MultiPoly()
        p.terms = dict(self.terms)
        return p

    # ------------------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, Fraction(0)) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        p = MultiPoly()
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MultiPoly()
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: Terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, Fraction(0)) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        p = MultiPoly()
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # ------------------------------------------------------------------

    def variables(self) -> List[str]:
        used = [False] * NVARS
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return [VARS[i] for i in range(NVARS) if used[i]]

    def degree(self, var: str) -> int:
        i = _VAR_INDEX[var]
        return max((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def constant(self) -> Fraction:
        if self.terms and any(any(e) for e in self.terms):
            raise ValueError("polynomial %s is not constant" % self)
        return self.terms.get(_ZERO_EXPO, Fraction(0))

    def coeff_in(self, var: str) -> Dict[int, "MultiPoly"]:
        """View as a univariate polynomial in var with MultiPoly coefficients."""
        i = _VAR_INDEX[var]
        out: Dict[int, MultiPoly] = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = list(e)
            rest[i] = 0
            out.setdefault(k, MultiPoly()).terms[tuple(rest)] = c
        return out

    def evaluate(self, assign: Dict[str, object]):
        """Evaluate with values supporting ring arithmetic (Fraction, Scalar, ...).

        Every variable occurring in the polynomial must be assigned.
        """
        missing = [v for v in self.variables() if v not in assign]
        if missing:
            raise ValueError("unassigned variables %s" % missing)
        acc = None
        for e, c in sorted(self.terms.items()):
            term = c
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * assign[VARS[i]]
            acc = term if acc is None else acc + term
        if acc is None:
            return Fraction(0)
        return acc

    def subs(self, assign: Dict[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials (or constants) for variables."""
        full = {v: MultiPoly.var(v) for v in VARS}
        for v, p in assign.items():
            full[v] = p if isinstance(p, MultiPoly) else MultiPoly.const(p)
        acc = MultiPoly()
        for e, c in self.terms.items():
            term = MultiPoly.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * full[VARS[i]] ** k
            acc = acc + term
        return acc

    # ------------------------------------------------------------------

    def try_divide(self, divisor: "MultiPoly") -> Optional["MultiPoly"]:
        """Return self/divisor if the division is exact, else None."""
        if divisor.is_zero():
            raise ZeroDivisionError
        rem = self.copy()
        lead_e, lead_c = max(divisor.terms.items(), key=lambda t: (sum(t[0]), t[0]))
        quot = MultiPoly()
        while rem.terms:
            e, c = max(rem.terms.items(), key=lambda t: (sum(t[0]), t[0]))
            diff = tuple(a - b for a, b in zip(e, lead_e))
            if any(d < 0 for d in diff):
                return None
            qc = c / lead_c
            qterm = MultiPoly({diff: qc})
            quot = quot + qterm
            rem = rem - qterm * divisor
        return quot

    def proportionality(self, other: "MultiPoly") -> Optional[Fraction]:
        """Return c with self == c*other, or None if not proportional."""
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        if self.is_zero():
            return None
        e, c = next(iter(other.terms.items()))
        mine = self.terms.get(e)
        if mine is None:
            return None
        ratio = mine / c
        return ratio if self == MultiPoly.const(ratio) * other else None

    # ------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))
        parts = []
        for e, c in items:
            mono = " ".join(
                VARS[i] if k == 1 else "%s^%d" % (VARS[i], k)
                for i, k in enumerate(e)
                if k
            )
            if not mono:
                piece = str(c)
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = "-" + mono
            else:
                piece = "%s %s" % (c, mono)
            parts.append(piece)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self):
        return "MultiPoly(%s)" % self


# ----------------------------------------------------------------------
# conversions with Scalar


def scalar_to_poly(sc: Scalar, var: str = "s") -> MultiPoly:
    """Convert a scalar that is a polynomial even in lam into a polynomial
    in var = lam**2.  Rational scalars convert to constants."""
    if sc.is_rational():
        return MultiPoly.const(sc.as_rat())
    num, den = sc.even_part_polys()
    if len(den) != 1:
        raise ValueError("scalar %s is not polynomial in lam^2" % sc)
    v = MultiPoly.var(var)
    acc = MultiPoly()
    for k, c in enumerate(num):
        acc = acc + MultiPoly.const(c / den[0]) * v**k
    return acc


def scalar_to_poly_fraction(sc: Scalar, var: str = "s") -> Tuple[MultiPoly, MultiPoly]:
    """Convert a scalar even in lam into (num, den) polynomials in var = lam**2."""
    num, den = sc.even_part_polys()
    v = MultiPoly.var(var)

    def build(p):
        acc = MultiPoly()
        for k, c in enumerate(p):
            acc = acc + MultiPoly.const(c) * v**k
        return acc

    return build(num), build(den)


# ----------------------------------------------------------------------
# resultants and rational roots


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant of p and q with respect to var."""
    import sympy

    syms = {v: sympy.Symbol(v) for v in VARS}

    def to_sympy(poly: MultiPoly):
        acc = sympy.Integer(0)
        for e, c in poly.terms.items():
            t = sympy.Rational(c.numerator, c.denominator)
            for i, k in enumerate(e):
                if k:
                    t *= syms[VARS[i]] ** k
            acc += t
        return acc

    res = sympy.resultant(to_sympy(p), to_sympy(q), syms[var])
    res = sympy.expand(res)
    out = MultiPoly()
    poly = sympy.Poly(res, *[syms[v] for v in VARS])
    for monom, coeff in poly.terms():
        out.terms[tuple(monom)] = Fraction(int(sympy.numer(coeff)), int(sympy.denom(coeff)))
    out.terms = {e: c for e, c in out.terms.items() if c}
    return out


def rational_roots(p: MultiPoly) -> List[Fraction]:
    """All rational roots (with multiplicity ignored) of a univariate polynomial."""
    vs = p.variables()
    if len(vs) > 1:
        raise ValueError("polynomial %s is not univariate" % p)
    if not vs:
        if p.is_zero():
            raise ValueError("zero polynomial has every root")
        return []
    var = vs[0]
    coeffs = p.coeff_in(var)
    degs = sorted(coeffs)
    # clear denominators to integer coefficients
    lcm = 1
    for k in degs:
        c = coeffs[k].constant()
        lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
    ints = {k: int(coeffs[k].constant() * lcm) for k in degs}
    low = min(k for k in degs if ints[k])
    high = max(degs)
    if low == high:
        return [Fraction(0)] if low > 0 else []
    a0 = abs(ints[low])
    an = abs(ints[high])
    roots = set()
    if low > 0:
        roots.add(Fraction(0))
    for pdiv in _divisors(a0):
        for qdiv in _divisors(an):
            for cand in (Fraction(pdiv, qdiv), Fraction(-pdiv, qdiv)):
                if p.evaluate({var: cand}) == 0:
                    roots.add(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> List[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# ----------------------------------------------------------------------
# quadratic extension points


class QuadExtPoint:
    """Element a + b*w of Q[w]/(w**2 - alpha*w + beta)."""

    __slots__ = ("a", "b", "alpha", "beta")

    def __init__(self, a, b, alpha, beta):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.alpha = Fraction(alpha)
        self.beta = Fraction(beta)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadExtPoint(other, 0, self.alpha, self.beta)
        if not isinstance(other, QuadExtPoint):
            return NotImplemented
        if (other.alpha, other.beta) != (self.alpha, self.beta):
            raise ValueError("mixing distinct quadratic extensions")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadExtPoint(self.a + other.a, self.b + other.b, self.alpha, self.beta)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtPoint(-self.a, -self.b, self.alpha, self.beta)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        # (a1 + b1 w)(a2 + b2 w), w^2 = alpha*w - beta
        a = self.a * other.a - self.beta * self.b * other.b
        b = self.a * other.b + self.b * other.a + self.alpha * self.b * other.b
        return QuadExtPoint(a, b, self.alpha, self.beta)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __str__(self):
        return "%s + %s*w" % (self.a, self.b)


def quadext_eval(p: MultiPoly, assign: Dict[str, object], alpha, beta):
    """Evaluate p with some variables set to quadratic-extension points.

    Rational values in assign are promoted to the extension automatically.
    """
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    full = {}
    for k, v in assign.items():
        if isinstance(v, QuadExtPoint):
            full[k] = v
        else:
            full[k] = QuadExtPoint(v, 0, alpha, beta)
    acc = QuadExtPoint(0, 0, alpha, beta)
    for e, c in p.terms.items():
        term = QuadExtPoint(c, 0, alpha, beta)
        for i, kk in enumerate(e):
            for _ in range(kk):
                term = term * full[VARS[i]]
        acc = acc + term
    return acc
