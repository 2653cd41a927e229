"""Exact scalar arithmetic.

Scalars are rational functions in a single formal symbol ``lam`` with
rational coefficients, optionally reduced modulo the relation
``lam**2 == s`` for a fixed rational ``s``.  With a modulus present every
scalar has a canonical form ``c0 + c1*lam`` (the quadratic extension
Q(sqrt(s)), or its degenerate version when s is a rational square); without
a modulus scalars form the rational function field Q(lam).

Univariate polynomials over Q are represented as tuples of Fractions in
increasing degree order with no trailing zeros; the zero polynomial is the
empty tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

Rat = Fraction
UPoly = Tuple[Fraction, ...]

RatLike = Union[int, Fraction]


# ----------------------------------------------------------------------
# univariate polynomial helpers


def _pnorm(cs) -> UPoly:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return _pnorm(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pneg(a: UPoly) -> UPoly:
    return tuple(-c for c in a)


def _pmul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _pnorm(out)


def _pscale(a: UPoly, c: Fraction) -> UPoly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pdivmod(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b):
            break
        c = r[-1] / b[-1]
        d = len(r) - len(b)
        q[d] = c
        for i, cb in enumerate(b):
            r[d + i] -= c * cb
        r.pop()
    return _pnorm(q), _pnorm(r)


def _pgcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        a = _pscale(a, 1 / a[-1])
    return a


def _peval(a: UPoly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ----------------------------------------------------------------------


class Scalar:
    """Element of Q(lam), optionally modulo lam**2 == mod."""

    __slots__ = ("num", "den", "mod")

    def __init__(self, num, den=(Fraction(1),), mod: Optional[Fraction] = None):
        num = _pnorm(Fraction(c) for c in num)
        den = _pnorm(Fraction(c) for c in den)
        if not den:
            raise ZeroDivisionError("scalar with zero denominator")
        if mod is not None:
            mod = Fraction(mod)
            num = self._fold(num, mod)
            den = self._fold(den, mod)
            # rationalize: 1/(a + b*lam) = (a - b*lam)/(a^2 - b^2*s)
            if len(den) == 2:
                conj = (den[0], -den[1])
                num = self._fold(_pmul(num, conj), mod)
                den = self._fold(_pmul(den, conj), mod)
                if len(den) == 2 or not den:
                    raise ZeroDivisionError(
                        "denominator is a zero divisor modulo lam^2 - %s" % mod
                    )
            num = _pscale(num, 1 / den[0])
            den = (Fraction(1),)
        else:
            g = _pgcd(num, den)
            if g and g != (Fraction(1),):
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
            if den and den[-1] != 1:
                lead = den[-1]
                num = _pscale(num, 1 / lead)
                den = _pscale(den, 1 / lead)
        self.num = num
        self.den = den
        self.mod = mod

    @staticmethod
    def _fold(p: UPoly, mod: Fraction) -> UPoly:
        # reduce lam^k for k >= 2 using lam^2 = mod
        out = [Fraction(0), Fraction(0)]
        for k, c in enumerate(p):
            out[k % 2] += c * mod ** (k // 2)
        return _pnorm(out)

    # ------------------------------------------------------------------

    @staticmethod
    def of(value: RatLike, mod: Optional[Fraction] = None) -> "Scalar":
        return Scalar((Fraction(value),), mod=mod)

    @staticmethod
    def zero(mod: Optional[Fraction] = None) -> "Scalar":
        return Scalar((), mod=mod)

    @staticmethod
    def one(mod: Optional[Fraction] = None) -> "Scalar":
        return Scalar((Fraction(1),), mod=mod)

    @staticmethod
    def lam(mod: Optional[Fraction] = None) -> "Scalar":
        return Scalar((Fraction(0), Fraction(1)), mod=mod)

    # ------------------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.of(other, mod=self.mod)
        return NotImplemented  # type: ignore[return-value]

    def _check(self, other: "Scalar") -> Optional[Fraction]:
        if self.mod == other.mod:
            return self.mod
        if self.is_rational():
            return other.mod
        if other.is_rational():
            return self.mod
        raise ValueError("scalar modulus mismatch: %r vs %r" % (self.mod, other.mod))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        mod = self._check(other)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Scalar(num, _pmul(self.den, other.den), mod=mod)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_pneg(self.num), self.den, mod=self.mod)

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
        mod = self._check(other)
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den), mod=mod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        mod = self._check(other)
        if not other.num:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(_pmul(self.num, other.den), _pmul(self.den, other.num), mod=mod)

    def __rtruediv__(self, other):
        return Scalar.of(other, mod=self.mod) / self

    def __pow__(self, k: int):
        if k < 0:
            return (Scalar.one(self.mod) / self) ** (-k)
        out = Scalar.one(self.mod)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other, mod=self.mod)
        if not isinstance(other, Scalar):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except ValueError:
            return False

    def __hash__(self):
        if self.is_rational():
            return hash(self.as_rat())
        return hash((self.num, self.den, self.mod))

    # ------------------------------------------------------------------

    def is_rational(self) -> bool:
        return len(self.num) <= 1 and self.den == (Fraction(1),)

    def as_rat(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar %s is not rational" % self)
        return self.num[0] if self.num else Fraction(0)

    def lam_parts(self) -> Tuple[Fraction, Fraction]:
        """Return (c0, c1) for a scalar of the form c0 + c1*lam."""
        if self.den != (Fraction(1),) or len(self.num) > 2:
            raise ValueError("scalar %s is not linear in lam" % self)
        c0 = self.num[0] if len(self.num) >= 1 else Fraction(0)
        c1 = self.num[1] if len(self.num) >= 2 else Fraction(0)
        return c0, c1

    def even_part_polys(self) -> Tuple[UPoly, UPoly]:
        """Rewrite a scalar even in lam as a rational function of s = lam**2.

        Returns (numerator, denominator) as univariate polynomials in s.
        Raises ValueError if the scalar is genuinely odd in lam.
        """
        if self.mod is not None:
            raise ValueError("even_part_polys requires a free symbol lam")
        num, den = self.num, self.den

        def split(p: UPoly) -> Tuple[UPoly, UPoly]:
            return _pnorm(p[0::2]), _pnorm(p[1::2])

        ne, no = split(num)
        de, do = split(den)
        # num/den even in lam  <=>  num*conj(den) even, where conj flips lam sign.
        # Multiply by conjugate of den: den*conj(den) = de^2 - s*do^2 (even).
        new_num_even = _padd(_pmul(ne, de), _pneg(_pmul((Fraction(0),) + no, do)))
        new_num_odd = _padd(_pmul(no, de), _pneg(_pmul(ne, do)))
        if new_num_odd:
            raise ValueError("scalar %s is not an even function of lam" % self)
        new_den = _padd(_pmul(de, de), _pneg(_pmul((Fraction(0),) + do, do)))
        return new_num_even, new_den

    def substitute(self, value):
        """Evaluate at lam = value (value supports field arithmetic)."""
        n = _peval(self.num, value)
        d = _peval(self.den, value)
        return n / d

    # ------------------------------------------------------------------

    def __repr__(self):
        return "Scalar(%s)" % self

    def __str__(self):
        def fmt(p: UPoly) -> str:
            if not p:
                return "0"
            parts = []
            for k, c in enumerate(p):
                if c == 0:
                    continue
                if k == 0:
                    parts.append(str(c))
                else:
                    mono = "lam" if k == 1 else "lam^%d" % k
                    if c == 1:
                        parts.append(mono)
                    elif c == -1:
                        parts.append("-" + mono)
                    else:
                        parts.append("%s*%s" % (c, mono))
            return " + ".join(parts).replace("+ -", "- ")

        if self.den == (Fraction(1),):
            return fmt(self.num)
        return "(%s)/(%s)" % (fmt(self.num), fmt(self.den))


@dataclass(frozen=True)
class Phase:
    """The root of unity exp(i*pi*r) for rational r, taken modulo 2."""

    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r) % 2)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.r + other.r)

    def inverse(self) -> "Phase":
        return Phase(-self.r)

    def __pow__(self, k: int) -> "Phase":
        return Phase(self.r * k)

    def is_one(self) -> bool:
        return self.r == 0

    def is_real(self) -> bool:
        return self.r.denominator == 1

    def as_sign(self) -> int:
        """Return +-1 when the phase is real; error otherwise."""
        if not self.is_real():
            raise ValueError("phase exp(i*pi*%s) is not real" % self.r)
        return 1 if self.r == 0 else -1

    def __str__(self):
        return "exp(i*pi*%s)" % self.r
