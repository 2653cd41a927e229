"""Exact formal q-series and the character identities of the orbifold modules.

All characters involved live on the exponent grid (1/48)Z; a QSeries keeps
exact rational coefficients up to a rational cutoff, and arithmetic
propagates the smallest cutoff involved.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .fock import Sector, basis_at_degree
from .labels import ModuleLabel

_GRID = Fraction(1, 48)


def _on_grid(e: Fraction) -> Fraction:
    e = Fraction(e)
    if (e / _GRID).denominator != 1:
        raise ValueError("exponent %s is not on the 1/48 grid" % e)
    return e


class QSeries:
    """Truncated formal series sum c_e q^e with exponents on (1/48)Z."""

    __slots__ = ("coeffs", "cutoff")

    def __init__(self, coeffs: Optional[Dict[Fraction, Fraction]] = None, cutoff=Fraction(20)):
        self.cutoff = Fraction(cutoff)
        self.coeffs: Dict[Fraction, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                e = _on_grid(e)
                c = Fraction(c)
                if c and e <= self.cutoff:
                    self.coeffs[e] = c

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(cutoff=Fraction(20)) -> "QSeries":
        return QSeries({}, cutoff)

    @staticmethod
    def one(cutoff=Fraction(20)) -> "QSeries":
        return QSeries({Fraction(0): Fraction(1)}, cutoff)

    @staticmethod
    def monomial(e, c=1, cutoff=Fraction(20)) -> "QSeries":
        return QSeries({Fraction(e): Fraction(c)}, cutoff)

    # -- arithmetic -------------------------------------------------------

    def _align(self, other: "QSeries") -> Fraction:
        return min(self.cutoff, other.cutoff)

    def __add__(self, other: "QSeries") -> "QSeries":
        cut = self._align(other)
        out: Dict[Fraction, Fraction] = {}
        for e in set(self.coeffs) | set(other.coeffs):
            if e > cut:
                continue
            c = self.coeffs.get(e, Fraction(0)) + other.coeffs.get(e, Fraction(0))
            if c:
                out[e] = c
        return QSeries(out, cut)

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.cutoff)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return QSeries({e: c * other for e, c in self.coeffs.items()}, self.cutoff)
        cut = self._align(other)
        low_self = min(self.coeffs, default=Fraction(0))
        low_other = min(other.coeffs, default=Fraction(0))
        out: Dict[Fraction, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            if e1 + low_other > cut:
                continue
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e > cut:
                    continue
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return QSeries(out, cut)

    __rmul__ = __mul__

    def shift(self, e) -> "QSeries":
        e = _on_grid(Fraction(e))
        return QSeries({k + e: c for k, c in self.coeffs.items()}, self.cutoff + e)

    def truncate(self, cutoff) -> "QSeries":
        cutoff = Fraction(cutoff)
        return QSeries({e: c for e, c in self.coeffs.items() if e <= cutoff}, cutoff)

    def coefficient(self, e) -> Fraction:
        e = Fraction(e)
        if e > self.cutoff:
            raise ValueError("coefficient beyond cutoff")
        return self.coeffs.get(e, Fraction(0))

    def agrees_with(self, other: "QSeries") -> Tuple[bool, Optional[Fraction]]:
        """Coefficientwise comparison up to the common cutoff; returns the
        first mismatching exponent on failure."""
        cut = self._align(other)
        for e in sorted(
            e for e in set(self.coeffs) | set(other.coeffs) if e <= cut
        ):
            if self.coeffs.get(e, Fraction(0)) != other.coeffs.get(e, Fraction(0)):
                return False, e
        return True, None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.agrees_with(other)[0]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(str(c))
            else:
                parts.append("%s q^{%s}" % (c, e))
        return " + ".join(parts)

    def to_json(self) -> List[List[str]]:
        return [[str(e), str(self.coeffs[e])] for e in sorted(self.coeffs)]


def _inverse_factor(step_exponent: Fraction, cutoff: Fraction) -> Iterable[QSeries]:
    """Factors 1/(1-q^e) for e = step_exponent, 2*step, ... up to cutoff."""
    e = step_exponent
    while e <= cutoff:
        geom: Dict[Fraction, Fraction] = {}
        k = Fraction(0)
        while k <= cutoff:
            geom[k] = Fraction(1)
            k += e
        yield QSeries(geom, cutoff)
        e += step_exponent


def eta_inverse(cutoff=Fraction(20)) -> QSeries:
    """1/eta(q) = q^{-1/24} * sum_n p(n) q^n, to the cutoff."""
    cutoff = Fraction(cutoff)
    # exact partition-number generating function by dynamic programming
    n_max = int(cutoff + 1)
    counts = [Fraction(0)] * (n_max + 1)
    counts[0] = Fraction(1)
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            counts[n] += counts[n - part]
    series = QSeries(
        {Fraction(n): counts[n] for n in range(n_max + 1)}, cutoff + 1
    )
    return series.shift(Fraction(-1, 24)).truncate(cutoff)


def char_virasoro_c1(h, cutoff=Fraction(20)) -> QSeries:
    """Character of the irreducible central-charge-one module of lowest
    weight h, including the q^{-c/24} normalization."""
    h = Fraction(h)
    if h < 0:
        raise ValueError("weight must be nonnegative")
    inv = eta_inverse(cutoff + 1)
    four_h = 4 * h
    n = None
    if four_h.denominator == 1:
        r = int(round(four_h.numerator ** 0.5))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand * cand == four_h.numerator:
                n = cand
                break
    if n is None:
        out = inv.shift(h)
    else:
        h2 = Fraction((n + 2) * (n + 2), 4)
        out = inv.shift(h) - inv.shift(h2)
    return out.truncate(cutoff)


def graded_dimension(module: Union[ModuleLabel, str], cutoff=Fraction(20)) -> QSeries:
    """Character tr q^{L(0)-1/24} by direct basis enumeration."""
    cutoff = Fraction(cutoff)
    if isinstance(module, str) and module == "Mtheta":
        sector = Sector.twisted_sector()
        parity: Optional[int] = None
        offset = Fraction(1, 16)
    else:
        if isinstance(module, str):
            module = ModuleLabel.parse(module)
        sector = module.sector()
        parity = module.parity()
        offset = sector.weight_offset_rat()
    coeffs: Dict[Fraction, Fraction] = {}
    step = Fraction(1, 2) if sector.twisted else Fraction(1)
    degrees = []
    d = Fraction(0)
    while d <= cutoff + 1:
        degrees.append(d)
        d += step
    for deg in degrees:
        dim = len(basis_at_degree(sector, deg, parity))
        if dim:
            coeffs[deg] = Fraction(dim)
    series = QSeries(coeffs, cutoff + 1)
    return series.shift(offset - Fraction(1, 24)).truncate(cutoff)


def decomposition_weights(module: Union[ModuleLabel, str], hmax) -> List[Tuple[Fraction, int]]:
    """Lowest weights (with multiplicity one) of the irreducible Virasoro
    decomposition of the module, up to hmax."""
    if isinstance(module, str):
        module = ModuleLabel.parse(module)
    hmax = Fraction(hmax)
    out: List[Tuple[Fraction, int]] = []

    def emit(h: Fraction):
        if h <= hmax:
            out.append((h, 1))

    p = 0
    if module.kind == "M+":
        while Fraction(4 * p * p) <= hmax:
            emit(Fraction(4 * p * p))
            p += 1
    elif module.kind == "M-":
        while Fraction((2 * p + 1) ** 2) <= hmax:
            emit(Fraction((2 * p + 1) ** 2))
            p += 1
    elif module.kind == "Mtheta+":
        while Fraction((8 * p + 1) ** 2, 16) <= hmax:
            emit(Fraction((8 * p + 1) ** 2, 16))
            emit(Fraction((8 * p + 7) ** 2, 16))
            p += 1
    elif module.kind == "Mtheta-":
        while Fraction((8 * p + 3) ** 2, 16) <= hmax:
            emit(Fraction((8 * p + 3) ** 2, 16))
            emit(Fraction((8 * p + 5) ** 2, 16))
            p += 1
    else:
        s = module.s
        h = s / 2
        four_h = 4 * h
        n = None
        if four_h.denominator == 1:
            r = int(round(four_h.numerator ** 0.5))
            for cand in (r - 1, r, r + 1):
                if cand >= 0 and cand * cand == four_h.numerator:
                    n = cand
                    break
        if n is None:
            emit(h)
        else:
            while Fraction((n + 2 * p) ** 2, 4) <= hmax:
                emit(Fraction((n + 2 * p) ** 2, 4))
                p += 1
    return sorted(out)


def verify_decomposition(
    module: Union[ModuleLabel, str],
    parts: Sequence[Tuple[Fraction, int]],
    cutoff=Fraction(20),
) -> Tuple[bool, Optional[dict]]:
    """Compare the module character with a sum of irreducible characters.

    Returns (True, None) on coefficientwise agreement up to the cutoff, or
    (False, report) with the first mismatching exponent and both values.
    """
    cutoff = Fraction(cutoff)
    lhs = graded_dimension(module, cutoff)
    rhs = QSeries.zero(cutoff)
    for h, mult in parts:
        rhs = rhs + char_virasoro_c1(h, cutoff) * Fraction(mult)
    ok, at = lhs.agrees_with(rhs)
    if ok:
        return True, None
    return False, {
        "exponent": str(at),
        "module_coefficient": str(lhs.coeffs.get(at, Fraction(0))),
        "sum_coefficient": str(rhs.coeffs.get(at, Fraction(0))),
    }


def jacobi_triple_check(cutoff=Fraction(20)) -> bool:
    """prod_k (1-q^k)/(1-q^{k-1/2}) = sum_{p>=0} q^{p(p+1)/4}."""
    cutoff = Fraction(cutoff)
    lhs = QSeries.one(cutoff)
    k = 1
    while Fraction(k) - Fraction(1, 2) <= cutoff:
        factor: Dict[Fraction, Fraction] = {Fraction(0): Fraction(1)}
        if Fraction(k) <= cutoff:
            factor[Fraction(k)] = Fraction(-1)
        lhs = lhs * QSeries(factor, cutoff)
        geom: Dict[Fraction, Fraction] = {}
        e = Fraction(0)
        step = Fraction(k) - Fraction(1, 2)
        while e <= cutoff:
            geom[e] = Fraction(1)
            e += step
        lhs = lhs * QSeries(geom, cutoff)
        k += 1
    rhs: Dict[Fraction, Fraction] = {}
    p = 0
    while Fraction(p * (p + 1), 4) <= cutoff:
        e = Fraction(p * (p + 1), 4)
        rhs[e] = rhs.get(e, Fraction(0)) + 1
        p += 1
    return lhs.agrees_with(QSeries(rhs, cutoff))[0]


def twisted_character_identity(cutoff=Fraction(20)) -> bool:
    """The twisted-space character equals both closed forms:
    q^{1/16-1/24} prod 1/(1-q^{k-1/2}) and (1/eta) sum q^{(2p+1)^2/16}."""
    cutoff = Fraction(cutoff)
    lhs = graded_dimension("Mtheta", cutoff)
    mid = QSeries.one(cutoff + 1)
    k = 1
    while Fraction(k) - Fraction(1, 2) <= cutoff + 1:
        step = Fraction(k) - Fraction(1, 2)
        geom: Dict[Fraction, Fraction] = {}
        e = Fraction(0)
        while e <= cutoff + 1:
            geom[e] = Fraction(1)
            e += step
        mid = mid * QSeries(geom, cutoff + 1)
        k += 1
    mid = mid.shift(Fraction(1, 16) - Fraction(1, 24)).truncate(cutoff)
    inv = eta_inverse(cutoff + 1)
    rhs = QSeries.zero(cutoff + 1)
    p = 0
    while Fraction((2 * p + 1) ** 2, 16) <= cutoff + 1:
        rhs = rhs + inv.shift(Fraction((2 * p + 1) ** 2, 16))
        p += 1
    rhs = rhs.truncate(cutoff)
    return lhs.agrees_with(mid)[0] and mid.agrees_with(rhs)[0]
