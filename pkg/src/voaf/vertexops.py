"""Vertex operators on untwisted and twisted Fock sectors.

For a = h(-n1)...h(-nk) e^lam the operator is the normal-ordered product
of divided-power derivative fields with the exponential operator

    E(lam, z) = exp(sum_{n>0} lam h(-n)/n z^n) exp(-sum_{n>0} lam h(n)/n z^{-n})

times the charge shift (untwisted; powers z^{lam*mu + Z}) or the prefactor
z^{-lam^2/2} (twisted; powers in half-integer offsets, with the correction
operator e^{Delta_z} applied to a first).  Only single coefficients are
extracted; the finite window of modes that can contribute to a requested
coefficient is enumerated exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .fock import FockVector, Sector, partitions_of
from .scalars import Scalar


def gen_binom(x, k: int) -> Fraction:
    """Generalized binomial coefficient C(x, k) for rational x."""
    x = Fraction(x)
    acc = Fraction(1)
    for i in range(k):
        acc *= (x - i)
    return acc / math.factorial(k)


# ----------------------------------------------------------------------
# the c_mn table: sum c_mn x^m y^n = -log(((1+x)^{1/2} + (1+y)^{1/2})/2)


@lru_cache(maxsize=None)
def cmn_table(max_total: int = 12) -> Dict[Tuple[int, int], Fraction]:
    def trunc(series):
        return {e: c for e, c in series.items() if sum(e) <= max_total and c}

    def smul(a, b):
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                if i1 + i2 + j1 + j2 > max_total:
                    continue
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return trunc(out)

    def sadd(a, b):
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, Fraction(0)) + c
        return trunc(out)

    sqrt_x = {(k, 0): gen_binom(Fraction(1, 2), k) for k in range(max_total + 1)}
    sqrt_y = {(0, k): gen_binom(Fraction(1, 2), k) for k in range(max_total + 1)}
    u = sadd(sqrt_x, sqrt_y)
    u = {e: c / 2 for e, c in u.items()}
    u[(0, 0)] -= 1  # u = (sqrt(1+x)+sqrt(1+y))/2 - 1, no constant term
    assert u.get((0, 0), Fraction(0)) == 0
    u.pop((0, 0), None)
    # -log(1+u) = sum_{k>=1} (-1)^k u^k / k
    acc: Dict[Tuple[int, int], Fraction] = {}
    power = {(0, 0): Fraction(1)}
    for k in range(1, max_total + 1):
        power = smul(power, u)
        if not power:
            break
        acc = sadd(acc, {e: Fraction((-1) ** k, k) * c for e, c in power.items()})
    return {e: c for e, c in acc.items() if c}


def delta_apply(a: FockVector, max_total: int = 12) -> Dict[Fraction, FockVector]:
    """e^{Delta_z} a as a dict {j: component with z^{-j} attached}."""
    table = cmn_table(max_total)

    def delta_once(comp: FockVector) -> Dict[Fraction, FockVector]:
        out: Dict[Fraction, FockVector] = {}
        deg = comp.max_degree()
        for (m, n), c in table.items():
            if m + n == 0 or m + n > deg:
                continue
            w = comp.apply_mode(n).apply_mode(m).scale(c)
            if not w.is_zero():
                j = Fraction(m + n)
                out[j] = out.get(j, FockVector.zero(comp.sector)) + w
        return out

    # e^Delta a = sum_k Delta^k a / k!, with frontier_k = Delta^k a / k!
    result: Dict[Fraction, FockVector] = {Fraction(0): a}
    frontier: Dict[Fraction, FockVector] = {Fraction(0): a}
    k = 0
    while frontier:
        k += 1
        new: Dict[Fraction, FockVector] = {}
        for j0, comp in frontier.items():
            for j1, w in delta_once(comp).items():
                j = j0 + j1
                w = w.scale(Fraction(1, k))
                prev = new.get(j)
                new[j] = w if prev is None else prev + w
        frontier = {j: w for j, w in new.items() if not w.is_zero()}
        for j, w in frontier.items():
            prev = result.get(j)
            result[j] = w if prev is None else prev + w
    return {j: w for j, w in result.items() if not w.is_zero()}


# ----------------------------------------------------------------------
# core coefficient extraction


def _mode_values(sector: Sector, lo: Fraction, hi: Fraction, allow_zero: bool) -> List[Fraction]:
    """Legal mode indices of the sector in [lo, hi]."""
    out = []
    if sector.twisted:
        k = Fraction(1, 2) + math.ceil(lo - Fraction(1, 2))
        while k <= hi:
            out.append(k)
            k += 1
    else:
        k = Fraction(math.ceil(lo))
        while k <= hi:
            if k != 0 or allow_zero:
                out.append(k)
            k += 1
    return out


def _product_coeff_term(
    ns: Tuple[Fraction, ...],
    lam_a: Scalar,
    part: Tuple[Fraction, ...],
    cu: Scalar,
    E: Fraction,
    sector_u: Sector,
    out_sector: Sector,
) -> FockVector:
    """Coefficient of z^E (relative to the charge/prefactor power) of the
    normal-ordered product of the derivative fields for depths ns and the
    exponential pair E(lam_a, z), applied to the monomial (part, cu)."""
    out = FockVector.zero(out_sector)
    du = sum(part, Fraction(0))
    N = sum(ns, Fraction(0))
    k = len(ns)
    deg_out = du + E + N
    if deg_out < 0:
        return out
    lam_zero = lam_a.is_zero()
    base = FockVector(sector_u, {part: cu})
    # annihilation totals for the negative exponential (any lattice value)
    step = Fraction(1, 2) if sector_u.twisted else Fraction(1)
    sA_values = [Fraction(0)]
    if not lam_zero:
        t = step
        while t <= du:
            sA_values.append(t)
            t += step
    for sA in sA_values:
        for A in partitions_of(sA, sector_u):
            vA = base.apply_modes(sorted(A, reverse=True))
            if vA.is_zero():
                continue
            coefA = _exp_coeff(A, lam_a, negative=True)
            dA = du - sA
            # mode tuples for the k derivative-field factors
            for ms in _mode_tuples(sector_u, k, dA, deg_out, lam_zero, E + sA + N):
                sB = E + sA + sum(ms, Fraction(0)) + N
                if sB < 0 or (lam_zero and sB != 0):
                    continue
                vM = vA
                for m in sorted(ms, reverse=True):
                    vM = vM.apply_mode(m)
                    if vM.is_zero():
                        break
                if vM.is_zero():
                    continue
                coefM = Fraction(1)
                for m, n in zip(ms, ns):
                    coefM *= (-1) ** (int(n) - 1) * gen_binom(m + n - 1, int(n) - 1)
                if coefM == 0:
                    continue
                for B in partitions_of(sB, out_sector):
                    coefB = _exp_coeff(B, lam_a, negative=False)
                    w = vM if vM.sector == out_sector else vM.change_sector(out_sector)
                    w = w.apply_modes([-b for b in B])
                    w = w.scale(coefA * coefM * coefB)
                    out = out + w
    return out


def _grid(sector: Sector, upto: Fraction) -> List[Fraction]:
    return sector.depths_upto(upto)


def _exp_coeff(parts: Tuple[Fraction, ...], lam_a: Scalar, negative: bool) -> Scalar:
    """Multinomial coefficient of a creation/annihilation multiset in
    exp(+-sum lam h(-+n)/n z^{+-n})."""
    acc = Scalar.one(lam_a.mod)
    for d in set(parts):
        p = parts.count(d)
        c = (lam_a / d) ** p
        if negative and p % 2 == 1:
            c = -c
        acc = acc * c * Fraction(1, math.factorial(p))
    return acc


def _mode_tuples(
    sector: Sector,
    k: int,
    dA: Fraction,
    deg_out: Fraction,
    fixed_sum: bool,
    target: Fraction,
) -> Iterable[Tuple[Fraction, ...]]:
    """Tuples (m_1..m_k) of legal mode indices: annihilation total bounded by
    dA, each creation depth bounded by deg_out.  If fixed_sum, the total must
    equal -target; otherwise the total must be >= -target (so that the
    remaining creation budget sB is nonnegative)."""
    allow_zero = not sector.twisted
    values = _mode_values(sector, -deg_out, dA, allow_zero)

    def rec(i: int, pos_used: Fraction, total: Fraction):
        if i == k:
            if fixed_sum and total != -target:
                return
            if total < -target:
                return
            yield ()
            return
        remaining = k - i - 1
        for m in values:
            if m > 0 and pos_used + m > dA:
                continue
            t = total + m
            # prune: remaining factors contribute at most remaining*dA
            if t + remaining * dA < -target:
                continue
            if fixed_sum and t - remaining * deg_out > -target:
                continue
            for rest in rec(i + 1, pos_used + (m if m > 0 else 0), t):
                yield (m,) + rest

    return rec(0, Fraction(0), Fraction(0))


def vertex_op_coeff(
    a: FockVector,
    u: FockVector,
    offset,
    out_sector: Optional[Sector] = None,
) -> FockVector:
    """Coefficient of z^{base + offset} of the (inter)twining operator for a
    acting on u.  The base power is <lam_a, lam_u> for untwisted u and
    -lam_a^2/2 for twisted u; both are tracked implicitly.

    For twisted u the correction e^{Delta_z} is applied to a first."""
    offset = Fraction(offset)
    if u.sector.twisted:
        out_sector = Sector.twisted_sector()
        pieces = delta_apply(a)
    else:
        if out_sector is None:
            if a.sector.lam_scalar().is_zero():
                out_sector = u.sector
            else:
                raise ValueError("charged operator on untwisted module needs an explicit output sector")
        pieces = {Fraction(0): a}
    lam_a = a.sector.lam_scalar()
    acc = FockVector.zero(out_sector)
    for j, comp in pieces.items():
        E = offset + j
        for part, ca in comp.terms.items():
            for upart, cu in u.terms.items():
                contrib = _product_coeff_term(
                    part, lam_a, upart, ca * cu, E, u.sector, out_sector
                )
                acc = acc + contrib
    return acc


def mode(a: FockVector, n, u: FockVector) -> FockVector:
    """The mode a_n of an uncharged state a in M(1), acting on u (either
    sector): the coefficient of z^{-n-1}."""
    if not a.sector.lam_scalar().is_zero() or a.sector.twisted:
        raise ValueError("mode() requires a in the vacuum charge sector")
    n = Fraction(n)
    return vertex_op_coeff(a, u, -n - 1)


def weight(a: FockVector) -> Fraction:
    if not a.is_homogeneous():
        raise ValueError("vector %s is not homogeneous" % a)
    return a.max_degree() + a.sector.weight_offset_rat()


def o_apply(a: FockVector, v: FockVector) -> FockVector:
    """The degree-preserving zero-mode o(a) = a_{wt(a)-1} applied to v."""
    return mode(a, weight(a) - 1, v)


# ----------------------------------------------------------------------
# distinguished states of M(1)


def vacuum() -> FockVector:
    return FockVector.basis(Sector.untwisted(None))


def omega() -> FockVector:
    return FockVector.basis(Sector.untwisted(None), (1, 1), Fraction(1, 2))


def J_state() -> FockVector:
    s = Sector.untwisted(None)
    return FockVector(
        s,
        {
            (Fraction(1),) * 4: Scalar.of(1),
            (Fraction(3), Fraction(1)): Scalar.of(-2),
            (Fraction(2), Fraction(2)): Scalar.of(Fraction(3, 2)),
        },
    )
