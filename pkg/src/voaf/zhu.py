"""Zhu's associative-algebra products and the bimodule calculus.

For homogeneous a in the vacuum-charge sector acting on a module vector u:

    a * u = sum_i C(wt a, i) a_{i-1} u        (left product)
    u * a = sum_i C(wt a - 1, i) a_{i-1} u    (right product)
    a o u = sum_i C(wt a, i) a_{i-2} u        (generates O(M))

The quotient by O(M) is the bimodule controlling fusion; membership in
O(M) is decided by an exact linear solve against circle-product columns.

phi(u) = e^{L(1)} e^{i*pi*L(0)} u is the degree-reversing anti-map; its
square acts as phase e^{2*pi*i*wt}.

descendant_to_poly translates a Virasoro word L(-m1)...L(-mk) applied to a
lowest-weight module generator into the polynomial (in x = a_L, y = a_N)
that the word contributes in a contraction against lowest-weight vectors on
both sides, via the rewrite
[L(-n)v] = (-1)^{n-1}[omega*v - n v*omega - wt(v) v].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg, virasoro
from .fock import FockVector, Sector, basis_at_degree
from .labels import ModuleLabel
from .multipoly import MultiPoly
from .scalars import Phase, Scalar
from .vertexops import gen_binom, mode, o_apply, weight


def star_left(a: FockVector, u: FockVector) -> FockVector:
    wa = weight(a)
    if wa.denominator != 1:
        raise ValueError("integral weight required")
    acc = FockVector.zero(u.sector)
    for i in range(int(wa) + 1):
        acc = acc + mode(a, i - 1, u).scale(gen_binom(wa, i))
    return acc


def star_right(u: FockVector, a: FockVector) -> FockVector:
    wa = weight(a)
    if wa.denominator != 1:
        raise ValueError("integral weight required")
    acc = FockVector.zero(u.sector)
    # for wt(a) >= 1 the binomial kills i >= wt(a); for wt(a) = 0 the modes
    # a(i-1)u vanish once i exceeds wt(a) + deg(u)
    bound = int(wa + u.max_degree()) + 2
    for i in range(bound):
        acc = acc + mode(a, i - 1, u).scale(gen_binom(wa - 1, i))
    return acc


def circ(a: FockVector, u: FockVector) -> FockVector:
    wa = weight(a)
    if wa.denominator != 1:
        raise ValueError("integral weight required")
    acc = FockVector.zero(u.sector)
    for i in range(int(wa) + 1):
        acc = acc + mode(a, i - 2, u).scale(gen_binom(wa, i))
    return acc


# ----------------------------------------------------------------------
# O(M) membership


@dataclass
class MembershipResult:
    member: bool
    combination: Optional[List[Tuple[FockVector, FockVector, Scalar]]] = None


def o_membership(v: FockVector, module: ModuleLabel, cutoff: int = 6) -> MembershipResult:
    """Decide whether v lies in the span of {a o u} with a running over the
    invariant vacuum-sector basis of weight <= cutoff and u over the module
    basis with wt(a) + deg(u) + 1 <= cutoff."""
    if not module.contains(v):
        raise ValueError("vector does not lie in module %s" % module)
    vac = Sector.untwisted(None)
    mod_sec = module.sector()
    gens: List[Tuple[FockVector, FockVector]] = []
    cols: List[FockVector] = []
    for wa in range(2, cutoff + 1):
        for apart in basis_at_degree(vac, Fraction(wa), parity=0):
            a = FockVector.basis(vac, apart)
            dmax = cutoff - wa - 1
            d = module.top_degree()
            while d <= dmax + module.top_degree():
                for upart in module.basis_at(d):
                    u = FockVector.basis(mod_sec, upart)
                    col = circ(a, u)
                    if not col.is_zero():
                        gens.append((a, u))
                        cols.append(col)
                d += Fraction(1)
    zero = Scalar.zero(mod_sec.scalar_mod())
    one = Scalar.one(mod_sec.scalar_mod())
    rows_keys = sorted({p for c in cols for p in c.terms} | set(v.terms))
    rows = [[c.terms.get(p, zero) for c in cols] for p in rows_keys]
    rhs = [v.terms.get(p, zero) for p in rows_keys]
    try:
        sol = linalg.solve(rows, rhs, zero, one)
    except linalg.InconsistentSystem:
        return MembershipResult(False)
    combo = [
        (a, u, c) for (a, u), c in zip(gens, sol) if not c.is_zero()
    ]
    return MembershipResult(True, combo)


# ----------------------------------------------------------------------
# the phi anti-map


@dataclass
class PhiImage:
    """phase * vector with phase = exp(i*pi*r); scalars absorb only
    rational (+-1) adjustments, the genuinely complex part stays in phase."""

    phase: Phase
    vector: FockVector

    def normalized(self) -> "PhiImage":
        r = self.phase.r
        if r >= 1:
            return PhiImage(Phase(r - 1), -self.vector)
        return PhiImage(self.phase, self.vector)

    def __eq__(self, other):
        if not isinstance(other, PhiImage):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.phase == b.phase and a.vector == b.vector


def e_L1(v: FockVector) -> FockVector:
    """e^{L(1)} v (finite because L(1) lowers degree)."""
    acc = FockVector.zero(v.sector)
    term = v
    k = 0
    while not term.is_zero():
        acc = acc + term
        k += 1
        term = virasoro.L(1, term).scale(Fraction(1, k))
    return acc


def phi(v: FockVector) -> PhiImage:
    """phi(v) = e^{L(1)} e^{i*pi*L(0)} v.

    Requires the conformal weights of the components of v to agree mod 2Z;
    the common phase is extracted and integer differences fold into signs.
    """
    if v.is_zero():
        return PhiImage(Phase(Fraction(0)), v)
    offset = v.sector.weight_offset_rat()
    degs = v.degrees()
    w0 = degs[-1] + offset
    signed = FockVector.zero(v.sector)
    for d in degs:
        diff = d + offset - w0
        if diff.denominator != 1:
            raise ValueError("component weights differ by non-integers")
        comp = v.homogeneous_component(d)
        sign = -1 if int(diff) % 2 else 1
        signed = signed + comp.scale(Fraction(sign))
    return PhiImage(Phase(w0), e_L1(signed))


# ----------------------------------------------------------------------
# descendant words to contraction polynomials


def descendant_to_poly(ms: Sequence[int], base_weight) -> MultiPoly:
    """Contraction polynomial of L(-m1)...L(-mk) applied to a lowest-weight
    generator of weight base_weight, in x = a_L and y = a_N.

    Each L(-n) on a vector of weight w contributes the factor
    (-1)^{n-1} (x - n*y - w)."""
    x = MultiPoly.var("x")
    y = MultiPoly.var("y")
    if isinstance(base_weight, MultiPoly):
        base = base_weight
    else:
        base = MultiPoly.const(Fraction(base_weight))
    acc = MultiPoly.const(1)
    ms = list(ms)
    for i, m in enumerate(ms):
        inner = sum(ms[i + 1 :])
        factor = x - y * Fraction(m) - base - Fraction(inner)
        if (m - 1) % 2 == 1:
            factor = -factor
        acc = acc * factor
    return acc


def coords_to_polys(
    coords: Dict[virasoro.DescendantWord, Scalar],
    base_weights: Sequence,
    ngens: int,
    formal_s: bool = False,
) -> List[Tuple[MultiPoly, MultiPoly]]:
    """Turn descendant coordinates into one contraction polynomial per
    generator, as (numerator, denominator) pairs; denominators are
    polynomials in s and arise only for formal-charge sectors.

    Scalars must be rational, or (with formal_s) even rational functions of
    lam converted to rational functions of s."""
    from .multipoly import VARS, _VAR_INDEX
    from .scalars import _pdivmod, _pgcd, _pmul, _padd, _pnorm

    one_u = (Fraction(1),)
    s_idx = _VAR_INDEX["s"]
    # per generator: denominator as univariate poly in s, numerator as a map
    # {exponent tuple with s-slot zero: univariate poly in s}
    nums: List[Dict] = [dict() for _ in range(ngens)]
    dens = [one_u for _ in range(ngens)]

    def as_upolys(poly: MultiPoly) -> Dict:
        out: Dict = {}
        for e, c in poly.terms.items():
            k = e[s_idx]
            rest = list(e)
            rest[s_idx] = 0
            rest = tuple(rest)
            cur = list(out.get(rest, ()))
            while len(cur) <= k:
                cur.append(Fraction(0))
            cur[k] += c
            out[rest] = _pnorm(cur)
        return {e: p for e, p in out.items() if p}

    for w, c in coords.items():
        fpoly = descendant_to_poly(w.ms, base_weights[w.gen])
        if c.is_rational():
            cn, cd = (c.as_rat(),), one_u
            if c.is_zero():
                continue
        elif formal_s:
            cn, cd = c.even_part_polys()
        else:
            raise ValueError("non-rational descendant coordinate %s" % c)
        g = w.gen
        gcd = _pgcd(dens[g], cd)
        lcm = _pmul(dens[g], _pdivmod(cd, gcd)[0])
        m_old = _pdivmod(lcm, dens[g])[0]
        m_new = _pdivmod(lcm, cd)[0]
        add = _pmul(cn, m_new)
        merged: Dict = {}
        for e, p in nums[g].items():
            merged[e] = _pmul(p, m_old)
        for e, p in as_upolys(fpoly).items():
            merged[e] = _padd(merged.get(e, ()), _pmul(p, add))
        nums[g] = {e: p for e, p in merged.items() if p}
        dens[g] = lcm

    out: List[Tuple[MultiPoly, MultiPoly]] = []
    for g in range(ngens):
        den = dens[g]
        common = den
        for p in nums[g].values():
            common = _pgcd(common, p)
            if common == one_u:
                break
        if common != one_u and common:
            den = _pdivmod(den, common)[0]
            nums[g] = {e: _pdivmod(p, common)[0] for e, p in nums[g].items()}
        num_poly = MultiPoly()
        for e, p in nums[g].items():
            for k, cc in enumerate(p):
                if cc:
                    ee = list(e)
                    ee[s_idx] = k
                    num_poly.terms[tuple(ee)] = num_poly.terms.get(tuple(ee), Fraction(0)) + cc
        num_poly.terms = {e: c for e, c in num_poly.terms.items() if c}
        den_poly = MultiPoly()
        for k, cc in enumerate(den):
            if cc:
                ee = [0] * len(VARS)
                ee[s_idx] = k
                den_poly.terms[tuple(ee)] = cc
        out.append((num_poly, den_poly))
    return out
