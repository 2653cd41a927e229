"""Command-line surface: verification suites, fusion tables, characters,
and ad-hoc reduction to descendant coordinates.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 inconclusive (a membership cutoff was exhausted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from . import characters, fusion, virasoro, zhu
from .fock import FockVector, Sector, basis_at_degree, contravariant_form
from .labels import ModuleLabel, mlam, mminus, mplus, mtheta_minus, mtheta_plus
from .scalars import Scalar
from .vertexops import J_state, cmn_table, omega, vertex_op_coeff

Check = Tuple[str, bool, str]


def _env_cutoff(default: int) -> int:
    raw = os.environ.get("VOAF_CUTOFF")
    if raw is None:
        return default
    return int(raw)


# ----------------------------------------------------------------------
# table of lowest weights and quartic-generator eigenvalues


_UPOLY_NAMES = {0: "", 1: "s"}


def _upoly_str(coeffs) -> str:
    """Univariate polynomial in s from a low-to-high coefficient list."""
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mono = "s" if k == 1 else "s^%d" % k
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _formal_eigen(sc) -> str:
    num, den = sc.even_part_polys()
    if list(den) == [Fraction(1)]:
        return _upoly_str(num)
    return "(%s)/(%s)" % (_upoly_str(num), _upoly_str(den))


def _eigenvalue(op: FockVector, v: FockVector):
    """Scalar e with o(op) v = e v, or None when the action is not scalar."""
    from .vertexops import o_apply

    w = o_apply(op, v)
    key = next(iter(v.terms))
    c = w.terms.get(key)
    if c is None:
        return Scalar.zero(v.sector.scalar_mod()) if w.is_zero() else None
    if (w - v.scale(c)).is_zero():
        return c
    return None


def table41_rows() -> Tuple[List[Tuple[str, str, str]], bool]:
    """Recomputed (module, a_M, b_M) rows, plus agreement with the stored
    lowest-weight data."""
    from .fock import FORMAL

    rows: List[Tuple[str, str, str]] = []
    ok = True
    for label in [mplus(), mminus(), None, mtheta_plus(), mtheta_minus()]:
        if label is None:
            v = FockVector.basis(Sector.untwisted(FORMAL))
            ea = _eigenvalue(omega(), v)
            eb = _eigenvalue(J_state(), v)
            if ea is None or eb is None:
                ok = False
                rows.append(("M(1,lam)", "?", "?"))
                continue
            rows.append(("M(1,lam)", _formal_eigen(ea), _formal_eigen(eb)))
            ok = ok and _formal_eigen(ea) == "1/2*s" and _formal_eigen(eb) == "-1/2*s + s^2"
            continue
        v = label.top_vector()
        ea = _eigenvalue(omega(), v)
        eb = _eigenvalue(J_state(), v)
        if ea is None or eb is None:
            ok = False
            rows.append((str(label), "?", "?"))
            continue
        rows.append((str(label), str(ea.as_rat()), str(eb.as_rat())))
        ok = ok and ea.as_rat() == label.a_M() and eb.as_rat() == label.b_M()
    return rows, ok


# ----------------------------------------------------------------------
# state-text parsing


_TOKEN = __import__("re").compile(
    r"\s*(h\(\s*-\s*(\d+(?:/\d+)?)\s*\)|\|0>|e\^lam|1theta|lam|\d+/\d+|\d+|[+\-*])"
)


def parse_state(text: str, sector: Sector) -> FockVector:
    """Parse a sum of scalar-prefixed creation-mode monomials.

    Grammar: terms joined by + or -; each term is an optional scalar prefix
    (a rational, `lam`, or rational * lam) followed by h(-k) factors and a
    terminal |0>, e^lam, or 1theta.
    """
    pos = 0
    tokens: List[Tuple[str, str]] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError("cannot tokenize state text at %r" % text[pos:])
        tok = m.group(1)
        if tok.startswith("h("):
            tokens.append(("mode", m.group(2)))
        elif tok in ("|0>", "e^lam", "1theta"):
            tokens.append(("terminal", tok))
        elif tok == "lam":
            tokens.append(("lam", tok))
        elif tok in "+-*":
            tokens.append(("op", tok))
        else:
            tokens.append(("rat", tok))
        pos = m.end()
    mod = sector.scalar_mod()
    want = "1theta" if sector.twisted else ("|0>" if sector.s is None else "e^lam")
    total = FockVector.zero(sector)
    i = 0
    while i < len(tokens):
        sign = Fraction(1)
        while i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coeff = Scalar.of(sign, mod)
        parts: List[Fraction] = []
        terminal = None
        while i < len(tokens) and terminal is None:
            kind, val = tokens[i]
            if kind == "rat":
                coeff = coeff * Scalar.of(Fraction(val), mod)
            elif kind == "lam":
                coeff = coeff * Scalar.lam(mod)
            elif kind == "mode":
                parts.append(Fraction(val))
            elif kind == "terminal":
                terminal = val
            elif kind == "op" and val == "*":
                pass
            else:
                break
            i += 1
        if terminal is None:
            raise ValueError("term missing its terminal (|0>, e^lam, 1theta)")
        if terminal != want:
            raise ValueError(
                "terminal %r does not match the module's sector (wants %r)"
                % (terminal, want)
            )
        for k in parts:
            if not sector.depth_ok(k):
                raise ValueError("mode depth %s is not legal in this sector" % k)
        v = FockVector.basis(sector, tuple(sorted(parts, reverse=True)))
        total = total + v.scale(coeff)
    return total


# ----------------------------------------------------------------------
# verification suites


def suite_characters(cutoff: Optional[int] = None) -> List[Check]:
    cut = Fraction(cutoff if cutoff is not None else _env_cutoff(20))
    checks: List[Check] = []
    checks.append(
        (
            "triple-product identity prod (1-q^k)/(1-q^{k-1/2}) = sum q^{p(p+1)/4}",
            characters.jacobi_triple_check(cut),
            "cutoff %s" % cut,
        )
    )
    checks.append(
        (
            "twisted character double identity",
            characters.twisted_character_identity(cut),
            "cutoff %s" % cut,
        )
    )
    for mod in ["M+", "M-", "Mtheta+", "Mtheta-", "M(s=1/3)", "M(s=2)"]:
        parts = characters.decomposition_weights(mod, cut + 1)
        ok, rep = characters.verify_decomposition(mod, parts, cut)
        checks.append(
            (
                "irreducible decomposition of %s" % mod,
                ok,
                "agrees to q^%s" % cut if ok else json.dumps(rep, sort_keys=True),
            )
        )
    small = min(cut, Fraction(10))
    names = ["M+", "M-", "Mtheta+", "Mtheta-", "M(s=1/3)"]
    chars = {m: characters.graded_dimension(m, small) for m in names}
    distinct = all(
        not chars[a].agrees_with(chars[b])[0]
        for i, a in enumerate(names)
        for b in names[i + 1 :]
    )
    checks.append(
        ("pairwise distinct characters", distinct, "cutoff %s" % small)
    )
    return checks


def _zhu_ideal_checks() -> List[Check]:
    import sympy as sp

    x, y, s = sp.symbols("x y s")
    g1 = (y - 4 * x**2 + x) * (70 * y + 908 * x**2 - 515 * x + 27)
    g2 = (
        (y - 4 * x**2 + x)
        * (x - 1)
        * (x - sp.Rational(1, 16))
        * (x - sp.Rational(9, 16))
    )
    points = [
        ("M+", 0, 0),
        ("M-", 1, -6),
        ("M(1,lam)", s / 2, s**2 - s / 2),
        ("Mtheta+", sp.Rational(1, 16), sp.Rational(3, 128)),
        ("Mtheta-", sp.Rational(9, 16), sp.Rational(-45, 128)),
    ]
    checks: List[Check] = []
    for gname, g in (("quartic ideal generator", g1), ("sextic ideal generator", g2)):
        for mname, a, b in points:
            val = sp.expand(g.subs({x: a, y: b}))
            checks.append(
                (
                    "%s vanishes at the %s lowest-weight point" % (gname, mname),
                    val == 0,
                    "value %s" % val,
                )
            )
    return checks


def relation_element() -> FockVector:
    """J - 4 omega*omega - 17 omega + 9 h(-3)h(-1)|0>."""
    h3h1 = FockVector.basis(Sector.untwisted(None), (3, 1))
    return (
        J_state()
        + zhu.star_left(omega(), omega()).scale(Fraction(-4))
        + omega().scale(Fraction(-17))
        + h3h1.scale(Fraction(9))
    )


def suite_zhu(cutoff: Optional[int] = None) -> List[Check]:
    cut = cutoff if cutoff is not None else _env_cutoff(6)
    checks: List[Check] = []
    rows, ok = table41_rows()
    checks.append(
        (
            "lowest-weight table recomputation",
            ok,
            "; ".join("%s:(%s,%s)" % r for r in rows),
        )
    )
    checks.extend(_zhu_ideal_checks())
    res = zhu.o_membership(relation_element(), mplus(), cutoff=cut)
    checks.append(
        (
            "quartic relation element lies in the degree-zero ideal",
            res.member,
            "cutoff %d, combination size %d" % (cut, len(res.combination or [])),
        )
    )
    # anti-map samples: phi(a*u) = phi(u)*phi(a), phi(a o u) = -phi(a) o phi(u)
    samples = [
        (omega(), mminus().top_vector()),
        (FockVector.basis(Sector.untwisted(None), (3, 1)), mminus().top_vector()),
        (omega(), mtheta_minus().top_vector()),
    ]
    def _per_component(binary, a, u):
        acc = FockVector.zero(u.sector)
        for d in a.degrees():
            acc = acc + binary(a.homogeneous_component(d), u)
        return acc

    def _phi_eq(lhs, base_phase, vec) -> bool:
        # compare e^{i pi r} lhs.vector with e^{i pi base} vec; the anchor
        # weights may differ by an integer, which folds into a sign
        if lhs.vector.is_zero():
            return vec.is_zero()
        diff = lhs.phase.r - base_phase.r
        if diff.denominator != 1:
            return False
        return (lhs.vector.scale(Fraction((-1) ** int(diff))) - vec).is_zero()

    for a, u in samples:
        pa, pu = zhu.phi(a), zhu.phi(u)
        sign = pa.phase.as_sign()
        lhs = zhu.phi(zhu.star_left(a, u))
        rhs = _per_component(
            lambda b, w: zhu.star_right(w, b), pa.vector, pu.vector
        ).scale(Fraction(sign))
        ok1 = _phi_eq(lhs, pu.phase, rhs)
        lhs2 = zhu.phi(zhu.circ(a, u))
        rhs2 = _per_component(zhu.circ, pa.vector, pu.vector).scale(Fraction(-sign))
        ok2 = _phi_eq(lhs2, pu.phase, rhs2)
        checks.append(
            (
                "anti-map exchanges the two products (sample wt %s on %s)"
                % (a.max_degree(), "twisted" if u.sector.twisted else "untwisted"),
                ok1 and ok2,
                "",
            )
        )
    # rewrite of L(-n)v modulo the degree-zero ideal, n <= 4
    v = mminus().top_vector()
    for n in range(1, 5):
        rewrite = (
            zhu.star_left(omega(), v)
            + zhu.star_right(v, omega()).scale(Fraction(-n))
            + v.scale(Fraction(-1))
        ).scale(Fraction((-1) ** (n - 1)))
        elem = virasoro.L(-n, v) - rewrite
        res = zhu.o_membership(elem, mminus(), cutoff=cut)
        checks.append(
            (
                "L(-%d) rewrite is a member of the degree-zero ideal" % n,
                res.member,
                "cutoff %d" % cut,
            )
        )
    return checks


def suite_virasoro(max_degree: int = 6) -> List[Check]:
    checks: List[Check] = []
    sectors = [
        ("untwisted", Sector.untwisted(None)),
        ("twisted", Sector.twisted_sector()),
    ]
    for sname, sec in sectors:
        ok_h = True
        ok_v = True
        step = Fraction(1, 2) if sec.twisted else Fraction(1)
        degs = []
        d = Fraction(0)
        while d <= max_degree:
            degs.append(d)
            d += step
        half = Fraction(1, 2) if sec.twisted else Fraction(0)
        hmodes = [k + half for k in range(-2, 3)] if sec.twisted else list(range(-2, 3))
        hmodes = [m for m in hmodes if m != 0 or not sec.twisted]
        for deg in degs:
            for part in basis_at_degree(sec, deg):
                w = FockVector.basis(sec, part)
                for hm in hmodes:
                    for hn in hmodes:
                        lhs = w.apply_mode(hn).apply_mode(hm) - w.apply_mode(
                            hm
                        ).apply_mode(hn)
                        rhs = (
                            w.scale(hm)
                            if hm + hn == 0
                            else FockVector.zero(sec)
                        )
                        if not (lhs - rhs).is_zero():
                            ok_h = False
                for m in range(-3, 4):
                    for n in range(m + 1, 4):
                        lhs = virasoro.L(m, virasoro.L(n, w)) - virasoro.L(
                            n, virasoro.L(m, w)
                        )
                        rhs = virasoro.L(m + n, w).scale(Fraction(m - n))
                        if m + n == 0:
                            rhs = rhs + w.scale(Fraction(m**3 - m, 12))
                        if not (lhs - rhs).is_zero():
                            ok_v = False
        checks.append(
            (
                "Heisenberg commutators on the %s sector" % sname,
                ok_h,
                "degree <= %d" % max_degree,
            )
        )
        checks.append(
            (
                "Virasoro commutators (central charge 1) on the %s sector" % sname,
                ok_v,
                "degree <= %d" % max_degree,
            )
        )
    singulars = [
        ("weight 1", mminus().top_vector(), [(2, (3,)), (-4, (2, 1)), (1, (1, 1, 1))]),
        ("weight 1/4", mlam(Fraction(1, 2)).top_vector(), [(1, (1, 1)), (-1, (2,))]),
        (
            "weight 9/4",
            mlam(Fraction(9, 2)).top_vector(),
            [
                (18, (4,)),
                (-14, (3, 1)),
                (-9, (2, 2)),
                (10, (2, 1, 1)),
                (-1, (1, 1, 1, 1)),
            ],
        ),
    ]
    for name, vec, combo in singulars:
        img = virasoro.singular_vector_image(combo, vec)
        checks.append(
            ("singular-vector image vanishes at %s" % name, img.is_zero(), "")
        )
    rel = zhu.star_left(
        FockVector.basis(Sector.untwisted(None), (3, 1)), mminus().top_vector()
    )
    coords = virasoro.express_in_descendants(rel, [mminus().top_vector()])
    back = virasoro.reconstruct(coords, [mminus().top_vector()])
    checks.append(
        (
            "descendant coordinates round-trip the quartic star product",
            (back - rel).is_zero(),
            "%d descendant words" % len(coords),
        )
    )
    return checks


def _cmn_taylor_oracle(max_total: int) -> bool:
    import sympy as sp

    x, y = sp.symbols("x y")
    f = -sp.log((sp.sqrt(1 + x) + sp.sqrt(1 + y)) / 2)
    poly = f.series(x, 0, max_total + 1).removeO()
    poly = sp.expand(
        sum(
            sp.series(t, y, 0, max_total + 1).removeO()
            for t in sp.Add.make_args(poly)
        )
    )
    table = cmn_table(max_total)
    for m in range(max_total + 1):
        for n in range(max_total + 1 - m):
            if m + n == 0:
                continue
            want = sp.Rational(table.get((m, n), Fraction(0)))
            got = poly.coeff(x, m).coeff(y, n)
            if sp.simplify(got - want) != 0:
                return False
    return True


def suite_twisted() -> List[Check]:
    checks: List[Check] = []
    tsec = Sector.twisted_sector()
    ok_theta = True
    d = Fraction(0)
    while d <= 3:
        for part in basis_at_degree(tsec, d):
            w = FockVector.basis(tsec, part)
            if not (w.theta().theta() - w).is_zero():
                ok_theta = False
            want = w.scale(Fraction((-1) ** len(part)))
            if not (w.theta() - want).is_zero():
                ok_theta = False
        d += Fraction(1, 2)
    checks.append(("involution squares to the identity (twisted, degree <= 3)", ok_theta, ""))
    ok_gram = True
    d = Fraction(0)
    while d <= 4:
        parts = basis_at_degree(tsec, d)
        vecs = [FockVector.basis(tsec, p) for p in parts]
        for i, vi in enumerate(vecs):
            for j, vj in enumerate(vecs):
                val = contravariant_form(vi, vj)
                if i == j:
                    if val.is_zero() or val.as_rat() <= 0:
                        ok_gram = False
                elif not val.is_zero():
                    ok_gram = False
        d += Fraction(1, 2)
    checks.append(
        ("contravariant Gram matrix positive diagonal (degree <= 4)", ok_gram, "")
    )
    checks.append(
        (
            "degree-correction coefficients match the logarithmic Taylor series",
            _cmn_taylor_oracle(8),
            "total degree <= 8",
        )
    )
    sec = Sector.untwisted(Fraction(2))
    a = FockVector.basis(sec)
    tv = FockVector.basis(tsec)
    lam = Scalar.lam(Fraction(2))

    def is_single(vec: FockVector, part, scalar: Scalar) -> bool:
        return list(vec.terms) == [tuple(Fraction(p) for p in part)] and vec.terms[
            tuple(Fraction(p) for p in part)
        ] == scalar

    lead0 = vertex_op_coeff(a, tv, Fraction(0))
    checks.append(
        (
            "twisted intertwiner leading coefficient is the twisted vacuum",
            is_single(lead0, (), Scalar.one(None)),
            "",
        )
    )
    # the subleading coefficient carries the 1/n of the exponential at
    # n = 1/2, hence the factor 2
    lead1 = vertex_op_coeff(a, tv, Fraction(1, 2))
    checks.append(
        (
            "twisted intertwiner subleading coefficient is 2 lam h(-1/2)",
            is_single(lead1, (Fraction(1, 2),), lam * 2),
            "",
        )
    )
    hv = FockVector.basis(tsec, (Fraction(1, 2),))
    lead2 = vertex_op_coeff(a, hv, Fraction(-1, 2))
    checks.append(
        (
            "twisted intertwiner lowering coefficient is -lam times the vacuum",
            is_single(lead2, (), -lam),
            "",
        )
    )
    return checks


_GRID = (
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(2),
    Fraction(9, 2),
    Fraction(8),
    Fraction(5),
)


def suite_fusion() -> List[Check]:
    checks: List[Check] = []
    gen_labels = [
        mplus(),
        mminus(),
        mtheta_plus(),
        mtheta_minus(),
        mlam(Fraction(1, 3)),
        mlam(Fraction(1, 2)),
        mlam(Fraction(2)),
        mlam(Fraction(9, 2)),
    ]
    ok_gen = all(fusion.verify_generator_hypothesis(lab) for lab in gen_labels)
    checks.append(
        ("top vectors generate their modules (mode closure)", ok_gen, "%d labels" % len(gen_labels))
    )
    certs = fusion.full_table(_GRID)
    mism = [
        c
        for c in certs
        if c.verdict != fusion.expected_fusion(c.m, c.n, c.l)
    ]
    checks.append(
        (
            "full fusion table matches the closed-form table",
            not mism,
            "%d triples" % len(certs)
            if not mism
            else "first mismatch (%s,%s,%s)" % (mism[0].m, mism[0].n, mism[0].l),
        )
    )
    sample = [c for i, c in enumerate(certs) if i % 97 == 0][:20]
    ok_sym = True
    for c in sample:
        v = c.verdict
        if (
            fusion.decide(c.n, c.m, c.l).verdict != v
            or fusion.decide(c.m, c.l, c.n).verdict != v
        ):
            ok_sym = False
    checks.append(
        ("fusion symmetry under argument exchange", ok_sym, "%d sampled triples" % len(sample))
    )
    return checks


def suite_step3() -> List[Check]:
    try:
        report = fusion.verify_step3_generic()
    except fusion.VerificationError as exc:
        return [("generic-charge identity suite", False, str(exc))]
    return [
        ("generic-charge identity suite", True, "%d identities verified" % len(report))
    ]


_SUITES: List[Tuple[str, Callable[[], List[Check]]]] = [
    ("characters", suite_characters),
    ("zhu", suite_zhu),
    ("virasoro", suite_virasoro),
    ("twisted", suite_twisted),
    ("fusion", suite_fusion),
    ("step3", suite_step3),
]


# ----------------------------------------------------------------------
# subcommands


def _cmd_table41(args) -> int:
    rows, ok = table41_rows()
    if args.json:
        print(
            json.dumps(
                {"rows": [{"module": m, "a": a, "b": b} for m, a, b in rows], "verified": ok},
                sort_keys=True,
            )
        )
    else:
        width = max(len(r[0]) for r in rows)
        print("%-*s  %-10s %s" % (width, "module", "a_M", "b_M"))
        for m, a, b in rows:
            print("%-*s  %-10s %s" % (width, m, a, b))
    if not ok:
        print("FAIL: recomputed eigenvalues disagree with the stored table", file=sys.stderr)
        return 1
    return 0


def _cmd_char(args) -> int:
    cutoff = Fraction(args.cutoff if args.cutoff is not None else _env_cutoff(20))
    module = args.module
    if module != "Mtheta":
        module = ModuleLabel.parse(module)
    series = characters.graded_dimension(module, cutoff)
    if args.json:
        print(
            json.dumps(
                {"module": str(args.module), "cutoff": str(cutoff), "terms": series.to_json()},
                sort_keys=True,
            )
        )
    else:
        print(series)
    return 0


def _cmd_fusion(args) -> int:
    m = ModuleLabel.parse(args.m)
    n = ModuleLabel.parse(args.n)
    l = ModuleLabel.parse(args.l)
    try:
        cert = fusion.decide(m, n, l)
    except fusion.Inconclusive as exc:
        print("inconclusive: %s (retry with a larger --cutoff)" % exc, file=sys.stderr)
        return 3
    if args.certificate:
        print(cert.to_json())
    else:
        print("N(%s, %s; %s) = %d" % (m, n, l, cert.verdict))
    return 0


def _cmd_fusion_table(args) -> int:
    squares = [Fraction(s) for s in args.lambda_squares.split(",") if s.strip()]
    certs = fusion.full_table(squares)
    if args.format == "json":
        print(fusion.table_to_json(certs))
    else:
        sys.stdout.write(fusion.table_to_csv(certs))
    return 0


def _cmd_reduce(args) -> int:
    label = ModuleLabel.parse(args.module)
    sector = label.sector()
    v = parse_state(args.expr, sector)
    if not label.contains(v):
        raise ValueError("state does not lie in module %s" % label)
    gens = fusion.generator_set(label)
    try:
        coords = virasoro.express_in_descendants(v, gens)
    except virasoro.NotInSpan:
        if len(gens) == 1:
            raise ValueError(
                "state is not a Virasoro descendant of the module generators"
            )
        gens = [gens[0]] + [g.scale(sector.lam_scalar()) for g in gens[1:]]
        try:
            coords = virasoro.express_in_descendants(v, gens)
        except virasoro.NotInSpan:
            raise ValueError(
                "state is not a Virasoro descendant of the module generators"
            )
    offset = sector.weight_offset_rat()
    base_weights = [offset + g.max_degree() for g in gens]
    order = sorted(coords, key=lambda w: (w.gen, sum(w.ms), w.ms))
    print("coordinates:")
    for w in order:
        name = "".join("L(-%d)" % m for m in w.ms) if w.ms else "1"
        print("  gen%d %s: %s" % (w.gen, name, coords[w]))
    pairs = zhu.coords_to_polys(coords, base_weights, len(gens))
    print("contraction polynomials:")
    for i, (num, den) in enumerate(pairs):
        try:
            c = den.constant()
            poly = num * (Fraction(1) / c)
            print("  gen%d: %s" % (i, poly))
        except ValueError:
            print("  gen%d: (%s) / (%s)" % (i, num, den))
    return 0


def _cmd_verify(args) -> int:
    names = [n for n, _ in _SUITES] if args.suite == "all" else [args.suite]
    failed: Optional[Check] = None
    for name in names:
        fn = dict(_SUITES)[name]
        checks = fn()
        for cname, ok, detail in checks:
            status = "ok" if ok else "FAIL"
            line = "%s [%s] %s" % (status, name, cname)
            if detail and (not ok or args.verbose):
                line += " -- " + detail
            print(line)
            if not ok and failed is None:
                failed = (cname, ok, detail)
    if failed:
        print("first failure: %s -- %s" % (failed[0], failed[2]), file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="voaf",
        description="Exact computations for the rank-one even-boson orbifold algebra.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table41", help="recompute the lowest-weight table")
    t.add_argument("--json", action="store_true")
    t.set_defaults(fn=_cmd_table41)

    c = sub.add_parser("char", help="graded character of a module")
    c.add_argument("--module", required=True, help="M+, M-, M(s=p/q), Mtheta+, Mtheta-, or Mtheta")
    c.add_argument("--cutoff", type=int, default=None)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=_cmd_char)

    f = sub.add_parser("fusion", help="decide one fusion rule")
    f.add_argument("--m", required=True)
    f.add_argument("--n", required=True)
    f.add_argument("--l", required=True)
    f.add_argument("--certificate", action="store_true")
    f.set_defaults(fn=_cmd_fusion)

    ft = sub.add_parser("fusion-table", help="full fusion table over a charge grid")
    ft.add_argument(
        "--lambda-squares", required=True, help="comma-separated rationals p/q"
    )
    ft.add_argument("--format", choices=("csv", "json"), default="csv")
    ft.set_defaults(fn=_cmd_fusion_table)

    r = sub.add_parser("reduce", help="descendant coordinates of a state")
    r.add_argument("--module", required=True)
    r.add_argument("--expr", required=True)
    r.set_defaults(fn=_cmd_reduce)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument(
        "--suite",
        required=True,
        choices=[n for n, _ in _SUITES] + ["all"],
    )
    v.add_argument("--verbose", action="store_true")
    v.set_defaults(fn=_cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (ValueError, fusion.UnsupportedParameter) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except fusion.Inconclusive as exc:
        print("inconclusive: %s (retry with a larger --cutoff)" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
