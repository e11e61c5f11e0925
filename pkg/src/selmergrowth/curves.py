"""Weierstrass invariants, reduction types, point counts and p-torsion dimensions.

All arithmetic is exact: Python integers, fractions and dense polynomial
lists over prime fields.  The only numpy use is the O(ell) character sum
behind the trace of Frobenius.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import factorint, isprime

from .errors import (
    AdditiveReduction,
    BadAtP,
    BadReduction,
    EnumerationBoundExceeded,
    NotSemistable,
    SingularModel,
    UnsupportedP,
)

GOOD = "good"
SPLIT_MULT = "split"
NONSPLIT_MULT = "nonsplit"
ORDINARY = "ordinary"
SUPERSINGULAR = "supersingular"

SUPPORTED_TORSION_P = (3, 5, 7)
DEFAULT_ENUMERATION_BOUND = 10**6


@dataclass(frozen=True)
class CurveQ:
    """Integral Weierstrass model with its standard derived invariants.

    The model is taken as given (assumed globally minimal); see
    check_hypotheses for the validation this package actually performs.
    """

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int
    j_num: int
    j_den: int

    @property
    def a_invariants(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def j(self) -> Fraction:
        return Fraction(self.j_num, self.j_den)

    def ord_j(self, ell: int) -> int:
        """v_ell(j)."""
        return _val(self.j_num, ell) - _val(self.j_den, ell)


@dataclass(frozen=True)
class ReductionType:
    kind: str  # GOOD / SPLIT_MULT / NONSPLIT_MULT
    ord_j: int
    sub: str | None = None  # ORDINARY / SUPERSINGULAR at places over p

    @property
    def tamagawa(self) -> int:
        """c_v = -ord_v(j) for split multiplicative reduction."""
        if self.kind != SPLIT_MULT:
            raise ValueError("Tamagawa shortcut only valid for split multiplicative")
        return -self.ord_j


@dataclass(frozen=True)
class FrobeniusData:
    ell: int
    a_ell: int
    q: int


def _val(n: int, ell: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def derive_invariants(a1: int, a2: int, a3: int, a4: int, a6: int) -> CurveQ:
    """Populate b_i, c4, c6, disc and j from the a-invariants."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        raise SingularModel(f"discriminant vanishes for a-invariants {(a1, a2, a3, a4, a6)}")
    assert 4 * b8 == b2 * b6 - b4 * b4
    assert c4**3 - c6**2 == 1728 * disc
    j = Fraction(c4**3, disc)
    return CurveQ(a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, disc,
                  j.numerator, j.denominator)


def curve_from_a_invariants(ainvs) -> CurveQ:
    a1, a2, a3, a4, a6 = ainvs
    return derive_invariants(a1, a2, a3, a4, a6)


@lru_cache(maxsize=None)
def bad_primes(curve: CurveQ) -> tuple[int, ...]:
    return tuple(sorted(factorint(abs(curve.disc))))


def is_good(curve: CurveQ, ell: int) -> bool:
    return curve.disc % ell != 0


# ---------------------------------------------------------------------------
# Reduction classification
# ---------------------------------------------------------------------------

def _split_over_Q2(curve: CurveQ) -> bool:
    """Rational tangents at the node for ell = 2 (Artin-Schreier test)."""
    a1, a2, a3, a4, a6 = (c % 2 for c in curve.a_invariants)
    sing = []
    for x in (0, 1):
        for y in (0, 1):
            f = (y * y + a1 * x * y + a3 * y + x**3 + a2 * x * x + a4 * x + a6) % 2
            fx = (a1 * y + x * x + a4) % 2
            fy = (a1 * x + a3) % 2
            if f == 0 and fx == 0 and fy == 0:
                sing.append((x, y))
    if len(sing) != 1:
        raise AdditiveReduction("no unique node over F_2")
    if a1 == 0:
        # tangent cone is a double line
        raise AdditiveReduction("cusp at 2")
    x0, _ = sing[0]
    # tangent cone Y^2 + XY + (a2 + x0) X^2 splits over F_2 iff a2 + x0 = 0
    return (a2 + x0) % 2 == 0


def _split_over_Qell_odd(curve: CurveQ, ell: int) -> bool:
    """Rational tangents at the node: the curve is w^2 = B(x) with B cubic.

    The node sits at the double root x0 of B; with B = (x-x0)^2 (x-x1) the
    tangent cone is w^2 - (x0-x1)(x-x0)^2, split iff x0-x1 is a square.
    """
    b = [curve.b6 % ell, (2 * curve.b4) % ell, curve.b2 % ell, 4 % ell]
    db = [(2 * curve.b4) % ell, (2 * curve.b2) % ell, 12 % ell]
    g = _pgcd(b, db, ell)
    if len(g) - 1 != 1:
        raise AdditiveReduction(f"tangent cone degenerate at {ell}")
    x0 = (-g[0] * pow(g[1], -1, ell)) % ell
    q1, r1 = _pdivmod(b, [(-x0) % ell, 1], ell)
    assert not any(r1)
    q2, r2 = _pdivmod(q1, [(-x0) % ell, 1], ell)
    assert not any(r2)
    # q2 is linear: 4(x - x1)
    x1 = (-q2[0] * pow(q2[1], -1, ell)) % ell
    c = (x0 - x1) % ell
    if c == 0:
        raise AdditiveReduction(f"triple root at {ell}")
    return pow(c, (ell - 1) // 2, ell) == 1


def reduction_over_Q(curve: CurveQ, ell: int) -> ReductionType:
    """Reduction type of the (assumed minimal) model over Q_ell."""
    if is_good(curve, ell):
        return ReductionType(GOOD, curve.ord_j(ell) if curve.j_num != 0 else 0)
    if curve.c4 % ell == 0:
        raise AdditiveReduction(f"additive reduction at {ell}")
    ord_j = curve.ord_j(ell)
    assert ord_j < 0
    split = _split_over_Q2(curve) if ell == 2 else _split_over_Qell_odd(curve, ell)
    return ReductionType(SPLIT_MULT if split else NONSPLIT_MULT, ord_j)


def reduction_at(curve: CurveQ, ell: int, f: int) -> ReductionType:
    """Reduction type over the completion with residue field F_{ell^f}.

    Nonsplit flips to split exactly when f is even: the unramified
    quadratic extension then embeds in the completion.
    """
    red = reduction_over_Q(curve, ell)
    if red.kind == NONSPLIT_MULT and f % 2 == 0:
        return ReductionType(SPLIT_MULT, red.ord_j)
    return red


@dataclass(frozen=True)
class HypothesesReport:
    semistable: bool
    good_at_p: bool
    bad_reduction: tuple  # tuple of (ell, kind) pairs, kind "additive" when not semistable

    @property
    def ok(self) -> bool:
        return self.semistable and self.good_at_p


def check_hypotheses(curve: CurveQ, p: int) -> HypothesesReport:
    """Semistability everywhere and good reduction at p."""
    if p < 3 or not isprime(p):
        raise ValueError("p must be an odd prime")
    rows = []
    semistable = True
    for ell in bad_primes(curve):
        if curve.c4 % ell == 0:
            rows.append((ell, "additive"))
            semistable = False
        else:
            try:
                rows.append((ell, reduction_over_Q(curve, ell).kind))
            except AdditiveReduction:
                rows.append((ell, "additive"))
                semistable = False
    return HypothesesReport(semistable, is_good(curve, p), tuple(rows))


def require_hypotheses(curve: CurveQ, p: int) -> HypothesesReport:
    report = check_hypotheses(curve, p)
    if not report.semistable:
        bad = [ell for ell, kind in report.bad_reduction if kind == "additive"]
        raise NotSemistable(f"additive reduction at {bad}")
    if not report.good_at_p:
        raise BadAtP(f"{p} divides the discriminant")
    return report


# ---------------------------------------------------------------------------
# Point counting
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _a_ell(curve: CurveQ, ell: int) -> int:
    if ell == 2:
        count = 1  # infinity
        for x in (0, 1):
            for y in (0, 1):
                if (y * y + curve.a1 * x * y + curve.a3 * y
                        - x**3 - curve.a2 * x * x - curve.a4 * x - curve.a6) % 2 == 0:
                    count += 1
        return 2 + 1 - count
    # odd ell: complete the square, #E = ell + 1 + sum_x chi(B(x))
    xs = np.arange(ell, dtype=np.int64)
    sq = np.zeros(ell, dtype=bool)
    sq[(xs * xs) % ell] = True
    b2, b4, b6 = curve.b2 % ell, curve.b4 % ell, curve.b6 % ell
    vals = (4 * xs + b2) % ell
    vals = (vals * xs + 2 * b4) % ell
    vals = (vals * xs + b6) % ell
    chi = np.where(vals == 0, 0, np.where(sq[vals], 1, -1))
    return -int(chi.sum())


def trace_of_frobenius(curve: CurveQ, ell: int,
                       bound: int = DEFAULT_ENUMERATION_BOUND) -> FrobeniusData:
    """a_ell by exact enumeration; Hasse bound asserted."""
    if not is_good(curve, ell):
        raise BadReduction(f"bad reduction at {ell}")
    if ell > bound:
        raise EnumerationBoundExceeded(f"{ell} > enumeration bound {bound}")
    a = _a_ell(curve, ell)
    assert a * a <= 4 * ell, "Hasse bound violated"
    return FrobeniusData(ell, a, ell)


def point_count(curve: CurveQ, ell: int, f: int,
                bound: int = DEFAULT_ENUMERATION_BOUND) -> int:
    """#E(F_{ell^f}) from the Weil recurrence s_k = a s_{k-1} - ell s_{k-2}."""
    if f < 1:
        raise ValueError("f must be positive")
    a = trace_of_frobenius(curve, ell, bound).a_ell
    s_prev, s = 2, a
    for _ in range(f - 1):
        s_prev, s = s, a * s - ell * s_prev
    return ell**f + 1 - s


def ordinary_or_supersingular(curve: CurveQ, p: int) -> str:
    if not is_good(curve, p):
        raise BadAtP(f"bad reduction at {p}")
    return SUPERSINGULAR if _a_ell(curve, p) % p == 0 else ORDINARY


def is_anomalous_at_p(curve: CurveQ, p: int) -> bool:
    """p-torsion in the reduction at the (degree-1) place over p: a_p = 1 mod p."""
    if not is_good(curve, p):
        raise BadAtP(f"bad reduction at {p}")
    return _a_ell(curve, p) % p == 1


# ---------------------------------------------------------------------------
# Dense polynomial helpers over F_ell (lists, index = degree)
# ---------------------------------------------------------------------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b, ell):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % ell
                   for i in range(n)])


def _psub(a, b, ell):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % ell
                   for i in range(n)])


def _pmul(a, b, ell):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % ell
    return _ptrim(out)


def _pdivmod(a, b, ell):
    a = list(a)
    assert b
    inv = pow(b[-1], -1, ell)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        d = len(a) - len(b)
        c = (a[-1] * inv) % ell
        q[d] = c
        for i in range(len(b)):
            a[d + i] = (a[d + i] - c * b[i]) % ell
        _ptrim(a)
    return _ptrim(q), _ptrim(a)


def _pmod(a, b, ell):
    return _pdivmod(a, b, ell)[1]


def _pgcd(a, b, ell):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, ell)
    if a:
        inv = pow(a[-1], -1, ell)
        a = [(c * inv) % ell for c in a]
    return a


def _ppowmod(base, e, mod, ell):
    result = [1]
    base = _pmod(base, mod, ell)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, ell), mod, ell)
        base = _pmod(_pmul(base, base, ell), mod, ell)
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# Division polynomials (general Weierstrass model, x-parts only)
# ---------------------------------------------------------------------------

def division_poly_xparts(curve: CurveQ, ell: int, n_max: int):
    """x-parts f_n of the division polynomials over F_ell.

    psi_n = f_n(x) for n odd, psi_n = psi_2 * f_n(x) for n even, with
    psi_2^2 = B(x) = 4x^3 + b2 x^2 + 2 b4 x + b6.
    """
    b2, b4, b6, b8 = (curve.b2 % ell, curve.b4 % ell, curve.b6 % ell, curve.b8 % ell)
    B = _ptrim([b6, (2 * b4) % ell, b2, 4 % ell])
    f = {
        -1: [(-1) % ell],
        0: [],
        1: [1],
        2: [1],
        3: _ptrim([b8, (3 * b6) % ell, (3 * b4) % ell, b2, 3 % ell]),
        4: _ptrim([(b4 * b8 - b6 * b6) % ell, (b2 * b8 - b4 * b6) % ell,
                   (10 * b8) % ell, (10 * b6) % ell, (5 * b4) % ell, b2, 2 % ell]),
    }
    B2 = _pmul(B, B, ell)
    for n in range(5, n_max + 1):
        m = n // 2
        if n % 2 == 1:
            t1 = _pmul(f[m + 2], _pmul(f[m], _pmul(f[m], f[m], ell), ell), ell)
            t2 = _pmul(f[m - 1], _pmul(f[m + 1], _pmul(f[m + 1], f[m + 1], ell), ell), ell)
            if m % 2 == 0:
                f[n] = _psub(_pmul(B2, t1, ell), t2, ell)
            else:
                f[n] = _psub(t1, _pmul(B2, t2, ell), ell)
        else:
            t1 = _pmul(f[m + 2], _pmul(f[m - 1], f[m - 1], ell), ell)
            t2 = _pmul(f[m - 2], _pmul(f[m + 1], f[m + 1], ell), ell)
            f[n] = _pmul(f[m], _psub(t1, t2, ell), ell)
    return f, B


def _frobenius_is_scalar(curve: CurveQ, ell: int, p: int, c: int) -> bool:
    """Schoof-style test: does Frobenius act as [c] on the p-torsion?

    Works with x-coordinates only, in F_ell[x]/(f_p); that suffices because
    a non-scalar matrix with x(phi P) = x([c]P) everywhere would force
    phi = -c identically, contradicting the characteristic polynomial.
    """
    f, B = division_poly_xparts(curve, ell, p + 1)
    fp = f[p]
    assert len(fp) - 1 == (p * p - 1) // 2, "unexpected psi_p degree"
    if c % p == 1:
        c = 1
    if c == 1:
        num, den = [], [1]
    elif c % 2 == 1:
        num = _pmul(B, _pmul(f[c - 1], f[c + 1], ell), ell)
        den = _pmul(f[c], f[c], ell)
    else:
        num = _pmul(f[c - 1], f[c + 1], ell)
        den = _pmul(B, _pmul(f[c], f[c], ell), ell)
    g = _pgcd(den, fp, ell)
    assert len(g) == 1, "denominator not invertible modulo psi_p"
    xq = _ppowmod([0, 1], ell, fp, ell)
    # x^ell - x = -num/den  on E[p]  <=>  (x^ell - x) den + num = 0 mod f_p
    lhs = _pmod(_pmul(_psub(xq, [0, 1], ell), den, ell), fp, ell)
    return _pmod(_padd(lhs, num, ell), fp, ell) == []


def torsion_dimension(curve: CurveQ, ell: int, f: int, p: int,
                      supported=SUPPORTED_TORSION_P,
                      bound: int = DEFAULT_ENUMERATION_BOUND) -> int:
    """dim_{F_p} of the p-torsion of the reduction over F_{ell^f}.

    Uses the characteristic polynomial of Frobenius on E[p]; the only
    subtle branch is the repeated-root case, where scalarity of Frobenius
    is decided modulo the p-division polynomial.
    """
    if p not in supported:
        raise UnsupportedP(f"p={p} outside configured set {supported}")
    if ell == p:
        raise BadReduction("ell = p not allowed here")
    if not is_good(curve, ell):
        raise BadReduction(f"bad reduction at {ell}")
    a = trace_of_frobenius(curve, ell, bound).a_ell % p
    chi = [ell % p, (-a) % p, 1]
    disc = (a * a - 4 * ell) % p
    if disc == 0:
        c = (a * pow(2, -1, p)) % p
        if _frobenius_is_scalar(curve, ell, p, c):
            return 2 if pow(c, f, p) == 1 else 0
    # cyclic module: dimension = deg gcd(x^f - 1, chi)
    xf = _ppowmod([0, 1], f, chi, p)
    g = _pgcd(_psub(xf, [1], p), chi, p)
    return len(g) - 1
