"""Assemble the finite set of contributing places and total the intervals.

Only places over primes dividing m, over p, and over bad primes can
contribute; everything else is provably zero and excluded.  Conjugate
places over the same rational prime contribute identically and are listed
once each (g entries), so the totals are plain sums over the list.
"""

from dataclasses import dataclass

from sympy import factorint

from . import curves, cyclotomic, localdelta
from .curves import CurveQ, GOOD, NONSPLIT_MULT, SPLIT_MULT, SUPERSINGULAR
from .cyclotomic import RAMIFIED, PlaceK, SplitBehavior
from .errors import HypothesisFailure, RangeTooLarge
from .localdelta import LocalContribution, UnitSymbolInput

TRIVIAL = "Trivial"
NONTRIVIAL = "Nontrivial"
UNDETERMINED = "Undetermined"

DEFAULT_SCAN_LIMIT = 10**5


@dataclass(frozen=True)
class Hypotheses:
    semistable: bool
    good_at_p: bool
    selmer_trivial_over_K: bool  # user-asserted; not computed here

    @property
    def all_hold(self) -> bool:
        return self.semistable and self.good_at_p and self.selmer_trivial_over_K


@dataclass(frozen=True)
class SelmerReport:
    curve: str
    p: int
    m: int  # normalized (p-th-power-free kernel)
    m_requested: int
    hypotheses: Hypotheses
    contributions: tuple[LocalContribution, ...]
    total_lo: int
    total_hi: int
    verdict: str

    @property
    def conditional(self) -> bool:
        """True when the verdict rests on an unverified hypothesis flag."""
        return not self.hypotheses.all_hold


def _verdict(total_lo: int, total_hi: int) -> str:
    if total_hi == 0:
        return TRIVIAL
    if total_lo > 0:
        return NONTRIVIAL
    return UNDETERMINED


def contributing_places(curve: CurveQ, p: int, m: int):
    """All places that can contribute: over p, over m-support, over bad primes.

    Returns (place, behavior) pairs ordered by residue characteristic; each
    pair stands for g conjugate places.
    """
    ells = set(factorint(m)) | {p} | set(curves.bad_primes(curve))
    out = []
    for ell in sorted(ells):
        place = cyclotomic.place_over(ell, p)
        out.append((place, cyclotomic.behavior_in_Lm(place, m, p)))
    return out


def _contribution_at(curve: CurveQ, p: int, m: int,
                     place: PlaceK, behavior: SplitBehavior) -> LocalContribution:
    ell = place.ell
    if ell == p:
        sub = curves.ordinary_or_supersingular(curve, p)
        red = curves.ReductionType(GOOD, curve.ord_j(p) if curve.j_num else 0, sub)
        if sub == SUPERSINGULAR:
            return localdelta.contribution_supersingular_Lm(p, m, behavior, place, red)
        return localdelta.contribution_ordinary_at_p(
            curves.is_anomalous_at_p(curve, p), behavior, place, red)
    if curves.is_good(curve, ell):
        red = curves.reduction_at(curve, ell, place.f_v)
        if behavior.kind == RAMIFIED:
            dim = curves.torsion_dimension(curve, ell, place.f_v, p)
        else:
            dim = 0
        return localdelta.contribution_good_away_from_p(dim, behavior, place, red)
    red = curves.reduction_at(curve, ell, place.f_v)
    if red.kind == NONSPLIT_MULT:
        return localdelta.contribution_nonsplit_mult(behavior, place, red)
    assert red.kind == SPLIT_MULT
    n = -red.ord_j
    b = curve.j_den // ell**n
    s = 0
    d = m
    while d % ell == 0:
        d //= ell
        s += 1
    inp = UnitSymbolInput(ell=ell, n=n, a=curve.j_num, b=b, s=s, d=d)
    return localdelta.contribution_split_mult(inp, red.tamagawa, behavior, place, p, red)


def selmer_dimension(curve: CurveQ, p: int, m: int,
                     assert_selmer_trivial: bool = False,
                     label: str = "") -> SelmerReport:
    """Full per-place report with interval totals and the triviality verdict."""
    hyp = curves.check_hypotheses(curve, p)
    if not hyp.semistable:
        bad = [ell for ell, kind in hyp.bad_reduction if kind == "additive"]
        raise HypothesisFailure("semistable", f"additive reduction at {bad}")
    if not hyp.good_at_p:
        raise HypothesisFailure("good_at_p", f"{p} divides the discriminant")
    m_ker, _removed = cyclotomic.normalize_m(m, p)
    contribs = []
    for place, behavior in contributing_places(curve, p, m_ker):
        c = _contribution_at(curve, p, m_ker, place, behavior)
        contribs.extend([c] * place.g)
    for _ in range(cyclotomic.archimedean_places(p)):
        contribs.append(localdelta.archimedean_contribution())
    total_lo = sum(c.lo for c in contribs)
    total_hi = sum(c.hi for c in contribs)
    return SelmerReport(
        curve=label or str(curve.a_invariants),
        p=p,
        m=m_ker,
        m_requested=m,
        hypotheses=Hypotheses(hyp.semistable, hyp.good_at_p, assert_selmer_trivial),
        contributions=tuple(contribs),
        total_lo=total_lo,
        total_hi=total_hi,
        verdict=_verdict(total_lo, total_hi),
    )


def scan_m(curve: CurveQ, p: int, m_lo: int, m_hi: int,
           predicate=None, assert_selmer_trivial: bool = False,
           label: str = "", limit: int = DEFAULT_SCAN_LIMIT):
    """Reports for every p-th-power-free m in [m_lo, m_hi], ascending.

    predicate is a verdict string or a callable on the report; only
    matching entries are returned.
    """
    if m_hi - m_lo + 1 > limit:
        raise RangeTooLarge(f"range of {m_hi - m_lo + 1} values exceeds limit {limit}")
    if isinstance(predicate, str):
        want = predicate
        predicate = lambda report: report.verdict == want
    out = []
    for m in range(max(m_lo, 2), m_hi + 1):
        if not cyclotomic.is_pth_power_free(m, p):
            continue
        report = selmer_dimension(curve, p, m, assert_selmer_trivial, label)
        if predicate is None or predicate(report):
            out.append((m, report))
    return out
