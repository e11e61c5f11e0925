"""Per-place contribution to the invariant Selmer dimension.

Each function evaluates one row of the local decision table and returns a
LocalContribution carrying an interval [lo, hi] plus a stable reason code,
so callers (and tests) can see exactly which cell fired.  Split places
always contribute zero.
"""

from dataclasses import dataclass

from .cyclotomic import INERT, RAMIFIED, SPLIT, PlaceK, SplitBehavior
from .curves import ReductionType
from .errors import DivisionByEll, InvalidJump

# reason codes (stable, machine readable)
ZERO = "Zero"
GOOD_RAMIFIED_TORSION = "GoodRamifiedTorsion"
SPLIT_MULT_TAME_SYMBOL = "SplitMultTameSymbol"
SPLIT_MULT_INERT_TAMAGAWA = "SplitMultInertTamagawa"
NONSPLIT_MULT = "NonsplitMult"
ORDINARY_ANOMALOUS_RAMIFIED = "OrdinaryAnomalousRamified"
SUPERSINGULAR_P_DIVIDES_M = "SupersingularPDividesM"
GENERAL_SUPERSINGULAR_BOUNDS = "GeneralSupersingularBounds"


@dataclass(frozen=True)
class LocalContribution:
    place: PlaceK | None  # None for archimedean or abstract local data
    reduction: ReductionType | None
    behavior: SplitBehavior | None
    lo: int
    hi: int
    reason: str

    def __post_init__(self):
        assert 0 <= self.lo <= self.hi
        if self.behavior is not None and self.behavior.kind == SPLIT:
            assert self.lo == self.hi == 0

    @property
    def exact(self) -> int | None:
        return self.lo if self.lo == self.hi else None


@dataclass(frozen=True)
class UnitSymbolInput:
    """Data for the tame norm condition at a multiplicative prime.

    j = ell^(-n) a/b with a, b coprime to ell, and m = ell^s d with d
    coprime to ell.  The tested unit is u = d^n (a/b)^s.
    """

    ell: int
    n: int
    a: int
    b: int
    s: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.s < 0:
            raise ValueError("need n >= 1 and s >= 0")
        if self.a % self.ell == 0 or self.b % self.ell == 0:
            raise DivisionByEll("a and b must be units mod ell")
        if self.d % self.ell == 0:
            raise DivisionByEll("d must be a unit mod ell")


def compute_unit_symbol(inp: UnitSymbolInput, place: PlaceK, p: int) -> bool:
    """Whether u^((q_v - 1)/p) = 1 mod ell.

    u lies in the prime field, so the exponent reduces mod ell - 1; when
    (ell - 1) divides (q_v - 1)/p the condition holds identically.
    """
    ell = inp.ell
    if place.ell != ell:
        raise ValueError("place does not lie over ell")
    u = (pow(inp.d, inp.n, ell) * pow(inp.a * pow(inp.b, -1, ell), inp.s, ell)) % ell
    exponent = ((place.q_v - 1) // p) % (ell - 1)
    return pow(u, exponent, ell) == 1


def contribution_good_away_from_p(dimtors: int, behavior: SplitBehavior,
                                  place: PlaceK | None = None,
                                  reduction: ReductionType | None = None) -> LocalContribution:
    """Good reduction, ell != p: the torsion dimension if ramified, else 0."""
    assert dimtors in (0, 1, 2)
    if behavior.kind == RAMIFIED:
        return LocalContribution(place, reduction, behavior, dimtors, dimtors,
                                 GOOD_RAMIFIED_TORSION)
    return LocalContribution(place, reduction, behavior, 0, 0, ZERO)


def contribution_split_mult(inp: UnitSymbolInput, c_v: int, behavior: SplitBehavior,
                            place: PlaceK, p: int,
                            reduction: ReductionType | None = None) -> LocalContribution:
    """Split multiplicative reduction, ell != p."""
    if behavior.kind == RAMIFIED:
        val = 1 if compute_unit_symbol(inp, place, p) else 0
        return LocalContribution(place, reduction, behavior, val, val,
                                 SPLIT_MULT_TAME_SYMBOL)
    if behavior.kind == INERT:
        val = 1 if c_v % p == 0 else 0
        return LocalContribution(place, reduction, behavior, val, val,
                                 SPLIT_MULT_INERT_TAMAGAWA)
    return LocalContribution(place, reduction, behavior, 0, 0, ZERO)


def contribution_nonsplit_mult(behavior: SplitBehavior,
                               place: PlaceK | None = None,
                               reduction: ReductionType | None = None) -> LocalContribution:
    """Nonsplit multiplicative reduction contributes nothing."""
    reason = ZERO if behavior.kind == SPLIT else NONSPLIT_MULT
    return LocalContribution(place, reduction, behavior, 0, 0, reason)


def contribution_ordinary_at_p(anomalous: bool, behavior: SplitBehavior,
                               place: PlaceK | None = None,
                               reduction: ReductionType | None = None) -> LocalContribution:
    """Good ordinary at the place over p: the 1-or-2 interval when anomalous."""
    if behavior.kind == RAMIFIED and anomalous:
        return LocalContribution(place, reduction, behavior, 1, 2,
                                 ORDINARY_ANOMALOUS_RAMIFIED)
    return LocalContribution(place, reduction, behavior, 0, 0, ZERO)


def contribution_supersingular_Lm(p: int, m: int, behavior: SplitBehavior,
                                  place: PlaceK | None = None,
                                  reduction: ReductionType | None = None) -> LocalContribution:
    """Good supersingular over p in the K(m^(1/p)) family: p - 2 iff p | m.

    This is the closed-form table entry.  The brute-force norm-cokernel
    computation in the tower module disagrees with it (it finds p - 1);
    see the verification suite.
    """
    if behavior.kind == RAMIFIED and m % p == 0:
        return LocalContribution(place, reduction, behavior, p - 2, p - 2,
                                 SUPERSINGULAR_P_DIVIDES_M)
    return LocalContribution(place, reduction, behavior, 0, 0, ZERO)


def contribution_supersingular_general(t_w: int, f_v: int, deg: int) -> LocalContribution:
    """General supersingular evaluator from explicit local data.

    t_w = 1 forces zero; for t_w >= 2 the dimension lies in
    [f_v, min(f_v (t_w - 1), deg + 2)] where deg = [K_v : Q_p].
    """
    if t_w < 1:
        raise InvalidJump("wildly ramified degree-p extensions have t >= 1")
    behavior = SplitBehavior(RAMIFIED, t=t_w)
    if t_w == 1:
        return LocalContribution(None, None, behavior, 0, 0, ZERO)
    lo = f_v
    hi = min(f_v * (t_w - 1), deg + 2)
    return LocalContribution(None, None, behavior, lo, hi,
                             GENERAL_SUPERSINGULAR_BOUNDS)


def archimedean_contribution() -> LocalContribution:
    """Complex places contribute nothing; recorded rather than omitted."""
    return LocalContribution(None, None, SplitBehavior(SPLIT), 0, 0, ZERO)
