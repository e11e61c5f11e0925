"""Splitting of rational primes in Q(zeta_p) and behaviour in the Kummer layer.

Everything reduces to elementary congruences: inertia degrees are
multiplicative orders mod p, and the split/inert test in the degree-p
layer is a p-th power residue condition in the residue field, evaluated
inside the prime field by reducing the exponent mod ell - 1.
"""

from dataclasses import dataclass

from sympy import factorint, isprime, n_order

from .errors import DegenerateExtension, NotNormalized

SPLIT = "Split"
INERT = "Inert"
RAMIFIED = "Ramified"

# notes recorded on behaviours at the place over p
NOTE_WILD = "WildRamifiedAtP"
NOTE_TAME_JUMP = "RamifiedJumpOneAtP"
NOTE_UNRAMIFIED_SPLIT = "UnramifiedSplitAtP"


@dataclass(frozen=True)
class PlaceK:
    """A prime of K = Q(zeta_p): e_v * f_v * g = p - 1."""

    ell: int
    e_v: int
    f_v: int
    g: int
    q_v: int


@dataclass(frozen=True)
class SplitBehavior:
    kind: str
    t: int | None = None  # highest ramification jump; only at places over p
    note: str | None = None


def place_over(ell: int, p: int) -> PlaceK:
    if not isprime(ell) or not isprime(p) or p < 3:
        raise ValueError("need a prime ell and an odd prime p")
    if ell == p:
        return PlaceK(ell=p, e_v=p - 1, f_v=1, g=1, q_v=p)
    f = n_order(ell, p)
    return PlaceK(ell=ell, e_v=1, f_v=f, g=(p - 1) // f, q_v=ell**f)


def normalize_m(m: int, p: int):
    """Strip p-th power factors from m; the Kummer layer only sees the kernel."""
    if m < 2:
        raise ValueError("m must be at least 2")
    removed = {}
    m_ker = 1
    for q, e in factorint(m).items():
        if e >= p:
            removed[q] = e - e % p
        m_ker *= q ** (e % p)
    if m_ker == 1:
        raise DegenerateExtension(f"{m} is a perfect {p}-th power")
    return m_ker, removed


def is_pth_power_free(m: int, p: int) -> bool:
    return all(e < p for e in factorint(m).values())


def behavior_in_Lm(place: PlaceK, m: int, p: int) -> SplitBehavior:
    """How the place behaves in K(m^(1/p))/K for p-th-power-free m.

    Away from p: ramified iff ell | m, otherwise split/inert by the p-th
    power residue test.  At p: wildly ramified with jump t = p when p | m
    (the value v_L(sigma(pi_L) - pi_L) - 1 actually takes; the tower code
    recomputes and cross-checks it); for p coprime to m the extension is
    unramified iff m^(p-1) = 1 mod p^2, in which case the rational radicand
    is automatically a p-th power locally and the place splits; otherwise
    ramified with jump 1.
    """
    if not is_pth_power_free(m, p):
        raise NotNormalized(f"{m} still contains a {p}-th power")
    ell = place.ell
    if ell != p:
        if m % ell == 0:
            return SplitBehavior(RAMIFIED)
        # m lies in the prime field, so the exponent reduces mod ell - 1
        exponent = ((place.q_v - 1) // p) % (ell - 1)
        if pow(m % ell, exponent, ell) == 1:
            return SplitBehavior(SPLIT)
        return SplitBehavior(INERT)
    if m % p == 0:
        return SplitBehavior(RAMIFIED, t=p, note=NOTE_WILD)
    if pow(m, p - 1, p * p) == 1:
        return SplitBehavior(SPLIT, note=NOTE_UNRAMIFIED_SPLIT)
    return SplitBehavior(RAMIFIED, t=1, note=NOTE_TAME_JUMP)


def archimedean_places(p: int) -> int:
    """Number of (complex) archimedean places of Q(zeta_p)."""
    return (p - 1) // 2
