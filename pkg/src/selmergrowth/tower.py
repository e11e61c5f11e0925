"""Exact arithmetic in L = Q_p(zeta_p, m^(1/p)) and norm cokernels of group laws.

Elements live on the lattice spanned by pi^i theta^j over truncated p-adic
integers, with a global denominator exponent.  The basis valuations
v_L(pi^i theta^j) are pairwise distinct modulo p(p-1), so the valuation of
any element is the minimum over its nonzero coordinates; that keeps every
valuation exact even at truncation boundaries.
"""

from dataclasses import dataclass
from math import comb

from .errors import (
    InvalidJump,
    PrecisionTooLow,
    TruncationTooSmall,
    UnsupportedP,
)
from .formal import FgSeries

SUPPORTED_TOWER_P = (3, 5)


@dataclass(frozen=True)
class RamificationData:
    t: int       # highest nontrivial ramification jump
    m_diff: int  # different exponent, (t+1)(p-1)


def _vp(n: int, p: int, cap: int):
    n = int(n)
    if n == 0:
        return None  # zero to working precision
    v = 0
    while n % p == 0 and v < cap:
        n //= p
        v += 1
    return v


class TowerElement:
    """Coordinates mat[i][j] on pi^i theta^j, scaled by p^-denom."""

    __slots__ = ("tower", "mat", "denom")

    def __init__(self, tower, mat, denom=0):
        self.tower = tower
        mod = tower.mod
        self.mat = [[c % mod for c in row] for row in mat]
        self.denom = denom
        tower._normalize(self)

    def copy(self):
        return TowerElement(self.tower, self.mat, self.denom)

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.mat for c in row)

    def k_part(self):
        """The theta^0 column (a K-coefficient vector, unscaled)."""
        return [row[0] for row in self.mat]


class KummerTower:
    """Arithmetic in the degree-p Kummer layer over K = Q_p(zeta_p).

    theta is the generator (x itself when p | m, x - c with c = m mod p in
    the ramified unit-radicand case), theta_rule gives theta^p as integer
    K-coordinates, and v_theta = v_L(theta).
    """

    def __init__(self, p: int, m: int, N: int, theta_rule, v_theta: int, label: str):
        if p not in SUPPORTED_TOWER_P:
            raise UnsupportedP(f"towers implemented for p in {SUPPORTED_TOWER_P}")
        if N < 8:
            raise PrecisionTooLow("need N >= 8")
        self.p = p
        self.m = m
        self.N = N
        self.W = N + 8  # guard digits for denominators and echelon steps
        self.mod = p**self.W
        self.v_theta = v_theta
        self.label = label
        assert v_theta % p != 0, "theta valuation must be prime to p"
        self.kdim = p - 1
        # pi^(p-1) = -(C(p,1) + C(p,2) pi + ... + C(p,p-1) pi^(p-2))
        self.pi_reduce = [-comb(p, k) % self.mod for k in range(1, p)]
        # theta^p, theta^(p+1), ..., theta^(2p-2) as K-coordinate rows
        self.theta_rules = [theta_rule]
        for _ in range(p - 2):
            self.theta_rules.append(self._shift_theta(self.theta_rules[-1]))
        self._sigma_theta_pows = None
        self._pi_inv = None
        self._uniformiser = None

    # ---- K-coefficient vectors (length p-1, entries mod p^W) ----

    def k_zero(self):
        return [0] * self.kdim

    def k_add(self, a, b):
        return [(x + y) % self.mod for x, y in zip(a, b)]

    def k_scal(self, c, a):
        return [(c * x) % self.mod for x in a]

    def k_mul(self, a, b):
        p, mod = self.p, self.mod
        raw = [0] * (2 * self.kdim - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        raw[i + j] = (raw[i + j] + ai * bj) % mod
        for deg in range(len(raw) - 1, self.kdim - 1, -1):
            c = raw[deg]
            if c:
                raw[deg] = 0
                for k in range(self.kdim):
                    raw[deg - (p - 1) + k] = (raw[deg - (p - 1) + k] + c * self.pi_reduce[k]) % mod
        return [raw[i] for i in range(self.kdim)]

    def _shift_theta(self, rule):
        """Given theta^n as K-rows (n >= p), produce theta^(n+1)."""
        # theta^(n+1) = theta * theta^n: shift columns, reduce the overflow column
        shifted = [self.k_zero() for _ in range(self.p)]
        # rule is a list of p columns of K-vectors? No: rule = list of p K-vectors (columns)
        over = rule[self.p - 1]
        for j in range(self.p - 1, 0, -1):
            shifted[j] = rule[j - 1]
        shifted[0] = self.k_zero()
        if any(over):
            base = self.theta_rules[0]
            for j in range(self.p):
                shifted[j] = self.k_add(shifted[j], self.k_mul(over, base[j]))
        return shifted

    # ---- elements ----

    def zero(self):
        return TowerElement(self, [[0] * self.p for _ in range(self.kdim)], 0)

    def one(self):
        mat = [[0] * self.p for _ in range(self.kdim)]
        mat[0][0] = 1
        return TowerElement(self, mat, 0)

    def from_k(self, kvec, denom=0):
        mat = [[kvec[i] if j == 0 else 0 for j in range(self.p)] for i in range(self.kdim)]
        return TowerElement(self, mat, denom)

    def from_int(self, n):
        return self.from_k([n] + [0] * (self.kdim - 1))

    def pi(self):
        return self.from_k([0, 1] + [0] * (self.kdim - 2))

    def theta(self):
        mat = [[0] * self.p for _ in range(self.kdim)]
        mat[0][1] = 1
        return TowerElement(self, mat, 0)

    def _normalize(self, e):
        while e.denom > 0 and all(c % self.p == 0 for row in e.mat for c in row):
            e.mat = [[c // self.p for c in row] for row in e.mat]
            e.denom -= 1

    def col(self, e, j):
        return [e.mat[i][j] for i in range(self.kdim)]

    def add(self, a, b):
        d = max(a.denom, b.denom)
        fa = self.p ** (d - a.denom)
        fb = self.p ** (d - b.denom)
        mat = [[(a.mat[i][j] * fa + b.mat[i][j] * fb) % self.mod
                for j in range(self.p)] for i in range(self.kdim)]
        return TowerElement(self, mat, d)

    def neg(self, a):
        return TowerElement(self, [[-c for c in row] for row in a.mat], a.denom)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scal_k(self, kvec, a):
        mat = [[0] * self.p for _ in range(self.kdim)]
        out = TowerElement(self, mat, a.denom)
        for j in range(self.p):
            prod = self.k_mul(kvec, self.col(a, j))
            for i in range(self.kdim):
                out.mat[i][j] = prod[i]
        self._normalize(out)
        return out

    def scal_int(self, n, a):
        return TowerElement(self, [[n * c for c in row] for row in a.mat], a.denom)

    def mul(self, a, b):
        cols = [self.k_zero() for _ in range(2 * self.p - 1)]
        for j1 in range(self.p):
            ka = self.col(a, j1)
            if not any(ka):
                continue
            for j2 in range(self.p):
                kb = self.col(b, j2)
                if not any(kb):
                    continue
                cols[j1 + j2] = self.k_add(cols[j1 + j2], self.k_mul(ka, kb))
        out_cols = cols[: self.p]
        for j in range(self.p, 2 * self.p - 1):
            over = cols[j]
            if any(over):
                rule = self.theta_rules[j - self.p]
                for jj in range(self.p):
                    out_cols[jj] = self.k_add(out_cols[jj], self.k_mul(over, rule[jj]))
        mat = [[out_cols[j][i] for j in range(self.p)] for i in range(self.kdim)]
        return TowerElement(self, mat, a.denom + b.denom)

    def power(self, a, n):
        out = self.one()
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    # ---- valuation: exact because basis valuations are distinct ----

    def v_L(self, e):
        p = self.p
        best = None
        for i in range(self.kdim):
            for j in range(self.p):
                v = _vp(e.mat[i][j], p, self.W)
                if v is None:
                    continue
                val = p * (i + (p - 1) * v) + j * self.v_theta - p * (p - 1) * e.denom
                if best is None or val < best:
                    best = val
        return best

    def v_K(self, e):
        v = self.v_L(e)
        if v is None:
            return None
        assert v % self.p == 0, "element not in K"
        return v // self.p

    # ---- Galois action: sigma(theta) = zeta * x - shift ----

    def _sigma_theta(self):
        raise NotImplementedError

    def sigma(self, e):
        if self._sigma_theta_pows is None:
            st = self._sigma_theta()
            pows = [self.one()]
            for _ in range(self.p - 1):
                pows.append(self.mul(pows[-1], st))
            self._sigma_theta_pows = pows
        acc = self.zero()
        for j in range(self.p):
            kj = self.col(e, j)
            if any(kj):
                acc = self.add(acc, self.scal_k(kj, self._sigma_theta_pows[j]))
        if e.denom:
            acc = TowerElement(self, acc.mat, acc.denom + e.denom)
        return acc

    def trace(self, e):
        out = e
        cur = e
        for _ in range(self.p - 1):
            cur = self.sigma(cur)
            out = self.add(out, cur)
        return out

    def norm_field(self, e):
        out = e
        cur = e
        for _ in range(self.p - 1):
            cur = self.sigma(cur)
            out = self.mul(out, cur)
        return out

    # ---- uniformiser and ramification ----

    def pi_inv(self):
        """pi^(-1) = -pi^(p-2) w^(-1) / p with w = sum C(p,k)/p pi^(k-1)."""
        if self._pi_inv is not None:
            return self._pi_inv
        w = [comb(self.p, k) // self.p for k in range(1, self.p)]
        winv = self._k_inv_unit(w)
        pim2 = self.power(self.pi(), self.p - 2)
        out = self.scal_k(winv, pim2)
        out = TowerElement(self, [[-c for c in row] for row in out.mat], out.denom + 1)
        assert self.v_L(self.sub(self.mul(out, self.pi()), self.one())) is None
        self._pi_inv = out
        return out

    def _k_inv_unit(self, kvec):
        x = [pow(kvec[0] % self.p, -1, self.p)] + [0] * (self.kdim - 1)
        for _ in range(self.W.bit_length() + 2):
            ax = self.k_mul(kvec, x)
            two_minus = [(2 if i == 0 else 0) - ax[i] for i in range(self.kdim)]
            x = self.k_mul(x, two_minus)
        assert self.k_mul(kvec, x) == [1] + [0] * (self.kdim - 1)
        return x

    def uniformiser(self):
        """pi_L = theta^b pi^a with p a + v_theta b = 1, minimal b >= 0."""
        if self._uniformiser is not None:
            return self._uniformiser
        p = self.p
        b = pow(self.v_theta, -1, p)
        a = (1 - self.v_theta * b) // p
        out = self.power(self.theta(), b)
        if a >= 0:
            out = self.mul(out, self.power(self.pi(), a))
        else:
            out = self.mul(out, self.power(self.pi_inv(), -a))
        assert self.v_L(out) == 1, f"uniformiser has v = {self.v_L(out)}"
        self._uniformiser = out
        return out

    def ramification(self) -> RamificationData:
        """t from sigma(pi_L) - pi_L, cross-checked against the different."""
        piL = self.uniformiser()
        v = self.v_L(self.sub(self.sigma(piL), piL))
        if v is None:
            raise PrecisionTooLow("sigma(pi_L) - pi_L vanished to working precision")
        t = v - 1
        if t < 1:
            raise InvalidJump(f"computed jump {t} < 1")
        m_diff = (t + 1) * (self.p - 1)
        # independent different: v_L of the minimal-polynomial derivative at pi_L
        prod = self.one()
        cur = piL
        for _ in range(self.p - 1):
            cur = self.sigma(cur)
            prod = self.mul(prod, self.sub(piL, cur))
        v_der = self.v_L(prod)
        if v_der != m_diff:
            raise PrecisionTooLow(
                f"different mismatch: jump gives {m_diff}, derivative gives {v_der}")
        return RamificationData(t, m_diff)


class _WildTower(KummerTower):
    """p | m: theta = x with x^p = m, v_L(x) = v_p(m) (p-1)."""

    def __init__(self, p, m, N):
        s = 0
        mm = m
        while mm % p == 0:
            mm //= p
            s += 1
        if s == 0 or s >= p:
            raise ValueError("need p | m with p-free kernel")
        # theta^p = m * theta^0, given as p columns of K-vectors
        cols = [[m] + [0] * (p - 2)] + [[0] * (p - 1) for _ in range(p - 1)]
        super().__init__(p, m, N, cols, s * (p - 1), f"Q_{p}(zeta_{p}, {m}^(1/{p}))")

    def _sigma_theta(self):
        # sigma(x) = zeta x = (1 + pi) x
        zeta = [1, 1] + [0] * (self.kdim - 2)
        return self.scal_k(zeta, self.theta())


class _TameJumpTower(KummerTower):
    """p coprime to m, ramified case: theta = x - c with c = m mod p."""

    def __init__(self, p, m, N):
        if m % p == 0:
            raise ValueError("use the wild tower for p | m")
        if pow(m, p - 1, p * p) == 1:
            raise ValueError("extension is unramified at p for this m")
        c = m % p
        # theta^p = m - sum_{k<p} C(p,k) c^(p-k) theta^k
        cols = []
        const = m - c**p
        cols.append([const] + [0] * (p - 2))
        for k in range(1, p):
            cols.append([-comb(p, k) * c ** (p - k)] + [0] * (p - 2))
        self._c = c
        super().__init__(p, m, N, cols, p - 1, f"Q_{p}(zeta_{p}, {m}^(1/{p})) [unit radicand]")

    def _sigma_theta(self):
        # sigma(x) = zeta x, so sigma(theta) = zeta theta + c (zeta - 1)
        zeta = [1, 1] + [0] * (self.kdim - 2)
        shift = self.from_k([0, self._c] + [0] * (self.kdim - 2))  # c * pi
        return self.add(self.scal_k(zeta, self.theta()), shift)


def build_tower(p: int, m: int, N: int = 12) -> KummerTower:
    """Totally ramified wild tower for p | m (m p-th-power-free)."""
    return _WildTower(p, m, N)


def tame_jump_tower(p: int, m: int, N: int = 12) -> KummerTower:
    """The jump-one configuration: p coprime to m, m^(p-1) != 1 mod p^2."""
    return _TameJumpTower(p, m, N)


def trace_ideal_exponents(tower: KummerTower, n_max: int):
    """(n, r) with Tr(m_L^n) = m_K^r, computed from the O_K-basis pi_L^(n+j)."""
    piL = tower.uniformiser()
    pows = [tower.one()]
    for _ in range(n_max + tower.p):
        pows.append(tower.mul(pows[-1], piL))
    out = []
    for n in range(n_max + 1):
        vals = []
        for j in range(tower.p):
            v = tower.v_K(tower.trace(pows[n + j]))
            if v is not None:
                vals.append(v)
        if not vals:
            raise PrecisionTooLow(f"all traces vanished at n={n}")
        out.append((n, min(vals)))
    return out


# ---------------------------------------------------------------------------
# Norm cokernel of a formal group law over the tower
# ---------------------------------------------------------------------------

class _GroupLawOnTower:
    """A formal group law with coefficients reduced into the tower's ring."""

    def __init__(self, F: FgSeries, tower: KummerTower):
        self.tower = tower
        self.prec = F.prec
        mod = tower.mod
        self.by_i = {}
        for (i, j), c in F.coeffs.items():
            self.by_i.setdefault(i, {})[j] = c % mod
        self.maxi = max(self.by_i)
        self.maxj = max(max(d) for d in self.by_i.values())
        self.neg_series = [c % mod for c in F.neg]

    def eval2(self, a, b):
        tw = self.tower
        bp = [tw.one()]
        for _ in range(self.maxj):
            bp.append(tw.mul(bp[-1], b))
        acc = tw.zero()
        for i in range(self.maxi, -1, -1):
            acc = tw.mul(acc, a)
            row = self.by_i.get(i)
            if row:
                inner = tw.zero()
                for j, c in row.items():
                    inner = tw.add(inner, tw.scal_int(c, bp[j]))
                acc = tw.add(acc, inner)
        return acc

    def neg(self, a):
        tw = self.tower
        acc = tw.zero()
        for c in reversed(self.neg_series):
            acc = tw.mul(acc, a)
            if c:
                acc = tw.add(acc, tw.from_int(c))
        return acc

    def mul_int(self, n, a):
        out = a
        for _ in range(n - 1):
            out = self.eval2(out, a)
        return out

    def norm(self, e):
        tw = self.tower
        out = e
        cur = e
        for _ in range(tw.p - 1):
            cur = tw.sigma(cur)
            out = self.eval2(out, cur)
        return out


def _project_K(tower: KummerTower, e, floor_v: int):
    """Drop the theta part after checking it is truncation noise at floor_v or deeper."""
    for j in range(1, tower.p):
        for i in range(tower.kdim):
            v = _vp(e.mat[i][j], tower.p, tower.W)
            if v is None:
                continue
            val = tower.p * (i + (tower.p - 1) * v) + j * tower.v_theta \
                - tower.p * (tower.p - 1) * e.denom
            if val < floor_v:
                raise PrecisionTooLow(
                    f"norm residual of valuation {val} above noise floor {floor_v}")
    mat = [[e.mat[i][j] if j == 0 else 0 for j in range(tower.p)] for i in range(tower.kdim)]
    return TowerElement(tower, mat, e.denom)


def norm_cokernel_dimension(F: FgSeries, tower: KummerTower, T: int | None = None) -> int:
    """dim of F(m_K) / <norms of F(m_L), F(m_K^T)> by filtration echelon.

    The group F(m_L) modulo a deep layer is generated by powers of the
    uniformiser, so the image subgroup is generated by their norms; it is
    saturated by closing under addition and multiplication-by-p inside the
    finite quotient F(m_K)/F(m_K^T).
    """
    p = tower.p
    ram = tower.ramification()
    if T is None:
        T = ram.t + p + 2
    if T < ram.t + p:
        raise TruncationTooSmall(f"T = {T} below t + p = {ram.t + p}")
    if F.prec < p * T:
        raise PrecisionTooLow(f"need series precision >= p*T = {p * T}, have {F.prec}")
    if (p * T) // (p - 1) + 4 > tower.W:
        raise PrecisionTooLow("coefficient precision too small for this T")
    law = _GroupLawOnTower(F, tower)
    piL = tower.uniformiser()
    gens = []
    cur = piL
    for n in range(1, p * T):
        gens.append(_project_K(tower, law.norm(cur), p * T))
        cur = tower.mul(cur, piL)

    basis = {}       # level -> canonical K-element
    neg_mults = {}   # level -> [neg([lam] b) for lam = 1..p-1]
    queue = list(gens)
    while queue:
        u = queue.pop()
        while True:
            v = tower.v_K(u)
            if v is None or v >= T:
                break
            if v in basis:
                reduced = False
                for nm in neg_mults[v]:
                    r = law.eval2(u, nm)
                    rv = tower.v_K(r)
                    if rv is None or rv > v:
                        u = r
                        reduced = True
                        break
                if not reduced:
                    raise PrecisionTooLow(f"echelon reduction stalled at level {v}")
            else:
                basis[v] = u
                mults = [u]
                for _ in range(p - 2):
                    mults.append(law.eval2(mults[-1], u))
                neg_mults[v] = [law.neg(mm) for mm in mults]
                queue.append(law.eval2(mults[-1], u))  # [p] u
                break
    return sum(1 for k in range(1, T) if k not in basis)


def stable_norm_cokernel_dimension(make_F, p: int, m: int, N: int = 12,
                                   T: int | None = None, tame: bool = False) -> int:
    """Run the cokernel at (N, T) and (N+2, T+2); reject on mismatch.

    make_F(prec) must build the group law at the requested precision.
    """
    tower = (tame_jump_tower if tame else build_tower)(p, m, N)
    ram = tower.ramification()
    T0 = T if T is not None else ram.t + p + 2
    d0 = norm_cokernel_dimension(make_F(p * T0), tower, T0)
    tower2 = (tame_jump_tower if tame else build_tower)(p, m, N + 2)
    d1 = norm_cokernel_dimension(make_F(p * (T0 + 2)), tower2, T0 + 2)
    if d0 != d1:
        raise TruncationTooSmall(f"cokernel unstable: {d0} at T={T0}, {d1} at T={T0 + 2}")
    return d0
