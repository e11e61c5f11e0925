"""Truncated formal group laws over Z: construction, height, norm expansion.

Series are kept with exact integer coefficients and truncated by total
degree; p-adic reduction happens only where a caller asks for it (height,
coefficient valuations, evaluation on local elements).
"""

from dataclasses import dataclass, field

from .curves import CurveQ
from .errors import BadAtP, InconclusivePrecision, PrecisionOverflow
from . import curves

MAX_PREC = 60
HEIGHT_INFINITE = -1  # sentinel: [p] vanishes mod p to the stated precision


# ---------- dense univariate helpers (lists, index = degree) ----------

def _umul(u, v, n):
    out = [0] * n
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        lim = min(len(v), n - i)
        for j in range(lim):
            if v[j]:
                out[i + j] += ui * v[j]
    return out


# ---------- sparse multivariate helpers (dict: exponent tuple -> int) ----------

def _madd(A, B):
    C = dict(A)
    for k, v in B.items():
        w = C.get(k, 0) + v
        if w:
            C[k] = w
        else:
            C.pop(k, None)
    return C


def _mscal(c, A):
    return {k: c * v for k, v in A.items()} if c else {}


def _mmul(A, B, total, cap=None):
    C = {}
    items_b = list(B.items())
    for ka, va in A.items():
        da = sum(ka)
        for kb, vb in items_b:
            if da + sum(kb) > total:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            if cap is not None and any(e > cap for e in k):
                continue
            C[k] = C.get(k, 0) + va * vb
    return {k: v for k, v in C.items() if v}


@dataclass(frozen=True)
class FgSeries:
    """One-dimensional commutative formal group law, truncated.

    coeffs maps (i, j) to the integer coefficient of X^i Y^j, complete for
    all i + j <= prec.  neg is the inversion series (F(X, neg(X)) = 0).
    """

    coeffs: dict
    prec: int
    neg: tuple = field(default=())

    def coeff(self, i: int, j: int) -> int:
        return self.coeffs.get((i, j), 0)

    def check_identity(self) -> None:
        for (i, j), v in self.coeffs.items():
            if j == 0 and v != (1 if i == 1 else 0):
                raise AssertionError("F(X,0) != X")
            if i == 0 and v != (1 if j == 1 else 0):
                raise AssertionError("F(0,Y) != Y")

    def check_symmetry(self) -> None:
        for (i, j), v in self.coeffs.items():
            if self.coeffs.get((j, i), 0) != v:
                raise AssertionError("F not symmetric")

    def check_associativity(self, depth: int | None = None) -> None:
        """F(F(X,Y),Z) = F(X,F(Y,Z)) to the given total degree."""
        d = min(depth or self.prec, self.prec)
        lhs = self._compose3(first=True, total=d)
        rhs = self._compose3(first=False, total=d)
        if lhs != rhs:
            raise AssertionError(f"associativity fails at depth {d}")

    def _compose3(self, first: bool, total: int):
        # variables (X, Y, Z); inner = F(X,Y) or F(Y,Z)
        if first:
            inner = {(i, j, 0): v for (i, j), v in self.coeffs.items() if i + j <= total}
            out_var = 2
        else:
            inner = {(0, i, j): v for (i, j), v in self.coeffs.items() if i + j <= total}
            out_var = 0
        pows = [{(0, 0, 0): 1}]
        for _ in range(total):
            nxt = _mmul(pows[-1], inner, total)
            if not nxt:
                break
            pows.append(nxt)
        out = {}
        for (i, j), c in self.coeffs.items():
            if i + j > total or i >= len(pows):
                continue
            mono = [0, 0, 0]
            mono[out_var] = j
            term = _mmul(pows[i], {tuple(mono): 1}, total)
            out = _madd(out, _mscal(c, term))
        return out

    # ---- univariate evaluation helpers ----

    def add_series(self, s, t, n=None):
        """F(s(z), t(z)) for univariate series without constant term."""
        n = n or self.prec
        pows_s = [[1] + [0] * (n - 1)]
        pows_t = [[1] + [0] * (n - 1)]
        deg = max((i for i, _ in self.coeffs), default=0)
        for _ in range(deg):
            pows_s.append(_umul(pows_s[-1], s, n))
            pows_t.append(_umul(pows_t[-1], t, n))
        out = [0] * n
        for (i, j), c in self.coeffs.items():
            term = _umul(pows_s[i], pows_t[j], n)
            for k in range(n):
                out[k] += c * term[k]
        return out

    def mul_by(self, n_mult: int):
        """The multiplication-by-n series [n](X), by iterated addition."""
        n = self.prec
        z = [0, 1] + [0] * (n - 2)
        acc = list(z)
        for _ in range(n_mult - 1):
            acc = self.add_series(acc, z, n)
        return acc

    def height(self, p: int) -> int:
        """Largest h with [p](X) a series in X^(p^h) mod p; -1 when [p] = 0 mod p."""
        if self.prec < p * p:
            raise InconclusivePrecision(f"prec {self.prec} < p^2 cannot certify height 2")
        mp = self.mul_by(p)
        exps = [k for k, c in enumerate(mp) if c % p != 0]
        if not exps:
            return HEIGHT_INFINITE
        first = exps[0]
        h = 0
        while first % p == 0:
            first //= p
            h += 1
        assert exps[0] == p**h, "leading term of [p] mod p not at p^h"
        assert all(e % p**h == 0 for e in exps), "[p] mod p not a series in X^(p^h)"
        return h


def multiplicative_group(prec: int = 30) -> FgSeries:
    """F(X,Y) = X + Y + XY; inversion -X + X^2 - X^3 + ..."""
    neg = [0] + [(-1) ** k for k in range(1, prec)]
    return FgSeries({(1, 0): 1, (0, 1): 1, (1, 1): 1}, prec, tuple(neg))


def additive_group(prec: int = 30) -> FgSeries:
    neg = [0, -1] + [0] * (prec - 2)
    return FgSeries({(1, 0): 1, (0, 1): 1}, prec, tuple(neg))


def formal_group_of_curve(curve: CurveQ, p: int, prec: int = 30) -> FgSeries:
    """Group law on the formal completion along z = -x/y.

    Needs good reduction at p only because every caller is about to reduce
    mod powers of p; the series itself is constructed over Z.
    """
    if prec > MAX_PREC:
        raise PrecisionOverflow(f"prec {prec} > configured max {MAX_PREC}")
    if not curves.is_good(curve, p):
        raise BadAtP(f"bad reduction at {p}")
    n = prec + 3  # lambda needs w one degree deeper; keep margin
    a1, a2, a3, a4, a6 = curve.a_invariants

    # w(z) = z^3 (1 + ...) : fixed point of the curve equation
    w = [0] * n
    w[3] = 1
    for _ in range(n):
        w2 = _umul(w, w, n)
        w3 = _umul(w2, w, n)
        new = [0] * n
        new[3] = 1
        for k in range(n):
            if k + 1 < n:
                new[k + 1] += a1 * w[k] + a4 * w2[k]
            if k + 2 < n:
                new[k + 2] += a2 * w[k]
            new[k] += a3 * w2[k] + a6 * w3[k]
        if new == w:
            break
        w = new

    # lambda = (w(z2)-w(z1))/(z2-z1), nu = w(z1) - lambda z1, both bivariate
    lam = {}
    for deg in range(3, n):
        if w[deg] == 0:
            continue
        for k in range(deg):
            if k + (deg - 1 - k) < n:
                key = (k, deg - 1 - k)
                lam[key] = lam.get(key, 0) + w[deg]
    nu = {(deg, 0): w[deg] for deg in range(3, n) if w[deg]}
    nu = _madd(nu, _mscal(-1, {(i + 1, j): v for (i, j), v in lam.items() if i + 1 + j < n}))

    def bmul(A, B):
        return _mmul(A, B, n - 1)

    def binv_unit(A):
        u = dict(A)
        assert u.pop((0, 0)) == 1
        out = {(0, 0): 1}
        term = {(0, 0): 1}
        while True:
            term = bmul(term, _mscal(-1, u))
            if not term:
                break
            out = _madd(out, term)
        return out

    lam2 = bmul(lam, lam)
    lam3 = bmul(lam2, lam)
    lamnu = bmul(lam, nu)
    lam2nu = bmul(lam2, nu)
    den = _madd({(0, 0): 1}, _madd(_mscal(a2, lam), _madd(_mscal(a4, lam2), _mscal(a6, lam3))))
    num = _madd(_mscal(a1, lam), _madd(_mscal(a3, lam2),
          _madd(_mscal(a2, nu), _madd(_mscal(2 * a4, lamnu), _mscal(3 * a6, lam2nu)))))
    z3 = _madd({(1, 0): -1, (0, 1): -1}, _mscal(-1, bmul(num, binv_unit(den))))

    # inversion series i(z) = -z * (1 - a1 z - a3 w)^(-1)
    base = [0] * n
    base[1] = a1
    for k in range(n):
        base[k] += a3 * w[k]
    geo = [0] * n
    term = [1] + [0] * (n - 1)
    while any(term):
        geo = [x + y for x, y in zip(geo, term)]
        term = _umul(term, base, n)
    ineg = [0] * n
    for k in range(n - 1):
        ineg[k + 1] = -geo[k]

    # F = ineg(z3), trustworthy to total degree prec
    pows = [{(0, 0): 1}]
    for _ in range(n - 1):
        nxt = bmul(pows[-1], z3)
        if not nxt:
            break
        pows.append(nxt)
    F = {}
    for k in range(1, min(n, len(pows))):
        if ineg[k]:
            F = _madd(F, _mscal(ineg[k], pows[k]))
    F = {k: v for k, v in F.items() if k[0] + k[1] <= prec}

    fg = FgSeries(F, prec, tuple(ineg[: prec + 1]))
    fg.check_identity()
    fg.check_symmetry()
    fg.check_associativity(min(prec, 14))
    return fg


# ---------------------------------------------------------------------------
# Symmetric expansion of the n-fold addition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormDecomposition:
    """F_n split into trace part, diagonal coefficients and symmetrized tail.

    diagonal[i] is the coefficient of (X_1 ... X_n)^i; tail maps a sorted
    exponent tuple to its (orbit-constant) coefficient.
    """

    n: int
    cap: int
    trace_ok: bool
    diagonal: dict
    tail: dict


def nfold_addition(F: FgSeries, n_vars: int, cap: int):
    """F_n(X_1..X_n) with every exponent capped at cap (a ring quotient)."""
    need = n_vars * cap
    if F.prec < need:
        raise PrecisionOverflow(f"need F to degree {need}, have {F.prec}")
    total = need
    cur = {(1,): 1}  # F_1 = X_1
    for k in range(2, n_vars + 1):
        cur = {key + (0,) * 1: v for key, v in cur.items()}
        # powers of S = F_{k-1}, variables X_1..X_{k-1} plus slot for X_k
        pows = [{(0,) * k: 1}]
        amax = max(i for i, _ in F.coeffs)
        for _ in range(amax):
            nxt = _mmul(pows[-1], cur, total, cap)
            if not nxt:
                break
            pows.append(nxt)
        out = {}
        for (i, j), c in F.coeffs.items():
            if i >= len(pows) or j > cap:
                continue
            for key, v in pows[i].items():
                kk = key[:-1] + (key[-1] + j,)
                if kk[-1] > cap:
                    continue
                out[kk] = out.get(kk, 0) + c * v
        cur = {k2: v for k2, v in out.items() if v}
    return cur


def symmetric_norm_series(F: FgSeries, n_vars: int, prec: int) -> NormDecomposition:
    """Decompose F_n: trace term, diagonal (X_1...X_n)^i coefficients, tail.

    prec is a total-degree budget; diagonal coefficients come out for
    i <= prec // n_vars.
    """
    cap = prec // n_vars
    if cap < 1:
        raise PrecisionOverflow("prec too small for even the linear terms")
    fn = nfold_addition(F, n_vars, cap)
    trace_ok = all(fn.get(tuple(1 if i == k else 0 for i in range(n_vars)), 0) == 1
                   for k in range(n_vars))
    diagonal = {}
    tail = {}
    for key, v in fn.items():
        if sum(key) == 1:
            continue
        if len(set(key)) == 1 and key[0] >= 1:
            diagonal[key[0]] = v
        else:
            rep = tuple(sorted(key, reverse=True))
            if rep in tail:
                assert tail[rep] == v, "orbit coefficients differ"
            else:
                tail[rep] = v
    return NormDecomposition(n_vars, cap, trace_ok, diagonal, tail)
