"""Almost-prime points on a singular sextic del Pezzo surface.

The surface lives in P^6 and carries the two quadric relations
x3 x4 = x0 x5 and x6^2 + x3 x5 + x4 x5 = 0.  Integral points come from a
torsor with variables (eta1..eta4, alpha1..alpha3) satisfying

    eta2 alpha1^2 + eta3 alpha2 + eta4 alpha3 = 0

and coprimality side conditions; the monomial map pi sends torsor points to
surface points, and both quadrics vanish identically on its image (the
second one is eta1^6 eta2^3 eta3^4 eta4^4 times the torsor equation).

The lower-bound family fixes eta = (1, 1, 1, q) with q prime in the window
(B^{1/3}/2, B^{1/3}]: every pair 0 < alpha1 <= B^{1/3}/2 coprime to q and
0 < alpha2 <= B^{2/3}/2 with alpha2 = alpha1^2 (mod q), alpha2 != alpha1^2,
lifts to a surface point of height at most B.  Points whose coordinate
product alpha1 alpha2 |alpha3| has at most t prime factors (with
multiplicity) are the almost-prime ones; densities of the divisibility
pattern are described by the multiplicative function rho below, and the
weighted sieve needs t above a threshold computed from the dimension-3
sieving limit beta_3.

All window and height comparisons are exact integer inequalities
(8 q^3 > B instead of q > B^{1/3} and so on); no floating-point cube roots.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .arith import divisors, factorize, is_prime, mobius, phi, phi_star, radical

log = logging.getLogger("congruence_lab")

BETA_3 = 6.640859  # sieving limit for the dimension-3 weighted sieve


def icbrt(n: int) -> int:
    """Exact integer cube root: the largest r with r**3 <= n."""
    if n < 0:
        raise ValueError("icbrt requires n >= 0")
    if n == 0:
        return 0
    r = round(n ** (1.0 / 3.0))
    while r > 0 and r * r * r > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def sieve_primes(limit: int) -> list[int]:
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, f in enumerate(flags) if f]


@lru_cache(maxsize=8)
def _omega_upto(limit: int) -> np.ndarray:
    # om[n] = number of prime factors of n with multiplicity; om[0] unused
    om = np.zeros(limit + 1, dtype=np.int16)
    for p in sieve_primes(limit):
        pk = p
        while pk <= limit:
            om[pk::pk] += 1
            pk *= p
    return om


# ---- torsor and surface points ----

@dataclass(frozen=True)
class TorsorPoint:
    eta: tuple[int, int, int, int]
    alpha: tuple[int, int, int]

    def __post_init__(self):
        e1, e2, e3, e4 = self.eta
        a1, a2, a3 = self.alpha
        if min(self.eta) < 1:
            raise ValueError("eta entries must be positive")
        if 0 in self.alpha:
            raise ValueError("alpha entries must be nonzero")
        if math.gcd(e2, e3) != 1 or math.gcd(e2, e4) != 1 or math.gcd(e3, e4) != 1:
            raise ValueError("eta2, eta3, eta4 must be pairwise coprime")
        if e2 * a1 * a1 + e3 * a2 + e4 * a3 != 0:
            raise ValueError("torsor equation eta2 a1^2 + eta3 a2 + eta4 a3 = 0 fails")
        if math.gcd(a1, e1 * e3 * e4) != 1:
            raise ValueError("gcd(alpha1, eta1 eta3 eta4) must be 1")
        if math.gcd(a2, e1 * e2 * e4) != 1:
            raise ValueError("gcd(alpha2, eta1 eta2 eta4) must be 1")
        if math.gcd(a3, e1 * e2 * e3) != 1:
            raise ValueError("gcd(alpha3, eta1 eta2 eta3) must be 1")


@dataclass(frozen=True)
class SurfacePoint:
    x: tuple[int, int, int, int, int, int, int]

    def __post_init__(self):
        x0, x1, x2, x3, x4, x5, x6 = self.x
        if all(c == 0 for c in self.x):
            raise ValueError("zero vector is not a projective point")
        if x3 * x4 != x0 * x5:
            raise ValueError("quadric x3 x4 = x0 x5 fails")
        if x6 * x6 + x3 * x5 + x4 * x5 != 0:
            raise ValueError("quadric x6^2 + x3 x5 + x4 x5 = 0 fails")

    def height(self) -> int:
        return max(abs(c) for c in self.x)


def pi_map(p: TorsorPoint) -> SurfacePoint:
    """Monomial parametrization of the surface by the torsor."""
    e1, e2, e3, e4 = p.eta
    a1, a2, a3 = p.alpha
    return SurfacePoint(
        (
            a2 * a3,
            e1 * e2 * e3 * a1 * a2,
            e1 * e2 * e4 * a1 * a3,
            e1**2 * e2 * e3**2 * e4 * a2,
            e1**2 * e2 * e3 * e4**2 * a3,
            e1**4 * e2**2 * e3**3 * e4**3,
            e1**3 * e2**2 * e3**2 * e4**2 * a1,
        )
    )


@dataclass(frozen=True)
class SpecialPoint:
    """A lower-bound family point: eta = (1, 1, 1, q), alpha2 = alpha1^2 (mod q).

    alpha3 is derived: (alpha2 - alpha1^2)/q, required nonzero.  Heights are
    window conditions on the budget B, checked exactly.
    """

    q: int
    alpha1: int
    alpha2: int
    budget: int
    alpha3: int = 0  # derived in __post_init__

    def __post_init__(self):
        B = self.budget
        if B < 1:
            raise ValueError("budget B must be positive")
        if not is_prime(self.q):
            raise ValueError("q must be prime")
        if self.q**3 > B or 8 * self.q**3 <= B:
            raise ValueError("q must lie in (B^{1/3}/2, B^{1/3}]")
        if self.alpha1 < 1 or 8 * self.alpha1**3 > B:
            raise ValueError("alpha1 must lie in (0, B^{1/3}/2]")
        if self.alpha1 % self.q == 0:
            raise ValueError("alpha1 must be coprime to q")
        if self.alpha2 < 1 or 8 * self.alpha2**3 > B * B:
            raise ValueError("alpha2 must lie in (0, B^{2/3}/2]")
        if (self.alpha2 - self.alpha1**2) % self.q != 0:
            raise ValueError("alpha2 must be alpha1^2 (mod q)")
        a3 = (self.alpha2 - self.alpha1**2) // self.q
        if a3 == 0:
            raise ValueError("alpha2 = alpha1^2 gives alpha3 = 0")
        object.__setattr__(self, "alpha3", a3)


def special_to_torsor(sp: SpecialPoint) -> TorsorPoint:
    """Lift with eta = (1, 1, 1, q) and alpha = (alpha1, -alpha2, alpha3)."""
    return TorsorPoint((1, 1, 1, sp.q), (sp.alpha1, -sp.alpha2, sp.alpha3))


@dataclass(frozen=True)
class PointRecord:
    special: SpecialPoint
    torsor: TorsorPoint
    surface: SurfacePoint
    omega: int


def prime_window(B: int) -> list[int]:
    """Primes q with B^{1/3}/2 < q <= B^{1/3}, by exact cube comparisons."""
    return [q for q in sieve_primes(icbrt(B)) if 8 * q**3 > B]


def _alpha_bounds(B: int) -> tuple[int, int]:
    return icbrt(B // 8), icbrt(B * B // 8)


def iter_point_records(B: int, t: int) -> Iterator[PointRecord]:
    """Stream the lower-bound family points with at most t prime factors in
    alpha1 alpha2 |alpha3|, lifted to the surface.  Lexicographic order in
    (q, alpha1, alpha2)."""
    if B < 1:
        raise ValueError("budget B must be positive")
    if t < 0:
        raise ValueError("factor bound t must be nonnegative")
    a1max, a2max = _alpha_bounds(B)
    om = _omega_upto(max(a2max, 1))
    for q in prime_window(B):
        for a1 in range(1, a1max + 1):
            if a1 % q == 0:
                continue
            a1sq = a1 * a1
            oma1 = int(om[a1])
            for a2 in range(a1sq % q, a2max + 1, q):
                if a2 == a1sq or a2 == 0:
                    continue
                a3 = (a2 - a1sq) // q
                if oma1 + int(om[a2]) + int(om[abs(a3)]) > t:
                    continue
                sp = SpecialPoint(q, a1, a2, B)
                surf = pi_map(special_to_torsor(sp))
                assert surf.height() <= B, "height bound violated in window"
                yield PointRecord(sp, special_to_torsor(sp), surf, oma1 + int(om[a2]) + int(om[abs(a3)]))


def enumerate_lower_bound_points(B: int, t: int) -> tuple[int, list[PointRecord]]:
    records = list(iter_point_records(B, t))
    return len(records), records


def l_t_count(B: int, q: int, t: int) -> int:
    """Count of almost-prime family points for one prime q (no lifting).

    q beyond B^{1/3} contributes nothing and returns 0 with a log line.
    """
    if B < 1:
        raise ValueError("budget B must be positive")
    if not is_prime(q):
        raise ValueError("q must be prime")
    if t < 0:
        raise ValueError("factor bound t must be nonnegative")
    if q**3 > B:
        log.info("l_t_count: q=%d exceeds B^{1/3}, count is 0", q)
        return 0
    a1max, a2max = _alpha_bounds(B)
    om = _omega_upto(max(a2max, 1))
    total = 0
    for a1 in range(1, a1max + 1):
        if a1 % q == 0:
            continue
        a1sq = a1 * a1
        start = a1sq % q
        if start == 0:
            continue
        a2s = np.arange(start, a2max + 1, q, dtype=np.int64)
        if a2s.size == 0:
            continue
        a3s = np.abs(a2s - a1sq) // q
        good = (a2s != a1sq) & (om[a1] + om[a2s] + om[a3s] <= t)
        total += int(np.count_nonzero(good))
    return total


@dataclass(frozen=True)
class GrowthRow:
    B: int
    t: int
    count: int
    normalized: float  # count * log(B)^5 / B


def m_t_growth(B_values: Sequence[int], t: int, threads: int = 1) -> list[GrowthRow]:
    """Total almost-prime counts over the q-window for each budget."""
    rows = []
    for B in B_values:
        qs = prime_window(B)
        if threads <= 1 or len(qs) <= 1:
            counts = [l_t_count(B, q, t) for q in qs]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                counts = list(pool.map(lambda q: l_t_count(B, q, t), qs))
        total = sum(counts)
        rows.append(GrowthRow(B, t, total, total * math.log(B) ** 5 / B))
    return rows


# ---- sieve sequence and local densities ----

@dataclass(frozen=True)
class SieveSequence:
    """Multiplicities a_n = #{family points with alpha1 alpha2 |alpha3| = n}
    for one prime q, with the normalization X = phi(q) B / (4 q^2)."""

    B: int
    q: int
    X: Fraction
    a: dict[int, int]

    def total(self) -> int:
        return sum(self.a.values())


def build_sieve_sequence(B: int, q: int) -> SieveSequence:
    if not is_prime(q):
        raise ValueError("q must be prime")
    if q**3 > B or 8 * q**3 <= B:
        raise ValueError("q must lie in (B^{1/3}/2, B^{1/3}]")
    a1max, a2max = _alpha_bounds(B)
    counts: dict[int, int] = {}
    for a1 in range(1, a1max + 1):
        if a1 % q == 0:
            continue
        a1sq = a1 * a1
        for a2 in range(a1sq % q, a2max + 1, q):
            if a2 == a1sq or a2 == 0:
                continue
            n = a1 * a2 * abs((a2 - a1sq) // q)
            counts[n] = counts.get(n, 0) + 1
    return SieveSequence(B, q, Fraction(phi(q) * B, 4 * q * q), counts)


def rho(d: int, q: int) -> Fraction:
    """Local divisibility density scale: the sum over triples (e1, e2, e3)
    supported exactly on the primes of squarefree d, with gcd(e1 e2, q) = 1,

      rho(d) = mu(d) d sum mu(e1) mu(e2) mu(e3) (e1,e2,e3)/(e1 e2 e3)
               * sum_{l | f3} (1/l) phi*(f3/l) / phi*((f3/l, q)),

    where f3 = e3 / ((e1,e2,e3) (e1',e3') (e2',e3')) strips the parts of e3
    shared with e1 and e2.  Multiplicative in d; rho(p) = 3 - 2/p for
    p != q and rho(q) = 1 + 1/q.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    if mobius(d) == 0:
        raise ValueError("d must be squarefree")
    if not is_prime(q):
        raise ValueError("q must be prime")
    divs = divisors(d)
    total = Fraction(0)
    for e1 in divs:
        for e2 in divs:
            if math.gcd(e1 * e2, q) != 1:
                continue
            e12 = e1 * e2
            for e3 in divs:
                if radical(e12 * e3) != d:
                    continue
                k = math.gcd(math.gcd(e1, e2), e3)
                k13 = math.gcd(e1 // k, e3 // k)
                k23 = math.gcd(e2 // k, e3 // k)
                f3 = e3 // (k * k13 * k23)
                inner = Fraction(0)
                for length in divisors(f3):
                    rest = f3 // length
                    inner += Fraction(1, length) * phi_star(rest) / phi_star(
                        math.gcd(rest, q)
                    )
                total += Fraction(mobius(e1) * mobius(e2) * mobius(e3) * k, e1 * e2 * e3) * inner
    return mobius(d) * d * total


def rho_oracle_prime(p: int, q: int) -> tuple[Fraction, Fraction]:
    """(brute density, rho(p)/p) for a prime p not dividing 2q: the brute
    side counts pairs (a1, a2) mod p with a1 a2 (a2 - a1^2) = 0 (mod p)."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if p == 2 or p == q:
        raise ValueError("oracle requires p coprime to 2q")
    a1 = np.arange(p, dtype=np.int64)
    A1 = a1[:, None]
    A2 = a1[None, :]
    mask = (A1 == 0) | (A2 == 0) | ((A2 - A1 * A1) % p == 0)
    return Fraction(int(mask.sum()), p * p), rho(p, q) / p


def sum_over_d(seq: SieveSequence, d: int) -> tuple[int, float, float]:
    """(exact sum of a_n over d | n, predicted rho(d)/d X, remainder)."""
    if d < 1 or mobius(d) == 0:
        raise ValueError("d must be a positive squarefree integer")
    exact = sum(c for n, c in seq.a.items() if n % d == 0)
    predicted = float(rho(d, seq.q) / d * seq.X)
    return exact, predicted, exact - predicted


def sieve_threshold(kappa: int, mu: float, beta: float) -> float:
    """mu - 1 + (mu - kappa)(1 - 1/beta) + (kappa + 1) log beta."""
    if kappa < 1 or beta <= 1 or mu <= 0:
        raise ValueError("need kappa >= 1, beta > 1, mu > 0")
    return mu - 1 + (mu - kappa) * (1 - 1 / beta) + (kappa + 1) * math.log(beta)


def w2_sum(
    seq: SieveSequence, tau_level: float = 0.4, c2: float = 1.0
) -> dict[str, float]:
    """Remainder mass sum_{d <= X^tau / log^{c2} X} mu^2(d) 4^omega(d) |R_d|,
    with the comparison scale X / log^4 X."""
    X = float(seq.X)
    if X <= 1:
        raise ValueError("normalization X must exceed 1")
    d_max = X**tau_level / math.log(X) ** c2
    total = 0.0
    d = 1
    while d <= d_max:
        if mobius(d) != 0:
            _, _, rem = sum_over_d(seq, d)
            total += 4 ** len(factorize(d).factors) * abs(rem)
        d += 1
    scale = X / math.log(X) ** 4
    return {
        "tau": tau_level,
        "c2": c2,
        "d_max": d_max,
        "sum": total,
        "comparison_scale": scale,
        "implied_c3": total / scale,
    }


def w1_min_c1(q: int, z_max: int = 1000) -> dict[str, float]:
    """Smallest admissible c1 on a prime grid for the dimension-3 density
    condition prod_{w <= p < z} (1 - rho(p)/p)^{-1} <= (log z/log w)^3
    (1 + c1/log w).  p = 2 is excluded: rho(2) = 2, matching the fact that
    every sequence element is even, so the product diverges at 2."""
    ps = [p for p in sieve_primes(z_max) if p > 2]
    if len(ps) < 2:
        raise ValueError("z_max too small for a grid")
    logs = [math.log(float(1 - rho(p, q) / p)) for p in ps]
    prefix = [0.0]
    for v in logs:
        prefix.append(prefix[-1] + v)
    worst = 0.0
    for i, w in enumerate(ps):
        for j in range(i + 1, len(ps)):
            z = ps[j]
            lhs = math.exp(-(prefix[j] - prefix[i]))  # product over w <= p < z
            needed = (lhs / (math.log(z) / math.log(w)) ** 3 - 1) * math.log(w)
            worst = max(worst, needed)
    return {"z_max": z_max, "min_c1": worst}


def sieve_condition_report(
    B: int,
    q: int,
    tau_level: float = 0.4,
    c2: float = 1.0,
    z_max: int = 1000,
    rho_table_max: int = 30,
    t: int = 12,
    mu: float = 4.0,
) -> dict:
    """Everything the weighted sieve needs, JSON-ready: the rho table, the
    remainder sum, the density-grid constant, and the almost-prime threshold."""
    seq = build_sieve_sequence(B, q)
    table = {
        str(d): f"{rho(d, q).numerator}/{rho(d, q).denominator}"
        for d in range(1, rho_table_max + 1)
        if mobius(d) != 0
    }
    threshold = sieve_threshold(3, mu, BETA_3)
    return {
        "B": B,
        "q": q,
        "X": f"{seq.X.numerator}/{seq.X.denominator}",
        "X_float": float(seq.X),
        "points_total": seq.total(),
        "rho_table": table,
        "rho_at_q": f"{rho(q, q).numerator}/{rho(q, q).denominator}",
        "w2": w2_sum(seq, tau_level, c2),
        "w1": {
            **w1_min_c1(q, z_max),
            "note": "p = 2 excluded: every sequence element is even",
        },
        "threshold": {
            "kappa": 3,
            "mu": mu,
            "beta": BETA_3,
            "value": threshold,
            "t": t,
            "t_exceeds": t > threshold,
        },
    }
