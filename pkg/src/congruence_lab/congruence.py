"""Exact counting for a x^e + b y^f = 0 (mod q) over boxes and sliced regions.

The central counter enumerates nothing: for each admissible residue class it
counts lattice points in an interval through the floor identity

    #{x in (L, R] : x = c (mod q)} = floor((R - c)/q) - floor((L - c)/q),

evaluated in exact rational arithmetic.  Boxes (0, X] x (0, Y] get a
main-term/error-envelope split phi(q) X Y / q^2 + O(...); regions whose
x-range depends on y through slowly varying boundary functions get the
H-truncated envelope with the Delta_H distortion factor.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .arith import jacobi, log1n, mod_inv, phi, sigma_half_inv, tau

log = logging.getLogger("congruence_lab")

RationalLike = int | float | Fraction


@dataclass(frozen=True)
class CongruenceInstance:
    """One counting problem: pairs 0 < x <= X, 0 < y <= Y, gcd(xy, q) = 1
    with a x^e + b y^f = 0 (mod q)."""

    a: int
    b: int
    q: int
    X: Fraction
    Y: Fraction
    e: int = 1
    f: int = 2

    def __post_init__(self):
        object.__setattr__(self, "X", Fraction(self.X))
        object.__setattr__(self, "Y", Fraction(self.Y))
        if self.q < 1:
            raise ValueError("q must be a positive integer")
        if self.a == 0 or self.b == 0:
            raise ValueError("coefficients a, b must be nonzero")
        if math.gcd(self.a * self.b, self.q) != 1:
            raise ValueError("a*b must be coprime to q")
        if self.e < 1 or self.f < 1:
            raise ValueError("exponents e, f must be >= 1")
        if self.X < 1 or self.Y < 1:
            raise ValueError("box sides X, Y must be >= 1")


def _class_count(c: int, q: int, bound: Fraction) -> int:
    # #{0 < x <= bound : x = c (mod q)}, c in [0, q)
    return (bound - c) // q - (0 - c) // q


def count_exact(inst: CongruenceInstance) -> int:
    """Exact solution count via per-residue interval counts.

    Runs in O(q) for any exponent pair: the y-side is folded into a length-q
    accumulator keyed by b y0^f mod q before the x-side is scanned.
    """
    a, b, q = inst.a, inst.b, inst.q
    if q == 1:
        return int(inst.X // 1) * int(inst.Y // 1)
    acc = [0] * q
    for y0 in range(1, q):
        if math.gcd(y0, q) == 1:
            acc[b * pow(y0, inst.f, q) % q] += _class_count(y0, q, inst.Y)
    total = 0
    for x0 in range(1, q):
        if math.gcd(x0, q) == 1:
            total += _class_count(x0, q, inst.X) * acc[-a * pow(x0, inst.e, q) % q]
    return total


def count_exact_naive(inst: CongruenceInstance) -> int:
    """Literal double loop over the box; cross-check only."""
    if inst.X * inst.Y > 2 * 10**7:
        raise ValueError("naive counter refused: box too large")
    a, b, q = inst.a, inst.b, inst.q
    total = 0
    for x in range(1, int(inst.X // 1) + 1):
        axe = a * x**inst.e
        for y in range(1, int(inst.Y // 1) + 1):
            if (axe + b * y**inst.f) % q == 0 and math.gcd(x * y, q) == 1:
                total += 1
    return total


def main_term(inst: CongruenceInstance) -> float:
    """phi(q) X Y / q^2 (linear-quadratic pairing only)."""
    if (inst.e, inst.f) != (1, 2):
        raise ValueError("main term is for e = 1, f = 2")
    return phi(inst.q) * float(inst.X) * float(inst.Y) / inst.q**2


def error_envelope(inst: CongruenceInstance) -> float:
    """Envelope X/q tau(q) + L(q) sigma_{-1/2}(q) (Y/sqrt(q) tau(q) + sqrt(q) L(q))."""
    if (inst.e, inst.f) != (1, 2):
        raise ValueError("error envelope is for e = 1, f = 2")
    q = inst.q
    X, Y = float(inst.X), float(inst.Y)
    Lq = log1n(q)
    return X / q * tau(q) + Lq * sigma_half_inv(q) * (
        Y / math.sqrt(q) * tau(q) + math.sqrt(q) * Lq
    )


@dataclass(frozen=True)
class CountReport:
    instance: CongruenceInstance
    exact: int
    main_term: float
    envelope: float
    ratio: float
    seconds: float


def box_report(inst: CongruenceInstance) -> CountReport:
    t0 = time.perf_counter()
    exact = count_exact(inst)
    main = main_term(inst)
    env = error_envelope(inst)
    seconds = time.perf_counter() - t0
    return CountReport(inst, exact, main, env, abs(exact - main) / env, seconds)


Rule = int | float | Fraction | Callable[[int], RationalLike]


def _apply(rule: Rule, q: int) -> RationalLike:
    return rule(q) if callable(rule) else rule


def scan_boxes(
    q_values: Sequence[int],
    a_rule: Rule = 1,
    b_rule: Rule = 1,
    X_rule: Rule = lambda q: q,
    Y_rule: Rule = lambda q: q,
    threads: int = 1,
) -> list[CountReport]:
    """Box reports over a family of moduli; instances violating
    gcd(ab, q) = 1 are skipped with a log line.  Results are ordered by the
    input sequence regardless of thread count."""
    instances = []
    for q in q_values:
        try:
            instances.append(
                CongruenceInstance(
                    int(_apply(a_rule, q)),
                    int(_apply(b_rule, q)),
                    q,
                    Fraction(_apply(X_rule, q)),
                    Fraction(_apply(Y_rule, q)),
                )
            )
        except ValueError as exc:
            log.warning("skipping q=%d: %s", q, exc)
    if threads <= 1:
        return [box_report(inst) for inst in instances]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(box_report, instances))


# ---- regions sliced by boundary functions of y ----

@dataclass(frozen=True)
class Interval:
    """Half-open interval (y0, y0 + length]."""

    y0: Fraction
    length: Fraction

    def __post_init__(self):
        object.__setattr__(self, "y0", Fraction(self.y0))
        object.__setattr__(self, "length", Fraction(self.length))
        if self.length <= 0:
            raise ValueError("interval length must be positive")

    def integers(self) -> range:
        return range(int(self.y0 // 1) + 1, int((self.y0 + self.length) // 1) + 1)


@dataclass(frozen=True)
class AffineBoundary:
    """y -> intercept + slope * y, exact rational."""

    intercept: Fraction
    slope: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "intercept", Fraction(self.intercept))
        object.__setattr__(self, "slope", Fraction(self.slope))

    def __call__(self, y: RationalLike) -> Fraction:
        return self.intercept + self.slope * Fraction(y)


Boundary = Callable[[RationalLike], RationalLike]


@dataclass(frozen=True)
class BoundarySpec:
    """Lower/upper x-boundaries as functions of y plus a bound on |d/dy|.

    Affine boundaries keep every count exact.  Any other callable is accepted
    as an extension point, but its values pass through binary floats, so
    counts are then exact only as long as no boundary value sits within 1e-9
    of an integer multiple boundary.
    """

    lower: Boundary
    upper: Boundary
    derivative_bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "derivative_bound", Fraction(self.derivative_bound))
        if self.derivative_bound < 0:
            raise ValueError("derivative bound must be nonnegative")


def box_bounds(X: RationalLike) -> BoundarySpec:
    """The box (0, X]: constant boundaries, zero derivative bound."""
    if Fraction(X) <= 0:
        raise ValueError("X must be positive")
    return BoundarySpec(AffineBoundary(0), AffineBoundary(X), Fraction(0))


def affine_bounds(
    lo_intercept: RationalLike,
    lo_slope: RationalLike,
    hi_intercept: RationalLike,
    hi_slope: RationalLike,
) -> BoundarySpec:
    lo = AffineBoundary(Fraction(lo_intercept), Fraction(lo_slope))
    hi = AffineBoundary(Fraction(hi_intercept), Fraction(hi_slope))
    return BoundarySpec(lo, hi, max(abs(lo.slope), abs(hi.slope)))


def count_boundaries(
    a: int, b: int, q: int, bounds: BoundarySpec, J: Interval
) -> int:
    """Exact count of gcd(xy, q) = 1, y in J, f_lo(y) < x <= f_hi(y),
    a x + b y^2 = 0 (mod q)."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    if a == 0 or b == 0:
        raise ValueError("coefficients a, b must be nonzero")
    if math.gcd(a * b, q) != 1:
        raise ValueError("a*b must be coprime to q")
    if isinstance(bounds.lower, AffineBoundary) and isinstance(bounds.upper, AffineBoundary):
        for y_end in (J.y0, J.y0 + J.length):
            if bounds.upper(y_end) < bounds.lower(y_end):
                raise ValueError("upper boundary below lower boundary on J")
    ainv = mod_inv(a, q)
    total = 0
    for y in J.integers():
        if math.gcd(y, q) != 1:
            continue
        c = (-ainv * b * y * y) % q
        lo = Fraction(bounds.lower(y))
        hi = Fraction(bounds.upper(y))
        n = (hi - c) // q - (lo - c) // q
        if n > 0:
            total += n
    return total


def main_term_boundaries(
    a: int, b: int, q: int, bounds: BoundarySpec, J: Interval
) -> Fraction:
    """(1/q) sum over integers y in J with gcd(y, q) = 1 of (f_hi - f_lo)(y)."""
    if math.gcd(a * b, q) != 1:
        raise ValueError("a*b must be coprime to q")
    acc = Fraction(0)
    for y in J.integers():
        if math.gcd(y, q) == 1:
            acc += Fraction(bounds.upper(y)) - Fraction(bounds.lower(y))
    return acc / q


@dataclass(frozen=True)
class BoundaryReport:
    exact: int
    main_term: float
    envelope: float
    ratio: float
    H: int
    delta_H: float
    seconds: float


def boundary_report(
    a: int, b: int, q: int, bounds: BoundarySpec, J: Interval, H: int
) -> BoundaryReport:
    """Exact count against the truncation-H envelope

    Y/H + Delta_H L(H) sigma_{-1/2}(q) (Y/sqrt(q) tau(q) + sqrt(q) L(q)),
    Delta_H = 1 + H T Y / q with T the boundary derivative bound."""
    if H < 1:
        raise ValueError("H must be >= 1")
    t0 = time.perf_counter()
    exact = count_boundaries(a, b, q, bounds, J)
    main = float(main_term_boundaries(a, b, q, bounds, J))
    Y = float(J.length)
    T = float(bounds.derivative_bound)
    delta = 1.0 + H * T * Y / q
    env = Y / H + delta * log1n(H) * sigma_half_inv(q) * (
        Y / math.sqrt(q) * tau(q) + math.sqrt(q) * log1n(q)
    )
    seconds = time.perf_counter() - t0
    return BoundaryReport(exact, main, env, abs(exact - main) / env, H, delta, seconds)


# ---- bilinear sums of Jacobi symbols ----

@dataclass(frozen=True)
class BilinearResult:
    value: complex
    bound: float
    M: int
    N: int


def bilinear_jacobi(
    a_coeffs: Sequence[complex],
    b_coeffs: Sequence[complex],
    epsilon: float = 0.05,
) -> BilinearResult:
    """sum over odd m <= M, n <= N of a_m b_n (n/m), with the cancellation
    benchmark (MN)^eps (M sqrt(N) + sqrt(M) N).

    a_coeffs[i] weights m = 2i + 1; b_coeffs[j] weights n = j + 1.
    """
    if not a_coeffs or not b_coeffs:
        raise ValueError("coefficient sequences must be nonempty")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    M = 2 * len(a_coeffs) - 1
    N = len(b_coeffs)
    total = 0j
    for i, am in enumerate(a_coeffs):
        m = 2 * i + 1
        if am == 0:
            continue
        inner = 0j
        for j, bn in enumerate(b_coeffs):
            inner += bn * jacobi(j + 1, m)
        total += am * inner
    bound = (M * N) ** epsilon * (M * math.sqrt(N) + math.sqrt(M) * N)
    return BilinearResult(total, bound, M, N)
