"""Coefficient-weighted sums of congruence counts over dyadic cells.

The family ranges over u in (U, 2U], v in (V, 2V], w in (W, 2W] subject to
gcd(rsuv, tw) = 1, and sums weights d_{u,v} e_w times the exact count for

    r u^l x + s v^m y^2 = 0 (mod t w)

with y in J and x between boundary functions.  The predicted main term
replaces each count by (tw)^{-1} sum_y (f_hi - f_lo); the error budget is
the pair (UVWY/H, T_envelope) where T_envelope carries the Delta_H
distortion, a cell-structure term, and the large-modulus term Z.

Coefficient values are drawn deterministically from the closed unit disc by
a splitmix64 hash of (seed, role, indices): the same (seed, cell) always
yields the same weight, independent of iteration order or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .congruence import (
    AffineBoundary,
    BoundarySpec,
    Interval,
    RationalLike,
    count_boundaries,
)

SCHEMES = ("all-ones", "factorized", "joint")

_MASK = (1 << 64) - 1
_TAG_DU, _TAG_DV, _TAG_DJOINT, _TAG_E = 1, 2, 3, 4


def _sm(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def _mix(seed: int, *keys: int) -> int:
    h = _sm(seed & _MASK)
    for k in keys:
        h = _sm(h ^ (k & _MASK))
    return h


def unit_disc_point(seed: int, tag: int, *indices: int) -> complex:
    """Deterministic point of the closed unit disc keyed by (seed, tag, indices)."""
    u1 = _mix(seed, tag, *indices, 101) / 2.0**64
    u2 = _mix(seed, tag, *indices, 202) / 2.0**64
    r = math.sqrt(u1)
    return complex(r * math.cos(2 * math.pi * u2), r * math.sin(2 * math.pi * u2))


FamilyBoundary = Callable[[int, int, int, int], RationalLike]


@dataclass(frozen=True)
class FamilyBounds:
    """x-boundaries as functions of (u, v, w, y), with sensitivity metadata.

    rho_u, sigma_v, tau_y scale the u-, v-, y-sensitivity of the boundaries
    relative to the magnitude F (so e.g. |d f/d y| <= tau_y * F); they feed
    the Delta_H distortion factor only, never an exact count.
    """

    lower: FamilyBoundary
    upper: FamilyBoundary
    rho_u: float
    sigma_v: float
    tau_y: float
    F: float

    def __post_init__(self):
        if self.F <= 0:
            raise ValueError("magnitude F must be positive")
        if min(self.rho_u, self.sigma_v, self.tau_y) < 0:
            raise ValueError("sensitivity parameters must be nonnegative")


def constant_bounds(X: RationalLike) -> FamilyBounds:
    """The box (0, X] for every cell; F = X, all sensitivities zero."""
    Xf = Fraction(X)
    if Xf <= 0:
        raise ValueError("X must be positive")
    return FamilyBounds(
        lambda u, v, w, y: Fraction(0),
        lambda u, v, w, y: Xf,
        0.0,
        0.0,
        0.0,
        float(Xf),
    )


def affine_in_y_bounds(
    lo_intercept: RationalLike,
    lo_slope: RationalLike,
    hi_intercept: RationalLike,
    hi_slope: RationalLike,
    F: float,
) -> FamilyBounds:
    """Cell-independent affine boundaries f(y) = intercept + slope y."""
    lo = AffineBoundary(Fraction(lo_intercept), Fraction(lo_slope))
    hi = AffineBoundary(Fraction(hi_intercept), Fraction(hi_slope))
    tau_y = float(max(abs(lo.slope), abs(hi.slope))) / F
    return FamilyBounds(
        lambda u, v, w, y: lo(y),
        lambda u, v, w, y: hi(y),
        0.0,
        0.0,
        tau_y,
        F,
    )


@dataclass(frozen=True)
class AveragedFamily:
    l: int
    m: int
    r: int
    s: int
    t: int
    U: Fraction
    V: Fraction
    W: Fraction
    J: Interval
    bounds: FamilyBounds
    scheme: str = "all-ones"
    seed: int = 0

    def __post_init__(self):
        for name in ("U", "V", "W"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.l < 1 or self.m < 1:
            raise ValueError("exponents l, m must be >= 1")
        if self.r == 0 or self.s == 0:
            raise ValueError("coefficients r, s must be nonzero")
        if self.t < 1:
            raise ValueError("t must be a positive integer")
        if math.gcd(self.r * self.s, self.t) != 1:
            raise ValueError("r*s must be coprime to t")
        if min(self.U, self.V, self.W) < Fraction(1, 2):
            raise ValueError("dyadic parameters U, V, W must be >= 1/2")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown coefficient scheme {self.scheme!r}")

    # ---- cells and coefficients ----

    def _range(self, P: Fraction) -> range:
        return range(int(P // 1) + 1, int((2 * P) // 1) + 1)

    def cells(self) -> list[tuple[int, int, int]]:
        """Admissible (u, v, w) in lexicographic order."""
        out = []
        for u in self._range(self.U):
            for v in self._range(self.V):
                if math.gcd(self.r * self.s * u * v, self.t) != 1:
                    continue
                for w in self._range(self.W):
                    if math.gcd(self.r * self.s * u * v, self.t * w) == 1:
                        out.append((u, v, w))
        return out

    def d_coeff(self, u: int, v: int) -> complex:
        if self.scheme == "all-ones":
            return 1 + 0j
        if self.scheme == "factorized":
            return unit_disc_point(self.seed, _TAG_DU, u) * unit_disc_point(
                self.seed, _TAG_DV, v
            )
        return unit_disc_point(self.seed, _TAG_DJOINT, u, v)

    def e_coeff(self, w: int) -> complex:
        if self.scheme == "all-ones":
            return 1 + 0j
        return unit_disc_point(self.seed, _TAG_E, w)

    def cell_modulus(self, w: int) -> int:
        return self.t * w

    def cell_bounds(self, u: int, v: int, w: int) -> BoundarySpec:
        lo = self.bounds.lower
        hi = self.bounds.upper

        def lower(y, _u=u, _v=v, _w=w):
            return lo(_u, _v, _w, y)

        def upper(y, _u=u, _v=v, _w=w):
            return hi(_u, _v, _w, y)

        return BoundarySpec(
            lower, upper, Fraction(self.bounds.tau_y * self.bounds.F)
        )


def _work_estimate(family: AveragedFamily) -> int:
    n = 1
    for P in (family.U, family.V, family.W):
        n *= max(len(family._range(P)), 1)
    return n * max(len(family.J.integers()), 1)


def s_exact(family: AveragedFamily) -> complex:
    """The weighted sum of exact cell counts, accumulated in cell order."""
    if _work_estimate(family) > 10**9:
        raise ValueError("family too large: estimated work exceeds 1e9 steps")
    total = 0j
    for u, v, w in family.cells():
        a = family.r * u**family.l
        b = family.s * v**family.m
        q = family.t * w
        n = count_boundaries(a, b, q, family.cell_bounds(u, v, w), family.J)
        if n:
            total += family.d_coeff(u, v) * family.e_coeff(w) * n
    return total


def main_term(family: AveragedFamily) -> complex:
    """Weighted sum of (tw)^{-1} sum_{y in J, gcd(y,tw)=1} (f_hi - f_lo)(y)."""
    total = 0j
    for u, v, w in family.cells():
        q = family.t * w
        acc = Fraction(0)
        for y in family.J.integers():
            if math.gcd(y, q) == 1:
                acc += Fraction(family.bounds.upper(u, v, w, y)) - Fraction(
                    family.bounds.lower(u, v, w, y)
                )
        if acc:
            total += family.d_coeff(u, v) * family.e_coeff(w) * float(acc / q)
    return total


# ---- error budget ----

def delta_H(family: AveragedFamily, H: float) -> float:
    """(1 + HF rho U/(tW)) (1 + HF sigma V/(tW)) (1 + HF tau Y/(tW))."""
    if H <= 0:
        raise ValueError("H must be positive")
    b = family.bounds
    tW = family.t * float(family.W)
    Y = float(family.J.length)
    return (
        (1.0 + H * b.F * b.rho_u * float(family.U) / tW)
        * (1.0 + H * b.F * b.sigma_v * float(family.V) / tW)
        * (1.0 + H * b.F * b.tau_y * Y / tW)
    )


def _is_factorized(family: AveragedFamily) -> bool:
    # all-ones weights factor trivially
    return family.scheme in ("all-ones", "factorized")


def _frac_half(k: int) -> float:
    return 0.5 if k % 2 else 0.0


@dataclass(frozen=True)
class ErrorBudget:
    H: float
    epsilon: float
    delta_H: float
    Z: float
    T_envelope: float
    first_O: float
    hcond_ok: bool


def error_budget(family: AveragedFamily, H: float, epsilon: float) -> ErrorBudget:
    """The two-part budget (UVWY/H, T_envelope).

    T_envelope = Delta_H (Y/sqrt(tW) (U^{1-{l/2}} V^{1-{m/2}} W + U V sqrt(W))
                 + Z) (H t U V W)^eps, with Z depending on whether the
    weights factor and the cells outgrow the modulus.  hcond_ok records
    whether H >= tW/F.
    """
    if H <= 0:
        raise ValueError("H must be positive")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    U, V, W = float(family.U), float(family.V), float(family.W)
    Y = float(family.J.length)
    t = family.t
    tW = t * W
    delta = delta_H(family, H)
    if _is_factorized(family) and family.U * family.V >= family.t * family.W:
        Z = math.sqrt((tW + U) * (tW + V)) * math.sqrt(U * V) * W
    else:
        Z = math.sqrt(tW) * U * V * W
    cell_term = (
        U ** (1.0 - _frac_half(family.l)) * V ** (1.0 - _frac_half(family.m)) * W
        + U * V * math.sqrt(W)
    )
    T = delta * (Y / math.sqrt(tW) * cell_term + Z) * (H * t * U * V * W) ** epsilon
    return ErrorBudget(
        H,
        epsilon,
        delta,
        Z,
        T,
        U * V * W * Y / H,
        H >= tW / family.bounds.F,
    )


def char_length(family: AveragedFamily) -> float:
    """Characteristic x-interval length: max of (f_hi - f_lo) over cell corner
    indices and the endpoints of J."""
    us = family._range(family.U)
    vs = family._range(family.V)
    ws = family._range(family.W)
    if not (us and vs and ws):
        raise ValueError("family has no cells")
    best = 0.0
    ys = (family.J.y0, family.J.y0 + family.J.length)
    for u in (us[0], us[-1]):
        for v in (vs[0], vs[-1]):
            for w in (ws[0], ws[-1]):
                for y in ys:
                    length = float(
                        Fraction(family.bounds.upper(u, v, w, y))
                        - Fraction(family.bounds.lower(u, v, w, y))
                    )
                    best = max(best, length)
    return best


def suggest_H(family: AveragedFamily, epsilon: float, X: float | None = None) -> float:
    """(tW)^{1+eps} / X; requires 0 < X <= tW."""
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    tW = family.t * float(family.W)
    if X is None:
        X = char_length(family)
    if X <= 0:
        raise ValueError("characteristic length X must be positive")
    if X > tW:
        raise ValueError("suggest_H requires X <= tW")
    return tW ** (1.0 + epsilon) / X


@dataclass(frozen=True)
class DominanceReport:
    q0: float
    X: float
    Z_structured: float
    main_ok: bool
    t_ok: bool
    warnings: tuple[str, ...]


def dominance_report(
    family: AveragedFamily, epsilon: float, X: float | None = None
) -> DominanceReport:
    """Checks that the modulus scale q0 = tW is small enough for the budget
    to fall below the main term: q0^{1+eps} <= min(U^{2{l/2}} V^{2{m/2}} X^2, Z)
    and q0^eps sqrt(t) <= X, where Z is (UV)^{1/4} (XY)^{1/2} for factorizing
    weights with UV >= tW and (XY)^{2/3} otherwise.  Outside the regime
    U, V <= tW the verdicts still evaluate but carry warnings."""
    if X is None:
        X = char_length(family)
    if X <= 0:
        raise ValueError("characteristic length X must be positive")
    U, V = float(family.U), float(family.V)
    Y = float(family.J.length)
    q0 = family.t * float(family.W)
    warnings = []
    if U > q0:
        warnings.append("U exceeds tW; dominance conditions are outside their regime")
    if V > q0:
        warnings.append("V exceeds tW; dominance conditions are outside their regime")
    if _is_factorized(family) and family.U * family.V >= family.t * family.W:
        Z = (U * V) ** 0.25 * math.sqrt(X * Y)
    else:
        Z = (X * Y) ** (2.0 / 3.0)
    lhs_main = q0 ** (1.0 + epsilon)
    rhs_main = min(
        U ** (2.0 * _frac_half(family.l)) * V ** (2.0 * _frac_half(family.m)) * X * X,
        Z,
    )
    return DominanceReport(
        q0,
        X,
        Z,
        lhs_main <= rhs_main,
        q0**epsilon * math.sqrt(family.t) <= X,
        tuple(warnings),
    )


@dataclass(frozen=True)
class AveragedReport:
    family: AveragedFamily
    H: float
    epsilon: float
    S: complex
    M: complex
    first_O: float
    T_envelope: float
    ratio: float
    hcond_ok: bool


def avg_report(family: AveragedFamily, H: float, epsilon: float) -> AveragedReport:
    """Exact weighted sum vs predicted main term vs error budget."""
    S = s_exact(family)
    M = main_term(family)
    budget = error_budget(family, H, epsilon)
    denom = budget.first_O + budget.T_envelope
    return AveragedReport(
        family,
        H,
        epsilon,
        S,
        M,
        budget.first_O,
        budget.T_envelope,
        abs(S - M) / denom,
        budget.hcond_ok,
    )
