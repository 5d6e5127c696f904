"""Quadratic Gauss sums G(s, t; u) = sum_{n=1}^{u} e((s n^2 + t n)/u).

For gcd(s, u) = 1 the sum has a closed form that splits on the 2-adic
structure of the modulus (u odd; u = 2v with v odd; 4 | u).  Each closed
value is returned in factored shape

    coefficient * unit * jacobi * sqrt(radicand) * e(phase)

so the pieces can be inspected separately, together with the assembled
complex number.  |G| is sqrt(u) for odd u and either 0 or sqrt(2u) for
even u, depending on the parity of t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import jacobi, mod_inv

_TWO_PI = 2.0 * math.pi


def _e(phase: Fraction) -> complex:
    # e(x) = exp(2 pi i x), phase reduced mod 1 before evaluation
    k = phase.numerator % phase.denominator
    ang = _TWO_PI * k / phase.denominator
    return complex(math.cos(ang), math.sin(ang))


@dataclass(frozen=True)
class GaussSumValue:
    """Closed-form value in factored shape.

    value == coefficient * unit * jacobi * sqrt(radicand) * e(phase); when the
    sum vanishes the coefficient is 0 and the remaining fields still describe
    the non-vanishing branch of the formula.
    """

    value: complex
    coefficient: complex
    unit: complex
    jacobi: int
    radicand: int
    phase: Fraction

    def assemble(self) -> complex:
        return (
            self.coefficient
            * self.unit
            * self.jacobi
            * math.sqrt(self.radicand)
            * _e(self.phase)
        )


def gauss_brute(s: int, t: int, u: int) -> complex:
    """Direct evaluation with compensated (Kahan) summation.

    The exponent is reduced mod u in integer arithmetic first, so each term
    is evaluated at an exact small angle.
    """
    if u < 1:
        raise ValueError("modulus u must be positive")
    re = im = 0.0
    cre = cim = 0.0
    for n in range(1, u + 1):
        k = (s * n * n + t * n) % u
        ang = _TWO_PI * k / u
        x = math.cos(ang) - cre
        v = re + x
        cre = (v - re) - x
        re = v
        y = math.sin(ang) - cim
        w = im + y
        cim = (w - im) - y
        im = w
    return complex(re, im)


def _eps(n: int) -> complex:
    # n odd
    return (1 + 0j) if n % 4 == 1 else 1j


def gauss_closed(s: int, t: int, u: int) -> GaussSumValue:
    """Closed form of G(s, t; u); requires gcd(s, u) = 1."""
    if u < 1:
        raise ValueError("modulus u must be positive")
    if math.gcd(s, u) != 1:
        raise ValueError("gauss_closed requires gcd(s, u) = 1")
    if u == 1:
        return GaussSumValue(1 + 0j, 1 + 0j, 1 + 0j, 1, 1, Fraction(0))
    s %= u
    t %= u
    if u % 2 == 1:
        unit = _eps(u)
        j = jacobi(s, u)
        phase = Fraction((-mod_inv(4 * s, u) * t * t) % u, u)
        coeff = 1 + 0j
        rad = u
    elif u % 4 == 2:
        v = u // 2
        unit = _eps(v)
        j = jacobi(2 * s, v) if v > 1 else 1
        phase = Fraction((-mod_inv(8 * s, v) * t * t) % v, v)
        coeff = (2 + 0j) if t % 2 == 1 else 0j
        rad = v
    else:
        unit = 1 / _eps(s)
        j = jacobi(u, s) if s > 1 else 1
        phase = Fraction((-mod_inv(s, 4 * u) * t * t) % (4 * u), 4 * u)
        coeff = (1 + 1j) if t % 2 == 0 else 0j
        rad = u
    value = coeff * unit * j * math.sqrt(rad) * _e(phase)
    return GaussSumValue(value, coeff, unit, j, rad, phase)


def reciprocity_check(s: int, u: int) -> tuple[complex, complex, float]:
    """Both sides of G(s,0;u) G(u,0;s) = G(1,0;su) for odd positive s coprime
    to u, and the absolute defect between them (brute evaluation throughout)."""
    if s < 1 or s % 2 == 0:
        raise ValueError("reciprocity requires odd positive s")
    if u < 1:
        raise ValueError("modulus u must be positive")
    if math.gcd(s, u) != 1:
        raise ValueError("reciprocity requires gcd(s, u) = 1")
    lhs = gauss_brute(s, 0, u) * gauss_brute(u, 0, s)
    rhs = gauss_brute(1, 0, s * u)
    return lhs, rhs, abs(lhs - rhs)


# ---- whole-grid evaluation (all coprime s, all shifts t, fixed u) ----

def coprime_residues(u: int) -> list[int]:
    return [s for s in range(1, u + 1) if math.gcd(s, u) == 1] if u > 1 else [1]


def brute_grid(u: int) -> tuple[list[int], np.ndarray]:
    """G(s, t; u) for every coprime s and every t in [0, u).

    Row s of the result is the inverse DFT of the sequence e(s n^2 / u):
    sum_n e(s n^2/u) e(t n/u) over n = 0..u-1 equals the sum over n = 1..u
    term by term, so this is the same quantity gauss_brute computes.
    """
    ss = coprime_residues(u)
    n = np.arange(u, dtype=np.int64)
    n2 = (n * n) % u
    roots = np.exp(2j * np.pi * np.arange(u) / u)
    rows = np.empty((len(ss), u), dtype=np.complex128)
    for i, s in enumerate(ss):
        rows[i] = roots[(s * n2) % u]
    return ss, np.fft.ifft(rows, axis=1) * u


def closed_grid(u: int) -> tuple[list[int], np.ndarray]:
    """Closed-form values on the same (s, t) grid as brute_grid."""
    ss = coprime_residues(u)
    out = np.empty((len(ss), u), dtype=np.complex128)
    tt = np.arange(u, dtype=np.int64)
    if u == 1:
        out[:] = 1.0
        return ss, out
    if u % 2 == 1:
        roots = np.exp(2j * np.pi * np.arange(u) / u)
        t2 = (tt * tt) % u
        unit = _eps(u) * math.sqrt(u)
        for i, s in enumerate(ss):
            c = (-mod_inv(4 * s, u)) % u
            out[i] = unit * jacobi(s, u) * roots[(c * t2) % u]
    elif u % 4 == 2:
        v = u // 2
        roots = np.exp(2j * np.pi * np.arange(v) / v)
        t2 = (tt * tt) % v
        odd = (tt % 2).astype(np.complex128)
        unit = 2 * _eps(v) * math.sqrt(v)
        for i, s in enumerate(ss):
            c = (-mod_inv(8 * s, v)) % v
            j = jacobi(2 * s, v) if v > 1 else 1
            out[i] = unit * j * odd * roots[(c * t2) % v]
    else:
        m = 4 * u
        roots = np.exp(2j * np.pi * np.arange(m) / m)
        t2 = (tt * tt) % m
        even = (1 - tt % 2).astype(np.complex128)
        unit = (1 + 1j) * math.sqrt(u)
        for i, s in enumerate(ss):
            c = (-mod_inv(s, m)) % m
            j = jacobi(u, s) if s > 1 else 1
            out[i] = unit / _eps(s) * j * even * roots[(c * t2) % m]
    return ss, out
