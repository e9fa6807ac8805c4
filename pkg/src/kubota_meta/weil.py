"""Additive characters as exact roots of unity, quadratic character sums,
and the eighth-root index gamma(a, psi) realized by their normalized ratios.

Conventions
-----------
The reference character psi0 of each field has conductor exactly the ring
of integers:

* base:       psi0(x) = exp(2 pi i {x}_p), the p-power fractional part;
* unramified: psi0(x) = exp(2 pi i {Tr(x)}_p);
* ramified:   psi0(x) = exp(2 pi i {Tr(x / sqrt(d))}_p), the 1/sqrt(d)
  shift compensating for the nontrivial different.

The index is realized by truncated sums S(c) = sum over O/pi^k of
psi0(c y^2).  Writing a-hat for a with even uniformizer powers stripped,

    gamma(a, psi_s) = (a, s) * snap8( N(S(a-hat / pi)) / N(S(1 / pi)) ),

with N(z) = z/|z|.  The 1/pi shift puts the summand's nontrivial locus
inside the integers, where the truncated sum is exactly proportional to
its stabilized limit (higher shells cancel), so the ratio is already exact
at small k; levels k and k+1 are compared to keep that honest.  Under this
normalization gamma(u, psi0) for a unit u is the residue-field Euler sign
of u, and the product relation

    gamma(a) gamma(b) = (a, b) gamma(ab)

holds on the nose, which is what the cross-module suites verify.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    FieldMismatch,
    LevelTooSmall,
    NotASign,
    SnapFailure,
    ZeroElement,
)
from .hilbert import Sign, pair_class_keys
from .local_field import (
    FieldElement,
    LocalField,
    SquareClass,
    class_key,
    rational_mod,
    vp_fraction,
)

SNAP_TOLERANCE = 1e-9
DEFAULT_LEVEL = 2


# ---------------------------------------------------------------------------
# exact roots of unity


@dataclass(frozen=True)
class RootOfUnity:
    """exp(2 pi i exponent) with an exact rational exponent mod 1."""

    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % 1)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exponent + other.exponent)

    def is_one(self) -> bool:
        return self.exponent == 0

    @property
    def complex_value(self) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.exponent))


@dataclass(frozen=True)
class EighthRoot:
    """A root of unity whose eighth power is 1; exponent in (1/8)Z mod 1."""

    exponent: Fraction

    def __post_init__(self):
        e = self.exponent % 1
        if 8 % e.denominator:
            raise ValueError(f"{e} is not a multiple of 1/8")
        object.__setattr__(self, "exponent", e)

    def __mul__(self, other: "EighthRoot") -> "EighthRoot":
        return EighthRoot(self.exponent + other.exponent)

    @property
    def eighths(self) -> int:
        return int(self.exponent * 8)

    @property
    def label(self) -> str:
        return f"{self.eighths}/8"

    @property
    def complex_value(self) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.exponent))

    def as_sign(self) -> Sign:
        if self.exponent == 0:
            return 1
        if self.exponent == Fraction(1, 2):
            return -1
        raise NotASign(f"exp(2 pi i {self.exponent}) is not +-1")


# ---------------------------------------------------------------------------
# additive characters


@dataclass(frozen=True)
class AdditiveChar:
    """psi_scale(x) := psi0(scale * x) for the field's reference psi0."""

    field: LocalField
    scale: FieldElement

    def __post_init__(self):
        if self.scale.field != self.field:
            raise FieldMismatch("character scale must lie in the field")
        if self.scale.is_zero():
            raise ZeroElement("character scale must be nonzero")

    def scaled(self, a: FieldElement) -> "AdditiveChar":
        """The twist x -> psi(a x)."""
        return AdditiveChar(self.field, self.scale * a)


def standard_char(field: LocalField) -> AdditiveChar:
    """The reference character, conductor exactly the ring of integers."""
    return AdditiveChar(field, field.one())


def _pfrac(x: Fraction, p: int) -> Fraction:
    """p-power fractional part: the unique p-power-denominator rational in
    [0, 1) congruent to x modulo p-integral rationals."""
    if x == 0 or vp_fraction(x, p) >= 0:
        return Fraction(0)
    m = -vp_fraction(x, p)
    M = p ** m
    return Fraction(rational_mod(x * M, M), M)


def psi_eval(psi: AdditiveChar, x: FieldElement) -> RootOfUnity:
    """Evaluate the character exactly; x = 0 is allowed and gives 1."""
    if x.field != psi.field:
        raise FieldMismatch("argument lies in a different field")
    c = psi.scale * x
    f = psi.field
    if f.kind == "base":
        return RootOfUnity(_pfrac(c.a, f.p))
    if f.kind == "unram":
        return RootOfUnity(_pfrac(2 * c.a, f.p))
    # ramified: Tr(c / sqrt(d)) = 2 * (sqrt(d)-coordinate of c)
    return RootOfUnity(_pfrac(2 * c.b, f.p))


# ---------------------------------------------------------------------------
# quadratic character sums


def _char_sum(psi: AdditiveChar, a: FieldElement, k: int) -> complex:
    """sum of psi(a y^2) over a complete residue system for O/pi^k.

    The exponent of each term is a quadratic form in the residue
    coordinates; its coefficients are reduced once modulo the p-power
    denominator so the grid evaluation is pure integer arithmetic.
    """
    f = psi.field
    p = f.p
    c = psi.scale * a
    if f.kind == "base":
        coeffs = (c.a, Fraction(0), Fraction(0))
        n0, n1 = p ** k, 1
    elif f.kind == "unram":
        # residue system y0 + y1 sqrt(d), both coordinates mod p^k
        coeffs = (2 * c.a, 2 * c.a * f.d, 4 * c.b * f.d)
        n0 = n1 = p ** k
    else:
        # residue system with y0 mod p^ceil(k/2), y1 mod p^floor(k/2)
        coeffs = (2 * c.b, 2 * c.b * f.d, 4 * c.a)
        n0, n1 = p ** ((k + 1) // 2), p ** (k // 2)
    if n0 * n1 > 30_000_000:
        raise ValueError(f"residue grid at level {k} is too large to enumerate")

    vals = [vp_fraction(t, p) for t in coeffs if t]
    m = max(0, -min(vals)) if vals else 0
    if m == 0:
        return complex(n0 * n1)
    M = p ** m
    if M > 1 << 30:
        raise ValueError("character denominator too large to enumerate")
    A, B, C = (rational_mod(t * M, M) if t else 0 for t in coeffs)

    y0 = np.arange(n0, dtype=np.int64)
    q0 = (y0 * y0) % M
    if n1 == 1:
        e = (A * q0) % M
    else:
        y1 = np.arange(n1, dtype=np.int64)
        q1 = (y1 * y1) % M
        cross = (y0[:, None] * y1[None, :]) % M
        e = (A * q0[:, None] + B * q1[None, :] + C * cross) % M
        e = e.ravel()
    if M <= 4096:
        counts = np.bincount(e, minlength=M)
        roots = np.exp((2j * np.pi / M) * np.arange(M))
        return complex(counts @ roots)
    return complex(np.exp((2j * np.pi / M) * e).sum())


def gauss_sum(psi: AdditiveChar, a: FieldElement, level: int) -> complex:
    """Truncated sum of psi(a y^2) over O/pi^level, stability-checked.

    The normalized value (sum divided by its modulus) must agree at levels
    k and k+1 within 1e-9, else LevelTooSmall; a vanishing sum is reported
    the same way since it cannot be normalized.
    """
    if level < 1:
        raise LevelTooSmall("level must be at least 1")
    if a.field != psi.field:
        raise FieldMismatch("argument lies in a different field")
    s0 = _char_sum(psi, a, level)
    s1 = _char_sum(psi, a, level + 1)
    m0, m1 = abs(s0), abs(s1)
    if m0 < SNAP_TOLERANCE or m1 < SNAP_TOLERANCE:
        raise LevelTooSmall("character sum vanishes at this level")
    if abs(s0 / m0 - s1 / m1) > SNAP_TOLERANCE:
        raise LevelTooSmall(
            f"normalized sum not stable between levels {level} and {level + 1}"
        )
    return s0


# ---------------------------------------------------------------------------
# the index


def _snap_eighth(z: complex) -> EighthRoot:
    for k in range(8):
        if abs(z - cmath.exp(2j * cmath.pi * k / 8)) < SNAP_TOLERANCE:
            return EighthRoot(Fraction(k, 8))
    raise SnapFailure(f"{z!r} is not within tolerance of an eighth root")


@lru_cache(maxsize=None)
def _gamma_of_class(field: LocalField, key: tuple, level: int) -> EighthRoot:
    psi0 = standard_char(field)
    pi_inv = field.uniformizer.inverse()
    rep = SquareClass(field, key).rep
    num = gauss_sum(psi0, rep * pi_inv, level)
    den = gauss_sum(psi0, pi_inv, level)
    return _snap_eighth((num / abs(num)) / (den / abs(den)))


def weil_index(a: FieldElement, psi: AdditiveChar,
               level: int = DEFAULT_LEVEL) -> EighthRoot:
    """gamma(a, psi): an eighth root of unity, constant on square classes.

    gamma(1, psi) = 1; for a unit u and the reference character, gamma is
    the Euler sign of u's residue; scaling the character twists the value
    by a Hilbert symbol, gamma(a, psi_s) = (a, s) gamma(a, psi).
    """
    if a.is_zero():
        raise ZeroElement("index of the zero form is undefined")
    if a.field != psi.field:
        raise FieldMismatch("argument lies in a different field")
    root = _gamma_of_class(psi.field, class_key(a), level)
    if pair_class_keys(psi.field, class_key(a), class_key(psi.scale)) == -1:
        root = root * EighthRoot(Fraction(1, 2))
    return root


def chi_psi_eval(z: FieldElement, eps: Sign, psi: AdditiveChar) -> EighthRoot:
    """The genuine central character: chi_psi(z, eps) = eps * gamma(z, psi)."""
    if eps not in (1, -1):
        raise NotASign("eps must be +1 or -1")
    root = weil_index(z, psi)
    if eps == -1:
        root = root * EighthRoot(Fraction(1, 2))
    return root


def central_sign(omega_at_minus_one: complex, psi: AdditiveChar) -> Sign:
    """Compare a central character against chi_psi at -1; lands in {+1, -1}.

    Twisting the representation by x multiplies the result by (x, -1).
    """
    w = complex(omega_at_minus_one)
    if abs(abs(w) - 1.0) > SNAP_TOLERANCE:
        raise NotASign("central character value must have modulus 1")
    ref = chi_psi_eval(psi.field.elt(-1), 1, psi).complex_value
    q = w / ref
    if abs(q - 1) < SNAP_TOLERANCE:
        return 1
    if abs(q + 1) < SNAP_TOLERANCE:
        return -1
    raise NotASign(f"quotient {q!r} is not a sign")
