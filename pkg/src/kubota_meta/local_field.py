"""Exact arithmetic in Q_p and its quadratic extensions at odd p.

Elements are stored as pairs of exact rationals (a, b) meaning a + b*sqrt(d),
which is dense in the completed field, so valuations, residue reduction,
norms, and square classes are all computed without any precision management.

Fields come in three kinds:

* ``base``  - Q_p itself, residue field F_p, uniformizer p.
* ``unram`` - Q_p(sqrt(d)) with d a non-square unit; residue field F_{p^2},
  uniformizer still p.
* ``ram``   - Q_p(sqrt(d)) with v_p(d) odd (normalized to 1); residue field
  F_p, uniformizer sqrt(d).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

from .errors import (
    BaseFieldHasNoProperNorm,
    DIsSquare,
    EvenResidueCharUnsupported,
    FieldMismatch,
    NotPrime,
    ZeroElement,
)

# ---------------------------------------------------------------------------
# rational helpers


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for q in range(3, isqrt(n) + 1, 2):
        if n % q == 0:
            return False
    return True


def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ZeroElement("valuation of 0 is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(x: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if x == 0:
        raise ZeroElement("valuation of 0 is undefined")
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


def rational_mod(x, m: int) -> int:
    """Reduce a p-integral rational mod m (m a power of p).

    The denominator must be coprime to m; that holds exactly when the
    rational has nonnegative p-adic valuation, which is the only situation
    this helper is used in.
    """
    if isinstance(x, int):
        return x % m
    return x.numerator * pow(x.denominator, -1, m) % m


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class LocalField:
    """Descriptor of Q_p or a quadratic extension Q_p(sqrt(d)), p odd.

    Instances are immutable and hashable; construct through
    :func:`make_field`, which validates and normalizes d.
    """

    p: int
    kind: str  # "base" | "unram" | "ram"
    d: Fraction  # 0 for base; non-square unit (unram); v_p(d) = 1 (ram)

    @property
    def is_extension(self) -> bool:
        return self.kind != "base"

    @property
    def residue_degree(self) -> int:
        return 2 if self.kind == "unram" else 1

    @property
    def ramification_index(self) -> int:
        return 2 if self.kind == "ram" else 1

    @property
    def residue_size(self) -> int:
        return self.p ** self.residue_degree

    @cached_property
    def dbar(self) -> int:
        """Residue of d mod p (unramified fields only)."""
        return rational_mod(self.d, self.p)

    def base(self) -> "LocalField":
        if self.kind == "base":
            return self
        return LocalField(self.p, "base", Fraction(0))

    # -- element constructors ------------------------------------------------

    def elt(self, a, b=0) -> "FieldElement":
        return FieldElement(self, Fraction(a), Fraction(b))

    def zero(self) -> "FieldElement":
        return FieldElement(self, Fraction(0), Fraction(0))

    def one(self) -> "FieldElement":
        return FieldElement(self, Fraction(1), Fraction(0))

    @cached_property
    def uniformizer(self) -> "FieldElement":
        if self.kind == "ram":
            return self.elt(0, 1)
        return self.elt(self.p)

    @cached_property
    def nonsquare_unit(self) -> "FieldElement":
        """Canonical non-square unit u.

        Base and ramified fields: the smallest integer >= 2 that is a
        non-square unit mod p.  Unramified fields: sqrt(d) itself when it is
        a non-square (exactly the case p = 1 mod 4); otherwise the smallest
        m >= 1 with m + sqrt(d) a non-square.  Such an m always exists: the
        norms m^2 - d hit more residues than F_p has squares.
        """
        if self.kind == "unram":
            if self.p % 4 == 1:
                return self.elt(0, 1)
            m = 1
            while True:
                cand = self.elt(m, 1)
                if class_key(cand) != (0, 0):
                    return cand
                m += 1
        n = 2
        e = (self.p - 1) // 2
        while True:
            if n % self.p != 0 and pow(n, e, self.p) == self.p - 1:
                return self.elt(n)
            n += 1

    @cached_property
    def _rep_elements(self) -> tuple:
        """Canonical square-class representatives, indexed by class key."""
        u = self.nonsquare_unit
        pi = self.uniformizer
        return (self.one(), u, pi, u * pi)

    @cached_property
    def minus_one_is_square(self) -> bool:
        # residue field F_{p^2} always contains i; F_p does iff p = 1 mod 4
        return True if self.kind == "unram" else self.p % 4 == 1

    @cached_property
    def _sign_minus_one(self) -> int:
        return 1 if self.minus_one_is_square else -1

    # -- formatting -----------------------------------------------------------

    def spec_string(self) -> str:
        if self.kind == "base":
            return f"Qp({self.p})"
        return f"Qp({self.p})[{self.kind}:{self.d}]"

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"LocalField({self.spec_string()})"


def make_field(p: int, ext_spec="base") -> LocalField:
    """Validate and build a field descriptor.

    ``ext_spec`` is ``"base"`` (or None) for Q_p, or a pair
    ``("unram", d)`` / ``("ram", d)`` with d an integer, Fraction, or
    string rational.  d is normalized: even powers of p are stripped, so a
    ramified d ends up with v_p(d) = 1 and an unramified d becomes a unit.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    if p == 2:
        raise EvenResidueCharUnsupported("p = 2 is not supported")

    if ext_spec in (None, "base"):
        return LocalField(p, "base", Fraction(0))
    try:
        kind, d_raw = ext_spec
    except (TypeError, ValueError):
        raise ValueError(f"bad extension descriptor {ext_spec!r}") from None
    if kind not in ("unram", "ram"):
        raise ValueError(f"bad extension kind {kind!r}")
    d = Fraction(d_raw)
    if d == 0:
        raise DIsSquare("d = 0 adjoins no root")
    v = vp_fraction(d, p)

    if kind == "unram":
        if v % 2 != 0:
            raise ValueError(
                f"d = {d} has odd p-valuation and describes a ramified extension"
            )
        d = d * Fraction(p) ** (-v)
        e = (p - 1) // 2
        if pow(rational_mod(d, p), e, p) != p - 1:
            raise DIsSquare(f"d = {d} is a square in Q_{p}")
        return LocalField(p, "unram", d)

    if v % 2 == 0:
        unit = d * Fraction(p) ** (-v)
        if pow(rational_mod(unit, p), (p - 1) // 2, p) == 1:
            raise DIsSquare(f"d = {d} is a square in Q_{p}")
        raise ValueError(
            f"d = {d} has even p-valuation and describes an unramified extension"
        )
    d = d * Fraction(p) ** (-(v - 1))
    return LocalField(p, "ram", d)


# ---------------------------------------------------------------------------
# elements


class FieldElement:
    """An element a + b*sqrt(d) of a :class:`LocalField`, stored exactly."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: LocalField, a: Fraction, b: Fraction = Fraction(0)):
        self.field = field
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)
        if self.b and not field.is_extension:
            raise FieldMismatch("base-field element cannot have a sqrt(d) part")

    # -- plumbing -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldMismatch(
                f"{other.field.spec_string()} element used in {self.field.spec_string()}"
            )
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, Fraction(other))
        return None

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.a == other and not self.b
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def __repr__(self) -> str:
        return format_element(self)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.b or o.b:
            return FieldElement(
                self.field,
                self.a * o.a + self.field.d * self.b * o.b,
                self.a * o.b + self.b * o.a,
            )
        return FieldElement(self.field, self.a * o.a, Fraction(0))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroElement("division by zero")
        if not self.b:
            return FieldElement(self.field, 1 / self.a)
        n = self.a * self.a - self.field.d * self.b * self.b
        return FieldElement(self.field, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "FieldElement":
        """Galois conjugate a - b*sqrt(d) (identity on the base field)."""
        return FieldElement(self.field, self.a, -self.b)


def format_element(x: FieldElement) -> str:
    """Canonical string form: ``a``, ``b*sqrt``, or ``a+b*sqrt``."""
    if not x.b:
        return str(x.a)
    if x.b == 1:
        root = "sqrt"
    elif x.b == -1:
        root = "-sqrt"
    else:
        root = f"{x.b}*sqrt"
    if not x.a:
        return root
    if x.b > 0:
        return f"{x.a}+{root}"
    return f"{x.a}{root}"


# ---------------------------------------------------------------------------
# residue field


class ResidueElement:
    """An element of the residue field F_p or F_{p^2} = F_p(sqrt(dbar)).

    Stored as a pair of integers mod p; r1 is identically 0 unless the
    field is unramified.
    """

    __slots__ = ("field", "r0", "r1")

    def __init__(self, field: LocalField, r0: int, r1: int = 0):
        self.field = field
        self.r0 = r0 % field.p
        self.r1 = r1 % field.p

    def is_zero(self) -> bool:
        return self.r0 == 0 and self.r1 == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.r0 == other % self.field.p and self.r1 == 0
        if not isinstance(other, ResidueElement):
            return NotImplemented
        return (
            self.field == other.field
            and self.r0 == other.r0
            and self.r1 == other.r1
        )

    def __hash__(self):
        return hash((self.field, self.r0, self.r1))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.r1 == 0:
            return f"{self.r0} (mod {self.field.p})"
        return f"{self.r0}+{self.r1}*sqrt ({self.field.spec_string()} residue)"

    def __mul__(self, other: "ResidueElement") -> "ResidueElement":
        p = self.field.p
        if self.field.kind == "unram":
            dbar = self.field.dbar
            return ResidueElement(
                self.field,
                (self.r0 * other.r0 + dbar * self.r1 * other.r1) % p,
                (self.r0 * other.r1 + self.r1 * other.r0) % p,
            )
        return ResidueElement(self.field, self.r0 * other.r0 % p)

    def __pow__(self, n: int) -> "ResidueElement":
        result = ResidueElement(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def euler_sign(self) -> int:
        """+1 if this nonzero residue is a square, -1 otherwise.

        Euler criterion: raise to the power (q-1)/2 where q is the residue
        field size.
        """
        if self.is_zero():
            raise ZeroElement("0 has no Euler sign")
        q = self.field.residue_size
        r = self ** ((q - 1) // 2)
        if r.r1 == 0 and r.r0 == 1:
            return 1
        if r.r1 == 0 and r.r0 == self.field.p - 1:
            return -1
        raise ArithmeticError("Euler criterion did not land in {1,-1}")


# ---------------------------------------------------------------------------
# valuation, residue reduction, square classes


def valuation(x: FieldElement) -> int:
    """Normalized additive valuation (value group Z, uniformizer -> 1)."""
    if x.is_zero():
        raise ZeroElement("valuation of 0 is undefined")
    f = x.field
    p = f.p
    if f.kind == "base":
        return vp_fraction(x.a, p)
    if f.kind == "unram":
        if not x.b:
            return vp_fraction(x.a, p)
        if not x.a:
            return vp_fraction(x.b, p)
        return min(vp_fraction(x.a, p), vp_fraction(x.b, p))
    # ramified: v(a + b*sqrt(d)) = min(2 v_p(a), 2 v_p(b) + 1); the two
    # candidates have opposite parity so the min is never a tie
    if not x.b:
        return 2 * vp_fraction(x.a, p)
    if not x.a:
        return 2 * vp_fraction(x.b, p) + 1
    return min(2 * vp_fraction(x.a, p), 2 * vp_fraction(x.b, p) + 1)


def unit_part(x: FieldElement) -> ResidueElement:
    """Residue of x * pi^(-v(x)) mod the maximal ideal; always nonzero."""
    v = valuation(x)
    f = x.field
    p = f.p
    if f.kind == "base":
        return ResidueElement(f, rational_mod(x.a * Fraction(p) ** (-v), p))
    if f.kind == "unram":
        scale = Fraction(p) ** (-v)
        return ResidueElement(
            f, rational_mod(x.a * scale, p), rational_mod(x.b * scale, p)
        )
    # ramified: after dividing by sqrt(d)^v the sqrt(d) coordinate lies in
    # the maximal ideal, so the residue is carried by one coordinate
    if v % 2 == 0:
        return ResidueElement(f, rational_mod(x.a * f.d ** (-(v // 2)), p))
    return ResidueElement(f, rational_mod(x.b * f.d ** (-((v - 1) // 2)), p))


def class_key(x: FieldElement) -> tuple:
    """Square-class invariant (v mod 2, 0 if the unit part is a square else 1).

    This pair is a group isomorphism E*/E*^2 -> (Z/2)^2 at odd p, and is
    the only data the Hilbert symbol ever consumes.
    """
    v = valuation(x)
    s = unit_part(x).euler_sign()
    return (v & 1, 0 if s == 1 else 1)


def is_square(x: FieldElement) -> bool:
    """Odd-p criterion: even valuation and unit part a residue square."""
    return class_key(x) == (0, 0)


@dataclass(frozen=True)
class SquareClass:
    """A coset of E*^2 in E*, identified by its :func:`class_key`."""

    field: LocalField
    key: tuple

    @property
    def rep(self) -> FieldElement:
        """Canonical representative, one of {1, u, pi, u*pi}."""
        return self.field._rep_elements[2 * self.key[0] + self.key[1]]

    @property
    def label(self) -> str:
        return format_element(self.rep)

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.field != other.field:
            raise FieldMismatch("square classes of different fields")
        return SquareClass(
            self.field, (self.key[0] ^ other.key[0], self.key[1] ^ other.key[1])
        )

    def __repr__(self) -> str:
        return f"[{self.label}]"


def square_class(x: FieldElement) -> SquareClass:
    return SquareClass(x.field, class_key(x))


def square_class_reps(field: LocalField) -> tuple:
    """The four classes in canonical order (1, u, pi, u*pi)."""
    return (
        SquareClass(field, (0, 0)),
        SquareClass(field, (0, 1)),
        SquareClass(field, (1, 0)),
        SquareClass(field, (1, 1)),
    )


# ---------------------------------------------------------------------------
# maps between E and F


def galois_conjugate(x: FieldElement) -> FieldElement:
    return x.conj()


def norm(x: FieldElement) -> FieldElement:
    """Norm down to the base field: N(a + b*sqrt(d)) = a^2 - d b^2."""
    f = x.field
    if not f.is_extension:
        raise BaseFieldHasNoProperNorm("norm requires a quadratic extension")
    return FieldElement(f.base(), x.a * x.a - f.d * x.b * x.b)


def trace(x: FieldElement) -> FieldElement:
    """Trace down to the base field: Tr(a + b*sqrt(d)) = 2a."""
    f = x.field
    if not f.is_extension:
        raise BaseFieldHasNoProperNorm("trace requires a quadratic extension")
    return FieldElement(f.base(), 2 * x.a)


def embed_base(f_elt: FieldElement, E: LocalField) -> FieldElement:
    """Inclusion of the base field F into E, f -> f + 0*sqrt(d)."""
    if f_elt.field == E:
        return f_elt
    if f_elt.field != E.base():
        raise FieldMismatch(
            f"{f_elt.field.spec_string()} does not embed in {E.spec_string()}"
        )
    return FieldElement(E, f_elt.a)
