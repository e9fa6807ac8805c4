"""Hilbert symbol identities, checked against the classical tame formula.

The reference values come from oracles.hilbert_classical, which enumerates
Legendre symbols from scratch rather than reusing the residue code.
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kubota_meta.errors import FieldMismatch, ZeroElement
from kubota_meta.hilbert import hilbert, hilbert_via_norm, pairing_table
from kubota_meta.local_field import embed_base, make_field, square_class_reps
from oracles import hilbert_classical

Q3 = make_field(3)
Q5 = make_field(5)
E5U = make_field(5, ("unram", 2))
E5R = make_field(5, ("ram", 5))


def test_frozen_pins():
    assert hilbert(Q5.elt(2), Q5.elt(5)) == -1
    assert hilbert(Q5.elt(5), Q5.elt(5)) == 1
    assert hilbert(Q5.elt(2), Q5.elt(2)) == 1
    assert hilbert(Q3.elt(3), Q3.elt(3)) == -1
    assert hilbert(Q3.elt(-1), Q3.elt(-1)) == 1
    # (p, p) = (-1, p): sign of -1 mod p
    assert hilbert(make_field(7).elt(7), make_field(7).elt(7)) == -1
    assert hilbert(make_field(13).elt(13), make_field(13).elt(13)) == 1


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_matches_classical_formula_on_a_grid(p):
    f = make_field(p)
    vals = []
    for u in (1, 2, 3, p - 1, p + 2):
        for k in (-1, 0, 1, 2):
            vals.append(Fraction(u) * Fraction(p) ** k)
            vals.append(-Fraction(u) * Fraction(p) ** k)
    for a in vals:
        for b in vals:
            assert hilbert(f.elt(a), f.elt(b)) == hilbert_classical(a, b, p)


frac = st.fractions(min_value=-60, max_value=60, max_denominator=40)


@given(a=frac, b=frac, c=frac)
def test_bilinear_and_symmetric(a, b, c):
    xs = [Q5.elt(a), Q5.elt(b), Q5.elt(c)]
    if any(x.is_zero() for x in xs):
        return
    x, y, z = xs
    assert hilbert(x, y) == hilbert(y, x)
    assert hilbert(x * y, z) == hilbert(x, z) * hilbert(y, z)


@given(a=frac, b=frac, s=frac)
def test_square_class_invariance(a, b, s):
    x, y, t = Q5.elt(a), Q5.elt(b), Q5.elt(s)
    if x.is_zero() or y.is_zero() or t.is_zero():
        return
    assert hilbert(x * t * t, y) == hilbert(x, y)


@given(a=frac)
def test_steinberg_and_minus_self(a):
    x = Q3.elt(a)
    if x.is_zero():
        return
    assert hilbert(x, -x) == 1
    one_minus = Q3.one() - x
    if not one_minus.is_zero():
        assert hilbert(x, one_minus) == 1


@pytest.mark.parametrize("field", [Q3, Q5, E5U, E5R])
def test_pairing_table_is_a_perfect_pairing(field):
    t = pairing_table(field)
    assert all(t[i][j] == t[j][i] for i in range(4) for j in range(4))
    assert t[0] == [1, 1, 1, 1]
    for i in range(1, 4):
        assert -1 in t[i]
    # each row is a character of the four-group
    reps = square_class_reps(field)
    idx = {c.key: k for k, c in enumerate(reps)}
    for i in range(4):
        for j in range(4):
            for k in range(4):
                jk = idx[(reps[j] * reps[k]).key]
                assert t[i][jk] == t[i][j] * t[i][k]


def test_norm_route_frozen_example():
    # (2, sqrt 5) over Q5(sqrt 5): N(sqrt 5) = -5 and (2, -5) = -1 downstairs
    assert hilbert_via_norm(Q5.elt(2), E5R.elt(0, 1)) == -1
    assert hilbert(embed_base(Q5.elt(2), E5R), E5R.elt(0, 1)) == -1


@pytest.mark.parametrize("E", [E5U, E5R])
def test_norm_route_agrees_with_direct_symbol(E):
    F = E.base()
    f_vals = [F.elt(v) for v in (1, 2, 5, 10, -1, 7, Fraction(3, 5))]
    e_vals = [E.elt(1), E.elt(2), E.elt(0, 1), E.elt(1, 1), E.elt(5, 1),
              E.elt(Fraction(1, 5), 2), E.elt(-3, 4)]
    for a in f_vals:
        for b in e_vals:
            assert hilbert_via_norm(a, b) == hilbert(embed_base(a, E), b)


@pytest.mark.parametrize("E", [E5U, E5R])
def test_base_field_pairs_are_trivial_upstairs(E):
    # (a, b)_E = (a, N(b))_F = (a, b^2)_F = +1 for a, b from downstairs
    F = E.base()
    for a in (2, 5, 10, -1, 15):
        for b in (2, 5, 10, -1, 15):
            assert hilbert(embed_base(F.elt(a), E), embed_base(F.elt(b), E)) == 1
    # sanity: the same pair downstairs is not always trivial
    assert hilbert(Q5.elt(2), Q5.elt(5)) == -1


def test_domain_errors():
    with pytest.raises(FieldMismatch):
        hilbert(Q5.elt(2), Q3.elt(2))
    with pytest.raises(ZeroElement):
        hilbert(Q5.zero(), Q5.elt(1))
    with pytest.raises(FieldMismatch):
        hilbert_via_norm(E5R.elt(2), E5R.elt(0, 1))
    with pytest.raises(FieldMismatch):
        hilbert_via_norm(Q3.elt(2), E5R.elt(0, 1))
