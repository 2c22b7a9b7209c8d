from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cremona.errors import DegreeMismatch, ZeroPolynomial
from cremona.exactnum import GF
from cremona.hpoly import HPoly, hp_add, hp_div_exact, hp_gcd, hp_mul, hp_order_at_origin, hp_substitute
from cremona.parsing import parse_poly

x, y, z = (HPoly.var(v) for v in "xyz")
X, Y, Z = sympy.symbols("x y z")


def P(text):
    return parse_poly(text)


@st.composite
def hpolys(draw, degree=None, max_degree=3, max_terms=5):
    d = draw(st.integers(0, max_degree)) if degree is None else degree
    monos = [(i, j, d - i - j) for i in range(d + 1) for j in range(d + 1 - i)]
    n = draw(st.integers(1, min(max_terms, len(monos))))
    chosen = draw(st.lists(st.sampled_from(monos), min_size=n, max_size=n, unique=True))
    coeffs = draw(st.lists(st.integers(-4, 4).filter(bool), min_size=n, max_size=n))
    return HPoly({e: Fraction(c) for e, c in zip(chosen, coeffs)})


def to_sympy(f):
    return sum((sympy.Rational(c.numerator, c.denominator) * X ** i * Y ** j * Z ** k for (i, j, k), c in f.terms.items()), sympy.Integer(0))


def test_product_examples():
    assert y * z * (x * z) == P("x*y*z^2")
    assert hp_add(P("z-x"), x) == z
    assert hp_mul(P("z-x"), P("z-y")) == P("z^2 - x*z - y*z + x*y")


def test_substitute_examples():
    sig = (y * z, x * z, x * y)
    assert hp_substitute(x * y, *sig) == P("x*y*z^2")
    assert hp_substitute(x, *sig) == y * z
    assert hp_substitute(P("z-x"), *sig) == P("x*y - y*z")


def test_substitute_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        hp_substitute(x, x, y * y, z)


def test_add_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        hp_add(x, y * z)


def test_inhomogeneous_terms_rejected():
    with pytest.raises(DegreeMismatch):
        HPoly({(1, 0, 0): 1, (0, 0, 2): 1})


def test_gcd_examples():
    assert hp_gcd(P("x^2*y*z"), P("x*y^2*z")) == P("x*y*z")
    assert hp_gcd(P("z-x"), P("z-y")).degree == 0
    f = P("2*x^2 - 4*y*z")
    assert hp_gcd(f, f) == P("x^2 - 2*y*z")
    with pytest.raises(ZeroPolynomial):
        hp_gcd(HPoly(), HPoly())


def test_order_at_origin_examples():
    assert hp_order_at_origin(y * z, 2) == 1
    assert hp_order_at_origin(z * z, 2) == 0
    assert hp_order_at_origin(x * y, 2) == 2
    with pytest.raises(ZeroPolynomial):
        hp_order_at_origin(HPoly(), 0)


@given(hpolys(), hpolys())
def test_mul_degree_additive(f, g):
    fg = hp_mul(f, g)
    assert fg.degree == f.degree + g.degree
    assert all(sum(e) == fg.degree and c != 0 for e, c in fg.terms.items())
    assert sympy.expand(to_sympy(fg) - to_sympy(f) * to_sympy(g)) == 0


@given(hpolys(), hpolys(degree=2), hpolys(degree=2), hpolys(degree=2))
@settings(max_examples=50)
def test_substitute_matches_sympy(f, a, b, c):
    got = hp_substitute(f, a, b, c)
    want = to_sympy(f).subs({X: to_sympy(a), Y: to_sympy(b), Z: to_sympy(c)}, simultaneous=True)
    assert sympy.expand(to_sympy(got) - want) == 0


@given(hpolys(max_degree=2), hpolys(max_degree=2), hpolys(max_degree=2))
@settings(max_examples=60, deadline=None)
def test_gcd_divides_and_cofactors_coprime(f, g, h):
    a, b = hp_mul(f, g), hp_mul(f, h)
    d = hp_gcd(a, b)
    ca, cb = hp_div_exact(a, d), hp_div_exact(b, d)
    assert hp_gcd(ca, cb).degree == 0
    # f divides the gcd
    hp_div_exact(d, f)
    # both algorithms agree, and agree with sympy up to scalar
    assert hp_gcd(a, b, algorithm="prs") == d
    s = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), X, Y, Z)
    assert s.total_degree() == d.degree
    assert sympy.expand(to_sympy(d) * s.LC() - s.as_expr()) == 0


def test_gcd_over_prime_field():
    K = GF()
    f = parse_poly("x + 2*y - z", K)
    g = parse_poly("x*y - z^2", K)
    h = parse_poly("y + z", K)
    d = hp_gcd(hp_mul(f, g), hp_mul(f, h))
    assert d == f
