"""Birational maps of the projective plane as normalized polynomial triples."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DegenerateComposition,
    DuplicatePoints,
    IrrationalBasePoint,
    SingularMatrix,
    UnsupportedDegree,
)
from .exactnum import Fp, format_scalar, unify
from .hpoly import (
    HPoly,
    hp_div_exact,
    hp_gcd,
    hp_gcd_many,
    hp_mul,
    hp_order_at_origin,
    hp_substitute,
)


def _scalar_key(a):
    if isinstance(a, Fp):
        return (a.value, 1)
    a = Fraction(a)
    return (a.numerator, a.denominator)


class ProjPoint:
    """A point of P^2; stored with its first nonzero coordinate scaled to 1."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = unify(coords)
        if len(coords) != 3:
            raise ValueError("a projective point has three coordinates")
        lead = next((c for c in coords if c != 0), None)
        if lead is None:
            raise ValueError("[0:0:0] is not a projective point")
        inv = 1 / lead
        self.coords = tuple(c * inv for c in coords)

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def sort_key(self):
        return tuple(_scalar_key(c) for c in self.coords)

    def __repr__(self):
        return "[" + ":".join(format_scalar(c) for c in self.coords) + "]"


def coordinate_point(i, one=Fraction(1)):
    c = [0, 0, 0]
    c[i] = one
    return ProjPoint(c)


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


class LinMap:
    """An element of PGL_3: [x:y:z] -> M (x, y, z)^T, canonical up to scalar.

    Row i of the matrix holds the coefficients of the i-th linear form, so
    h = [z-x : z-y : z] is ``[[-1, 0, 1], [0, -1, 1], [0, 0, 1]]``.
    """

    __slots__ = ("m",)

    def __init__(self, rows):
        flat = unify(c for row in rows for c in row)
        if len(flat) != 9:
            raise ValueError("a linear map needs a 3x3 matrix")
        rows = [flat[0:3], flat[3:6], flat[6:9]]
        if _det3(rows) == 0:
            raise SingularMatrix("matrix is not invertible")
        lead = next(c for c in flat if c != 0)
        inv = 1 / lead
        self.m = tuple(tuple(c * inv for c in row) for row in rows)

    @classmethod
    def identity(cls, one=1):
        return cls([[one, 0, 0], [0, one, 0], [0, 0, one]])

    @classmethod
    def diag(cls, a, b, c):
        return cls([[a, 0, 0], [0, b, 0], [0, 0, c]])

    @classmethod
    def perm(cls, pi, one=1):
        """The coordinate permutation [x:y:z] -> [v[pi[0]] : v[pi[1]] : v[pi[2]]]."""
        rows = [[0, 0, 0] for _ in range(3)]
        for i, j in enumerate(pi):
            rows[i][j] = one
        return cls(rows)

    @classmethod
    def from_columns(cls, cols):
        return cls([[cols[j][i] for j in range(3)] for i in range(3)])

    def __eq__(self, other):
        return isinstance(other, LinMap) and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return "LinMap([" + ", ".join("[" + ", ".join(format_scalar(c) for c in r) + "]" for r in self.m) + "])"

    def rows(self):
        return [list(r) for r in self.m]

    def det(self):
        return _det3(self.m)

    def __mul__(self, other):
        """Composition: (self * other) applies ``other`` first."""
        return LinMap(_matmul(self.m, other.m))

    def inverse(self):
        m = self.m
        adj = [
            [
                m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
                - m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3]
                for j in range(3)
            ]
            for i in range(3)
        ]
        return LinMap(adj)

    def apply(self, p):
        c = tuple(p)
        return ProjPoint([sum(self.m[i][j] * c[j] for j in range(3)) for i in range(3)])

    def forms(self):
        return tuple(HPoly.linear(*row) for row in self.m)

    @property
    def one(self):
        return self.m[0][0] ** 0

    def is_identity(self):
        return all(self.m[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))

    def is_standard_h(self):
        return all(a == b for ra, rb in zip(self.m, _H_CANON) for a, b in zip(ra, rb))

    def is_diagonal(self):
        return all(self.m[i][j] == 0 for i in range(3) for j in range(3) if i != j)

    def monomial_pattern(self):
        """pi with m[i][pi[i]] the only nonzero entry of row i, or None."""
        pi = []
        for row in self.m:
            nz = [j for j, c in enumerate(row) if c != 0]
            if len(nz) != 1:
                return None
            pi.append(nz[0])
        return tuple(pi)

    def is_permutation(self):
        pi = self.monomial_pattern()
        return pi is not None and all(self.m[i][pi[i]] == 1 for i in range(3))

    def in_jonquieres(self):
        """Fixes [1:0:0], hence preserves the pencil of lines through it."""
        return self.m[1][0] == 0 and self.m[2][0] == 0


_H_CANON = ((1, 0, -1), (0, 1, -1), (0, 0, -1))


def cm_h(one=1):
    """h = [z-x : z-y : z]."""
    return LinMap([[-one, 0, one], [0, -one, one], [0, 0, one]])


@dataclass(frozen=True)
class LinClass:
    kind: str  # Diagonal | Permutation | DiagonalTimesPermutation | General
    diagonal: LinMap | None = None
    permutation: tuple | None = None

    @property
    def perm_map(self):
        return None if self.permutation is None else LinMap.perm(self.permutation, self.diagonal.one)


def lin_classify(g):
    """Split g = d * tau (d diagonal, tau a coordinate permutation) when possible."""
    pi = g.monomial_pattern()
    if pi is None:
        return LinClass("General")
    d = LinMap.diag(*(g.m[i][pi[i]] for i in range(3)))
    if pi == (0, 1, 2):
        return LinClass("Diagonal", d, pi)
    if d.is_identity():
        return LinClass("Permutation", d, pi)
    return LinClass("DiagonalTimesPermutation", d, pi)


def cm_is_identity(f):
    return f.degree == 1 and all(
        c.terms == {e: 1} for c, e in zip(f.comps, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    )


class CreMap:
    """A plane birational map [f0 : f1 : f2] with coprime, jointly normalized components."""

    __slots__ = ("comps", "degree", "_hash")

    def __init__(self, comps, reduce=True):
        comps = tuple(comps)
        if len(comps) != 3:
            raise ValueError("a plane map has three components")
        nonzero = [c for c in comps if c.terms]
        if not nonzero:
            raise DegenerateComposition("all three components vanish identically")
        degs = {c.degree for c in nonzero}
        if len(degs) != 1:
            raise ValueError(f"components have different degrees {sorted(degs)}")
        if reduce:
            g = hp_gcd_many(nonzero)
            if g.degree:
                comps = tuple(hp_div_exact(c, g) if c.terms else HPoly._raw({}, c.degree - g.degree) for c in comps)
        lead = next(c for c in comps if c.terms).leading()[1]
        if lead != 1:
            inv = 1 / lead
            comps = tuple(c.scale(inv) for c in comps)
        self.comps = comps
        self.degree = next(c for c in comps if c.terms).degree
        self._hash = None

    @classmethod
    def from_lin(cls, g):
        return cls(g.forms(), reduce=False)

    def __eq__(self, other):
        return isinstance(other, CreMap) and self.comps == other.comps

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.comps)
        return self._hash

    def __repr__(self):
        return "[" + " : ".join(str(c) for c in self.comps) + "]"

    def to_lin(self):
        if self.degree != 1:
            raise ValueError(f"map of degree {self.degree} is not linear")
        rows = [[c.terms.get(e, 0) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))] for c in self.comps]
        return LinMap(rows)

    def evaluate(self, p):
        """Image of a point, or None if p is a base point."""
        vals = [c.evaluate(tuple(p)) if c.terms else 0 for c in self.comps]
        if all(v == 0 for v in vals):
            return None
        return ProjPoint(vals)

    def __call__(self, other):
        return cm_compose(self, other)


def cm_from_lin(g):
    return CreMap.from_lin(g)


@lru_cache(maxsize=None)
def _sigma_q():
    x, y, z = (HPoly.var(v) for v in "xyz")
    return CreMap((y * z, x * z, x * y), reduce=False)


def cm_sigma(one=None):
    """The standard quadratic involution [yz : xz : xy]."""
    if one is None or isinstance(one, (int, Fraction)):
        return _sigma_q()
    x, y, z = (HPoly.var(v, one) for v in "xyz")
    return CreMap((y * z, x * z, x * y), reduce=False)


def cm_identity(one=None):
    x, y, z = (HPoly.var(v, 1 if one is None else one) for v in "xyz")
    return CreMap((x, y, z), reduce=False)


def _is_sigma(f):
    return f.degree == 2 and all(
        c.terms == {e: 1} for c, e in zip(f.comps, ((0, 1, 1), (1, 0, 1), (1, 1, 0)))
    )


def sigma_after(g):
    """sigma o g, cancelling the common factor via pairwise gcds.

    For a coprime triple (g0, g1, g2) the common factor of
    (g1 g2, g0 g2, g0 g1) is gcd(g0,g1) gcd(g0,g2) gcd(g1,g2).
    """
    a, b, c = g.comps
    g01, g02, g12 = hp_gcd(a, b), hp_gcd(a, c), hp_gcd(b, c)
    a1 = hp_div_exact(hp_div_exact(a, g01), g02)
    b1 = hp_div_exact(hp_div_exact(b, g01), g12)
    c1 = hp_div_exact(hp_div_exact(c, g02), g12)
    # e.g. b*c / common = b1*c1*g12
    comps = (hp_mul(hp_mul(b1, c1), g12), hp_mul(hp_mul(a1, c1), g02), hp_mul(hp_mul(a1, b1), g01))
    return CreMap(comps, reduce=False)


def cm_compose(f, g):
    """f o g (apply g first), normalized to a coprime triple."""
    if g.degree == 1:
        return CreMap(tuple(hp_substitute(c, *g.comps) for c in f.comps), reduce=False)
    if f.degree == 1:
        rows = f.to_lin().m
        comps = []
        for row in rows:
            acc = HPoly._raw({}, g.degree)
            for coef, gc in zip(row, g.comps):
                if coef != 0:
                    acc = acc + gc.scale(coef)
            comps.append(acc)
        return CreMap(comps, reduce=False)
    if _is_sigma(f):
        return sigma_after(g)
    if _is_sigma(g):
        one = next(iter(f.comps[0].terms.values())) ** 0
        x, y, z = (HPoly.var(v, one) for v in "xyz")
        return CreMap(tuple(hp_substitute(c, y * z, x * z, x * y) for c in f.comps))
    return CreMap(tuple(hp_substitute(c, *g.comps) for c in f.comps))


def cm_degree(f):
    return f.degree


def cm_equal(f, g):
    return f == g


def _chart_map(p):
    """A linear map sending [0:0:1] to p."""
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for a, b in ((0, 1), (0, 2), (1, 2)):
        cols = [e[a], e[b], tuple(p)]
        rows = [[cols[j][i] for j in range(3)] for i in range(3)]
        if _det3(rows) != 0:
            return rows
    raise AssertionError("unreachable: p is nonzero")


def cm_mult(f, p):
    """Multiplicity of the linear system of f at p (min vanishing order of the components)."""
    one = p[0] ** 0
    rows = [[one * v for v in row] for row in _chart_map(p)]
    forms = [HPoly.linear(*row) for row in rows]
    return min(hp_order_at_origin(hp_substitute(c, *forms), 2) for c in f.comps if c.terms)


def cm_collinear(p, q, r):
    if p == q or p == r or q == r:
        raise DuplicatePoints(f"points are not pairwise distinct: {p}, {q}, {r}")
    return _det3([list(p), list(q), list(r)]) == 0


def find_collinear_triple(points):
    """First collinear triple among distinct points, or None."""
    pts = list(dict.fromkeys(points))
    for a, b, c in itertools.combinations(pts, 3):
        if _det3([list(a), list(b), list(c)]) == 0:
            return (a, b, c)
    return None


def cm_is_dejonquieres(f):
    """True iff f preserves the pencil of lines through [1:0:0]."""
    f1, f2 = f.comps[1], f.comps[2]
    if not f1.terms or not f2.terms:
        return False
    g = hp_gcd(f1, f2)
    a, b = hp_div_exact(f1, g), hp_div_exact(f2, g)
    if a.degree != 1 or b.degree != 1:
        return False
    if a.contains_var("x") or b.contains_var("x"):
        return False
    ay, az = a.terms.get((0, 1, 0), 0), a.terms.get((0, 0, 1), 0)
    by, bz = b.terms.get((0, 1, 0), 0), b.terms.get((0, 0, 1), 0)
    return ay * bz - az * by != 0


# ---------------------------------------------------------------------------
# base points of quadratic maps

def _sympy_domain(one):
    from sympy import GF as SGF, QQ as SQQ

    if isinstance(one, Fp):
        return SGF(one.p)
    return SQQ


def _to_sympy_coeff(c, dom):
    if isinstance(c, Fp):
        return dom(c.value)
    c = Fraction(c)
    return dom(c.numerator, c.denominator) if dom.is_Field and not dom.is_FiniteField else dom(c.numerator) / dom(c.denominator)


def _from_sympy_coeff(c, one):
    if isinstance(one, Fp):
        return Fp(int(c), one.p)
    return Fraction(int(c.numerator), int(c.denominator))


def _univariate_roots(coeffs, one):
    """Roots in the base field of a univariate polynomial given low-to-high.

    Raises IrrationalBasePoint if an irreducible factor of degree > 1 remains.
    """
    from sympy import Poly, symbols

    t = symbols("t")
    dom = _sympy_domain(one)
    poly = Poly.from_list([_to_sympy_coeff(c, dom) for c in reversed(coeffs)], t, domain=dom)
    if poly.degree() <= 0:
        return []
    roots = []
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() > 1:
            raise IrrationalBasePoint(f"common zero only over an extension field ({fac.as_expr()})")
        a, b = fac.all_coeffs()
        roots.append(_from_sympy_coeff(-b, one) / _from_sympy_coeff(a, one))
    return roots


def _univ(poly_terms, var_index, one):
    """Coefficient list (low->high) of a polynomial dict in one variable."""
    n = max((e for e in poly_terms), default=0)
    out = [one * 0] * (n + 1)
    for e, c in poly_terms.items():
        out[e] = out[e] + c
    return out


def _ugcd(a, b):
    from .hpoly import _ugcd as g

    return g(a, b)


def _restrict(c, fixed):
    """Substitute fixed coordinates {index: value}; returns {exp_of_free_var: coeff}."""
    free = [i for i in range(3) if i not in fixed]
    assert len(free) == 1
    out = {}
    for e, v in c.terms.items():
        val = v
        for i, x in fixed.items():
            val = val * x ** e[i]
        out[e[free[0]]] = out.get(e[free[0]], 0) + val
    return out


def _x_coeffs(P, one):
    """P(x, y, 1) as a list (low to high in x) of y-coefficient lists."""
    from .hpoly import _utrim

    deg = max((e[0] for e in P.terms), default=0)
    out = [[] for _ in range(deg + 1)]
    for (i, j, _k), c in P.terms.items():
        row = out[i]
        while len(row) <= j:
            row.append(one * 0)
        row[j] = row[j] + c
    return [_utrim(r) for r in out]


def _udet(m):
    """Determinant of a small square matrix of univariate polynomials (Laplace)."""
    from .hpoly import _umul, _usub

    n = len(m)
    if n == 1:
        return list(m[0][0])
    acc = []
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = _umul(m[0][j], _udet(minor))
        acc = _usub(acc, term) if j % 2 else _usub(acc, _usub([], term))
    return acc


def _resultant_y(F, G, one):
    """Res_x(F(x,y,1), G(x,y,1)) as a coefficient list in y, via the Sylvester matrix."""
    from .hpoly import _umul

    a, b = _x_coeffs(F, one), _x_coeffs(G, one)
    while len(a) > 1 and not a[-1]:
        a.pop()
    while len(b) > 1 and not b[-1]:
        b.pop()
    m, n = len(a) - 1, len(b) - 1
    if m == 0 and n == 0:
        return [one]
    if m == 0:
        out = [one]
        for _ in range(n):
            out = _umul(out, a[0])
        return out
    if n == 0:
        out = [one]
        for _ in range(m):
            out = _umul(out, b[0])
        return out
    size = m + n
    rows = []
    for i in range(n):
        row = [[] for _ in range(size)]
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [[] for _ in range(size)]
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return _udet(rows)


def cm_proper_base_points(f):
    """Rational common zeros of the components of a map of degree <= 2."""
    if f.degree == 1:
        return ()
    if f.degree > 2:
        raise UnsupportedDegree(f"base-point extraction needs degree <= 2, got {f.degree}")
    one = next(iter(f.comps[0].terms.values())) ** 0 if f.comps[0].terms else next(
        iter(next(c for c in f.comps if c.terms).terms.values())) ** 0
    zero = one * 0
    found = set()
    # the point [1:0:0]
    if all(c.evaluate((one, zero, zero)) == 0 for c in f.comps):
        found.add(ProjPoint((one, zero, zero)))
    # points [x:1:0]
    g = []
    for c in f.comps:
        u = _univ(_restrict(c, {1: one, 2: zero}), 0, one)
        g = _ugcd(g, u) if g else _ugcd(u, [])
    g = [v for v in g]
    while g and g[-1] == 0:
        g.pop()
    if len(g) > 1:
        for r in _univariate_roots(g, one):
            found.add(ProjPoint((r, one, zero)))
    # affine points [x:y:1]
    combos = [(1, 2, 3), (3, 1, 2), (2, 3, 1), (1, 5, 7), (7, 1, 5)]
    R = None
    used = 0
    for lam in combos:
        F = f.comps[0].scale(one * lam[0]) + f.comps[1].scale(one * lam[1]) + f.comps[2].scale(one * lam[2])
        rs = [_resultant_y(F, c, one) for c in f.comps if c.terms]
        if any(not any(v != 0 for v in r) for r in rs):
            continue
        cur = rs[0]
        for r in rs[1:]:
            cur = _ugcd(cur, r)
        R = cur if R is None else _ugcd(R, cur)
        used += 1
        if used == 2:
            break
    if R is None:
        raise DegenerateComposition("could not find a generic member of the linear system")
    if len(R) > 1:
        for y0 in _univariate_roots(R, one):
            h = []
            for c in f.comps:
                u = _univ(_restrict(c, {1: y0, 2: one}), 0, one)
                while u and u[-1] == 0:
                    u.pop()
                h = _ugcd(h, u) if h else _ugcd(u, [])
            if not h:
                continue
            if len(h) > 1:
                for x0 in _univariate_roots(h, one):
                    found.add(ProjPoint((x0, y0, one)))
    return tuple(sorted(found, key=ProjPoint.sort_key))


def quadratic_factorization(q, points=None):
    """Write a quadratic map with three proper base points as A o sigma o B.

    ``points`` fixes the order of the base points; B sends ``points[i]`` to the
    i-th coordinate point, and A sends the i-th coordinate point to the base
    point of the inverse map whose pencil corresponds to the pencil through
    ``points[i]``.  Returns (A, B).
    """
    if q.degree != 2:
        raise UnsupportedDegree("quadratic_factorization needs a degree-2 map")
    if points is None:
        points = order_base_points(cm_proper_base_points(q))
    if len(points) != 3:
        raise IrrationalBasePoint(f"expected three proper base points, found {len(points)}")
    alpha = LinMap.from_columns([tuple(p) for p in points])
    qa = cm_compose(q, CreMap.from_lin(alpha))
    basis = ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    rows = []
    for c in qa.comps:
        if any(e not in basis for e in c.terms):
            raise ValueError("points are not the base points of the map")
        rows.append([c.terms.get(e, 0) for e in basis])
    return LinMap(rows), alpha.inverse()


def order_base_points(points):
    """Put [1:0:0] first when present."""
    pts = list(points)
    p0 = [p for p in pts if p.coords[1] == 0 and p.coords[2] == 0]
    return tuple(p0 + [p for p in pts if p not in p0])


@dataclass(frozen=True)
class CompositionData:
    deg: int
    mult_at_p0: int
    mult_at_p1: int
    mult_at_p2: int
    p1: ProjPoint
    p2: ProjPoint
    q1: ProjPoint
    q2: ProjPoint


def dj_quadratic_composition_data(f, tau):
    """Predicted degree and multiplicities of f o tau for de Jonquieres f, tau.

    The base points q1, q2 of tau^-1 are matched to p1, p2 through the
    factorization tau = A sigma B: sigma keeps each pencil through a
    coordinate point, so the pencil through p_i = B^-1(e_i) lands on the
    pencil through q_i = A(e_i).
    """
    if tau.degree != 2:
        raise UnsupportedDegree("tau must be quadratic")
    pts = order_base_points(cm_proper_base_points(tau))
    if len(pts) != 3 or pts[0] != coordinate_point(0, pts[0][0]):
        raise IrrationalBasePoint("tau needs three proper base points including [1:0:0]")
    A, _ = quadratic_factorization(tau, pts)
    one = pts[0][0]
    q0, q1, q2 = (A.apply(coordinate_point(i, one)) for i in range(3))
    if q0 != pts[0]:
        raise ValueError("tau is not de Jonquieres")
    d = f.degree
    m1, m2 = cm_mult(f, q1), cm_mult(f, q2)
    return CompositionData(
        deg=d + 1 - m1 - m2,
        mult_at_p0=d - m1 - m2,
        mult_at_p1=1 - m2,
        mult_at_p2=1 - m1,
        p1=pts[1],
        p2=pts[2],
        q1=q1,
        q2=q2,
    )
