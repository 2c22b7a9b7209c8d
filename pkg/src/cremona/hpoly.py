"""Homogeneous polynomials in x, y, z over an exact field.

Terms are stored as ``{(i, j, k): coeff}`` with ``i + j + k == degree``.  The
monomial order is graded lex with x > y > z; for a homogeneous polynomial
this is plain lex on the exponent triple, so the leading term is ``max(terms)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import DegreeMismatch, ZeroPolynomial
from .exactnum import format_scalar, unify

VARS = ("x", "y", "z")


class HPoly:
    __slots__ = ("degree", "terms", "_hash")

    def __init__(self, terms=None, degree=None):
        terms = {tuple(e): c for e, c in (terms or {}).items() if c != 0}
        if terms:
            coeffs = unify(terms.values())
            terms = dict(zip(terms.keys(), coeffs))
            degs = {sum(e) for e in terms}
            if len(degs) != 1:
                raise DegreeMismatch(f"inhomogeneous terms with degrees {sorted(degs)}")
            d = degs.pop()
            if degree is not None and degree != d:
                raise DegreeMismatch(f"terms have degree {d}, declared {degree}")
            degree = d
        self.degree = 0 if degree is None else degree
        self.terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms, degree):
        # trusted constructor: terms already pruned, homogeneous and unified
        p = cls.__new__(cls)
        p.terms = terms
        p.degree = degree
        p._hash = None
        return p

    @classmethod
    def var(cls, name, one=1):
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return cls({tuple(e): one})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps): coeff})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0, 0): c}, 0)

    @classmethod
    def linear(cls, a, b, c):
        """The linear form a*x + b*y + c*z."""
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, 1)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, HPoly):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items())) if self.terms else 0
        return self._hash

    def __repr__(self):
        return f"HPoly({str(self)!r})"

    def __str__(self):
        return format_hpoly(self)

    def coefficients(self):
        return list(self.terms.values())

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def __neg__(self):
        return HPoly._raw({e: -c for e, c in self.terms.items()}, self.degree)

    def __add__(self, other):
        return hp_add(self, other)

    def __sub__(self, other):
        return hp_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, HPoly):
            return hp_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n):
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else hp_mul(result, base)
            n >>= 1
            if n:
                base = hp_mul(base, base)
        if result is None:
            one = next(iter(self.terms.values())) ** 0 if self.terms else 1
            return HPoly.constant(one)
        return result

    def scale(self, c):
        if c == 0:
            return HPoly._raw({}, self.degree)
        return HPoly._raw({e: v * c for e, v in self.terms.items()}, self.degree)

    def monic(self):
        return hp_normalize(self)

    def evaluate(self, point):
        x, y, z = point
        total = 0
        for (i, j, k), c in self.terms.items():
            total = total + c * x ** i * y ** j * z ** k
        return total

    def substitute(self, gx, gy, gz):
        return hp_substitute(self, gx, gy, gz)

    def divides(self, other):
        try:
            hp_div_exact(other, self)
        except ValueError:
            return False
        return True

    def z_valuation(self):
        return min(e[2] for e in self.terms) if self.terms else 0

    def contains_var(self, name):
        i = VARS.index(name)
        return any(e[i] for e in self.terms)


def hp_add(f, g):
    if not f.terms:
        return g
    if not g.terms:
        return f
    if f.degree != g.degree:
        raise DegreeMismatch(f"cannot add degree {f.degree} and degree {g.degree}")
    terms = dict(f.terms)
    for e, c in g.terms.items():
        v = terms.get(e)
        if v is None:
            terms[e] = c
        else:
            v = v + c
            if v == 0:
                del terms[e]
            else:
                terms[e] = v
    return HPoly._raw(terms, f.degree)


def hp_mul(f, g):
    deg = f.degree + g.degree
    if not f.terms or not g.terms:
        return HPoly._raw({}, deg)
    terms = {}
    get = terms.get
    for (a, b, c), u in f.terms.items():
        for (i, j, k), v in g.terms.items():
            e = (a + i, b + j, c + k)
            terms[e] = get(e, 0) + u * v
    return HPoly._raw({e: c for e, c in terms.items() if c != 0}, deg)


def hp_normalize(f):
    """Scale so the graded-lex leading coefficient is 1 (zero stays zero)."""
    if not f.terms:
        return f
    _, lc = f.leading()
    if lc == 1:
        return f
    inv = 1 / lc
    return HPoly._raw({e: c * inv for e, c in f.terms.items()}, f.degree)


def _powers(p, n):
    out = [None, p]
    for _ in range(2, n + 1):
        out.append(hp_mul(out[-1], p))
    return out


def hp_substitute(f, gx, gy, gz):
    """f(gx, gy, gz); the g's must share one degree."""
    degs = {g.degree for g in (gx, gy, gz) if g.terms}
    if len(degs) > 1:
        raise DegreeMismatch(f"substituted polynomials have degrees {sorted(degs)}")
    d = degs.pop() if degs else gx.degree
    out_deg = f.degree * d
    if not f.terms:
        return HPoly._raw({}, out_deg)
    pw = [_powers(g, max(e[i] for e in f.terms)) for i, g in enumerate((gx, gy, gz))]
    acc = {}
    get = acc.get
    for e, c in f.terms.items():
        term = None
        for i in range(3):
            if e[i]:
                q = pw[i][e[i]]
                term = q if term is None else hp_mul(term, q)
        if term is None:
            acc[(0, 0, 0)] = get((0, 0, 0), 0) + c
            continue
        for m, v in term.terms.items():
            acc[m] = get(m, 0) + c * v
    return HPoly._raw({m: v for m, v in acc.items() if v != 0}, out_deg)


def hp_div_exact(f, g):
    """Quotient f / g, raising ValueError if g does not divide f."""
    if not g.terms:
        raise ZeroPolynomial("division by the zero polynomial")
    if not f.terms:
        return HPoly._raw({}, max(f.degree - g.degree, 0))
    if f.degree < g.degree:
        raise ValueError("divisor has larger degree")
    lg, lcg = g.leading()
    inv = 1 / lcg
    rem = dict(f.terms)
    quot = {}
    gitems = list(g.terms.items())
    while rem:
        lr = max(rem)
        e = (lr[0] - lg[0], lr[1] - lg[1], lr[2] - lg[2])
        if min(e) < 0:
            raise ValueError("not divisible")
        c = rem[lr] * inv
        quot[e] = c
        for (a, b, cc), v in gitems:
            m = (a + e[0], b + e[1], cc + e[2])
            nv = rem.get(m, 0) - c * v
            if nv == 0:
                rem.pop(m, None)
            else:
                rem[m] = nv
    return HPoly._raw(quot, f.degree - g.degree)


def hp_order_at_origin(f, chart):
    """Vanishing order at the coordinate point where variable ``chart`` is 1."""
    if not f.terms:
        raise ZeroPolynomial("order of the zero polynomial is undefined")
    return min(f.degree - e[chart] for e in f.terms)


# ---------------------------------------------------------------------------
# univariate helpers (coefficient lists, lowest degree first)

def _utrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _usub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _utrim(out)


def _umul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u == 0:
            continue
        for j, v in enumerate(b):
            out[i + j] += u * v
    return _utrim(out)


def _uscale(a, c):
    if c == 0:
        return []
    return [v * c for v in a]


def _udivmod(a, b):
    a = list(a)
    if len(a) < len(b):
        return [], a
    inv = 1 / b[-1]
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        q[k] = c
        if c != 0:
            for j, v in enumerate(b):
                a[k + j] -= c * v
    return _utrim(q), _utrim(a[: len(b) - 1])


def _umonic(a):
    if not a or a[-1] == 1:
        return a
    inv = 1 / a[-1]
    return [v * inv for v in a]


def _ugcd(a, b):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    return _umonic(a)


def _uexact(a, b):
    q, r = _udivmod(a, b)
    if r:
        raise ValueError("univariate division not exact")
    return q


# ---------------------------------------------------------------------------
# bivariate gcd over K[v][u], recursive content / primitive part.
# A bivariate polynomial is a list indexed by u-degree of univariate lists in v.

def _btrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _bcontent(a):
    g = []
    for c in a:
        if c:
            g = _ugcd(g, c) if g else _umonic(list(c))
            if len(g) == 1:
                break
    return g


def _bdiv_u(a, c):
    return [_uexact(x, c) if x else [] for x in a]


def _bprem(a, b):
    """Pseudo-remainder of a by b with respect to u."""
    a = [list(x) for x in a]
    n = len(b) - 1
    lcb = b[-1]
    while len(a) - 1 >= n and a:
        k = len(a) - 1 - n
        lca = a[-1]
        new = [_umul(x, lcb) for x in a]
        for j, bj in enumerate(b):
            new[k + j] = _usub(new[k + j], _umul(lca, bj))
        a = _btrim(new)
    return a


def _bgcd(a, b):
    a, b = _btrim([list(x) for x in a]), _btrim([list(x) for x in b])
    if not a:
        return b
    if not b:
        return a
    ca, cb = _bcontent(a), _bcontent(b)
    c = _ugcd(ca, cb)
    a, b = _bdiv_u(a, ca), _bdiv_u(b, cb)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            a = [[1]]
            break
        r = _bprem(a, b)
        if r:
            r = _bdiv_u(r, _bcontent(r))
        a, b = b, r
    return [_umul(x, c) for x in a]


def _to_biv(f, chart):
    """Dehomogenize at variable ``chart`` = 1; returns list-in-u of lists-in-v."""
    rest = [i for i in range(3) if i != chart]
    u, v = rest
    mu = max(e[u] for e in f.terms)
    out = [[] for _ in range(mu + 1)]
    for e, c in f.terms.items():
        row = out[e[u]]
        need = e[v] + 1
        if len(row) < need:
            row.extend([0] * (need - len(row)))
        row[e[v]] = row[e[v]] + c
    return [_utrim(r) for r in out]


def _from_biv(a, chart, extra=0):
    rest = [i for i in range(3) if i != chart]
    u, v = rest
    total = max((i + len(row) - 1 for i, row in enumerate(a) if row), default=0)
    terms = {}
    for i, row in enumerate(a):
        for j, c in enumerate(row):
            if c != 0:
                e = [0, 0, 0]
                e[u], e[v], e[chart] = i, j, total - i - j + extra
                terms[tuple(e)] = c
    return HPoly._raw(terms, total + extra)


def _monomial_gcd(f, g):
    e = [min(min(t[i] for t in f.terms), min(t[i] for t in g.terms)) for i in range(3)]
    one = next(iter(f.terms.values())) ** 0
    return HPoly._raw({tuple(e): one}, sum(e))


def hp_gcd(f, g, algorithm=None):
    """Monic greatest common divisor of two homogeneous polynomials.

    ``algorithm`` is ``"prs"`` (content / primitive-part recursion, used for
    F_p) or ``"heuristic"`` (sympy's integer heuristic gcd, the default for
    rationals, where PRS coefficient growth is prohibitive).
    """
    if not f.terms and not g.terms:
        raise ZeroPolynomial("gcd(0, 0) is undefined")
    if not f.terms:
        return hp_normalize(g)
    if not g.terms:
        return hp_normalize(f)
    one = next(iter(f.terms.values())) ** 0
    if len(f.terms) == 1 or len(g.terms) == 1:
        # a monomial's divisors are monomials
        mono, other = (f, g) if len(f.terms) == 1 else (g, f)
        m = next(iter(mono.terms))
        e = tuple(min(min(t[i] for t in other.terms), m[i]) for i in range(3))
        return HPoly._raw({e: one}, sum(e))
    m = _monomial_gcd(f, g)
    f1 = _shift(f, [min(t[i] for t in f.terms) for i in range(3)])
    g1 = _shift(g, [min(t[i] for t in g.terms) for i in range(3)])
    if algorithm is None:
        algorithm = "heuristic" if isinstance(one, Fraction) else "prs"
    if algorithm == "heuristic":
        core = _gcd_sympy(f1, g1)
    elif algorithm == "prs":
        # f1 is not divisible by z, so dehomogenizing at z loses nothing
        core = _from_biv(_bgcd(_to_biv(f1, 2), _to_biv(g1, 2)), 2)
    else:
        raise ValueError(f"unknown gcd algorithm {algorithm!r}")
    return hp_normalize(hp_mul(core, m) if m.degree else core)


@lru_cache(maxsize=1)
def _qq_ring():
    from sympy.polys.domains import QQ as SQQ
    from sympy.polys.rings import ring

    R, *_ = ring("x,y,z", SQQ)
    return R, SQQ


def _gcd_sympy(f, g):
    R, K = _qq_ring()
    a = R.from_dict({e: K(c.numerator, c.denominator) for e, c in f.terms.items()})
    b = R.from_dict({e: K(c.numerator, c.denominator) for e, c in g.terms.items()})
    h = a.gcd(b)
    terms = {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in h.items()}
    return HPoly._raw(terms, sum(next(iter(terms))))


def _shift(f, e):
    if not any(e):
        return f
    return HPoly._raw({(a - e[0], b - e[1], c - e[2]): v for (a, b, c), v in f.terms.items()}, f.degree - sum(e))


def hp_gcd_many(polys):
    g = None
    for p in polys:
        if not p.terms:
            continue
        g = hp_normalize(p) if g is None else hp_gcd(g, p)
        if g.degree == 0:
            break
    if g is None:
        raise ZeroPolynomial("gcd of zero polynomials")
    return g


# ---------------------------------------------------------------------------
# text

def _mono_str(e):
    parts = []
    for name, k in zip(VARS, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_hpoly(f):
    if not f.terms:
        return "0"
    out = []
    for e in sorted(f.terms, reverse=True):
        c = f.terms[e]
        mono = _mono_str(e)
        s = format_scalar(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
