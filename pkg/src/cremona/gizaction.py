"""The rational Cremona action on triples of symmetric matrices.

A linear letter acts by taking linear combinations of the three matrices and
sigma acts by inverting each of them.  Triples are compared up to one common
scalar, which absorbs the scalar ambiguity of a matrix in PGL_3.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import SingularComponent, SingularInput
from .exactnum import Fp, format_scalar, unify


def giz_dim(n):
    if n < 1:
        raise ValueError("n must be positive")
    return (n + 1) * (n + 2) // 2 - 1


def _bareiss_inverse(a):
    """Inverse via fraction-free Gauss-Jordan elimination on [a | I].

    All intermediate divisions are exact; rational input is first scaled to an
    integer matrix so the elimination runs on integers.
    """
    n = len(a)
    scale = 1
    if all(isinstance(v, Fraction) for row in a for v in row):
        scale = lcm(*(v.denominator for row in a for v in row))
        a = [[int(v * scale) for v in row] for row in a]
    one = 1 if not isinstance(a[0][0], Fp) else a[0][0] ** 0
    m = [list(row) + [one if i == j else 0 * one for j in range(n)] for i, row in enumerate(a)]
    prev = one
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k] != 0), None)
        if piv is None:
            return None
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        mk = m[k]
        for i in range(n):
            if i == k:
                continue
            mi = m[i]
            f = mi[k]
            for j in range(2 * n):
                if j != k:
                    v = mk[k] * mi[j] - f * mk[j]
                    mi[j] = v // prev if isinstance(v, int) else v / prev
            mi[k] = 0 * one
        prev = mk[k]
    # every diagonal entry of the left block now equals +-det(a)
    out = []
    for i in range(n):
        di = m[i][i]
        row = []
        for j in range(n):
            v = m[i][n + j]
            row.append(Fraction(v * scale, di) if isinstance(v, int) else v / di)
        out.append(row)
    return out


def mat_inverse(a):
    """Exact inverse, or None if the matrix is singular."""
    return _bareiss_inverse([list(r) for r in a])


def mat_mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), 0 * a[0][0]) for j in range(n)] for i in range(n)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in r] for r in a]


def is_symmetric(a):
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


class SymTriple:
    """(A1, A2, A3) of symmetric n x n matrices, scaled so the first nonzero entry is 1."""

    __slots__ = ("n", "mats")

    def __init__(self, n, a1, a2, a3):
        mats = [[list(r) for r in a] for a in (a1, a2, a3)]
        if any(len(a) != n or any(len(r) != n for r in a) for a in mats):
            raise ValueError(f"expected three {n}x{n} matrices")
        flat = unify(v for a in mats for r in a for v in r)
        it = iter(flat)
        mats = [[[next(it) for _ in range(n)] for _ in range(n)] for _ in range(3)]
        for k, a in enumerate(mats, 1):
            if not is_symmetric(a):
                raise ValueError(f"A{k} is not symmetric")
        lead = next((v for v in flat if v != 0), None)
        if lead is None:
            raise ValueError("the zero triple is not a point")
        inv = 1 / lead
        self.n = n
        self.mats = tuple(tuple(tuple(v * inv for v in r) for r in a) for a in mats)

    def __eq__(self, other):
        return isinstance(other, SymTriple) and self.n == other.n and self.mats == other.mats

    def __hash__(self):
        return hash(self.mats)

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join("[" + ", ".join(format_scalar(v) for v in r) + "]" for r in a) + "]" for a in self.mats
        )
        return f"SymTriple(n={self.n}: {body})"


def giz_act_lin(g, T):
    """Component i of the image is sum_j g[i][j] A_j."""
    zero = 0 * T.mats[0][0][0]
    out = []
    for row in g.m:
        acc = [[zero] * T.n for _ in range(T.n)]
        for c, a in zip(row, T.mats):
            if c != 0:
                acc = mat_add(acc, mat_scale(a, c))
        out.append(acc)
    return SymTriple(T.n, *out)


def giz_act_sigma(T):
    out = []
    for k, a in enumerate(T.mats, 1):
        inv = mat_inverse(a)
        if inv is None:
            raise SingularComponent(k)
        out.append(inv)
    return SymTriple(T.n, *out)


def giz_act_word(w, T):
    """Apply the letters of w from right to left; errors carry the letter's index."""
    for pos in range(len(w) - 1, -1, -1):
        letter = w[pos]
        if letter.g is None:
            try:
                T = giz_act_sigma(T)
            except SingularComponent as e:
                raise SingularComponent(e.component, pos) from None
        else:
            T = giz_act_lin(letter.g, T)
    return T


def giz_check_rel5_identity(a1, a3):
    """(A3^-1 - A1^-1)^-1 == A3 - A3 (A3 - A1)^-1 A3, exactly."""
    i1, i3 = mat_inverse(a1), mat_inverse(a3)
    if i1 is None or i3 is None:
        raise SingularInput("A1 and A3 must be invertible")
    diff = mat_inverse(mat_sub(a3, a1))
    if diff is None:
        raise SingularInput("A3 - A1 is singular")
    lhs = mat_inverse(mat_sub(i3, i1))
    if lhs is None:
        raise SingularInput("A3^-1 - A1^-1 is singular")
    rhs = mat_sub(a3, mat_mul(mat_mul(a3, diff), a3))
    return lhs == rhs


def giz_congruence(c, T):
    """The triple (C A1 C^T, C A2 C^T, C A3 C^T)."""
    ct = [list(r) for r in zip(*c)]
    return SymTriple(T.n, *(mat_mul(mat_mul(c, a), ct) for a in T.mats))


def giz_rel5_witness(T):
    """C with (sigma h)^3 . T = C T C^T up to scalar, namely C = A3^-1.

    On representatives the relator (sigma h)^3 is the identity only modulo
    simultaneous congruence: sigma h sigma and h sigma h differ by conjugation
    with the third matrix.  For n = 1 congruence is a scalar and disappears.
    """
    c = mat_inverse(T.mats[2])
    if c is None:
        raise SingularComponent(3)
    return c
