"""Seeded random instances: de Jonquieres matrices, relator words, identity words."""

from __future__ import annotations

import random

from .cremap import LinMap, cm_h
from .errors import SingularMatrix
from .exactnum import QQ
from .rewrite import SIGMA, Lin, word_eval, word_inverse


def random_scalar(rng, K, bound=5, nonzero=False):
    while True:
        v = K(rng.randint(-bound, bound))
        if v != 0 or not nonzero:
            return v


def random_lin(rng, K=QQ, bound=5):
    while True:
        rows = [[random_scalar(rng, K, bound) for _ in range(3)] for _ in range(3)]
        try:
            return LinMap(rows)
        except SingularMatrix:
            continue


def random_jonquieres_lin(rng, K=QQ, bound=5):
    """A random invertible matrix fixing [1:0:0] (first column proportional to e0)."""
    while True:
        rows = [[random_scalar(rng, K, bound) for _ in range(3)] for _ in range(3)]
        rows[1][0] = rows[2][0] = K(0)
        try:
            return LinMap(rows)
        except SingularMatrix:
            continue


def random_diagonal(rng, K=QQ, bound=5):
    return LinMap.diag(*(random_scalar(rng, K, bound, nonzero=True) for _ in range(3)))


PERMUTATIONS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def relator(kind, rng, K=QQ, jonquieres=True):
    """A word equal to the identity by one of the five defining relations.

    kind 1: g1 g2 (g1 g2)^-1;  2: sigma sigma;  3: sigma t sigma t^-1 for a
    coordinate permutation t;  4: sigma d sigma d for a diagonal d;
    5: (sigma h)^3.
    """
    one = K(1)
    if kind == 1:
        gen = random_jonquieres_lin if jonquieres else random_lin
        g1, g2 = gen(rng, K), gen(rng, K)
        return (Lin(g1), Lin(g2), Lin((g1 * g2).inverse()))
    if kind == 2:
        return (SIGMA, SIGMA)
    if kind == 3:
        perms = PERMUTATIONS[:2] if jonquieres else PERMUTATIONS
        t = LinMap.perm(rng.choice(perms), one)
        return (SIGMA, Lin(t), SIGMA, Lin(t.inverse()))
    if kind == 4:
        d = random_diagonal(rng, K)
        return (SIGMA, Lin(d), SIGMA, Lin(d))
    if kind == 5:
        h = Lin(cm_h(one))
        return (SIGMA, h) * 3
    raise ValueError(f"no relator family {kind}")


def random_word(rng, length, K=QQ):
    """Alternating sigma / random J-matrix letters, random starting letter."""
    out = []
    sigma_next = rng.random() < 0.5
    for _ in range(length):
        out.append(SIGMA if sigma_next else Lin(random_jonquieres_lin(rng, K)))
        sigma_next = not sigma_next
    return tuple(out)


def max_prefix_degree(w):
    return max((word_eval(w[k:]).degree for k in range(len(w))), default=1)


def identity_word(seed, K=QQ, max_letters=30, max_degree=8, max_conj=6):
    """A product of conjugated relators u r u^-1, all Lin letters in J."""
    rng = random.Random(seed)
    word = ()
    for _ in range(8):
        u = random_word(rng, rng.randint(1, max_conj), K)
        r = relator(rng.randint(1, 5), rng, K)
        piece = u + r + word_inverse(u)
        cand = word + piece
        if len(cand) > max_letters:
            if word:
                break
            continue
        if max_prefix_degree(cand) > max_degree:
            continue
        word = cand
        if rng.random() < 0.3:
            break
    if not word:
        word = relator(5, rng, K)
    return word


def square_instance(rng, K=QQ, bound=5):
    """(g1, g2, g3, g4) in J with sigma g2 sigma g1 = g4 sigma g3 sigma of degree 3.

    g2 is chosen so that sigma g2 sigma g1 has the base points [0:1:0] and
    [0:0:1]; the right-hand side then comes from factoring F o sigma.
    """
    from .cremap import ProjPoint, coordinate_point, order_base_points, cm_proper_base_points
    from .cremap import quadratic_factorization
    from .errors import CremonaError

    one = K(1)
    e = [coordinate_point(i, one) for i in range(3)]
    while True:
        g1 = random_jonquieres_lin(rng, K, bound)
        a, b = g1.apply(e[1]), g1.apply(e[2])
        if any(c == 0 for c in tuple(a) + tuple(b)):
            continue
        sa = ProjPoint([1 / c for c in a])
        sb = ProjPoint([1 / c for c in b])
        lam = [random_scalar(rng, K, bound, nonzero=True) for _ in range(3)]
        cols = [tuple(lam[0] * v for v in e[0]), tuple(lam[1] * v for v in sa), tuple(lam[2] * v for v in sb)]
        try:
            g2 = LinMap.from_columns(cols).inverse()
            F = word_eval((SIGMA, Lin(g2), SIGMA, Lin(g1)))
            if F.degree != 3:
                continue
            Fs = word_eval((SIGMA, Lin(g2), SIGMA, Lin(g1), SIGMA))
            pts = order_base_points(cm_proper_base_points(Fs))
            if len(pts) != 3:
                continue
            g4, g3 = quadratic_factorization(Fs, pts)
        except CremonaError:
            continue
        if all(g.in_jonquieres() for g in (g1, g2, g3, g4)):
            return g1, g2, g3, g4


def deg1_instance(rng, K=QQ):
    """g in J with sigma g sigma linear: a diagonal times id or the y<->z swap."""
    one = K(1)
    d = random_diagonal(rng, K)
    t = LinMap.perm(rng.choice(PERMUTATIONS[:2]), one)
    return d * t


def deg2_instance(rng, K=QQ):
    """g = t1 d1 h d2 t2 in J with deg(sigma g sigma) = 2 and no collinear base points."""
    from .rewrite import conjugate_degree

    one = K(1)
    while True:
        t1 = LinMap.perm(rng.choice(PERMUTATIONS[:2]), one)
        t2 = LinMap.perm(rng.choice(PERMUTATIONS[:2]), one)
        g = t1 * random_diagonal(rng, K) * cm_h(one) * random_diagonal(rng, K) * t2
        if conjugate_degree(g) == 2:
            return g


def random_jonquieres_map(rng, K=QQ, max_degree=4):
    """(f, word) with f = word_eval(word) a de Jonquieres map of degree 2..max_degree."""
    while True:
        w = random_word(rng, rng.randint(3, 7), K)
        f = word_eval(w)
        if 2 <= f.degree <= max_degree:
            return f, w


def composition_pair(rng, K=QQ, shared=None):
    """(f, tau) with tau a de Jonquieres quadratic map with proper rational base points.

    ``shared`` in {0, 1, 2} asks for that many base points of tau^-1 to be
    chosen among base points of f, which steers deg(f tau) - deg(f) towards
    +1, 0 or -1.
    """
    from .cremap import ProjPoint, _det3, cm_mult, coordinate_point

    one = K(1)
    e0 = coordinate_point(0, one)
    while True:
        f, w = random_jonquieres_map(rng, K)
        cands = []
        for k, letter in enumerate(w):
            # base points of sigma g o (rest) are pulled back from the right part
            if letter.g is None:
                tail = w[k + 1 :]
                inv = word_inverse(tail)
                for i in (1, 2):
                    try:
                        p = word_eval(inv).evaluate(coordinate_point(i, one))
                    except Exception:
                        p = None
                    if p is not None and p != e0 and cm_mult(f, p) >= 1:
                        cands.append(p)
        cands = list(dict.fromkeys(cands))
        want = rng.choice((0, 1, 2)) if shared is None else shared
        if len(cands) < want:
            continue
        rng.shuffle(cands)
        qs = cands[:want]
        while len(qs) < 2:
            p = ProjPoint([one, random_scalar(rng, K, 9), random_scalar(rng, K, 9, nonzero=True)])
            if cm_mult(f, p) == 0:
                qs.append(p)
        if _det3([list(e0), list(qs[0]), list(qs[1])]) == 0:
            continue
        A = LinMap.from_columns([tuple(e0), tuple(qs[0]), tuple(qs[1])])
        B = random_jonquieres_lin(rng, K)
        tau = word_eval((Lin(A), SIGMA, Lin(B)))
        return f, tau
