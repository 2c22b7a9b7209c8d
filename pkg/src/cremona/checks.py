"""Relation and lemma checks shared by the command line and the test-suite."""

from __future__ import annotations

import random

from .cremap import (
    CreMap,
    LinMap,
    cm_compose,
    cm_h,
    cm_is_identity,
    cm_mult,
    cm_sigma,
    coordinate_point,
    dj_quadratic_composition_data,
)
from .exactnum import QQ
from .generators import PERMUTATIONS, random_diagonal, random_lin


def compose_all(*maps):
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = cm_compose(f, out)
    return out


def relation_suite(seed, K=QQ, trials=50):
    """Check the five defining relator families by explicit composition; returns {name: passed}."""
    rng = random.Random(seed)
    one = K(1)
    s = cm_sigma(one)
    lin = CreMap.from_lin
    out = {}
    ok = True
    for _ in range(trials):
        g1, g2 = random_lin(rng, K), random_lin(rng, K)
        g3 = (g1 * g2).inverse()
        ok &= cm_is_identity(compose_all(lin(g1), lin(g2), lin(g3)))
    out["rel1-pgl3-multiplication"] = ok
    out["rel2-sigma-squared"] = cm_is_identity(compose_all(s, s))
    for pi in PERMUTATIONS:
        t = LinMap.perm(pi, one)
        out[f"rel3-perm-{''.join(map(str, pi))}"] = compose_all(s, lin(t)) == compose_all(lin(t), s)
    ok = True
    for _ in range(trials):
        d = lin(random_diagonal(rng, K))
        ok &= cm_is_identity(compose_all(s, d, s, d))
    out["rel4-sigma-diagonal"] = ok
    h = lin(cm_h(one))
    out["rel5-sigma-h-cubed"] = cm_is_identity(compose_all(s, h, s, h, s, h))
    return out


def composition_check(f, tau):
    """Compare predicted and actual degree and multiplicities of f o tau.

    Returns (predicted, actual) dictionaries.
    """
    data = dj_quadratic_composition_data(f, tau)
    ft = cm_compose(f, tau)
    e0 = coordinate_point(0, data.p1[0] ** 0)
    predicted = {
        "deg": data.deg,
        "mult_p0": data.mult_at_p0,
        "mult_p1": data.mult_at_p1,
        "mult_p2": data.mult_at_p2,
        "jump": data.deg - f.degree,
    }
    actual = {
        "deg": ft.degree,
        "mult_p0": cm_mult(ft, e0),
        "mult_p1": cm_mult(ft, data.p1),
        "mult_p2": cm_mult(ft, data.p2),
        "jump": ft.degree - f.degree,
    }
    return predicted, actual
