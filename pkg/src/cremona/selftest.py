"""Seeded property checks run by ``cremona selftest`` and ``cremona giz-check``."""

from __future__ import annotations

import random

from .exactnum import QQ


def _case_seed(master, name, k):
    # deterministic per-case seed derived from the master seed
    return random.Random(f"{master}:{name}:{k}").getrandbits(32)


def random_symmetric(rng, n, K=QQ, bound=9):
    from .gizaction import mat_inverse

    while True:
        a = [[K(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a[i][j] = a[j][i] = K(rng.randint(-bound, bound))
        if mat_inverse(a) is not None:
            return a


def random_triple(rng, n, K=QQ):
    from .gizaction import SymTriple

    return SymTriple(n, *(random_symmetric(rng, n, K) for _ in range(3)))


def giz_checks(seed, K=QQ, sizes=(1, 2, 3, 4), count=50):
    """Relators fix random triples ((sigma h)^3 modulo its congruence witness); identity check on pairs."""
    from .errors import SingularComponent, SingularInput
    from .generators import relator
    from .gizaction import (
        giz_act_word,
        giz_check_rel5_identity,
        giz_congruence,
        giz_rel5_witness,
        mat_inverse,
        mat_sub,
    )

    out = {}
    for n in sizes:
        rng = random.Random(_case_seed(seed, "giz", n))
        checked = failed = skipped = 0
        for _ in range(count):
            T = random_triple(rng, n, K)
            for kind in (1, 2, 3, 4, 5):
                r = relator(kind, rng, K, jonquieres=False)
                try:
                    got = giz_act_word(r, T)
                except SingularComponent:
                    skipped += 1
                    continue
                want = giz_congruence(giz_rel5_witness(T), T) if kind == 5 else T
                checked += 1
                failed += got != want
        pairs = pairs_ok = 0
        while pairs < count:
            a1, a3 = random_symmetric(rng, n, K), random_symmetric(rng, n, K)
            try:
                ok = giz_check_rel5_identity(a1, a3)
            except SingularInput:
                continue
            pairs += 1
            pairs_ok += ok
        out[f"n={n}"] = {
            "relator_checks": checked,
            "relator_failures": failed,
            "skipped_singular": skipped,
            "identity_pairs": pairs,
            "identity_holds": pairs_ok,
            "passed": failed == 0 and pairs_ok == pairs,
        }
    return out


def run_selftest(seed, K=QQ, count=20):
    from .checks import composition_check, relation_suite
    from .generators import composition_pair, deg1_instance, deg2_instance, identity_word
    from .rewrite import rewrite_deg1, rewrite_deg2, simplify_identity_word, verify_certificate
    from .errors import Stuck

    res = {}
    rel = relation_suite(_case_seed(seed, "rel", 0), K)
    res["relations"] = {"passed": all(rel.values()), "relators": rel}

    rng = random.Random(_case_seed(seed, "comp", 0))
    bad = 0
    for k in range(count):
        p, a = composition_check(*composition_pair(rng, K, shared=k % 3))
        bad += p != a
    res["composition"] = {"passed": bad == 0, "cases": count, "mismatches": bad}

    rng = random.Random(_case_seed(seed, "lemmas", 0))
    bad = 0
    for _ in range(count):
        for gen, rw in ((deg1_instance, rewrite_deg1), (deg2_instance, rewrite_deg2)):
            bad += not verify_certificate(rw(gen(rng, K)))
    res["deg1_deg2"] = {"passed": bad == 0, "cases": 2 * count, "failures": bad}

    bad = stuck = 0
    for k in range(count):
        try:
            cert = simplify_identity_word(identity_word(_case_seed(seed, "word", k), K), k)
            bad += not (verify_certificate(cert) and cert.final == ())
        except Stuck:
            stuck += 1
    res["identity_words"] = {"passed": bad == 0, "cases": count, "failures": bad, "stuck": stuck}

    giz = giz_checks(seed, K, sizes=(1, 2, 3), count=5)
    res["gizatullin"] = {"passed": all(v["passed"] for v in giz.values()), "sizes": giz}
    return res
