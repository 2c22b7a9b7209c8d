"""Words in sigma and PGL_3, the relation moves, and certificate-producing rewrites.

A word ``(f1, ..., fn)`` denotes the map f1 o ... o fn: the rightmost letter is
applied first.  Every rewrite is recorded as a list of :class:`RewriteStep`
objects that :func:`verify_certificate` can replay without any other context.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .cremap import (
    CreMap,
    LinMap,
    ProjPoint,
    cm_compose,
    cm_h,
    cm_identity,
    cm_is_identity,
    cm_mult,
    cm_proper_base_points,
    cm_sigma,
    coordinate_point,
    find_collinear_triple,
    lin_classify,
    order_base_points,
    quadratic_factorization,
    _det3,
)
from .errors import (
    CollinearBasePoints,
    CremonaError,
    GenericityFailure,
    HypothesisFailed,
    NotDeJonquieres,
    NotIdentity,
    PatternMismatch,
    Stuck,
)

ELEMENTARY_MOVES = ("M1-merge-lin", "M2-sigma-sigma", "M3-sigma-perm", "M4-sigma-diag", "M5-sigma-h")
MACRO_MOVES = ("L-deg1", "L-deg2", "L-square-triangle")
MOVES = ELEMENTARY_MOVES + MACRO_MOVES


class Letter:
    """Either sigma (``g is None``) or a linear letter Lin(g)."""

    __slots__ = ("g",)

    def __init__(self, g=None):
        if g is not None and not isinstance(g, LinMap):
            raise TypeError("Lin letters wrap a LinMap")
        self.g = g

    @property
    def is_sigma(self):
        return self.g is None

    def __eq__(self, other):
        return isinstance(other, Letter) and self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def __repr__(self):
        from .parsing import format_letter

        return format_letter(self)


SIGMA = Letter()


def Lin(g):
    return Letter(g)


def word_one(w, default=None):
    """The field's unit for the Lin letters of w (Fraction(1) if there are none)."""
    for letter in w:
        if letter.g is not None:
            return letter.g.one
    return Fraction(1) if default is None else default


@lru_cache(maxsize=1 << 16)
def _suffix_eval(w, one):
    first, rest = w[0], w[1:]
    if first.g is not None and rest and rest[0].g is not None:
        return _suffix_eval((Lin(first.g * rest[0].g),) + rest[1:], one)
    head = CreMap.from_lin(first.g) if first.g is not None else cm_sigma(one)
    if not rest:
        return head
    return cm_compose(head, _suffix_eval(rest, one))


def word_eval(w, one=None):
    """The CreMap f1 o ... o fn of the word (f1, ..., fn)."""
    w = tuple(w)
    one = word_one(w, one)
    if not w:
        return cm_identity(one)
    return _suffix_eval(w, one)


def word_inverse(w):
    return tuple(SIGMA if l.is_sigma else Lin(l.g.inverse()) for l in reversed(tuple(w)))


def lin_product(span):
    """Product of a run of Lin letters; None for the empty run."""
    out = None
    for letter in span:
        out = letter.g if out is None else out * letter.g
    return out


# ---------------------------------------------------------------------------
# steps and certificates

@dataclass(frozen=True)
class RewriteStep:
    position: int
    move: str
    before: tuple
    after: tuple
    params: dict = field(default_factory=dict, compare=True, hash=False)

    def inverse(self):
        params = dict(self.params)
        if "proof" in params:
            params["proof"] = invert_steps(params["proof"])
        return RewriteStep(self.position, self.move, self.after, self.before, params)

    def shifted(self, offset):
        return replace(self, position=self.position + offset)


def invert_steps(steps):
    return [s.inverse() for s in reversed(list(steps))]


@dataclass
class RewriteCertificate:
    initial: tuple
    steps: list
    final: tuple
    trace: list = field(default_factory=list)

    def inverse(self):
        return RewriteCertificate(self.final, invert_steps(self.steps), self.initial, [])

    def field_mode(self):
        one = word_one(self.initial + self.final + tuple(l for s in self.steps for l in s.before + s.after))
        return _mode_of(one)

    def to_dict(self):
        return {
            "field": self.field_mode(),
            "initial": [repr(l) for l in self.initial],
            "steps": [_step_to_dict(s) for s in self.steps],
            "final": [repr(l) for l in self.final],
            "trace": [list(t) for t in self.trace],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc):
        from .exactnum import field_from_mode
        from .parsing import parse_letter

        K = field_from_mode(doc.get("field", "q"))

        def letters(items):
            return tuple(parse_letter(t, K) for t in items)

        def step(d):
            params = {}
            for key, val in d.get("params", {}).items():
                params[key] = [step(x) for x in val] if key == "proof" else val
            return RewriteStep(int(d["position"]), d["move"], letters(d["before"]), letters(d["after"]), params)

        return cls(
            letters(doc["initial"]),
            [step(s) for s in doc["steps"]],
            letters(doc["final"]),
            [tuple(t) for t in doc.get("trace", [])],
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _mode_of(one):
    from .exactnum import Fp

    return f"fp:{one.p}" if isinstance(one, Fp) else "q"


def _step_to_dict(s):
    params = {}
    for key, val in s.params.items():
        params[key] = [_step_to_dict(x) for x in val] if key == "proof" else val
    return {
        "position": s.position,
        "move": s.move,
        "before": [repr(l) for l in s.before],
        "after": [repr(l) for l in s.after],
        "params": params,
    }


# ---------------------------------------------------------------------------
# the move catalogue

def _all_lin(span):
    return all(l.g is not None for l in span)


def _same_lin(a, b):
    if a is None or b is None:
        other = b if a is None else a
        return other is None or other.is_identity()
    return a == b


def _check_m1(a, b):
    if not (_all_lin(a) and _all_lin(b)):
        raise PatternMismatch("M1 spans must consist of Lin letters only")
    if not a and not b:
        raise PatternMismatch("M1 needs a nonempty span")
    if not _same_lin(lin_product(a), lin_product(b)):
        raise PatternMismatch("M1 spans have different matrix products")


def _check_m2(a, b):
    if {a, b} != {(SIGMA, SIGMA), ()}:
        raise PatternMismatch("M2 replaces sigma sigma by the empty span")


def _check_m3(a, b):
    if len(a) != 2 or len(b) != 2 or a != (b[1], b[0]) or a[0] == a[1]:
        raise PatternMismatch("M3 swaps sigma with a Lin letter")
    lin = a[0] if a[1].is_sigma else a[1]
    if lin.is_sigma or not (a[0].is_sigma or a[1].is_sigma):
        raise PatternMismatch("M3 swaps sigma with a Lin letter")
    if not lin.g.is_permutation():
        raise PatternMismatch("M3 side condition: the Lin letter is not a coordinate permutation")


def _m4_one_way(a, b):
    if len(a) == 3 and len(b) == 1:
        if not (a[0].is_sigma and a[2].is_sigma and a[1].g is not None and b[0].g is not None):
            raise PatternMismatch("M4 expects sigma, Lin(d), sigma")
        if not a[1].g.is_diagonal():
            raise PatternMismatch("M4 side condition: the middle letter is not diagonal")
        if a[1].g.inverse() != b[0].g:
            raise PatternMismatch("M4 replacement is not the inverse diagonal")
        return
    if len(a) == 2 and len(b) == 2:
        # [sigma, d] <-> [d^-1, sigma]  and  [d, sigma] <-> [sigma, d^-1]
        if a[0].is_sigma and a[1].g is not None and b[0].g is not None and b[1].is_sigma:
            d, e = a[1].g, b[0].g
        elif a[1].is_sigma and a[0].g is not None and b[1].g is not None and b[0].is_sigma:
            d, e = a[0].g, b[1].g
        else:
            raise PatternMismatch("M4 push moves a diagonal letter across sigma")
        if not d.is_diagonal():
            raise PatternMismatch("M4 side condition: the Lin letter is not diagonal")
        if d.inverse() != e:
            raise PatternMismatch("M4 push must invert the diagonal")
        return
    raise PatternMismatch("M4 span shapes do not match")


def _check_m4(a, b):
    if len(a) < len(b):
        a, b = b, a
    _m4_one_way(a, b)


def _check_m5(a, b):
    if a[:1] == (SIGMA,):
        a, b = b, a
    if len(a) != 3 or len(b) != 3:
        raise PatternMismatch("M5 exchanges sigma h sigma and h sigma h")
    if not (a[1].is_sigma and b[0].is_sigma and b[2].is_sigma):
        raise PatternMismatch("M5 exchanges sigma h sigma and h sigma h")
    hs = (a[0], a[2], b[1])
    if any(l.g is None or not l.g.is_standard_h() for l in hs):
        raise PatternMismatch("M5 side condition: Lin letters must be h = [z-x : z-y : z]")


def _check_macro(step):
    proof = step.params.get("proof")
    if not isinstance(proof, list):
        raise PatternMismatch(f"{step.move} needs a nested proof")
    w = step.before
    for k, sub in enumerate(proof):
        try:
            w = apply_move(w, sub)
        except PatternMismatch as e:
            raise PatternMismatch(f"{step.move} proof step {k}: {e}") from None
    if w != step.after:
        raise PatternMismatch(f"{step.move} proof does not end at the stated span")


_CHECKS = {
    "M1-merge-lin": _check_m1,
    "M2-sigma-sigma": _check_m2,
    "M3-sigma-perm": _check_m3,
    "M4-sigma-diag": _check_m4,
    "M5-sigma-h": _check_m5,
}


def check_move(step):
    """Raise PatternMismatch unless the step is an instance of its move."""
    if step.move in _CHECKS:
        _CHECKS[step.move](tuple(step.before), tuple(step.after))
    elif step.move in MACRO_MOVES:
        _check_macro(step)
    else:
        raise PatternMismatch(f"unknown move {step.move!r}")


def apply_move(w, step, check=True):
    w = tuple(w)
    pos, before = step.position, tuple(step.before)
    if pos < 0 or pos + len(before) > len(w) or w[pos : pos + len(before)] != before:
        raise PatternMismatch(f"before-span of {step.move} does not occur at position {pos}")
    if check:
        check_move(step)
    return w[:pos] + tuple(step.after) + w[pos + len(before) :]


class _Builder:
    """Applies moves to a working word while recording them."""

    def __init__(self, word):
        self.initial = self.word = tuple(word)
        self.steps = []

    def apply(self, pos, length, after, move, params=None, check=True):
        step = RewriteStep(pos, move, self.word[pos : pos + length], tuple(after), params or {})
        self.word = apply_move(self.word, step, check=check)
        self.steps.append(step)

    def macro(self, pos, cert, move, **params):
        if self.word[pos : pos + len(cert.initial)] != cert.initial:
            raise PatternMismatch("macro span does not match")
        self.apply(pos, len(cert.initial), cert.final, move, dict(params, proof=list(cert.steps)), check=False)

    def merge(self, pos, length):
        """Replace a run of Lin letters by their product (skipped if already one letter)."""
        if length <= 1:
            return
        g = lin_product(self.word[pos : pos + length])
        self.apply(pos, length, [Lin(g)], "M1-merge-lin")

    def certificate(self, trace=None):
        return RewriteCertificate(self.initial, list(self.steps), self.word, list(trace or []))


# ---------------------------------------------------------------------------
# constructive lemmas

def _e(i, one):
    return coordinate_point(i, one)


def _yz_swap(one):
    return LinMap.perm((0, 2, 1), one)


def conjugate_degree(g):
    """deg(sigma o g o sigma)."""
    return word_eval((SIGMA, Lin(g), SIGMA)).degree


def rewrite_deg1(g):
    """Certificate [sigma, g, sigma] -> [g'] for g in J with sigma g sigma linear."""
    if not g.in_jonquieres():
        raise HypothesisFailed("g does not fix [1:0:0]")
    if conjugate_degree(g) != 1:
        raise HypothesisFailed(f"sigma g sigma has degree {conjugate_degree(g)}, not 1")
    cls = lin_classify(g)
    d, t = cls.diagonal, cls.perm_map
    b = _Builder((SIGMA, Lin(g), SIGMA))
    if t.is_identity():
        b.apply(0, 3, [Lin(d.inverse())], "M4-sigma-diag")
    elif d.is_identity():
        b.apply(0, 2, [Lin(t), SIGMA], "M3-sigma-perm")
        b.apply(1, 2, [], "M2-sigma-sigma")
    else:
        b.apply(1, 1, [Lin(d), Lin(t)], "M1-merge-lin")
        b.apply(2, 2, [SIGMA, Lin(t)], "M3-sigma-perm")
        b.apply(0, 3, [Lin(d.inverse())], "M4-sigma-diag")
        b.merge(0, 2)
    return b.certificate()


@dataclass(frozen=True)
class Deg2Data:
    tau1: LinMap | None
    d1: LinMap
    d2: LinMap
    tau2: LinMap | None


def deg2_data(g):
    """Find tau1, tau2 in {id, y<->z} and diagonals with tau1 g tau2 = d1 h d2."""
    one = g.one
    swaps = (None, _yz_swap(one))
    degenerate = None
    for t1 in swaps:
        for t2 in swaps:
            m = g
            if t1 is not None:
                m = t1 * m
            if t2 is not None:
                m = m * t2
            M = m.m
            if M[0][1] != 0 or M[2][1] != 0:
                continue
            a1, a2, b1, b2, c = M[0][0], M[0][2], M[1][1], M[1][2], M[2][2]
            if a2 * b2 == 0:
                degenerate = (t1, t2)
                continue
            d2 = LinMap.diag(-a1 / a2, -b1 / b2, one)
            d1 = LinMap.diag(a2, b2, c)
            return Deg2Data(t1, d1, d2, t2)
    if degenerate is not None:
        ginv = g.inverse()
        pts = [_e(i, one) for i in range(3)] + [ginv.apply(_e(i, one)) for i in range(3)]
        triple = find_collinear_triple(pts)
        raise HypothesisFailed(
            f"three base points of sigma and sigma g are collinear: {triple}", collinear=triple
        )
    raise HypothesisFailed("g cannot be brought to the form [a1 x + a2 z : b1 y + b2 z : c z]")


def rewrite_deg2(g):
    """Certificate [sigma, g, sigma] -> [g', sigma, g''] for g in J with deg(sigma g sigma) = 2."""
    if not g.in_jonquieres():
        raise HypothesisFailed("g does not fix [1:0:0]")
    k = conjugate_degree(g)
    if k != 2:
        raise HypothesisFailed(f"sigma g sigma has degree {k}, not 2")
    data = deg2_data(g)
    H = cm_h(g.one)
    b = _Builder((SIGMA, Lin(g), SIGMA))
    parts = [data.tau1, None if data.d1.is_identity() else data.d1, H,
             None if data.d2.is_identity() else data.d2, data.tau2]
    b.apply(1, 1, [Lin(x) for x in parts if x is not None], "M1-merge-lin")

    def sig():
        return [i for i, l in enumerate(b.word) if l.is_sigma]

    if data.tau1 is not None:
        b.apply(0, 2, [Lin(data.tau1), SIGMA], "M3-sigma-perm")
    if data.tau2 is not None:
        r = sig()[1]
        b.apply(r - 1, 2, [SIGMA, Lin(data.tau2)], "M3-sigma-perm")
    if not data.d1.is_identity():
        l = sig()[0]
        b.apply(l, 2, [Lin(data.d1.inverse()), SIGMA], "M4-sigma-diag")
    if not data.d2.is_identity():
        r = sig()[1]
        b.apply(r - 1, 2, [SIGMA, Lin(data.d2.inverse())], "M4-sigma-diag")
    l = sig()[0]
    b.apply(l, 3, [Lin(H), SIGMA, Lin(H)], "M5-sigma-h")
    l, r = sig()[0], len(b.word)
    b.merge(l + 1, r - l - 1)
    b.merge(0, l)
    return b.certificate()


def _equalize(b, pos, l, l2):
    """Rewrite [k, sigma, k'] at pos into [l, sigma, l2] when both spans agree as maps."""
    k = b.word[pos].g
    u = l.inverse() * k
    cls = lin_classify(u)
    if cls.kind == "General":
        raise HypothesisFailed("spans define different maps")
    d, t = cls.diagonal, cls.perm_map
    parts = [l] + [x for x in (d, t) if not x.is_identity()]
    if len(parts) > 1 or parts[0] != k:
        b.apply(pos, 1, [Lin(x) for x in parts], "M1-merge-lin")
    s = pos + len(parts)
    if not t.is_identity():
        b.apply(s - 1, 2, [SIGMA, Lin(t)], "M3-sigma-perm")
        s -= 1
    if not d.is_identity():
        b.apply(s - 1, 2, [SIGMA, Lin(d.inverse())], "M4-sigma-diag")
        s -= 1
    tail = len(parts) - 1
    span = b.word[s + 1 : s + 2 + tail]
    if len(span) > 1 or span[0].g != l2:
        b.apply(s + 1, len(span), [Lin(l2)], "M1-merge-lin")


def triangle(m, l, l2):
    """Certificate [sigma, m, sigma] -> [l, sigma, l2], given the two sides agree."""
    b = _Builder((SIGMA, Lin(m), SIGMA))
    b.macro(0, rewrite_deg2(m), "L-deg2")
    _equalize(b, 0, l, l2)
    if b.word != (Lin(l), SIGMA, Lin(l2)):
        raise HypothesisFailed("triangle did not reach its target")
    return b.certificate()


def make_quadratic_with_base_points(p, q, r):
    """[Lin(a), sigma, Lin(a^-1)] with a sending the coordinate points to p, q, r."""
    if _det3([list(p), list(q), list(r)]) == 0:
        raise CollinearBasePoints(f"{p}, {q}, {r} are collinear or repeated")
    a = LinMap.from_columns([tuple(p), tuple(q), tuple(r)])
    return (Lin(a), SIGMA, Lin(a.inverse()))


def _factor_quadratic(q):
    if q.degree != 2:
        raise HypothesisFailed(f"mediating map has degree {q.degree}, expected 2")
    pts = order_base_points(cm_proper_base_points(q))
    if len(pts) != 3:
        raise HypothesisFailed("mediating map has an infinitely near base point")
    return quadratic_factorization(q, pts)


def _square_attempt(g1, g2, g3, g4, s, t, scal):
    one = g1.one
    a = LinMap.from_columns([tuple(_e(0, one)), tuple(s), tuple(t)])
    if _det3(a.m) == 0:
        raise CollinearBasePoints("p0, s, t are collinear")
    a = a * LinMap.diag(*scal)
    k1, k1p = a, a.inverse()
    tau1 = (Lin(k1), SIGMA, Lin(k1p))
    k2, k2p = _factor_quadratic(word_eval(tau1 + (Lin(g1.inverse()), SIGMA)))
    k3, k3p = _factor_quadratic(word_eval(tau1 + (SIGMA, Lin(g3.inverse()))))
    tau2 = (Lin(k2), SIGMA, Lin(k2p))
    k4, k4p = _factor_quadratic(word_eval(tau2 + (Lin(g2.inverse()), SIGMA)))
    if not all(x.in_jonquieres() for x in (k1, k1p, k2, k2p, k3, k3p, k4, k4p)):
        raise HypothesisFailed("mediating quadratic maps leave the de Jonquieres group")
    inv = LinMap.inverse

    fwd = _Builder((SIGMA, Lin(g2), SIGMA, Lin(g1)))
    fwd.apply(3, 1, [Lin(g1 * inv(k1p)), Lin(k1p)], "M1-merge-lin")
    fwd.apply(1, 1, [Lin(g2 * inv(k2p)), Lin(k2p)], "M1-merge-lin")
    fwd.macro(2, triangle(inv(k2) * k1, k2p, g1 * inv(k1p)).inverse(), "L-square-triangle")
    fwd.macro(0, triangle(g2 * inv(k2p), inv(k4p), inv(k4) * k2), "L-square-triangle")
    fwd.merge(2, 2)

    tgt = _Builder((Lin(g4), SIGMA, Lin(g3), SIGMA))
    tgt.apply(2, 1, [Lin(inv(k3p)), Lin(k3p * g3)], "M1-merge-lin")
    tgt.apply(5, 0, [Lin(inv(k1p)), Lin(k1p)], "M1-merge-lin")
    tgt.macro(3, triangle(inv(k3) * k1, k3p * g3, inv(k1p)).inverse(), "L-square-triangle")
    tgt.apply(0, 1, [Lin(inv(k4p)), Lin(k4p * g4)], "M1-merge-lin")
    tgt.macro(1, triangle(inv(k4) * k3, k4p * g4, inv(k3p)).inverse(), "L-square-triangle")
    tgt.apply(3, 2, [], "M2-sigma-sigma")
    tgt.merge(2, 2)

    if fwd.word != tgt.word:
        raise HypothesisFailed("the two halves of the square meet in different words")
    return RewriteCertificate(fwd.initial, fwd.steps + tgt.certificate().inverse().steps, tgt.initial)


def rewrite_square(g1, g2, g3, g4, seed=0, max_attempts=32):
    """Certificate [sigma, g2, sigma, g1] -> [g4, sigma, g3, sigma] for a cubic square."""
    for name, g in (("g1", g1), ("g2", g2), ("g3", g3), ("g4", g4)):
        if not g.in_jonquieres():
            raise HypothesisFailed(f"{name} does not fix [1:0:0]")
    lhs = word_eval((SIGMA, Lin(g2), SIGMA, Lin(g1)))
    rhs = word_eval((Lin(g4), SIGMA, Lin(g3), SIGMA))
    if lhs != rhs:
        raise HypothesisFailed("sigma g2 sigma g1 and g4 sigma g3 sigma are different maps")
    if lhs.degree != 3:
        raise HypothesisFailed(f"the square has degree {lhs.degree}, expected 3")
    one = g1.one
    from .exactnum import field_of

    K = field_of(one)
    g1inv = g1.inverse()
    choices = [(g1inv.apply(_e(i, one)), _e(j, one)) for i in (1, 2) for j in (1, 2)]
    rng = random.Random(seed)
    last = None
    for attempt in range(max_attempts):
        s, t = choices[attempt % len(choices)]
        if attempt < len(choices):
            scal = (one, one, one)
        else:
            scal = tuple(K.random(rng, bound=100, nonzero=True) for _ in range(3))
        try:
            return _square_attempt(g1, g2, g3, g4, s, t, scal)
        except CremonaError as e:
            last = e
    raise GenericityFailure(f"no admissible mediating quadratic map after {max_attempts} attempts ({last})")


# ---------------------------------------------------------------------------
# identity-word simplification

def _normalize(b, one):
    """Merge Lin runs, drop interior identities and sigma pairs, pad the ends with Lin letters."""
    while True:
        w = b.word
        if not w:
            return
        for i in range(len(w) - 1):
            if w[i].g is not None and w[i + 1].g is not None:
                j = i
                while j < len(w) and w[j].g is not None:
                    j += 1
                b.merge(i, j - i)
                break
        else:
            for i in range(1, len(w) - 1):
                if w[i].g is not None and w[i].g.is_identity():
                    b.apply(i, 1, [], "M1-merge-lin")
                    break
            else:
                for i in range(len(w) - 1):
                    if w[i].is_sigma and w[i + 1].is_sigma:
                        b.apply(i, 2, [], "M2-sigma-sigma")
                        break
                else:
                    if w[0].is_sigma:
                        b.apply(0, 0, [Lin(LinMap.identity(one))], "M1-merge-lin")
                    elif w[-1].is_sigma:
                        b.apply(len(w), 0, [Lin(LinMap.identity(one))], "M1-merge-lin")
                    else:
                        return


def prefix_degrees(w, one):
    """delta_1..delta_m of an alternating word g_m sigma ... sigma g_1.

    delta_i is the degree of sigma g_{i-1} ... sigma g_1 (delta_1 = 1).
    """
    m = (len(w) + 1) // 2
    degs = [1]
    for i in range(2, m + 1):
        degs.append(word_eval(w[2 * (m - i) + 1 :], one).degree)
    return degs


def _case_c(b, idx, n, one, rng):
    """Insert g'^-1 sigma sigma g' next to g_n and apply two quadratic rewrites."""
    w = b.word
    g = w[idx].g
    f = word_eval(word_inverse(w[idx + 1 :]), one)
    e0, e1, e2 = (_e(i, one) for i in range(3))
    ginv = g.inverse()
    qs = [ginv.apply(e1), ginv.apply(e2)]
    ps = [p for p in (e1, e2) if cm_mult(f, p) == 1]
    cands = [(p, q) for p in ps for q in qs]
    rng.shuffle(cands)
    for p, q in cands:
        cols = [tuple(e0), tuple(p), tuple(q)]
        if _det3([list(c) for c in cols]) == 0:
            continue
        gp_inv = LinMap.from_columns(cols)
        gp = gp_inv.inverse()
        try:
            right = rewrite_deg2(gp)
            left = rewrite_deg2(g * gp_inv)
        except HypothesisFailed:
            continue
        b.apply(idx + 1, 0, [Lin(gp_inv), Lin(gp)], "M1-merge-lin")
        b.apply(idx + 2, 0, [SIGMA, SIGMA], "M2-sigma-sigma")
        b.merge(idx, 2)
        b.macro(idx + 2, right, "L-deg2")
        b.macro(idx - 1, left, "L-deg2")
        return
    raise Stuck(
        "GenericityFailure",
        n,
        "no auxiliary quadratic map satisfies the non-collinearity conditions",
        certificate=b.certificate(),
    )


def simplify_identity_word(w, seed=0):
    """Certificate rewriting an identity word with de Jonquieres Lin letters to the empty word.

    Raises Stuck when a configuration outside the supported cases is met.
    """
    w = tuple(w)
    for k, letter in enumerate(w):
        if letter.g is not None and not letter.g.in_jonquieres():
            raise NotDeJonquieres(f"letter {k} does not fix [1:0:0]")
    one = word_one(w)
    if not cm_is_identity(word_eval(w, one)):
        raise NotIdentity("the word does not evaluate to the identity")
    rng = random.Random(seed)
    b = _Builder(w)
    trace = []
    _normalize(b, one)
    while b.word:
        w = b.word
        if len(w) == 1:
            b.apply(0, 1, [], "M1-merge-lin")
            break
        degs = prefix_degrees(w, one)
        m = len(degs)
        D = max(degs)
        n = max(i for i in range(1, m + 1) if degs[i - 1] == D)
        if trace and not (D, n) < trace[-1]:
            raise Stuck("GenericityFailure", n, f"(D, n) did not decrease: {trace[-1]} -> {(D, n)}",
                        certificate=b.certificate(trace))
        trace.append((D, n))
        idx = 2 * (m - n)
        g = w[idx].g
        k = conjugate_degree(g)
        if k == 1:
            b.macro(idx - 1, rewrite_deg1(g), "L-deg1")
        elif k == 2:
            try:
                cert = rewrite_deg2(g)
            except HypothesisFailed as e:
                raise Stuck("InfinitelyNearBasePoint", n, str(e), certificate=b.certificate(trace)) from None
            b.macro(idx - 1, cert, "L-deg2")
        else:
            _case_c(b, idx, n, one, rng)
        _normalize(b, one)
    return b.certificate(trace)


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    step: int | None = None
    message: str = "ok"

    def __bool__(self):
        return self.ok


def verify_certificate(cert, check_eval=True):
    """Replay a certificate; returns a VerifyResult (truthy iff valid)."""
    one = word_one(cert.initial + cert.final + tuple(l for s in cert.steps for l in s.before + s.after))
    w = tuple(cert.initial)
    for k, step in enumerate(cert.steps):
        try:
            w = apply_move(w, step)
        except PatternMismatch as e:
            return VerifyResult(False, k, str(e))
        except CremonaError as e:
            return VerifyResult(False, k, f"{type(e).__name__}: {e}")
        if check_eval and word_eval(step.before, one) != word_eval(step.after, one):
            return VerifyResult(False, k, "step changes the evaluated map")
    if w != tuple(cert.final):
        return VerifyResult(False, len(cert.steps), "replay does not end at the final word")
    return VerifyResult(True)
