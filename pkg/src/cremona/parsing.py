"""Text grammars for polynomials, maps, matrices, words and triples, with printers."""

from __future__ import annotations

import re

from .cremap import CreMap, LinMap
from .errors import ParseError
from .exactnum import QQ, format_scalar
from .hpoly import HPoly, format_hpoly


class _Lexer:
    """Tracks position inside one line for error reporting."""

    def __init__(self, text, line=1, col0=1):
        self.text = text
        self.i = 0
        self.line = line
        self.col0 = col0

    def error(self, msg, expected=None):
        raise ParseError(msg, self.line, self.col0 + self.i, expected)

    def skip(self):
        while self.i < len(self.text) and self.text[self.i] in " \t\r":
            self.i += 1

    def peek(self):
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def eat(self, ch):
        if self.peek() != ch:
            self.error(f"unexpected {self.peek()!r}" if self.peek() else "unexpected end of input", repr(ch))
        self.i += 1

    def number(self):
        self.skip()
        m = re.compile(r"\d+(?:\s*/\s*\d+)?").match(self.text, self.i)
        if not m:
            self.error("expected a number", "integer or a/b")
        self.i = m.end()
        return m.group(0).replace(" ", "")

    def at_end(self):
        return self.peek() == ""


# polynomials: sums of terms, a term is [coeff][*]factor...; factor is x|y|z with optional ^k
def _parse_poly(lx, K):
    terms = {}
    first = True
    while True:
        c = lx.peek()
        sign = 1
        if c and c in "+-":
            sign = -1 if c == "-" else 1
            lx.i += 1
        elif not first:
            break
        coeff = K(1)
        exps = [0, 0, 0]
        have = False
        if lx.peek().isdigit():
            coeff = K.parse(lx.number())
            have = True
            if lx.peek() == "*":
                lx.i += 1
                if lx.peek() not in ("x", "y", "z"):
                    lx.error("expected a variable after '*'", "x, y or z")
        while lx.peek() in ("x", "y", "z") and lx.peek():
            v = "xyz".index(lx.peek())
            lx.i += 1
            k = 1
            if lx.peek() == "^":
                lx.i += 1
                if not lx.peek().isdigit():
                    lx.error("expected an exponent", "digit")
                k = int(lx.number())
            exps[v] += k
            have = True
            if lx.peek() == "*":
                lx.i += 1
                if lx.peek() not in ("x", "y", "z"):
                    lx.error("expected a variable after '*'", "x, y or z")
        if not have:
            lx.error(f"unexpected {lx.peek()!r}" if lx.peek() else "unexpected end of input", "a term")
        e = tuple(exps)
        terms[e] = terms.get(e, K(0)) + coeff * sign
        first = False
    nonzero = {e: c for e, c in terms.items() if c != 0}
    if not nonzero:
        return HPoly._raw({}, max(sum(e) for e in terms))
    if len({sum(e) for e in nonzero}) > 1:
        lx.error("polynomial is not homogeneous", "terms of equal degree")
    return HPoly(nonzero)


def parse_poly(text, K=QQ):
    lx = _Lexer(text.strip())
    p = _parse_poly(lx, K)
    if not lx.at_end():
        lx.error(f"unexpected {lx.peek()!r}", "end of polynomial")
    return p


def parse_map(text, K=QQ):
    """``[f0 : f1 : f2]`` with homogeneous components of one degree."""
    lines = text.strip().splitlines() or [""]
    if len(lines) > 1:
        text = " ".join(lines)
    lx = _Lexer(text.strip())
    lx.eat("[")
    comps = []
    for k in range(3):
        comps.append(_parse_poly(lx, K))
        if k < 2:
            lx.eat(":")
    lx.eat("]")
    if not lx.at_end():
        lx.error(f"unexpected {lx.peek()!r}", "end of map")
    degs = {c.degree for c in comps if c.terms}
    if len(degs) != 1:
        lx.error("components have different degrees", "components of one degree")
    d = degs.pop()
    comps = [c if c.terms else HPoly._raw({}, d) for c in comps]
    return CreMap(comps)


def format_map(f):
    return "[" + " : ".join(format_hpoly(c) for c in f.comps) + "]"


def _parse_matrix(lx, K):
    lx.eat("[")
    rows = []
    for i in range(3):
        lx.eat("[")
        row = []
        for j in range(3):
            sign = ""
            if lx.peek() and lx.peek() in "+-":
                sign = lx.peek()
                lx.i += 1
            row.append(K.parse(sign + lx.number()))
            if j < 2:
                lx.eat(",")
        lx.eat("]")
        if i < 2:
            lx.eat(",")
        rows.append(row)
    lx.eat("]")
    return rows


def parse_matrix(text, K=QQ, line=1):
    lx = _Lexer(text, line)
    rows = _parse_matrix(lx, K)
    if not lx.at_end():
        lx.error(f"unexpected {lx.peek()!r}", "end of matrix")
    return rows


def format_matrix(rows):
    return "[" + ",".join("[" + ",".join(format_scalar(c) for c in r) + "]" for r in rows) + "]"


def parse_letter(text, K=QQ, line=1):
    from .errors import SingularMatrix
    from .rewrite import SIGMA, Lin

    s = text.strip()
    col = text.index(s[0]) + 1 if s else 1
    if s == "sigma":
        return SIGMA
    if not s.startswith("lin"):
        raise ParseError(f"unknown letter {s[:12]!r}", line, col, "'sigma' or 'lin [[..],[..],[..]]'")
    lx = _Lexer(s[3:], line, col + 3)
    rows = _parse_matrix(lx, K)
    if not lx.at_end():
        lx.error(f"unexpected {lx.peek()!r}", "end of line")
    try:
        return Lin(LinMap(rows))
    except SingularMatrix:
        raise ParseError("singular matrix", line, col, "an invertible 3x3 matrix") from None


def format_letter(letter):
    return "sigma" if letter.g is None else "lin " + format_matrix(letter.g.m)


def parse_word(text, K=QQ):
    """One letter per line; blank lines and ``#`` comments are ignored."""
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        out.append(parse_letter(body, K, n))
    return tuple(out)


def format_word(w):
    return "".join(format_letter(l) + "\n" for l in w)


def parse_triple(text, K=QQ):
    from .gizaction import SymTriple

    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise ParseError("empty triple file", 1, 1, "matrix size n")
    head = lines[idx].strip()
    if not head.isdigit() or int(head) < 1:
        raise ParseError(f"bad size {head!r}", idx + 1, 1, "positive integer n")
    n = int(head)
    mats, cur = [], []
    for ln in range(idx + 1, len(lines)):
        raw = lines[ln]
        if not raw.strip():
            if cur:
                mats.append(cur)
                cur = []
            continue
        toks = raw.split()
        if len(toks) != n:
            raise ParseError(f"row has {len(toks)} entries", ln + 1, 1, f"{n} scalars")
        row = []
        for t in toks:
            try:
                row.append(K.parse(t))
            except ParseError:
                raise ParseError(f"bad scalar {t!r}", ln + 1, raw.index(t) + 1, "integer or a/b") from None
        cur.append(row)
        if len(cur) > n:
            raise ParseError("too many rows", ln + 1, 1, "blank line between matrices")
    if cur:
        mats.append(cur)
    if len(mats) != 3 or any(len(m) != n for m in mats):
        raise ParseError(f"expected three {n}x{n} matrices, got {len(mats)}", len(lines), 1, "three matrices")
    return SymTriple(n, *mats)


def format_triple(T):
    blocks = ["\n".join(" ".join(format_scalar(c) for c in row) for row in A) for A in T.mats]
    return f"{T.n}\n" + "\n\n".join(blocks) + "\n"
