"""Parsing and printing of exact scalar and polynomial literals.

Grammar (round-trip stable, whitespace ignored):

    expr    :=  term (('+'|'-') term)*
    term    :=  factor (('*'|'/') factor)*
    factor  :=  ('-'|'+')* primary ('^' INT)?
    primary :=  INT | NAME | '(' expr ')'

NAME is the imaginary unit 'i', the polynomial variable (default 'x'),
the tower generator (e.g. 's'), or a bound parameter.  Division is exact
and requires a nonzero constant divisor.  Examples of accepted scalar
literals: "2", "-1/2+1/2*i", "1/4+1/4*s*i", "(1+i)/2"; polynomial
literals: "x", "x^2-x+2", "2*x-1".
"""

from .gaussian import GaussianRational
from .poly import Poly
from .tower import BASE, Scalar

__all__ = [
    "ParseError",
    "parse_scalar",
    "parse_poly",
    "format_scalar",
    "format_poly",
    "format_gaussian",
]


class ParseError(ValueError):
    pass


# -- tokenizer ---------------------------------------------------------------


def _tokenize(text):
    toks = []
    k, n = 0, len(text)
    while k < n:
        ch = text[k]
        if ch.isspace():
            k += 1
        elif ch.isdigit():
            j = k
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[k:j]), k))
            k = j
        elif ch.isalpha() or ch == "_":
            j = k
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[k:j], k))
            k = j
        elif ch in "+-*/^()":
            toks.append((ch, ch, k))
            k += 1
        else:
            raise ParseError("unexpected character %r at position %d" % (ch, k))
    toks.append(("end", None, n))
    return toks


class _Parser:
    """Evaluates the grammar directly to a Poly over the working tower."""

    def __init__(self, text, tower, var, params):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.tower = tower
        self.var = var
        self.params = params or {}

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(
                "expected %s at position %d in %r" % (kind, tok[2], self.text)
            )
        self.pos += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(
                "trailing input at position %d in %r" % (tok[2], self.text)
            )
        return v

    def expr(self):
        v = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            w = self.factor()
            if op == "*":
                v = v * w
            else:
                if not w.is_constant():
                    raise ParseError("division by a nonconstant in %r" % self.text)
                c = w.constant_term()
                if c.is_zero():
                    raise ParseError("division by zero in %r" % self.text)
                v = v / c
        return v

    def factor(self):
        sign = 1
        while self.peek()[0] in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        v = self.primary()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            k = self.take("int")[1]
            if neg:
                if not v.is_constant():
                    raise ParseError("negative power of a nonconstant in %r" % self.text)
                c = v.constant_term()
                if c.is_zero():
                    raise ParseError("negative power of zero in %r" % self.text)
                v = Poly.constant(c.inverse() ** k).lift(self.tower)
            else:
                v = v**k
        return -v if sign < 0 else v

    def primary(self):
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return Poly(self.tower, (tok[1],))
        if tok[0] == "name":
            self.take()
            name = tok[1]
            if name == "i":
                return Poly(self.tower, (GaussianRational(0, 1),))
            if name == self.var:
                return Poly.x(self.tower)
            if name in self.params:
                return Poly(self.tower, (self.params[name],))
            if not self.tower.is_base() and name == self.tower.generator:
                return Poly(self.tower, (self.tower.gen(),))
            raise ParseError("unknown name %r in %r" % (name, self.text))
        if tok[0] == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(
            "expected a value at position %d in %r" % (tok[2], self.text)
        )


def parse_poly(text, tower=BASE, params=None, var="x"):
    """Parse a polynomial literal in `var` over the tower.

    params maps names to Scalars (or ints/rationals); parameter values are
    substituted during parsing, so "1+a" with a bound to 2 yields 3.
    """
    if params:
        params = {k: tower.scalar(v) for k, v in params.items()}
    return _Parser(text, tower, var, params).parse()


def parse_scalar(text, tower=BASE, params=None):
    """Parse a scalar literal (a polynomial literal of degree 0)."""
    p = parse_poly(text, tower, params, var="\x00novar")
    if not p.is_constant():
        raise ParseError("expected a scalar, got a polynomial: %r" % text)
    return p.constant_term()


# -- formatting ---------------------------------------------------------------


def _format_q(q):
    return str(q)


def format_gaussian(g):
    """Canonical literal for a GaussianRational: "0", "2", "-1/2+1/2*i", "i"."""
    if not g.re and not g.im:
        return "0"
    parts = []
    if g.re:
        parts.append(_format_q(g.re))
    if g.im:
        if g.im == 1:
            s = "i"
        elif g.im == -1:
            s = "-i"
        else:
            s = "%s*i" % _format_q(g.im)
        if parts and not s.startswith("-"):
            parts.append("+" + s)
        else:
            parts.append(s)
    return "".join(parts)


def _format_gaussian_times(g, mono):
    """One term: GaussianRational coefficient times a monomial string."""
    if not mono:
        return format_gaussian(g)
    if g.re and g.im:
        return "(%s)*%s" % (format_gaussian(g), mono)
    if g.im:
        # pure imaginary: q*mono*i, with q=1 elided
        if g.im == 1:
            return "%s*i" % mono
        if g.im == -1:
            return "-%s*i" % mono
        return "%s*%s*i" % (_format_q(g.im), mono)
    if g.re == 1:
        return mono
    if g.re == -1:
        return "-%s" % mono
    return "%s*%s" % (_format_q(g.re), mono)


def _join_terms(terms):
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def format_scalar(s):
    """Canonical literal for a Scalar, e.g. "1/4+1/4*s*i" in a tower with s."""
    if isinstance(s, GaussianRational):
        return format_gaussian(s)
    if s.is_zero():
        return "0"
    gen = s.tower.generator
    terms = []
    for k, g in enumerate(s.coeffs):
        if not g:
            continue
        mono = "" if k == 0 else (gen if k == 1 else "%s^%d" % (gen, k))
        terms.append(_format_gaussian_times(g, mono))
    return _join_terms(terms)


def _format_scalar_times(c, mono):
    """One term: Scalar coefficient times a power of x."""
    if not mono:
        return format_scalar(c)
    if c.is_one():
        return mono
    if (-c).is_one():
        return "-%s" % mono
    g = c.as_gaussian()
    if g is not None:
        return _format_gaussian_times(g, mono)
    cs = format_scalar(c)
    nterms = sum(1 for k, gk in enumerate(c.coeffs) if gk)
    if nterms > 1:
        return "(%s)*%s" % (cs, mono)
    return "%s*%s" % (cs, mono)


def format_poly(p, var="x"):
    """Canonical literal with descending powers, e.g. "x^2-x+2"."""
    if p.is_zero():
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else "%s^%d" % (var, k))
        terms.append(_format_scalar_times(c, mono))
    return _join_terms(terms)


def format_poly_vec(coeffs, var):
    """Format a raw GaussianRational coefficient tuple (ascending) in `var`."""
    p = Poly(BASE, coeffs)
    return format_poly(p, var)
