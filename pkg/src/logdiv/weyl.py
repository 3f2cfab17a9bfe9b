"""Normal-ordered differential operators with polynomial coefficients.

A WeylOp is a finite sum p_beta(x) * d^beta stored as a map from the
d-exponent to its coefficient polynomial.  Products are normal ordered with
the multi-index Leibniz rule d^b * g = sum C(b,m) (d^(b-m) g) d^m.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import AmbientMismatch, InvalidArgument, ParseError, ShapeError
from .ring import (DEGREVLEX, Poly, PolyRing, PolyVec, _Tokens, _parse_expr,
                   divmod_single)


class WeylOp:
    """Element of the Weyl algebra over QQ[x1..xn], coefficients on the left."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {e: p for e, p in terms.items() if not p.is_zero()}

    # constructors -----------------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly) -> "WeylOp":
        return cls(p.ring, {(0,) * p.ring.n: p})

    @classmethod
    def partial(cls, ring: PolyRing, i: int) -> "WeylOp":
        e = [0] * ring.n
        e[i] = 1
        return cls(ring, {tuple(e): ring.one()})

    @classmethod
    def from_vector_field(cls, coeffs: PolyVec) -> "WeylOp":
        ring = coeffs.ring
        terms = {}
        for i, a in enumerate(coeffs):
            if a.is_zero():
                continue
            e = [0] * ring.n
            e[i] = 1
            terms[tuple(e)] = a
        return cls(ring, terms)

    @classmethod
    def zero(cls, ring: PolyRing) -> "WeylOp":
        return cls(ring, {})

    # basic structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "WeylOp"):
        if self.ring != other.ring:
            raise AmbientMismatch("operators over different rings")

    def __eq__(self, other):
        return isinstance(other, WeylOp) and self.ring == other.ring \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, frozenset(
            (e, frozenset(p.terms.items())) for e, p in self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = WeylOp.from_poly(other if isinstance(other, Poly)
                                     else self.ring.const(other))
        self._check(other)
        out = dict(self.terms)
        for e, p in other.terms.items():
            s = out.get(e)
            out[e] = p if s is None else s + p
        return WeylOp(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp(self.ring, {e: -p for e, p in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = WeylOp.from_poly(other if isinstance(other, Poly)
                                     else self.ring.const(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return WeylOp(self.ring,
                          {e: p * other for e, p in self.terms.items()})
        if isinstance(other, Poly):
            other = WeylOp.from_poly(other)
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        if isinstance(other, Poly):
            return weyl_mul(WeylOp.from_poly(other), self)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidArgument("negative operator power")
        out = WeylOp.from_poly(self.ring.one())
        for _ in range(k):
            out = weyl_mul(out, self)
        return out

    # order, symbol, action ---------------------------------------------------

    def order(self):
        """Maximal total d-degree; -infinity sentinel (None) for zero."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def principal_symbol(self, sring: PolyRing | None = None) -> Poly:
        """Top-order part with d_i replaced by xi_i, in QQ[x, xi]."""
        if not self.terms:
            raise InvalidArgument("zero operator has no principal symbol")
        sring = sring or symbol_ring(self.ring)
        n = self.ring.n
        top = self.order()
        out = sring.zero()
        for e, p in self.terms.items():
            if sum(e) != top:
                continue
            xi = sring.one()
            for i, k in enumerate(e):
                if k:
                    xi = xi * sring.var(n + i) ** k
            out = out + self.ring.inject(p, sring) * xi
        return out

    def apply_to_poly(self, g: Poly) -> Poly:
        self_ring = self.ring
        if g.ring != self_ring:
            raise AmbientMismatch("operand in a different ring")
        out = self_ring.zero()
        for e, p in self.terms.items():
            d = g
            for i, k in enumerate(e):
                for _ in range(k):
                    d = d.partial(i)
                    if d.is_zero():
                        break
            if not d.is_zero():
                out = out + p * d
        return out

    # printing -----------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        pieces = []
        for e in sorted(self.terms, key=DEGREVLEX.key, reverse=True):
            p = self.terms[e]
            dstr = "*".join(
                f"d{nm}" if k == 1 else f"d{nm}^{k}"
                for nm, k in zip(names, e) if k
            )
            ps = str(p)
            if not dstr:
                pieces.append(f"({ps})" if " " in ps else ps)
            elif ps == "1":
                pieces.append(dstr)
            elif len(p.terms) == 1 and " " not in ps:
                pieces.append(f"{ps}*{dstr}")
            else:
                pieces.append(f"({ps})*{dstr}")
        return " + ".join(pieces)

    __repr__ = __str__


def symbol_ring(ring: PolyRing) -> PolyRing:
    names = list(ring.names)
    for i in range(ring.n):
        nm = f"xi{i + 1}"
        while nm in names:
            nm = "_" + nm
        names.append(nm)
    return PolyRing(names, ring.order)


def weyl_mul(P: WeylOp, Q: WeylOp) -> WeylOp:
    """Normal-ordered product: apply d^b * g = sum C(b,m)(d^(b-m) g) d^m."""
    P._check(Q)
    ring = P.ring
    n = ring.n
    out: dict = {}
    for eb, p in P.terms.items():
        for eg, q in Q.terms.items():
            # distribute d^eb across q variable by variable, then append d^eg
            parts = [((), q, Fraction(1))]
            for i in range(n):
                b = eb[i]
                if b == 0:
                    parts = [(m + (0,), g, c) for (m, g, c) in parts]
                    continue
                nxt = []
                for m, g, c in parts:
                    d = g
                    for k in range(b + 1):
                        if k > 0:
                            d = d.partial(i)
                        keep = d
                        if keep.is_zero() and k < b:
                            # all higher derivatives vanish too
                            nxt.append((m + (b - k,), keep, Fraction(0)))
                            break
                        nxt.append((m + (b - k,), keep, c * comb(b, k)))
                    # note: k-th derivative pairs with d^(b-k)
                nxt = [(m, g, c) for (m, g, c) in nxt if c and not g.is_zero()]
                parts = nxt
            for m, g, c in parts:
                e = tuple(a + b2 for a, b2 in zip(m, eg))
                add = p * g * c
                s = out.get(e)
                out[e] = add if s is None else s + add
    return WeylOp(ring, out)


def weyl_order(P: WeylOp):
    return P.order()


def principal_symbol(P: WeylOp, sring: PolyRing | None = None) -> Poly:
    return P.principal_symbol(sring)


def apply_to_fraction(P: WeylOp, g: Poly, m: int, h: Poly):
    """Evaluate P(g/h^m); returns (numerator, m') reduced so h does not
    divide the numerator (or m' = 0)."""
    if h.is_zero():
        raise InvalidArgument("zero denominator polynomial")
    if m < 0:
        raise InvalidArgument("pole order must be nonnegative")
    ring = P.ring
    out_num = ring.zero()
    out_m = 0
    for e, p in P.terms.items():
        num, mm = g, m
        for i, k in enumerate(e):
            for _ in range(k):
                if mm == 0:
                    num = num.partial(i)
                else:
                    num = num.partial(i) * h - mm * num * h.partial(i)
                    mm += 1
        out_num, out_m = _add_fractions(out_num, out_m, p * num, mm, h)
    return _reduce_fraction(out_num, out_m, h)


def _add_fractions(a: Poly, ma: int, b: Poly, mb: int, h: Poly):
    if ma == mb:
        return a + b, ma
    if ma < mb:
        return a * h ** (mb - ma) + b, mb
    return a + b * h ** (ma - mb), ma


def _reduce_fraction(num: Poly, m: int, h: Poly):
    if num.is_zero():
        return num, 0
    while m > 0:
        q, r = divmod_single(num, h)
        if not r.is_zero():
            break
        num = q
        m -= 1
    return num, m


# ---------------------------------------------------------------------------
# parsing: polynomial grammar extended with d<var> tokens


def parse_operator(ring: PolyRing, text: str) -> WeylOp:
    """Parse operator text; products are normal ordered left to right."""
    dnames = {}
    for i, nm in enumerate(ring.names):
        token = "d" + nm
        if token in ring.names:
            raise ParseError(f"variable {token!r} shadows the d-token of {nm!r}")
        dnames[token] = i
    toks = _Tokens(text)

    def atom(r, tk):
        tok = tk.next()
        if tok == "(":
            val = _parse_expr(r, tk, atom)
            if tk.next() != ")":
                raise ParseError("missing closing parenthesis")
            return val
        if isinstance(tok, int):
            if tk.peek() == "/":
                tk.next()
                den = tk.next()
                if not isinstance(den, int) or den == 0:
                    raise ParseError("bad rational literal")
                return WeylOp.from_poly(r.const(Fraction(tok, den)))
            return WeylOp.from_poly(r.const(tok))
        if isinstance(tok, str) and tok in dnames:
            return WeylOp.partial(r, dnames[tok])
        if isinstance(tok, str) and tok in r._index:
            return WeylOp.from_poly(r.var(r._index[tok]))
        raise ParseError(f"undeclared identifier {tok!r}")

    op = _parse_expr(ring, toks, atom)
    if toks.peek() is not None:
        raise ParseError(f"trailing input near {toks.peek()!r}")
    return op
