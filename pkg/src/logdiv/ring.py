"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials are stored sparsely as a map from exponent tuples to nonzero
``Fraction`` coefficients.  Everything is immutable by convention: no
operation mutates its operands, so values can be shared freely between
threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import AmbientMismatch, InvalidArgument, ParseError, ShapeError

Exp = tuple  # exponent vector, one entry per ring variable


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Total multiplicative well-order on exponent vectors.

    Subclasses provide ``key(exp)``; larger keys mean larger monomials.
    """

    name = "?"

    def key(self, exp: Exp):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Lex(MonomialOrder):
    name = "lex"

    def key(self, exp):
        return exp


class DegRevLex(MonomialOrder):
    name = "degrevlex"

    def key(self, exp):
        neg = tuple(-e for e in reversed(exp))
        return (sum(exp), neg)


class BlockOrder(MonomialOrder):
    """Product order: the first ``split`` variables dominate.

    Used for tag-variable elimination; any monomial containing a block-one
    variable is larger than any monomial without one.
    """

    def __init__(self, split: int, first: MonomialOrder | None = None,
                 rest: MonomialOrder | None = None):
        self.split = split
        self.first = first or DegRevLex()
        self.rest = rest or DegRevLex()
        self.name = f"block({split};{self.first.name},{self.rest.name})"

    def key(self, exp):
        return (self.first.key(exp[: self.split]), self.rest.key(exp[self.split:]))


LEX = Lex()
DEGREVLEX = DegRevLex()


class ModuleOrder:
    """Order on module terms ``(component, exponent vector)``.

    ``pot`` compares the component first (lower component index wins, or a
    custom priority list), ``top`` compares the monomial first.
    """

    def __init__(self, base: MonomialOrder, kind: str = "pot",
                 priority: Sequence[int] | None = None):
        if kind not in ("pot", "top"):
            raise InvalidArgument(f"unknown module order kind {kind!r}")
        self.base = base
        self.kind = kind
        self.priority = tuple(priority) if priority is not None else None
        self.name = f"{kind}/{base.name}"

    def _comp_key(self, comp: int):
        if self.priority is not None:
            return -self.priority.index(comp)
        return -comp

    def key(self, term):
        comp, exp = term
        if self.kind == "pot":
            return (self._comp_key(comp), self.base.key(exp))
        return (self.base.key(exp), self._comp_key(comp))


# ---------------------------------------------------------------------------
# rings and polynomials


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class PolyRing:
    """A polynomial ring QQ[x1..xn] with named variables and a default order."""

    def __init__(self, names: Sequence[str], order: MonomialOrder = DEGREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise InvalidArgument("duplicate variable names")
        for nm in names:
            if not nm or not (nm[0].isalpha() or nm[0] == "_"):
                raise InvalidArgument(f"bad variable name {nm!r}")
        self.names = names
        self.n = len(names)
        self.order = order
        self._index = {nm: i for i, nm in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"QQ[{','.join(self.names)}]"

    # constructors ---------------------------------------------------------

    def poly(self, terms: Mapping[Exp, Fraction] | Iterable) -> "Poly":
        items = terms.items() if isinstance(terms, Mapping) else terms
        data = {}
        for exp, c in items:
            exp = tuple(exp)
            if len(exp) != self.n or any(e < 0 for e in exp):
                raise AmbientMismatch(f"bad exponent {exp} for {self!r}")
            c = _as_fraction(c)
            if c:
                data[exp] = data.get(exp, Fraction(0)) + c
        return Poly(self, {e: c for e, c in data.items() if c})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = _as_fraction(c)
        return Poly(self, {(0,) * self.n: c} if c else {})

    def var(self, i: int) -> "Poly":
        exp = [0] * self.n
        exp[i] = 1
        return Poly(self, {tuple(exp): Fraction(1)})

    def gens(self) -> tuple:
        return tuple(self.var(i) for i in range(self.n))

    def parse(self, text: str) -> "Poly":
        return _parse_poly(self, text)

    # ring extension -------------------------------------------------------

    def extend(self, extra: Sequence[str], order: MonomialOrder | None = None,
               prepend: bool = False) -> "PolyRing":
        names = tuple(extra) + self.names if prepend else self.names + tuple(extra)
        return PolyRing(names, order or self.order)

    def inject(self, p: "Poly", target: "PolyRing") -> "Poly":
        """Map p into a ring containing the same variable names."""
        pos = [target._index[nm] for nm in self.names]
        out = {}
        for exp, c in p.terms.items():
            e2 = [0] * target.n
            for i, e in enumerate(exp):
                e2[pos[i]] = e
            out[tuple(e2)] = c
        return Poly(target, out)


class Poly:
    """Sparse exact polynomial; no zero coefficients are stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # predicates and accessors ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.ring.n, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def degree_in_block(self, indices) -> int:
        if not self.terms:
            return -1
        return max(sum(e[i] for i in indices) for e in self.terms)

    def lead(self, order: MonomialOrder | None = None):
        """Return (exp, coeff) of the leading term, or None for zero."""
        if not self.terms:
            return None
        order = order or self.ring.order
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def coeff_of(self, exp: Exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    # arithmetic -------------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise AmbientMismatch(f"{self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {e: k * c for e, k in self.terms.items()})
        self._check(other)
        if len(self.terms) > len(other.terms):
            self, other = other, self
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidArgument("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return isinstance(other, Poly) and self.ring == other.ring \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # calculus ----------------------------------------------------------------

    def partial(self, i: int) -> "Poly":
        """Formal partial derivative with respect to variable i."""
        if not 0 <= i < self.ring.n:
            raise InvalidArgument(f"no variable with index {i}")
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                s = out.get(e2, Fraction(0)) + c * e[i]
                if s:
                    out[e2] = s
                elif e2 in out:
                    del out[e2]
        return Poly(self.ring, out)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.ring.n:
            raise ShapeError("point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= _as_fraction(x) ** k
            total += v
        return total

    # printing -----------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        order = self.ring.order
        parts = []
        for exp in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[exp]
            mono = "*".join(
                nm if e == 1 else f"{nm}^{e}"
                for nm, e in zip(self.ring.names, exp) if e
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__


# ---------------------------------------------------------------------------
# single-divisor division, gcd, squarefreeness


def divmod_single(f: Poly, g: Poly, order: MonomialOrder | None = None):
    """Divide f by one divisor g; return (q, r) with f = q*g + r.

    No term of r is divisible by the leading monomial of g.
    """
    if g.is_zero():
        raise InvalidArgument("division by zero polynomial")
    f._check(g)
    order = order or f.ring.order
    gexp, gc = g.lead(order)
    q: dict = {}
    r: dict = {}
    work = dict(f.terms)
    while work:
        exp = max(work, key=order.key)
        c = work.pop(exp)
        if all(a >= b for a, b in zip(exp, gexp)):
            qe = tuple(a - b for a, b in zip(exp, gexp))
            qc = c / gc
            q[qe] = q.get(qe, Fraction(0)) + qc
            for e2, c2 in g.terms.items():
                if e2 == gexp:
                    continue
                e = tuple(a + b for a, b in zip(qe, e2))
                s = work.get(e, Fraction(0)) - qc * c2
                if s:
                    work[e] = s
                elif e in work:
                    del work[e]
        else:
            r[exp] = c
    ring = f.ring
    return Poly(ring, {e: c for e, c in q.items() if c}), Poly(ring, r)


def divides(g: Poly, f: Poly) -> bool:
    return divmod_single(f, g)[1].is_zero()


def exact_div(f: Poly, g: Poly) -> Poly:
    q, r = divmod_single(f, g)
    if not r.is_zero():
        raise InvalidArgument("inexact polynomial division")
    return q


def _content_free(f: Poly) -> Poly:
    """Scale so integer coefficients with content 1 and positive lead."""
    if f.is_zero():
        return f
    from math import gcd as igcd
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // igcd(den, c.denominator)
    num = 0
    for c in f.terms.values():
        num = igcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num)
    exp = max(f.terms, key=f.ring.order.key)
    if f.terms[exp] < 0:
        scale = -scale
    return f * scale


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Multivariate gcd over QQ via a primitive pseudo-remainder sequence.

    The result is normalised: integer content 1, positive leading
    coefficient, and 1 whenever f, g are coprime.
    """
    f._check(g)
    if f.is_zero():
        return _content_free(g)
    if g.is_zero():
        return _content_free(f)
    active = [i for i in range(f.ring.n)
              if f.degree_in(i) > 0 or g.degree_in(i) > 0]
    return _content_free(_gcd_rec(f, g, active))


def _coeffs_in(f: Poly, i: int):
    """Split f as a univariate in variable i: degree -> coefficient Poly."""
    buckets: dict = {}
    for e, c in f.terms.items():
        d = e[i]
        e2 = e[:i] + (0,) + e[i + 1:]
        buckets.setdefault(d, {})[e2] = c
    return {d: Poly(f.ring, t) for d, t in buckets.items()}


def _from_coeffs(ring: PolyRing, i: int, coeffs) -> Poly:
    out: dict = {}
    for d, p in coeffs.items():
        for e, c in p.terms.items():
            e2 = e[:i] + (d,) + e[i + 1:]
            out[e2] = out.get(e2, Fraction(0)) + c
    return Poly(ring, {e: c for e, c in out.items() if c})


def _gcd_rec(f: Poly, g: Poly, active) -> Poly:
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if not active:
        return f.ring.one()
    i = active[-1]
    rest = active[:-1]
    if f.degree_in(i) == 0 and g.degree_in(i) == 0:
        return _gcd_rec(f, g, rest)

    def content(p: Poly) -> Poly:
        cs = list(_coeffs_in(p, i).values())
        acc = cs[0]
        for c in cs[1:]:
            acc = _gcd_rec(acc, c, rest)
            if acc.is_constant():
                break
        return acc

    cf, cg = content(f), content(g)
    cont = _gcd_rec(cf, cg, rest)
    a, b = exact_div(f, cf), exact_div(g, cg)
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    # primitive PRS in the main variable
    while not b.is_zero():
        r = _pseudo_rem(a, b, i)
        a = b
        if r.is_zero():
            b = r
        else:
            b = exact_div(r, content(r))
    if a.degree_in(i) == 0:
        return cont
    prim = exact_div(a, content(a))
    return cont * prim


def _pseudo_rem(f: Poly, g: Poly, i: int) -> Poly:
    df, dg = f.degree_in(i), g.degree_in(i)
    if df < dg:
        return f
    gc = _coeffs_in(g, i)
    lc_g = gc[dg]
    r = f
    xi = f.ring.var(i)
    while not r.is_zero() and r.degree_in(i) >= dg:
        dr = r.degree_in(i)
        lc_r = _coeffs_in(r, i)[dr]
        r = lc_g * r - lc_r * (xi ** (dr - dg)) * g
    return r


def squarefree_check(h: Poly) -> bool:
    """True iff h has no repeated irreducible factor over QQ.

    Computed as gcd(h, dh/dx1, ..., dh/dxn) being constant; in
    characteristic zero that gcd collects exactly the repeated part.
    """
    if h.is_zero():
        from .errors import InvalidDivisor
        raise InvalidDivisor("zero polynomial")
    g = h
    for i in range(h.ring.n):
        if g.is_constant():
            return True
        g = poly_gcd(g, h.partial(i))
    return g.is_constant()


# ---------------------------------------------------------------------------
# vectors and matrices of polynomials


class PolyVec:
    """Element of a free module QQ[x]^r, stored as a tuple of Poly."""

    __slots__ = ("ring", "entries")

    def __init__(self, entries: Sequence[Poly]):
        entries = tuple(entries)
        if not entries:
            raise ShapeError("empty vector")
        ring = entries[0].ring
        for p in entries:
            if p.ring != ring:
                raise AmbientMismatch("mixed rings in vector")
        self.ring = ring
        self.entries = entries

    @property
    def rank(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other):
        if len(other) != len(self):
            raise ShapeError("rank mismatch")
        return PolyVec([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if len(other) != len(self):
            raise ShapeError("rank mismatch")
        return PolyVec([a - b for a, b in zip(self.entries, other.entries)])

    def __mul__(self, c):
        return PolyVec([p * c for p in self.entries])

    __rmul__ = __mul__

    def __neg__(self):
        return PolyVec([-p for p in self.entries])

    def is_zero(self):
        return all(p.is_zero() for p in self.entries)

    def __eq__(self, other):
        return isinstance(other, PolyVec) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.entries) + ")"

    __repr__ = __str__

    def dot(self, other: "PolyVec") -> Poly:
        if len(other) != len(self):
            raise ShapeError("rank mismatch")
        out = self.ring.zero()
        for a, b in zip(self.entries, other.entries):
            out = out + a * b
        return out


def mat_mul(A, B):
    """Product of two matrices (lists of rows) over a commutative ring."""
    if not A or not B:
        raise ShapeError("empty matrix")
    if len(A[0]) != len(B):
        raise ShapeError("inner dimensions differ")
    return [[_row_dot(row, [B[k][j] for k in range(len(B))])
             for j in range(len(B[0]))] for row in A]


def _row_dot(row, col):
    out = row[0] * col[0]
    for a, b in zip(row[1:], col[1:]):
        out = out + a * b
    return out


def det(M) -> Poly:
    """Exact determinant by cofactor expansion along the sparsest column."""
    m = len(M)
    for row in M:
        if len(row) != m:
            raise ShapeError("determinant of a non-square matrix")
    ring = M[0][0].ring
    return _det_rec([list(r) for r in M], ring)


def _det_rec(M, ring) -> Poly:
    m = len(M)
    if m == 1:
        return M[0][0]
    if m == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    col = min(range(m), key=lambda j: sum(1 for i in range(m) if M[i][j]))
    out = ring.zero()
    for i in range(m):
        if not M[i][col]:
            continue
        minor = [[M[r][c] for c in range(m) if c != col]
                 for r in range(m) if r != i]
        cof = _det_rec(minor, ring)
        term = M[i][col] * cof
        out = out + (term if (i + col) % 2 == 0 else -term)
    return out


# ---------------------------------------------------------------------------
# parsing


class _Tokens:
    def __init__(self, text: str):
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*/^()":
                self.toks.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(int(text[i:j]))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(text[i:j])
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok


def _parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse infix polynomial text with +, -, *, ^ and p/q literals."""
    toks = _Tokens(text)
    p = _parse_expr(ring, toks, _poly_atom)
    if toks.peek() is not None:
        raise ParseError(f"trailing input near {toks.peek()!r}")
    return p


def _parse_expr(ring, toks, atom_fn):
    val = _parse_term(ring, toks, atom_fn)
    while toks.peek() in ("+", "-"):
        op = toks.next()
        rhs = _parse_term(ring, toks, atom_fn)
        val = val + rhs if op == "+" else val - rhs
    return val


def _parse_term(ring, toks, atom_fn):
    val = _parse_factor(ring, toks, atom_fn)
    while toks.peek() == "*":
        toks.next()
        val = val * _parse_factor(ring, toks, atom_fn)
    return val


def _parse_factor(ring, toks, atom_fn):
    if toks.peek() == "-":
        toks.next()
        return -_parse_factor(ring, toks, atom_fn)
    val = atom_fn(ring, toks)
    while toks.peek() == "^":
        toks.next()
        k = toks.next()
        if not isinstance(k, int):
            raise ParseError("exponent must be an integer")
        val = val ** k
    return val


def _poly_atom(ring: PolyRing, toks: _Tokens):
    tok = toks.next()
    if tok == "(":
        val = _parse_expr(ring, toks, _poly_atom)
        if toks.next() != ")":
            raise ParseError("missing closing parenthesis")
        return val
    if isinstance(tok, int):
        if toks.peek() == "/":
            toks.next()
            den = toks.next()
            if not isinstance(den, int) or den == 0:
                raise ParseError("bad rational literal")
            return ring.const(Fraction(tok, den))
        return ring.const(tok)
    if isinstance(tok, str) and tok in ring._index:
        return ring.var(ring._index[tok])
    raise ParseError(f"undeclared identifier {tok!r}")
