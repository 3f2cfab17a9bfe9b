"""Enveloping algebra of a Lie-Rinehart algebra with a free basis.

Elements are kept in PBW normal form: polynomial coefficients to the left
of ordered monomials e_1^g1 ... e_t^gt in the basis.  Products are normal
ordered with the two terminating rewrites

    e_j e_i -> e_i e_j + [e_j, e_i]          (j > i)
    e_i g   -> g e_i + anchor(e_i)(g)        (g a polynomial)

which is the executable content of the PBW theorem; an alternative
left-to-right strategy is provided so confluence can be tested.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .errors import AmbientMismatch, InvalidArgument, ShapeError
from .ring import Poly, PolyRing, PolyVec
from .weyl import WeylOp, weyl_mul


class LieRinehartData:
    """Anchor matrix and structure constants of a free Lie-Rinehart algebra.

    Validated on construction: the anchor must intertwine the abstract
    bracket with the commutator of vector fields, and the bracket must
    satisfy the Jacobi identity.
    """

    def __init__(self, ring: PolyRing, anchor: Sequence[PolyVec],
                 constants: dict):
        self.ring = ring
        self.anchor = [v if isinstance(v, PolyVec) else PolyVec(v)
                       for v in anchor]
        self.t = len(self.anchor)
        for v in self.anchor:
            if v.ring != ring or len(v) != ring.n:
                raise ShapeError("anchor rows must have one entry per variable")
        self.constants = {}
        for i in range(self.t):
            for j in range(i + 1, self.t):
                c = constants.get((i, j))
                if c is None:
                    raise ShapeError(f"missing structure constants for ({i},{j})")
                c = tuple(c)
                if len(c) != self.t:
                    raise ShapeError("structure constant vector of wrong length")
                self.constants[(i, j)] = c
        self._validate()

    @classmethod
    def from_frame(cls, frame) -> "LieRinehartData":
        constants = {key: tuple(vec.entries)
                     for key, vec in frame.structure_constants.items()}
        return cls(frame.ring, [r.coeffs for r in frame.rows], constants)

    def derive(self, i: int, g: Poly) -> Poly:
        """Apply the anchor image of e_i to a polynomial."""
        out = self.ring.zero()
        for k, a in enumerate(self.anchor[i]):
            if a.is_zero():
                continue
            out = out + a * g.partial(k)
        return out

    def derive_by(self, lam: Sequence[Poly], g: Poly) -> Poly:
        """Apply the derivation with basis coefficients lam to g."""
        out = self.ring.zero()
        for i, c in enumerate(lam):
            if c.is_zero():
                continue
            out = out + c * self.derive(i, g)
        return out

    def bracket_coeffs(self, i: int, j: int):
        """Coefficient vector of [e_i, e_j]."""
        zero = self.ring.zero()
        if i == j:
            return tuple(zero for _ in range(self.t))
        if i < j:
            return self.constants[(i, j)]
        return tuple(-c for c in self.constants[(j, i)])

    def _validate(self):
        ring = self.ring
        # anchor respects the bracket on basis pairs
        for i in range(self.t):
            for j in range(i + 1, self.t):
                lhs = []
                for m in range(ring.n):
                    v = ring.zero()
                    v = v + self.derive(i, self.anchor[j][m])
                    v = v - self.derive(j, self.anchor[i][m])
                    lhs.append(v)
                rhs = [ring.zero() for _ in range(ring.n)]
                for k, c in enumerate(self.constants[(i, j)]):
                    if c.is_zero():
                        continue
                    for m in range(ring.n):
                        rhs[m] = rhs[m] + c * self.anchor[k][m]
                if lhs != rhs:
                    raise InvalidArgument(
                        f"anchor does not respect the bracket on ({i},{j})")
        # Jacobi on basis triples, with the Leibniz correction for the
        # polynomial coefficients of the bracket values
        for i in range(self.t):
            for j in range(i + 1, self.t):
                for k in range(j + 1, self.t):
                    total = [ring.zero() for _ in range(self.t)]
                    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket_coeffs(a, b)
                        for m, cm in enumerate(inner):
                            if cm.is_zero():
                                continue
                            for l, d in enumerate(self.bracket_coeffs(m, c)):
                                total[l] = total[l] + cm * d
                            total[m] = total[m] - self.derive(c, cm)
                    if any(not p.is_zero() for p in total):
                        raise InvalidArgument(
                            f"Jacobi identity fails on ({i},{j},{k})")

    def __eq__(self, other):
        return isinstance(other, LieRinehartData) and self.ring == other.ring \
            and self.anchor == other.anchor and self.constants == other.constants

    def check_sub_basis(self, indices) -> tuple:
        """Validate that the given basis indices are closed under bracket."""
        sub = tuple(sorted(set(indices)))
        for i in sub:
            for j in sub:
                if i < j:
                    for k, c in enumerate(self.constants[(i, j)]):
                        if k not in sub and not c.is_zero():
                            raise InvalidArgument(
                                "sub-basis is not closed under bracket")
        return sub


class UElement:
    """PBW normal form element of the enveloping algebra."""

    __slots__ = ("data", "terms")

    def __init__(self, data: LieRinehartData, terms: dict):
        self.data = data
        self.terms = {g: p for g, p in terms.items() if not p.is_zero()}

    # constructors -----------------------------------------------------------

    @classmethod
    def from_poly(cls, data: LieRinehartData, p: Poly) -> "UElement":
        return cls(data, {(0,) * data.t: p})

    @classmethod
    def generator(cls, data: LieRinehartData, i: int) -> "UElement":
        g = [0] * data.t
        g[i] = 1
        return cls(data, {tuple(g): data.ring.one()})

    @classmethod
    def from_pair(cls, data: LieRinehartData, a: Poly,
                  lam: Sequence[Poly]) -> "UElement":
        """Image of a + lambda with lambda given by basis coefficients."""
        terms = {(0,) * data.t: a}
        for i, c in enumerate(lam):
            g = [0] * data.t
            g[i] = 1
            terms[tuple(g)] = c
        return cls(data, terms)

    @classmethod
    def zero(cls, data: LieRinehartData) -> "UElement":
        return cls(data, {})

    # structure ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Maximal e-degree; -1 for the zero element."""
        if not self.terms:
            return -1
        return max(sum(g) for g in self.terms)

    def constant_coefficient(self) -> Poly:
        return self.terms.get((0,) * self.data.t, self.data.ring.zero())

    def _check(self, other: "UElement"):
        if self.data is not other.data and self.data != other.data:
            raise AmbientMismatch("elements of different enveloping algebras")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            p = other if isinstance(other, Poly) else self.data.ring.const(other)
            other = UElement.from_poly(self.data, p)
        self._check(other)
        out = dict(self.terms)
        for g, p in other.terms.items():
            s = out.get(g)
            out[g] = p if s is None else s + p
        return UElement(self.data, out)

    __radd__ = __add__

    def __neg__(self):
        return UElement(self.data, {g: -p for g, p in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            p = other if isinstance(other, Poly) else self.data.ring.const(other)
            other = UElement.from_poly(self.data, p)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UElement(self.data,
                            {g: p * other for g, p in self.terms.items()})
        if isinstance(other, Poly):
            other = UElement.from_poly(self.data, other)
        return u_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        if isinstance(other, Poly):
            return u_mul(UElement.from_poly(self.data, other), self)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, UElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(
            (g, frozenset(p.terms.items())) for g, p in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for g in sorted(self.terms, key=lambda g: (sum(g), g), reverse=True):
            p = self.terms[g]
            estr = "*".join(
                f"e{i + 1}" if k == 1 else f"e{i + 1}^{k}"
                for i, k in enumerate(g) if k
            )
            ps = str(p)
            if not estr:
                pieces.append(f"({ps})" if " " in ps else ps)
            elif ps == "1":
                pieces.append(estr)
            elif len(p.terms) == 1 and " " not in ps:
                pieces.append(f"{ps}*{estr}")
            else:
                pieces.append(f"({ps})*{estr}")
        return " + ".join(pieces)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# normal ordering


def _mon_times_poly(data: LieRinehartData, gamma, g: Poly) -> dict:
    """Terms of e^gamma * g; exponents shrink, coefficients collect derivatives."""
    if g.is_zero():
        return {}
    if not any(gamma):
        return {gamma: g}
    i = max(k for k, v in enumerate(gamma) if v)
    gp = gamma[:i] + (gamma[i] - 1,) + gamma[i + 1:]
    out: dict = {}
    for mu, c in _mon_times_poly(data, gp, g).items():
        key = mu[:i] + (mu[i] + 1,) + mu[i + 1:]
        s = out.get(key)
        out[key] = c if s is None else s + c
    for mu, c in _mon_times_poly(data, gp, data.derive(i, g)).items():
        s = out.get(mu)
        out[mu] = c if s is None else s + c
    return {g2: c for g2, c in out.items() if not c.is_zero()}


def _term_times_gen(data: LieRinehartData, gamma, coeff: Poly, j: int) -> dict:
    """Terms of (coeff * e^gamma) * e_j in normal order."""
    disorder = [k for k in range(j + 1, data.t) if gamma[k]]
    if not disorder:
        key = gamma[:j] + (gamma[j] + 1,) + gamma[j + 1:]
        return {key: coeff}
    k = disorder[-1]
    gp = gamma[:k] + (gamma[k] - 1,) + gamma[k + 1:]
    out: dict = {}
    # e^gamma e_j = (e^gp e_j) e_k - e^gp [e_j, e_k]
    for mu, c in _term_times_gen(data, gp, coeff, j).items():
        for nu, c2 in _term_times_gen(data, mu, c, k).items():
            s = out.get(nu)
            out[nu] = c2 if s is None else s + c2
    for m, cm in enumerate(data.constants[(j, k)]):
        if cm.is_zero():
            continue
        for mu, c in _mon_times_poly(data, gp, cm).items():
            for nu, c2 in _term_times_gen(data, mu, -coeff * c, m).items():
                s = out.get(nu)
                out[nu] = c2 if s is None else s + c2
    return {g2: c for g2, c in out.items() if not c.is_zero()}


def u_mul(a: UElement, b: UElement) -> UElement:
    """Normal-ordered product, pushing b's factors in from the right."""
    a._check(b)
    data = a.data
    out: dict = {}
    for gb, cb in b.terms.items():
        acc: dict = {}
        for ga, ca in a.terms.items():
            for mu, g in _mon_times_poly(data, ga, cb).items():
                s = acc.get(mu)
                v = ca * g
                acc[mu] = v if s is None else s + v
        for j in range(data.t):
            for _ in range(gb[j]):
                nxt: dict = {}
                for mu, c in acc.items():
                    if c.is_zero():
                        continue
                    for nu, c2 in _term_times_gen(data, mu, c, j).items():
                        s = nxt.get(nu)
                        nxt[nu] = c2 if s is None else s + c2
                acc = nxt
        for mu, c in acc.items():
            s = out.get(mu)
            out[mu] = c if s is None else s + c
    return UElement(data, out)


def _gen_times_mon(data: LieRinehartData, j: int, gamma) -> dict:
    """Terms of e_j * e^gamma in normal order."""
    low = [k for k in range(j) if gamma[k]]
    if not low:
        key = gamma[:j] + (gamma[j] + 1,) + gamma[j + 1:]
        return {key: data.ring.one()}
    k = low[0]
    gp = gamma[:k] + (gamma[k] - 1,) + gamma[k + 1:]
    out: dict = {}
    # e_j e_k e^gp = e_k (e_j e^gp) - [e_k, e_j] e^gp
    for mu, c in _gen_times_mon(data, j, gp).items():
        for nu, c2 in _gen_times_term(data, k, mu, c).items():
            s = out.get(nu)
            out[nu] = c2 if s is None else s + c2
    for m, cm in enumerate(data.constants[(k, j)]):
        if cm.is_zero():
            continue
        for nu, c2 in _gen_times_mon(data, m, gp).items():
            v = -cm * c2
            s = out.get(nu)
            out[nu] = v if s is None else s + v
    return {g2: c for g2, c in out.items() if not c.is_zero()}


def _gen_times_term(data: LieRinehartData, j: int, gamma, coeff: Poly) -> dict:
    """Terms of e_j * (coeff * e^gamma) = d_j(coeff) e^gamma + coeff (e_j e^gamma)."""
    out: dict = {}
    dcoeff = data.derive(j, coeff)
    if not dcoeff.is_zero():
        out[gamma] = dcoeff
    for mu, c in _gen_times_mon(data, j, gamma).items():
        v = coeff * c
        s = out.get(mu)
        out[mu] = v if s is None else s + v
    return {g2: c for g2, c in out.items() if not c.is_zero()}


def u_mul_alt(a: UElement, b: UElement) -> UElement:
    """Same product, pushing a's factors in from the left.

    Kept as an independent rewrite strategy; agreement with u_mul on random
    pairs is the executable confluence statement of the PBW theorem.
    """
    a._check(b)
    data = a.data
    out: dict = {}
    for ga, ca in a.terms.items():
        acc = dict(b.terms)
        for j in range(data.t - 1, -1, -1):
            for _ in range(ga[j]):
                nxt: dict = {}
                for mu, c in acc.items():
                    if c.is_zero():
                        continue
                    for nu, c2 in _gen_times_term(data, j, mu, c).items():
                        s = nxt.get(nu)
                        nxt[nu] = c2 if s is None else s + c2
                acc = nxt
        for mu, c in acc.items():
            v = ca * c
            s = out.get(mu)
            out[mu] = v if s is None else s + v
    return UElement(data, out)


def u_commutator(a: UElement, b: UElement) -> UElement:
    return u_mul(a, b) - u_mul(b, a)


# ---------------------------------------------------------------------------
# morphism to the Weyl algebra


def to_weyl(a: UElement, data: LieRinehartData | None = None) -> WeylOp:
    """Algebra morphism sending e_i to its anchor vector field."""
    data = data or a.data
    ring = data.ring
    rows = [WeylOp.from_vector_field(v) for v in data.anchor]
    out = WeylOp.zero(ring)
    for g, p in a.terms.items():
        op = WeylOp.from_poly(p)
        for j in range(data.t):
            for _ in range(g[j]):
                op = weyl_mul(op, rows[j])
        out = out + op
    return out


def u_symbol(a: UElement, sring: PolyRing) -> Poly:
    """Principal symbol through the anchor: top e-degree part, e_i -> sigma_i."""
    if a.is_zero():
        raise InvalidArgument("zero element has no symbol")
    data = a.data
    n = data.ring.n
    sigma = []
    for v in data.anchor:
        s = sring.zero()
        for j, c in enumerate(v):
            s = s + data.ring.inject(c, sring) * sring.var(n + j)
        sigma.append(s)
    top = a.order()
    out = sring.zero()
    for g, p in a.terms.items():
        if sum(g) != top:
            continue
        term = data.ring.inject(p, sring)
        for i, k in enumerate(g):
            for _ in range(k):
                term = term * sigma[i]
        out = out + term
    return out


# ---------------------------------------------------------------------------
# appendix machinery: the nu recursion and its identities


Alpha = Callable[[UElement, UElement], UElement]


def _word_entry(data, entry):
    a, lam = entry
    lam = tuple(lam)
    if len(lam) != data.t:
        raise ShapeError("lambda coefficient vector of wrong length")
    return a, lam


def nu_eval(data: LieRinehartData, m: UElement, word, n: UElement,
            alpha: Alpha | None = None) -> UElement:
    """The recursion nu_r(m, t1 x ... x tr, n).

    Word entries are pairs (a, lam) representing t = a + lam with a a
    polynomial and lam a basis-coefficient vector.  The default alpha is
    plain multiplication in U, so nu_0(m, n) = m*n.
    """
    alpha = alpha or u_mul
    if not word:
        return alpha(m, n)
    a1, lam1 = _word_entry(data, word[0])
    t1 = UElement.from_pair(data, a1, lam1)
    lam1_u = UElement.from_pair(data, data.ring.zero(), lam1)
    head = nu_eval(data, u_mul(m, t1), word[1:], n, alpha)
    tail = nu_eval(data, m, word[1:], n, alpha)
    return head - u_mul(tail, lam1_u)


def nu_closed_form(data: LieRinehartData, m: UElement, word, n: UElement,
                   alpha: Alpha | None = None) -> UElement:
    """Subset-sum formula for nu_r, proved in the source by induction.

    nu_r = sum over E of (-1)^(r - |E|) alpha(m t_E, n) lam_(I-E) with t_E
    the increasing product and lam_E the decreasing product.
    """
    alpha = alpha or u_mul
    entries = [_word_entry(data, w) for w in word]
    r = len(entries)
    out = UElement.zero(data)
    for mask in range(1 << r):
        e_set = [i for i in range(r) if mask >> i & 1]
        rest = [i for i in range(r) if not mask >> i & 1]
        prod = m
        for i in e_set:
            prod = u_mul(prod, UElement.from_pair(data, *entries[i]))
        val = alpha(prod, n)
        for i in reversed(rest):
            val = u_mul(val, UElement.from_pair(
                data, data.ring.zero(), entries[i][1]))
        sign = 1 if (r - len(e_set)) % 2 == 0 else -1
        out = out + val * sign
    return out


def augmentation_alpha(data: LieRinehartData) -> Alpha:
    """The right-U0-linear alpha sending m x n to m * (n applied to 1).

    Unlike plain multiplication this alpha satisfies the module-linearity
    hypothesis of the appendix, so the absorption lemma holds for words
    ending in any element of Delta_0, not just in a polynomial.
    """

    def alpha(m: UElement, n: UElement) -> UElement:
        return m * n.constant_coefficient()

    return alpha


def iterated_derivation(data: LieRinehartData, lams, a: Poly) -> Poly:
    """lam_E(a): apply the entries of lams to a, first entry innermost."""
    out = a
    for lam in lams:
        out = data.derive_by(lam, out)
    return out


def commutation_identities(data: LieRinehartData, ts, a: Poly, E) -> bool:
    """Both commutation-lemma identities, evaluated inside U.

    ts is a list of (a_i, lam_i) pairs indexed from 0; E is the subset of
    indices to use.  Checks
      a t_E   = sum (-1)^(|E|-|E'|) t_E' lam_(E-E')(a)
      lam_E a = sum lam_E'(a) lam_(E-E')
    """
    E = sorted(E)
    entries = {i: _word_entry(data, ts[i]) for i in E}
    one = data.ring.one()

    def t_prod(idx):
        out = UElement.from_poly(data, one)
        for i in idx:
            out = u_mul(out, UElement.from_pair(data, *entries[i]))
        return out

    def lam_prod(idx):
        out = UElement.from_poly(data, one)
        for i in reversed(sorted(idx)):
            out = u_mul(out, UElement.from_pair(
                data, data.ring.zero(), entries[i][1]))
        return out

    def lam_applied(idx):
        return iterated_derivation(
            data, [entries[i][1] for i in sorted(idx)], a)

    lhs1 = u_mul(UElement.from_poly(data, a), t_prod(E))
    rhs1 = UElement.zero(data)
    lhs2 = u_mul(lam_prod(E), UElement.from_poly(data, a))
    rhs2 = UElement.zero(data)
    r = len(E)
    for mask in range(1 << r):
        sub = [E[i] for i in range(r) if mask >> i & 1]
        rest = [E[i] for i in range(r) if not mask >> i & 1]
        sign = 1 if len(rest) % 2 == 0 else -1
        rhs1 = rhs1 + u_mul(t_prod(sub),
                            UElement.from_poly(data, lam_applied(rest))) * sign
        rhs2 = rhs2 + u_mul(UElement.from_poly(data, lam_applied(sub)),
                            lam_prod(rest))
    return lhs1 == rhs1 and lhs2 == rhs2


def lemma_a4_identity(data: LieRinehartData, m: UElement, word, n: UElement,
                      alpha: Alpha | None = None) -> bool:
    """Absorption of the last word entry into n."""
    if not word:
        raise InvalidArgument("need a word of length at least one")
    a_r, lam_r = _word_entry(data, word[-1])
    t_r = UElement.from_pair(data, a_r, lam_r)
    lhs = nu_eval(data, m, word, n, alpha)
    rhs = nu_eval(data, m, word[:-1], u_mul(t_r, n), alpha)
    return lhs == rhs


def lemma_a5_identity(data: LieRinehartData, m: UElement, lam1, word, n,
                      alpha: Alpha | None = None) -> bool:
    """nu_(r-1)(m lam1, w, n) - nu_r(m, lam1 x w, n) = nu_(r-1)(m, w, n) lam1."""
    lam1 = tuple(lam1)
    lam1_u = UElement.from_pair(data, data.ring.zero(), lam1)
    lhs = nu_eval(data, u_mul(m, lam1_u), word, n, alpha) \
        - nu_eval(data, m, [(data.ring.zero(), lam1)] + list(word), n, alpha)
    rhs = u_mul(nu_eval(data, m, word, n, alpha), lam1_u)
    return lhs == rhs
