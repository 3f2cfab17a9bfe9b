"""Logarithmic derivations of a reduced divisor and their Lie structure.

A derivation delta = sum a_i d/dx_i is logarithmic for D = {h = 0} when
delta(h) is a polynomial multiple alpha * h.  A frame is a candidate basis
of n such derivations certified by the determinant criterion: the matrix of
coefficients has determinant c * h with c a nonzero rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidDivisor, NotInSpan, ShapeError
from .groebner import is_regular_sequence, lift_through, syzygies
from .ring import Poly, PolyRing, PolyVec, det, divmod_single, squarefree_check


class Divisor:
    """A reduced hypersurface {h = 0} in affine n-space over QQ."""

    def __init__(self, h: Poly):
        if h.is_zero() or h.is_constant():
            raise InvalidDivisor("defining equation is constant")
        if not squarefree_check(h):
            raise InvalidDivisor("defining equation is not reduced")
        self.h = h
        self.ring = h.ring
        self.n = h.ring.n

    def __repr__(self):
        return f"Divisor({self.h})"


class LogDerivation:
    """A logarithmic derivation together with its alpha coefficient."""

    def __init__(self, coeffs: PolyVec, alpha: Poly, divisor: Divisor):
        self.coeffs = coeffs
        self.alpha = alpha
        self.divisor = divisor

    def __call__(self, p: Poly) -> Poly:
        out = p.ring.zero()
        for i, a in enumerate(self.coeffs):
            out = out + a * p.partial(i)
        return out

    def __eq__(self, other):
        return isinstance(other, LogDerivation) and self.coeffs == other.coeffs

    def __str__(self):
        names = self.coeffs.ring.names
        parts = [f"({a})*d{nm}" for a, nm in zip(self.coeffs, names) if not a.is_zero()]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__

    def divergence(self) -> Poly:
        out = self.coeffs.ring.zero()
        for i, a in enumerate(self.coeffs):
            out = out + a.partial(i)
        return out


def apply_vector_field(coeffs: PolyVec, p: Poly) -> Poly:
    out = p.ring.zero()
    for i, a in enumerate(coeffs):
        out = out + a * p.partial(i)
    return out


def is_logarithmic(coeffs: PolyVec, D: Divisor) -> Poly | None:
    """Return alpha with delta(h) = alpha*h, or None if h does not divide."""
    if len(coeffs) != D.n:
        raise ShapeError(f"expected {D.n} coefficients, got {len(coeffs)}")
    val = apply_vector_field(coeffs, D.h)
    q, r = divmod_single(val, D.h)
    return q if r.is_zero() else None


def derivation_generators(D: Divisor) -> list[LogDerivation]:
    """Generators of Der(log D), computed as syzygies of (dh/dx_1..dh/dx_n, h)."""
    gens = [D.h.partial(i) for i in range(D.n)] + [D.h]
    rels = syzygies(gens)
    out = []
    for rel in rels:
        vec = PolyVec(rel.entries[: D.n])
        if vec.is_zero():
            continue
        alpha = -rel.entries[D.n]
        out.append(LogDerivation(vec, alpha, D))
    return out


@dataclass
class FreenessCertificate:
    """Witness that n rows form a basis: det(A) = c*h (unit * h locally)."""

    determinant: Poly
    unit: Poly
    constant: Fraction | None
    local: bool

    @property
    def holds(self):
        return True


@dataclass
class FreenessUndetermined:
    reason: str

    @property
    def holds(self):
        return False


def saito_test(rows, D: Divisor, local: bool = False):
    """Determinant criterion on n candidate rows.

    Globally the quotient det/h must be a nonzero rational; with
    ``local=True`` any polynomial unit at the origin (nonzero constant term)
    is accepted.
    """
    if len(rows) != D.n:
        raise ShapeError(f"need exactly {D.n} rows, got {len(rows)}")
    vecs = [r.coeffs if isinstance(r, LogDerivation) else r for r in rows]
    for vec in vecs:
        if is_logarithmic(vec, D) is None:
            return FreenessUndetermined("a row is not logarithmic")
    dm = det([list(v.entries) for v in vecs])
    q, r = divmod_single(dm, D.h)
    if not r.is_zero():
        return FreenessUndetermined("determinant is not a multiple of h")
    if q.is_zero():
        return FreenessUndetermined("determinant vanishes")
    if q.is_constant():
        return FreenessCertificate(dm, q, q.constant_value(), local)
    if local and q.constant_value() != 0:
        return FreenessCertificate(dm, q, None, local)
    return FreenessUndetermined("det/h is not a unit"
                                + (" at the origin" if local else ""))


def bracket(a: LogDerivation, b: LogDerivation) -> LogDerivation:
    """Lie bracket [a, b]; logarithmic again, with the alpha recomputed."""
    if a.divisor is not b.divisor and a.divisor.h != b.divisor.h:
        raise ShapeError("brackets of derivations of different divisors")
    coeffs = PolyVec([a(bj) - b(aj) for aj, bj in zip(a.coeffs, b.coeffs)])
    alpha = is_logarithmic(coeffs, a.divisor)
    assert alpha is not None, "bracket of logarithmic derivations escaped"
    return LogDerivation(coeffs, alpha, a.divisor)


class LogFrame:
    """A certified Saito basis with cached alphas and structure constants."""

    def __init__(self, D: Divisor, rows, local: bool = False):
        if len(rows) != D.n:
            raise ShapeError(f"a frame needs exactly {D.n} rows")
        self.divisor = D
        self.ring = D.ring
        self.n = D.n
        self.rows = []
        for r in rows:
            vec = r.coeffs if isinstance(r, LogDerivation) else PolyVec(r)
            alpha = is_logarithmic(vec, D)
            if alpha is None:
                raise InvalidDivisor("frame row is not logarithmic")
            self.rows.append(LogDerivation(vec, alpha, D))
        cert = saito_test(self.rows, D, local)
        if not cert.holds:
            raise InvalidDivisor(f"Saito test failed: {cert.reason}")
        self.certificate = cert
        self.alphas = [r.alpha for r in self.rows]
        self.structure_constants = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                br = bracket(self.rows[i], self.rows[j])
                self.structure_constants[(i, j)] = self.express(br)

    @property
    def matrix(self):
        return [list(r.coeffs.entries) for r in self.rows]

    def express(self, delta) -> PolyVec:
        """Coefficients g with delta = sum g_k delta_k; raises NotInSpan."""
        vec = delta.coeffs if isinstance(delta, LogDerivation) else delta
        cof = lift_through(vec, [r.coeffs for r in self.rows])
        return PolyVec(cof)

    def symbol_ring(self) -> PolyRing:
        names = list(self.ring.names)
        for i in range(self.n):
            nm = f"xi{i + 1}"
            while nm in names:
                nm = "_" + nm
            names.append(nm)
        return PolyRing(names, self.ring.order)

    def symbols(self, sring: PolyRing | None = None) -> list[Poly]:
        """Principal symbols sigma(delta_i) = sum a_ij * xi_j."""
        sring = sring or self.symbol_ring()
        out = []
        for r in self.rows:
            s = sring.zero()
            for j, a in enumerate(r.coeffs):
                s = s + self.ring.inject(a, sring) * sring.var(self.n + j)
            out.append(s)
        return out

    def bracket_table(self):
        """Structure constants as a dense table over pairs i < j."""
        return {(i, j): list(v.entries)
                for (i, j), v in self.structure_constants.items()}


def express_in_basis(delta, frame: LogFrame) -> PolyVec:
    return frame.express(delta)


def koszul_test(frame: LogFrame) -> bool:
    """Whether the frame symbols form a regular sequence in QQ[x, xi]."""
    sring = frame.symbol_ring()
    syms = frame.symbols(sring)
    return is_regular_sequence(syms, range(frame.n, 2 * frame.n))


def search_frame(D: Divisor, max_subsets: int = 200,
                 local: bool = False) -> LogFrame | None:
    """Look for a certified frame among syzygy generators.

    Tries n-subsets of the computed generators in a deterministic order, up
    to ``max_subsets`` determinant tests; None means undetermined.
    """
    from itertools import combinations

    gens = derivation_generators(D)
    if len(gens) < D.n:
        return None
    tried = 0
    for subset in combinations(range(len(gens)), D.n):
        if tried >= max_subsets:
            return None
        tried += 1
        rows = [gens[i] for i in subset]
        if saito_test(rows, D, local).holds:
            return LogFrame(D, rows, local)
    return None


def lie_derivative_topform(delta, omega, D: Divisor):
    """Right action of a derivation on (g/h^m) dx_1 ^ ... ^ dx_n.

    Returns the pair (g', m) over the same denominator h^m, using
    theta*delta = -L_delta(theta).  For m > 0 the field must be logarithmic,
    otherwise the result would leave the h-denominator lattice.
    """
    g, m = omega
    if m < 0:
        raise ShapeError("pole order must be nonnegative")
    if isinstance(delta, LogDerivation):
        coeffs, alpha = delta.coeffs, delta.alpha
    else:
        coeffs = delta
        alpha = is_logarithmic(coeffs, D)
    if m > 0 and alpha is None:
        from .errors import DenominatorEscape
        raise DenominatorEscape("non-logarithmic field on a pole of order > 0")
    div = D.ring.zero()
    for i, a in enumerate(coeffs):
        div = div + a.partial(i)
    lie = apply_vector_field(coeffs, g) + g * div
    if m > 0:
        lie = lie - m * g * alpha
    return (-lie, m)
