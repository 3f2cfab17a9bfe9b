"""Logarithmic Spencer complexes, twists by integrable connections, and the
degree -1 homology certificate of the worked three-variable example.

Complexes are stored as explicit matrices over the enveloping algebra; an
element of the degree -k term is a row vector of coefficients on the wedge
basis, and the differential acts by right multiplication by the stored
matrix, so "composition is zero" is an exact matrix identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .derivations import LogFrame
from .enveloping import LieRinehartData, UElement, to_weyl, u_commutator, u_mul
from .errors import (IntegrabilityViolation, InvalidArgument, NotInSpan,
                     ShapeError)
from .groebner import colon_ideal, is_regular_sequence, lift_through
from .ring import Poly, PolyRing, PolyVec
from .weyl import WeylOp, weyl_mul


# ---------------------------------------------------------------------------
# connections


class Connection:
    """Matrices Gamma[i] of the covariant derivatives along the frame rows.

    The action on the free module O^r is nabla(delta_i)(v) = delta_i(v) +
    Gamma[i] v, columns indexing the images of basis vectors.
    """

    def __init__(self, rank: int, gammas):
        self.rank = rank
        self.gammas = [[list(row) for row in g] for g in gammas]
        for g in self.gammas:
            if len(g) != rank or any(len(row) != rank for row in g):
                raise ShapeError("connection matrix of wrong size")

    @classmethod
    def trivial(cls, data: LieRinehartData, rank: int = 1) -> "Connection":
        zero = data.ring.zero()
        return cls(rank, [[[zero for _ in range(rank)] for _ in range(rank)]
                          for _ in range(data.t)])

    @classmethod
    def pole_twist(cls, frame: LogFrame, m: int) -> "Connection":
        """O(mD): the rank-one connection with Gamma[i] = -m*alpha_i."""
        return cls(1, [[[(-m) * a]] for a in frame.alphas])

    def dual(self) -> "Connection":
        return Connection(self.rank, [
            [[-g[b][a] for b in range(self.rank)] for a in range(self.rank)]
            for g in self.gammas])

    def tensor(self, other: "Connection") -> "Connection":
        r, s = self.rank, other.rank
        gammas = []
        for gi, hi in zip(self.gammas, other.gammas):
            zero = gi[0][0].ring.zero() if r else None
            m = [[zero for _ in range(r * s)] for _ in range(r * s)]
            for a in range(r):
                for b in range(s):
                    for a2 in range(r):
                        for b2 in range(s):
                            val = m[a * s + b][a2 * s + b2]
                            if a == a2:
                                val = val + hi[b][b2]
                            if b == b2:
                                val = val + gi[a][a2]
                            m[a * s + b][a2 * s + b2] = val
            gammas.append(m)
        return Connection(r * s, gammas)

    def check_integrable(self, data: LieRinehartData) -> None:
        """Curvature identity against the frame's structure constants."""
        if len(self.gammas) != data.t:
            raise ShapeError("one Gamma per frame row is required")
        r = self.rank
        for i in range(data.t):
            for j in range(i + 1, data.t):
                for a in range(r):
                    for b in range(r):
                        lhs = data.derive(i, self.gammas[j][a][b]) \
                            - data.derive(j, self.gammas[i][a][b])
                        for k in range(r):
                            lhs = lhs + self.gammas[i][a][k] * self.gammas[j][k][b]
                            lhs = lhs - self.gammas[j][a][k] * self.gammas[i][k][b]
                        rhs = data.ring.zero()
                        for k, c in enumerate(data.constants[(i, j)]):
                            rhs = rhs + c * self.gammas[k][a][b]
                        if lhs != rhs:
                            raise IntegrabilityViolation(
                                f"curvature fails at rows ({i},{j})")


def connection_dual(E: Connection) -> Connection:
    return E.dual()


def connection_tensor(E: Connection, F: Connection) -> Connection:
    return E.tensor(F)


# ---------------------------------------------------------------------------
# complexes


class ComplexPresentation:
    """Matrices of the differentials d^{-k}: Sp^{-k} -> Sp^{-k+1}.

    ``matrices[k]`` has rows indexed by (k-subset, fiber index) and columns
    by ((k-1)-subset, fiber index); entries are UElement (or WeylOp after
    base change).
    """

    def __init__(self, n: int, rank: int, matrices: dict, bases: dict,
                 scalars: str = "U"):
        self.n = n
        self.rank = rank
        self.matrices = matrices
        self.bases = bases
        self.scalars = scalars

    def composition_defect(self, k: int):
        """Entries of M_k * M_(k-1); all zero iff d o d = 0 at degree -k."""
        A, B = self.matrices[k], self.matrices[k - 1]
        mul = u_mul if self.scalars == "U" else weyl_mul
        out = []
        for row in A:
            out_row = []
            for col in range(len(B[0])):
                acc = None
                for mid in range(len(B)):
                    term = mul(row[mid], B[mid][col])
                    acc = term if acc is None else acc + term
                out_row.append(acc)
            out.append(out_row)
        return out

    def verify_zero_compositions(self) -> bool:
        for k in range(2, self.n + 1):
            for row in self.composition_defect(k):
                for entry in row:
                    if not entry.is_zero():
                        return False
        return True

    def export(self) -> dict:
        """JSON-ready description with stable entry order."""
        degs = {}
        for k in sorted(self.matrices):
            M = self.matrices[k]
            degs[str(-k)] = {
                "source_basis": [[list(S), a] for (S, a) in self.bases[k]],
                "target_basis": [[list(S), a] for (S, a) in self.bases[k - 1]],
                "matrix": [[_entry_json(e) for e in row] for row in M],
            }
        return {"rank": self.rank, "degrees": degs, "scalars": self.scalars}


def _entry_json(entry):
    if isinstance(entry, UElement):
        return [{"e": list(g), "coeff": str(p)}
                for g, p in sorted(entry.terms.items())]
    return [{"d": list(e), "coeff": str(p)}
            for e, p in sorted(entry.terms.items())]


def _wedge_sign_insert(m: int, subset: tuple):
    """Sign and position for e_m wedge w_subset; None if m already occurs."""
    if m in subset:
        return None
    pos = sum(1 for s in subset if s < m)
    return (-1) ** pos, tuple(sorted(subset + (m,)))


def spencer_complex(source) -> ComplexPresentation:
    """The Spencer resolution of the structure sheaf as explicit matrices."""
    data = source if isinstance(source, LieRinehartData) \
        else LieRinehartData.from_frame(source)
    return spencer_complex_twisted(source, Connection.trivial(data, 1))


def spencer_complex_twisted(source, E: Connection) -> ComplexPresentation:
    """Spencer complex with coefficients in an integrable connection."""
    data = source if isinstance(source, LieRinehartData) \
        else LieRinehartData.from_frame(source)
    E.check_integrable(data)
    n = data.t
    r = E.rank
    ring = data.ring
    bases = {k: [(S, a) for S in combinations(range(n), k) for a in range(r)]
             for k in range(n + 1)}
    index = {k: {key: i for i, key in enumerate(bases[k])} for k in bases}
    matrices = {}
    for k in range(1, n + 1):
        rows = []
        for (S, a) in bases[k]:
            row = [UElement.zero(data) for _ in bases[k - 1]]
            for i, si in enumerate(S):
                rest = S[:i] + S[i + 1:]
                sign = (-1) ** i  # (-1)^(i-1) for 1-based position i
                # P delta_i term
                col = index[k - 1][(rest, a)]
                row[col] = row[col] + UElement.generator(data, si) * sign
                # connection term: - P x (delta_i e)
                for b in range(r):
                    g = E.gammas[si][b][a]
                    if g.is_zero():
                        continue
                    col = index[k - 1][(rest, b)]
                    row[col] = row[col] - UElement.from_poly(data, g) * sign
            for i, j in combinations(range(k), 2):
                si, sj = S[i], S[j]
                rest = tuple(x for x in S if x not in (si, sj))
                base_sign = (-1) ** (i + j)  # equals (-1)^(i+j) for 1-based i, j
                for m, c in enumerate(data.constants[(si, sj)]):
                    if c.is_zero():
                        continue
                    ins = _wedge_sign_insert(m, rest)
                    if ins is None:
                        continue
                    wsign, target = ins
                    col = index[k - 1][(target, a)]
                    row[col] = row[col] + UElement.from_poly(
                        data, c * (base_sign * wsign))
            rows.append(row)
        matrices[k] = rows
    return ComplexPresentation(n, r, matrices, bases, "U")


def induce_to_weyl(C: ComplexPresentation, data: LieRinehartData) -> ComplexPresentation:
    """Apply the canonical map to the Weyl algebra entrywise."""
    if C.scalars != "U":
        raise InvalidArgument("complex is already over the Weyl algebra")
    matrices = {k: [[to_weyl(e, data) for e in row] for row in M]
                for k, M in C.matrices.items()}
    return ComplexPresentation(C.n, C.rank, matrices, C.bases, "weyl")


def presentation_generators(frame: LogFrame, m: int) -> list:
    """Generators delta_i + m*alpha_i of the annihilator presenting O(mD)."""
    data = LieRinehartData.from_frame(frame)
    return [UElement.generator(data, i) + UElement.from_poly(
        data, m * frame.alphas[i]) for i in range(data.t)]


# ---------------------------------------------------------------------------
# the degree -1 obstruction certificate


@dataclass
class ComponentReport:
    index: int
    subideal: list
    pattern_ok: bool = False
    orders_ok: bool = False
    symbols_regular: bool = False
    bracket_closed: bool = False
    colon_basis: list = field(default_factory=list)
    colon_at_origin: bool = False
    certified: bool = False
    note: str = ""


@dataclass
class CertificateReport:
    kernel_ok: bool
    components: list
    certified: bool
    verdict: str


def _order_one_vector(u: UElement) -> PolyVec:
    """(constant, e-coefficients) of an element of filtration order <= 1."""
    data = u.data
    entries = [u.constant_coefficient()]
    for i in range(data.t):
        g = tuple(1 if k == i else 0 for k in range(data.t))
        entries.append(u.terms.get(g, data.ring.zero()))
    return PolyVec(entries)


def _u_symbol_order_one(u: UElement, sring: PolyRing) -> Poly:
    data = u.data
    n = data.ring.n
    if u.order() <= 0:
        return data.ring.inject(u.constant_coefficient(), sring)
    out = sring.zero()
    for i in range(data.t):
        g = tuple(1 if k == i else 0 for k in range(data.t))
        c = u.terms.get(g)
        if c is None:
            continue
        for j, a in enumerate(data.anchor[i]):
            if a.is_zero():
                continue
            out = out + data.ring.inject(c * a, sring) * sring.var(n + j)
    return out


def h1_certificate(frame: LogFrame, Q) -> CertificateReport:
    """Certificate that the induced Spencer complex has H^{-1} != 0 at 0.

    Checks, per the example's scheme: (1) sum Q_i delta_i = 0 in the Weyl
    algebra; (2) one column of the degree -2 image matrix lands in a left
    ideal generated by order <= 1 operators; (3) those generators have
    regular symbol sequence and O-span bracket closure, so the symbol ideal
    of the left ideal they generate is the ideal of their symbols; (4) the
    colon of that symbol ideal by sigma(Q_c) is contained in the maximal
    ideal at the origin, so sigma(Q_c) avoids the stalk ideal.
    """
    data = LieRinehartData.from_frame(frame)
    n = data.t
    if len(Q) != n:
        raise ShapeError(f"need {n} operators, got {len(Q)}")
    for q in Q:
        if not isinstance(q, WeylOp) or q.ring != data.ring:
            raise ShapeError("operators must live over the frame ring")
    fields = [to_weyl(UElement.generator(data, i), data) for i in range(n)]
    total = WeylOp.zero(data.ring)
    for q, w in zip(Q, fields):
        total = total + weyl_mul(q, w)
    kernel_ok = total.is_zero()

    complex_ = spencer_complex(data)
    image_rows = complex_.matrices[2]
    sring = frame.symbol_ring()
    components = []
    for c in range(n):
        column = [row[c] for row in image_rows]
        gens = []
        for u in column:
            if u.is_zero() or any(u == g for g in gens):
                continue
            gens.append(u)
        rep = ComponentReport(index=c, subideal=[str(g) for g in gens])
        components.append(rep)
        if not gens:
            rep.note = "column is zero; no obstruction ideal"
            continue
        rep.orders_ok = all(g.order() <= 1 for g in gens)
        if not rep.orders_ok:
            rep.note = "a generator exceeds order one"
            continue
        vecs = [_order_one_vector(g) for g in gens]
        try:
            for u in column:
                if not u.is_zero():
                    lift_through(_order_one_vector(u), vecs)
            rep.pattern_ok = True
        except NotInSpan:
            rep.note = "column entry escapes the O-span of the generators"
            continue
        symbols = [_u_symbol_order_one(g, sring) for g in gens]
        if any(s.is_zero() for s in symbols):
            rep.note = "a generator has zero symbol"
            continue
        rep.symbols_regular = is_regular_sequence(
            symbols, range(data.ring.n, 2 * data.ring.n))
        rep.bracket_closed = True
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                br = u_commutator(gens[a], gens[b])
                if br.is_zero():
                    continue
                if br.order() > 1:
                    rep.bracket_closed = False
                    break
                try:
                    lift_through(_order_one_vector(br), vecs)
                except NotInSpan:
                    rep.bracket_closed = False
                    break
            if not rep.bracket_closed:
                break
        if not (rep.symbols_regular and rep.bracket_closed):
            rep.note = "final-proposition hypotheses fail"
            continue
        qc = Q[c]
        if qc.is_zero():
            rep.note = "component operator is zero, trivially in the ideal"
            continue
        sq = qc.principal_symbol(sring)
        colon = colon_ideal(symbols, sq)
        rep.colon_basis = [str(g) for g in colon.generators]
        origin = [Fraction(0)] * sring.n
        rep.colon_at_origin = bool(len(colon)) and all(
            g.evaluate(origin) == 0 for g in colon.generators)
        rep.certified = kernel_ok and rep.colon_at_origin
        if rep.certified:
            rep.note = "symbol of the component avoids the stalk ideal"
    certified = any(rep.certified for rep in components)
    if not kernel_ok:
        verdict = "not a kernel element; no homology class"
    elif certified:
        verdict = ("H^-1 != 0 certified: the divisor is not Spencer at the "
                   "origin")
    else:
        verdict = "kernel member; no obstruction found"
    return CertificateReport(kernel_ok, components, certified, verdict)
