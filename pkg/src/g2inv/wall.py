"""Wall's non-additivity correction and the twisted connected sum instance.

Given a nondegenerate skew form on V and Lagrangians A, B, C, the
correction is the signature of

    K = (A n (B + C)) / ((A n B) + (A n C)),    q([a], [a']) = -(a, b')

where a' = b' + c' with b' in B, c' in C.

For the twisted connected sum, V = L^8 with blocks ordered
(1+, 1-, 3/4+, 3/4-, 1/4+, 1/4-, 0+, 0-) and the Lagrangians cut out by
matching conditions between those blocks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exactalg
from .charnum import NU_MODULUS, CoboundaryData, nubar
from .errors import DegenerateForm, DimensionMismatch, NotLagrangian, RokhlinViolation
from .exactalg import (
    Signature,
    SparseForm,
    Subspace,
    express,
    normalize_number,
    orthogonal_complement,
    quotient_basis,
    rref,
    span_intersect,
    span_sum,
    symmetric_signature,
)

Matrix = Sequence[Sequence]


def _is_skew(form: Matrix) -> bool:
    n = len(form)
    return all(len(r) == n for r in form) and all(
        form[i][j] == -form[j][i] for i in range(n) for j in range(i, n)
    )


def _rank(form: Matrix) -> int:
    return len(rref(form, len(form))[0]) if form else 0


@dataclass(frozen=True)
class WallTriple:
    """Skew form with three Lagrangian subspaces; checked on construction."""

    form: tuple[tuple, ...]
    a: Subspace
    b: Subspace
    c: Subspace
    _sparse: SparseForm = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        form = tuple(tuple(r) for r in self.form)
        object.__setattr__(self, "form", form)
        n = len(form)
        if not _is_skew(form):
            raise NotLagrangian("ambient form is not skew-symmetric")
        if n % 2 or _rank(form) != n:
            raise DegenerateForm("ambient skew form is degenerate")
        sparse = SparseForm(form)
        object.__setattr__(self, "_sparse", sparse)
        for name, s in (("A", self.a), ("B", self.b), ("C", self.c)):
            if s.ambient_dim != n:
                raise DimensionMismatch(f"{name} lives in dimension {s.ambient_dim}, form has {n}")
            if 2 * s.dim != n:
                raise NotLagrangian(f"{name} has dimension {s.dim}, expected {n // 2}")
            images = [sparse.apply(v) for v in s.basis]
            if any(any(row) for row in exactalg.kernels.dot_rows(s.basis, images)):
                raise NotLagrangian(f"{name} is not isotropic")

    def negated(self) -> "WallTriple":
        return WallTriple(tuple(tuple(-x for x in r) for r in self.form), self.a, self.b, self.c)

    def pair(self, x, y):
        return self._sparse.pair(x, y)


@dataclass(frozen=True)
class WallResult:
    signature: Signature
    dim_k: int
    q: tuple[tuple[Fraction, ...], ...]
    representatives: tuple[tuple[int, ...], ...]

    @property
    def value(self) -> int:
        return self.signature.value


def decompose(t: WallTriple, vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    """The B-parts b' of decompositions v = b' + c' (free coefficients zero)."""
    if not vectors:
        return []
    gens = list(t.b.basis) + list(t.c.basis)
    coeffs = express(gens, vectors)
    k = t.b.dim
    n = t.a.ambient_dim
    out = []
    for x in coeffs:
        bpart = [Fraction(0)] * n
        for coef, v in zip(x[:k], t.b.basis):
            if coef:
                for i, vi in enumerate(v):
                    if vi:
                        bpart[i] += coef * vi
        out.append(bpart)
    return out


def q_matrix(t: WallTriple, left: Sequence[Sequence], right: Sequence[Sequence]) -> list[list[Fraction]]:
    """``-(x, b')`` for x in ``left`` and a' in ``right`` (a' must lie in B + C)."""
    bparts = decompose(t, right)
    images = [t._sparse.apply(b) for b in bparts]
    return [[-sum(xi * gi for xi, gi in zip(x, g) if xi) for g in images] for x in left]


def wall_details(t: WallTriple) -> WallResult:
    a_b = span_intersect(t.a, t.b)
    a_c = span_intersect(t.a, t.c)
    core = span_intersect(t.a, span_sum(t.b, t.c))
    denom = span_sum(a_b, a_c)
    reps = quotient_basis(core, denom)
    if not reps:
        return WallResult(Signature(0, 0, 0), 0, (), ())
    bparts = decompose(t, reps)
    images = [t._sparse.apply(b) for b in bparts]
    q = [[-sum(x * g for x, g in zip(a, gb) if x) for gb in images] for a in reps]
    n = len(reps)
    for i in range(n):
        for j in range(i + 1, n):
            if q[i][j] != q[j][i]:
                raise DegenerateForm("q is not symmetric; the subspaces violate Wall's hypotheses")
    # changing b' by w in B n C, or a by an element of (A n B) + (A n C),
    # must not change q
    b_c = span_intersect(t.b, t.c)
    for w in b_c.basis:
        gw = t._sparse.apply(w)
        if any(sum(x * g for x, g in zip(a, gw) if x) for a in reps):
            raise DegenerateForm("q depends on the chosen decomposition")
    for x in denom.basis:
        if any(sum(xi * g for xi, g in zip(x, gb) if xi) for gb in images):
            raise DegenerateForm("q does not descend to the quotient")
    sig = symmetric_signature(q)
    if sig.n_zero:
        raise DegenerateForm(f"q has a {sig.n_zero}-dimensional radical")
    q_fix = tuple(tuple(Fraction(x) for x in row) for row in q)
    return WallResult(sig, n, q_fix, tuple(tuple(r) for r in reps))


def wall_correction(t: WallTriple) -> int:
    return wall_details(t).value


# --------------------------------------------------------------------------
# Twisted connected sum instance

BLOCKS = ("1+", "1-", "3/4+", "3/4-", "1/4+", "1/4-", "0+", "0-")
_B = {name: i for i, name in enumerate(BLOCKS)}

# (h, h') = sum of sign * <h_X, h'_Y>
INTERSECTION_PATTERN = (
    ("1+", "1-", 1),
    ("1-", "1+", -1),
    ("3/4+", "3/4-", -1),
    ("3/4-", "3/4+", 1),
    ("1/4+", "1/4-", 1),
    ("1/4-", "1/4+", -1),
    ("0+", "0-", -1),
    ("0-", "0+", 1),
)


@dataclass(frozen=True)
class TcsLatticeData:
    """Lattice L with the images N_+ and N_- of the two building blocks."""

    l_form: tuple[tuple, ...]
    n_plus: Subspace
    n_minus: Subspace

    def __post_init__(self):
        form = tuple(tuple(r) for r in self.l_form)
        object.__setattr__(self, "l_form", form)
        n = len(form)
        if any(len(r) != n for r in form):
            raise DimensionMismatch("lattice form must be square")
        if any(form[i][j] != form[j][i] for i in range(n) for j in range(i + 1, n)):
            raise DimensionMismatch("lattice form must be symmetric")
        if _rank(form) != n:
            raise DegenerateForm("lattice form is degenerate")
        for s in (self.n_plus, self.n_minus):
            if s.ambient_dim != n:
                raise DimensionMismatch("N_+/- must be subspaces of L")

    @classmethod
    def build(cls, l_form: Matrix, n_plus: Sequence[Sequence] = (), n_minus: Sequence[Sequence] = ()) -> "TcsLatticeData":
        n = len(l_form)
        return cls(tuple(tuple(r) for r in l_form), Subspace.span(n_plus, n), Subspace.span(n_minus, n))

    @property
    def rank(self) -> int:
        return len(self.l_form)

    @property
    def t_plus(self) -> Subspace:
        return orthogonal_complement(self.l_form, self.n_plus)

    @property
    def t_minus(self) -> Subspace:
        return orthogonal_complement(self.l_form, self.n_minus)

    def lattice_signature(self) -> Signature:
        return symmetric_signature(self.l_form)


def tcs_form(l_form: Matrix) -> list[list]:
    """The skew form on L^8 in the fixed block order."""
    r = len(l_form)
    n = 8 * r
    g = [[0] * n for _ in range(n)]
    for x, y, sign in INTERSECTION_PATTERN:
        ox, oy = _B[x] * r, _B[y] * r
        for i in range(r):
            row = g[ox + i]
            for j, v in enumerate(l_form[i]):
                if v:
                    row[oy + j] = sign * v
    return g


def _embed(r: int, parts: dict[str, Sequence]) -> list:
    v = [0] * (8 * r)
    for name, vec in parts.items():
        o = _B[name] * r
        for i, x in enumerate(vec):
            v[o + i] += x
    return v


def tcs_subspaces(d: TcsLatticeData) -> tuple[Subspace, Subspace, Subspace]:
    r = d.rank
    unit = [[int(i == j) for j in range(r)] for i in range(r)]
    neg = [[-x for x in e] for e in unit]
    n_p, n_m = d.n_plus.basis, d.n_minus.basis
    t_p, t_m = d.t_plus.basis, d.t_minus.basis
    a_vecs = []
    for e in unit:
        a_vecs.append(_embed(r, {"0+": e, "1/4+": e}))
        a_vecs.append(_embed(r, {"0-": e, "1/4-": e}))
        a_vecs.append(_embed(r, {"3/4+": e, "1+": e}))
        a_vecs.append(_embed(r, {"3/4-": e, "1-": e}))
    b_vecs = (
        [_embed(r, {"0+": v}) for v in n_p]
        + [_embed(r, {"1+": v}) for v in n_p]
        + [_embed(r, {"0-": v}) for v in t_p]
        + [_embed(r, {"1-": v}) for v in t_p]
        + [_embed(r, {"1/4+": e, "3/4+": e}) for e in unit]
        + [_embed(r, {"1/4-": e, "3/4-": e}) for e in unit]
    )
    # h_{1/4+} = h_{3/4-} and h_{1/4-} = -h_{3/4+}
    c_vecs = (
        [_embed(r, {"0+": v}) for v in n_m]
        + [_embed(r, {"1-": v}) for v in n_m]
        + [_embed(r, {"0-": v}) for v in t_m]
        + [_embed(r, {"1+": v}) for v in t_m]
        + [_embed(r, {"1/4+": e, "3/4-": e}) for e in unit]
        + [_embed(r, {"1/4-": e, "3/4+": m}) for e, m in zip(unit, neg)]
    )
    n = 8 * r
    return Subspace.span(a_vecs, n), Subspace.span(b_vecs, n), Subspace.span(c_vecs, n)


def tcs_wall_triple(d: TcsLatticeData) -> WallTriple:
    a, b, c = tcs_subspaces(d)
    return WallTriple(tuple(map(tuple, tcs_form(d.l_form))), a, b, c)


def tcs_sigma(d: TcsLatticeData) -> int:
    return wall_correction(tcs_wall_triple(d))


@dataclass(frozen=True)
class KDecomposition:
    """Dimensions (as subspaces of K) and checks of K = K_0 + K_+ + K_-."""

    dim_k: int
    dim_k0: int
    dim_k_plus: int
    dim_k_minus: int
    k0_isometric_to_l: bool
    k_plus_orthogonal: bool
    k_minus_orthogonal: bool
    spans_k: bool
    sigma_k0: int
    sigma_k_plus_minus: int

    @property
    def consistent(self) -> bool:
        return (
            self.spans_k
            and self.k0_isometric_to_l
            and self.k_plus_orthogonal
            and self.k_minus_orthogonal
            and self.dim_k == self.dim_k0 + self.dim_k_plus + self.dim_k_minus
        )


def _rep(r: int, n_vec: Sequence, t_vec: Sequence) -> list:
    return _embed(r, {"1/4+": n_vec, "1/4-": t_vec, "0+": n_vec, "0-": t_vec})


def tcs_k_decomposition(d: TcsLatticeData) -> KDecomposition:
    """Rebuild K from the pieces K_0, K_+ and K_- and check their relations.

    Classes are represented by a with a_{1/4} = a_0 = (n, t) and a_1 =
    a_{3/4} = 0. K_0 takes n in N_+ n N_-, t in T_+ + T_-; K_+ takes
    n = t in N_+ n (T_+ + T_-); K_- takes n = -t in N_- n (T_+ + T_-), the
    sign coming from the twisted matching in C. On K_0, 2q is the form of L.
    """
    r = d.rank
    t = tcs_wall_triple(d)
    result = wall_details(t)
    zero = [0] * r
    n_cap = span_intersect(d.n_plus, d.n_minus)
    t_sum = span_sum(d.t_plus, d.t_minus)
    k0_l = [list(v) for v in n_cap.basis] + [list(v) for v in t_sum.basis]
    k0 = [_rep(r, v, zero) for v in n_cap.basis] + [_rep(r, zero, v) for v in t_sum.basis]
    kp = [_rep(r, v, v) for v in span_intersect(d.n_plus, t_sum).basis]
    km = [_rep(r, v, [-x for x in v]) for v in span_intersect(d.n_minus, t_sum).basis]
    denom = span_sum(span_intersect(t.a, t.b), span_intersect(t.a, t.c))

    def rank_in_k(vectors):
        return Subspace.span(list(denom.basis) + vectors, 8 * r).dim - denom.dim

    dim_k0, dim_kp, dim_km = rank_in_k(k0), rank_in_k(kp), rank_in_k(km)
    spans_k = rank_in_k(k0 + kp + km) == result.dim_k
    lsf = SparseForm(d.l_form)
    q00 = q_matrix(t, k0, k0)
    k0_iso = all(
        2 * q00[i][j] == lsf.pair(k0_l[i], k0_l[j]) for i in range(len(k0)) for j in range(len(k0))
    )
    kp_orth = not kp or all(x == 0 for row in q_matrix(t, kp, k0 + kp) for x in row)
    km_orth = not km or all(x == 0 for row in q_matrix(t, km, k0 + km) for x in row)
    sig0 = symmetric_signature(q00).value if k0 else 0
    pm = kp + km
    sig_pm = symmetric_signature(q_matrix(t, pm, pm)).value if pm else 0
    return KDecomposition(
        result.dim_k, dim_k0, dim_kp, dim_km, k0_iso, kp_orth, km_orth, spans_k, sig0, sig_pm
    )


# --------------------------------------------------------------------------
# Product structures and the TCS value of nu


def nu_su3_product() -> int:
    """nu of a product structure on S^1 x N with N an SU(3)-manifold."""
    return 0


@dataclass(frozen=True)
class ProductNuInput:
    chi2_y: int
    sigma_x: int


def nu_su2_product(p: ProductNuInput) -> int:
    """``24 chi_2(Y) sigma(X) / 16`` mod 48 for Y x X, X an SU(2)-surface."""
    if p.sigma_x % 16:
        raise RokhlinViolation(f"signature {p.sigma_x} is not divisible by 16")
    return (24 * (p.chi2_y % 2) * (p.sigma_x // 16)) % NU_MODULUS


@dataclass(frozen=True)
class TcsNuReport:
    chi_w: int
    sigma_w: int
    sigma_l: int
    nubar_w: int
    nu_su3: int
    nu_su2: int
    nu_outward: int
    nu_reversed: int

    @property
    def nu(self) -> int:
        return self.nu_outward

    @property
    def consistent(self) -> bool:
        return self.nu_outward == self.nu_reversed


def tcs_nu(d: TcsLatticeData, sigma_w: int | None = None) -> TcsNuReport:
    """nu of the twisted connected sum structure.

    The coboundary W has chi = 0 and signature from the Wall engine; its
    other boundary pieces carry product structures. The value is computed
    both from W and from the reversed coboundary (-W, -phi), where every
    contribution changes sign.
    """
    if sigma_w is None:
        sigma_w = tcs_sigma(d)
    chi_w = 0
    sigma_l = d.lattice_signature().value
    w = CoboundaryData(chi_w, sigma_w)
    su3 = nu_su3_product()
    su2 = nu_su2_product(ProductNuInput(1, sigma_l))
    outward = (nubar(w) + su3 + su2) % NU_MODULUS
    reversed_total = nubar(w.reversed()) - su3 - su2
    return TcsNuReport(
        chi_w, sigma_w, sigma_l, nubar(w), su3, su2, outward, (-reversed_total) % NU_MODULUS
    )


def form_to_json(form: Matrix) -> list[list[str]]:
    return [[str(normalize_number(Fraction(x))) for x in row] for row in form]
