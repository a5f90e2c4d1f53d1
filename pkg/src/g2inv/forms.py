"""Exact exterior algebra on R^n (n <= 8), model G2/Spin(7)/SU(3)/SU(2)
forms, a positivity test for 3-forms on R^7, and the octonions.

Index tuples are 1-based and strictly increasing, so ``(1, 2, 3)`` is
``dx^123``. The metric is the Euclidean one and ``dx^1...dx^n`` is the
orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DegreeOverflow, DimensionMismatch, NotPositive, WrongDegree, WrongDimension
from .exactalg import Signature, as_fraction, symmetric_signature


def _sort_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``seq`` (0 on repeats) and the sorted tuple."""
    items = list(seq)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    if any(a == b for a, b in zip(items, items[1:])):
        return 0, tuple(items)
    return sign, tuple(items)


@dataclass(frozen=True)
class ExteriorForm:
    dim: int
    degree: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...] = ()

    def __post_init__(self):
        if not 1 <= self.dim <= 8:
            raise WrongDimension(f"dimension {self.dim} outside 1..8")
        if not 0 <= self.degree <= self.dim:
            raise DegreeOverflow(f"degree {self.degree} exceeds dimension {self.dim}")
        for idx, c in self.terms:
            if len(idx) != self.degree:
                raise WrongDegree(f"term {idx} has the wrong degree")
            if any(a >= b for a, b in zip(idx, idx[1:])) or (idx and not 1 <= idx[0] <= idx[-1] <= self.dim):
                raise ValueError(f"index tuple {idx} is not strictly increasing within 1..{self.dim}")
            if not c:
                raise ValueError("zero coefficients are not stored")

    @classmethod
    def from_dict(cls, dim: int, degree: int, coeffs: Mapping[Sequence[int], object]) -> "ExteriorForm":
        acc: dict[tuple[int, ...], Fraction] = {}
        for idx, c in coeffs.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != degree:
                raise WrongDegree(f"term {idx} has the wrong degree")
            if idx and not (1 <= min(idx) and max(idx) <= dim):
                raise DimensionMismatch(f"index out of range in {idx}")
            sign, key = _sort_sign(idx)
            if sign:
                acc[key] = acc.get(key, Fraction(0)) + sign * as_fraction(c)
        return cls(dim, degree, tuple(sorted((k, v) for k, v in acc.items() if v)))

    @classmethod
    def parse(cls, dim: int, text: str) -> "ExteriorForm":
        """Parse ``"123 + 145 - 2/3*257"`` style sums of single-digit indices."""
        coeffs: dict[tuple[int, ...], Fraction] = {}
        degree = None
        for raw in text.replace("-", "+-").split("+"):
            tok = raw.strip().replace(" ", "")
            if not tok:
                continue
            sign = -1 if tok.startswith("-") else 1
            tok = tok.lstrip("-")
            coef, _, idx = tok.rpartition("*")
            c = sign * (as_fraction(coef) if coef else Fraction(1))
            key = tuple(int(ch) for ch in idx)
            if degree is None:
                degree = len(key)
            s, key = _sort_sign(key)
            coeffs[key] = coeffs.get(key, Fraction(0)) + s * c
        return cls.from_dict(dim, degree or 0, coeffs)

    @classmethod
    def zero(cls, dim: int, degree: int) -> "ExteriorForm":
        return cls(dim, degree, ())

    @classmethod
    def volume(cls, dim: int) -> "ExteriorForm":
        return cls(dim, dim, ((tuple(range(1, dim + 1)), Fraction(1)),))

    @property
    def coeffs(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def coefficient(self, idx: Sequence[int]) -> Fraction:
        sign, key = _sort_sign(idx)
        return sign * self.coeffs.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: "ExteriorForm") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"forms on R^{self.dim} and R^{other.dim}")

    def __add__(self, other: "ExteriorForm") -> "ExteriorForm":
        self._check(other)
        if self.degree != other.degree:
            raise WrongDegree("cannot add forms of different degree")
        acc = self.coeffs
        for k, v in other.terms:
            acc[k] = acc.get(k, Fraction(0)) + v
        return ExteriorForm(self.dim, self.degree, tuple(sorted((k, v) for k, v in acc.items() if v)))

    def __neg__(self) -> "ExteriorForm":
        return ExteriorForm(self.dim, self.degree, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other: "ExteriorForm") -> "ExteriorForm":
        return self + (-other)

    def __rmul__(self, c) -> "ExteriorForm":
        c = as_fraction(c)
        if not c:
            return ExteriorForm.zero(self.dim, self.degree)
        return ExteriorForm(self.dim, self.degree, tuple((k, c * v) for k, v in self.terms))

    def __xor__(self, other: "ExteriorForm") -> "ExteriorForm":
        return wedge(self, other)

    def top_coefficient(self) -> Fraction:
        """Coefficient of the volume form (requires top degree)."""
        if self.degree != self.dim:
            raise WrongDegree("not a top-degree form")
        return self.terms[0][1] if self.terms else Fraction(0)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "degree": self.degree,
            "terms": [["".join(map(str, k)), str(v)] for k, v in self.terms],
        }

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.terms:
            name = "dx^" + "".join(map(str, k)) if k else "1"
            mag = abs(v)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append(("- " if v < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def wedge(a: ExteriorForm, b: ExteriorForm) -> ExteriorForm:
    a._check(b)
    if a.degree + b.degree > a.dim:
        raise DegreeOverflow(f"degree {a.degree} + {b.degree} exceeds {a.dim}")
    acc: dict[tuple[int, ...], Fraction] = {}
    for ka, va in a.terms:
        sa = set(ka)
        for kb, vb in b.terms:
            if sa.intersection(kb):
                continue
            sign, key = _sort_sign(ka + kb)
            acc[key] = acc.get(key, Fraction(0)) + sign * va * vb
    return ExteriorForm(a.dim, a.degree + b.degree, tuple(sorted((k, v) for k, v in acc.items() if v)))


def wedge_all(*forms: ExteriorForm) -> ExteriorForm:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def hodge_star(a: ExteriorForm) -> ExteriorForm:
    """Euclidean Hodge star: ``dx^I ^ *dx^I = vol``."""
    n = a.dim
    full = set(range(1, n + 1))
    terms = {}
    for k, v in a.terms:
        comp = tuple(sorted(full - set(k)))
        sign, _ = _sort_sign(k + comp)
        terms[comp] = sign * v
    return ExteriorForm(n, n - a.degree, tuple(sorted(terms.items())))


def interior(u: Sequence, a: ExteriorForm) -> ExteriorForm:
    """Contraction ``iota_u a`` with a vector u in R^n."""
    if len(u) != a.dim:
        raise DimensionMismatch("vector length does not match form dimension")
    if a.degree == 0:
        raise WrongDegree("cannot contract a 0-form")
    u = [as_fraction(x) for x in u]
    acc: dict[tuple[int, ...], Fraction] = {}
    for k, v in a.terms:
        for pos, i in enumerate(k):
            if u[i - 1]:
                key = k[:pos] + k[pos + 1:]
                acc[key] = acc.get(key, Fraction(0)) + (-1) ** pos * u[i - 1] * v
    return ExteriorForm(a.dim, a.degree - 1, tuple(sorted((k, v) for k, v in acc.items() if v)))


def pullback(a: ExteriorForm, matrix: Sequence[Sequence]) -> ExteriorForm:
    """Pull back along the linear map x -> M x, so dx^i becomes sum_j M[i][j] dx^j."""
    n = a.dim
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise DimensionMismatch(f"pullback needs an {n}x{n} matrix")
    images = [
        ExteriorForm.from_dict(n, 1, {(j + 1,): c for j, c in enumerate(row) if c}) for row in matrix
    ]
    out = ExteriorForm.zero(n, a.degree)
    for k, v in a.terms:
        if k:
            out = out + v * wedge_all(*(images[i - 1] for i in k))
        else:
            out = out + ExteriorForm(n, 0, (((), v),))
    return out


def signed_permutation_matrix(perm: Sequence[int], signs: Sequence[int]) -> list[list[int]]:
    """Matrix of dx^i -> signs[i] * dx^{perm[i]} (perm is 1-based)."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)) or len(signs) != n:
        raise DimensionMismatch("perm must be a permutation of 1..n with one sign per entry")
    return [[signs[i] if perm[i] == j + 1 else 0 for j in range(n)] for i in range(n)]


def shift(a: ExteriorForm, offset: int, dim: int) -> ExteriorForm:
    """Reindex a form onto coordinates ``offset+1 .. offset+a.dim`` of R^dim."""
    if offset + a.dim > dim:
        raise DimensionMismatch("shifted form does not fit")
    return ExteriorForm(dim, a.degree, tuple((tuple(i + offset for i in k), v) for k, v in a.terms))


# --------------------------------------------------------------------------
# Model forms


def _complex_wedge(factors: Iterable[tuple[ExteriorForm, ExteriorForm]]):
    """Wedge of complex forms given as (real, imaginary) pairs."""
    factors = list(factors)
    re, im = factors[0]
    for b_re, b_im in factors[1:]:
        re, im = wedge(re, b_re) - wedge(im, b_im), wedge(re, b_im) + wedge(im, b_re)
    return re, im


def model_forms() -> dict[str, ExteriorForm]:
    p = ExteriorForm.parse
    phi0 = p(7, "123 + 145 + 167 + 246 - 257 - 347 - 356")
    psi0 = p(
        8,
        "1234 + 1256 + 1278 + 1357 - 1368 - 1458 - 1467"
        " - 2358 - 2367 - 2457 + 2468 + 3456 + 3478 + 5678",
    )
    dz = [(p(6, f"{2 * k - 1}"), p(6, f"{2 * k}")) for k in range(1, 4)]
    omega_re, omega_im = _complex_wedge([dz[0], dz[1], dz[2]])
    # (i/2) dz ^ dzbar = dx ^ dy
    omega0 = p(6, "12 + 34 + 56")
    return {
        "phi0": phi0,
        "psi0": psi0,
        "omega0": omega0,
        "Omega0_re": omega_re,
        "Omega0_im": omega_im,
        "suII": p(4, "12 + 34"),
        "suJJ": p(4, "13 - 24"),
        "suKK": p(4, "14 + 23"),
    }


def kahler_from_dz(k: int) -> ExteriorForm:
    """``(i/2) dz^k ^ dzbar^k`` on R^6, computed by complex expansion."""
    p = ExteriorForm.parse
    dz = (p(6, f"{2 * k - 1}"), p(6, f"{2 * k}"))
    dzbar = (dz[0], -dz[1])
    re, im = _complex_wedge([dz, dzbar])
    if re.terms:
        raise AssertionError("dz ^ dzbar should be purely imaginary")
    # (i/2)(i * im) = -im/2
    return Fraction(-1, 2) * im


def su3_g2_form() -> ExteriorForm:
    """``dt ^ omega0 + Re Omega0`` on R + R^6 with t the first coordinate."""
    m = model_forms()
    dt = ExteriorForm.parse(7, "1")
    return wedge(dt, shift(m["omega0"], 1, 7)) + shift(m["Omega0_re"], 1, 7)


def su2_g2_form(k_sign: int = 1) -> ExteriorForm:
    """``e^123 + e^1 ^ wI + e^2 ^ wJ + k_sign * e^3 ^ wK`` on R^3 + R^4.

    With the literal triple (``k_sign=1``) the result is a split 3-form;
    ``k_sign=-1`` reproduces phi0 exactly.
    """
    m = model_forms()
    e = [ExteriorForm.parse(7, str(i)) for i in (1, 2, 3)]
    out = ExteriorForm.parse(7, "123")
    for ei, name, sign in zip(e, ("suII", "suJJ", "suKK"), (1, 1, k_sign)):
        out = out + sign * wedge(ei, shift(m[name], 3, 7))
    return out


def su2_squared_form(k_sign: int = 1) -> ExteriorForm:
    """``vol0 + wI_0 ^ wI_1 + wJ_0 ^ wJ_1 + k_sign * wK_0 ^ wK_1 + vol1`` on R^4 + R^4.

    ``k_sign=-1`` reproduces psi0 exactly; the literal sign squares to
    14 vol as well but has indefinite contractions.
    """
    m = model_forms()
    out = ExteriorForm.zero(8, 4)
    for name, sign in zip(("suII", "suJJ", "suKK"), (1, 1, k_sign)):
        out = out + sign * wedge(shift(m[name], 0, 8), shift(m[name], 4, 8))
    vol0 = Fraction(1, 2) * wedge(m["suII"], m["suII"])
    return out + shift(vol0, 0, 8) + shift(vol0, 4, 8)


# --------------------------------------------------------------------------
# Positivity


@dataclass(frozen=True)
class PositivityCertificate:
    is_positive: bool
    gram: tuple[tuple[Fraction, ...], ...]
    signature: Signature

    @property
    def is_definite(self) -> bool:
        return self.signature.n_zero == 0 and 0 in (self.signature.n_plus, self.signature.n_minus)


def bilinear_form_3form(phi: ExteriorForm) -> list[list[Fraction]]:
    """``B(u, v) = vol-coefficient of (iota_u phi) ^ (iota_v phi) ^ phi``."""
    n = phi.dim
    basis = [[int(i == j) for j in range(n)] for i in range(n)]
    contractions = [interior(u, phi) for u in basis]
    return [
        [wedge_all(contractions[i], contractions[j], phi).top_coefficient() for j in range(n)]
        for i in range(n)
    ]


def is_positive_3form(phi: ExteriorForm) -> PositivityCertificate:
    """A 3-form on R^7 is positive when B is positive definite.

    For phi0 the Gram matrix is 6 times the identity; a definite negative B
    means phi is positive for the opposite orientation.
    """
    if phi.degree != 3:
        raise WrongDegree(f"expected a 3-form, got degree {phi.degree}")
    if phi.dim != 7:
        raise WrongDimension(f"expected a form on R^7, got R^{phi.dim}")
    gram = bilinear_form_3form(phi)
    sig = symmetric_signature(gram)
    return PositivityCertificate(sig.n_plus == 7, tuple(map(tuple, gram)), sig)


def product_spin7(phi: ExteriorForm) -> ExteriorForm:
    """``dt ^ phi + *phi`` on R + R^7, t the new first coordinate.

    The star is taken for the orientation phi induces, so ``-phi0`` (which
    is positive for the reversed orientation) is accepted too.
    """
    cert = is_positive_3form(phi)
    if not cert.is_definite:
        raise NotPositive("3-form is not definite")
    orient = 1 if cert.is_positive else -1
    star = orient * hodge_star(phi)
    dt = ExteriorForm.parse(8, "1")
    return wedge(dt, shift(phi, 1, 8)) + shift(star, 1, 8)


def drop_coordinate(a: ExteriorForm, i: int) -> ExteriorForm:
    """Restrict to the coordinate hyperplane x_i = 0, renumbering the rest."""
    terms = {}
    for k, v in a.terms:
        if i in k:
            continue
        terms[tuple(j - (j > i) for j in k)] = v
    return ExteriorForm(a.dim - 1, a.degree, tuple(sorted(terms.items())))


@dataclass(frozen=True)
class Spin7Certificate:
    square: Fraction
    contractions_definite: bool

    @property
    def matches_model(self) -> bool:
        return self.square == 14 and self.contractions_definite


def spin7_certificate(psi: ExteriorForm) -> Spin7Certificate:
    """Invariants compared against psi0: the square, and definiteness of every
    contraction ``iota_{e_i} psi`` as a 3-form on the complementary R^7."""
    if psi.dim != 8 or psi.degree != 4:
        raise WrongDegree("expected a 4-form on R^8")
    square = wedge(psi, psi).top_coefficient()
    ok = True
    for i in range(1, 9):
        e = [int(j == i) for j in range(1, 9)]
        cert = is_positive_3form(drop_coordinate(interior(e, psi), i))
        ok = ok and cert.is_definite
    return Spin7Certificate(square, ok)


# --------------------------------------------------------------------------
# Octonions


def _octonion_table() -> dict[tuple[int, int], tuple[int, int]]:
    """``e_i e_j = sign * e_k`` for 1 <= i, j <= 7, read off from phi0."""
    phi0 = model_forms()["phi0"]
    table = {}
    for (a, b, c), v in phi0.terms:
        for (i, j, k), s in (
            ((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
            ((b, a, c), -1), ((c, b, a), -1), ((a, c, b), -1),
        ):
            table[(i, j)] = (int(s * v), k)
    return table


_TABLE = _octonion_table()


@dataclass(frozen=True)
class Octonion:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != 8:
            raise DimensionMismatch("an octonion has 8 coordinates")
        object.__setattr__(self, "coords", tuple(as_fraction(x) for x in self.coords))

    @classmethod
    def unit(cls, i: int) -> "Octonion":
        return cls(tuple(int(j == i) for j in range(8)))

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Octonion":
        return Octonion(tuple(-a for a in self.coords))

    def __mul__(self, other: "Octonion") -> "Octonion":
        return octonion_mul(self, other)

    def conj(self) -> "Octonion":
        return octonion_conj(self)

    def norm(self) -> Fraction:
        return sum(a * a for a in self.coords)

    def inner(self, other: "Octonion") -> Fraction:
        return sum(a * b for a, b in zip(self.coords, other.coords))


def octonion_mul(x: Octonion, y: Octonion) -> Octonion:
    out = [Fraction(0)] * 8
    for i, a in enumerate(x.coords):
        if not a:
            continue
        for j, b in enumerate(y.coords):
            if not b:
                continue
            if i == 0:
                out[j] += a * b
            elif j == 0:
                out[i] += a * b
            elif i == j:
                out[0] -= a * b
            else:
                s, k = _TABLE[(i, j)]
                out[k] += s * a * b
    return Octonion(tuple(out))


def octonion_conj(x: Octonion) -> Octonion:
    return Octonion((x.coords[0],) + tuple(-a for a in x.coords[1:]))


def octonion_phi(x: Octonion, y: Octonion, z: Octonion) -> Fraction:
    """``<x y, z>`` restricted to imaginary parts recovers phi0(x, y, z)."""
    return (x * y).inner(z)
