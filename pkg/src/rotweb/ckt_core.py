"""Conformal Killing vector / tensor calculus on flat 3-space.

Vector and symmetric tensor fields carry exact polynomial components in
Cartesian coordinates (x, y, z) = variables 0, 1, 2; extra polynomial
variables, when present, act as inert parameters, which lets every check
here run on whole linear families at once.

The Levi-Civita sign convention is fixed as eps_{123} = +1; all component
formulas and tests pin that choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .exactmath import Poly, RationalFunction, rat, rat_str

EPS = [[[0] * 3 for _ in range(3)] for _ in range(3)]
for _i, _j, _k, _s in [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
                       (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1)]:
    EPS[_i][_j][_k] = _s


class CktError(ValueError):
    """Domain or validation error in the tensor layer."""


# ---------------------------------------------------------------------------
# Field types


@dataclass(frozen=True)
class VectorField:
    """Vector field with polynomial Cartesian components."""

    components: tuple[Poly, Poly, Poly]

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> VectorField:
        return VectorField(tuple(-a for a in self.components))

    def scale(self, factor) -> VectorField:
        return VectorField(tuple(a * factor for a in self.components))

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return all(a == b for a, b in zip(self.components, other.components))

    __hash__ = None


@dataclass(frozen=True)
class SymTensorField:
    """Symmetric contravariant 2-tensor field; flat metric, so index
    placement is immaterial.  Stored as a full 3x3 grid of polynomials."""

    comps: tuple[tuple[Poly, Poly, Poly], ...]

    @classmethod
    def from_upper(cls, xx, xy, xz, yy, yz, zz) -> SymTensorField:
        return cls(((xx, xy, xz), (xy, yy, yz), (xz, yz, zz)))

    @classmethod
    def zero(cls, nvars: int = 3) -> SymTensorField:
        z = Poly.zero(nvars)
        return cls.from_upper(z, z, z, z, z, z)

    @property
    def nvars(self) -> int:
        return self.comps[0][0].nvars

    def __getitem__(self, i: int):
        return self.comps[i]

    def __add__(self, other: SymTensorField) -> SymTensorField:
        return SymTensorField(tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.comps, other.comps)))

    def __sub__(self, other: SymTensorField) -> SymTensorField:
        return SymTensorField(tuple(
            tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.comps, other.comps)))

    def __neg__(self) -> SymTensorField:
        return SymTensorField(tuple(tuple(-a for a in row) for row in self.comps))

    def scale(self, factor) -> SymTensorField:
        """Multiply by a rational or polynomial scalar."""
        return SymTensorField(tuple(tuple(a * factor for a in row) for row in self.comps))

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for row in self.comps for a in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensorField):
            return NotImplemented
        return all(a == b for r1, r2 in zip(self.comps, other.comps) for a, b in zip(r1, r2))

    __hash__ = None

    def trace(self) -> Poly:
        return self.comps[0][0] + self.comps[1][1] + self.comps[2][2]

    def degree(self) -> int:
        return max(a.degree() for row in self.comps for a in row)

    def dot_vector(self, v: VectorField) -> VectorField:
        out = []
        for i in range(3):
            acc = Poly.zero(self.nvars)
            for j in range(3):
                acc = acc + self.comps[i][j] * v[j]
            out.append(acc)
        return VectorField(tuple(out))

    def square(self) -> SymTensorField:
        """Matrix square K.K (symmetric since K is)."""
        rows = []
        for i in range(3):
            row = []
            for j in range(3):
                acc = Poly.zero(self.nvars)
                for m in range(3):
                    acc = acc + self.comps[i][m] * self.comps[m][j]
                row.append(acc)
            rows.append(tuple(row))
        return SymTensorField(tuple(rows))

    def matrix_at(self, point: Sequence) -> list[list[Fraction]]:
        return [[self.comps[i][j].eval(point) for j in range(3)] for i in range(3)]

    def extend(self, nvars: int) -> SymTensorField:
        return SymTensorField(tuple(tuple(a.extend(nvars) for a in row) for row in self.comps))


@dataclass(frozen=True)
class OneForm:
    """One-form with rational-function components."""

    components: tuple[RationalFunction, RationalFunction, RationalFunction]

    def __getitem__(self, i: int) -> RationalFunction:
        return self.components[i]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)


@dataclass(frozen=True)
class TwoForm:
    """Two-form in 3-space: the three independent components d_{12}, d_{13}, d_{23}."""

    d12: RationalFunction
    d13: RationalFunction
    d23: RationalFunction

    @property
    def is_zero(self) -> bool:
        return self.d12.is_zero and self.d13.is_zero and self.d23.is_zero


def metric(nvars: int = 3) -> SymTensorField:
    one = Poly.const(1, nvars)
    zero = Poly.zero(nvars)
    return SymTensorField.from_upper(one, zero, zero, one, zero, one)


# ---------------------------------------------------------------------------
# The conformal Killing vector basis


@lru_cache(maxsize=None)
def ckv_basis(nvars: int = 3) -> tuple[VectorField, ...]:
    """The 10 canonical conformal Killing vectors of flat 3-space:
    translations X1..X3, rotations R1..R3, the dilation D, and the
    inversion generators I1..I3, in that order.
    """
    x = [Poly.variable(i, nvars) for i in range(3)]
    zero = Poly.zero(nvars)
    one = Poly.const(1, nvars)
    r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2]

    fields = []
    for i in range(3):
        fields.append(VectorField(tuple(one if k == i else zero for k in range(3))))
    for i in range(3):
        comps = []
        for k in range(3):
            acc = zero
            for j in range(3):
                if EPS[i][j][k]:
                    acc = acc + x[j] * EPS[i][j][k]
            comps.append(acc)
        fields.append(VectorField(tuple(comps)))
    fields.append(VectorField(tuple(x)))
    for i in range(3):
        comps = []
        for k in range(3):
            c = x[i] * x[k] * 2
            if k == i:
                c = c - r2
            comps.append(c)
        fields.append(VectorField(tuple(comps)))
    return tuple(fields)


_NAMES = ["X1", "X2", "X3", "R1", "R2", "R3", "D", "I1", "I2", "I3"]


def ckv_by_name(name: str, nvars: int = 3) -> VectorField:
    try:
        return ckv_basis(nvars)[_NAMES.index(name)]
    except ValueError:
        raise CktError(f"unknown generator {name!r}; expected one of {_NAMES}") from None


def commutator(v: VectorField, w: VectorField) -> VectorField:
    out = []
    for i in range(3):
        acc = Poly.zero(v.nvars)
        for j in range(3):
            acc = acc + v[j] * w[i].diff(j) - w[j] * v[i].diff(j)
        out.append(acc)
    return VectorField(tuple(out))


def symmetric_product(v: VectorField, w: VectorField) -> SymTensorField:
    half = Fraction(1, 2)
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            row.append((v[i] * w[j] + v[j] * w[i]) * half)
        rows.append(tuple(row))
    return SymTensorField(tuple(rows))


def conformal_factor(v: VectorField) -> Poly | None:
    """The factor f with Lie_v(g) = f g for the covariant flat metric,
    or None when v is not conformal."""
    grad = [[v[j].diff(i) + v[i].diff(j) for j in range(3)] for i in range(3)]
    for i in range(3):
        for j in range(3):
            if i != j and not grad[i][j].is_zero:
                return None
    if grad[0][0] != grad[1][1] or grad[1][1] != grad[2][2]:
        return None
    return grad[0][0]


def lie_derivative(v: VectorField, k: SymTensorField) -> SymTensorField:
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = Poly.zero(k.nvars)
            for m in range(3):
                acc = acc + v[m] * k[i][j].diff(m)
                acc = acc - k[m][j] * v[i].diff(m)
                acc = acc - k[i][m] * v[j].diff(m)
            row.append(acc)
        rows.append(tuple(row))
    return SymTensorField(tuple(rows))


# ---------------------------------------------------------------------------
# Symmetric-product coefficients


def _sym3(entries) -> tuple:
    rows = tuple(tuple(rat(x) for x in row) for row in entries)
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise CktError("expected a 3x3 block")
    return rows


def _vec3(entries) -> tuple:
    out = tuple(rat(x) for x in entries)
    if len(out) != 3:
        raise CktError("expected a length-3 block")
    return out


@dataclass(frozen=True)
class CktCoefficients:
    """Coefficients of the general linear combination of symmetric products
    of conformal Killing vectors:

        K = A_ij Xi.Xj + B_ij Xi.Rj + C_ij Ri.Rj + D_i Xi.D + E_ij Xi.Ij
          + F_i Ri.D + G_ij Ri.Ij + H D.D + L_i D.Ii + M_ij Ii.Ij

    A, C, M are symmetric.  After trace_free_reduce the trace relations hold:
    tr A = tr B = tr G = tr M = 0, H = 0, F = 0, D = eps-contraction of B,
    L = eps-contraction of G, and C is determined by the symmetric part of E.
    """

    a: tuple
    b: tuple
    c: tuple
    d: tuple
    e: tuple
    f: tuple
    g: tuple
    h: Fraction
    l: tuple
    m: tuple

    @classmethod
    def make(cls, a=None, b=None, c=None, d=None, e=None, f=None, g=None,
             h=0, l=None, m=None) -> CktCoefficients:
        zero33 = ((0, 0, 0),) * 3
        zero3 = (0, 0, 0)
        return cls(
            a=_sym3(a or zero33), b=_sym3(b or zero33), c=_sym3(c or zero33),
            d=_vec3(d or zero3), e=_sym3(e or zero33), f=_vec3(f or zero3),
            g=_sym3(g or zero33), h=rat(h), l=_vec3(l or zero3), m=_sym3(m or zero33),
        )

    @classmethod
    def zero(cls) -> CktCoefficients:
        return cls.make()

    def validate(self) -> None:
        for name, block in (("A", self.a), ("C", self.c), ("M", self.m)):
            for i in range(3):
                for j in range(i + 1, 3):
                    if block[i][j] != block[j][i]:
                        raise CktError(f"coefficient block {name} must be symmetric")

    def to_json_dict(self) -> dict:
        def grid(block):
            return [[rat_str(x) for x in row] for row in block]

        return {
            "A": grid(self.a), "B": grid(self.b), "C": grid(self.c),
            "D": [rat_str(x) for x in self.d], "E": grid(self.e),
            "F": [rat_str(x) for x in self.f], "G": grid(self.g),
            "Hscalar": rat_str(self.h), "L": [rat_str(x) for x in self.l],
            "M": grid(self.m),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> CktCoefficients:
        return cls.make(
            a=data.get("A"), b=data.get("B"), c=data.get("C"), d=data.get("D"),
            e=data.get("E"), f=data.get("F"), g=data.get("G"),
            h=data.get("Hscalar", 0), l=data.get("L"), m=data.get("M"),
        )


@lru_cache(maxsize=None)
def _products(nvars: int = 3) -> dict:
    """All symmetric products of basis CKVs, keyed by basis index pairs."""
    basis = ckv_basis(nvars)
    return {(i, j): symmetric_product(basis[i], basis[j])
            for i in range(10) for j in range(10)}


_X, _R, _D, _I = 0, 3, 6, 7  # offsets into the basis ordering


def _assemble_blocks(a, b, c, d, e, f, g, h, l, m, nvars: int = 3) -> SymTensorField:
    """Assemble from raw blocks whose entries are rationals or polynomials."""
    prods = _products(nvars)
    total = SymTensorField.zero(nvars)

    def add(coeff, key):
        nonlocal total
        if isinstance(coeff, Poly):
            if coeff.is_zero:
                return
        elif coeff == 0:
            return
        total = total + prods[key].scale(coeff)

    for i in range(3):
        for j in range(3):
            add(a[i][j], (_X + i, _X + j))
            add(b[i][j], (_X + i, _R + j))
            add(c[i][j], (_R + i, _R + j))
            add(e[i][j], (_X + i, _I + j))
            add(g[i][j], (_R + i, _I + j))
            add(m[i][j], (_I + i, _I + j))
    for i in range(3):
        add(d[i], (_X + i, _D))
        add(f[i], (_R + i, _D))
        add(l[i], (_D, _I + i))
    add(h, (_D, _D))
    return total


def assemble_ckt(coeffs: CktCoefficients) -> SymTensorField:
    """Expand the symmetric-product combination into Cartesian components."""
    coeffs.validate()
    return _assemble_blocks(coeffs.a, coeffs.b, coeffs.c, coeffs.d, coeffs.e,
                            coeffs.f, coeffs.g, coeffs.h, coeffs.l, coeffs.m)


# ---------------------------------------------------------------------------
# The conformal Killing tensor equation


def contraction_vector(k: SymTensorField) -> VectorField:
    """The vector k_i = (d_i tr K + 2 d_j K_ji) / 5 obtained by contracting
    the valence-2 conformal Killing equation with the metric in dimension 3.
    """
    tr = k.trace()
    fifth = Fraction(1, 5)
    out = []
    for i in range(3):
        acc = tr.diff(i)
        for j in range(3):
            acc = acc + k[j][i].diff(j) * 2
        out.append(acc * fifth)
    return VectorField(tuple(out))


def verify_ckt(k: SymTensorField) -> tuple[bool, VectorField]:
    """Check d_(i K_jk) = k_(i g_jk) identically; returns the verdict and k."""
    kv = contraction_vector(k)
    third = Fraction(1, 3)
    for i in range(3):
        for j in range(i, 3):
            for m in range(j, 3):
                lhs = (k[j][m].diff(i) + k[i][m].diff(j) + k[i][j].diff(m)) * third
                rhs = Poly.zero(k.nvars)
                if j == m:
                    rhs = rhs + kv[i]
                if i == m:
                    rhs = rhs + kv[j]
                if i == j:
                    rhs = rhs + kv[m]
                rhs = rhs * third
                if lhs != rhs:
                    return False, kv
    return True, kv


def killing_obstruction(k: SymTensorField) -> TwoForm:
    """The two-form d(k-flat); identically zero iff the equivalence class of
    K modulo metric multiples contains a Killing tensor."""
    holds, kv = verify_ckt(k)
    if not holds:
        raise CktError("killing_obstruction requires a conformal Killing tensor")

    def rf(p: Poly) -> RationalFunction:
        return RationalFunction(p)

    return TwoForm(
        d12=rf(kv[1].diff(0) - kv[0].diff(1)),
        d13=rf(kv[2].diff(0) - kv[0].diff(2)),
        d23=rf(kv[2].diff(1) - kv[1].diff(2)),
    )


def nijenhuis(k: SymTensorField):
    """Nijenhuis tensor N^i_jk = K^i_l K^l_[j,k] + K^l_[j K^i_k],l with the
    1/2-weighted antisymmetrization over (j, k)."""
    half = Fraction(1, 2)
    dk = [[[k[a][b].diff(c) for c in range(3)] for b in range(3)] for a in range(3)]
    out = []
    for i in range(3):
        plane = []
        for j in range(3):
            row = []
            for kk in range(3):
                acc = Poly.zero(k.nvars)
                for ll in range(3):
                    acc = acc + k[i][ll] * (dk[ll][j][kk] - dk[ll][kk][j])
                    acc = acc + k[ll][j] * dk[i][kk][ll] - k[ll][kk] * dk[i][j][ll]
                row.append(acc * half)
            plane.append(tuple(row))
        out.append(tuple(plane))
    return tuple(out)


def tsn_check(k: SymTensorField) -> bool:
    """Normal-eigenvector test: the three antisymmetrized conditions
    N^l_[jk A_i]l = 0 for A = g, K, K.K, each a single polynomial identity
    in 3 dimensions via contraction with the Levi-Civita symbol.

    N is antisymmetric in its lower pair, so only the three (j < k) slices
    are computed; overall constants are dropped (vanishing is all that
    matters)."""
    zero = Poly.zero(k.nvars)
    dk = [[[k[a][b].diff(c) for c in range(3)] for b in range(3)] for a in range(3)]
    pairs = ((0, 1), (0, 2), (1, 2))
    n: dict = {}
    for j, kk in pairs:
        for ll in range(3):
            acc = zero
            for m in range(3):
                acc = acc + k[ll][m] * (dk[m][j][kk] - dk[m][kk][j])
                acc = acc + k[m][j] * dk[ll][kk][m] - k[m][kk] * dk[ll][j][m]
            n[(ll, j, kk)] = acc

    def contract(a: SymTensorField | None) -> Poly:
        acc = zero
        for j, kk in pairs:
            for i in range(3):
                s = EPS[i][j][kk]
                if not s:
                    continue
                if a is None:
                    term = n[(i, j, kk)]
                else:
                    term = zero
                    for ll in range(3):
                        term = term + a[i][ll] * n[(ll, j, kk)]
                acc = acc + term * s
        return acc

    if not contract(None).is_zero:
        return False
    if not contract(k).is_zero:
        return False
    return contract(k.square()).is_zero


def ckt_dimension(n: int, p: int) -> int:
    """Dimension of the space of valence-p conformal Killing tensors modulo
    metric multiples on flat n-space."""
    if n < 3 or p < 1:
        raise CktError("dimension formula requires n >= 3 and p >= 1")
    num = (math.factorial(n + p - 3) * math.factorial(n + p - 2)
           * (n + 2 * p - 2) * (n + 2 * p - 1) * (n + 2 * p))
    den = (math.factorial(p) * math.factorial(p + 1)
           * math.factorial(n - 2) * math.factorial(n))
    if num % den:
        raise CktError("dimension formula did not evaluate to an integer")
    return num // den


# ---------------------------------------------------------------------------
# The 35-parameter trace-free coefficient space

FREE_COORDS: list[tuple[str, int, int]] = (
    [("a", 0, 0), ("a", 1, 1), ("a", 0, 1), ("a", 0, 2), ("a", 1, 2)]
    + [("b", 0, 0), ("b", 1, 1), ("b", 0, 1), ("b", 0, 2),
       ("b", 1, 0), ("b", 1, 2), ("b", 2, 0), ("b", 2, 1)]
    + [("e", i, j) for i in range(3) for j in range(3)]
    + [("g", 0, 0), ("g", 1, 1), ("g", 0, 1), ("g", 0, 2),
       ("g", 1, 0), ("g", 1, 2), ("g", 2, 0), ("g", 2, 1)]
    + [("m", 0, 0), ("m", 1, 1), ("m", 0, 1), ("m", 0, 2), ("m", 1, 2)]
)

DIM_TRACE_FREE = len(FREE_COORDS)  # 35


def _blocks_from_free(vec: Sequence):
    """Expand 35 free parameters into the full coefficient blocks, filling in
    the dependent entries that make the assembled tensor trace-free."""
    if len(vec) != DIM_TRACE_FREE:
        raise CktError(f"expected {DIM_TRACE_FREE} free parameters")
    zero = 0

    def grid():
        return [[zero] * 3 for _ in range(3)]

    a, b, e, g, m = grid(), grid(), grid(), grid(), grid()
    for value, (block, i, j) in zip(vec, FREE_COORDS):
        target = {"a": a, "b": b, "e": e, "g": g, "m": m}[block]
        target[i][j] = value
        if block in ("a", "m") and i != j:
            target[j][i] = value
    a[2][2] = -(a[0][0] + a[1][1])
    b[2][2] = -(b[0][0] + b[1][1])
    g[2][2] = -(g[0][0] + g[1][1])
    m[2][2] = -(m[0][0] + m[1][1])

    d = [zero] * 3
    l = [zero] * 3
    for i in range(3):
        for j in range(3):
            for kk in range(3):
                if EPS[kk][j][i]:
                    d[i] = d[i] + b[j][kk] * EPS[kk][j][i]
                if EPS[j][kk][i]:
                    l[i] = l[i] + g[kk][j] * EPS[j][kk][i]
    tr_e = e[0][0] + e[1][1] + e[2][2]
    half = Fraction(1, 2)
    c = grid()
    for i in range(3):
        for j in range(3):
            c[i][j] = e[i][j] + e[j][i]
            if i == j:
                c[i][j] = c[i][j] - tr_e * half
    f = [zero] * 3
    return a, b, c, d, e, f, g, 0, l, m


def coefficients_from_free(vec: Sequence) -> CktCoefficients:
    a, b, c, d, e, f, g, h, l, m = _blocks_from_free([rat(v) for v in vec])
    return CktCoefficients.make(a=a, b=b, c=c, d=d, e=e, f=f, g=g, h=h, l=l, m=m)


def free_from_coefficients(coeffs: CktCoefficients) -> list[Fraction]:
    blocks = {"a": coeffs.a, "b": coeffs.b, "e": coeffs.e, "g": coeffs.g, "m": coeffs.m}
    return [Fraction(blocks[block][i][j]) for block, i, j in FREE_COORDS]


def assemble_free(vec: Sequence, nvars: int = 3) -> SymTensorField:
    """Assemble the tensor of a free-parameter vector; entries may be
    rationals or polynomials in the extra variables."""
    a, b, c, d, e, f, g, h, l, m = _blocks_from_free(list(vec))
    return _assemble_blocks(a, b, c, d, e, f, g, h, l, m, nvars=nvars)


@lru_cache(maxsize=None)
def _monomials() -> tuple[dict, list]:
    mons = []
    for total in range(5):
        for i in range(total + 1):
            for j in range(total - i + 1):
                mons.append((i, j, total - i - j))
    return {m: idx for idx, m in enumerate(mons)}, mons


_UPPER = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]


def _vectorize(k: SymTensorField) -> list[Fraction]:
    index, mons = _monomials()
    out = [Fraction(0)] * (6 * len(mons))
    for comp, (i, j) in enumerate(_UPPER):
        for exps, coeff in k[i][j].terms.items():
            if exps not in index:
                raise CktError("tensor component outside the degree-4 space")
            out[comp * len(mons) + index[exps]] = Fraction(coeff)
    return out


@lru_cache(maxsize=None)
def _assembly_matrix() -> list[list[Fraction]]:
    """Columns are the vectorized tensors of the 35 free-parameter basis."""
    cols = []
    for idx in range(DIM_TRACE_FREE):
        vec = [Fraction(0)] * DIM_TRACE_FREE
        vec[idx] = Fraction(1)
        cols.append(_vectorize(assemble_free(vec)))
    rows = len(cols[0])
    return [[cols[c][r] for c in range(DIM_TRACE_FREE)] for r in range(rows)]


def tensor_to_free(k: SymTensorField) -> list[Fraction]:
    """Exact coordinates of a trace-free conformal Killing tensor in the
    35-parameter basis; raises if the tensor is outside that space."""
    sol = linalg.solve(_assembly_matrix(), _vectorize(k))
    if sol is None:
        raise CktError("tensor is not in the trace-free conformal Killing space")
    return sol


def trace_free_reduce(coeffs: CktCoefficients) -> CktCoefficients:
    """Replace coefficients by the unique equivalent set (modulo metric
    multiples) whose assembled tensor is trace-free."""
    k = assemble_ckt(coeffs)
    tau = k.trace()
    reduced = k - metric(k.nvars).scale(tau * Fraction(1, 3))
    try:
        free = tensor_to_free(reduced)
    except CktError as exc:
        raise CktError(f"trace is not removable: {exc}") from exc
    return coefficients_from_free(free)


# ---------------------------------------------------------------------------
# Symmetry subspace scans


def symmetry_subspace(v: VectorField, mode: str) -> list[tuple[Fraction, list[CktCoefficients]]]:
    """Treat Lie_v as a linear operator on the 35-dimensional trace-free
    coefficient space.  mode "h_zero" returns the kernel; mode "h_constant"
    returns every real eigenvalue with its exact eigenspace.
    """
    if mode not in ("h_zero", "h_constant"):
        raise CktError(f"unknown mode {mode!r}; expected h_zero or h_constant")
    smat = _assembly_matrix()
    columns = []
    for idx in range(DIM_TRACE_FREE):
        unit = [Fraction(0)] * DIM_TRACE_FREE
        unit[idx] = Fraction(1)
        lie = lie_derivative(v, assemble_free(unit))
        columns.append(_vectorize(lie))
    solutions = linalg.solve_many(smat, columns)
    if solutions is None:
        raise CktError("Lie derivative left the trace-free space; v is not a CKV")
    lam = [[solutions[c][r] for c in range(DIM_TRACE_FREE)] for r in range(DIM_TRACE_FREE)]
    if mode == "h_zero":
        kernel = linalg.nullspace(lam, DIM_TRACE_FREE)
        return [(Fraction(0), [coefficients_from_free(vec) for vec in kernel])] if kernel else []
    out = []
    for h, space in linalg.rational_eigenvalues(lam):
        out.append((h, [coefficients_from_free(vec) for vec in space]))
    return out


def eigenvector_subspace(v: VectorField, basis: list[CktCoefficients]) -> list[CktCoefficients]:
    """Members of span(basis) whose assembled tensor admits v as an
    eigenvector everywhere: (K.v) x v = 0 identically, a linear condition."""
    rows: dict = {}
    for col, coeffs in enumerate(basis):
        k = assemble_ckt(coeffs)
        kv = k.dot_vector(v)
        for i in range(3):
            cross = Poly.zero(k.nvars)
            for j in range(3):
                for kk in range(3):
                    if EPS[i][j][kk]:
                        cross = cross + kv[j] * v[kk] * EPS[i][j][kk]
            for exps, coeff in cross.terms.items():
                rows.setdefault((i, exps), [Fraction(0)] * len(basis))[col] = Fraction(coeff)
    matrix = list(rows.values())
    combos = linalg.nullspace(matrix, len(basis))
    out = []
    for combo in combos:
        free = [Fraction(0)] * DIM_TRACE_FREE
        for weight, coeffs in zip(combo, basis):
            if weight:
                for idx, value in enumerate(free_from_coefficients(coeffs)):
                    free[idx] += weight * value
        out.append(coefficients_from_free(free))
    return out


@dataclass(frozen=True)
class TsnFilterResult:
    """Outcome of restricting a symmetry subspace by the TSN conditions.

    ``subspace`` always satisfies TSN identically (certified symbolically on
    the whole family).  ``variety_is_linear`` is False when some direction
    outside the subspace also satisfies TSN individually, i.e. the full TSN
    solution set inside the span is not a linear space; the offending
    directions are reported rather than silently absorbed."""

    subspace: tuple[CktCoefficients, ...]
    variety_is_linear: bool
    outside_tsn_directions: tuple[int, ...]


def tsn_filter(v: VectorField, basis: list[CktCoefficients]) -> TsnFilterResult:
    """Restrict span(basis) to the members satisfying the normal-eigenvector
    (TSN) conditions identically.

    The candidate is the linear eigenvector condition (K.v) x v = 0, whose
    sufficiency is certified symbolically (parameters as extra polynomial
    variables).  Basis directions outside the candidate are spot-checked; any
    that satisfy TSN individually are reported in the result.
    """
    sub = eigenvector_subspace(v, basis)
    if sub:
        nparams = len(sub)
        nv = 3 + nparams
        family = SymTensorField.zero(nv)
        for idx, coeffs in enumerate(sub):
            t = Poly.variable(3 + idx, nv)
            family = family + assemble_ckt(coeffs).extend(nv).scale(t)
        if not tsn_check(family):
            raise CktError("eigenvector subspace fails the TSN conditions; filter is unsound")
    sub_rows = [free_from_coefficients(c) for c in sub]
    base_rank = linalg.rank(sub_rows) if sub_rows else 0
    outside = []
    for idx, coeffs in enumerate(basis):
        row = free_from_coefficients(coeffs)
        if linalg.rank(sub_rows + [row]) > base_rank and tsn_check(assemble_ckt(coeffs)):
            outside.append(idx)
    return TsnFilterResult(subspace=tuple(sub),
                           variety_is_linear=not outside,
                           outside_tsn_directions=tuple(outside))
