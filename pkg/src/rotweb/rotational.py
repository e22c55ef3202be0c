"""The six-parameter family of rotationally symmetric conformal Killing
tensors around the z-axis, its eigenvalue geometry, and the catalog of
classical R-separable rotational coordinate webs.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Sequence

from . import ckt_core
from .ckt_core import CktError, SymTensorField, ckv_basis, symmetric_product, verify_ckt
from .exactmath import Poly, UniPoly, rat, rat_str
from .expr import eval_rational


@dataclass(frozen=True)
class RotParams:
    """Parameters (M33, L3, H, C33, D3, A33) of the rotational family

        K = M33 I3.I3 + L3 D.I3 + H D.D + C33 R3.R3 + D3 D.X3 + A33 X3.X3.
    """

    m33: Fraction
    l3: Fraction
    h: Fraction
    c33: Fraction
    d3: Fraction
    a33: Fraction

    @classmethod
    def make(cls, m33=0, l3=0, h=0, c33=0, d3=0, a33=0) -> RotParams:
        return cls(rat(m33), rat(l3), rat(h), rat(c33), rat(d3), rat(a33))

    @classmethod
    def from_sequence(cls, values: Sequence) -> RotParams:
        if len(values) != 6:
            raise CktError("expected six rotational parameters (M33, L3, H, C33, D3, A33)")
        return cls.make(*values)

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.m33, self.l3, self.h, self.c33, self.d3, self.a33)

    def quartic_tuple(self) -> tuple[Fraction, ...]:
        """The five coefficients (M33, L3, H, D3, A33) that define the web."""
        return (self.m33, self.l3, self.h, self.d3, self.a33)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.as_tuple())

    def to_json_dict(self) -> dict:
        return {key: rat_str(value) for key, value in zip(
            ("M33", "L3", "H", "C33", "D3", "A33"), self.as_tuple())}

    def __str__(self) -> str:
        return "(" + ", ".join(rat_str(v) for v in self.as_tuple()) + ")"


def assemble_rotational(p: RotParams) -> SymTensorField:
    """Expand the rotational combination into exact Cartesian components."""
    return assemble_rotational_generic(p.as_tuple(), nvars=3)


def assemble_rotational_generic(values: Sequence, nvars: int = 3) -> SymTensorField:
    """Assemble with rational or polynomial parameter values (the latter lets
    callers work with the whole family symbolically)."""
    basis = ckv_basis(nvars)
    x3, r3, d, i3 = basis[2], basis[5], basis[6], basis[9]
    pieces = [
        symmetric_product(i3, i3),
        symmetric_product(d, i3),
        symmetric_product(d, d),
        symmetric_product(r3, r3),
        symmetric_product(d, x3),
        symmetric_product(x3, x3),
    ]
    total = SymTensorField.zero(nvars)
    for value, piece in zip(values, pieces):
        if isinstance(value, Poly):
            if value.is_zero:
                continue
        elif value == 0:
            continue
        total = total + piece.scale(value)
    return total


def rotational_eigencondition(k: SymTensorField) -> bool:
    """True iff (K.R3) x R3 vanishes identically, i.e. R3 is everywhere an
    eigenvector; this carves out exactly the span of the rotational family
    modulo metric multiples."""
    r3 = ckv_basis(k.nvars)[5]
    kv = k.dot_vector(r3)
    for i in range(3):
        cross = Poly.zero(k.nvars)
        for j in range(3):
            for m in range(3):
                if ckt_core.EPS[i][j][m]:
                    cross = cross + kv[j] * r3[m] * ckt_core.EPS[i][j][m]
        if not cross.is_zero:
            return False
    return True


def extract_parameters(k: SymTensorField) -> RotParams:
    """Read the six parameters off Cartesian components that are insensitive
    to adding a polynomial multiple of the metric.

    The precondition is checked in its metric-shift-invariant form: K must be
    a conformal Killing tensor admitting R3 as an everywhere-eigenvector
    (equivalent to rotational symmetry plus normal eigenvectors for the
    trace-free representative, but stable under K -> K + f g).  Violations
    raise naming the failed condition.
    """
    if not verify_ckt(k)[0]:
        raise CktError("extract_parameters precondition failed: not a conformal Killing tensor")
    if not rotational_eigencondition(k):
        raise CktError("extract_parameters precondition failed: R3 is not an eigenvector "
                       "(tensor is not rotationally symmetric modulo metric multiples)")
    k12, k13 = k[0][1], k[0][2]
    m33 = k12.coeff((1, 1, 2)) / 4
    l3 = k12.coeff((1, 1, 1)) / 2
    h = k13.coeff((1, 0, 1))
    c33 = h - k12.coeff((1, 1, 0))
    d3 = 2 * k13.coeff((1, 0, 0))
    a33 = k[2][2].coeff((0, 0, 0)) - k[1][1].coeff((0, 0, 0))
    return RotParams(m33, l3, h, c33, d3, a33)


def singular_polynomial(p: RotParams) -> UniPoly:
    """q(z) = M33 z^4 + L3 z^3 + H z^2 + D3 z + A33, whose roots on the
    extended z-axis are the points where all three eigenvalues coincide."""
    return UniPoly([p.a33, p.d3, p.h, p.l3, p.m33])


def eigenvalues_at(p: RotParams, point: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    """Exact eigenvalue data (lambda1, A, B) at a rational point: R3 is an
    eigenvector with eigenvalue lambda1 = C33 (x^2 + y^2), and the other two
    eigenvalues are (A +- sqrt(B)) / 2.

    B is returned exactly rather than as a radical; it is nonnegative by
    construction, and B < 0 is treated as an internal inconsistency.
    """
    x, y, z = (Fraction(v) for v in point)
    rho2 = x * x + y * y
    r2 = rho2 + z * z
    if r2 == 0:
        raise CktError("eigenvalue formulas are undefined at the origin")
    lam1 = p.c33 * rho2
    a_val = r2 * r2 * p.m33 + z * r2 * p.l3 + r2 * p.h + z * p.d3 + p.a33
    term1 = (r2 * p.l3 + 2 * z * p.h
             + (4 * z * z - r2) / r2 * p.d3
             + 4 * z * (2 * z * z - r2) / (r2 * r2) * p.a33)
    term2 = (r2 * r2 * p.m33 + z * r2 * p.l3 + (2 * z * z - r2) * p.h
             + z * (4 * z * z - 3 * r2) / r2 * p.d3
             + (r2 * r2 - 8 * z * z * (r2 - z * z)) / (r2 * r2) * p.a33)
    b_val = rho2 * term1 * term1 + term2 * term2
    if b_val < 0:
        raise CktError("internal inconsistency: discriminant B evaluated negative")
    return lam1, a_val, b_val


def cyclide_surface_residual(p: RotParams, h: Fraction, point: Sequence) -> Fraction:
    """Value of the expanded confocal-cyclide surface equation at a point;
    zero iff the point lies on the parameter-h coordinate surface."""
    h = rat(h)
    x, y, z = (Fraction(v) for v in point)
    rho2 = x * x + y * y
    r2 = rho2 + z * z
    ch = p.c33 - h
    return ((4 * (p.h - ch) * p.m33 - p.l3 * p.l3) * r2 * r2
            + (8 * p.m33 * p.d3 - 4 * ch * p.l3) * r2 * z
            + (2 * p.l3 * p.d3 - 4 * ch * p.h) * r2
            + 16 * p.m33 * p.a33 * z * z
            + 4 * ch * ch * rho2
            + (8 * p.l3 * p.a33 - 4 * ch * p.d3) * z
            - p.d3 * p.d3 + 4 * (p.h - ch) * p.a33)


# ---------------------------------------------------------------------------
# Catalog of classical rotational webs


@dataclass(frozen=True)
class CatalogEntry:
    """One classical coordinate web: name, instantiated parameters, the web
    type its quartic must classify to, and the optional conformal-equivalence
    note naming the partner web and transformation."""

    name: str
    params: RotParams
    expected_type: str
    equivalent_to: str | None = None
    transformation: str | None = None


def _catalog_path() -> str | None:
    return os.environ.get("ROTWEB_CATALOG")


def load_catalog_data() -> dict:
    override = _catalog_path()
    if override:
        with open(override, "r", encoding="utf-8") as fh:
            return json.load(fh)
    with resources.files("rotweb.data").joinpath("catalog.json").open("r", encoding="utf-8") as fh:
        return json.load(fh)


def catalog(a: Fraction | str = 1, k: Fraction | str = Fraction(1, 2)) -> list[CatalogEntry]:
    """The 15 catalog rows with scale constants instantiated.

    Requires a > 0 and 0 < k < 1; classification is constant-independent on
    those ranges.
    """
    a = rat(a)
    k = rat(k)
    if a <= 0:
        raise CktError("catalog scale constant must satisfy a > 0")
    if not 0 < k < 1:
        raise CktError("catalog modulus must satisfy 0 < k < 1")
    env = {"a": a, "k": k}
    data = load_catalog_data()
    entries = []
    for row in data["rows"]:
        params = RotParams.make(*(eval_rational(row[key], env)
                                  for key in ("m33", "l3", "h", "c33", "d3", "a33")))
        entries.append(CatalogEntry(
            name=row["name"],
            params=params,
            expected_type=row["expected_type"],
            equivalent_to=row.get("equivalent_to"),
            transformation=row.get("transformation"),
        ))
    if len(entries) != 15:
        raise CktError(f"catalog must contain 15 rows, found {len(entries)}")
    return entries
