"""Compatibility between rotational conformal Killing tensors and
fixed-energy Hamilton-Jacobi separation: the closedness condition on
(E - V) k_flat + 2 K dV, an exact linear solver for the compatible
six-parameter subfamily, and the Killing-tensor special case d(K dV) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .ckt_core import CktError, OneForm, SymTensorField, TwoForm, contraction_vector, killing_obstruction, verify_ckt
from .exactmath import Poly, RationalFunction, rat
from .expr import eval_expr
from .quartic_class import BinaryQuartic, WebType, classify_by_roots
from .rotational import RotParams, assemble_rotational, assemble_rotational_generic


@dataclass(frozen=True)
class Potential:
    """A scalar potential V (rational function of x, y, z) with the fixed
    energy value E of the Hamilton-Jacobi equation."""

    v: RationalFunction
    energy: Fraction

    @classmethod
    def from_expression(cls, text: str, energy) -> Potential:
        return cls(parse_potential(text), rat(energy))


def parse_potential(text: str) -> RationalFunction:
    """Parse an expression in x, y, z with rational constants, + - * /,
    parentheses and integer powers into an exact rational function."""
    env = {
        "x": RationalFunction(Poly.variable(0, 3)),
        "y": RationalFunction(Poly.variable(1, 3)),
        "z": RationalFunction(Poly.variable(2, 3)),
    }
    value = eval_expr(text, env, const=lambda c: RationalFunction(Poly.const(c, 3)))
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction(Poly.const(value, 3))


@dataclass(frozen=True)
class ParamSolution:
    """Affine space of compatible rotational parameters: a particular solution
    plus a basis of homogeneous solutions.  The compatibility condition is
    linear and homogeneous in the parameters, so the particular part is zero;
    it is kept for interface stability."""

    particular: RotParams
    basis: tuple[RotParams, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def c33_free(self) -> bool:
        rows = [list(p.as_tuple()) for p in self.basis]
        e_c33 = [0, 0, 0, 1, 0, 0]
        return linalg.rank(rows) == linalg.rank(rows + [e_c33]) and bool(rows)

    def to_json_dict(self) -> dict:
        return {
            "particular": self.particular.to_json_dict(),
            "basis": [p.to_json_dict() for p in self.basis],
            "dimension": self.dimension,
            "c33_free": self.c33_free(),
        }


def _form_over_common_denominator(tensor: SymTensorField, kvec, v: RationalFunction,
                                  energy) -> OneForm:
    """(E - V) k_flat - K dV assembled as P_i / den^2 over the single
    denominator of V, which keeps the exact arithmetic small."""
    n, d = v.num, v.den
    energy_poly = Poly.const(energy, n.nvars)
    den = d * d
    comps = []
    for i in range(3):
        total = (energy_poly * d - n) * kvec[i] * d
        for j in range(3):
            total = total - tensor[i][j] * (n.diff(j) * d - n * d.diff(j))
        comps.append(RationalFunction(total, den))
    return OneForm(tuple(comps))


def compatibility_form(p: RotParams, pot: Potential) -> OneForm:
    """The compatibility one-form (E - V) k_flat - K dV for the rotational
    tensor of p; its exact closedness characterizes fixed-energy separation.

    The relative weight of the two terms is pinned mechanically: with k
    normalized by d_(i K_jk) = k_(i g_jk), this combination (and no other
    rational weighting) makes the closedness condition reproduce the known
    two-parameter compatible family of the benchmark potential
    -4 c^2 / ((x^2+y^2+z^2-c^2)^2 + 4 c^2 z^2) at every scale c, and it
    reduces to d(K dV) = 0 when the class is Killing-representable with a
    constant E - V.
    """
    k = assemble_rotational(p)
    holds, kvec = verify_ckt(k)
    if not holds:
        raise CktError("rotational tensor failed the conformal Killing check")
    return _form_over_common_denominator(k, kvec, pot.v, pot.energy)


def _curl_component(omega: OneForm, i: int, j: int) -> RationalFunction:
    a, b = omega[i], omega[j]
    if a.den == b.den:
        # d(P_i/d), d(P_j/d) over the shared denominator: numerator over d^2.
        d = a.den
        num = d * (b.num.diff(i) - a.num.diff(j)) - (b.num * d.diff(i) - a.num * d.diff(j))
        return RationalFunction(num, d * d)
    return b.diff(i) - a.diff(j)


def exterior_derivative(omega: OneForm) -> TwoForm:
    return TwoForm(
        d12=_curl_component(omega, 0, 1),
        d13=_curl_component(omega, 0, 2),
        d23=_curl_component(omega, 1, 2),
    )


def is_closed(omega: OneForm) -> bool:
    """Exact closedness of a one-form with rational-function components."""
    return exterior_derivative(omega).is_zero


def poincare_potential(omega: OneForm) -> Poly:
    """For a closed one-form with polynomial components, an exact polynomial
    potential with d(potential) = omega (radial homotopy integral)."""
    one = Poly.const(1, 3)
    comps = []
    for c in omega.components:
        if c.den != one:
            raise CktError("poincare_potential requires polynomial components")
        comps.append(c.num)
    if not is_closed(omega):
        raise CktError("poincare_potential requires a closed form")
    x = [Poly.variable(i, 3) for i in range(3)]
    inner = Poly.zero(3)
    for i in range(3):
        inner = inner + x[i] * comps[i]
    result = Poly.zero(3)
    for exps, coeff in inner.terms.items():
        degree = sum(exps)
        result = result + Poly.from_terms({exps: Fraction(coeff, degree)}, 3)
    return result


def dkdv_check(k: SymTensorField, v: RationalFunction) -> bool:
    """Killing-tensor compatibility d(K dV) = 0, exact.  Only meaningful for
    tensors whose class contains a Killing tensor; others must go through the
    full compatibility form."""
    if not killing_obstruction(k).is_zero:
        raise CktError("tensor class has no Killing representative; use solve_compatible "
                       "with the full compatibility condition")
    n, d = v.num, v.den
    den = d * d
    comps = []
    for i in range(3):
        total = Poly.zero(3)
        for j in range(3):
            total = total + k[i][j] * (n.diff(j) * d - n * d.diff(j))
        comps.append(RationalFunction(total, den))
    return is_closed(OneForm(tuple(comps)))


# ---------------------------------------------------------------------------
# Exact solver


_NPARAMS = 6


def _collect_linear_rows(polys: list[Poly]) -> list[list[Fraction]]:
    """Each input polynomial is linear homogeneous in the parameter variables
    3..8; return one row of parameter coefficients per (poly, xyz-monomial)."""
    rows: dict = {}
    for idx, poly in enumerate(polys):
        for exps, coeff in poly.terms.items():
            xyz = exps[:3]
            params = exps[3:]
            weight = sum(params)
            if weight == 0:
                raise CktError("compatibility system has a parameter-free term; "
                               "the condition is not homogeneous")
            if weight > 1:
                raise CktError("compatibility system is not linear in the parameters")
            which = params.index(1)
            rows.setdefault((idx, xyz), [Fraction(0)] * _NPARAMS)[which] = Fraction(coeff)
    return list(rows.values())


def solve_compatible(pot: Potential) -> ParamSolution:
    """All rotational parameters whose tensor satisfies the closedness of
    (E - V) k_flat + 2 K dV, solved exactly by clearing denominators and
    matching polynomial coefficients (no sampling in the certified path)."""
    nvars = 3 + _NPARAMS
    params = [Poly.variable(3 + i, nvars) for i in range(_NPARAMS)]
    tensor = assemble_rotational_generic(params, nvars=nvars)
    kvec = contraction_vector(tensor)
    n = pot.v.num.extend(nvars)
    d = pot.v.den.extend(nvars)
    energy = Poly.const(pot.energy, nvars)
    # omega_i = P_i / d^2 with polynomial numerators, linear in the parameters.
    p_comps = []
    for i in range(3):
        total = (energy * d - n) * kvec[i] * d
        for j in range(3):
            total = total - tensor[i][j] * (n.diff(j) * d - n * d.diff(j))
        p_comps.append(total)
    # d(omega)_{ij} over d^3.
    numerators = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        numerators.append(
            d * (p_comps[j].diff(i) - p_comps[i].diff(j))
            - (p_comps[j] * d.diff(i) - p_comps[i] * d.diff(j)) * 2
        )
    if all(poly.is_zero for poly in numerators):
        basis = [tuple(Fraction(int(i == j)) for j in range(_NPARAMS)) for i in range(_NPARAMS)]
    else:
        basis = linalg.nullspace(_collect_linear_rows(numerators), _NPARAMS)
    members = tuple(RotParams.make(*vec) for vec in basis)
    for member in members:
        if not is_closed(compatibility_form(member, pot)):
            raise CktError("solver self-check failed: a solution is not closed")
    return ParamSolution(particular=RotParams.make(), basis=members)


# ---------------------------------------------------------------------------
# End-to-end potential classification


@dataclass(frozen=True)
class PotentialClassification:
    solution: ParamSolution
    web_type: WebType | None
    member: RotParams | None
    reason: str | None
    member_types: tuple

    def to_json_dict(self) -> dict:
        return {
            "solution": self.solution.to_json_dict(),
            "web_type": self.web_type.value if self.web_type else None,
            "member": self.member.to_json_dict() if self.member else None,
            "reason": self.reason,
            "member_types": [
                {"params": p.to_json_dict(), "type": t.value} for p, t in self.member_types
            ],
        }


def characteristic_member(solution: ParamSolution) -> RotParams | None:
    """A representative with nonzero quartic part, normalized so that the
    x^2 y^2 coefficient H is 1 when possible, else the first nonzero quartic
    coefficient is 1."""
    quartics = [list(p.quartic_tuple()) for p in solution.basis]
    if not quartics or linalg.rank(quartics) == 0:
        return None
    for p in solution.basis:
        tup = p.quartic_tuple()
        if any(c != 0 for c in tup):
            if p.h != 0:
                scale = 1 / p.h
            else:
                scale = 1 / next(c for c in tup if c != 0)
            return RotParams.make(*(c * scale for c in p.as_tuple()))
    return None


def classify_potential(pot: Potential) -> PotentialClassification:
    """Solve the compatibility condition and classify the web of a
    characteristic compatible tensor, when one exists."""
    solution = solve_compatible(pot)
    if solution.dimension == _NPARAMS:
        return PotentialClassification(solution, None, None,
                                       "underdetermined: every rotational tensor is compatible",
                                       ())
    member_types = []
    for p in solution.basis:
        if any(c != 0 for c in p.quartic_tuple()):
            quartic = BinaryQuartic.from_rot_params(p)
            member_types.append((p, classify_by_roots(quartic)))
    member = characteristic_member(solution)
    if member is None:
        return PotentialClassification(
            solution, None, None,
            "no characteristic member: compatible tensors are multiples of the metric "
            "and R3.R3 only; no web defined", ())
    web = classify_by_roots(BinaryQuartic.from_rot_params(member))
    reason = None
    if any(t is not web for _, t in member_types):
        reason = "solution space mixes inequivalent web types; representative type reported"
    return PotentialClassification(solution, web, member, reason, tuple(member_types))
