"""Binary-quartic invariant theory and the nine-way classification of
rotationally symmetric R-separable webs.

A rotational tensor's web is decided by the real binary quartic

    Q(X, Y) = M33 X^4 + L3 X^3 Y + H X^2 Y^2 + D3 X Y^3 + A33 Y^4,

equivalently by the root partition of q(z) = Q(z, 1) over the projective
line (a degree drop puts roots at infinity, which count as real).

Note on normalization: with the invariants I and J in the non-binomial
coefficient convention used here, the quartic discriminant is proportional
to 4 I^3 - J^2, and that is the Delta used throughout.  Covariant sign
conditions ("H > 0") are read as global semidefiniteness: nonnegative
everywhere and not identically zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import (UniPoly, rat, rat_str, real_root_count,
                        isolate_real_roots, rational_roots, refine_root,
                        squarefree_decomposition, squarefree_part)
from .group_action import GroupElement, Mat2, apply_quartic
from .rotational import RotParams


class ClassificationError(ValueError):
    """Raised when no classification rule matches; carries the audit trail."""

    def __init__(self, message: str, audit: list | None = None):
        super().__init__(message)
        self.audit = audit or []


class WebType(enum.Enum):
    BI_CYCLIDE = "bi_cyclide"
    FLAT_RING_CYCLIDE = "flat_ring_cyclide"
    DISK_CYCLIDE = "disk_cyclide"
    INVERSE_PROLATE_SPHEROIDAL = "inverse_prolate_spheroidal"
    INVERSE_OBLATE_SPHEROIDAL = "inverse_oblate_spheroidal"
    TOROIDAL = "toroidal"
    BISPHERICAL = "bispherical"
    CARDIOID = "cardioid"
    TANGENT_SPHERE = "tangent_sphere"


class FormSign(enum.Enum):
    IDENTICALLY_ZERO = "identically_zero"
    PSD_NONZERO = "psd_nonzero"
    NSD_NONZERO = "nsd_nonzero"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class BinaryQuartic:
    """Coefficients (x4, x3y, x2y2, xy3, y4) of the classifying quartic; for a
    rotational tensor these are (M33, L3, H, D3, A33)."""

    x4: Fraction
    x3y: Fraction
    x2y2: Fraction
    xy3: Fraction
    y4: Fraction

    @classmethod
    def make(cls, x4=0, x3y=0, x2y2=0, xy3=0, y4=0) -> BinaryQuartic:
        return cls(rat(x4), rat(x3y), rat(x2y2), rat(xy3), rat(y4))

    @classmethod
    def from_rot_params(cls, p: RotParams) -> BinaryQuartic:
        return cls.make(*p.quartic_tuple())

    @classmethod
    def from_tuple(cls, values: Sequence) -> BinaryQuartic:
        if len(values) != 5:
            raise ClassificationError("expected five quartic coefficients")
        return cls.make(*values)

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.x4, self.x3y, self.x2y2, self.xy3, self.y4)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.as_tuple())

    def dehomogenize(self) -> UniPoly:
        """q(z) = Q(z, 1), low-degree-first."""
        return UniPoly([self.y4, self.xy3, self.x2y2, self.x3y, self.x4])

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.as_tuple()]


# ---------------------------------------------------------------------------
# Binary forms of general even degree (coefficients X-degree-descending)


def form_mul(a: Sequence, b: Sequence) -> tuple:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return tuple(out)


def form_scale(a: Sequence, c) -> tuple:
    return tuple(x * c for x in a)


def form_sub(a: Sequence, b: Sequence) -> tuple:
    if len(a) != len(b):
        raise ClassificationError("cannot subtract forms of different degree")
    return tuple(x - y for x, y in zip(a, b))


def form_is_zero(a: Sequence) -> bool:
    return all(c == 0 for c in a)


def form_sign(coeffs: Sequence) -> FormSign:
    """Global sign of an even-degree homogeneous binary form, decided exactly:
    indefinite iff its dehomogenization has a real root of odd multiplicity,
    else the sign of the leading coefficient wins.  A form that vanishes on
    lines but never changes sign still counts as semidefinite."""
    degree = len(coeffs) - 1
    if degree % 2 != 0:
        raise ClassificationError("form_sign requires an even-degree form")
    if form_is_zero(coeffs):
        return FormSign.IDENTICALLY_ZERO
    # C(x, 1): coefficient of x^k is coeffs[degree - k].
    poly = UniPoly(list(reversed(coeffs)))
    odd_product = UniPoly([1])
    for factor, mult in squarefree_decomposition(poly):
        if mult % 2 == 1:
            odd_product = odd_product * factor
    if odd_product.degree > 0 and real_root_count(odd_product) > 0:
        return FormSign.INDEFINITE
    return FormSign.PSD_NONZERO if poly.lead > 0 else FormSign.NSD_NONZERO


# ---------------------------------------------------------------------------
# Invariants and covariants


@dataclass(frozen=True)
class Invariants:
    i: Fraction
    j: Fraction
    delta: Fraction
    f: Fraction | None

    def to_json_dict(self) -> dict:
        return {
            "I": rat_str(self.i), "J": rat_str(self.j), "Delta": rat_str(self.delta),
            "F": rat_str(self.f) if self.f is not None else None,
        }


def invariants(q: BinaryQuartic) -> Invariants:
    """I, J, the discriminant Delta = 4 I^3 - J^2, and the absolute invariant
    F = I^3 / J^2 when J != 0."""
    m, l, h, d, a = q.as_tuple()
    i_val = 12 * a * m - 3 * l * d + h * h
    j_val = 72 * a * m * h - 27 * a * l * l - 27 * d * d * m + 9 * d * l * h - 2 * h ** 3
    delta = 4 * i_val ** 3 - j_val ** 2
    f_val = i_val ** 3 / (j_val * j_val) if j_val != 0 else None
    return Invariants(i_val, j_val, delta, f_val)


def hessian(q: BinaryQuartic) -> tuple:
    """H(X, Y) = Q_XX Q_YY - Q_XY^2, a quartic covariant; identically zero
    iff Q has a quadruple root."""
    m, l, h, d, a = q.as_tuple()
    qxx = (12 * m, 6 * l, 2 * h)          # degree-2 form, X-descending
    qyy = (2 * h, 6 * d, 12 * a)
    qxy = (3 * l, 4 * h, 3 * d)
    return form_sub(form_mul(qxx, qyy), form_mul(qxy, qxy))


def covariant_l(q: BinaryQuartic) -> tuple:
    """L(X, Y) = I H(X, Y) - 6 J Q(X, Y), a quartic covariant."""
    inv = invariants(q)
    return form_sub(form_scale(hessian(q), inv.i), form_scale(q.as_tuple(), 6 * inv.j))


def covariant_m(q: BinaryQuartic) -> tuple:
    """M(X, Y) = 12 H(X, Y)^2 - I Q(X, Y)^2, a degree-8 covariant."""
    inv = invariants(q)
    h = hessian(q)
    return form_sub(form_scale(form_mul(h, h), 12),
                    form_scale(form_mul(q.as_tuple(), q.as_tuple()), inv.i))


# ---------------------------------------------------------------------------
# Root structure over the projective line


@dataclass(frozen=True)
class RootStructure:
    """Real-root partition of the quartic over RP^1: the root at infinity has
    multiplicity 4 - deg q; finite roots come from the square-free factors."""

    infinity_multiplicity: int
    finite_factors: tuple  # (square-free monic UniPoly, multiplicity, real root count)
    real_multiplicities: tuple
    cc_pair_multiplicities: tuple

    def to_json_dict(self) -> dict:
        return {
            "infinity_multiplicity": self.infinity_multiplicity,
            "finite_factors": [
                {"coefficients": [rat_str(c) for c in factor.coeffs],
                 "multiplicity": mult, "real_roots": nreal}
                for factor, mult, nreal in self.finite_factors
            ],
            "real_multiplicities": list(self.real_multiplicities),
            "complex_pair_multiplicities": list(self.cc_pair_multiplicities),
        }


def root_structure(q: BinaryQuartic) -> RootStructure:
    if q.is_zero:
        raise ClassificationError("the zero form has no root structure")
    poly = q.dehomogenize()
    inf_mult = 4 - poly.degree
    finite = []
    reals: list[int] = []
    pairs: list[int] = []
    if inf_mult:
        reals.append(inf_mult)
    if poly.degree > 0:
        for factor, mult in squarefree_decomposition(poly):
            nreal = real_root_count(factor)
            finite.append((factor, mult, nreal))
            reals.extend([mult] * nreal)
            npairs = (factor.degree - nreal) // 2
            pairs.extend([mult] * npairs)
    structure = RootStructure(
        infinity_multiplicity=inf_mult,
        finite_factors=tuple(finite),
        real_multiplicities=tuple(sorted(reals, reverse=True)),
        cc_pair_multiplicities=tuple(sorted(pairs, reverse=True)),
    )
    total = sum(structure.real_multiplicities) + 2 * sum(structure.cc_pair_multiplicities)
    if total != 4:
        raise ClassificationError(f"root multiplicities sum to {total}, not 4")
    return structure


_PARTITION_TO_TYPE: dict = {
    ((1, 1, 1, 1), ()): WebType.BI_CYCLIDE,
    ((), (1, 1)): WebType.FLAT_RING_CYCLIDE,
    ((1, 1), (1,)): WebType.DISK_CYCLIDE,
    ((2, 1, 1), ()): WebType.INVERSE_PROLATE_SPHEROIDAL,
    ((2,), (1,)): WebType.INVERSE_OBLATE_SPHEROIDAL,
    ((), (2,)): WebType.TOROIDAL,
    ((2, 2), ()): WebType.BISPHERICAL,
    ((3, 1), ()): WebType.CARDIOID,
    ((4,), ()): WebType.TANGENT_SPHERE,
}


def classify_by_roots(q: BinaryQuartic) -> WebType:
    """The authoritative classifier: map the real/complex root partition of
    the quartic (roots at infinity counting as real) to the nine web types."""
    structure = root_structure(q)
    key = (structure.real_multiplicities, structure.cc_pair_multiplicities)
    try:
        return _PARTITION_TO_TYPE[key]
    except KeyError:
        raise ClassificationError(f"unmatched root partition {key}") from None


def classify_by_invariants(q: BinaryQuartic) -> tuple[WebType, list[dict]]:
    """The algebraic decision list over (Delta, H, L, M, I, J), evaluated
    strictly top to bottom; covariant inequalities are read semidefinitely.
    Returns the type and the audit trail of every condition evaluated."""
    if q.is_zero:
        raise ClassificationError("the zero form has no web type")
    inv = invariants(q)
    h_sign = form_sign(hessian(q))
    l_sign = form_sign(covariant_l(q))
    m_sign = form_sign(covariant_m(q))
    audit: list[dict] = []

    def record(web: WebType, condition: str, matched: bool) -> bool:
        audit.append({"web": web.value, "condition": condition, "matched": matched})
        return matched

    rows = [
        (WebType.DISK_CYCLIDE, "Delta < 0",
         inv.delta < 0),
        (WebType.BI_CYCLIDE, "Delta > 0 and H < 0 and M > 0",
         inv.delta > 0 and h_sign is FormSign.NSD_NONZERO and m_sign is FormSign.PSD_NONZERO),
        (WebType.FLAT_RING_CYCLIDE, "Delta > 0 and (H > 0 or M > 0)",
         inv.delta > 0 and (h_sign is FormSign.PSD_NONZERO or m_sign is FormSign.PSD_NONZERO)),
        (WebType.INVERSE_PROLATE_SPHEROIDAL, "Delta = 0 and L < 0",
         inv.delta == 0 and l_sign is FormSign.NSD_NONZERO),
        (WebType.INVERSE_OBLATE_SPHEROIDAL, "Delta = 0 and L > 0",
         inv.delta == 0 and l_sign is FormSign.PSD_NONZERO),
        # Triple-root quartics also satisfy L = 0 with a semidefinite Hessian,
        # so the next two rows carry the guard I, J not both zero (always true
        # on genuine toroidal/bispherical orbits, where I scales as a3^2 from
        # 16); without it they would swallow every cardioid quartic.
        (WebType.TOROIDAL, "L = 0 and H > 0 and not I = J = 0",
         l_sign is FormSign.IDENTICALLY_ZERO and h_sign is FormSign.PSD_NONZERO
         and not (inv.i == 0 and inv.j == 0)),
        (WebType.BISPHERICAL, "L = 0 and H < 0 and not I = J = 0",
         l_sign is FormSign.IDENTICALLY_ZERO and h_sign is FormSign.NSD_NONZERO
         and not (inv.i == 0 and inv.j == 0)),
        (WebType.CARDIOID, "I = J = 0 and H != 0",
         inv.i == 0 and inv.j == 0 and h_sign is not FormSign.IDENTICALLY_ZERO),
        (WebType.TANGENT_SPHERE, "H = 0",
         h_sign is FormSign.IDENTICALLY_ZERO),
    ]
    for web, condition, matched in rows:
        if record(web, condition, matched):
            return web, audit
    raise ClassificationError("no algebraic condition matched", audit)


# ---------------------------------------------------------------------------
# Canonical forms


@dataclass(frozen=True)
class CanonicalForm:
    """Representative forms: I = (1, 0, mu, 0, 1); II = (1, 0, mu, 0, -1);
    III = (1, 0, nu, 0, 0) with nu = +-1; IV = (0, 1, 0, 0, 0); V =
    (1, 0, 0, 0, 0)."""

    form: str
    parameter: Fraction | float | None
    exact: bool

    def quartic(self) -> BinaryQuartic | None:
        """The canonical representative when the parameter is exact."""
        if not self.exact and self.parameter is not None:
            return None
        p = self.parameter
        if self.form == "I":
            return BinaryQuartic.make(1, 0, p, 0, 1)
        if self.form == "II":
            return BinaryQuartic.make(1, 0, p, 0, -1)
        if self.form == "III":
            return BinaryQuartic.make(1, 0, p, 0, 0)
        if self.form == "IV":
            return BinaryQuartic.make(0, 1, 0, 0, 0)
        return BinaryQuartic.make(1, 0, 0, 0, 0)

    def to_json_dict(self) -> dict:
        if self.parameter is None:
            parameter = None
        elif self.exact:
            parameter = rat_str(self.parameter)
        else:
            parameter = float(self.parameter)
        return {"form": self.form, "parameter": parameter, "exact_parameter": self.exact}


def _canonical_coeffs(form: str, parameter) -> tuple:
    if form == "I":
        return (1, 0, parameter, 0, 1)
    if form == "II":
        return (1, 0, parameter, 0, -1)
    if form == "III":
        return (1, 0, parameter, 0, 0)
    if form == "IV":
        return (0, 1, 0, 0, 0)
    return (1, 0, 0, 0, 0)


_TYPE_TO_FORM = {
    WebType.BI_CYCLIDE: "I",
    WebType.FLAT_RING_CYCLIDE: "I",
    WebType.TOROIDAL: "I",
    WebType.BISPHERICAL: "I",
    WebType.DISK_CYCLIDE: "II",
    WebType.INVERSE_PROLATE_SPHEROIDAL: "III",
    WebType.INVERSE_OBLATE_SPHEROIDAL: "III",
    WebType.CARDIOID: "IV",
    WebType.TANGENT_SPHERE: "V",
}


def _mu_in_range(web: WebType, mu) -> bool:
    if web is WebType.BI_CYCLIDE:
        return mu < -2
    if web is WebType.FLAT_RING_CYCLIDE:
        return mu > -2 and mu != 2
    return True  # form II takes any mu


def _mu_candidates(web: WebType, inv: Invariants) -> list[tuple[Fraction | float, bool]]:
    """Parameters of canonical form I/II matching the absolute invariant
    F = I^3/J^2, ordered deterministically.  The F-equation can have several
    in-range roots that are complex- but not real-equivalent to the input, so
    callers must keep the first candidate whose witness verifies."""
    if inv.j == 0:
        # F undefined: finitely many candidates, picked by type.
        return [(Fraction(-6), True)] if web is WebType.BI_CYCLIDE else [(Fraction(0), True)]
    f = inv.f
    if web is WebType.DISK_CYCLIDE:
        # (mu^2 - 12)^3 = F * 4 mu^2 (36 + mu^2)^2
        poly = UniPoly([
            -1728, 0, 432 - 5184 * f, 0, -36 - 288 * f, 0, 1 - 4 * f,
        ])
    else:
        # (12 + mu^2)^3 = F * 4 mu^2 (36 - mu^2)^2
        poly = UniPoly([
            1728, 0, 432 - 5184 * f, 0, 36 + 288 * f, 0, 1 - 4 * f,
        ])
    exact = []
    for mu in rational_roots(poly):
        if not _mu_in_range(web, mu):
            continue
        candidate = BinaryQuartic.from_tuple(_canonical_coeffs(_TYPE_TO_FORM[web], mu))
        if classify_by_roots(candidate) is web:
            exact.append(mu)
    exact.sort(key=lambda v: (abs(v), v < 0))
    numeric = []
    sf = squarefree_part(poly)
    exact_floats = [float(v) for v in exact]
    for lo, hi in isolate_real_roots(poly):
        lo, hi = refine_root(sf, lo, hi, Fraction(1, 10**15))
        mu = float((lo + hi) / 2)
        if _mu_in_range(web, mu) and not any(abs(mu - e) < 1e-9 for e in exact_floats):
            numeric.append(mu)
    numeric.sort(key=lambda v: (abs(v), v < 0))
    out: list[tuple[Fraction | float, bool]] = [(mu, True) for mu in exact]
    out.extend((mu, False) for mu in numeric)
    if not out:
        raise ClassificationError(f"no canonical parameter in range for {web.value}")
    return out


def _roots_with_multiplicity(q: BinaryQuartic) -> list[tuple[complex | None, int]]:
    """Float roots over the projective line; None encodes infinity."""
    import numpy as np

    poly = q.dehomogenize()
    out: list[tuple[complex | None, int]] = []
    if poly.degree < 4:
        out.append((None, 4 - poly.degree))
    if poly.degree > 0:
        for factor, mult in squarefree_decomposition(poly):
            cs = [float(c) for c in reversed(factor.coeffs)]
            for root in np.roots(cs):
                root = complex(root)
                if abs(root.imag) < 1e-9:
                    root = complex(root.real, 0.0)
                out.append((root, mult))
    return out


def _mobius_three_points(src: list, dst: list) -> Mat2 | None:
    """Complex Moebius matrix sending the three source points to the three
    targets (None = infinity); returns None for degenerate data."""

    def to_01inf(z1, z2, z3):
        # Rows of the map sending (z1, z2, z3) -> (0, 1, inf).
        if z1 is None:
            return Mat2(0, z2 - z3, 1, -z3)
        if z2 is None:
            return Mat2(1, -z1, 1, -z3)
        if z3 is None:
            return Mat2(1, -z1, 0, z2 - z1)
        return Mat2(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))

    try:
        a = to_01inf(*src)
        b = to_01inf(*dst)
        det_b = b.det()
        if abs(det_b) < 1e-14 or abs(a.det()) < 1e-14:
            return None
        b_inv = Mat2(b.delta / det_b, -b.beta / det_b, -b.gamma / det_b, b.alpha / det_b)
        return b_inv.mul(a)
    except ZeroDivisionError:
        return None


def _from_gl2_float(m: Mat2) -> GroupElement | None:
    scale = max(abs(m.alpha), abs(m.beta), abs(m.gamma), abs(m.delta))
    if scale == 0:
        return None
    if abs(m.alpha) < 1e-10 * scale:
        m1 = Mat2(m.gamma, m.delta, m.alpha, m.beta)
        base = _from_gl2_float(m1)
        if base is None:
            return None
        return GroupElement.make(base.a0, base.a1, base.a2, base.a3, 0, True)
    det = m.det()
    if det == 0:
        return None
    a0 = Fraction(-m.gamma / m.alpha)
    a1 = Fraction(-m.beta / m.alpha)
    a2 = Fraction(det / (m.alpha * m.alpha))
    a3 = Fraction(det * det)
    if a2 == 0 or a3 == 0:
        return None
    return GroupElement.make(a0, a1, a2, a3, 0, False)


def _anchor_candidates(src_roots, dst_roots):
    """Multiplicity-respecting anchor triples (source -> target), conjugation
    stable so the interpolating Moebius map is real."""
    from itertools import permutations

    def split(roots):
        reals, pairs = [], []
        for root, mult in roots:
            if root is None or root.imag == 0:
                reals.append((root, mult))
            elif root.imag > 0:
                pairs.append((root, mult))
        return reals, pairs

    src_reals, src_pairs = split(src_roots)
    dst_reals, dst_pairs = split(dst_roots)
    if sorted(m for _, m in src_reals) != sorted(m for _, m in dst_reals):
        return
    if sorted(m for _, m in src_pairs) != sorted(m for _, m in dst_pairs):
        return

    def conj(z):
        return None if z is None else z.conjugate()

    pads_dst = [0.0, 1.0, -1.0, 0.5, 2.0, None]
    for real_perm in permutations(dst_reals):
        if any(sm != dm for (_, sm), (_, dm) in zip(src_reals, real_perm)):
            continue
        for pair_perm in permutations(dst_pairs):
            if any(sm != dm for (_, sm), (_, dm) in zip(src_pairs, pair_perm)):
                continue
            for orientation in (1, -1):
                constraints = [(s, d) for (s, _), (d, _) in zip(src_reals, real_perm)]
                for (s, _), (d, _) in zip(src_pairs, pair_perm):
                    target = d if orientation == 1 else conj(d)
                    constraints.append((s, target))
                    constraints.append((conj(s), conj(target)))
                if len(constraints) >= 3:
                    yield constraints[:3]
                    continue
                # Pad degenerate configurations with real auxiliary anchors.
                used_src = [s for s, _ in constraints]
                used_dst = [d for d, _ in constraints]
                aux_src = []
                base = 0.0
                for s, _ in constraints:
                    if s is not None and s.imag != 0:
                        base = s.real
                        break
                    if s is not None:
                        base = s.real + 1.0
                candidates_src = [complex(base, 0), complex(base + 1, 0), complex(base + 2, 0), None]
                for cand in candidates_src:
                    if cand not in used_src and len(aux_src) +  len(constraints) < 3:
                        aux_src.append(cand)
                for dst_choice in permutations([d for d in pads_dst if d not in used_dst],
                                               3 - len(constraints)):
                    padded = list(constraints)
                    for s, d in zip(aux_src, dst_choice):
                        padded.append((s, None if d is None else complex(d, 0)))
                    if len(padded) == 3:
                        yield padded


def _float_quartic(values) -> tuple:
    return tuple(float(v) for v in values)


def _find_witness(q: BinaryQuartic, target_coeffs: tuple, exact: bool) -> GroupElement | None:
    """Search for a real group element carrying q onto the target quartic by
    matching root configurations with Moebius maps; verified by applying the
    action and comparing all coefficients to 1e-9 relative accuracy."""
    if exact:
        dst_roots = _roots_with_multiplicity(BinaryQuartic.make(*(rat(c) for c in target_coeffs)))
    else:
        import numpy as np

        poly_coeffs = [float(c) for c in target_coeffs]
        if poly_coeffs[0] == 0:
            return None
        dst_roots = []
        for root in np.roots(poly_coeffs):
            root = complex(root)
            if abs(root.imag) < 1e-9:
                root = complex(root.real, 0.0)
            dst_roots.append((root, 1))
    src_roots = _roots_with_multiplicity(q)
    target_float = _float_quartic(target_coeffs)
    scale_ref = max(abs(c) for c in target_float)
    for anchors in _anchor_candidates(src_roots, dst_roots):
        # The substitution action pulls roots back, so the interpolating
        # matrix must send the canonical roots onto the input's roots.
        mat = _mobius_three_points([d for _, d in anchors], [s for s, _ in anchors])
        if mat is None:
            continue
        entries = (mat.alpha, mat.beta, mat.gamma, mat.delta)
        if max(abs(e.imag) for e in entries) > 1e-7 * max(abs(e) for e in entries):
            continue
        real_mat = Mat2(*(e.real for e in entries))
        witness = _from_gl2_float(real_mat)
        if witness is None:
            continue
        moved = _float_quartic(apply_quartic(witness, q.as_tuple()))
        pivot = max(range(5), key=lambda idx: abs(target_float[idx]))
        if abs(moved[pivot]) < 1e-13:
            continue
        ratio = moved[pivot] / target_float[pivot]
        if ratio == 0:
            continue
        adjusted = GroupElement.make(witness.a0, witness.a1, witness.a2,
                                     witness.a3 / Fraction(ratio), 0, witness.discrete)
        final = _float_quartic(apply_quartic(adjusted, q.as_tuple()))
        err = max(abs(a - b) for a, b in zip(final, target_float))
        if err <= 1e-9 * max(1.0, scale_ref):
            return adjusted
    return None


def canonical_form(q: BinaryQuartic) -> tuple[CanonicalForm, GroupElement]:
    """Canonical representative of the quartic's orbit and an approximate
    witness group element carrying it there.

    The form is determined by the web type; the parameter of forms I/II comes
    from matching the absolute invariant F, with the verified witness acting
    as the arbiter among F-equivalent candidates that are not real-equivalent.
    """
    if q.is_zero:
        raise ClassificationError("the zero form has no canonical form")
    web = classify_by_roots(q)
    form = _TYPE_TO_FORM[web]
    inv = invariants(q)
    if web is WebType.TOROIDAL:
        candidates = [(Fraction(2), True)]
    elif web is WebType.BISPHERICAL:
        candidates = [(Fraction(-2), True)]
    elif web is WebType.INVERSE_PROLATE_SPHEROIDAL:
        candidates = [(Fraction(-1), True)]
    elif web is WebType.INVERSE_OBLATE_SPHEROIDAL:
        candidates = [(Fraction(1), True)]
    elif web in (WebType.CARDIOID, WebType.TANGENT_SPHERE):
        candidates = [(None, True)]
    else:
        candidates = _mu_candidates(web, inv)
    for parameter, exact in candidates:
        target_coeffs = _canonical_coeffs(form, parameter if parameter is not None else 0)
        witness = _find_witness(q, target_coeffs, exact)
        if witness is not None:
            return CanonicalForm(form=form, parameter=parameter, exact=exact), witness
    raise ClassificationError(
        f"could not verify a canonicalization witness for {web.value} "
        f"(form {form}); candidates tried: {[str(c[0]) for c in candidates]}")
