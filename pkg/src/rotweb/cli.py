"""Command-line interface: classification, table reproduction, compatibility
solving, and symmetry scans, with deterministic JSON-first output.

Exit codes: 0 success, 1 internal classification inconsistency (reported as
findings), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__, ckt_core
from .ckt_core import CktError, ckv_by_name, killing_obstruction, symmetry_subspace, tsn_filter
from .exactmath import ExactMathError, rat, rat_str
from .expr import ExprError, eval_rational
from .group_action import GroupElement, apply_quartic
from .quartic_class import (BinaryQuartic, ClassificationError, canonical_form,
                            classify_by_invariants, classify_by_roots, invariants,
                            root_structure)
from .rotational import CatalogEntry, RotParams, catalog
from .separability import Potential, classify_potential

SCHEMA_VERSION = 1


class InputError(ValueError):
    """Unusable command-line input (exit code 2)."""


def _report(command: str, inputs: dict, results: dict, findings: list, started: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "results": results,
        "findings": findings,
        "timing_ms": round((time.time() - started) * 1000, 3),
    }


def _parse_rationals(text: str, count: int, what: str) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise InputError(f"{what} needs {count} comma-separated rationals, got {len(parts)}")
    try:
        return tuple(rat(p) for p in parts)
    except ExactMathError as exc:
        raise InputError(str(exc)) from exc


def _float_probe_finding(quartic: BinaryQuartic, seed: int) -> list:
    """Companion-matrix cross-check of the exact real-root count."""
    import numpy as np

    structure = root_structure(quartic)
    poly = quartic.dehomogenize()
    finite_real_exact = sum(m for m in structure.real_multiplicities) - structure.infinity_multiplicity
    if poly.degree < 1:
        return []
    sf_coeffs = [float(c) for c in reversed(poly.coeffs)]
    roots = np.roots(sf_coeffs)
    finite_real_float = int(sum(1 for r in roots if abs(complex(r).imag) < 1e-9))
    findings = []
    # Exact count weights multiplicity; the float count sees every copy too.
    if finite_real_float != finite_real_exact:
        findings.append({
            "kind": "float_probe_mismatch",
            "detail": f"companion matrix sees {finite_real_float} real roots, "
                      f"exact arithmetic sees {finite_real_exact}",
        })
    return findings


def cmd_classify(args) -> tuple[dict, int]:
    started = time.time()
    if (args.params is None) == (args.quartic is None):
        raise InputError("classify needs exactly one of --params or --quartic")
    if args.params is not None:
        values = _parse_rationals(args.params, 6, "--params")
        params = RotParams.make(*values)
        quartic = BinaryQuartic.from_rot_params(params)
        inputs = {"params": params.to_json_dict()}
    else:
        values = _parse_rationals(args.quartic, 5, "--quartic")
        quartic = BinaryQuartic.make(*values)
        inputs = {"quartic": quartic.to_json()}
    if quartic.is_zero:
        raise InputError("tensor is equivalent to C33 * R3 . R3 + f * g; no web defined")

    structure = root_structure(quartic)
    by_roots = classify_by_roots(quartic)
    findings: list = []
    try:
        by_inv, audit = classify_by_invariants(quartic)
        inv_value = by_inv.value
    except ClassificationError as exc:
        by_inv, audit, inv_value = None, exc.audit, None
        findings.append({"kind": "invariant_classifier_no_match", "detail": str(exc)})
    if by_inv is not None and by_inv is not by_roots:
        findings.append({
            "kind": "classifier_disagreement",
            "detail": f"roots say {by_roots.value}, invariants say {by_inv.value}",
            "audit": audit,
        })
    canonical, witness = canonical_form(quartic)
    if args.float_probe:
        findings.extend(_float_probe_finding(quartic, args.seed))
    results = {
        "quartic": quartic.to_json(),
        "root_structure": structure.to_json_dict(),
        "invariants": invariants(quartic).to_json_dict(),
        "type": by_roots.value,
        "type_by_invariants": inv_value,
        "audit": audit,
        "canonical": canonical.to_json_dict(),
        "witness": witness.to_json_dict(),
    }
    code = 1 if findings else 0
    return _report("classify", inputs, results, findings, started), code


_EQUIVALENCE_WITNESSES = {
    # Explicit exact witnesses for the catalog equivalences; built per scale.
    "prolate_spheroidal": lambda a, k: GroupElement.make(0, 0, a * a, 1, 0, True),
    "oblate_spheroidal": lambda a, k: GroupElement.make(0, 0, a * a, -1, 0, True),
    "parabolical": lambda a, k: GroupElement.make(0, 0, 1, 1, 0, True),
    "cylindrical": lambda a, k: GroupElement.make(0, 0, 1, 1, 1, True),
    "spherical": lambda a, k: GroupElement.make(1, a, -2 * a, -1, -1, False),
}


def _check_equivalence(entry: CatalogEntry, partners: dict, a: Fraction, k: Fraction) -> dict:
    """Verify a catalog equivalence: type-level always; exact quartic
    proportionality through the explicit witness where one is defined."""
    partner = partners[entry.equivalent_to]
    result = {
        "row": entry.name,
        "partner": entry.equivalent_to,
        "transformation": entry.transformation,
        "witness": None,
        "ok": True,
        "detail": "type-level equivalence",
    }
    witness_builder = _EQUIVALENCE_WITNESSES.get(entry.name)
    if witness_builder is None:
        return result
    witness = witness_builder(a, k)
    moved = apply_quartic(witness, entry.params.quartic_tuple())
    target = partner.params.quartic_tuple()
    pairs = [(m, t) for m, t in zip(moved, target)]
    nonzero = [(m, t) for m, t in pairs if m != 0 or t != 0]
    proportional = bool(nonzero) and all(m * nonzero[0][1] == t * nonzero[0][0] for m, t in nonzero)
    result["witness"] = witness.to_json_dict()
    result["ok"] = proportional
    result["detail"] = ("witness maps quartic onto partner row exactly (up to tensor scale)"
                        if proportional else "witness failed to reach the partner quartic")
    return result


def cmd_tables(args) -> tuple[dict, int]:
    started = time.time()
    scales = {"a": Fraction(1), "k": Fraction(1, 2)}
    for item in args.scale or []:
        if "=" not in item:
            raise InputError(f"--scale expects name=value, got {item!r}")
        name, _, value = item.partition("=")
        name = name.strip()
        if name not in scales:
            raise InputError(f"unknown scale constant {name!r}; expected a or k")
        try:
            scales[name] = eval_rational(value.strip())
        except ExprError as exc:
            raise InputError(str(exc)) from exc
    try:
        entries = catalog(scales["a"], scales["k"])
    except CktError as exc:
        raise InputError(str(exc)) from exc
    partners = {e.name: e for e in entries}
    findings: list = []
    rows = []
    for entry in entries:
        quartic = BinaryQuartic.from_rot_params(entry.params)
        by_roots = classify_by_roots(quartic)
        try:
            by_inv, _ = classify_by_invariants(quartic)
            inv_value = by_inv.value
        except ClassificationError as exc:
            inv_value = None
            findings.append({"kind": "invariant_classifier_no_match",
                             "row": entry.name, "detail": str(exc)})
        row = {
            "name": entry.name,
            "params": entry.params.to_json_dict(),
            "expected_type": entry.expected_type,
            "type": by_roots.value,
            "type_by_invariants": inv_value,
            "ok": by_roots.value == entry.expected_type == (inv_value or by_roots.value),
        }
        if not row["ok"]:
            findings.append({"kind": "catalog_mismatch", "row": entry.name,
                             "detail": f"expected {entry.expected_type}, roots {by_roots.value}, "
                                       f"invariants {inv_value}"})
        if entry.equivalent_to:
            check = _check_equivalence(entry, partners, scales["a"], scales["k"])
            row["equivalence"] = check
            if not check["ok"]:
                findings.append({"kind": "equivalence_witness_failed", "row": entry.name,
                                 "detail": check["detail"]})
        rows.append(row)
    results = {
        "scales": {name: rat_str(value) for name, value in scales.items()},
        "rows": rows,
        "passed": sum(1 for r in rows if r["ok"]),
        "total": len(rows),
    }
    code = 1 if findings else 0
    return _report("tables", {"scale": [f"{n}={rat_str(v)}" for n, v in scales.items()]},
                   results, findings, started), code


def cmd_compat(args) -> tuple[dict, int]:
    started = time.time()
    try:
        energy = rat(args.energy)
    except ExactMathError as exc:
        raise InputError(str(exc)) from exc
    try:
        pot = Potential.from_expression(args.potential, energy)
    except ExprError as exc:
        raise InputError(f"cannot parse potential: {exc}") from exc
    outcome = classify_potential(pot)
    findings = []
    if outcome.reason and outcome.web_type is None and outcome.solution.dimension not in (0, 6):
        findings.append({"kind": "compat_degenerate", "detail": outcome.reason})
    results = outcome.to_json_dict()
    return _report("compat", {"potential": args.potential, "energy": rat_str(energy)},
                   results, findings, started), 0


_GENERATORS = ("X3", "D", "I3", "R3")


def cmd_symmetry(args) -> tuple[dict, int]:
    started = time.time()
    if args.generator not in _GENERATORS:
        raise InputError(f"unknown generator {args.generator!r}; expected one of {_GENERATORS}")
    mode = "h_zero" if args.h == "0" else "h_constant"
    v = ckv_by_name(args.generator)
    spaces = symmetry_subspace(v, mode)
    findings: list = []
    results: dict = {"generator": args.generator, "mode": mode, "eigenvalues": []}
    for h, basis in spaces:
        block = {
            "h": rat_str(h),
            "dimension": len(basis),
            "basis": [c.to_json_dict() for c in basis],
        }
        if mode == "h_zero":
            filtered = tsn_filter(v, basis)
            block["tsn_filtered_dimension"] = len(filtered.subspace)
            block["tsn_variety_is_linear"] = filtered.variety_is_linear
            if not filtered.variety_is_linear:
                findings.append({
                    "kind": "tsn_variety_nonlinear",
                    "detail": "TSN holds on directions outside the eigenvector subspace; "
                              "the TSN solution set inside the kernel is not a linear space",
                    "directions": list(filtered.outside_tsn_directions),
                })
            block["killing_obstruction_zero"] = [
                killing_obstruction(ckt_core.assemble_ckt(c)).is_zero for c in basis
            ]
        results["eigenvalues"].append(block)
    # Informational findings never signal failure here; surprises are data.
    return _report("symmetry", {"generator": args.generator, "h": args.h},
                   results, findings, started), 0


def _render_human(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    results = report["results"]
    if report["command"] == "classify":
        lines.append(f"type: {results['type']} (invariants: {results['type_by_invariants']})")
        lines.append(f"invariants: {results['invariants']}")
        canonical = results["canonical"]
        lines.append(f"canonical form: {canonical['form']} parameter {canonical['parameter']}")
    elif report["command"] == "tables":
        for row in results["rows"]:
            status = "ok" if row["ok"] else "MISMATCH"
            lines.append(f"{row['name']:30s} {row['type']:28s} {status}")
        lines.append(f"passed {results['passed']}/{results['total']}")
    elif report["command"] == "compat":
        lines.append(f"web type: {results['web_type']}")
        lines.append(f"solution dimension: {results['solution']['dimension']}")
        if results["reason"]:
            lines.append(f"note: {results['reason']}")
    elif report["command"] == "symmetry":
        for block in results["eigenvalues"]:
            extra = ""
            if "tsn_filtered_dimension" in block:
                extra = f", TSN-filtered {block['tsn_filtered_dimension']}"
            lines.append(f"h = {block['h']}: dimension {block['dimension']}{extra}")
    if report["findings"]:
        lines.append(f"findings: {len(report['findings'])}")
        for finding in report["findings"]:
            lines.append(f"  - {finding['kind']}: {finding.get('detail', '')}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit the JSON report (default output format)")
    common.add_argument("--human", action="store_true", help="render a plain-text summary")
    common.add_argument("--float-probe", action="store_true",
                        help="cross-check exact results against floating-point oracles")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized probes")

    parser = argparse.ArgumentParser(
        prog="rotweb",
        description="Exact classification of rotationally symmetric R-separable webs.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify one tensor or quartic")
    p.add_argument("--params", help="six rationals M33,L3,H,C33,D3,A33")
    p.add_argument("--quartic", help="five rationals M33,L3,H,D3,A33")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tables", parents=[common],
                       help="reproduce the catalog classification tables")
    p.add_argument("--scale", action="append",
                   help="override a scale constant, e.g. --scale a=2 --scale k=1/3")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("compat", parents=[common],
                       help="solve the fixed-energy compatibility condition")
    p.add_argument("--potential", required=True,
                   help="expression in x, y, z (rational constants, + - * / ^)")
    p.add_argument("--energy", default="0", help="fixed energy E (rational)")
    p.set_defaults(func=cmd_compat)

    p = sub.add_parser("symmetry", parents=[common], help="scan a symmetry subspace")
    p.add_argument("generator", help="one of X3, D, I3, R3")
    p.add_argument("--h", choices=["0", "const"], default="0",
                   help="conformal weight mode: h = 0 or h constant")
    p.set_defaults(func=cmd_symmetry)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ExactMathError, ExprError, CktError, ClassificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.human:
        print(_render_human(report))
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
