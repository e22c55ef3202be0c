#!/usr/bin/env python3
"""End-to-end walkthrough for the benchmark potential

    V = -4 c^2 / ((x^2 + y^2 + z^2 - c^2)^2 + 4 c^2 z^2),   E = 0:

solve the fixed-energy compatibility condition over the rotational family,
then classify the web of the compatible tensors via the binary quartic."""

import argparse

from rotweb.expr import eval_rational
from rotweb.quartic_class import (BinaryQuartic, covariant_l, form_is_zero, form_sign,
                                  hessian, invariants)
from rotweb.separability import Potential, classify_potential


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--c", default="1", help="shape constant c > 0 (rational)")
    args = parser.parse_args()
    c = eval_rational(args.c)
    c2 = c * c
    expression = f"(-4*{c2})/((x^2+y^2+z^2-{c2})^2 + 4*{c2}*z^2)"
    print(f"potential: {expression}, energy E = 0")

    outcome = classify_potential(Potential.from_expression(expression, 0))
    print(f"\ncompatible family dimension: {outcome.solution.dimension}")
    for member in outcome.solution.basis:
        print(f"  basis member (M33, L3, H, C33, D3, A33) = {member}")
    print(f"C33 free: {outcome.solution.c33_free()}")

    member = outcome.member
    print(f"\nnormalized characteristic member: {member}")
    quartic = BinaryQuartic.from_rot_params(member)
    inv = invariants(quartic)
    print(f"invariants: I = {inv.i}, J = {inv.j}, Delta = 4I^3 - J^2 = {inv.delta}")
    print(f"covariant L identically zero: {form_is_zero(covariant_l(quartic))}")
    print(f"Hessian: {tuple(str(x) for x in hessian(quartic))} "
          f"({form_sign(hessian(quartic)).value})")
    print(f"\nweb type: {outcome.web_type.value}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
