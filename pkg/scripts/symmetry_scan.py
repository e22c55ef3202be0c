#!/usr/bin/env python3
"""Scan the symmetry subspaces of the trace-free conformal Killing tensor
space for each canonical generator: kernel dimensions for h = 0 with the
normal-eigenvector restriction, and integer weights for h constant."""

from rotweb.ckt_core import (assemble_ckt, ckv_by_name, killing_obstruction,
                             symmetry_subspace, tsn_filter)


def main() -> int:
    for name in ("R3", "X3", "I3"):
        v = ckv_by_name(name)
        (h, basis), = symmetry_subspace(v, "h_zero")
        filtered = tsn_filter(v, basis)
        killing = sum(killing_obstruction(assemble_ckt(c)).is_zero for c in basis)
        print(f"{name}: h = 0 kernel dim {len(basis)}, "
              f"eigenvector/TSN subspace dim {len(filtered.subspace)} "
              f"(TSN variety linear: {filtered.variety_is_linear}), "
              f"{killing}/{len(basis)} members Killing-representable")
    d = ckv_by_name("D")
    spaces = symmetry_subspace(d, "h_constant")
    weights = ", ".join(f"h = {h} (dim {len(basis)})" for h, basis in spaces)
    print(f"D: constant conformal weights: {weights}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
