"""Regenerate oracle_frozen.json from the brute-force oracle only.

Run once and commit the output; the test suite never rewrites it.
    python tests/data/freeze_oracle.py
"""
from __future__ import annotations

import json
from pathlib import Path

from ksrgroups.character import enumerate_characters_upto
from ksrgroups.oracle import brute_rgroup
from ksrgroups.rgroup import QParameters
from ksrgroups.root_datum import CartanType, build_root_datum, build_root_system
from ksrgroups.sweep import lattice_choices

CASES = (("A1", 4), ("A2", 4), ("A3", 4), ("B2", 4), ("C2", 4), ("G2", 4), ("B3", 3),
         ("C3", 3), ("D4", 4), ("A4", 3), ("F4", 2))
QS = {"q1": QParameters(), "q0": QParameters.all_false()}


def freeze() -> dict:
    out = {}
    for name, bound in CASES:
        t = CartanType.parse(name)
        rs = build_root_system(t)
        for lattice, spec in lattice_choices(t):
            datum = build_root_datum(rs, spec)
            for chi in enumerate_characters_upto(datum, bound):
                for qname, q in QS.items():
                    res = brute_rgroup(datum, chi, q)
                    out[f"{name}|{lattice}|{chi.label}|{qname}"] = {
                        "W_chi_order": res.w_chi.order,
                        "W_circ_order": res.w_circ.order,
                        "delta_prime_size": len(res.delta_prime),
                        "R_structure": list(res.structure.invariant_factors),
                    }
    return out


if __name__ == "__main__":
    path = Path(__file__).with_name("oracle_frozen.json")
    path.write_text(json.dumps(freeze(), indent=1, sort_keys=True) + "\n")
    print(f"wrote {path}")
