from __future__ import annotations

import json

import pytest

from ksrgroups.character import enumerate_characters_upto, make_character, trivial_character
from ksrgroups.oracle import (brute_rgroup, brute_stabilizer, compare, semidirect_check)
from ksrgroups.rgroup import QParameters, compute_rgroup
from ksrgroups.root_datum import (CartanType, FiniteAbelianGroup, InvalidInput,
                                  build_root_datum, build_root_system)
from ksrgroups.sweep import lattice_choices
from ksrgroups.weyl import stabilizer_mod_lattice

QS = {"q1": QParameters(), "q0": QParameters.all_false()}


def _datum(name, lattice="sc"):
    t = CartanType.parse(name)
    return build_root_datum(build_root_system(t), dict(lattice_choices(t))[lattice])


def test_brute_stabilizer_examples():
    a1 = _datum("A1")
    assert brute_stabilizer(a1, ["1/2"]).order == 2
    assert brute_stabilizer(_datum("B3"), [0, 0, 0]).order == 48


def test_brute_stabilizer_d4_half_point_matches_alcove():
    d4 = _datum("D4")
    x = ["0", "1/2", "0", "0"]
    brute = brute_stabilizer(d4, x)
    assert brute.order == stabilizer_mod_lattice(d4, x).order == 64
    assert compute_rgroup(d4, make_character(d4, ",".join(x))).structure == \
        FiniteAbelianGroup((2, 2))
    fast_gens = stabilizer_mod_lattice(d4, x).generators
    assert {g.matrix for g in fast_gens} <= brute.matrices


def test_brute_rgroup_examples():
    a2 = _datum("A2")
    assert brute_rgroup(a2, make_character(a2, "1/3,1/3")).structure == \
        FiniteAbelianGroup.cyclic(3)
    assert brute_rgroup(a2, trivial_character(a2)).structure.is_trivial


def test_cap_enforced():
    e6 = _datum("E6")
    with pytest.raises(InvalidInput):
        compare(e6, trivial_character(e6), cap=1000)


def _frozen_cases(frozen):
    for key, expected in sorted(frozen.items()):
        name, lattice, label, qname = key.split("|")
        yield key, name, lattice, label, QS[qname], expected


def _summary(res):
    return {"W_chi_order": res.w_chi.order, "W_circ_order": res.w_circ.order,
            "delta_prime_size": len(res.delta_prime),
            "R_structure": list(res.structure.invariant_factors)}


def test_fast_path_reproduces_frozen_oracle(frozen_oracle):
    assert len(frozen_oracle) == 532
    for key, name, lattice, label, q, expected in _frozen_cases(frozen_oracle):
        datum = _datum(name, lattice)
        res = compute_rgroup(datum, make_character(datum, label.replace("-", "")), q)
        assert _summary(res) == expected, key


def test_brute_path_reproduces_frozen_oracle(frozen_oracle):
    for key, name, lattice, label, q, expected in _frozen_cases(frozen_oracle):
        if name in ("F4", "D4", "A4"):
            continue
        datum = _datum(name, lattice)
        assert _summary(brute_rgroup(datum, make_character(datum, label), q)) == expected, key


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"])
def test_fast_equals_oracle_up_to_rank_three(name):
    t = CartanType.parse(name)
    rs = build_root_system(t)
    for lattice, spec in lattice_choices(t):
        datum = build_root_datum(rs, spec)
        for chi in enumerate_characters_upto(datum, 6):
            for qname, q in QS.items():
                rep = compare(datum, chi, q, f"{name}|{lattice}|{chi.label}|{qname}")
                assert rep.agree, rep.case_id
                assert semidirect_check(rep.fast_result).passed, rep.case_id


def test_report_json_is_deterministic():
    a3 = _datum("A3")
    chi = make_character(a3, "1/2,0,1/2")
    first = compare(a3, chi).to_json()
    assert first == compare(a3, chi).to_json()
    doc = json.loads(first)
    assert doc["agree"] and doc["R_structure"] == [2]
