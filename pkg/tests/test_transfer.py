from __future__ import annotations

import copy
import time

import pytest

from ksrgroups.catalogue import (RESTRICTIONS, catalogue_names, get_transfer, identity_doc,
                                 transfer_doc)
from ksrgroups.character import enumerate_characters_upto, make_character
from ksrgroups.root_datum import CartanType, FiniteAbelianGroup, InvalidInput
from ksrgroups.transfer import (TransferError, load_transfer_datum, quotient_table_check,
                                transfer_character, verify_transfer_catalogue_entry,
                                verify_transfer_sequence)

Z = FiniteAbelianGroup


def test_sl1d_datum_is_valid():
    td = get_transfer("sl1D-in-sl2")
    assert td.source.free_rank == 0 and td.target.root_system.rank == 1


def test_identity_datum_transfers_identically():
    td = get_transfer("identity-B2")
    for chi in enumerate_characters_upto(td.source, 4):
        assert transfer_character(td, chi).x == chi.x


def test_q_mismatch_rejected():
    doc = copy.deepcopy(transfer_doc("identity-B2"))
    doc["q_source"] = {"long": False}
    with pytest.raises(TransferError, match="q-parameters"):
        load_transfer_datum(doc)


def test_bad_embedding_rejected():
    doc = copy.deepcopy(identity_doc("A2"))
    doc["embedding"] = [[2, 0], [0, 1]]
    with pytest.raises(TransferError):
        load_transfer_datum(doc)
    doc = copy.deepcopy(identity_doc("A2"))
    doc["root_map"] = [[1, 1]]
    with pytest.raises(TransferError, match="misses simple root 2"):
        load_transfer_datum(doc)
    doc["weyl_map"] = [[1], [1]]
    doc["root_map"] = [[1, 1], [2, 2]]
    with pytest.raises(TransferError):
        load_transfer_datum(doc)


def test_unknown_catalogue_name():
    with pytest.raises(InvalidInput):
        get_transfer("nope")


def test_torsion_character_maps_to_quadratic_point():
    td = get_transfer("sl1D-in-sl2")
    assert transfer_character(td, make_character(td.source, None, 1)).label == "1/2"
    assert transfer_character(td, make_character(td.source)).label == "0"


def test_block_embedding_repeats_coordinates():
    td = get_transfer("gl2D-in-gl4")
    chi = make_character(td.source, "1/3,1/2")
    assert transfer_character(td, chi).label == "1/3,1/3,1/2,1/2"


def test_sl1d_sequence():
    td = get_transfer("sl1D-in-sl2")
    rep = verify_transfer_sequence(td, make_character(td.source, None, 1))
    assert rep.passed and rep.quotient == Z.cyclic(2)
    assert rep.sequence_line == "1 → 1 → Z/2 → Z/2 → 1"
    assert all(ok for _, ok in rep.inclusions)


def test_identity_quotients_trivial():
    td = get_transfer("identity-A3")
    for chi in enumerate_characters_upto(td.source, 4):
        rep = verify_transfer_sequence(td, chi)
        assert rep.passed and rep.quotient.is_trivial


def test_anisotropic_in_c2():
    cv = verify_transfer_catalogue_entry(get_transfer("aniso-in-sp4"))
    assert cv.passed
    assert {r.quotient for r in cv.reports} <= {Z.trivial(), Z.cyclic(2)}
    assert Z.cyclic(2) in {r.quotient for r in cv.reports}


def test_quotient_table_examples():
    assert quotient_table_check(CartanType.parse("A3"), Z.cyclic(4))
    assert not quotient_table_check(CartanType.parse("G2"), Z.cyclic(2))
    for name in ("A1", "B3", "D4", "E6", "E8"):
        assert quotient_table_check(CartanType.parse(name), Z.trivial())


def test_catalogue_and_restrictions_listed():
    names = catalogue_names()
    assert {"sl1D-in-sl2", "gl2D-in-gl4", "aniso-in-sp4", "identity-E6"} <= set(names)
    assert set(RESTRICTIONS) == {"gl2-sl2", "gl3-sl3", "gl4-sl4"}


@pytest.mark.parametrize("name", ["sl1D-in-sl2", "gl2D-in-gl4", "identity-G2", "identity-C3"])
def test_catalogue_entries_pass(name):
    t0 = time.perf_counter()
    cv = verify_transfer_catalogue_entry(get_transfer(name), 4)
    assert cv.passed
    assert time.perf_counter() - t0 < 60
