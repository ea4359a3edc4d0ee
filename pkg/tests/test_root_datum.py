from __future__ import annotations

from fractions import Fraction as F

import pytest

from ksrgroups.root_datum import (CartanType, FiniteAbelianGroup, InvalidInput, LatticeSpec,
                                  RootDatum, build_root_datum, build_root_system, dual_lattice,
                                  fundamental_group, gl_datum, intermediate_lattices,
                                  product_root_system, sl_datum)

ROOT_COUNTS = {"A1": 2, "A2": 6, "A3": 12, "A4": 20, "B2": 8, "B3": 18, "B4": 32, "C3": 18,
               "C4": 32, "D4": 24, "D5": 40, "D6": 60, "E6": 72, "E7": 126, "E8": 240,
               "F4": 48, "G2": 12}


@pytest.mark.parametrize("name,count", sorted(ROOT_COUNTS.items()))
def test_root_counts_match_closed_forms(name, count):
    rs = build_root_system(name)
    assert len(rs.roots) == count == CartanType.parse(name).root_count
    assert len(rs.positive_roots) == count // 2


def test_a2_cartan_matrix_and_roots():
    rs = build_root_system("A2")
    assert rs.cartan_matrix == ((2, -1), (-1, 2))
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}


def test_a1_roots():
    assert set(build_root_system("A1").roots) == {(1,), (-1,)}


def test_roots_closed_under_simple_reflections():
    for name in ("B3", "G2", "F4"):
        rs = build_root_system(name)
        for a in rs.roots:
            for i in range(rs.rank):
                assert rs.simple_reflect(i, a) in rs.root_set


@pytest.mark.parametrize("name,group", [("A3", "Z/4"), ("D4", "Z/2 x Z/2"), ("E8", "1"),
                                        ("E6", "Z/3"), ("E7", "Z/2"), ("D5", "Z/4"),
                                        ("B3", "Z/2"), ("G2", "1")])
def test_fundamental_group(name, group):
    assert fundamental_group(build_root_system(name)) == FiniteAbelianGroup.parse(group)


def test_cochar_lattice_adjoint_is_coweights():
    d = build_root_datum(build_root_system("A1"), LatticeSpec("root"))
    # alpha^vee / 2 generates P^vee
    assert d.cochar_lattice == ((F(1, 2),),)


def test_cochar_lattice_simply_connected_is_coroots():
    d = build_root_datum(build_root_system("A1"), LatticeSpec("weight"))
    assert d.cochar_lattice == ((F(1),),)
    assert d.omega_group == FiniteAbelianGroup.cyclic(2)


def test_central_torus_raises_rank():
    d = build_root_datum(build_root_system("A1"), LatticeSpec("weight", (), 1))
    assert d.dim == 2 and len(d.cochar_lattice) == 2


def test_dual_lattice_examples():
    assert dual_lattice([[2]]) == [[F(1, 2)]]
    assert dual_lattice([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]


def test_dual_lattice_involution_example():
    gens = [[2, 1, 0], [0, 3, 1], [1, 0, 5]]
    assert dual_lattice(dual_lattice(gens)) == dual_lattice(dual_lattice(dual_lattice(
        dual_lattice(gens))))
    from ksrgroups.linalg import hermite_rows
    assert dual_lattice(dual_lattice(gens)) == hermite_rows(gens)


def test_dual_lattice_rejects_degenerate():
    with pytest.raises(InvalidInput):
        dual_lattice([[1, 2], [2, 4]])


def test_intermediate_lattices():
    assert len(intermediate_lattices(build_root_system("D4"))) == 3
    assert len(intermediate_lattices(build_root_system("A3"))) == 1
    assert intermediate_lattices(build_root_system("A2")) == []


def test_gl_and_sl_models():
    g = gl_datum(2)
    assert g.dim == 2 and g.roots_x == ((1, -1),) and g.coroots_x == ((1, -1),)
    s = sl_datum(3)
    assert s.dim == 2 and s.omega_group == FiniteAbelianGroup.cyclic(3)
    assert gl_datum(3).omega_group.is_trivial


def test_explicit_datum_validates_pairing():
    rs = build_root_system("A1")
    with pytest.raises(InvalidInput):
        RootDatum.explicit(rs, [[1, 0]], [[1, 0]])


def test_product_root_system():
    rs = product_root_system(["A1", "A2"])
    assert rs.rank == 3 and len(rs.roots) == 8 and not rs.is_irreducible


def test_coordinate_round_trip():
    d = build_root_datum(build_root_system("D4"), LatticeSpec("root"))
    v = (F(1, 3), F(-2, 5), F(0), F(7, 2))
    assert d.from_x(d.to_x(v)) == v
    assert d.cochar_from_x(d.cochar_to_x(v)) == v


@pytest.mark.parametrize("text", ["Q2", "A0", "D2", "E9", "G3", "F3", "", "B"])
def test_cartan_type_rejects_invalid(text):
    with pytest.raises(InvalidInput):
        CartanType.parse(text)


def test_finite_abelian_group_normal_forms():
    g = FiniteAbelianGroup.from_relations([[2, 0], [0, 3]])
    assert g == FiniteAbelianGroup.cyclic(6)
    assert FiniteAbelianGroup.from_element_orders([1, 2, 2, 2]) == FiniteAbelianGroup((2, 2))
    assert FiniteAbelianGroup.from_element_orders([1, 4, 2, 4]) == FiniteAbelianGroup.cyclic(4)
    assert str(FiniteAbelianGroup((2, 4))) == "Z/2 x Z/4"
    assert str(FiniteAbelianGroup.trivial()) == "1"
