from __future__ import annotations

from fractions import Fraction as F

import numpy as np
import pytest

from ksrgroups.root_datum import LatticeSpec, build_root_datum, build_root_system
from ksrgroups.weyl import (WeylOrderExceeded, closure, element_order, enumerate_weyl,
                            from_word, identity_element, inversion_count, mat_identity,
                            mat_mul, multiply, inverse, parse_word, permutes_roots,
                            positivity_check, reduced_word, simple_reflection,
                            stabilizer_mod_lattice, subsystem_info, weyl_table)


def test_a1_simple_reflection_matrix():
    assert simple_reflection(build_root_system("A1"), 1).matrix == ((-1,),)


def test_a2_simple_reflection_action():
    s1 = simple_reflection(build_root_system("A2"), 1)
    assert s1.act((1, 0)) == (-1, 0)
    assert s1.act((0, 1)) == (1, 1)


@pytest.mark.parametrize("name", ["A3", "B3", "C4", "D4", "G2", "F4", "E6"])
def test_simple_reflections_are_involutions(name):
    rs = build_root_system(name)
    for i in range(1, rs.rank + 1):
        m = simple_reflection(rs, i).matrix
        assert mat_mul(m, m) == mat_identity(rs.rank)


@pytest.mark.parametrize("name,order", [("A2", 6), ("B3", 48), ("D4", 192), ("G2", 12),
                                        ("F4", 1152), ("E6", 51840)])
def test_weyl_orders(name, order):
    rs = build_root_system(name)
    table = weyl_table(rs)
    assert len(table.mats) == order == rs.weyl_order
    assert len({tuple(k) for k in table.keys.tolist()}) == order


def test_enumerate_small_and_cap():
    assert len(enumerate_weyl(build_root_system("A2"))) == 6
    with pytest.raises(WeylOrderExceeded):
        weyl_table(build_root_system("E7"), cap=10 ** 5)


def test_longest_element_lengths():
    for name, length in (("A3", 6), ("F4", 24), ("E6", 36)):
        rs = build_root_system(name)
        table = weyl_table(rs)
        assert max(len(table.word(k)) for k in range(len(table.mats))) == length


def test_reduced_words_round_trip():
    rs = build_root_system("B3")
    table = weyl_table(rs)
    for k in range(0, len(table.mats), 5):
        m = tuple(map(tuple, table.mats[k].tolist()))
        w = reduced_word(rs, m)
        assert from_word(rs, w).matrix == m
        assert len(w) == inversion_count(rs, from_word(rs, w))


def test_positivity_check_examples():
    rs = build_root_system("A2")
    assert positivity_check(identity_element(rs), rs.positive_roots)
    assert not positivity_check(simple_reflection(rs, 1), [(1, 0)])
    c = parse_word(rs, "s1 s2")
    assert positivity_check(c, [(1, 0)]) and c.act((1, 0)) == (0, 1)


@pytest.mark.parametrize("name", ["C3", "G2", "D4"])
def test_every_element_permutes_roots(name):
    rs = build_root_system(name)
    assert all(permutes_roots(rs, w) for w in enumerate_weyl(rs))


def test_group_operations():
    rs = build_root_system("G2")
    a, b = from_word(rs, [1, 2]), from_word(rs, [2])
    assert multiply(rs, a, inverse(rs, a)) == identity_element(rs)
    assert element_order(a.matrix) == 6
    assert multiply(rs, multiply(rs, a, b), a) == multiply(rs, a, multiply(rs, b, a))
    assert len(closure([a.matrix], rs.rank)) == 6


def test_stabilizer_examples():
    a1 = build_root_datum(build_root_system("A1"), LatticeSpec("weight"))
    assert stabilizer_mod_lattice(a1, ["1/2"]).order == 2
    a2 = build_root_datum(build_root_system("A2"), LatticeSpec("weight"))
    assert stabilizer_mod_lattice(a2, ["1/3", "1/3"]).order == 3
    assert stabilizer_mod_lattice(a2, [0, 0]).order == 6
    assert stabilizer_mod_lattice(a2, [0, 0], strategy="brute").order == 6


def test_alcove_matches_brute_on_d4_grid():
    rs = build_root_system("D4")
    for spec in (LatticeSpec("weight"), LatticeSpec("root")):
        datum = build_root_datum(rs, spec)
        for k in np.ndindex(*(4,) * 4):
            x = [F(v, 4) for v in k]
            fast = stabilizer_mod_lattice(datum, x, coords="x")
            brute = stabilizer_mod_lattice(datum, x, strategy="brute", coords="x")
            assert fast.order == brute.order, x


def test_subsystem_info():
    rs = build_root_system("A2")
    assert subsystem_info(rs, []).weyl_order == 1
    assert subsystem_info(rs, rs.positive_roots).weyl_order == 6
    assert subsystem_info(rs, [(1, 0)]).weyl_order == 2
    b2 = build_root_system("B2")
    short = [a for a in b2.positive_roots if b2.norm(a) == min(map(b2.norm, b2.roots))]
    info = subsystem_info(b2, short)
    assert info.weyl_order == 4 and info.label == "A1 x A1"
