from __future__ import annotations

import importlib
import subprocess
import sys

import numpy as np
import pytest

from ksrgroups import _kernels_py, kernels
from ksrgroups.root_datum import LatticeSpec, build_root_datum, build_root_system
from ksrgroups.weyl import weyl_table

cy = pytest.importorskip("ksrgroups._kernels")


def _gens(name, lattice="weight"):
    datum = build_root_datum(build_root_system(name), LatticeSpec(lattice))
    return np.array(datum.simple_reflections_x, dtype=np.int64)


def test_backend_is_compiled():
    assert kernels.BACKEND == "cython"


def test_pure_fallback_selected_by_env():
    code = "import ksrgroups.kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={"KSRGROUPS_PURE": "1", "PATH": ""}, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("name,lattice,d", [("A2", "weight", 6), ("B3", "root", 4),
                                            ("D4", "weight", 5), ("G2", "weight", 7)])
def test_orbit_labels_agree(name, lattice, d):
    g = _gens(name, lattice)
    a, b = cy.orbit_labels(g, d), _kernels_py.orbit_labels(g, d)
    assert np.array_equal(a, b)
    assert np.all(a <= np.arange(len(a)))


def test_masks_agree():
    rs = build_root_system("F4")
    mats = weyl_table(rs).mats.astype(np.int64)
    for k in ([1, 2, 3, 0], [0, 0, 0, 0], [3, 1, 4, 1]):
        k = np.array(k, dtype=np.int64)
        assert np.array_equal(cy.stabilizer_mask(mats, k, 6),
                              _kernels_py.stabilizer_mask(mats, k, 6))
    roots = np.array(rs.positive_roots[:6], dtype=np.int64).T.copy()
    assert np.array_equal(cy.positive_mask(mats, roots), _kernels_py.positive_mask(mats, roots))
    assert cy.positive_mask(mats, roots).sum() >= 1


def test_grid_points_lex_order():
    pts = kernels.grid_points(2, 3)
    assert pts.tolist()[:4] == [[0, 0], [0, 1], [0, 2], [1, 0]]
