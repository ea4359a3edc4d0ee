"""Knapp-Stein R-groups of weakly unramified characters over arbitrary root data."""
from __future__ import annotations

__version__ = "0.1.0"

from .character import (KottwitzLattice, WUCharacter, enumerate_characters,
                        enumerate_characters_upto, evaluate, make_character, parse_character,
                        restrict, restriction_data, trivial_character, weyl_act)
from .kernels import BACKEND
from .oracle import brute_rgroup, compare
from .rgroup import (NonAbelianRGroupError, QParameters, RGroupResult, compute_rgroup,
                     keys_check, verify_restriction_sequence)
from .root_datum import (CartanType, FiniteAbelianGroup, InvalidInput, LatticeSpec, RootDatum,
                         RootSystem, build_root_datum, build_root_system, gl_datum, sl_datum)
from .transfer import (TransferDatum, build_transfer_datum, load_transfer_datum,
                       verify_transfer_sequence)
from .weyl import WeylElement, WeylOrderExceeded, stabilizer_mod_lattice

__all__ = [
    "BACKEND", "CartanType", "FiniteAbelianGroup", "InvalidInput", "KottwitzLattice",
    "LatticeSpec", "NonAbelianRGroupError", "QParameters", "RGroupResult", "RootDatum",
    "RootSystem", "TransferDatum", "WUCharacter", "WeylElement", "WeylOrderExceeded",
    "brute_rgroup", "build_root_datum", "build_root_system", "build_transfer_datum", "compare",
    "compute_rgroup", "enumerate_characters", "enumerate_characters_upto", "evaluate",
    "gl_datum", "keys_check", "load_transfer_datum", "make_character", "parse_character",
    "restrict", "restriction_data", "sl_datum", "stabilizer_mod_lattice", "trivial_character",
    "verify_restriction_sequence", "verify_transfer_sequence", "weyl_act",
]
