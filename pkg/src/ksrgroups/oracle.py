"""Exhaustive brute-force verifiers for stabilisers and R-groups.

Nothing here uses the alcove machinery: W is enumerated in full, W(chi) is a
mask over the table, Delta' is evaluated on coroots directly, W-circle is the
closure of *all* reflections in Delta', and R is filtered by positivity.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels, linalg
from .character import WUCharacter, evaluate
from .rgroup import QParameters, RGroupResult, _structure, compute_rgroup
from .root_datum import InvalidInput, RootDatum
from .weyl import (WeylSubgroup, WeylTable, brute_stabilizer_indices, mat_identity, mat_vec,
                   reduced_word, weyl_table)

ORACLE_CAP = 10 ** 6


def _table(datum: RootDatum, cap: int) -> WeylTable:
    return weyl_table(datum.root_system, cap)


def brute_stabilizer(datum: RootDatum, x, cap: int = ORACLE_CAP, coords: str = "user"
                     ) -> WeylSubgroup:
    """``{w : w x - x in X}`` by scanning every element of W."""
    x = tuple(linalg.to_fraction(c) for c in x)
    if coords == "user":
        x = datum.to_x(x)
    table = _table(datum, cap)
    idx = brute_stabilizer_indices(datum, x, cap)
    elems = frozenset(table.element(int(k)) for k in idx)
    gens = tuple(sorted((e for e in elems if e.word), key=lambda e: (len(e.word), e.word)))
    return WeylSubgroup(gens, len(elems), elems)


@lru_cache(maxsize=64)
def _coroots_user(datum: RootDatum) -> tuple:
    rs = datum.root_system
    return tuple((a, datum.cochar_from_x(datum.coroot_x(a))) for a in rs.positive_roots)


def brute_delta_prime(datum: RootDatum, chi: WUCharacter, q: QParameters,
                      stab: set[int], table: WeylTable) -> frozenset:
    rs = datum.root_system
    out = set()
    for a, coroot in _coroots_user(datum):
        val = evaluate(chi, coroot)
        keep = val == 0
        if not keep and not q.q_half_is_one(rs, a) and (2 * val) % 1 == 0:
            keep = table.index_of(rs.reflection_matrix(a)) in stab
        if keep:
            out.add(a)
            out.add(tuple(-c for c in a))
    return frozenset(out)


def brute_rgroup(datum: RootDatum, chi: WUCharacter, q: QParameters | None = None,
                 cap: int = ORACLE_CAP) -> RGroupResult:
    q = q or QParameters()
    rs = datum.root_system
    table = _table(datum, cap)
    stab_idx = brute_stabilizer_indices(datum, chi.x, cap)
    stab = set(int(k) for k in stab_idx)
    dp = brute_delta_prime(datum, chi, q, stab, table)
    dp_pos = [a for a in dp if sum(a) > 0]
    refl_words = [reduced_word(rs, rs.reflection_matrix(a)) for a in dp_pos]
    wc_idx = table.closure(refl_words)
    if not set(int(k) for k in wc_idx) <= stab:
        raise AssertionError("W-circle is not contained in W(chi)")
    roots = np.array(dp_pos, dtype=np.int64).T.reshape(rs.rank, len(dp_pos))
    mats = table.mats[stab_idx].astype(np.int64)
    r_idx = stab_idx[kernels.positive_mask(mats, roots)]
    if len(r_idx) * len(wc_idx) != len(stab_idx):
        raise AssertionError("|W(chi)| != |W-circle| |R| in the brute-force computation")
    if len(np.intersect1d(r_idx, wc_idx)) != 1:
        raise AssertionError("R meets W-circle nontrivially")
    r_elems = frozenset(table.element(int(k)) for k in r_idx)
    structure = _structure(e.matrix for e in r_elems)
    r_gens = tuple(sorted((e for e in r_elems if e.word), key=lambda e: (len(e.word), e.word)))
    return RGroupResult(datum, chi, q, WeylSubgroup((), len(stab_idx)), dp,
                        WeylSubgroup((), len(wc_idx)),
                        WeylSubgroup(r_gens, len(r_elems), r_elems), structure,
                        strategy="brute")


@dataclass(frozen=True)
class OracleReport:
    case_id: str
    fast_result: RGroupResult
    brute_result: RGroupResult
    agree: bool

    def to_json(self) -> str:
        fast = self.fast_result
        return json.dumps({
            "case": self.case_id,
            "agree": self.agree,
            "W_chi_order": fast.w_chi.order,
            "W_circ_order": fast.w_circ.order,
            "R_structure": list(fast.structure.invariant_factors),
            "brute_R_structure": list(self.brute_result.structure.invariant_factors),
        }, sort_keys=True)


def compare(datum: RootDatum, chi: WUCharacter, q: QParameters | None = None,
            case_id: str = "", cap: int = ORACLE_CAP,
            fast: RGroupResult | None = None) -> OracleReport:
    """Fast path against brute force; pass ``fast`` to reuse an existing result."""
    q = q or QParameters()
    if datum.root_system.weyl_order > cap:
        raise InvalidInput(f"|W| = {datum.root_system.weyl_order} exceeds the oracle cap {cap}")
    if fast is None:
        fast = compute_rgroup(datum, chi, q)
    elif fast.datum != datum or fast.character != chi or fast.q != q:
        raise InvalidInput("supplied fast result is for a different case")
    brute = brute_rgroup(datum, chi, q, cap)
    agree = fast.signature() == brute.signature()
    if agree and fast.w_chi.generators:
        # the fast generators must really lie in the brute stabiliser
        table = _table(datum, cap)
        stab = set(int(k) for k in brute_stabilizer_indices(datum, chi.x, cap))
        agree = all(table.index_of(g.matrix) in stab for g in fast.w_chi.generators)
    return OracleReport(case_id or f"{datum.label}:{chi.label}", fast, brute, agree)


def fraction_vector(text: str) -> list[Fraction]:
    return [Fraction(t) for t in text.split(",")] if text else []


@dataclass(frozen=True)
class SemidirectCheck:
    orders_multiply: bool
    trivial_intersection: bool
    positive_on_delta_prime: bool

    @property
    def passed(self) -> bool:
        return self.orders_multiply and self.trivial_intersection and self.positive_on_delta_prime


def semidirect_check(result: RGroupResult, cap: int = ORACLE_CAP) -> SemidirectCheck:
    """Check ``W(chi) = W-circle x| R`` for a result, with W-circle enumerated afresh.

    Above the cap W-circle is not enumerated; R then meets it trivially because W-circle
    acts simply transitively on positive systems of Delta' and R fixes one.
    """
    rs = result.datum.root_system
    dp_pos = [a for a in result.delta_prime if sum(a) > 0]
    r_mats = result.r_group.matrices
    orders = result.w_chi.order == result.w_circ.order * result.r_group.order
    positive = all(sum(mat_vec(m, a)) > 0 for m in r_mats for a in dp_pos)
    if rs.weyl_order <= cap:
        table = _table(result.datum, cap)
        words = [reduced_word(rs, rs.reflection_matrix(a)) for a in dp_pos]
        wc = set(int(k) for k in table.closure(words))
        ident = table.index_of(mat_identity(rs.rank))
        meet = {table.index_of(m) for m in r_mats} & wc
        trivial = meet == {ident} and len(wc) == result.w_circ.order
    else:
        trivial = positive and mat_identity(rs.rank) in r_mats
    return SemidirectCheck(orders, trivial, positive)
