"""Combinatorial transfer data between an inner form and its quasi-split form.

A :class:`TransferDatum` consists of

* a source Kottwitz lattice (root datum of the relative system plus torsion),
* a target root datum,
* an integer matrix ``E`` (``N* x N``) taking source X-coordinates to target
  X-coordinates, and an integer matrix ``T`` (``N* x k``) sending the torsion
  character ``t`` to the point ``T (t_i / d_i)``,
* a root map: the image of every source simple root as a target root,
* a Weyl map: a target element for every source simple reflection,
* q-parameters on both sides.

Validation enforces: roots go to roots, coroots pull back to coroots,
q-flags agree along the root map, and the Weyl map intertwines the actions
on roots and on X and satisfies the Coxeter relations of the source.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from . import kernels, linalg
from .character import (GRID_CAP, KottwitzLattice, WUCharacter, character_from_x,
                        enumerate_characters_upto, orbit_label)
from .rgroup import (QParameters, RGroupResult, allowed_structures, compute_rgroup,
                     normalize_into_r)
from .root_datum import (CartanType, FiniteAbelianGroup, InvalidInput, RootDatum)
from .weyl import Mat, element_order, mat_identity, mat_mul, mat_vec, weyl_table

DERIVE_CAP = 10 ** 6


class TransferError(InvalidInput):
    """A transfer datum violates one of its defining conditions."""


@dataclass(frozen=True)
class TransferDatum:
    name: str
    source: KottwitzLattice
    target: RootDatum
    embedding: tuple[tuple[int, ...], ...]
    torsion_embedding: tuple[tuple[int, ...], ...]
    root_images: tuple[tuple[int, ...], ...]        # target root coordinates per source simple root
    weyl_images: tuple[Mat, ...]                     # target matrices per source simple reflection
    q_source: QParameters = field(default_factory=QParameters)
    q_target: QParameters = field(default_factory=QParameters)

    @property
    def source_datum(self) -> RootDatum:
        return self.source.datum

    def map_root(self, a: Sequence[int]) -> tuple[int, ...]:
        rt = self.target.rank
        return tuple(sum(a[i] * self.root_images[i][k] for i in range(len(a))) for k in range(rt))

    def map_weyl(self, m: Mat) -> Mat:
        """Image of a source Weyl element given by its root-coordinate matrix."""
        from .weyl import reduced_word
        out = mat_identity(self.target.rank)
        for i in reduced_word(self.source_datum.root_system, m):
            out = mat_mul(out, self.weyl_images[i - 1])
        return out

    def map_point(self, x: Sequence[Fraction], tors: Sequence[int] = ()) -> tuple[Fraction, ...]:
        e = self.embedding
        out = [sum(Fraction(e[k][j]) * x[j] for j in range(len(x))) for k in range(len(e))]
        factors = self.source.torsion.invariant_factors
        for i, (t, d) in enumerate(zip(tors, factors)):
            for k in range(len(out)):
                out[k] += Fraction(self.torsion_embedding[k][i] * t, d)
        return tuple(out)


def _coxeter_m(a_ij: int, a_ji: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[a_ij * a_ji]


def _derive_weyl_images(src: RootDatum, tgt: RootDatum, emb, root_images) -> list[Mat]:
    """For each s_i the lexicographically first target w with ``w E = E s_i`` on X
    and ``w phi(beta) = phi(s_i beta)`` on roots."""
    rs, rt = src.root_system, tgt.root_system
    table = weyl_table(rt, DERIVE_CAP)
    xs = table.x_matrices(tgt)
    e = np.array(emb, dtype=np.int64).reshape(tgt.dim, src.dim)
    phi = np.array(root_images, dtype=np.int64).reshape(rs.rank, rt.rank).T  # rt x rs
    out = []
    for i in range(rs.rank):
        s_x = np.array(src.simple_reflections_x[i], dtype=np.int64).reshape(src.dim, src.dim)
        s_r = np.array(rs.reflection_matrix(tuple(int(j == i) for j in range(rs.rank))),
                       dtype=np.int64)
        lhs_ok = np.all((xs @ e) == (e @ s_x)[None], axis=(1, 2))
        root_ok = np.all((table.mats.astype(np.int64) @ phi) == (phi @ s_r)[None], axis=(1, 2))
        hits = np.flatnonzero(lhs_ok & root_ok)
        if not len(hits):
            raise TransferError(f"no target Weyl element intertwines simple reflection {i + 1}")
        out.append(table.element(int(hits[0])).matrix)
    return out


def _root_index_to_coords(rs, idx: int, what: str) -> tuple[int, ...]:
    if not 1 <= idx <= len(rs.roots):
        raise TransferError(f"{what} root index {idx} out of range 1..{len(rs.roots)}")
    return rs.roots[idx - 1]


def build_transfer_datum(name: str, source: KottwitzLattice, target: RootDatum,
                         embedding, root_map: Mapping[int, int] | Sequence[Sequence[int]],
                         torsion_embedding=None, weyl_map=None,
                         q_source: QParameters | None = None,
                         q_target: QParameters | None = None) -> TransferDatum:
    """Validate all defining conditions and assemble a :class:`TransferDatum`.

    ``root_map`` pairs 1-based indices into the canonical root orderings of
    source and target; every source simple root must be listed.
    """
    src = source.datum
    rs, rt = src.root_system, target.root_system
    n, nt = src.dim, target.dim
    emb = tuple(tuple(int(v) for v in row) for row in embedding) if nt else ()
    if len(emb) != nt or any(len(row) != n for row in emb):
        raise TransferError(f"embedding must be a {nt} x {n} integer matrix")
    if n and linalg.rank(emb) != n:
        raise TransferError("embedding is not injective")
    k = len(source.torsion.invariant_factors)
    if torsion_embedding is None:
        torsion_embedding = [[0] * k for _ in range(nt)]
    tors = tuple(tuple(int(v) for v in row) for row in torsion_embedding)
    if len(tors) != nt or any(len(row) != k for row in tors):
        raise TransferError(f"torsion embedding must be a {nt} x {k} integer matrix")
    pairs = dict(root_map.items()) if isinstance(root_map, Mapping) else \
        {int(a): int(b) for a, b in root_map}
    images = []
    for i in range(rs.rank):
        if i + 1 not in pairs:
            raise TransferError(f"root map misses simple root {i + 1}")
        images.append(_root_index_to_coords(rt, pairs[i + 1], "target"))
    q_source = q_source or QParameters()
    q_target = q_target or QParameters()
    td = TransferDatum(name, source, target, emb, tors, tuple(images), (), q_source, q_target)
    # roots to roots, injectively, consistent with every listed pair
    seen = {}
    for a in rs.roots:
        img = td.map_root(a)
        if img not in rt.root_set:
            raise TransferError(f"source root {list(a)} maps to {list(img)}, not a target root")
        if img in seen:
            raise TransferError("root map is not injective")
        seen[img] = a
    for a_idx, b_idx in pairs.items():
        a = _root_index_to_coords(rs, a_idx, "source")
        if td.map_root(a) != _root_index_to_coords(rt, b_idx, "target"):
            raise TransferError(f"root map entry {a_idx} -> {b_idx} is not linear")
    # coroots pull back to coroots along E
    for a in rs.roots:
        pulled = tuple(sum(emb[kk][j] * target.coroot_x(td.map_root(a))[kk] for kk in range(nt))
                       for j in range(n))
        if pulled != src.coroot_x(a):
            raise TransferError(f"coroot of source root {list(a)} is not the pull-back of "
                                f"the coroot of its image")
    # q-flags must agree along the root map
    for a in rs.positive_roots:
        if q_source.q_half_is_one(rs, a) != q_target.q_half_is_one(rt, td.map_root(a)):
            raise TransferError(f"q-parameters disagree on source root {list(a)}")
    # Weyl map
    if weyl_map is None:
        weyl_images = _derive_weyl_images(src, target, emb, images)
    else:
        from .weyl import from_word
        if len(weyl_map) != rs.rank:
            raise TransferError("weyl map needs one word per source simple reflection")
        weyl_images = [from_word(rt, w).matrix for w in weyl_map]
    e = np.array(emb, dtype=np.int64).reshape(nt, n)
    for i, w in enumerate(weyl_images):
        wx = np.array(target.x_matrix(w), dtype=np.int64).reshape(nt, nt)
        sx = np.array(src.simple_reflections_x[i], dtype=np.int64).reshape(n, n)
        if not np.array_equal(wx @ e, e @ sx):
            raise TransferError(f"weyl image of s{i + 1} does not intertwine the embedding")
        for a in rs.roots:
            if mat_vec(w, td.map_root(a)) != td.map_root(rs.simple_reflect(i, a)):
                raise TransferError(f"weyl image of s{i + 1} does not intertwine the root map")
    am = rs.cartan_matrix
    for i in range(rs.rank):
        for j in range(rs.rank):
            m = 1 if i == j else _coxeter_m(am[i][j], am[j][i])
            prod = mat_mul(weyl_images[i], weyl_images[j])
            if element_order(prod) != m:
                raise TransferError(f"weyl images of s{i + 1}, s{j + 1} break the Coxeter relations")
    return TransferDatum(name, source, target, emb, tors, tuple(images), tuple(weyl_images),
                         q_source, q_target)


def transfer_character(td: TransferDatum, chi: WUCharacter) -> WUCharacter:
    """``chi* = E x + T tau`` on the target datum."""
    if chi.lattice != td.source:
        raise InvalidInput("character does not live on the source lattice")
    return character_from_x(td.target, td.map_point(chi.x, chi.torsion_char))


def quotient_table_check(t: CartanType, quotient: FiniteAbelianGroup) -> bool:
    return quotient in allowed_structures(t)


QUOTIENT_NOTE = ("quotient computed as R_chi*/R_chi, the cokernel of R_chi -> R_chi*; "
                 "the table labels it R_chi/R_chi*")


@dataclass(frozen=True)
class TransferReport:
    character: WUCharacter
    transferred: WUCharacter
    source_result: RGroupResult
    target_result: RGroupResult
    inclusions: tuple[tuple[str, bool], ...]
    quotient: FiniteAbelianGroup
    table_check: bool
    note: str = QUOTIENT_NOTE

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.inclusions) and self.table_check

    @property
    def sequence_line(self) -> str:
        return (f"1 → {self.source_result.structure} → {self.target_result.structure} → "
                f"{self.quotient} → 1")

    def to_doc(self) -> dict:
        return {
            "character": self.character.label,
            "transferred": self.transferred.label,
            "R_chi": list(self.source_result.structure.invariant_factors),
            "R_chi_star": list(self.target_result.structure.invariant_factors),
            "quotient": list(self.quotient.invariant_factors),
            "inclusions": {name: ok for name, ok in self.inclusions},
            "table_check": self.table_check,
            "sequence": self.sequence_line,
            "passed": self.passed,
            "note": self.note,
        }


def _in_stabilizer(datum: RootDatum, m: Mat, x: Sequence[Fraction]) -> bool:
    xm = datum.x_matrix(m)
    return all((c - xi).denominator == 1 for c, xi in zip(mat_vec(xm, x), x))


def _normalized(rs, m: Mat, res: RGroupResult) -> Mat | None:
    from .rgroup import positive_part
    from .weyl import subsystem_info
    dp_pos = positive_part(res.delta_prime)
    simple = subsystem_info(rs, dp_pos).simple_roots
    try:
        return normalize_into_r(rs, m, dp_pos, simple)
    except AssertionError:
        return None


def target_type(td: TransferDatum) -> CartanType | None:
    comps = td.target.root_system.components
    return comps[0] if len(comps) == 1 else None


def verify_transfer_sequence(td: TransferDatum, chi: WUCharacter) -> TransferReport:
    """The four inclusions of the inner-form sequence and the quotient R_chi*/R_chi."""
    src, tgt = td.source_datum, td.target
    rt = tgt.root_system
    star = transfer_character(td, chi)
    r_src = compute_rgroup(src, chi, td.q_source)
    r_tgt = compute_rgroup(tgt, star, td.q_target)
    w_gens = [td.map_weyl(g.matrix) for g in r_src.w_chi.generators]
    inc_w = all(_in_stabilizer(tgt, m, star.x) for m in w_gens)
    mapped_dp = {td.map_root(a) for a in r_src.delta_prime}
    inc_dp = mapped_dp <= r_tgt.delta_prime
    ident = mat_identity(rt.rank)
    inc_wc = True
    for g in r_src.w_circ.generators:
        img = td.map_weyl(g.matrix)
        inc_wc = inc_wc and _in_stabilizer(tgt, img, star.x) and \
            _normalized(rt, img, r_tgt) == ident
    # R_chi -> R_chi*: w -> normalised image; must be an injective homomorphism
    src_r = sorted(r_src.r_group.matrices)
    image = {}
    ok_r = True
    for m in src_r:
        img = td.map_weyl(m)
        if not _in_stabilizer(tgt, img, star.x):
            ok_r = False
            break
        n_img = _normalized(rt, img, r_tgt)
        ok_r = ok_r and n_img is not None
        image[m] = n_img
    if ok_r:
        ok_r = len(set(image.values())) == len(src_r)
        ok_r = ok_r and all(image[mat_mul(a, b)] == mat_mul(image[a], image[b])
                            for a in src_r for b in src_r)
        ok_r = ok_r and set(image.values()) <= r_tgt.r_group.matrices
    inclusions = (("W(chi) in W(chi*)", inc_w), ("Delta'(chi) in Delta'(chi*)", inc_dp),
                  ("W-circle(chi) in W-circle(chi*)", inc_wc), ("R_chi into R_chi*", ok_r))
    sub = set(image.values()) if ok_r else {ident}
    quotient = _quotient(r_tgt.r_group.matrices, sub)
    t = target_type(td)
    table = quotient_table_check(t, quotient) if t is not None else quotient.is_trivial
    return TransferReport(chi, star, r_src, r_tgt, inclusions, quotient, table)


def _quotient(group: frozenset[Mat], sub: set[Mat]) -> FiniteAbelianGroup:
    """Structure of an abelian group of matrices modulo a subgroup."""
    sub = frozenset(sub)
    cosets = {}
    for g in group:
        key = frozenset(mat_mul(g, h) for h in sub)
        cosets.setdefault(key, g)
    orders = []
    for g in cosets.values():
        k, cur = 1, g
        while cur not in sub:
            cur = mat_mul(cur, g)
            k += 1
        orders.append(k)
    return FiniteAbelianGroup.from_element_orders(orders)


@lru_cache(maxsize=32)
def _grid_labels(datum: RootDatum, d: int) -> np.ndarray:
    gens = np.array(datum.simple_reflections_x, dtype=np.int64).reshape(
        datum.rank, datum.dim, datum.dim)
    return kernels.orbit_labels(gens, d)


def target_orbit_label(datum: RootDatum, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    d = linalg.common_denominator(x)
    n = datum.dim
    if d ** n > GRID_CAP:
        return orbit_label(datum, x)
    labels = _grid_labels(datum, d)
    k = [int(Fraction(c) * d) % d for c in x]
    idx = 0
    for v in k:
        idx = idx * d + v
    lab = int(labels[idx])
    coords = []
    for _ in range(n):
        coords.append(Fraction(lab % d, d))
        lab //= d
    return tuple(reversed(coords))


@dataclass(frozen=True)
class CatalogueVerification:
    datum: TransferDatum
    reports: tuple[TransferReport, ...]
    collisions: tuple[tuple[str, ...], ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


def verify_transfer_catalogue_entry(td: TransferDatum, max_denominator: int = 6
                                    ) -> CatalogueVerification:
    """Run the sequence check for every source orbit up to the denominator bound and
    report source orbits that collide in the target."""
    chars = enumerate_characters_upto(td.source, max_denominator)
    reports = []
    buckets: dict = {}
    for chi in chars:
        rep = verify_transfer_sequence(td, chi)
        reports.append(rep)
        key = target_orbit_label(td.target, rep.transferred.x)
        buckets.setdefault(key, []).append(chi.label)
    collisions = tuple(tuple(v) for _, v in sorted(buckets.items()) if len(v) > 1)
    return CatalogueVerification(td, tuple(reports), collisions)


def load_transfer_datum(doc: Mapping) -> TransferDatum:
    """Build and validate a transfer datum from its JSON document.

    ``source`` is a root datum document or ``"anisotropic"`` (rank 0, torsion
    given by ``source_torsion``, default ``[2]``).
    """
    from .serialize import parse_datum
    if not isinstance(doc, Mapping):
        raise TransferError("transfer datum must be a JSON object")
    try:
        target = parse_datum(doc["target"])
        src_doc = doc["source"]
    except KeyError as exc:
        raise TransferError(f"transfer datum lacks {exc.args[0]!r}") from None
    torsion = FiniteAbelianGroup(tuple(doc.get("source_torsion", [])))
    if src_doc == "anisotropic":
        torsion = FiniteAbelianGroup(tuple(doc.get("source_torsion", [2])))
        source = KottwitzLattice(0, torsion)
    else:
        sd = parse_datum(src_doc)
        source = KottwitzLattice(sd.dim, torsion, sd)
    q_source = QParameters.parse(source.datum.root_system, doc.get("q_source"))
    q_target = QParameters.parse(target.root_system, doc.get("q_target"))
    weyl_map = doc.get("weyl_map")
    if weyl_map is not None:
        weyl_map = [[int(str(t).lstrip("s")) for t in (w.split() if isinstance(w, str) else w)]
                    for w in weyl_map]
    emb = doc.get("embedding", [])
    if not emb and target.dim:
        emb = [[] for _ in range(target.dim)]
    return build_transfer_datum(doc.get("name", ""), source, target, emb,
                                doc.get("root_map", []), doc.get("torsion_embedding"),
                                weyl_map, q_source, q_target)
