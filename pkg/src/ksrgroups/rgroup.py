"""Delta', W-circle, and the Knapp-Stein R-group of a weakly unramified character.

For a character with point x the stabiliser ``W(chi)`` comes from the alcove
picture, Delta' is an integrality condition on ``<alpha^vee, x>`` that
depends on the q-parameters, ``W-circle`` is generated by the reflections in
Delta', and ``R = {w in W(chi) : w(Delta'+) > 0}`` is the canonical
complement of ``W-circle`` in ``W(chi)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .character import (KottwitzLattice, Restriction, WUCharacter, character_from_x,
                        restrict, restriction_data)
from .root_datum import CartanType, FiniteAbelianGroup, InvalidInput, RootDatum, RootSystem
from .weyl import (Mat, Root, WeylElement, WeylSubgroup, alcove_stabilizer, closure, element,
                   element_order, mat_identity, mat_mul, mat_vec, reflection,
                   stabilizer_mod_lattice, subsystem_info)


class NonAbelianRGroupError(AssertionError):
    """An R-group turned out non-abelian; never expected on supported data."""


# -- q-parameters -------------------------------------------------------------------

@dataclass(frozen=True)
class QParameters:
    """Flags ``q_{alpha/2} = 1`` per W-orbit of roots.

    Orbits are named by the smallest simple root (0-based) they contain;
    ``default`` applies to every orbit without an override.
    """

    default: bool = True
    overrides: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "overrides",
                           tuple(sorted((int(k), bool(v)) for k, v in dict(self.overrides).items())))

    def q_half_is_one(self, rs: RootSystem, root: Sequence[int]) -> bool:
        key = rs.orbit_key(root)
        return dict(self.overrides).get(key, self.default)

    def normalized(self, rs: RootSystem) -> QParameters:
        """Same flags, with every orbit of ``rs`` listed explicitly."""
        return QParameters(True, tuple((k, self.flag(k)) for k in rs.orbit_keys))

    def flag(self, key: int) -> bool:
        return dict(self.overrides).get(key, self.default)

    @property
    def is_default(self) -> bool:
        return self.default and all(v for _, v in self.overrides)

    @classmethod
    def all_false(cls) -> QParameters:
        return cls(False)

    @classmethod
    def parse(cls, rs: RootSystem, doc: Mapping | None) -> QParameters:
        """``{"all": bool, "long": bool, "short": bool, "<i>": bool}``; i is 1-based."""
        if not doc:
            return cls()
        default = True
        over: dict[int, bool] = {}
        for key, val in doc.items():
            if not isinstance(val, bool):
                raise InvalidInput(f"q flag for {key!r} must be a boolean")
            if key == "all":
                default = val
                continue
            if key in ("long", "short"):
                for k in _orbits_by_length(rs, key):
                    over[k] = val
                continue
            try:
                i = int(key)
            except ValueError:
                raise InvalidInput(f"unknown q-parameter key {key!r}") from None
            if not 1 <= i <= rs.rank:
                raise InvalidInput(f"q-parameter index {i} out of range 1..{rs.rank}")
            simple = tuple(int(j == i - 1) for j in range(rs.rank))
            over[rs.orbit_key(simple)] = val
        if "all" in doc:
            return cls(default, tuple(over.items()))
        return cls(True, tuple(over.items()))

    def to_doc(self, rs: RootSystem) -> dict:
        return {str(k + 1): self.flag(k) for k in rs.orbit_keys}


def _orbits_by_length(rs: RootSystem, which: str) -> list[int]:
    out = []
    for k in rs.orbit_keys:
        comp = rs.component_of_simple[k]
        norms = {rs.norm(tuple(int(j == i) for j in range(rs.rank)))
                 for i in rs.component_indices[comp]}
        simple = tuple(int(j == k) for j in range(rs.rank))
        is_long = rs.norm(simple) == max(norms)
        if is_long == (which == "long"):
            out.append(k)
    return out


# -- Delta' and W-circle ------------------------------------------------------------------

def _pairings(datum: RootDatum, x: Sequence[Fraction]) -> dict[Root, Fraction]:
    rs = datum.root_system
    w = datum.weight_coords(x)
    return {a: sum(b * c for b, c in zip(rs.coroot(a), w) if b) for a in rs.positive_roots}


def delta_prime(datum: RootDatum, chi: WUCharacter, q: QParameters | None = None
                ) -> frozenset[Root]:
    """Roots with ``chi(alpha^vee) = 1`` (or ``= +-1`` where ``q_{alpha/2} != 1``).

    In the second branch only roots whose reflection fixes chi are admitted,
    which keeps Delta' inside W(chi) and stable under it.
    """
    q = q or QParameters()
    rs = datum.root_system
    x = chi.x
    out = set()
    for a, v in _pairings(datum, x).items():
        keep = v.denominator == 1
        if not keep and v.denominator == 2 and not q.q_half_is_one(rs, a):
            ax = datum.root_x(a)
            keep = all((v * c).denominator == 1 for c in ax)
        if keep:
            out.add(a)
            out.add(tuple(-c for c in a))
    return frozenset(out)


def positive_part(roots: Iterable[Root]) -> list[Root]:
    return sorted((a for a in roots if sum(a) > 0), key=lambda a: (sum(a), [-c for c in a]))


def w_circ(rs: RootSystem, dp: Iterable[Root], materialize: bool = True,
           limit: int = 10 ** 6) -> WeylSubgroup:
    """Subgroup generated by the reflections in ``dp``."""
    info = subsystem_info(rs, positive_part(dp))
    gens = tuple(reflection(rs, a) for a in info.simple_roots)
    sub = WeylSubgroup(gens, info.weyl_order)
    return sub.materialize(rs, limit) if materialize else sub


# -- the R-group ------------------------------------------------------------------

@dataclass(frozen=True)
class RGroupResult:
    datum: RootDatum
    character: WUCharacter
    q: QParameters
    w_chi: WeylSubgroup
    delta_prime: frozenset[Root]
    w_circ: WeylSubgroup
    r_group: WeylSubgroup
    structure: FiniteAbelianGroup
    w_circ_type: str = ""
    strategy: str = "alcove"

    @property
    def commuting_algebra_dim(self) -> int:
        return self.r_group.order

    def signature(self) -> tuple:
        """Strategy-independent content, for fast/brute comparisons."""
        return (self.w_chi.order, tuple(sorted(self.delta_prime)), self.w_circ.order,
                tuple(sorted(self.r_group.matrices)), self.structure.invariant_factors)

    def to_doc(self) -> dict:
        rs = self.datum.root_system
        dp = sorted(self.delta_prime, key=lambda a: rs.root_index[a])
        return {
            "datum": self.datum.label,
            "character": self.character.label,
            "W_chi_order": self.w_chi.order,
            "W_chi_generators": [str(g) for g in self.w_chi.generators],
            "delta_prime": [list(a) for a in dp],
            "W_circ_order": self.w_circ.order,
            "W_circ_type": self.w_circ_type,
            "R_structure": list(self.structure.invariant_factors),
            "R_elements": [str(e) for e in self.r_group.sorted_elements()],
            "commuting_algebra_dim": self.commuting_algebra_dim,
        }


def normalize_into_r(rs: RootSystem, m: Mat, dp_pos: Sequence[Root],
                     dp_simple: Sequence[Root]) -> Mat:
    """The element of ``W-circle * m`` that maps Delta'+ into the positive roots."""
    refl = {b: rs.reflection_matrix(b) for b in dp_simple}
    pos = set(dp_pos)
    while True:
        image = {mat_vec(m, a) for a in dp_pos}
        beta = next((b for b in dp_simple if b not in image), None)
        if beta is None:
            if image != pos:
                raise AssertionError("Delta' is not stable under W(chi)")
            return m
        m = mat_mul(refl[beta], m)


def _structure(mats: Iterable[Mat]) -> FiniteAbelianGroup:
    mats = list(mats)
    for a in mats:
        for b in mats:
            if mat_mul(a, b) != mat_mul(b, a):
                raise NonAbelianRGroupError("R-group is not abelian")
    return FiniteAbelianGroup.from_element_orders([element_order(m) for m in mats])


def compute_rgroup(datum: RootDatum, chi: WUCharacter, q: QParameters | None = None,
                   strategy: str = "alcove") -> RGroupResult:
    """W(chi), Delta'(chi), W-circle(chi), R_chi and its structure."""
    if chi.datum != datum:
        raise InvalidInput("character is not attached to this datum")
    q = q or QParameters()
    if strategy == "brute":
        from .oracle import brute_rgroup
        return brute_rgroup(datum, chi, q)
    if strategy != "alcove":
        raise InvalidInput(f"unknown strategy {strategy!r}")
    rs = datum.root_system
    st = alcove_stabilizer(datum, chi.x)
    w_gens = [rs.reflection_matrix(a) for a in st.reflection_info.simple_roots]
    w_gens += list(st.omega_lifts)
    dp = delta_prime(datum, chi, q)
    dp_pos = positive_part(dp)
    info = subsystem_info(rs, dp_pos)
    for g in w_gens:
        if {mat_vec(g, a) for a in dp} != dp:
            raise AssertionError("Delta' is not W(chi)-stable")
    images = {normalize_into_r(rs, g, dp_pos, info.simple_roots) for g in w_gens}
    r_mats = closure(images, rs.rank)
    if len(r_mats) * info.weyl_order != st.order:
        raise AssertionError(f"|R| |W-circle| = {len(r_mats)} * {info.weyl_order} "
                             f"differs from |W(chi)| = {st.order}")
    structure = _structure(r_mats)
    r_elems = frozenset(element(rs, m) for m in r_mats)
    r_gens = tuple(sorted((element(rs, m) for m in images if m != mat_identity(rs.rank)),
                          key=lambda e: (len(e.word), e.word)))
    w_chi_gens = tuple(sorted({element(rs, m) for m in w_gens if m != mat_identity(rs.rank)},
                              key=lambda e: (len(e.word), e.word)))
    wc_gens = tuple(reflection(rs, a) for a in info.simple_roots)
    return RGroupResult(datum, chi, q, WeylSubgroup(w_chi_gens, st.order), dp,
                        WeylSubgroup(wc_gens, info.weyl_order),
                        WeylSubgroup(r_gens, len(r_mats), r_elems), structure, info.label)


# -- classification tables ----------------------------------------------------------

def allowed_structures(t: CartanType) -> list[FiniteAbelianGroup]:
    """R-group (and inner-form quotient) structures permitted for an absolute type."""
    g = FiniteAbelianGroup
    s, n = t.series, t.rank
    if s == "A":
        return [g.cyclic(d) for d in range(1, n + 2) if (n + 1) % d == 0]
    if s in "BC" or (s, n) == ("E", 7):
        return [g.trivial(), g.cyclic(2)]
    if s == "D":
        return [g.trivial(), g.cyclic(2), g((2, 2)), g.cyclic(4)]
    if (s, n) == ("E", 6):
        return [g.trivial(), g.cyclic(3)]
    return [g.trivial()]


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str

    def __bool__(self) -> bool:
        return self.passed


def keys_check(t: CartanType, datum: RootDatum, result: RGroupResult) -> CheckResult:
    """Is the computed R-group one of the structures listed for type t?"""
    if result.datum != datum:
        return CheckResult(False, "result belongs to a different datum")
    allowed = allowed_structures(t)
    ok = result.structure in allowed
    listed = ", ".join(str(a) for a in allowed)
    return CheckResult(ok, f"{t}: R = {result.structure}; allowed {{{listed}}}")


# -- the restriction sequence ------------------------------------------------------

@dataclass(frozen=True)
class HatWGroup:
    """Characters of the cocharacter quotient realised as ``(w x - x) mod X``."""

    elements: frozenset[tuple[Fraction, ...]]
    witness: tuple[tuple[tuple[Fraction, ...], WeylElement], ...] = field(compare=False)
    structure: FiniteAbelianGroup = field(default_factory=FiniteAbelianGroup)
    homomorphism_ok: bool = True
    kernel_ok: bool = True

    @property
    def order(self) -> int:
        return len(self.elements)

    def witness_of(self, eta) -> WeylElement:
        return dict(self.witness)[tuple(eta)]


def _eta(datum: RootDatum, m: Mat, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    xm = datum.x_matrix(m)
    return tuple(linalg.frac_mod1(c - xi) for c, xi in zip(mat_vec(xm, x), x))


def hat_w(datum: RootDatum, sub, chi: WUCharacter) -> HatWGroup:
    """The group of eta with ``w chi = chi eta`` for some ``w`` in W(chi_flat)."""
    res = sub if isinstance(sub, Restriction) else restriction_data(datum, sub)
    rs = datum.root_system
    flat = restrict(chi, res)
    w_flat = stabilizer_mod_lattice(res.sub_datum, flat.x, coords="x")
    zero = tuple(Fraction(0) for _ in chi.x)
    gens = {}
    for g in w_flat.generators:
        eta = _eta(datum, g.matrix, chi.x)
        for row in res.basis:
            if linalg.dot(row, eta).denominator != 1:
                raise AssertionError("eta_w is not trivial on the sublattice")
        gens.setdefault(eta, g)
    # w -> eta_w is a homomorphism; check it on generator pairs
    hom_ok = True
    for a in w_flat.generators:
        for b in w_flat.generators:
            prod = _eta(datum, mat_mul(a.matrix, b.matrix), chi.x)
            expect = tuple(linalg.frac_mod1(u + v) for u, v in
                           zip(_eta(datum, a.matrix, chi.x), _eta(datum, b.matrix, chi.x)))
            hom_ok = hom_ok and prod == expect
    elements = {zero: WeylElement(mat_identity(rs.rank), ())}
    frontier = [zero]
    while frontier:
        nxt = []
        for e in frontier:
            for g_eta, g in gens.items():
                s = tuple(linalg.frac_mod1(u + v) for u, v in zip(e, g_eta))
                if s not in elements:
                    elements[s] = element(rs, mat_mul(g.matrix, elements[e].matrix))
                    nxt.append(s)
        frontier = nxt
    w_chi = alcove_stabilizer(datum, chi.x)
    kernel_ok = w_flat.order == w_chi.order * len(elements)
    orders = [linalg.common_denominator(e) for e in elements]
    structure = FiniteAbelianGroup.from_element_orders(orders)
    witness = tuple(sorted(elements.items()))
    return HatWGroup(frozenset(elements), witness, structure, hom_ok, kernel_ok)


@dataclass(frozen=True)
class RestrictionReport:
    character: WUCharacter
    restricted: WUCharacter
    r_chi: RGroupResult
    r_flat: RGroupResult
    hat: HatWGroup
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def sequence_line(self) -> str:
        return (f"1 → {self.r_chi.structure} → {self.r_flat.structure} → "
                f"{self.hat.structure} → 1")

    def to_doc(self) -> dict:
        return {
            "character": self.character.label,
            "restricted": self.restricted.label,
            "R_chi": list(self.r_chi.structure.invariant_factors),
            "R_flat": list(self.r_flat.structure.invariant_factors),
            "hat_W": list(self.hat.structure.invariant_factors),
            "sequence": self.sequence_line,
            "checks": {name: ok for name, ok, _ in self.checks},
            "passed": self.passed,
        }


def verify_restriction_sequence(datum: RootDatum, sub, chi: WUCharacter,
                                q: QParameters | None = None) -> RestrictionReport:
    """Check the exact sequence ``1 -> R_chi -> R_flat -> hat W -> 1`` piece by piece."""
    q = q or QParameters()
    res = sub if isinstance(sub, Restriction) else restriction_data(datum, sub)
    if res.sub_datum.root_system != datum.root_system:
        raise InvalidInput("restriction must keep the root system")
    flat = restrict(chi, res)
    r_chi = compute_rgroup(datum, chi, q)
    r_flat = compute_rgroup(res.sub_datum, flat, q)
    hat = hat_w(datum, res, chi)
    checks = []
    same_dp = r_chi.delta_prime == r_flat.delta_prime
    checks.append(("(i) Delta' and W-circle agree", same_dp and r_chi.w_circ == r_flat.w_circ,
                   f"|Delta'| = {len(r_chi.delta_prime)} vs {len(r_flat.delta_prime)}"))
    small, big = r_chi.r_group.matrices, r_flat.r_group.matrices
    checks.append(("(ii) R_chi inside R_flat", small <= big,
                   f"|R_chi| = {len(small)}, |R_flat| = {len(big)}"))
    checks.append(("(iii) orders multiply", len(big) == len(small) * hat.order,
                   f"{len(big)} = {len(small)} * {hat.order}"))
    # (iv): r -> eta_r is a surjective homomorphism R_flat -> hat W with kernel R_chi
    etas = {m: _eta(datum, m, chi.x) for m in big}
    zero = tuple(Fraction(0) for _ in chi.x)
    ok_image = set(etas.values()) == set(hat.elements)
    ok_kernel = {m for m, e in etas.items() if e == zero} == set(small)
    ok_hom = all(etas[mat_mul(a, b)] == tuple(linalg.frac_mod1(u + v)
                                              for u, v in zip(etas[a], etas[b]))
                 for a in big for b in big)
    ok_iv = ok_image and ok_kernel and ok_hom and hat.homomorphism_ok and hat.kernel_ok
    checks.append(("(iv) quotient map is w -> eta_w", ok_iv,
                   f"image={ok_image} kernel={ok_kernel} hom={ok_hom}"))
    return RestrictionReport(chi, flat, r_chi, r_flat, hat, tuple(checks))
