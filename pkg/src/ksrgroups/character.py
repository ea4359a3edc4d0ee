"""Unitary weakly unramified characters on a Kottwitz lattice.

A character is a point of ``X (x) Q / X`` (its unramified part, pairing with
the cocharacter lattice) plus a character of a finite torsion group, stored
as a tuple ``t`` meaning ``g -> sum t_i g_i / d_i``. The Weyl group acts on
the point and trivially on the torsion part.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Sequence

import numpy as np

from . import kernels, linalg
from .root_datum import (FiniteAbelianGroup, InvalidInput, LatticeSpec, RootDatum,
                         build_root_datum, empty_root_system)
from .weyl import WeylElement, mat_vec

GRID_CAP = 4_000_000


def rank0_datum(dim: int, name: str = "") -> RootDatum:
    return RootDatum(empty_root_system(), (), (), dim, None, name or f"T{dim}")


@dataclass(frozen=True)
class KottwitzLattice:
    """``Z^free_rank (+) torsion``; the free part is the cocharacter lattice of ``datum``."""

    free_rank: int
    torsion: FiniteAbelianGroup = field(default_factory=FiniteAbelianGroup)
    datum: RootDatum | None = None

    def __post_init__(self):
        if self.datum is None:
            object.__setattr__(self, "datum", rank0_datum(self.free_rank))
        if self.datum.dim != self.free_rank:
            raise InvalidInput("free rank must match the datum dimension")

    @classmethod
    def of(cls, datum: RootDatum) -> KottwitzLattice:
        return cls(datum.dim, FiniteAbelianGroup.trivial(), datum)

    @cached_property
    def torsion_characters(self) -> tuple[tuple[int, ...], ...]:
        """All characters of the torsion group, in lexicographic order."""
        return tuple(itertools.product(*(range(d) for d in self.torsion.invariant_factors)))


@dataclass(frozen=True)
class WUCharacter:
    lattice: KottwitzLattice
    point: tuple[Fraction, ...]
    torsion_char: tuple[int, ...] = ()

    @property
    def datum(self) -> RootDatum:
        return self.lattice.datum

    @cached_property
    def x(self) -> tuple[Fraction, ...]:
        """The point in X-coordinates, reduced into [0, 1)."""
        return self.datum.to_x(self.point)

    @property
    def torsion_index(self) -> int:
        return self.lattice.torsion_characters.index(self.torsion_char) \
            if self.lattice.torsion.invariant_factors else 0

    @property
    def order(self) -> int:
        den = linalg.common_denominator(self.x)
        for t, d in zip(self.torsion_char, self.lattice.torsion.invariant_factors):
            den = den * (d // gcd(d, t)) // gcd(den, d // gcd(d, t))
        return den

    @property
    def label(self) -> str:
        text = ",".join(linalg.fmt_fraction(c) for c in self.point) or "-"
        if any(self.torsion_char):
            text += f";tors={self.torsion_index}"
        return text

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"WUCharacter({self.label} on {self.datum.label})"


def _canonical_x(x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(linalg.frac_mod1(Fraction(c)) for c in x)


def character_from_x(lattice: KottwitzLattice | RootDatum, x: Sequence,
                     torsion_char: Sequence[int] = ()) -> WUCharacter:
    if isinstance(lattice, RootDatum):
        lattice = KottwitzLattice.of(lattice)
    x = _canonical_x(x)
    if len(x) != lattice.free_rank:
        raise InvalidInput(f"expected {lattice.free_rank} coordinates, got {len(x)}")
    tors = _check_torsion(lattice, torsion_char)
    ch = WUCharacter(lattice, lattice.datum.from_x(x), tors)
    ch.__dict__["x"] = x
    return ch


def _check_torsion(lattice: KottwitzLattice, t) -> tuple[int, ...]:
    factors = lattice.torsion.invariant_factors
    if isinstance(t, int):
        chars = lattice.torsion_characters
        if not 0 <= t < len(chars):
            raise InvalidInput(f"torsion character index {t} out of range 0..{len(chars) - 1}")
        return chars[t]
    t = tuple(int(v) for v in t)
    if not t:
        return tuple(0 for _ in factors)
    if len(t) != len(factors):
        raise InvalidInput("torsion character length does not match the torsion group")
    return tuple(v % d for v, d in zip(t, factors))


def make_character(lattice: KottwitzLattice | RootDatum, coords: Sequence | str | None = None,
                   tors: int | Sequence[int] = 0) -> WUCharacter:
    """Canonicalised character from user coordinates (and a torsion character)."""
    if isinstance(lattice, RootDatum):
        lattice = KottwitzLattice.of(lattice)
    if coords is None:
        coords = [0] * lattice.free_rank
    if isinstance(coords, str):
        coords = parse_coords(coords)
    coords = [linalg.to_fraction(c) for c in coords]
    if len(coords) != lattice.free_rank:
        raise InvalidInput(f"expected {lattice.free_rank} coordinates, got {len(coords)}")
    return character_from_x(lattice, lattice.datum.to_x(coords), _check_torsion(lattice, tors))


def parse_coords(text: str) -> list[Fraction]:
    text = text.strip()
    if not text or text == "-":
        return []
    try:
        return [Fraction(tok.strip()) for tok in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InvalidInput(f"cannot parse character coordinates {text!r}") from None


def parse_character(lattice: KottwitzLattice | RootDatum, text: str) -> WUCharacter:
    """``"1/2,0"`` or ``"1/2,0;tors=1"`` (or ``"tors=1"`` on a torsion-only lattice)."""
    tors = 0
    parts = [p.strip() for p in text.split(";")]
    coords = ""
    for p in parts:
        if p.startswith("tors="):
            tors = int(p[5:])
        else:
            coords = p
    return make_character(lattice, parse_coords(coords), tors)


def trivial_character(lattice: KottwitzLattice | RootDatum) -> WUCharacter:
    return make_character(lattice)


def evaluate(chi: WUCharacter, lam: Sequence, torsion_elem: Sequence[int] = ()) -> Fraction:
    """``chi(lam)`` in Q/Z for a cocharacter (user coordinates) plus a torsion element."""
    datum = chi.datum
    lam_x = datum.cochar_to_x(lam)
    if any(Fraction(c).denominator != 1 for c in lam_x):
        raise InvalidInput("element is not in the cocharacter lattice")
    val = linalg.dot(lam_x, chi.x)
    factors = chi.lattice.torsion.invariant_factors
    if torsion_elem:
        if len(torsion_elem) != len(factors):
            raise InvalidInput("torsion element length does not match the torsion group")
        val += sum(Fraction(t * g, d) for t, g, d in zip(chi.torsion_char, torsion_elem, factors))
    return linalg.frac_mod1(val)


def weyl_act(w: WeylElement, chi: WUCharacter) -> WUCharacter:
    """``(w chi)(lam) = chi(w^{-1} lam)``: the point moves by ``w`` on X."""
    xm = chi.datum.x_matrix(w.matrix)
    return character_from_x(chi.lattice, mat_vec(xm, chi.x), chi.torsion_char)


def is_unramified(chi: WUCharacter) -> bool:
    return not any(chi.torsion_char)


# -- restriction to sublattices -------------------------------------------------------

@dataclass(frozen=True)
class Restriction:
    """A sublattice of the cocharacter lattice containing every coroot.

    ``basis`` rows are in X^vee coordinates; ``sub_datum`` is the datum whose
    cocharacter lattice is the sublattice.
    """

    datum: RootDatum
    basis: tuple[tuple[int, ...], ...]
    sub_datum: RootDatum
    derived: bool

    def point(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """X-coordinates on the sub datum of the restriction of ``x``."""
        if self.derived:
            w = self.datum.weight_coords(x)
            return self.sub_datum.to_x(w)
        return tuple(linalg.dot(g, x) for g in self.basis)


@lru_cache(maxsize=64)
def _restriction(datum: RootDatum, sub: tuple[tuple[Fraction, ...], ...]) -> Restriction:
    rows = [datum.cochar_to_x(r) for r in sub]
    if any(Fraction(c).denominator != 1 for row in rows for c in row):
        raise InvalidInput("sublattice generators are not in the cocharacter lattice")
    basis = linalg.hermite_rows([[int(c) for c in row] for row in rows])
    for k, cor in enumerate(datum.coroots_x):
        if not linalg.in_lattice(basis, cor):
            raise InvalidInput(f"sublattice misses the coroot of simple root {k + 1}")
    rs = datum.root_system
    coroot_span = linalg.hermite_rows([list(c) for c in datum.coroots_x]) if rs.rank else []
    if rs.rank and basis == coroot_span:
        sub_datum = build_root_datum(rs, LatticeSpec("weight"),
                                     name=f"{datum.label}-der" if datum.name else "")
        return Restriction(datum, tuple(map(tuple, basis)), sub_datum, True)
    roots = [[linalg.dot(g, a) for g in basis] for a in datum.roots_x]
    coroots = []
    for cor in datum.coroots_x:
        k = linalg.lattice_coordinates(basis, cor)
        coroots.append([int(c) for c in k])
    sub_datum = RootDatum.explicit(rs, roots, coroots, name=f"{datum.label}-sub") \
        if rs.rank else rank0_datum(len(basis))
    return Restriction(datum, tuple(map(tuple, basis)), sub_datum, False)


def restriction_data(datum: RootDatum, sub: Sequence[Sequence]) -> Restriction:
    return _restriction(datum, tuple(tuple(linalg.to_fraction(c) for c in row) for row in sub))


def restrict(chi: WUCharacter, sub: Sequence[Sequence] | Restriction) -> WUCharacter:
    """Precompose ``chi`` with the inclusion of a sublattice of the cocharacters."""
    res = sub if isinstance(sub, Restriction) else restriction_data(chi.datum, sub)
    if res.datum != chi.datum:
        raise InvalidInput("restriction data belongs to another datum")
    return character_from_x(res.sub_datum, res.point(chi.x))


def derived_sublattice(datum: RootDatum) -> list[list[Fraction]]:
    """Saturation of the coroot span inside the cocharacter lattice (user coordinates)."""
    n = datum.dim
    if datum.rank == 0:
        return []
    # kernel of the map X^vee -> Hom(X^W...) is the saturation: solve via Smith form
    c = [list(row) for row in datum.coroots_x]
    diag, u, v = linalg.smith(linalg.transpose(c))  # U C^T V = D, C^T is N x r
    r = datum.rank
    u_inv = linalg.integral(linalg.inverse(u))
    # columns of U^{-1} (first r) span the saturation of the column space of C^T
    sat = [[u_inv[i][k] for i in range(n)] for k in range(r)]
    basis = linalg.hermite_rows(sat)
    return [list(datum.cochar_from_x(row)) for row in basis]


def lift_character(res: Restriction, chi_flat: WUCharacter) -> WUCharacter:
    """A character of the big lattice restricting to ``chi_flat``."""
    if res.derived:
        target = res.sub_datum.weight_coords(chi_flat.x)
        rows = [list(c) for c in res.datum.coroots_x]
    else:
        target = list(chi_flat.x)
        rows = [list(g) for g in res.basis]
    x = linalg.solve(rows, target)
    if x is None:
        raise InvalidInput("no lift exists")
    return character_from_x(res.datum, x)


# -- orbit enumeration ------------------------------------------------------------

def orbit_label(datum: RootDatum, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Lexicographically smallest X-coordinate vector in [0,1)^N of the W-orbit of x."""
    gens = datum.simple_reflections_x
    start = _canonical_x(x)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _canonical_x(mat_vec(g, p))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return min(seen)


def _grid_orbits(datum: RootDatum, d: int, cap: int) -> list[tuple[int, ...]]:
    n = datum.dim
    if d ** n > cap:
        raise InvalidInput(f"grid of size {d}^{n} exceeds the cap {cap}")
    gens = np.array(datum.simple_reflections_x, dtype=np.int64).reshape(datum.rank, n, n)
    labels = kernels.orbit_labels(gens, d)
    reps = np.unique(labels)
    pts = kernels.grid_points(n, d)[reps]
    return [tuple(int(v) for v in row) for row in pts]


def enumerate_characters(datum: RootDatum | KottwitzLattice, max_denominator: int,
                         exact: bool = False, cap: int = GRID_CAP) -> list[WUCharacter]:
    """One representative per W-orbit of characters whose X-coordinates lie in (1/d)Z.

    With ``exact`` only characters of exact order d on the free part are kept.
    Representatives are the lexicographically smallest X-coordinate vectors;
    output order is lexicographic, torsion characters innermost.
    """
    lattice = datum if isinstance(datum, KottwitzLattice) else KottwitzLattice.of(datum)
    d = int(max_denominator)
    if d < 1:
        raise InvalidInput("denominator must be >= 1")
    out = []
    for k in _grid_orbits(lattice.datum, d, cap):
        if exact and gcd(d, *k) != 1:
            continue
        x = [Fraction(v, d) for v in k]
        for t in lattice.torsion_characters:
            out.append(character_from_x(lattice, x, t))
    return out


def enumerate_characters_upto(datum: RootDatum | KottwitzLattice, max_denominator: int,
                              cap: int = GRID_CAP) -> list[WUCharacter]:
    """Orbit representatives with every denominator 1..D, grouped by exact order."""
    out = []
    for d in range(1, int(max_denominator) + 1):
        out.extend(enumerate_characters(datum, d, exact=True, cap=cap))
    return out


def burnside_count(datum: RootDatum, d: int) -> int:
    """Number of W-orbits on (1/d)Z^N / Z^N via Burnside's lemma."""
    from .weyl import weyl_table
    table = weyl_table(datum.root_system)
    xs = table.x_matrices(datum)
    n = datum.dim
    total = 0
    for m in xs:
        # fixed points of m on (Z/d)^n: size of kernel of (m - 1) mod d
        diag, _, _ = linalg.smith((m - np.eye(n, dtype=np.int64)).tolist())
        fixed = 1
        for e in diag:
            fixed *= gcd(int(e), d) if e else d
        total += fixed
    assert total % len(xs) == 0
    return total // len(xs)
