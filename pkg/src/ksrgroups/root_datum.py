"""Root systems of every Cartan type, lattices between Q and P, root data.

Conventions
-----------
* Simple roots follow Bourbaki numbering; indices are 1-based in every
  user-facing surface and 0-based internally.
* Roots are stored in simple-root coordinates, coroots in simple-coroot
  coordinates. The Cartan matrix is ``A[i][j] = <alpha_i^vee, alpha_j>``.
* A :class:`RootDatum` fixes a character lattice ``X = Z^N`` (coordinates
  relative to a chosen basis) together with the simple roots as vectors of
  ``X`` and the simple coroots as vectors of the dual lattice ``X^vee``; the
  pairing is the dot product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg

SERIES = "ABCDEFG"


class InvalidInput(ValueError):
    """Raised for mathematically invalid user input (bad type, bad lattice...)."""


# -- finite abelian groups ------------------------------------------------------

@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group given by invariant factors ``d1 | d2 | ... | dk``."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if any(d < 2 for d in factors):
            raise InvalidInput(f"invariant factors must be >= 2, got {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise InvalidInput(f"invariant factors must form a divisibility chain: {factors}")

    @classmethod
    def trivial(cls) -> FiniteAbelianGroup:
        return cls(())

    @classmethod
    def cyclic(cls, n: int) -> FiniteAbelianGroup:
        return cls(() if n == 1 else (n,))

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]]) -> FiniteAbelianGroup:
        """Cokernel of the integer matrix whose columns are relations in ``Z^m``."""
        diag, _, _ = linalg.smith(relations)
        m = len(relations)
        if len([d for d in diag if d]) < m:
            raise InvalidInput("relations do not define a finite group")
        return cls(tuple(d for d in diag if d > 1))

    @classmethod
    def from_element_orders(cls, orders: Sequence[int]) -> FiniteAbelianGroup:
        """Identify an abelian group from the multiset of its element orders.

        For each prime p the number of elements killed by ``p^k`` determines
        the p-primary part; the p-parts are then merged into invariant factors.
        """
        n = len(orders)
        if n == 0 or n % max(orders) or orders.count(1) != 1:
            raise InvalidInput("not the order list of a finite group")
        parts: dict[int, list[int]] = {}
        rest = n
        p = 2
        while rest > 1:
            if rest % p:
                p += 1
                continue
            while rest % p == 0:
                rest //= p
            exps, k = [0], 1
            while True:
                killed = sum(1 for o in orders if (p ** k) % o == 0 and _is_p_power(o, p))
                e = round(math.log(killed, p))
                if p ** e != killed:
                    raise InvalidInput("element orders inconsistent with an abelian group")
                if e == exps[-1]:
                    break
                exps.append(e)
                k += 1
            # number of cyclic factors of order >= p^k is exps[k] - exps[k-1]
            counts = [exps[i] - exps[i - 1] for i in range(1, len(exps))]
            sizes = []
            for k in range(len(counts)):
                nk = counts[k] - (counts[k + 1] if k + 1 < len(counts) else 0)
                sizes += [p ** (k + 1)] * nk
            parts[p] = sorted(sizes, reverse=True)
            p += 1
        width = max((len(v) for v in parts.values()), default=0)
        factors = []
        for i in range(width):
            d = 1
            for sizes in parts.values():
                if i < len(sizes):
                    d *= sizes[i]
            factors.append(d)
        group = cls(tuple(sorted(factors)))
        if group.order != n:
            raise InvalidInput("element orders inconsistent with an abelian group")
        return group

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)

    @classmethod
    def parse(cls, text: str) -> FiniteAbelianGroup:
        text = text.strip()
        if text in ("1", "", "trivial"):
            return cls.trivial()
        factors = []
        for part in text.replace("×", "x").split("x"):
            part = part.strip().replace("Z/", "").replace("ℤ/", "").replace("Z", "")
            factors.append(int(part))
        return cls(tuple(sorted(factors)))


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# -- Cartan types ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        s, n = self.series, self.rank
        if s not in SERIES or not isinstance(n, int) or n < 1:
            raise InvalidInput(f"inadmissible Cartan type {s}{n}")
        if (s == "D" and n < 3) or (s == "E" and n not in (6, 7, 8)) \
                or (s == "F" and n != 4) or (s == "G" and n != 2):
            raise InvalidInput(f"inadmissible Cartan type {s}{n}")

    @classmethod
    def parse(cls, text: str) -> CartanType:
        text = text.strip().upper().replace("_", "")
        try:
            return cls(text[0], int(text[1:]))
        except (IndexError, ValueError):
            raise InvalidInput(f"cannot parse Cartan type {text!r}") from None

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def weyl_order(self) -> int:
        s, n = self.series, self.rank
        if s == "A":
            return math.factorial(n + 1)
        if s in "BC":
            return 2 ** n * math.factorial(n)
        if s == "D":
            return 2 ** (n - 1) * math.factorial(n)
        return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                ("F", 4): 1152, ("G", 2): 12}[s, n]

    @property
    def root_count(self) -> int:
        s, n = self.series, self.rank
        if s == "A":
            return n * (n + 1)
        if s in "BC":
            return 2 * n * n
        if s == "D":
            return 2 * n * (n - 1)
        return {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("G", 2): 12}[s, n]


def ambient_simple_roots(t: CartanType) -> list[list[Fraction]]:
    """Bourbaki simple roots as vectors of a Euclidean space."""
    s, n = t.series, t.rank
    half = Fraction(1, 2)

    def e(i, dim):
        v = [Fraction(0)] * dim
        v[i] = Fraction(1)
        return v

    def sub(u, v):
        return [a - b for a, b in zip(u, v)]

    if s == "A":
        return [sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)]
    if s in "BCD":
        roots = [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)]
        if s == "B":
            roots.append(e(n - 1, n))
        elif s == "C":
            roots.append([2 * x for x in e(n - 1, n)])
        else:
            roots.append([a + b for a, b in zip(e(n - 2, n), e(n - 1, n))])
        return roots
    if s == "E":
        a1 = [half, -half, -half, -half, -half, -half, -half, half]
        a2 = [a + b for a, b in zip(e(0, 8), e(1, 8))]
        rest = [sub(e(i, 8), e(i - 1, 8)) for i in range(1, 7)]
        return ([a1, a2] + rest)[:n]
    if s == "F":
        return [sub(e(1, 4), e(2, 4)), sub(e(2, 4), e(3, 4)), e(3, 4),
                [half, -half, -half, -half]]
    # G2 inside the sum-zero plane of Q^3
    return [[Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(-2), Fraction(1), Fraction(1)]]


# -- root systems ---------------------------------------------------------------

@dataclass(frozen=True)
class RootSystem:
    """A reduced root system, the formal product of irreducible components.

    ``components`` empty gives the rank-0 system (no roots, trivial Weyl group).
    """

    components: tuple[CartanType, ...] = ()

    @cached_property
    def rank(self) -> int:
        return sum(t.rank for t in self.components)

    @cached_property
    def component_indices(self) -> tuple[tuple[int, ...], ...]:
        out, start = [], 0
        for t in self.components:
            out.append(tuple(range(start, start + t.rank)))
            start += t.rank
        return tuple(out)

    @cached_property
    def component_of_simple(self) -> tuple[int, ...]:
        return tuple(c for c, idx in enumerate(self.component_indices) for _ in idx)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Invariant inner products of simple roots (block diagonal)."""
        g = [[Fraction(0)] * self.rank for _ in range(self.rank)]
        for t, idx in zip(self.components, self.component_indices):
            amb = ambient_simple_roots(t)
            for a, i in enumerate(idx):
                for b, j in enumerate(idx):
                    g[i][j] = linalg.dot(amb[a], amb[b])
        return tuple(tuple(row) for row in g)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        g = self.gram
        a = [[0] * self.rank for _ in range(self.rank)]
        for i in range(self.rank):
            for j in range(self.rank):
                q = 2 * g[i][j] / g[i][i]
                assert q.denominator == 1
                a[i][j] = int(q)
        return tuple(tuple(row) for row in a)

    @cached_property
    def _simple_norms(self) -> tuple[Fraction, ...]:
        return tuple(self.gram[i][i] for i in range(self.rank))

    def simple_reflect(self, i: int, a: Sequence[int]) -> tuple[int, ...]:
        """Apply the simple reflection s_i (0-based) to root coordinates."""
        row = self.cartan_matrix[i]
        out = list(a)
        out[i] -= sum(x * y for x, y in zip(row, a))
        return tuple(out)

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        r = self.rank
        simples = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        seen = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for a in frontier:
                for i in range(r):
                    b = self.simple_reflect(i, a)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        pos = [a for a in seen if all(x >= 0 for x in a)]
        return tuple(sorted(pos, key=lambda a: (sum(a), [-x for x in a])))

    @cached_property
    def roots(self) -> tuple[tuple[int, ...], ...]:
        """All roots: positive roots by height, then their negatives."""
        pos = self.positive_roots
        return pos + tuple(tuple(-x for x in a) for a in pos)

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def root_index(self) -> dict:
        return {a: k for k, a in enumerate(self.roots)}

    def norm(self, a: Sequence[int]) -> Fraction:
        g = self.gram
        return sum(a[i] * a[j] * g[i][j] for i in range(self.rank) for j in range(self.rank)
                   if a[i] and a[j])

    @cached_property
    def _coroots(self) -> dict:
        out = {}
        ns = self._simple_norms
        for a in self.roots:
            n = self.norm(a)
            b = []
            for j, x in enumerate(a):
                q = x * ns[j] / n
                assert q.denominator == 1
                b.append(int(q))
            out[a] = tuple(b)
        return out

    def coroot(self, a: Sequence[int]) -> tuple[int, ...]:
        """Coroot of the root ``a`` in simple-coroot coordinates."""
        return self._coroots[tuple(a)]

    def pairing(self, coroot_of: Sequence[int], root: Sequence[int]) -> int:
        """``<alpha^vee, beta>`` for roots alpha (``coroot_of``) and beta."""
        b = self.coroot(coroot_of)
        am = self.cartan_matrix
        return sum(b[i] * am[i][j] * root[j] for i in range(self.rank) if b[i]
                   for j in range(self.rank) if root[j])

    def reflection_matrix(self, a: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        """Matrix of s_alpha on simple-root coordinates."""
        b = self.coroot(a)
        am = self.cartan_matrix
        r = self.rank
        # <alpha^vee, alpha_j> for each simple root j
        row = [sum(b[i] * am[i][j] for i in range(r)) for j in range(r)]
        return tuple(tuple(int(i == j) - a[i] * row[j] for j in range(r)) for i in range(r))

    def is_positive(self, a: Sequence[int]) -> bool:
        for x in a:
            if x:
                return x > 0
        return False

    def component_of_root(self, a: Sequence[int]) -> int:
        for i, x in enumerate(a):
            if x:
                return self.component_of_simple[i]
        raise InvalidInput("zero vector is not a root")

    def orbit_key(self, a: Sequence[int]) -> int:
        """W-orbit of a root, named by the smallest simple root (0-based) in it."""
        c = self.component_of_root(a)
        n = self.norm(a)
        return min(i for i in self.component_indices[c] if self._simple_norms[i] == n)

    @cached_property
    def orbit_keys(self) -> tuple[int, ...]:
        return tuple(sorted({self.orbit_key(a) for a in self.positive_roots}))

    @cached_property
    def weyl_order(self) -> int:
        return math.prod(t.weyl_order for t in self.components)

    @cached_property
    def two_rho(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.positive_roots)) if self.rank else ()

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    def __str__(self) -> str:
        return " x ".join(str(t) for t in self.components) or "rank0"


def build_root_system(t: CartanType | str) -> RootSystem:
    if isinstance(t, str):
        t = CartanType.parse(t)
    return RootSystem((t,))


def product_root_system(types: Sequence[CartanType | str]) -> RootSystem:
    return RootSystem(tuple(CartanType.parse(t) if isinstance(t, str) else t for t in types))


def empty_root_system() -> RootSystem:
    return RootSystem(())


def fundamental_group(rs: RootSystem) -> FiniteAbelianGroup:
    """P/Q as the cokernel of the Cartan matrix."""
    if rs.rank == 0:
        return FiniteAbelianGroup.trivial()
    # columns of A are the simple roots in weight coordinates
    return FiniteAbelianGroup.from_relations([list(row) for row in rs.cartan_matrix])


# -- lattices and root data -------------------------------------------------------

LATTICE_ALIASES = {
    "root": "root_lattice", "root_lattice": "root_lattice", "ad": "root_lattice",
    "adjoint": "root_lattice", "weight": "weight_lattice", "weight_lattice": "weight_lattice",
    "sc": "weight_lattice", "simply_connected": "weight_lattice",
    "intermediate": "intermediate",
}


@dataclass(frozen=True)
class LatticeSpec:
    """Choice of character lattice between Q and P, plus central free rank.

    ``generators`` (rows, weight coordinates) is only read for ``intermediate``.
    """

    name: str = "weight_lattice"
    generators: tuple[tuple[int, ...], ...] = ()
    central_free_rank: int = 0

    def __post_init__(self):
        name = LATTICE_ALIASES.get(self.name)
        if name is None:
            raise InvalidInput(f"unknown lattice {self.name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "generators",
                           tuple(tuple(int(x) for x in row) for row in self.generators))
        if self.central_free_rank < 0:
            raise InvalidInput("central_free_rank must be non-negative")
        if name == "intermediate" and not self.generators:
            raise InvalidInput("intermediate lattice needs generators")

    @property
    def short_name(self) -> str:
        return {"root_lattice": "ad", "weight_lattice": "sc", "intermediate": "int"}[self.name]


def dual_lattice(generators: Sequence[Sequence], pairing: Sequence[Sequence] | None = None
                 ) -> list[list[Fraction]]:
    """``{u : <u, v> in Z for all v in L}`` in Hermite form.

    ``generators`` are rows spanning a full-rank lattice L; the pairing is
    ``<u, v> = u P v^T`` (identity when ``pairing`` is None).
    """
    g = [[Fraction(x) for x in row] for row in generators]
    if not g:
        return []
    n = len(g[0])
    p = pairing if pairing is not None else linalg.identity(n)
    if len(g) != n or linalg.rank(g) != n:
        raise InvalidInput("dual_lattice needs a full-rank set of n generators in dimension n")
    m = linalg.matmul(p, linalg.transpose(g))  # n x n, rows indexed by u-coordinates
    if linalg.determinant(m) == 0:
        raise InvalidInput("degenerate pairing")
    # u m = k  =>  u = k m^{-1}; the rows of m^{-1} generate the dual
    return linalg.hermite_rational_rows(linalg.inverse(m))


@dataclass(frozen=True)
class RootDatum:
    """Root datum on a character lattice ``X = Z^N``.

    ``roots_x[i]`` is the i-th simple root in X-coordinates and
    ``coroots_x[i]`` the i-th simple coroot in dual coordinates.
    """

    root_system: RootSystem
    roots_x: tuple[tuple[int, ...], ...]
    coroots_x: tuple[tuple[int, ...], ...]
    dim: int
    char_lattice: LatticeSpec | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        rs = self.root_system
        r = rs.rank
        if len(self.roots_x) != r or len(self.coroots_x) != r:
            raise InvalidInput("need one root and one coroot vector per simple root")
        if any(len(v) != self.dim for v in self.roots_x + self.coroots_x):
            raise InvalidInput("root/coroot vectors must have length dim")
        for i in range(r):
            for j in range(r):
                if linalg.dot(self.coroots_x[i], self.roots_x[j]) != rs.cartan_matrix[i][j]:
                    raise InvalidInput("root/coroot pairing does not reproduce the Cartan matrix")
        if r and (linalg.rank(self.roots_x) != r or linalg.rank(self.coroots_x) != r):
            raise InvalidInput("simple roots and coroots must be linearly independent")

    @classmethod
    def explicit(cls, rs: RootSystem, roots_x, coroots_x, name: str = "") -> RootDatum:
        roots_x = tuple(tuple(int(x) for x in v) for v in roots_x)
        coroots_x = tuple(tuple(int(x) for x in v) for v in coroots_x)
        dim = len(roots_x[0]) if roots_x else 0
        return cls(rs, roots_x, coroots_x, dim, None, name)

    @property
    def rank(self) -> int:
        return self.root_system.rank

    def root_x(self, a: Sequence[int]) -> tuple[int, ...]:
        """Root (simple-root coordinates) as a vector of X."""
        return tuple(sum(a[i] * self.roots_x[i][k] for i in range(self.rank))
                     for k in range(self.dim))

    def coroot_x(self, a: Sequence[int]) -> tuple[int, ...]:
        """Coroot of the root ``a`` as a vector of X^vee."""
        b = self.root_system.coroot(a)
        return tuple(sum(b[i] * self.coroots_x[i][k] for i in range(self.rank))
                     for k in range(self.dim))

    def weight_coords(self, x: Sequence) -> list[Fraction]:
        """Pairings ``<alpha_i^vee, x>`` of a point of X (x) Q."""
        return [sum(Fraction(c) * xx for c, xx in zip(row, x)) for row in self.coroots_x]

    @cached_property
    def _to_x_kernel(self) -> list[list[Fraction]]:
        # A^{-1} C^vee: weight coordinates -> root coordinates of the projection
        a_inv = linalg.inverse(self.root_system.cartan_matrix)
        return linalg.matmul(a_inv, self.coroots_x)

    @cached_property
    def _x_cache(self) -> dict:
        return {}

    def x_matrix(self, m: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
        """Matrix on X of the Weyl element with root-coordinate matrix ``m``."""
        key = tuple(tuple(int(v) for v in row) for row in m)
        hit = self._x_cache.get(key)
        if hit is None:
            hit = self._x_cache[key] = self._x_matrix(key)
        return hit

    def _x_matrix(self, m: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
        n, r = self.dim, self.rank
        if r == 0:
            return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        diff = [[m[i][j] - (i == j) for j in range(r)] for i in range(r)]
        inner = linalg.matmul(diff, self._to_x_kernel)  # r x N
        big = linalg.matmul(linalg.transpose(self.roots_x), inner)  # N x N
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                q = Fraction(big[i][j]) + (i == j)
                if q.denominator != 1:
                    raise AssertionError("Weyl element does not preserve X")
                row.append(int(q))
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def simple_reflections_x(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        n = self.dim
        out = []
        for a, c in zip(self.roots_x, self.coroots_x):
            out.append(tuple(tuple(int(i == j) - a[i] * c[j] for j in range(n))
                             for i in range(n)))
        return tuple(out)

    @cached_property
    def semisimple_lattice_root_coords(self) -> tuple[tuple[Fraction, ...], ...]:
        """Basis of ``X cap Q(Phi) (x) Q`` in simple-root coordinates.

        Solved through the Smith form of the root matrix R (N x r): with
        ``U R V = D``, ``R y`` is integral iff ``V^{-1} y`` lies in
        ``(1/d_1)Z + ... + (1/d_r)Z``.
        """
        r = self.rank
        if r == 0:
            return ()
        big_r = linalg.transpose(self.roots_x)
        diag, _, v = linalg.smith(big_r)
        gens = [[Fraction(v[i][k], diag[k]) for i in range(r)] for k in range(r)]
        return tuple(tuple(row) for row in linalg.hermite_rational_rows(gens))

    @cached_property
    def omega_group(self) -> FiniteAbelianGroup:
        """``(X cap Q(Phi)_Q) / Q(Phi)``; the group the R-groups embed into."""
        basis = self.semisimple_lattice_root_coords
        if not basis:
            return FiniteAbelianGroup.trivial()
        # Q = Z^r expressed in this basis: relations are the coordinates of e_i
        rel = []
        for i in range(self.rank):
            e = [int(i == j) for j in range(self.rank)]
            k = linalg.lattice_coordinates(basis, e)
            rel.append([int(c) for c in k])
        return FiniteAbelianGroup.from_relations(linalg.transpose(rel))

    @cached_property
    def cochar_lattice(self) -> tuple[tuple[Fraction, ...], ...]:
        """Cocharacter lattice in simple-coroot coordinates (+ central coordinates).

        Only defined for data built from a :class:`LatticeSpec`.
        """
        spec = self.char_lattice
        if spec is None:
            raise InvalidInput("cochar_lattice coordinates need a LatticeSpec-built datum")
        basis = self._weight_basis
        c = spec.central_free_rank
        ss = dual_lattice(basis) if basis else []
        rows = [list(row) + [Fraction(0)] * c for row in ss]
        rows += [[Fraction(0)] * self.rank + [Fraction(int(i == j)) for j in range(c)]
                 for i in range(c)]
        return tuple(tuple(row) for row in rows)

    @cached_property
    def _weight_basis(self) -> list[list[int]]:
        return _weight_basis(self.root_system, self.char_lattice)

    @cached_property
    def coordinate_basis(self) -> tuple[tuple[int, ...], ...]:
        """Rows: the basis vectors of X in user coordinates.

        User coordinates are weight coordinates (+ central) for data built from
        a :class:`LatticeSpec` and plain X-coordinates for explicit data.
        """
        n = self.dim
        if self.char_lattice is None:
            return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        r = self.rank
        basis = self._weight_basis
        rows = [list(basis[i]) + [0] * (n - r) for i in range(r)]
        rows += [[0] * r + [int(i == j) for j in range(n - r)] for i in range(n - r)]
        return tuple(map(tuple, rows))

    @cached_property
    def _basis_inverse(self):
        return linalg.inverse(self.coordinate_basis) if self.dim else []

    def to_x(self, coords: Sequence) -> tuple[Fraction, ...]:
        """User coordinates of a point of X (x) Q -> X-coordinates."""
        coords = [linalg.to_fraction(c) for c in coords]
        if len(coords) != self.dim:
            raise InvalidInput(f"expected {self.dim} coordinates, got {len(coords)}")
        if self.char_lattice is None:
            return tuple(coords)
        # user = B^T x  =>  x = B^{-T} user
        return tuple(linalg.matvec(linalg.transpose(self._basis_inverse), coords))

    def from_x(self, x: Sequence) -> tuple[Fraction, ...]:
        if self.char_lattice is None:
            return tuple(Fraction(c) for c in x)
        return tuple(Fraction(c) for c in linalg.matvec(linalg.transpose(self.coordinate_basis), x))

    def cochar_to_x(self, lam: Sequence) -> tuple[Fraction, ...]:
        """Cocharacter in user coordinates -> X^vee coordinates (``B lam``)."""
        lam = [linalg.to_fraction(c) for c in lam]
        if len(lam) != self.dim:
            raise InvalidInput(f"expected {self.dim} coordinates, got {len(lam)}")
        return tuple(linalg.matvec(self.coordinate_basis, lam))

    def cochar_from_x(self, lam: Sequence) -> tuple[Fraction, ...]:
        return tuple(linalg.matvec(self._basis_inverse, lam)) if self.dim else ()

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        spec = self.char_lattice
        base = str(self.root_system)
        if spec is None:
            return f"{base}[explicit]"
        extra = f"+T{spec.central_free_rank}" if spec.central_free_rank else ""
        return f"{base}-{spec.short_name}{extra}"


def _weight_basis(rs: RootSystem, spec: LatticeSpec) -> list[list[int]]:
    r = rs.rank
    if spec.name == "weight_lattice":
        return linalg.identity(r)
    if spec.name == "root_lattice":
        return linalg.hermite_rows(linalg.transpose(rs.cartan_matrix)) if r else []
    gens = [list(row) for row in spec.generators]
    if any(len(row) != r for row in gens):
        raise InvalidInput(f"lattice generators must have length {r}")
    basis = linalg.hermite_rows(gens)
    if len(basis) != r:
        raise InvalidInput("lattice generators are not of full rank")
    for j in range(r):
        col = [rs.cartan_matrix[i][j] for i in range(r)]
        if not linalg.in_lattice(basis, col):
            raise InvalidInput("lattice does not contain the root lattice")
    return basis


def build_root_datum(rs: RootSystem, spec: LatticeSpec | None = None, name: str = "") -> RootDatum:
    """Datum with character lattice ``Lambda (+) Z^c``, Q <= Lambda <= P.

    X-coordinates are relative to the Hermite basis of Lambda (in weight
    coordinates), followed by the central coordinates.
    """
    spec = spec or LatticeSpec()
    r, c = rs.rank, spec.central_free_rank
    basis = _weight_basis(rs, spec)
    n = r + c
    roots_x, coroots_x = [], []
    if r:
        bt = linalg.transpose(basis)
        for i in range(r):
            col = [rs.cartan_matrix[k][i] for k in range(r)]
            a = linalg.solve(bt, col)
            if a is None or any(x.denominator != 1 for x in a):
                raise InvalidInput("lattice does not contain the root lattice")
            roots_x.append([int(x) for x in a] + [0] * c)
            coroots_x.append([basis[j][i] for j in range(r)] + [0] * c)
    return RootDatum(rs, tuple(map(tuple, roots_x)), tuple(map(tuple, coroots_x)), n, spec, name)


def gl_datum(n: int) -> RootDatum:
    """The GL_n datum: X = Z^n, roots and coroots e_i - e_{i+1}."""
    if n < 1:
        raise InvalidInput("GL_n needs n >= 1")
    rs = build_root_system(CartanType("A", n - 1)) if n > 1 else empty_root_system()
    vecs = [[int(k == i) - int(k == i + 1) for k in range(n)] for i in range(n - 1)]
    return RootDatum(rs, tuple(map(tuple, vecs)), tuple(map(tuple, vecs)), n, None, f"GL{n}")


def sl_datum(n: int) -> RootDatum:
    return build_root_datum(build_root_system(CartanType("A", n - 1)), LatticeSpec("weight"),
                            name=f"SL{n}")


def intermediate_lattices(rs: RootSystem) -> list[LatticeSpec]:
    """All lattices strictly between Q and P for an irreducible system.

    Found as the preimages of proper nontrivial subgroups of P/Q; these
    exist for A_n with n+1 composite and for D_n (n even: three; n odd: one).
    """
    if rs.rank == 0:
        return []
    r = rs.rank
    a_cols = linalg.transpose(rs.cartan_matrix)
    omega = fundamental_group(rs).order
    if omega in (1, 2, 3):
        return []
    found = {}
    # candidates: Q + Z*w for weights w with a fundamental-weight coordinate
    for i in range(r):
        for k in range(1, omega):
            w = [k * int(i == j) for j in range(r)]
            basis = linalg.hermite_rows([list(c) for c in a_cols] + [w])
            idx = abs(linalg.determinant(basis))
            if 1 < idx < omega:
                found[tuple(map(tuple, basis))] = basis
    return [LatticeSpec("intermediate", tuple(map(tuple, b))) for _, b in sorted(found.items())]
