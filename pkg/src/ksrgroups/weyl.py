"""Weyl group elements, enumeration, and stabilisers of points modulo X.

Elements are integer matrices in simple-root coordinates together with their
lexicographically smallest reduced word (1-based letters). Two strategies
compute ``W(x) = {w : w x - x in X}``:

* ``brute``: scan a table of all elements (numpy, compiled kernels);
* ``alcove``: move the point into the fundamental alcove of the affine Weyl
  group and read off the stabiliser as (reflections in the integral roots)
  extended by the alcove-stabilising elements of the group Omega.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels, linalg
from .root_datum import CartanType, InvalidInput, RootDatum, RootSystem

DEFAULT_CAP = 10 ** 7

Mat = tuple[tuple[int, ...], ...]
Root = tuple[int, ...]


class WeylOrderExceeded(RuntimeError):
    def __init__(self, order: int, cap: int):
        super().__init__(f"|W| = {order} exceeds the enumeration cap {cap}")
        self.order = order
        self.cap = cap


# -- small exact matrix helpers ---------------------------------------------------

def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b)) if b else ()
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, v: Sequence[int]) -> Root:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_inverse_int(a: Mat) -> Mat:
    return tuple(tuple(row) for row in linalg.integral(linalg.inverse(a))) if a else ()


# -- elements ---------------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    matrix: Mat
    word: tuple[int, ...] = field(default=(), compare=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, root: Sequence[int]) -> Root:
        return mat_vec(self.matrix, root)

    def __str__(self) -> str:
        return " ".join(f"s{i}" for i in self.word) if self.word else "1"


@lru_cache(maxsize=None)
def _simple_matrix(rs: RootSystem, i: int) -> Mat:
    a = rs.cartan_matrix
    r = rs.rank
    return tuple(tuple(int(p == q) - (a[i][q] if p == i else 0) for q in range(r))
                 for p in range(r))


def reduced_word(rs: RootSystem, m: Mat) -> tuple[int, ...]:
    """Lexicographically smallest reduced word, by peeling minimal left descents."""
    a = rs.cartan_matrix
    two_rho = rs.two_rho
    word = []
    cur = m
    r = rs.rank
    while True:
        img = mat_vec(cur, two_rho)
        pair = [sum(a[i][j] * img[j] for j in range(r)) for i in range(r)]
        i = next((i for i in range(r) if pair[i] < 0), None)
        if i is None:
            break
        word.append(i + 1)
        cur = mat_mul(_simple_matrix(rs, i), cur)
    if cur != mat_identity(r):
        raise InvalidInput("matrix is not a Weyl group element")
    return tuple(word)


def element(rs: RootSystem, m: Sequence[Sequence[int]]) -> WeylElement:
    m = tuple(tuple(int(x) for x in row) for row in m)
    return WeylElement(m, reduced_word(rs, m))


def identity_element(rs: RootSystem) -> WeylElement:
    return WeylElement(mat_identity(rs.rank), ())


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """The simple reflection s_i (1-based index)."""
    if not 1 <= i <= rs.rank:
        raise InvalidInput(f"simple reflection index {i} out of range 1..{rs.rank}")
    return WeylElement(_simple_matrix(rs, i - 1), (i,))


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    m = mat_identity(rs.rank)
    for i in reversed(list(word)):
        if not 1 <= i <= rs.rank:
            raise InvalidInput(f"simple reflection index {i} out of range 1..{rs.rank}")
        m = mat_mul(_simple_matrix(rs, i - 1), m)
    return element(rs, m)


def parse_word(rs: RootSystem, text: str) -> WeylElement:
    text = text.strip()
    if text in ("", "1", "e"):
        return identity_element(rs)
    return from_word(rs, [int(tok.lstrip("s")) for tok in text.replace(",", " ").split()])


def multiply(rs: RootSystem, a: WeylElement, b: WeylElement) -> WeylElement:
    return element(rs, mat_mul(a.matrix, b.matrix))


def inverse(rs: RootSystem, a: WeylElement) -> WeylElement:
    return WeylElement(mat_inverse_int(a.matrix), tuple(reversed(a.word)))


def reflection(rs: RootSystem, root: Sequence[int]) -> WeylElement:
    return element(rs, rs.reflection_matrix(tuple(root)))


def positivity_check(w: WeylElement | Mat, roots: Iterable[Sequence[int]]) -> bool:
    """True iff ``w`` sends every listed root to a positive root."""
    m = w.matrix if isinstance(w, WeylElement) else w
    for a in roots:
        img = mat_vec(m, a)
        if sum(img) <= 0:
            return False
    return True


def permutes_roots(rs: RootSystem, w: WeylElement) -> bool:
    return {w.act(a) for a in rs.roots} == rs.root_set


def inversion_count(rs: RootSystem, w: WeylElement) -> int:
    return sum(1 for a in rs.positive_roots if sum(w.act(a)) < 0)


def element_order(m: Mat) -> int:
    ident = mat_identity(len(m))
    cur, k = m, 1
    while cur != ident:
        cur = mat_mul(cur, m)
        k += 1
    return k


def closure(gens: Iterable[Mat], rank: int, limit: int | None = None) -> set[Mat]:
    """Materialise the group generated by the given matrices."""
    gens = list(dict.fromkeys(gens))
    ident = mat_identity(rank)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = mat_mul(g, m)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if limit is not None and len(seen) > limit:
                        raise WeylOrderExceeded(len(seen), limit)
        frontier = nxt
    return seen


# -- subgroups --------------------------------------------------------------------

@dataclass(frozen=True)
class WeylSubgroup:
    generators: tuple[WeylElement, ...]
    order: int
    elements: frozenset[WeylElement] | None = field(default=None, compare=False)

    def __contains__(self, w: WeylElement) -> bool:
        if self.elements is None:
            raise ValueError("subgroup is not materialised")
        return w in self.elements

    def materialize(self, rs: RootSystem, limit: int = 10 ** 6) -> WeylSubgroup:
        if self.elements is not None:
            return self
        mats = closure((g.matrix for g in self.generators), rs.rank, limit)
        if len(mats) != self.order:
            raise AssertionError(f"closure has {len(mats)} elements, expected {self.order}")
        return WeylSubgroup(self.generators, self.order,
                            frozenset(element(rs, m) for m in mats))

    @property
    def matrices(self) -> frozenset[Mat]:
        if self.elements is None:
            raise ValueError("subgroup is not materialised")
        return frozenset(e.matrix for e in self.elements)

    def sorted_elements(self) -> list[WeylElement]:
        if self.elements is None:
            raise ValueError("subgroup is not materialised")
        return sorted(self.elements, key=lambda e: (len(e.word), e.word))


def subgroup_from_generators(rs: RootSystem, gens: Iterable[WeylElement],
                             materialize_limit: int = 10 ** 6) -> WeylSubgroup:
    gens = tuple(sorted({g for g in gens if g.word}, key=lambda e: (len(e.word), e.word)))
    mats = closure((g.matrix for g in gens), rs.rank, materialize_limit)
    return WeylSubgroup(gens, len(mats), frozenset(element(rs, m) for m in mats))


# -- root subsystems ----------------------------------------------------------------

def _pairing_rows(rs: RootSystem, roots: Sequence[Root]) -> np.ndarray:
    """Row k: the linear form <beta_k^vee, .> on simple-root coordinates."""
    a = np.array(rs.cartan_matrix, dtype=np.int64).reshape(rs.rank, rs.rank)
    cor = np.array([rs.coroot(b) for b in roots], dtype=np.int64).reshape(len(roots), rs.rank)
    return cor @ a


def subsystem_simple_roots(rs: RootSystem, positive: Iterable[Root]) -> list[Root]:
    """Simple roots of a positive system of a root subsystem.

    beta is simple iff s_beta permutes the other positive roots.
    """
    pos = sorted(set(positive), key=lambda a: (sum(a), [-x for x in a]))
    if not pos:
        return []
    arr = np.array(pos, dtype=np.int64)
    pair = _pairing_rows(rs, pos) @ arr.T  # pair[b, g] = <beta_b^vee, gamma_g>
    simples = []
    for b, beta in enumerate(pos):
        imgs = arr - pair[b][:, None] * arr[b][None, :]
        ok = np.all(imgs >= 0, axis=1) | (np.arange(len(pos)) == b)
        if ok.all():
            simples.append(beta)
    return simples


@dataclass(frozen=True)
class SubsystemInfo:
    simple_roots: tuple[Root, ...]
    types: tuple[CartanType, ...]

    @property
    def weyl_order(self) -> int:
        out = 1
        for t in self.types:
            out *= t.weyl_order
        return out

    @property
    def label(self) -> str:
        return " x ".join(str(t) for t in sorted(self.types)) or "empty"


def subsystem_info(rs: RootSystem, positive: Iterable[Root]) -> SubsystemInfo:
    simples = subsystem_simple_roots(rs, positive)
    k = len(simples)
    pr = _pairing_rows(rs, simples) if simples else np.zeros((0, rs.rank), dtype=np.int64)
    arr = np.array(simples, dtype=np.int64).reshape(k, rs.rank)
    mixed = pr @ arr.T if k else np.zeros((0, 0))
    # connected components of the Dynkin graph
    comp = list(range(k))

    def find(i):
        while comp[i] != i:
            i = comp[i]
        return i

    for i in range(k):
        for j in range(k):
            if i != j and mixed[i, j]:
                comp[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    types = []
    for idx in groups.values():
        gens = [tuple(int(x) for x in arr[i]) for i in idx]
        forms = [pr[i] for i in idx]
        seen = set(gens) | {tuple(-x for x in g) for g in gens}
        frontier = list(seen)
        while frontier:
            nxt = []
            for g in frontier:
                gv = np.array(g, dtype=np.int64)
                for b, f in zip(gens, forms):
                    c = int(f @ gv)
                    if c:
                        h = tuple(int(x) for x in gv - c * np.array(b))
                        if h not in seen:
                            seen.add(h)
                            nxt.append(h)
            frontier = nxt
        norms = {rs.norm(g) for g in gens}
        short = sum(1 for g in seen if rs.norm(g) == min(norms))
        types.append(_identify(len(idx), len(seen), len(norms) == 1, short))
    return SubsystemInfo(tuple(simples), tuple(sorted(types)))


def _identify(n: int, count: int, simply_laced: bool, short: int) -> CartanType:
    if simply_laced:
        if count == n * (n + 1):
            return CartanType("A", n)
        if n >= 4 and count == 2 * n * (n - 1):
            return CartanType("D", n)
        if n in (6, 7, 8) and count == {6: 72, 7: 126, 8: 240}[n]:
            return CartanType("E", n)
    else:
        if n == 2 and count == 12:
            return CartanType("G", 2)
        if n == 4 and count == 48:
            return CartanType("F", 4)
        if count == 2 * n * n:
            return CartanType("B" if short == 2 * n else "C", n)
    raise AssertionError(f"unrecognised root subsystem: rank {n}, {count} roots")


# -- enumeration ------------------------------------------------------------------

class WeylTable:
    """All elements of W as numpy arrays, in breadth-first lexicographic order.

    ``mats[k]`` is the root-coordinate matrix, ``keys[k]`` the weight
    coordinates of ``w_k(rho)`` (a faithful label), and the lexicographically
    smallest reduced word of ``w_k`` is ``first[k]`` followed by the word of
    ``parent[k]``.
    """

    def __init__(self, rs: RootSystem, cap: int = DEFAULT_CAP):
        order = rs.weyl_order
        if order > cap:
            raise WeylOrderExceeded(order, cap)
        self.rs = rs
        r = rs.rank
        a = np.array(rs.cartan_matrix, dtype=np.int64).reshape(r, r)
        keys = [np.ones((1, r), dtype=np.int16)]
        mats = [np.eye(r, dtype=np.int8)[None]]
        first = [np.array([-1])]
        parent = [np.array([-1])]
        layer_keys, layer_mats = keys[0], mats[0]
        layer_idx = np.array([0])
        total = 1
        while len(layer_keys):
            ck, cm, cf, cp = [], [], [], []
            for i in range(r):
                sel = layer_keys[:, i] > 0
                if not sel.any():
                    continue
                lk = layer_keys[sel].astype(np.int64)
                ck.append((lk - lk[:, i:i + 1] * a[:, i][None, :]).astype(np.int16))
                lm = layer_mats[sel].astype(np.int64)
                nm = lm.copy()
                nm[:, i, :] -= np.einsum("j,njk->nk", a[i], lm)
                cm.append(nm.astype(np.int8))
                cf.append(np.full(sel.sum(), i))
                cp.append(layer_idx[sel])
            if not ck:
                break
            ck = np.concatenate(ck)
            _, firsts = np.unique(ck, axis=0, return_index=True)
            firsts.sort()
            layer_keys = ck[firsts]
            layer_mats = np.concatenate(cm)[firsts]
            layer_idx = np.arange(total, total + len(firsts))
            total += len(firsts)
            keys.append(layer_keys)
            mats.append(layer_mats)
            first.append(np.concatenate(cf)[firsts])
            parent.append(np.concatenate(cp)[firsts])
        self.keys = np.concatenate(keys)
        self.mats = np.concatenate(mats)
        self.first = np.concatenate(first)
        self.parent = np.concatenate(parent)
        if len(self.keys) != order:
            raise AssertionError(f"enumerated {len(self.keys)} elements, expected {order}")
        self._a = a
        kv = self._void(self.keys)
        self._sort = np.argsort(kv, kind="stable")
        self._sorted_keys = kv[self._sort]
        lmul = np.empty((order, r), dtype=np.int64)
        k64 = self.keys.astype(np.int64)
        for i in range(r):
            lmul[:, i] = self.lookup_keys(k64 - k64[:, i:i + 1] * a[:, i][None, :])
        self.lmul = lmul

    def __len__(self) -> int:
        return len(self.keys)

    def _void(self, keys: np.ndarray) -> np.ndarray:
        keys = np.ascontiguousarray(keys, dtype=np.int16)
        if keys.shape[1] == 0:
            return np.zeros(len(keys), dtype=np.int64)
        return keys.view(np.dtype((np.void, keys.dtype.itemsize * keys.shape[1]))).ravel()

    def lookup_keys(self, keys: np.ndarray) -> np.ndarray:
        kv = self._void(keys)
        pos = np.searchsorted(self._sorted_keys, kv)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        if not np.all(self._sorted_keys[pos] == kv):
            raise KeyError("not a Weyl group element")
        return self._sort[pos]

    def index_of(self, m: Mat) -> int:
        r = self.rs.rank
        if r == 0:
            return 0
        mm = np.array(m, dtype=np.int64).reshape(r, r)
        # w(rho) in weight coordinates: A M rho_root; use 2 rho to stay integral
        img = self._a @ (mm @ np.array(self.rs.two_rho, dtype=np.int64))
        return int(self.lookup_keys((img // 2)[None])[0])

    def word(self, k: int) -> tuple[int, ...]:
        out = []
        while k > 0:
            out.append(int(self.first[k]) + 1)
            k = int(self.parent[k])
        return tuple(out)

    def element(self, k: int) -> WeylElement:
        m = tuple(tuple(int(x) for x in row) for row in self.mats[k])
        return WeylElement(m, self.word(k))

    def multiply_word(self, word: Sequence[int], idx: np.ndarray) -> np.ndarray:
        """Indices of ``w * v`` for all ``v`` in ``idx``, ``w`` given by its word."""
        out = np.asarray(idx)
        for i in reversed(word):
            out = self.lmul[out, i - 1]
        return out

    def closure(self, gen_words: Sequence[Sequence[int]]) -> np.ndarray:
        """Sorted indices of the subgroup generated by the given words."""
        seen = np.zeros(len(self), dtype=bool)
        seen[0] = True
        frontier = np.array([0])
        while len(frontier):
            nxt = []
            for wd in gen_words:
                img = self.multiply_word(wd, frontier)
                img = img[~seen[img]]
                img = np.unique(img)
                seen[img] = True
                nxt.append(img)
            frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.int64)
        return np.flatnonzero(seen)

    def x_matrices(self, datum: RootDatum) -> np.ndarray:
        """Matrices of all elements acting on X: ``I + R (M - I) A^{-1} C``."""
        if datum.root_system != self.rs:
            raise InvalidInput("datum does not belong to this Weyl group")
        n, r = datum.dim, self.rs.rank
        count = len(self)
        if r == 0:
            return np.broadcast_to(np.eye(n, dtype=np.int64), (count, n, n)).copy()
        a_inv = linalg.inverse(self.rs.cartan_matrix)
        det = int(abs(linalg.determinant(self.rs.cartan_matrix)))
        adj = np.array(linalg.integral([[x * det for x in row] for row in a_inv]), dtype=np.int64)
        big_r = np.array(datum.roots_x, dtype=np.int64).T  # N x r
        cv = np.array(datum.coroots_x, dtype=np.int64)      # r x N
        kern = adj @ cv                                     # r x N, scaled by det
        diff = self.mats.astype(np.int64) - np.eye(r, dtype=np.int64)
        num = np.einsum("ij,njk,kl->nil", big_r, diff, kern)
        if np.any(num % det):
            raise AssertionError("Weyl element does not preserve X")
        return num // det + np.eye(n, dtype=np.int64)


@lru_cache(maxsize=8)
def weyl_table(rs: RootSystem, cap: int = DEFAULT_CAP) -> WeylTable:
    return WeylTable(rs, cap)


@lru_cache(maxsize=16)
def _x_matrices(datum: RootDatum, cap: int) -> np.ndarray:
    return weyl_table(datum.root_system, cap).x_matrices(datum)


def enumerate_weyl(rs: RootSystem, cap: int = DEFAULT_CAP) -> list[WeylElement]:
    """All elements, breadth-first by length, lexicographic within a length."""
    table = weyl_table(rs, cap)
    return [table.element(k) for k in range(len(table))]


# -- the affine alcove picture ------------------------------------------------------

class AlcoveData:
    """Per-datum data for the alcove strategy.

    Works in simple-root coordinates of ``V = Q Phi (x) Q``. The translation
    lattice ``L = {y : R y in Z^N}`` contains the root lattice with quotient
    Omega; the extended affine Weyl group is ``W |x L``.
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        rs = datum.root_system
        self.rs = rs
        r = rs.rank
        self.a_inv = linalg.inverse(rs.cartan_matrix) if r else []
        # per component: highest coroot marks and the root theta whose coroot it is
        self.components = []
        for idx in rs.component_indices:
            cands = [a for a in rs.positive_roots if rs.component_of_root(a) == idx[0]]
            top = max(cands, key=lambda a: sum(rs.coroot(a)))
            marks = rs.coroot(top)
            self.components.append((idx, tuple(marks[i] for i in idx), top))
        self.lattice_basis = datum.semisimple_lattice_root_coords
        self.omega = self._omega_elements()

    def weights(self, v: Sequence[Fraction]) -> list[Fraction]:
        a = self.rs.cartan_matrix
        r = self.rs.rank
        return [sum(a[i][j] * v[j] for j in range(r)) for i in range(r)]

    def reduce(self, v: Sequence[Fraction]):
        """Return ``(y, u, tau)`` with ``y = u v + tau`` in the fundamental alcove."""
        rs = self.rs
        r = rs.rank
        v = [Fraction(x) for x in v]
        u = mat_identity(r)
        tau = [0] * r
        while True:
            c = self.weights(v)
            i = next((i for i in range(r) if c[i] < 0), None)
            if i is not None:
                s = _simple_matrix(rs, i)
                v = list(mat_vec(s, v))
                u = mat_mul(s, u)
                tau = list(mat_vec(s, tau))
                continue
            moved = False
            for idx, marks, theta in self.components:
                if sum(m * c[j] for m, j in zip(marks, idx)) > 1:
                    s = rs.reflection_matrix(theta)
                    v = [x + t for x, t in zip(mat_vec(s, v), theta)]
                    u = mat_mul(s, u)
                    tau = [x + t for x, t in zip(mat_vec(s, tau), theta)]
                    moved = True
                    break
            if not moved:
                return v, u, tau

    def _omega_elements(self):
        """(lambda, u_lambda, shift) for each class of L / Z^r.

        ``pi(mu) = u mu + shift`` stabilises the fundamental alcove.
        """
        rs = self.rs
        r = rs.rank
        if r == 0:
            return [((), (), ())]
        reps = _coset_reps(self.lattice_basis, r)
        # interior point: weight coordinates 1/h' on each component
        c = [Fraction(0)] * r
        for idx, marks, _ in self.components:
            h = 1 + sum(marks)
            for j in idx:
                c[j] = Fraction(1, h)
        q = linalg.matvec(self.a_inv, c)
        out = []
        for lam in reps:
            _, u, tau = self.reduce([x + y for x, y in zip(q, lam)])
            ul = mat_vec(u, lam)
            shift = tuple(Fraction(x) + t for x, t in zip(ul, tau))
            out.append((tuple(lam), u, shift))
        return out

    def projection(self, x: Sequence[Fraction]) -> list[Fraction]:
        """Root coordinates of the semisimple part of a point given in X-coordinates."""
        w = self.datum.weight_coords(x)
        return linalg.matvec(self.a_inv, w) if self.rs.rank else []


def _coset_reps(basis: Sequence[Sequence[Fraction]], r: int) -> list[list[Fraction]]:
    """Representatives of L / Z^r for a lattice L containing Z^r (Hermite basis)."""
    reps = {tuple([Fraction(0)] * r)}
    for row in basis:
        new = set(reps)
        frontier = list(reps)
        while frontier:
            nxt = []
            for v in frontier:
                w = tuple(linalg.frac_mod1(x + y) for x, y in zip(v, row))
                if w not in new:
                    new.add(w)
                    nxt.append(w)
            frontier = nxt
        reps = new
    return [list(v) for v in sorted(reps)]


@lru_cache(maxsize=64)
def alcove_data(datum: RootDatum) -> AlcoveData:
    return AlcoveData(datum)


@dataclass(frozen=True)
class AlcoveStabilizer:
    """W(x) = W(Phi_x) . (Omega-part), with the pieces kept apart."""

    integral_roots: tuple[Root, ...]        # positive roots with <alpha^vee, x> in Z
    reflection_info: SubsystemInfo
    omega_lifts: tuple[Mat, ...]            # linear parts of the Omega-stabiliser
    order: int


def integral_positive_roots(datum: RootDatum, x: Sequence[Fraction], scale: int = 1
                            ) -> list[Root]:
    """Positive roots alpha with ``scale * <alpha^vee, x>`` integral."""
    rs = datum.root_system
    w = datum.weight_coords(x)
    out = []
    for a in rs.positive_roots:
        b = rs.coroot(a)
        val = sum(bi * wi for bi, wi in zip(b, w) if bi)
        if (scale * val).denominator == 1:
            out.append(a)
    return out


def alcove_stabilizer(datum: RootDatum, x: Sequence[Fraction]) -> AlcoveStabilizer:
    """Stabiliser of ``x`` (X-coordinates) modulo X, via the fundamental alcove."""
    rs = datum.root_system
    data = alcove_data(datum)
    roots = integral_positive_roots(datum, x)
    info = subsystem_info(rs, roots)
    if rs.rank == 0:
        return AlcoveStabilizer((), info, (), 1)
    p = data.projection(x)
    y, u, _ = data.reduce(p)
    u_inv = mat_inverse_int(u)
    lifts = []
    for _, ul, shift in data.omega:
        img = [Fraction(s) + t for s, t in zip(mat_vec(ul, y), shift)]
        if img == y:
            lifts.append(mat_mul(mat_mul(u_inv, ul), u))
    # sanity: every generator really fixes x modulo X
    for m in lifts + [rs.reflection_matrix(a) for a in info.simple_roots]:
        xm = datum.x_matrix(m)
        diff = [sum(c * xx for c, xx in zip(row, x)) - xi for row, xi in zip(xm, x)]
        if any(Fraction(d).denominator != 1 for d in diff):
            raise AssertionError("alcove stabiliser produced an element outside W(x)")
    return AlcoveStabilizer(tuple(roots), info, tuple(lifts), info.weyl_order * len(lifts))


def brute_stabilizer_indices(datum: RootDatum, x: Sequence[Fraction], cap: int = DEFAULT_CAP
                             ) -> np.ndarray:
    """Indices into the Weyl table of ``{w : w x - x in X}`` by exhaustive scan."""
    xs = _x_matrices(datum, cap)
    d = linalg.common_denominator(x)
    k = np.array([int(Fraction(c) * d) for c in x], dtype=np.int64)
    return np.flatnonzero(kernels.stabilizer_mask(xs, k, d))


def stabilizer_mod_lattice(datum: RootDatum, x: Sequence, strategy: str = "alcove",
                           cap: int = DEFAULT_CAP, coords: str = "user") -> WeylSubgroup:
    """W(x) for a point of X (x) Q given in user (default) or X-coordinates."""
    x = tuple(linalg.to_fraction(c) for c in x)
    if coords == "user":
        x = datum.to_x(x)
    rs = datum.root_system
    if strategy == "brute":
        table = weyl_table(rs, cap)
        idx = brute_stabilizer_indices(datum, x, cap)
        elems = frozenset(table.element(int(k)) for k in idx)
        gens = tuple(sorted((e for e in elems if e.word), key=lambda e: (len(e.word), e.word)))
        return WeylSubgroup(gens, len(elems), elems)
    if strategy != "alcove":
        raise InvalidInput(f"unknown strategy {strategy!r}")
    st = alcove_stabilizer(datum, x)
    gens = [reflection(rs, a) for a in st.reflection_info.simple_roots]
    gens += [element(rs, m) for m in st.omega_lifts]
    gens = tuple(sorted({g for g in gens if g.word}, key=lambda e: (len(e.word), e.word)))
    return WeylSubgroup(gens, st.order)
