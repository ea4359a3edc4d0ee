"""Classification sweeps over orbit representatives, and the atlas tables."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .character import WUCharacter, enumerate_characters_upto
from .rgroup import QParameters, compute_rgroup, keys_check
from .root_datum import (CartanType, FiniteAbelianGroup, LatticeSpec, RootDatum,
                         build_root_datum, build_root_system, intermediate_lattices)

# The classification sweep: simply connected data and denominator bounds
KEYS_SWEEP: tuple[tuple[str, int], ...] = (
    ("A1", 12), ("A2", 12), ("A3", 12), ("A4", 12),
    ("B2", 12), ("B3", 12), ("B4", 12),
    ("C2", 12), ("C3", 12), ("C4", 12),
    ("D4", 12), ("D5", 12), ("G2", 12), ("F4", 12), ("E6", 6),
)


@dataclass(frozen=True)
class AtlasEntry:
    cartan_type: CartanType
    lattice: str
    q_label: str
    character: str
    order: int
    x_key: tuple
    w_chi_order: int
    w_circ_order: int
    w_circ_type: str
    structure: FiniteAbelianGroup
    keys_pass: bool

    @property
    def sort_key(self) -> tuple:
        return (self.cartan_type.series, self.cartan_type.rank, self.lattice, self.q_label,
                self.order, self.x_key)

    def to_doc(self) -> dict:
        return {
            "type": str(self.cartan_type),
            "lattice": self.lattice,
            "q": self.q_label,
            "character": self.character,
            "W_chi_order": self.w_chi_order,
            "W_circ_order": self.w_circ_order,
            "W_circ_type": self.w_circ_type,
            "R_structure": list(self.structure.invariant_factors),
            "keys_check": self.keys_pass,
        }


def lattice_choices(t: CartanType | str, central_free_rank: int = 0) -> list[tuple[str, LatticeSpec]]:
    """Simply connected, adjoint, and every intermediate lattice (labelled int1, int2, ...)."""
    rs = build_root_system(t)
    out = [("sc", LatticeSpec("weight", (), central_free_rank)),
           ("ad", LatticeSpec("root", (), central_free_rank))]
    for k, spec in enumerate(intermediate_lattices(rs), start=1):
        out.append((f"int{k}", LatticeSpec("intermediate", spec.generators, central_free_rank)))
    return out


def q_label(q: QParameters) -> str:
    if not q.overrides:
        return "q1" if q.default else "q-all"
    body = ",".join(f"{k + 1}:{'1' if v else 'x'}" for k, v in q.overrides)
    return f"q[{body}]"


def _entry(t: CartanType, lattice: str, datum: RootDatum, chi: WUCharacter,
           q: QParameters) -> AtlasEntry:
    res = compute_rgroup(datum, chi, q)
    check = keys_check(t, datum, res)
    return AtlasEntry(t, lattice, q_label(q), chi.label, chi.order, chi.x, res.w_chi.order,
                      res.w_circ.order, res.w_circ_type, res.structure, check.passed)


def _worker(args):
    t, lattice, spec, dmax, qs = args
    datum = build_root_datum(build_root_system(t), spec)
    return [_entry(t, lattice, datum, chi, q)
            for chi in enumerate_characters_upto(datum, dmax) for q in qs]


def classify(t: CartanType | str, lattice: str = "sc", max_denominator: int = 6,
             qs: Sequence[QParameters] = (QParameters(),), jobs: int = 1,
             spec: LatticeSpec | None = None) -> list[AtlasEntry]:
    """R-groups of every orbit representative with denominator up to the bound."""
    t = CartanType.parse(t) if isinstance(t, str) else t
    if spec is None:
        specs = dict(lattice_choices(t))
        if lattice not in specs:
            raise ValueError(f"unknown lattice {lattice!r}; choose from {sorted(specs)}")
        spec = specs[lattice]
    return sorted(_run([(t, lattice, spec, max_denominator, tuple(qs))], jobs),
                  key=lambda e: e.sort_key)


def _run(tasks: list, jobs: int) -> list[AtlasEntry]:
    out = []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_worker, tasks):
                out.extend(part)
    else:
        for task in tasks:
            out.extend(_worker(task))
    return out


def attained_structures(entries: Iterable[AtlasEntry]) -> dict[str, list[str]]:
    """Nontrivial structures attained per type, sorted by (order, factors)."""
    found: dict[str, set] = {}
    for e in entries:
        found.setdefault(str(e.cartan_type), set())
        if not e.structure.is_trivial:
            found[str(e.cartan_type)].add(e.structure)
    return {t: [str(g) for g in sorted(s, key=lambda g: (g.order, g.invariant_factors))]
            for t, s in found.items()}


def atlas(sweep: Sequence[tuple[str, int]] = KEYS_SWEEP, all_lattices: bool = False,
          qs: Sequence[QParameters] = (QParameters(),), jobs: int = 1) -> list[AtlasEntry]:
    tasks = []
    for name, dmax in sweep:
        t = CartanType.parse(name)
        choices = lattice_choices(t) if all_lattices else lattice_choices(t)[:1]
        for lattice, spec in choices:
            tasks.append((t, lattice, spec, dmax, tuple(qs)))
    return sorted(_run(tasks, jobs), key=lambda e: e.sort_key)


def render_markdown(entries: Sequence[AtlasEntry], title: str = "R-group atlas") -> str:
    lines = [f"# {title}", ""]
    attained = attained_structures(entries)
    lines += ["| type | nontrivial R attained |", "|---|---|"]
    for t in sorted(attained, key=lambda s: (s[0], int(s[1:]))):
        lines.append(f"| {t} | {', '.join(attained[t]) or 'none'} |")
    lines += ["", "| type | lattice | q | character | W(chi) | W-circle | R | keys |",
              "|---|---|---|---|---|---|---|---|"]
    for e in entries:
        lines.append(f"| {e.cartan_type} | {e.lattice} | {e.q_label} | {e.character} | "
                     f"{e.w_chi_order} | {e.w_circ_order} ({e.w_circ_type}) | {e.structure} | "
                     f"{'pass' if e.keys_pass else 'FAIL'} |")
    return "\n".join(lines) + "\n"
