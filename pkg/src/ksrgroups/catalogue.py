"""Built-in transfer data and restriction configurations."""
from __future__ import annotations

from .root_datum import InvalidInput, build_root_system
from .transfer import TransferDatum, load_transfer_datum

IDENTITY_TYPES = ("A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4", "E6")


def _root_index(type_name: str, coords) -> int:
    rs = build_root_system(type_name)
    return rs.root_index[tuple(coords)] + 1


def identity_doc(type_name: str) -> dict:
    rs = build_root_system(type_name)
    t = rs.components[0]
    datum = {"type": t.series, "rank": t.rank, "char_lattice": "weight"}
    n = rs.rank
    return {
        "name": f"identity-{type_name}",
        "source": datum,
        "target": datum,
        "embedding": [[int(i == j) for j in range(n)] for i in range(n)],
        "root_map": [[i + 1, i + 1] for i in range(n)],
        "weyl_map": [[i + 1] for i in range(n)],
    }


def _gl_inner(m: int, k: int) -> dict:
    """GL_m over a degree-k^2 division algebra inside GL_{mk}: blocks of size k."""
    n = m * k
    emb = [[int(i // k == j) for j in range(m)] for i in range(n)]
    pairs = []
    for i in range(m - 1):
        coords = [int(i * k <= j < (i + 1) * k) for j in range(n - 1)]
        # e_{ik+1} - e_{(i+1)k+1} = alpha_{ik+1} + ... + alpha_{(i+1)k}
        pairs.append([i + 1, _root_index(f"A{n - 1}", coords)])
    return {
        "name": f"gl{m}D-in-gl{n}",
        "source": {"group": "GL", "n": m},
        "target": {"group": "GL", "n": n},
        "embedding": emb,
        "root_map": pairs,
    }


def _catalogue_docs() -> dict[str, dict]:
    docs = {f"identity-{t}": identity_doc(t) for t in IDENTITY_TYPES}
    docs["sl1D-in-sl2"] = {
        "name": "sl1D-in-sl2",
        "source": "anisotropic",
        "source_torsion": [2],
        "target": {"type": "A", "rank": 1, "char_lattice": "weight"},
        "embedding": [[]],
        "torsion_embedding": [[1]],
        "root_map": [],
    }
    docs["gl2D-in-gl4"] = _gl_inner(2, 2)
    docs["gl3D-in-gl6"] = _gl_inner(3, 2)
    docs["aniso-in-sp4"] = {
        "name": "aniso-in-sp4",
        "source": "anisotropic",
        "source_torsion": [2],
        "target": {"type": "C", "rank": 2, "char_lattice": "weight"},
        "embedding": [[], []],
        "torsion_embedding": [[1], [0]],
        "root_map": [],
    }
    return docs


CATALOGUE = _catalogue_docs()

RESTRICTIONS = {
    f"gl{n}-sl{n}": {"datum": {"group": "GL", "n": n}, "sublattice": "derived"}
    for n in (2, 3, 4)
}
RESTRICTIONS["gl2-sl2"]["character"] = "0,1/2"
RESTRICTIONS["gl3-sl3"]["character"] = "0,1/3,2/3"
RESTRICTIONS["gl4-sl4"]["character"] = "0,1/4,1/2,3/4"


def catalogue_names() -> list[str]:
    return sorted(CATALOGUE)


def transfer_doc(name: str) -> dict:
    if name in CATALOGUE:
        return CATALOGUE[name]
    if name.startswith("identity-"):
        return identity_doc(name.split("-", 1)[1].upper())
    raise InvalidInput(f"unknown catalogue entry {name!r}; known: {', '.join(catalogue_names())}")


def get_transfer(name: str) -> TransferDatum:
    return load_transfer_datum(transfer_doc(name))
