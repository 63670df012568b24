"""Cartan matrices, weight lattices and positive roots of the simple types.

Everything downstream is driven by exact integer data: a weight is an integer
vector in the fundamental-weight basis, a root an integer vector in the
simple-root basis, and the Cartan matrix is the change of basis between them.
Node numbering follows the usual textbook Dynkin diagram ordering (for the E
series: the chain is 1-3-4-5-6-7-8 and node 2 hangs off node 4).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class CartanError(ValueError):
    """Invalid simple type, rank, or node index."""


def _chain(n, i, j):
    return 1 if abs(i - j) == 1 else 0


def cartan_matrix(type_label: str, rank: int) -> list[list[int]]:
    """Cartan matrix c[i][j] (0-based) of the simple type, standard numbering."""
    t, n = type_label.upper(), rank
    if t == "A" and n >= 1:
        bonds = {(i, j): 1 for i in range(n) for j in range(n) if abs(i - j) == 1}
    elif t == "B" and n >= 2:
        bonds = {(i, j): 1 for i in range(n) for j in range(n) if abs(i - j) == 1}
        bonds[(n - 2, n - 1)] = 2  # last root short
    elif t == "C" and n >= 2:
        bonds = {(i, j): 1 for i in range(n) for j in range(n) if abs(i - j) == 1}
        bonds[(n - 1, n - 2)] = 2  # last root long
    elif t == "D" and n >= 3:
        bonds = {(i, j): 1 for i in range(n - 1) for j in range(n - 1) if abs(i - j) == 1}
        bonds[(n - 3, n - 1)] = bonds[(n - 1, n - 3)] = 1
        bonds.pop((n - 2, n - 1), None)
        bonds.pop((n - 1, n - 2), None)
    elif t == "E" and n in (6, 7, 8):
        chain = [0] + list(range(2, n))  # nodes 1,3,4,...,n (0-based)
        bonds = {}
        for a, b in zip(chain, chain[1:]):
            bonds[(a, b)] = bonds[(b, a)] = 1
        bonds[(1, 3)] = bonds[(3, 1)] = 1  # node 2 attached to node 4
    elif t == "F" and n == 4:
        bonds = {(0, 1): 1, (1, 0): 1, (1, 2): 2, (2, 1): 1, (2, 3): 1, (3, 2): 1}
    elif t == "G" and n == 2:
        bonds = {(0, 1): 1, (1, 0): 3}
    else:
        raise CartanError(f"invalid simple type {type_label}{rank}")
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        for j in range(n):
            if i != j and bonds.get((i, j)):
                c[i][j] = -bonds[(i, j)]
    return c


def _root_halfnorms(type_label: str, rank: int) -> list[int]:
    """d_i = (beta_i, beta_i)/2 with short roots normalized to 1."""
    t, n = type_label.upper(), rank
    if t == "B":
        return [2] * (n - 1) + [1]
    if t == "C":
        return [1] * (n - 1) + [2]
    if t == "F":
        return [2, 2, 1, 1]
    if t == "G":
        return [1, 3]
    return [1] * n


@dataclass(frozen=True)
class RootSystem:
    """A simple root system: Cartan matrix plus the closed set of positive roots.

    Positive roots are stored in the simple-root basis; ``root_weights`` holds
    the same roots in fundamental-weight coordinates. The first ``rank`` entries
    of both lists are the simple roots, in node order.
    """

    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    halfnorms: tuple[int, ...]
    positive_roots: tuple[tuple[int, ...], ...]
    root_weights: tuple[tuple[int, ...], ...] = field(repr=False)
    root_index: dict = field(repr=False, hash=False, compare=False)

    @property
    def tag(self) -> str:
        return f"{self.type_label}{self.rank}"

    def reflect_weight(self, i: int, coords: Sequence[int]) -> tuple[int, ...]:
        """Apply the simple reflection in node ``i`` (1-based) to a weight.

        Fixes omega_k for k != i and sends omega_i to omega_i - sum_j c_ij omega_j;
        on coordinates this is lambda_j -> lambda_j - lambda_i * c_ij.
        """
        if not 1 <= i <= self.rank:
            raise CartanError(f"node index {i} out of range 1..{self.rank}")
        li = coords[i - 1]
        if li == 0:
            return tuple(coords)
        row = self.cartan[i - 1]
        return tuple(v - li * row[j] for j, v in enumerate(coords))

    def reflect_root(self, i: int, root: Sequence[int]) -> tuple[int, ...]:
        """Simple reflection acting on simple-root coordinates."""
        if not 1 <= i <= self.rank:
            raise CartanError(f"node index {i} out of range 1..{self.rank}")
        pair = sum(a * self.cartan[j][i - 1] for j, a in enumerate(root))
        out = list(root)
        out[i - 1] -= pair
        return tuple(out)

    def root_to_weight(self, root: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of sum_i a_i beta_i in the fundamental-weight basis."""
        return tuple(
            sum(root[i] * self.cartan[i][j] for i in range(self.rank))
            for j in range(self.rank)
        )

    def apply_word(self, word: Iterable[int], coords: Sequence[int]) -> tuple[int, ...]:
        """Apply sigma_{i_1} o ... o sigma_{i_r} to weight coordinates."""
        v = tuple(coords)
        for i in reversed(tuple(word)):
            v = self.reflect_weight(i, v)
        return v

    def root_norm(self, root: Sequence[int]) -> int:
        """(alpha, alpha) in the normalization with short roots of norm 2."""
        n = self.rank
        return sum(
            root[i] * root[j] * self.cartan[i][j] * self.halfnorms[j]
            for i in range(n)
            for j in range(n)
            if root[i] and root[j]
        )

    def pairing(self, coords: Sequence[int], root: Sequence[int]) -> int:
        """Integer pairing <lambda, alpha^vee> of a weight with a root's coroot."""
        norm = self.root_norm(root)
        num = 2 * sum(
            a * d * l for a, d, l in zip(root, self.halfnorms, coords) if a and l
        )
        if num % norm:
            raise ArithmeticError("non-integral pairing; corrupted root data")
        return num // norm

    def coroot_pairing_vector(self, root: Sequence[int]) -> tuple[int, ...]:
        """Vector p with <lambda, alpha^vee> = sum_j p_j lambda_j."""
        norm = self.root_norm(root)
        return tuple(2 * a * d // norm for a, d in zip(root, self.halfnorms))


def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Build the root system of a simple type, enumerating all positive roots.

    Positive roots are generated by closing the simple roots under the simple
    reflections, keeping only vectors with nonnegative simple-root coordinates;
    they are listed simple roots first, then by (height, coordinates).
    """
    c = cartan_matrix(type_label, rank)
    n = rank
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    cart = tuple(tuple(row) for row in c)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(1, n + 1):
                pair = sum(a * cart[j][i - 1] for j, a in enumerate(root))
                out = list(root)
                out[i - 1] -= pair
                cand = tuple(out)
                if cand not in seen and all(x >= 0 for x in cand):
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    rest = sorted(seen - set(simples), key=lambda r: (sum(r), r))
    roots = tuple(simples + rest)
    rs = RootSystem(
        type_label=type_label.upper(),
        rank=rank,
        cartan=cart,
        halfnorms=tuple(_root_halfnorms(type_label, rank)),
        positive_roots=roots,
        root_weights=tuple(
            tuple(sum(r[i] * cart[i][j] for i in range(n)) for j in range(n))
            for r in roots
        ),
        root_index={r: k for k, r in enumerate(roots)},
    )
    return rs


_ROOT_SYSTEMS: dict[tuple[str, int], RootSystem] = {}


def root_system(tag_or_type: str, rank: int | None = None) -> RootSystem:
    """Memoized root-system lookup, by tag ("F4", "E8") or (type, rank)."""
    if rank is None:
        t, r = tag_or_type[0], tag_or_type[1:]
        if not r.isdigit():
            raise CartanError(f"cannot parse root system tag {tag_or_type!r}")
        tag_or_type, rank = t, int(r)
    key = (tag_or_type.upper(), rank)
    if key not in _ROOT_SYSTEMS:
        _ROOT_SYSTEMS[key] = build_root_system(*key)
    return _ROOT_SYSTEMS[key]


@dataclass(frozen=True)
class Preset:
    """A named (G, K) configuration: ambient group plus defining node set.

    ``generator_words`` fixes the published choice of ring generators (beyond
    the degree-1 class) by their Weyl coordinates. Several classes can be
    equally valid generators in one degree, so the classical presentations pin
    a specific pick; the pipeline verifies the choice instead of trusting it,
    and derives one itself when no words are configured.
    """

    name: str
    type_label: str
    rank: int
    nodes: tuple[int, ...]
    generator_words: tuple[tuple[int, ...], ...] = ()

    def root_system(self) -> RootSystem:
        return root_system(self.type_label, self.rank)


# The seven flag-variety configurations shipped as named presets, keyed by the
# ambient group and the semisimple part of the parabolic they quotient by.
PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset(
            "F4/C3", "F", 4, (1,),
            ((3, 2, 1), (4, 3, 2, 1), (3, 2, 4, 3, 2, 1)),
        ),
        Preset("F4/B3", "F", 4, (4,), ((3, 2, 3, 4),)),
        Preset(
            "E6/A6", "E", 6, (2,),
            ((5, 4, 2), (6, 5, 4, 2), (1, 3, 6, 5, 4, 2)),
        ),
        Preset("E6/D5", "E", 6, (6,), ((2, 4, 5, 6),)),
        Preset(
            "E7/D6", "E", 7, (1,),
            ((2, 4, 3, 1), (2, 6, 5, 4, 3, 1), (3, 4, 2, 7, 6, 5, 4, 3, 1)),
        ),
        Preset(
            "E7/E6", "E", 7, (7,),
            ((2, 4, 5, 6, 7), (1, 5, 4, 2, 3, 4, 5, 6, 7)),
        ),
        Preset(
            "E8/E7", "E", 8, (8,),
            (
                (3, 4, 5, 6, 7, 8),
                (1, 5, 4, 2, 3, 4, 5, 6, 7, 8),
                (5, 4, 3, 1, 7, 6, 5, 4, 2, 3, 4, 5, 6, 7, 8),
            ),
        ),
    )
}


def resolve_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise CartanError(
            f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}"
        ) from None
