"""Minimal coset representatives of parabolic Weyl subgroups.

For a root system and a node subset K, the Weyl orbit of b = sum_{k in K} w_k
is in bijection with the cosets w W_K; the orbit point w(b) identifies a coset
and the stored word is the unique lexicographically minimal reduced word of its
minimal-length representative. Representatives are indexed by (length r, i)
with i the 1-based position in lex order within each length.

The whole table is built by breadth-first search on orbit points: a point's
minimal word is its smallest "descent" letter followed by the minimal word of
the reflected point, so lex minimality is inherited layer by layer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cartan import CartanError, RootSystem


class CosetError(ValueError):
    pass


@dataclass(frozen=True)
class CosetRep:
    word: tuple[int, ...]
    length: int
    index: int  # 1-based position within its length, lex order
    point: tuple[int, ...]  # image of b under the representative


@dataclass
class CosetTable:
    rs: RootSystem
    nodes: tuple[int, ...]
    reps: list[CosetRep]
    truncated: bool = False
    point_index: dict = field(default_factory=dict, repr=False)
    by_degree: list = field(default_factory=list, repr=False)
    rho_points: list = field(default_factory=list, repr=False)
    # left-multiplication by sigma_i restricted to the table:
    # down[i-1][id] = id' with sigma_i w = w' shorter, -1 if i is not a descent
    down: list = field(default_factory=list, repr=False)
    up: list = field(default_factory=list, repr=False)
    _bruhat: list | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.reps)

    @property
    def top_degree(self) -> int:
        return self.reps[-1].length if self.reps else 0

    def id_of(self, degree: int, index: int) -> int:
        """Table id of the representative (degree, index), indices 1-based."""
        if degree >= len(self.by_degree) or not 1 <= index <= len(self.by_degree[degree]):
            raise CosetError(f"no representative ({degree},{index})")
        return self.by_degree[degree][index - 1]

    def label(self, rep_id: int) -> tuple[int, int]:
        r = self.reps[rep_id]
        return (r.length, r.index)

    def id_of_point(self, point) -> int:
        try:
            return self.point_index[tuple(point)]
        except KeyError:
            raise CosetError(f"orbit point {tuple(point)} not in table") from None

    def id_of_word(self, word) -> int:
        """Id of the coset containing the product of the given letters."""
        b = self.basepoint()
        return self.id_of_point(self.rs.apply_word(word, b))

    def basepoint(self) -> tuple[int, ...]:
        return tuple(1 if (j + 1) in self.nodes else 0 for j in range(self.rs.rank))

    def counts_by_degree(self) -> list[int]:
        """beta(r) for r = 0..top; requires a complete table."""
        if self.truncated:
            raise CosetError("counts_by_degree on a truncated table")
        return [len(ids) for ids in self.by_degree]

    def is_minimal_rep_word(self, word) -> bool:
        """Criterion for minimal coset representatives: w(beta_j) > 0, j not in K."""
        rs = self.rs
        for j in range(1, rs.rank + 1):
            if j in self.nodes:
                continue
            img = rs.apply_word(word, rs.root_weights[j - 1])
            coeffs = _weight_to_root(rs, img)
            if any(c < 0 for c in coeffs):
                return False
        return True

    def bruhat_masks(self) -> list[int]:
        """bit u of mask[w] set iff u <= w in Bruhat order (induced on reps)."""
        if self._bruhat is None:
            masks = [0] * len(self.reps)
            for wid, rep in enumerate(self.reps):
                if rep.length == 0:
                    masks[wid] = 1 << wid
                    continue
                i = rep.word[0]
                down_i = self.down[i - 1]
                sub = masks[down_i[wid]]
                lifted = sub
                for uid in range(len(self.reps)):
                    d = down_i[uid]
                    if d >= 0 and (sub >> d) & 1:
                        lifted |= 1 << uid
                masks[wid] = lifted
            self._bruhat = masks
        return self._bruhat

    def bruhat_leq(self, u: int, w: int) -> bool:
        return bool((self.bruhat_masks()[w] >> u) & 1)


def _weight_to_root(rs: RootSystem, weight) -> tuple:
    """Solve C^T a = weight for simple-root coordinates a (rational-free check).

    Used only in validity tests on root images, where the result is integral.
    """
    n = rs.rank
    # Gaussian elimination over rationals via fractions-free scaling is overkill
    # for n <= 8; do exact elimination with Fraction.
    from fractions import Fraction

    A = [[Fraction(rs.cartan[i][j]) for i in range(n)] for j in range(n)]
    v = [Fraction(x) for x in weight]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col])
        A[col], A[piv] = A[piv], A[col]
        v[col], v[piv] = v[piv], v[col]
        inv = A[col][col]
        A[col] = [x / inv for x in A[col]]
        v[col] /= inv
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
                v[r] -= f * v[col]
    return tuple(v)


def enumerate_cosets(
    rs: RootSystem, nodes, max_length: int | None = None
) -> CosetTable:
    """Build the table of minimal coset representatives for W_K \\subset W.

    BFS from the dominant base point; each new orbit point is recorded with the
    lex smallest word, and each length layer is sorted by word so the (r, i)
    indexing is deterministic. With ``max_length`` the table stops after that
    layer and is marked truncated if cosets remain.
    """
    nodes = tuple(sorted(set(int(k) for k in nodes)))
    if not nodes:
        raise CosetError("node subset K must be nonempty")
    if any(not 1 <= k <= rs.rank for k in nodes):
        raise CosetError(f"nodes {nodes} out of range 1..{rs.rank}")
    n = rs.rank
    b = tuple(1 if (j + 1) in nodes else 0 for j in range(n))
    rho = (1,) * n

    words: dict[tuple, tuple] = {b: ()}
    rho_of: dict[tuple, tuple] = {b: rho}
    layers: list[list[tuple]] = [[b]]
    truncated = False
    while True:
        if max_length is not None and len(layers) - 1 >= max_length:
            # peek whether another layer exists
            for pt in layers[-1]:
                for i in range(1, n + 1):
                    if pt[i - 1] > 0 and rs.reflect_weight(i, pt) not in words:
                        truncated = True
                        break
                if truncated:
                    break
            break
        frontier = {}
        for pt in layers[-1]:
            for i in range(1, n + 1):
                if pt[i - 1] > 0:
                    img = rs.reflect_weight(i, pt)
                    if img not in words:
                        frontier[img] = None
        if not frontier:
            break
        layer = []
        for pt in frontier:
            # lex-minimal word: smallest descent letter + parent's minimal word
            i = next(j for j in range(1, n + 1) if pt[j - 1] < 0)
            parent = rs.reflect_weight(i, pt)
            words[pt] = (i,) + words[parent]
            rho_of[pt] = rs.reflect_weight(i, rho_of[parent])
            layer.append(pt)
        layer.sort(key=lambda p: words[p])
        layers.append(layer)

    reps: list[CosetRep] = []
    point_index: dict[tuple, int] = {}
    by_degree: list[list[int]] = []
    rho_points: list[tuple] = []
    for r, layer in enumerate(layers):
        ids = []
        for idx, pt in enumerate(layer, start=1):
            point_index[pt] = len(reps)
            ids.append(len(reps))
            reps.append(CosetRep(word=words[pt], length=r, index=idx, point=pt))
            rho_points.append(rho_of[pt])
        by_degree.append(ids)

    down = [[-1] * len(reps) for _ in range(n)]
    up = [[-1] * len(reps) for _ in range(n)]
    for wid, rep in enumerate(reps):
        for i in range(1, n + 1):
            c = rep.point[i - 1]
            if c == 0:
                continue
            img = rs.reflect_weight(i, rep.point)
            target = point_index.get(img, -1)
            if target < 0:
                continue  # only possible for truncated tables
            if c < 0:
                down[i - 1][wid] = target
            else:
                up[i - 1][wid] = target

    return CosetTable(
        rs=rs,
        nodes=nodes,
        reps=reps,
        truncated=truncated,
        point_index=point_index,
        by_degree=by_degree,
        rho_points=rho_points,
        down=down,
        up=up,
    )


def minimized_word(table: CosetTable, element) -> tuple[int, ...]:
    """The stored lex-minimal reduced word of a representative.

    ``element`` may be a table id, a (degree, index) pair, an orbit point, or a
    word whose product must itself be the minimal representative. A length-2
    tuple that is a valid (degree, index) pair is read as one; pass an explicit
    list to force the word reading.
    """
    rid, via_word = _locate(table, element)
    if via_word is not None:
        # the product must be the representative itself, not a longer coset member
        rho = table.rs.apply_word(via_word, (1,) * table.rs.rank)
        if rho != table.rho_points[rid]:
            raise CosetError(f"word {via_word} is not a minimal coset representative")
    return table.reps[rid].word


def _locate(table: CosetTable, element):
    if isinstance(element, int):
        return element, None
    word_only = isinstance(element, list)
    element = tuple(element)
    if not word_only and len(element) == 2 and element not in table.point_index:
        deg, idx = element
        if deg < len(table.by_degree) and 1 <= idx <= len(table.by_degree[deg]):
            return table.id_of(deg, idx), None
    if element in table.point_index:
        return table.point_index[element], None
    # treat as a word
    if all(isinstance(x, int) and 1 <= x <= table.rs.rank for x in element):
        pt = table.rs.apply_word(element, table.basepoint())
        if pt in table.point_index:
            return table.point_index[pt], element
    raise CosetError(f"element {element!r} not found in table")


def inversion_count(rs: RootSystem, word) -> int:
    """Number of positive roots sent negative by the product of the word."""
    count = 0
    for root in rs.positive_roots:
        img = list(root)
        for i in reversed(tuple(word)):
            pair = sum(a * rs.cartan[j][i - 1] for j, a in enumerate(img) if a)
            img[i - 1] -= pair
        if any(x < 0 for x in img):
            count += 1
    return count


def all_minimal_words(rs: RootSystem, table: CosetTable, rep_id: int) -> list[tuple]:
    """Brute-force all reduced words of a representative (small lengths only).

    Independent oracle for lex minimality: recursively strip every descent.
    """
    rep = table.reps[rep_id]

    def rec(point, rho_pt, length):
        if length == 0:
            return [()]
        out = []
        for i in range(1, rs.rank + 1):
            if rho_pt[i - 1] < 0:  # left descent of the element
                sub = rec(
                    rs.reflect_weight(i, point),
                    rs.reflect_weight(i, rho_pt),
                    length - 1,
                )
                out.extend((i,) + w for w in sub)
        return out

    return rec(rep.point, table.rho_points[rep_id], rep.length)


TABLE_SCHEMA_VERSION = 1


def table_to_json(table: CosetTable) -> dict:
    """Documented JSON schema: config plus per-rep word/length/index."""
    return {
        "schema": TABLE_SCHEMA_VERSION,
        "type": table.rs.type_label,
        "rank": table.rs.rank,
        "nodes": list(table.nodes),
        "truncated": table.truncated,
        "reps": [
            {"word": list(r.word), "length": r.length, "index": r.index}
            for r in table.reps
        ],
    }


def table_from_json(data: dict, rs: RootSystem) -> CosetTable:
    """Rebuild a table from its JSON form (derived maps are recomputed)."""
    if data.get("schema") != TABLE_SCHEMA_VERSION:
        raise CosetError(f"unsupported table schema {data.get('schema')}")
    if data["type"] != rs.type_label or data["rank"] != rs.rank:
        raise CosetError("table JSON does not match the root system")
    nodes = tuple(sorted(data["nodes"]))
    cap = max((r["length"] for r in data["reps"]), default=0) if data["truncated"] else None
    table = enumerate_cosets(rs, nodes, max_length=cap)
    got = [(tuple(r["word"]), r["length"], r["index"]) for r in data["reps"]]
    want = [(r.word, r.length, r.index) for r in table.reps]
    if got != want:
        raise CosetError("table JSON is inconsistent with a fresh enumeration")
    return table


def dump_table(table: CosetTable) -> str:
    return json.dumps(table_to_json(table), sort_keys=True, separators=(",", ":"))
