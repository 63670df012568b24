"""Independent Littlewood-Richardson oracle for type-A Grassmannians.

Classes on the Grassmannian of k-planes in C^n are partitions inside a
k x (n-k) box; the structure constant c^lam_{mu,nu} counts column-strict skew
tableaux of shape lam/mu and content nu whose reverse reading word is a
lattice word. This module implements that tableau rule directly, with no
shared code with the product engine, plus the dictionary between minimal
coset representatives and partitions.
"""

from __future__ import annotations

from .cosets import CosetTable


def rep_partition(table: CosetTable, rep_id: int) -> tuple[int, ...]:
    """Partition of a representative on an (A_{n-1}, K={k}) table.

    The orbit point determines which k of the n coordinate axes the
    representative selects; sorted positions s_1 < ... < s_k give parts
    lambda_j = s_{k+1-j} - (k+1-j).
    """
    if table.rs.type_label != "A" or len(table.nodes) != 1:
        raise ValueError("rep_partition needs an (A_{n-1}, K={k}) table")
    k = table.nodes[0]
    n = table.rs.rank + 1
    coords = table.reps[rep_id].point
    # cumulative sums recover the coordinate vector in the permutation model
    levels = [0] * n
    for i in range(n - 2, -1, -1):
        levels[i] = levels[i + 1] + coords[i]
    base = min(levels)
    subset = sorted(i + 1 for i, v in enumerate(levels) if v != base)
    if len(subset) != k:
        raise ValueError("orbit point does not select a k-subset")
    lam = tuple(subset[k - 1 - j] - (k - j) for j in range(k))
    return tuple(p for p in lam if p)


def lr_coefficient(lam, mu, nu) -> int:
    """Number of Littlewood-Richardson tableaux of shape lam/mu, content nu."""
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    rows = len(lam)
    mu = mu + (0,) * (rows - len(mu))
    if any(m > l for m, l in zip(mu, lam)):
        return 0
    cells = []
    for r in range(rows):
        for c in range(mu[r], lam[r]):
            cells.append((r, c))
    nmax = len(nu)
    filling: dict = {}
    count = 0

    def feasible_entry(r, c, v):
        # cells fill right-to-left within a row, so the right neighbor is known
        if c + 1 < lam[r]:
            right = filling.get((r, c + 1))
            if right is not None and v > right:
                return False
        if r > 0 and mu[r - 1] <= c < lam[r - 1]:
            above = filling.get((r - 1, c))
            if above is None or v <= above:
                return False
        return True

    def rec(i, remaining, word_counts):
        nonlocal count
        if i == len(cells):
            count += 1
            return
        r, c = cells[i]
        for v in range(1, nmax + 1):
            if remaining[v - 1] == 0:
                continue
            if not feasible_entry(r, c, v):
                continue
            # lattice condition on the reverse reading word: when this cell is
            # read, #v placed so far must stay below #(v-1)
            if v > 1 and word_counts[v - 1] + 1 > word_counts[v - 2]:
                continue
            filling[(r, c)] = v
            remaining[v - 1] -= 1
            word_counts[v - 1] += 1
            rec(i + 1, remaining, word_counts)
            word_counts[v - 1] -= 1
            remaining[v - 1] += 1
            del filling[(r, c)]

    # reading order must match the lattice-word scan: right-to-left, top-to-bottom
    cells.sort(key=lambda rc: (rc[0], -rc[1]))
    rec(0, list(nu), [0] * nmax)
    return count


def lr_expand(table: CosetTable, u: int, v: int) -> dict:
    """Structure constants {w_id: c} of s_u s_v from the tableau rule."""
    k = table.nodes[0]
    n = table.rs.rank + 1
    box_cols = n - k
    mu = rep_partition(table, u)
    nu = rep_partition(table, v)
    degree = table.reps[u].length + table.reps[v].length
    out = {}
    if degree >= len(table.by_degree):
        return out
    for wid in table.by_degree[degree]:
        lam = rep_partition(table, wid)
        if len(lam) > k or any(p > box_cols for p in lam):
            continue
        c = lr_coefficient(lam, mu, nu)
        if c:
            out[wid] = c
    return out
