"""Integral cohomology of the circle-bundle space attached to a Grassmannian.

The projection from the rank-1 homogeneous space to the Grassmannian is an
oriented circle bundle whose Euler class is the degree-1 Schubert class w.
Its Gysin sequence splits into short exact pieces, so with A_k the matrix of
multiplication by w from degree k-1 to degree k:

  H^{2k}   of the total space = cokernel of A_k   (invariant factors),
  H^{2k-1} of the total space = kernel   of A_k   (free, with explicit basis).

On top of the groups this module computes a basis of the even part by Schubert
classes (a "lift"), the multiplication table of the even subring in that
basis, a minimal generator set among the basis classes, and a minimal relation
set h_1, h_2, ... presenting the even subring - the inputs the presentation
module needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import Engine, GeneratorBinding, make_binding
from .intlinalg import (
    RowSolver,
    cokernel_invariants,
    hermite_rows,
    left_nullspace,
    reduce_mod_lattice,
    smith_normal_form,
    solve_left,
    stack,
    unimodular_inverse,
    vecmat,
)
from .polynomials import Poly, PolyRing, monomial_basis, poly_from_vector


class GysinError(RuntimeError):
    pass


@dataclass
class EvenLift:
    """Schubert classes whose images form a diagonal basis of coker(A_k)."""

    degree: int  # length degree k; topological degree 2k
    positions: list[int]  # 0-based column positions among degree-k classes
    orders: list[int]  # cyclic order of each basis class; 0 = infinite
    _solver: object = field(default=None, repr=False)


@dataclass
class GysinReport:
    engine: Engine
    chevalley: dict  # k -> A_k
    even: dict  # k -> tuple of invariant factors of H^{2k} (no 1s)
    odd: dict  # k -> kernel basis rows over degree-(k-1) classes, H^{2k-1}
    lifts: dict  # k -> EvenLift, for k with H^{2k} != 0
    generators: list  # [(name, degree k, position in degree, rep id)]
    relations: list  # minimal relations h_i of the even subring, as Poly
    monomial_tables: dict  # k -> [(exponents, coords over lift)] for gen monomials
    pair_rules: list  # ((r,i),(k,j)) -> coords of the product over the lift

    @property
    def table(self):
        return self.engine.table

    def even_binding(self) -> GeneratorBinding:
        table = self.table
        return make_binding(
            table,
            [(name, table.by_degree[k][pos]) for name, k, pos, _ in self.generators],
        )

    def generator_labels(self) -> list:
        return [(g[0], (g[1], g[2] + 1)) for g in self.generators]

    def odd_degrees(self) -> list[int]:
        """Length degrees k with H^{2k-1} nonzero."""
        return sorted(k for k, rows in self.odd.items() if rows)

    def free_rank_even(self) -> int:
        return sum(sum(1 for d in inv if d == 0) for inv in self.even.values())

    def free_rank_odd(self) -> int:
        return sum(len(rows) for rows in self.odd.values())


def _class_order(snf, beta: int, position: int) -> int:
    """Order of the standard class e_position in Z^beta / rowspan(A)."""
    from math import gcd, lcm

    e = [1 if j == position else 0 for j in range(beta)]
    tq = vecmat(e, snf.Q)
    nrows = len(snf.P)
    order = 1
    for j in range(beta):
        d = snf.D[j][j] if j < nrows else 0
        if d:
            order = lcm(order, d // gcd(d, tq[j]))
        elif tq[j]:
            return 0
    return order


class _QuotientSolver:
    """Coordinates in coker(A) over a fixed set of class positions."""

    def __init__(self, A, beta, positions, orders):
        self.beta = beta
        self.positions = positions
        self.orders = orders
        rows = [[1 if j == p else 0 for j in range(beta)] for p in positions]
        self.system = RowSolver(stack(rows, A) if A else rows)

    def coords(self, v) -> list[int]:
        sol = self.system.solve(list(v))
        if sol is None:
            raise GysinError("class does not lie in the span of the chosen lift")
        out = []
        for x, o in zip(sol[: len(self.positions)], self.orders):
            if o:
                x %= o
                if x > o // 2:
                    x -= o
            out.append(x)
        return out


def _choose_lift(A, beta: int, degree: int) -> EvenLift:
    """Deterministic diagonal basis of coker(A_k) by by-index greedy scan."""
    snf = smith_normal_form(A)
    orders = [_class_order(snf, beta, p) for p in range(beta)]
    target = sorted(d for d in cokernel_invariants(A) if d != 1) or []
    chosen: list[int] = []

    def diagonal(cand: list[int]) -> bool:
        rows = [[1 if j == p else 0 for j in range(beta)] for p in cand]
        kern = left_nullspace(stack(rows, A) if A else rows)
        for row in kern:
            for x, p in zip(row[: len(cand)], cand):
                o = orders[p]
                if (o == 0 and x != 0) or (o and x % o):
                    return False
        return True

    def remaining_factors(cand: list[int]) -> list[int]:
        rows = [[1 if j == p else 0 for j in range(beta)] for p in cand]
        inv = cokernel_invariants(stack(rows, A) if A else rows)
        return sorted(d for d in inv if d != 1)

    def complete(cand: list[int]) -> bool:
        return not remaining_factors(cand)

    for p in range(beta):
        if complete(chosen):
            break
        if orders[p] == 1:
            continue
        cand = chosen + [p]
        # adding the class must split off its cyclic summand exactly: the
        # leftover quotient has to carry precisely the unused invariant factors
        used = sorted(orders[q] for q in cand)
        want = list(target)
        ok = True
        for o in used:
            if o in want:
                want.remove(o)
            else:
                ok = False
                break
        if ok and remaining_factors(cand) == sorted(want) and diagonal(cand):
            chosen = cand
    if not complete(chosen):
        raise GysinError(
            f"no diagonal Schubert-class basis at degree {degree} (SNF contradiction)"
        )
    got = sorted(orders[p] for p in chosen)
    if got != target:
        raise GysinError(f"lift orders {got} disagree with invariant factors {target}")
    lift = EvenLift(degree=degree, positions=chosen, orders=[orders[p] for p in chosen])
    lift._solver = _QuotientSolver(A, beta, chosen, lift.orders)
    return lift


def _lattice_quotient_generators(K_rows, O_rows):
    """Vectors generating span(K)/span(O); empty when the lattices agree."""
    if not K_rows:
        return []
    if not O_rows:
        return [list(r) for r in K_rows]
    solver = RowSolver(K_rows)
    C = []
    for o in O_rows:
        x = solver.solve(list(o))
        if x is None:
            raise GysinError("relation-shift lattice escapes the kernel lattice")
        C.append(x)
    snf = smith_normal_form(C)
    kdim = len(K_rows)
    nontrivial = []
    for j in range(kdim):
        d = snf.D[j][j] if j < len(C) else 0
        if d != 1:
            nontrivial.append(j)
    if not nontrivial:
        return []
    Qinv = unimodular_inverse(snf.Q)
    return [vecmat(Qinv[j], K_rows) for j in nontrivial]


def build_gysin(
    engine: Engine,
    check_products: bool = False,
    generator_hints=(),
    jobs: int = 1,
) -> GysinReport:
    """Compute the full report: groups, basis lifts, generators, relations.

    ``generator_hints`` optionally lists preferred generator classes (words or
    table ids); each hint is verified to be a genuinely new generator in its
    degree and the final generating set is certified as before. Without hints
    the first valid class in index order is taken.
    """
    table = engine.table
    N = table.top_degree
    beta = table.counts_by_degree()
    hints: dict[int, list[int]] = {}
    for ref in generator_hints:
        rid = ref if isinstance(ref, int) else table.id_of_word(ref)
        hints.setdefault(table.reps[rid].length, []).append(rid)

    chevalley = {k: engine.chevalley_matrix(k, check=check_products) for k in range(1, N + 2)}

    even: dict[int, tuple] = {0: (0,)}
    odd: dict[int, list] = {}
    lifts: dict[int, EvenLift] = {}
    for k in range(1, N + 2):
        A = chevalley[k]
        inv = tuple(d for d in cokernel_invariants(A) if d != 1) if k <= N else ()
        even[k] = inv
        kern = left_nullspace(A)
        if kern:
            odd[k] = kern
        if inv:
            lifts[k] = _choose_lift(A, beta[k], k)

    # -- generators: smallest-degree classes not generated by lower ones ------
    generators: list[tuple] = []

    def binding_of(gens) -> GeneratorBinding:
        return make_binding(
            table, [(name, table.by_degree[k][pos]) for name, k, pos, _ in gens]
        )

    def gen_name(k: int) -> str:
        base = f"y{k}"
        taken = {g[0] for g in generators}
        if base not in taken:
            return base
        suffix = ord("b")
        while f"{base}{chr(suffix)}" in taken:
            suffix += 1
        return f"{base}{chr(suffix)}"

    consumed_hints = 0
    for k in sorted(lifts):
        A = chevalley[k]
        candidates = [table.reps[r].index - 1 for r in hints.get(k, [])]
        candidates += [p for p in lifts[k].positions if p not in candidates]
        while True:
            bind = binding_of(generators)
            mons = monomial_basis(bind.ring, 2 * k)
            rows = [engine.expand_monomial(bind, e).vector() for e in mons]
            system = stack(rows, A) if rows else A
            inv = cokernel_invariants(system)
            if all(d == 1 for d in inv):
                break
            for pos in candidates:
                e = [1 if j == pos else 0 for j in range(beta[k])]
                if solve_left(system, e) is None:
                    rep_id = table.by_degree[k][pos]
                    generators.append((gen_name(k), k, pos, rep_id))
                    if rep_id in hints.get(k, []):
                        consumed_hints += 1
                    break
            else:
                raise GysinError(f"no Schubert-class generator completes degree {k}")
    if consumed_hints != sum(len(v) for v in hints.values()):
        raise GysinError("a configured generator hint was not a valid new generator")

    bind = binding_of(generators)
    ring = bind.ring

    # -- minimal relations of the even subring --------------------------------
    relations: list[Poly] = []
    monomial_tables: dict[int, list] = {}
    max_gen = max((g[1] for g in generators), default=1)
    bound = N + 2 * max_gen
    stable_from = N + max_gen  # no new relation may appear beyond this point
    for k in range(1, bound + 1):
        mons = monomial_basis(ring, 2 * k)
        if not mons:
            continue
        if k <= N:
            rows = [engine.expand_monomial(bind, e).vector() for e in mons]
            if k in lifts:
                monomial_tables[k] = [
                    (e, lifts[k]._solver.coords(v)) for e, v in zip(mons, rows)
                ]
            kern = left_nullspace(stack(rows, chevalley[k]))
            # the projection of the stacked kernel generates the monomial-side
            # kernel lattice; Hermite rows turn the generators into a basis
            K_rows = hermite_rows([row[: len(mons)] for row in kern])
        else:
            K_rows = [[1 if j == i else 0 for j in range(len(mons))] for i in range(len(mons))]
        O_rows = []
        for h in relations:
            dh = h.degree() // 2
            for gamma in monomial_basis(ring, 2 * (k - dh)):
                shifted = Poly(ring, {gamma: 1}) * h
                O_rows.append(shifted.coefficient_vector(2 * k))
        new = _lattice_quotient_generators(K_rows, O_rows)
        for vec in new:
            vec = reduce_mod_lattice(O_rows, vec)
            lead = next((x for x in vec if x), 0)
            if lead < 0:
                vec = reduce_mod_lattice(O_rows, [-x for x in vec])
            if not any(vec):
                raise GysinError("degenerate relation generator")
            if k > stable_from:
                raise GysinError(
                    f"relation detected at degree {k} beyond the stability bound"
                )
            relations.append(poly_from_vector(ring, 2 * k, vec))
            O_rows.append(list(vec))

    # -- completeness: quotient by the relations matches every group ----------
    for k in range(1, bound + 1):
        mons = monomial_basis(ring, 2 * k)
        rows = []
        for h in relations:
            dh = h.degree() // 2
            for gamma in monomial_basis(ring, 2 * (k - dh)):
                rows.append((Poly(ring, {gamma: 1}) * h).coefficient_vector(2 * k))
        inv = tuple(
            d for d in (cokernel_invariants(rows) if rows else [0] * len(mons)) if d != 1
        )
        want = even.get(k, ()) if k <= N else ()
        if inv != want:
            raise GysinError(
                f"even-ring presentation fails at degree {k}: {inv} != {want}"
            )

    # -- multiplication rules for basis pairs ---------------------------------
    lift_elems = [
        (k, pos) for k in sorted(lifts) for pos in lifts[k].positions
    ]
    pairs = [
        (a, b)
        for i, a in enumerate(lift_elems)
        for b in lift_elems[i:]
        if a[0] + b[0] <= N and (a[0] + b[0]) in lifts
    ]

    def one_rule(pair):
        (r, pi), (kk, pj) = pair
        u = table.by_degree[r][pi]
        v = table.by_degree[kk][pj]
        coords = lifts[r + kk]._solver.coords(engine.multiply(u, v).vector())
        return (((r, pi + 1), (kk, pj + 1)), coords)

    from .parallel import pmap

    pair_rules = pmap(one_rule, pairs, jobs=jobs)

    return GysinReport(
        engine=engine,
        chevalley=chevalley,
        even=even,
        odd=odd,
        lifts=lifts,
        generators=generators,
        relations=relations,
        monomial_tables=monomial_tables,
        pair_rules=pair_rules,
    )


def cohomology_groups(engine: Engine) -> dict:
    """Group structure of every nonzero H^d of the circle-bundle space.

    Keys are topological degrees; values are invariant-factor tuples, with 0
    meaning a free summand.
    """
    return groups_from_report(build_gysin(engine))


def groups_from_report(report: GysinReport) -> dict:
    out = {}
    for k, inv in report.even.items():
        if inv:
            out[2 * k] = tuple(inv)
    for k, rows in report.odd.items():
        if rows:
            out[2 * k - 1] = (0,) * len(rows)
    return out


def _group_name(invariants) -> str:
    if not invariants:
        return "0"
    parts = []
    for d in invariants:
        parts.append("Z" if d == 0 else f"Z_{d}")
    return " + ".join(parts)


def _combo_text(table, degree, row) -> str:
    parts = []
    for j, c in enumerate(row):
        if not c:
            continue
        body = f"s[{degree},{j + 1}]"
        text = body if abs(c) == 1 else f"{abs(c)}*{body}"
        if not parts:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(parts) if parts else "0"


def _monomial_text(names, exponents) -> str:
    factors = []
    for name, e in zip(names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def report_to_json(report: GysinReport) -> dict:
    table = report.table
    groups = groups_from_report(report)
    gen_names = [g[0] for g in report.generators]
    return {
        "space": f"{table.rs.tag}/K{''.join(map(str, table.nodes))}",
        "groups": {str(d): list(inv) for d, inv in sorted(groups.items())},
        "even_basis": {
            str(2 * k): [
                {"class": [k, p + 1], "order": o}
                for p, o in zip(report.lifts[k].positions, report.lifts[k].orders)
            ]
            for k in sorted(report.lifts)
        },
        "odd_basis": {
            str(2 * k - 1): [
                {"classes": row} for row in report.odd[k]
            ]
            for k in sorted(report.odd)
        },
        "generators": [
            {"name": nm, "degree": 2 * k, "class": [k, pos + 1],
             "weyl_coordinate": list(table.reps[rid].word)}
            for nm, k, pos, rid in report.generators
        ],
        "even_relations": [h.render() for h in report.relations],
        "monomial_rules": {
            str(2 * k): [
                {"monomial": _monomial_text(gen_names, e), "coords": c}
                for e, c in report.monomial_tables[k]
            ]
            for k in sorted(report.monomial_tables)
        },
        "pair_rules": [
            {"left": list(a), "right": list(b), "coords": c}
            for (a, b), c in report.pair_rules
        ],
    }


def render_report(report: GysinReport) -> str:
    """Text table in the usual layout: degree | group | basis | relation."""
    table = report.table
    lines = [f"Integral cohomology of the circle-bundle space over "
             f"{table.rs.tag}/K{''.join(map(str, table.nodes))}"]
    gens = ", ".join(
        f"{nm} = s[{k},{pos + 1}] (sigma[{','.join(map(str, table.reps[rid].word))}])"
        for nm, k, pos, rid in report.generators
    )
    lines.append(f"  even subring generators: {gens}")
    lines.append("  even subring relations: " + "; ".join(h.render() for h in report.relations))
    lines.append(f"  {'H^d':8} {'group':10} {'basis':22} relation")
    gen_names = [g[0] for g in report.generators]
    for k in sorted(report.lifts):
        lift = report.lifts[k]
        rules = {tuple(c): e for e, c in report.monomial_tables.get(k, [])}
        for idx, (pos, order) in enumerate(zip(lift.positions, lift.orders)):
            group = _group_name((order if order else 0,))
            basis = f"sbar[{k},{pos + 1}]"
            rel = ""
            for coords, exps in sorted(rules.items(), key=lambda kv: kv[1]):
                if sum(exps) == 1:
                    continue  # the tautology "sbar = generator" is not a rule
                if any(coords) and all(
                    c == 0 for j, c in enumerate(coords) if j != idx
                ):
                    mono = _monomial_text(gen_names, exps)
                    c = coords[idx]
                    lhs = basis if c == 1 else f"-{basis}" if c == -1 else f"{c}*{basis}"
                    rel = f"{lhs} = {mono}"
                    break
            lines.append(f"  H^{2 * k:<6} {group:10} {basis:22} {rel}")
    for k in sorted(report.odd):
        for row in report.odd[k]:
            combo = _combo_text(table, k - 1, row)
            lines.append(f"  H^{2 * k - 1:<6} {'Z':10} {'beta^-1(' + combo + ')':40}")
    return "\n".join(lines)


def odd_generators(report: GysinReport, k: int) -> list:
    """Saturated basis of H^{2k-1} as combinations of degree-(k-1) classes."""
    from .engine import SchubertCombination

    rows = report.odd.get(k, [])
    table = report.table
    ids = table.by_degree[k - 1]
    return [
        SchubertCombination(table, k - 1, {ids[j]: c for j, c in enumerate(row) if c})
        for row in rows
    ]
