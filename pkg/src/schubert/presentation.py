"""Ring presentations of the Chow rings by generators and relations.

Degree bookkeeping follows two conventions side by side, matching the
structures they index: kernel/lift/Giambelli operations take the length degree
m (classes of degree m live in topological degree 2m), while the monomial-side
operations (relation matrices, deficiency, elimination checks) take the even
topological degree, since they only see the graded polynomial ring.

The presentation pipeline: the circle-bundle computation provides the even
subring's generators and minimal relations h_i; each h_i lifts to a relation
r_i of the full ring constrained by r_i -> h_i under "set the degree-1 class
to zero"; the elimination test (unit invariant factors of the relation-products
matrix) certifies that nothing else is needed at the degrees where extra
relations could live - one check per nonzero odd cohomology degree of the
circle-bundle space, a superset of the degrees a module basis could occupy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import Preset
from .cosets import CosetTable
from .engine import Engine, GeneratorBinding, SchubertCombination, make_binding
from .gysin import GysinReport, build_gysin
from .intlinalg import (
    RowSolver,
    cokernel_invariants,
    hermite_rows,
    left_nullspace,
    reduce_mod_lattice,
    smith_normal_form,
    solve_left,
    unimodular_inverse,
    unit_count,
    vecmat,
)
from .polynomials import Poly, PolyRing, basis_size, monomial_basis, poly_from_vector


class PresentationError(RuntimeError):
    pass


class LiftUnsolvable(PresentationError):
    """No integral polynomial maps onto the requested class combination."""


def kernel_basis(engine: Engine, binding: GeneratorBinding, m: int) -> list[Poly]:
    """Basis of the degree-m kernel of the evaluation map (length degree m).

    Rows of the integer left-nullspace of the structure matrix, as polynomials
    over the monomial basis of topological degree 2m; the lattice is saturated.
    """
    M = engine.structure_matrix(binding, m)
    if not M:
        return []
    return [poly_from_vector(binding.ring, 2 * m, row) for row in left_nullspace(M)]


def relation_matrix(relations: list[Poly], m: int):
    """Matrix of the degree-m slice of the ideal (topological degree m).

    Rows are the shifted relations y^alpha * r_i ordered by (relation index,
    lex alpha); columns the lex monomial basis of degree m.
    """
    if not relations:
        return []
    ring = relations[0].ring
    rows = []
    for r in relations:
        d = r.degree()
        if d is None or d > m:
            continue
        for alpha in monomial_basis(ring, m - d):
            rows.append((Poly(ring, {alpha: 1}) * r).coefficient_vector(m))
    return rows

def deficiency(relations: list[Poly], m: int) -> int:
    """Number of unit invariant factors of the degree-m relation matrix."""
    M = relation_matrix(relations, m)
    return unit_count(M) if M else 0


def elimination_check(
    table: CosetTable, relations: list[Poly], degrees: list[int]
) -> dict[int, bool]:
    """Per topological degree m: does b(m) - delta_m equal the Schubert rank?

    True everywhere certifies that every candidate extra relation of those
    degrees already lies in the ideal generated by ``relations``.
    """
    if not relations:
        raise PresentationError("elimination check needs at least one relation")
    ring = relations[0].ring
    beta = table.counts_by_degree()
    out = {}
    for m in degrees:
        if m % 2:
            raise PresentationError(f"odd topological degree {m}")
        rank = beta[m // 2] if m // 2 < len(beta) else 0
        out[m] = basis_size(ring, m) - deficiency(relations, m) == rank
    return out


def lift_odd_class(
    engine: Engine, binding: GeneratorBinding, target: SchubertCombination, m: int
) -> Poly:
    """Integer polynomial of length degree m mapping onto the target classes.

    Solves the integer linear system over the structure matrix; reports
    explicitly when no integral solution exists.
    """
    if target.degree != m:
        raise PresentationError(f"target degree {target.degree} != {m}")
    M = engine.structure_matrix(binding, m)
    if not M:
        raise LiftUnsolvable(f"no monomials of length degree {m}")
    x = solve_left(M, target.vector())
    if x is None:
        raise LiftUnsolvable(
            f"no integral lift of {target.render()} in the generators"
        )
    return poly_from_vector(binding.ring, 2 * m, x)


def giambelli(engine: Engine, binding: GeneratorBinding, m: int) -> list[Poly]:
    """Polynomials G_{m,1..beta(m)} with coefficient matrix inverse to the
    structure matrix: evaluating G_{m,k} at class (m, j) gives delta_kj.

    Requires the evaluation map onto degree m to be surjective; a torsion
    obstruction (non-unit invariant factor) is reported by name.
    """
    table = engine.table
    beta = len(table.by_degree[m]) if m <= table.top_degree else 0
    M = engine.structure_matrix(binding, m)
    if beta == 0:
        return []
    if not M:
        raise PresentationError(f"no monomials of length degree {m}")
    snf = smith_normal_form(M)
    if snf.unit_count < beta:
        raise PresentationError(
            f"evaluation map not surjective in degree {m}: invariant factors "
            f"{snf.diagonal} leave torsion {[d for d in snf.diagonal if d > 1]}"
        )
    # P M Q = [I; 0]; rows of Q P[:beta] invert the structure matrix from the left
    rows = [
        [
            sum(snf.Q[i][t] * snf.P[t][j] for t in range(beta))
            for j in range(len(M))
        ]
        for i in range(beta)
    ]
    return [poly_from_vector(binding.ring, 2 * m, row) for row in rows]


@dataclass
class Presentation:
    """Generators (with Weyl coordinates) and relations of one Chow ring."""

    name: str
    table: CosetTable
    binding: GeneratorBinding
    generators: list  # (name, length degree, (degree, index), word)
    relations: list  # Poly, ascending degree
    appended: list  # extra degree-1-class multiples, normally empty
    checks: dict = field(default_factory=dict)

    @property
    def ring(self) -> PolyRing:
        return self.binding.ring

    def relation_degrees(self) -> list[int]:
        return [r.degree() // 2 for r in self.relations]

    def to_json(self) -> dict:
        return {
            "space": self.name,
            "generators": [
                {
                    "name": nm,
                    "degree": d,
                    "class": list(label),
                    "weyl_coordinate": list(word),
                }
                for nm, d, label, word in self.generators
            ],
            "relations": [r.render() for r in self.relations],
            "appended_relations": [r.render() for r in self.appended],
            "checked_degrees": {str(k): v for k, v in sorted(self.checks.items())},
        }

    def render(self) -> str:
        lines = [f"Chow ring of {self.name}:"]
        gens = ", ".join(nm for nm, *_ in self.generators)
        lines.append(f"  Z[{gens}] modulo the relations below")
        for nm, d, label, word in self.generators:
            coord = ",".join(str(i) for i in word)
            lines.append(f"    {nm}  degree {d}  class s[{label[0]},{label[1]}]  sigma[{coord}]")
        for r in self.relations + self.appended:
            lines.append(f"    r_{r.degree() // 2} = {r.render()}")
        return "\n".join(lines)


def full_binding(engine: Engine, report: GysinReport) -> GeneratorBinding:
    """The degree-1 class plus the even-ring generators, as one binding."""
    table = engine.table
    omega = engine.divisor_class_id()
    assignments = [("y1", omega)]
    assignments += [
        (name, table.by_degree[k][pos]) for name, k, pos, _ in report.generators
    ]
    return make_binding(table, assignments)


def _first_gap_row(snf, kdim: int, nrows: int):
    """Row of Q^{-1} projecting to the first non-unit quotient coordinate."""
    for j in range(kdim):
        d = snf.D[j][j] if j < nrows else 0
        if d != 1:
            return unimodular_inverse(snf.Q)[j]
    raise PresentationError("no quotient gap where one was detected")


def _aligned_shift_rows(relations, m_top: int):
    """Degree-m_top products of the relations and their omega = 0 shadows.

    Row i of the two lists is one omega-free monomial shift gamma * r_j over
    the full monomial basis, and gamma * (r_j at omega = 0) over the even one.
    """
    fulls, evens = [], []
    for r in relations:
        d = r.degree()
        shadow = r.drop_var("y1")
        if not shadow:
            continue
        ering = shadow.ring
        for gamma in monomial_basis(ering, m_top - d):
            full_gamma = (0,) + gamma
            fulls.append((Poly(r.ring, {full_gamma: 1}) * r).coefficient_vector(m_top))
            evens.append((Poly(ering, {gamma: 1}) * shadow).coefficient_vector(m_top))
    return fulls, evens


def schubert_presentation(
    engine: Engine,
    report: GysinReport | None = None,
    generator_hints=(),
    name: str = "",
) -> Presentation:
    """Assemble and certify the generators-and-relations presentation.

    The kernel ideal is generated minimally, degree by degree: at each degree
    the kernel slice is compared against the products of the relations already
    chosen; any gap is closed by one canonical new generator (the generated
    ideal does not depend on which generator of the gap is taken). A new
    relation whose omega = 0 shadow carries new even-ring content is a proper
    relation r_i, with h_i := r_i at omega = 0 its designated even relation;
    otherwise the shadow is cancelled against products of earlier relations,
    leaving a multiple of the degree-1 class (a lifted odd class of the
    circle-bundle space). The proper relation degrees must reproduce the even
    subring's minimal relation degrees.
    """
    if report is None:
        report = build_gysin(engine, generator_hints=generator_hints)
    table = engine.table
    binding = full_binding(engine, report)
    ring = binding.ring

    h_degrees = sorted(h.degree() // 2 for h in report.relations)

    N = table.top_degree
    max_gen = max(d // 2 for d in ring.degrees)
    bound = N + max_gen
    relations: list[Poly] = []
    appended: list[Poly] = []

    for m in range(1, bound + 1):
        mons = monomial_basis(ring, 2 * m)
        if not mons:
            continue
        if m <= N:
            M = engine.structure_matrix(binding, m)
            Kb = left_nullspace(M)
        else:
            Kb = [[1 if j == i else 0 for j in range(len(mons))] for i in range(len(mons))]
        if not Kb:
            continue
        kb_solver = None
        # the kernel lattice is saturated, so its quotient is free of corank
        k_invariants = [0] * (len(mons) - len(Kb))
        while True:
            O_rows = relation_matrix(relations + appended, 2 * m)
            # products lie inside the kernel slice, so the lattices agree
            # exactly when the two monomial-side quotients have equal factors
            o_invariants = (
                cokernel_invariants(O_rows) if O_rows else [0] * len(mons)
            )
            if o_invariants == k_invariants:
                break
            if kb_solver is None:
                kb_solver = RowSolver(Kb)
            C_rows = []
            for o in O_rows:
                x = kb_solver.solve(o)
                if x is None:
                    raise PresentationError(
                        f"relation products escape the kernel slice at degree {m}"
                    )
                C_rows.append(x)
            snf = smith_normal_form(C_rows if C_rows else [[0] * len(Kb)])
            x = _first_gap_row(snf, len(Kb), len(C_rows))
            vec = vecmat(x, Kb)
            if O_rows:
                lat = hermite_rows(O_rows)
                vec = reduce_mod_lattice(lat, vec)
                lead = next((c for c in vec if c), 0)
                if lead < 0:
                    vec = reduce_mod_lattice(lat, [-c for c in vec])
            elif next((c for c in vec if c), 0) < 0:
                vec = [-c for c in vec]
            new_poly = poly_from_vector(ring, 2 * m, vec)
            # classify by the omega = 0 shadow: new even content means a
            # proper relation; otherwise cancel the shadow and keep an exact
            # multiple of the degree-1 class
            restr = new_poly.drop_var("y1")
            full_shifts, even_shifts = _aligned_shift_rows(relations, 2 * m)
            y = None
            if restr:
                rvec = restr.coefficient_vector(2 * m)
                y = solve_left(even_shifts, rvec) if even_shifts else None
                if y is None:
                    relations.append(new_poly)
                    continue
                for yi, frow in zip(y, full_shifts):
                    if yi:
                        vec = [a - yi * b for a, b in zip(vec, frow)]
                new_poly = poly_from_vector(ring, 2 * m, vec)
            if new_poly.drop_var("y1"):
                raise PresentationError(
                    f"failed to normalize an extra relation at degree {m}"
                )
            appended.append(new_poly)

    if sorted(r.degree() // 2 for r in relations) != h_degrees:
        raise PresentationError(
            f"proper relation degrees {sorted(r.degree() // 2 for r in relations)} "
            f"do not match the even subring's minimal relation degrees {h_degrees}"
        )

    emitted = relations + appended
    # every emitted relation must evaluate to the zero class combination
    for r in emitted:
        if r.degree() // 2 <= N and engine.expand_poly(binding, r).terms:
            raise PresentationError(f"emitted relation {r.render()} is nonzero")

    # elimination certificate at every degree with odd cohomology one below,
    # plus the full Hilbert-function range
    check_degrees = sorted({2 * k for k in report.odd_degrees()})
    top = max(r.degree() for r in emitted)
    check_degrees = sorted(set(check_degrees) | set(range(2, top + 1, 2)))
    checks = elimination_check(table, emitted, [m for m in check_degrees if m <= 2 * bound])
    bad = [m for m, ok in checks.items() if not ok]
    if bad:
        raise PresentationError(f"ideal fails the rank certificate at degrees {bad}")

    omega = engine.divisor_class_id()
    gens = [("y1", 1, table.label(omega), table.reps[omega].word)]
    gens += [
        (nm, k, (k, pos + 1), table.reps[rid].word)
        for nm, k, pos, rid in report.generators
    ]
    return Presentation(
        name=name or f"{table.rs.tag}/K{''.join(map(str, table.nodes))}",
        table=table,
        binding=binding,
        generators=gens,
        relations=relations,
        appended=appended,
        checks=checks,
    )


class RationalHomotopyUnsupported(PresentationError):
    pass


def rational_homotopy(pres: Presentation) -> list[int]:
    """Degrees r with a rational homotopy contribution, from the presentation.

    Over the rationals, any generator appearing linearly with a nonzero scalar
    coefficient in some relation is eliminated along with that relation;
    surviving generators contribute their topological degrees, surviving
    relations contribute twice their length degree minus one.
    """
    ring = pres.ring
    relations = list(pres.relations + pres.appended)
    if relations and len(relations) != len(ring.names):
        raise RationalHomotopyUnsupported(
            f"{len(ring.names)} generators vs {len(relations)} relations"
        )
    live_gens = list(ring.names)
    live_rels = [Poly(ring, {e: Fraction(c) for e, c in r.terms.items()}) for r in relations]

    def linear_slot():
        for ri, r in enumerate(live_rels):
            for name in live_gens:
                i = ring.names.index(name)
                unit = tuple(1 if j == i else 0 for j in range(ring.nvars))
                c = r.terms.get(unit, 0)
                if not c:
                    continue
                others = [e for e in r.terms if e != unit and e[i]]
                if others:
                    continue
                return ri, name, i, unit, c
        return None

    while True:
        slot = linear_slot()
        if slot is None:
            break
        ri, name, i, unit, c = slot
        rest = Poly(ring, {e: v for e, v in live_rels[ri].terms.items() if e != unit})
        replacement = Poly(ring, {e: Fraction(-v) / c for e, v in rest.terms.items()})
        live_rels.pop(ri)
        live_gens.remove(name)
        live_rels = [
            r.substitute(name, replacement, allow_rational=True) for r in live_rels
        ]

    if any(not r for r in live_rels):
        raise RationalHomotopyUnsupported("a relation collapsed during reduction")
    degrees = [ring.degrees[ring.names.index(nm)] for nm in live_gens]
    degrees += [r.degree() - 1 for r in live_rels]
    return sorted(degrees)


def presentation_for_preset(preset: Preset, engine: Engine) -> Presentation:
    report = build_gysin(engine, generator_hints=preset.generator_words)
    return schubert_presentation(engine, report=report, name=preset.name)
