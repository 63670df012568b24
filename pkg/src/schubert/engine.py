"""Products of Schubert classes via fixed-point restrictions.

The multiplication backend works over the coset table only. For each
representative u and fixed point t (also a representative) there is a
restriction value: the sum over all subwords of t's fixed reduced word that
multiply to u of the products of the reflected simple roots along the word.
These restrictions assemble into a triangular system (restriction of u at t
vanishes unless u <= t, and the diagonal entries are products of positive
roots); expanding any polynomial in Schubert classes then reduces to one
triangular solve per target degree, with every division exact over the
integers.

Restriction values at all u for one target t are computed in a single pass
over t's minimized word by peeling the first letter i: the subwords that skip
the first letter contribute through sigma_i-twisted restrictions at the
shorter target, those that take it contribute the root beta_i times the
twisted restriction of sigma_i u. Left descents of minimal representatives
stay minimal, so the recursion never leaves the table.

Two coefficient domains run the same algorithms: honest polynomials in the
simple-root variables (``billey_restriction``), and integer values of those
polynomials at a fixed positive functional on the root lattice (the default
everywhere else; the solved top-degree coefficients are the same integers and
all divisions remain exact).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cartan import RootSystem
from .cosets import CosetTable
from .intlinalg import Matrix
from .polynomials import Poly, PolyRing, monomial_basis


class EngineError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """An exact division failed inside the triangular solve."""


@dataclass
class SchubertCombination:
    """Integer combination of same-degree Schubert classes on one table."""

    table: CosetTable
    degree: int
    terms: dict  # rep id -> nonzero integer coefficient

    def __post_init__(self):
        self.terms = {i: c for i, c in self.terms.items() if c}
        for i in self.terms:
            if self.table.reps[i].length != self.degree:
                raise EngineError("mixed degrees in combination")

    def coefficient(self, label) -> int:
        """Coefficient of the class with a (degree, index) label or table id."""
        if isinstance(label, tuple):
            label = self.table.id_of(*label)
        return self.terms.get(label, 0)

    def vector(self) -> list[int]:
        """Coefficients over the degree's classes in index order."""
        ids = self.table.by_degree[self.degree] if self.degree < len(self.table.by_degree) else []
        return [self.terms.get(i, 0) for i in ids]

    def __eq__(self, other):
        return (
            isinstance(other, SchubertCombination)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __add__(self, other):
        if other.degree != self.degree:
            raise EngineError("adding combinations of different degrees")
        out = dict(self.terms)
        for i, c in other.terms.items():
            s = out.get(i, 0) + c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return SchubertCombination(self.table, self.degree, out)

    def scale(self, c: int) -> "SchubertCombination":
        return SchubertCombination(self.table, self.degree, {i: c * v for i, v in self.terms.items()})

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i in sorted(self.terms):
            r, k = self.table.label(i)
            c = self.terms[i]
            body = f"s[{r},{k}]"
            text = body if abs(c) == 1 else f"{abs(c)}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if c > 0 else f"- {text}")
        return " ".join(parts)

    def to_json(self):
        return [
            {"degree": self.table.reps[i].length, "index": self.table.reps[i].index, "coeff": c}
            for i, c in sorted(self.terms.items())
        ]


@dataclass(frozen=True)
class GeneratorBinding:
    """Generator variables bound to Schubert classes: a graded polynomial ring
    whose variable of degree 2r names a chosen degree-r representative."""

    ring: PolyRing
    rep_ids: tuple[int, ...]

    def lengths(self, table: CosetTable) -> tuple[int, ...]:
        return tuple(table.reps[i].length for i in self.rep_ids)


def make_binding(table: CosetTable, assignments: Sequence[tuple[str, object]]) -> GeneratorBinding:
    """Bind named variables to classes; degrees are forced to 2*length."""
    names, degrees, ids = [], [], []
    for name, ref in assignments:
        rid, _ = _as_id(table, ref)
        names.append(name)
        degrees.append(2 * table.reps[rid].length)
        ids.append(rid)
    return GeneratorBinding(PolyRing(tuple(names), tuple(degrees)), tuple(ids))


def _as_id(table: CosetTable, ref):
    if isinstance(ref, int):
        return ref, table.label(ref)
    ref = tuple(ref)
    if len(ref) == 2 and ref not in table.point_index:
        return table.id_of(*ref), ref
    return table.id_of_word(ref), None


ROOT_VAR_PREFIX = "b"


def root_ring(rs: RootSystem) -> PolyRing:
    """Polynomial ring on the simple roots, each of degree 2."""
    return PolyRing(
        tuple(f"{ROOT_VAR_PREFIX}{i}" for i in range(1, rs.rank + 1)),
        (2,) * rs.rank,
    )


class Engine:
    """Product engine over one coset table.

    ``functional`` assigns a positive integer to each simple root; the default
    all-ones functional sends every positive root to its height.
    """

    def __init__(self, table: CosetTable, functional: Sequence[int] | None = None, cache=None):
        if table.truncated:
            raise EngineError("product engine needs a complete coset table")
        self.table = table
        self.rs = table.rs
        self.functional = tuple(functional) if functional is not None else (1,) * self.rs.rank
        if any(x <= 0 for x in self.functional):
            raise EngineError("functional must be positive on the simple roots")
        self.cache = cache
        self._R: list | None = None
        self._monomials: dict = {}
        self._products: dict = {}

    # -- restriction values ------------------------------------------------

    def restrictions(self) -> list:
        """R[t][u] = restriction of class u at fixed point t, at the functional."""
        if self._R is None:
            self._R = [self._restriction_row(t) for t in range(len(self.table))]
        return self._R

    def _restriction_row(self, t: int, domain=None):
        table = self.table
        word = table.reps[t].word
        dom = domain or _IntDomain(self.functional)
        phi = list(dom.initial())
        coeffs = []
        cart = self.rs.cartan
        for i in word:
            coeffs.append(phi[i - 1])
            base = phi[i - 1]
            phi = [
                phi[k] - cart[k][i - 1] * base if cart[k][i - 1] else phi[k]
                for k in range(self.rs.rank)
            ]
        size = len(table)
        T = [dom.zero] * size
        T[0] = dom.one
        for p in range(len(word) - 1, -1, -1):
            down_i = table.down[word[p] - 1]
            c = coeffs[p]
            for u in range(size - 1, 0, -1):
                d = down_i[u]
                if d >= 0:
                    td = T[d]
                    if td:
                        T[u] = T[u] + c * td
        return T

    # -- triangular solve ----------------------------------------------------

    def _solve(self, fvals, degree: int) -> dict:
        """Coefficients p with  f|_t = sum_u p[u] * R[t][u]  for all t of
        length <= degree; every division must be exact."""
        R = self.restrictions()
        table = self.table
        out: dict[int, int] = {}
        for ids in table.by_degree[: degree + 1]:
            for t in ids:
                acc = fvals(t)
                Rt = R[t]
                for y, py in out.items():
                    ry = Rt[y]
                    if ry:
                        acc -= py * ry
                if not acc:
                    continue
                q, rem = divmod(acc, Rt[t])
                if rem:
                    raise ConsistencyError(
                        f"inexact division at target {table.label(t)}: backend bug"
                    )
                out[t] = q
        return out

    def _top_slice(self, solved: dict, degree: int) -> SchubertCombination:
        terms = {i: c for i, c in solved.items() if self.table.reps[i].length == degree}
        return SchubertCombination(self.table, degree, terms)

    # -- products ------------------------------------------------------------

    def schubert_class(self, ref) -> SchubertCombination:
        rid, _ = _as_id(self.table, ref)
        return SchubertCombination(self.table, self.table.reps[rid].length, {rid: 1})

    def multiply(self, u, v) -> SchubertCombination:
        """Expansion of s_u * s_v in the Schubert basis."""
        uid, _ = _as_id(self.table, u)
        vid, _ = _as_id(self.table, v)
        if uid > vid:
            uid, vid = vid, uid
        degree = self.table.reps[uid].length + self.table.reps[vid].length
        if degree > self.table.top_degree:
            raise EngineError(
                f"product degree {degree} exceeds the table top {self.table.top_degree}"
            )
        key = (uid, vid)
        if key in self._products:
            return self._products[key]
        combo = None
        if self.cache is not None:
            combo = self.cache.load_product(self, uid, vid)
        if combo is None:
            R = self.restrictions()
            solved = self._solve(lambda t: R[t][uid] * R[t][vid], degree)
            combo = self._top_slice(solved, degree)
            if self.cache is not None:
                self.cache.store_product(self, uid, vid, combo)
        self._products[key] = combo
        return combo

    def multiply_combination(self, combo: SchubertCombination, v) -> SchubertCombination:
        vid, _ = _as_id(self.table, v)
        degree = combo.degree + self.table.reps[vid].length
        out = SchubertCombination(self.table, degree, {})
        for i, c in combo.terms.items():
            out = out + self.multiply(i, vid).scale(c)
        return out

    def expand_monomial(self, binding: GeneratorBinding, exponents) -> SchubertCombination:
        """Schubert expansion of a monomial in the bound generator classes."""
        exponents = tuple(exponents)
        degree = sum(
            e * self.table.reps[r].length for e, r in zip(exponents, binding.rep_ids)
        )
        if degree > self.table.top_degree:
            raise EngineError(f"monomial degree {degree} exceeds the table")
        key = (binding.rep_ids, exponents)
        if key in self._monomials:
            return self._monomials[key]
        combo = None
        if self.cache is not None:
            combo = self.cache.load_monomial(self, binding, exponents)
        if combo is None:
            R = self.restrictions()

            def fvals(t):
                acc = 1
                row = R[t]
                for e, rid in zip(exponents, binding.rep_ids):
                    if e:
                        acc *= row[rid] ** e
                return acc

            combo = self._top_slice(self._solve(fvals, degree), degree)
            if self.cache is not None:
                self.cache.store_monomial(self, binding, exponents, combo)
        self._monomials[key] = combo
        return combo

    def expand_poly(self, binding: GeneratorBinding, f: Poly) -> SchubertCombination:
        if f.ring != binding.ring:
            f = f.map_to(binding.ring)
        deg = f.degree()
        if deg is None:
            return SchubertCombination(self.table, 0, {})
        if deg % 2:
            raise EngineError("polynomial of odd topological degree")
        out = SchubertCombination(self.table, deg // 2, {})
        for exp, c in sorted(f.terms.items()):
            if not isinstance(c, int):
                raise EngineError("expand_poly needs integer coefficients")
            out = out + self.expand_monomial(binding, exp).scale(c)
        return out

    def eval_coefficient(self, binding: GeneratorBinding, f: Poly, w) -> int:
        """The coefficient of class w in the Schubert expansion of f."""
        wid, _ = _as_id(self.table, w)
        deg = f.degree()
        if deg is None:
            return 0
        if deg != 2 * self.table.reps[wid].length:
            raise EngineError(
                f"degree mismatch: |f| = {deg}, class has degree {2 * self.table.reps[wid].length}"
            )
        return self.expand_poly(binding, f).coefficient(wid)

    # -- structure matrices ----------------------------------------------------

    def structure_matrix(self, binding: GeneratorBinding, m: int) -> Matrix:
        """b(2m) x beta(m) matrix of monomial expansions in degree m."""
        if m > self.table.top_degree:
            raise EngineError(f"degree {m} exceeds the table top {self.table.top_degree}")
        rows = []
        for exp in monomial_basis(binding.ring, 2 * m):
            rows.append(self.expand_monomial(binding, exp).vector())
        beta = len(self.table.by_degree[m])
        return rows if rows else _empty_rows(beta)

    # -- multiplication by the degree-one class ---------------------------------

    def divisor_class_id(self) -> int:
        ids = self.table.by_degree[1] if len(self.table.by_degree) > 1 else []
        if len(ids) != 1:
            raise EngineError("no unique degree-1 class (need a single-node K)")
        return ids[0]

    def chevalley_matrix(self, k: int, check: bool = False) -> Matrix:
        """Matrix of multiplication by the degree-1 class, degree k-1 -> k.

        Row i expands omega * s_{k-1,i}. Computed by the divisor rule (sum of
        coroot pairings over length-increasing root reflections); with
        ``check`` the general product route must agree entrywise.
        """
        table, rs = self.table, self.rs
        if not 1 <= k <= table.top_degree + 1:
            raise EngineError(f"chevalley degree {k} out of range 1..{table.top_degree + 1}")
        kk = self.divisor_kk()
        rows = table.by_degree[k - 1]
        cols = table.by_degree[k] if k <= table.top_degree else []
        col_pos = {cid: j for j, cid in enumerate(cols)}
        A = [[0] * len(cols) for _ in rows]
        imgs = self._simple_images()
        rho_pair = [sum(rs.coroot_pairing_vector(a)) for a in rs.positive_roots]
        n = rs.rank
        for i, wid in enumerate(rows):
            rep = table.reps[wid]
            wimg = imgs[wid]
            rho_pt = table.rho_points[wid]
            for aidx, alpha in enumerate(rs.positive_roots):
                c = rs.coroot_pairing_vector(alpha)[kk - 1]
                if not c:
                    continue
                walpha = [0] * n
                for j, aj in enumerate(alpha):
                    if aj:
                        wj = wimg[j]
                        for x in range(n):
                            walpha[x] += aj * wj[x]
                point = tuple(p - c * wa for p, wa in zip(rep.point, walpha))
                tid = table.point_index.get(point)
                if tid is None or tid not in col_pos:
                    continue
                # the reflected element must itself be the minimal representative
                rp = rho_pair[aidx]
                elt_rho = tuple(p - rp * wa for p, wa in zip(rho_pt, walpha))
                if elt_rho != table.rho_points[tid]:
                    continue
                A[i][col_pos[tid]] += c
        if check and k <= table.top_degree:
            omega = self.divisor_class_id()
            for i, wid in enumerate(rows):
                expect = self.multiply(omega, wid).vector()
                if expect != A[i]:
                    raise ConsistencyError(
                        f"divisor rule disagrees with the product route at degree {k}, row {i + 1}"
                    )
        return A

    def divisor_kk(self) -> int:
        """The node whose fundamental weight is the degree-1 class."""
        rid = self.divisor_class_id()
        return self.table.reps[rid].word[0]

    def _simple_images(self):
        if not hasattr(self, "_imgs"):
            rs = self.rs
            self._imgs = [
                tuple(rs.apply_word(rep.word, rs.root_weights[j]) for j in range(rs.rank))
                for rep in self.table.reps
            ]
        return self._imgs


def _empty_rows(_beta: int) -> list:
    return []


# -- polynomial-valued restrictions -------------------------------------------


class _IntDomain:
    def __init__(self, functional):
        self.functional = functional
        self.zero = 0
        self.one = 1

    def initial(self):
        return list(self.functional)


class _PolyDomain:
    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.zero = ring.zero()
        self.one = ring.one()

    def initial(self):
        return [self.ring.var(name) for name in self.ring.names]


def billey_restriction(table: CosetTable, u, w, engine: Engine | None = None) -> Poly:
    """Restriction of class u at fixed point w as a polynomial in simple roots.

    Homogeneous of topological degree 2*l(u); zero unless u <= w in Bruhat
    order; at u = w it is the product of the positive roots inverted by w.
    """
    eng = engine or Engine(table)
    uid, _ = _as_id(table, u)
    wid, _ = _as_id(table, w)
    ring = root_ring(table.rs)
    row = eng._restriction_row(wid, domain=_PolyDomain(ring))
    return row[uid]


def subword_restriction_naive(table: CosetTable, u, word) -> Poly:
    """Independent oracle: enumerate subwords of an explicit reduced word.

    Sums the products of reflected roots over all position subsets whose
    letters multiply to the representative u. Exponential in l(u); tests only.
    """
    import itertools

    rs = table.rs
    uid, _ = _as_id(table, u)
    target_rho = table.rho_points[uid]
    length = table.reps[uid].length
    ring = root_ring(rs)
    # r(j): prefix-reflected simple roots, as linear polynomials
    prefix_roots = []
    carrier = [ring.var(f"{ROOT_VAR_PREFIX}{i}") for i in range(1, rs.rank + 1)]
    vals = list(carrier)
    for i in word:
        prefix_roots.append(vals[i - 1])
        base = vals[i - 1]
        vals = [
            vals[k] - rs.cartan[k][i - 1] * base if rs.cartan[k][i - 1] else vals[k]
            for k in range(rs.rank)
        ]
    total = ring.zero()
    rho = (1,) * rs.rank
    for positions in itertools.combinations(range(len(word)), length):
        sub = tuple(word[p] for p in positions)
        if rs.apply_word(sub, rho) != target_rho:
            continue
        prod = ring.one()
        for p in positions:
            prod = prod * prefix_roots[p]
        total = total + prod
    return total
