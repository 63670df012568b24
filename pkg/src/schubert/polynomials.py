"""Exact multivariate polynomials over arbitrary-precision integers.

A ring declares an ordered tuple of variable names with positive degrees; a
polynomial is a dict from exponent tuples to nonzero coefficients. Monomial
bases of a fixed degree are enumerated in ascending lexicographic order on the
exponent tuples, which is the one canonical order used everywhere (matrix rows,
text rendering, parsing).

Coefficients are Python ints. A handful of callers (rational homotopy
reduction, substitutions that divide by a leading coefficient) opportunistically
work with Fractions; operations accept them but integer-only invariants are
asserted wherever the contract demands exactness.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class PolynomialError(ValueError):
    pass


@dataclass(frozen=True)
class PolyRing:
    """Ordered graded variables; degrees are positive (even, in all callers)."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(set(self.names)):
            raise PolynomialError(f"duplicate variable names in {self.names}")
        if any(d <= 0 for d in self.degrees):
            raise PolynomialError("variable degrees must be positive")
        if len(self.names) != len(self.degrees):
            raise PolynomialError("names/degrees length mismatch")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def var(self, name: str) -> "Poly":
        i = self.names.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {exp: 1})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: 1})

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exponents: Sequence[int], coeff=1) -> "Poly":
        exp = tuple(exponents)
        if len(exp) != self.nvars or any(e < 0 for e in exp):
            raise PolynomialError(f"bad exponent vector {exp}")
        return Poly(self, {exp: coeff} if coeff else {})

    def term_degree(self, exp: Sequence[int]) -> int:
        return sum(e * d for e, d in zip(exp, self.degrees))

    def without(self, name: str) -> "PolyRing":
        """The ring with one variable removed (same order on the rest)."""
        keep = [i for i, nm in enumerate(self.names) if nm != name]
        if len(keep) == self.nvars:
            raise PolynomialError(f"no variable {name!r} in {self.names}")
        return PolyRing(
            tuple(self.names[i] for i in keep), tuple(self.degrees[i] for i in keep)
        )


def monomial_basis(ring: PolyRing, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given degree, ascending lex. b(m) = length."""
    if degree < 0:
        return []
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == ring.nvars:
            if remaining == 0:
                out.append(prefix)
            return
        d = ring.degrees[i]
        if i == ring.nvars - 1:
            if remaining % d == 0:
                rec(i + 1, 0, prefix + (remaining // d,))
            return
        for e in range(remaining // d + 1):
            rec(i + 1, remaining - e * d, prefix + (e,))

    rec(0, degree, ())
    out.sort()
    return out


def basis_size(ring: PolyRing, degree: int) -> int:
    """b(degree): number of monomials of the given degree."""
    return len(monomial_basis(ring, degree))


def basis_size_series(degrees: Sequence[int], upto: int) -> list[int]:
    """Coefficients of prod 1/(1-t^d) through t^upto (independent b(m) oracle)."""
    coeffs = [1] + [0] * upto
    for d in degrees:
        for m in range(d, upto + 1):
            coeffs[m] += coeffs[m - d]
    return coeffs


class Poly:
    """A polynomial: {exponent tuple: coefficient}, zero coefficients dropped."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_homogeneous(self) -> bool:
        degs = {self.ring.term_degree(e) for e in self.terms}
        return len(degs) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous polynomial; None for 0; error if mixed."""
        degs = {self.ring.term_degree(e) for e in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise PolynomialError(f"inhomogeneous polynomial: degrees {sorted(degs)}")
        return degs.pop()

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or c.denominator == 1 for c in self.terms.values())

    def map_to(self, ring: PolyRing) -> "Poly":
        """Rename into a ring with the same degrees (variables matched by position)."""
        if ring.degrees != self.ring.degrees:
            raise PolynomialError("target ring has different grading")
        return Poly(ring, dict(self.terms))

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.ring, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolynomialError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise PolynomialError("mixed rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise PolynomialError(f"cannot coerce {other!r}")

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), 0)

    def substitute(self, name: str, replacement, allow_rational: bool = False) -> "Poly":
        """Substitute a polynomial (of the variable's degree, or 0) for a variable.

        The replacement must be homogeneous of the declared degree so grading is
        preserved exactly; rational scalars in it are rejected unless
        ``allow_rational`` is set.
        """
        i = self.ring.names.index(name)
        if isinstance(replacement, (int, Fraction)) and replacement == 0:
            replacement = self.ring.zero()
        if not isinstance(replacement, Poly):
            raise PolynomialError("replacement must be a polynomial or 0")
        repl = replacement if replacement.ring == self.ring else replacement.map_to(self.ring)
        if repl and repl.degree() != self.ring.degrees[i]:
            raise PolynomialError(
                f"replacement degree {repl.degree()} != |{name}| = {self.ring.degrees[i]}"
            )
        if not allow_rational and not repl.is_integral():
            raise PolynomialError("rational replacement without allow_rational=True")
        powers = {0: self.ring.one()}
        out = self.ring.zero()
        for e, c in sorted(self.terms.items()):
            k = e[i]
            if k not in powers:
                powers[k] = repl ** k
            rest = tuple(0 if j == i else v for j, v in enumerate(e))
            out = out + powers[k] * Poly(self.ring, {rest: c})
        return out

    def drop_var(self, name: str) -> "Poly":
        """Set a variable to zero and remove it from the ring."""
        i = self.ring.names.index(name)
        target = self.ring.without(name)
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                out[e[:i] + e[i + 1 :]] = c
        return Poly(target, out)

    def exact_divide(self, divisor: "Poly") -> "Poly":
        """Quotient self/divisor when division is exact; hard error otherwise."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by zero polynomial")
        remainder = Poly(self.ring, dict(self.terms))
        quotient: dict = {}
        # Divide by the lex-largest divisor term; exactness makes this a
        # well-defined long division regardless of monomial order.
        lead = max(divisor.terms)
        lead_c = divisor.terms[lead]
        while remainder:
            e = max(remainder.terms)
            c = remainder.terms[e]
            q_exp = tuple(a - b for a, b in zip(e, lead))
            if any(x < 0 for x in q_exp) or c % lead_c:
                raise PolynomialError("division is not exact")
            q_c = c // lead_c
            quotient[q_exp] = quotient.get(q_exp, 0) + q_c
            remainder = remainder - Poly(self.ring, {q_exp: q_c}) * divisor
        return Poly(self.ring, quotient)

    def coefficient_vector(self, degree: int) -> list:
        """Coefficients over the lex monomial basis of one degree."""
        if self and self.degree() not in (None, degree):
            raise PolynomialError("polynomial not homogeneous of requested degree")
        return [self.terms.get(e, 0) for e in monomial_basis(self.ring, degree)]

    def render(self) -> str:
        """Canonical text: terms in ascending lex order, like ``2*y3 - y1^3``."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.ring.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if c > 0 else f"- {text}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self.render()})"


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse the canonical rendering back into a polynomial (lossless)."""
    text = text.strip()
    if text in ("", "0"):
        return ring.zero()
    out = ring.zero()
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or not m.group(2).strip():
            raise PolynomialError(f"cannot parse polynomial at {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        pos = m.end()
        coeff = sign
        exp = [0] * ring.nvars
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise PolynomialError(f"empty factor in {body!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            fm = _FACTOR_RE.match(factor)
            if not fm or fm.group(1) not in ring.names:
                raise PolynomialError(f"unknown factor {factor!r}")
            i = ring.names.index(fm.group(1))
            exp[i] += int(fm.group(2) or 1)
        out = out + ring.monomial(exp, coeff)
    return out


def poly_from_vector(ring: PolyRing, degree: int, coeffs: Iterable) -> Poly:
    basis = monomial_basis(ring, degree)
    coeffs = list(coeffs)
    if len(coeffs) != len(basis):
        raise PolynomialError("coefficient vector length != b(degree)")
    return Poly(ring, {e: c for e, c in zip(basis, coeffs) if c})
