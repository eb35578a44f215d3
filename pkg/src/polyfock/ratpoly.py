"""Exact multivariate polynomials with rational coefficients.

Small dict-backed polynomial ring over ``fractions.Fraction`` used as the
zero-tolerance side of identity checks: two expressions agree as
polynomials iff their difference normalizes to the empty term map.  Keys
are exponent tuples aligned with ``variables``; zero coefficients are
dropped eagerly so equality is structural.

Only the ring operations needed by the orthogonal-polynomial checks are
implemented; this is an oracle, not a computer-algebra system.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class RationalPoly:
    """Polynomial in named variables with Fraction coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[tuple[int, ...], Scalar] | None = None,
    ):
        self.variables: tuple[str, ...] = tuple(variables)
        nvars = len(self.variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in (terms or {}).items():
            key = tuple(int(e) for e in exps)
            if len(key) != nvars:
                raise ValueError(f"exponent tuple {key} does not match {nvars} variables")
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            val = _as_fraction(coeff)
            if val:
                clean[key] = val
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "RationalPoly":
        return cls(variables)

    @classmethod
    def constant(cls, c: Scalar, variables: Sequence[str]) -> "RationalPoly":
        key = (0,) * len(tuple(variables))
        return cls(variables, {key: c})

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "RationalPoly":
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = 1
        return cls(variables, {tuple(exps): 1})

    # -- ring operations ---------------------------------------------------

    def _check_ring(self, other: "RationalPoly") -> None:
        if self.variables != other.variables:
            raise ValueError(
                f"mixed variable sets {self.variables} vs {other.variables}"
            )

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        self._check_ring(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = out.get(exps)
            if acc is None:
                out[exps] = coeff
            else:
                acc = acc + coeff
                if acc:
                    out[exps] = acc
                else:
                    del out[exps]
        result = RationalPoly.__new__(RationalPoly)
        result.variables = self.variables
        result.terms = out
        return result

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __neg__(self) -> "RationalPoly":
        result = RationalPoly.__new__(RationalPoly)
        result.variables = self.variables
        result.terms = {e: -c for e, c in self.terms.items()}
        return result

    def __mul__(self, other: "RationalPoly | Scalar") -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_ring(other)
        out: dict[tuple[int, ...], Fraction] = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc = get(key)
                prod = c1 * c2
                if acc is None:
                    out[key] = prod
                else:
                    acc = acc + prod
                    if acc:
                        out[key] = acc
                    else:
                        del out[key]
        result = RationalPoly.__new__(RationalPoly)
        result.variables = self.variables
        result.terms = out
        return result

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "RationalPoly":
        c = _as_fraction(c)
        result = RationalPoly.__new__(RationalPoly)
        result.variables = self.variables
        result.terms = {e: c * v for e, v in self.terms.items()} if c else {}
        return result

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient(self, exps: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(int(e) for e in exps), Fraction(0))

    def evaluate(self, values: Sequence):
        """Evaluate at a point, exact on Fraction inputs.

        Accepts any values supporting arithmetic with Fraction (Fractions,
        ints, floats, complex), one per variable.
        """
        if len(values) != len(self.variables):
            raise ValueError(f"expected {len(self.variables)} values, got {len(values)}")
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "RationalPoly(0)"
        bits = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e)):
            coeff = self.terms[exps]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v
                for v, e in zip(self.variables, exps)
                if e
            )
            bits.append(f"{coeff}" + (f"*{mono}" if mono else ""))
        return "RationalPoly(" + " + ".join(bits) + ")"
