"""Integer-coefficient Laurent polynomials in the formal variable v.

Sparse dict representation {exponent: coefficient} with no zero entries;
the empty dict is the zero polynomial.  Coefficients are Python integers,
so all arithmetic is exact and overflow-free.  The bar involution sends
v to v^{-1} (exponent negation).
"""

from __future__ import annotations

from typing import Iterable, Mapping

__all__ = ["LaurentPoly", "ZERO", "ONE", "V", "VINV"]


class LaurentPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        d = dict(coeffs)
        self.coeffs = {e: c for e, c in d.items() if c != 0}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return ONE

    @staticmethod
    def monomial(exp: int, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({exp: coeff})

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            n = d.get(e, 0) + c
            if n:
                d[e] = n
            else:
                d.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = d
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            n = d.get(e, 0) - c
            if n:
                d[e] = n
            else:
                d.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = d
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return self.scale(other)
        d: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                n = d.get(e, 0) + c1 * c2
                if n:
                    d[e] = n
                else:
                    d.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = d
        return out

    __rmul__ = __mul__

    def scale(self, n: int) -> "LaurentPoly":
        if n == 0:
            return ZERO
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: n * c for e, c in self.coeffs.items()}
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return out

    # -- structure -------------------------------------------------------------

    def bar(self) -> "LaurentPoly":
        """The involution v -> v^{-1}."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {-e: c for e, c in self.coeffs.items()}
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_bar_symmetric(self) -> bool:
        return all(self.coeffs.get(-e, 0) == c for e, c in self.coeffs.items())

    def in_v_times_Zv(self) -> bool:
        """True iff every exponent is >= 1 (vacuously true for zero)."""
        return all(e >= 1 for e in self.coeffs)

    def coefficient(self, exp: int) -> int:
        return self.coeffs.get(exp, 0)

    def lower_symmetrization(self) -> "LaurentPoly":
        """The unique bar-symmetric q with p - q in vZ[v].

        Concretely c_0 + sum_{k>0} c_{-k} (v^k + v^{-k}); this is the
        correction coefficient used in canonical-basis normalization.
        """
        d: dict[int, int] = {}
        c0 = self.coeffs.get(0, 0)
        if c0:
            d[0] = c0
        for e, c in self.coeffs.items():
            if e < 0:
                d[e] = d.get(e, 0) + c
                d[-e] = d.get(-e, 0) + c
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: c for e, c in d.items() if c}
        return out

    def min_exp(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def max_exp(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            if other == 0:
                return not self.coeffs
            return self.coeffs == {0: other}
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- text and JSON forms -----------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                term = str(abs(c))
            else:
                base = "v" if e == 1 else ("v^-1" if e == -1 else f"v^{e}")
                term = base if abs(c) == 1 else f"{abs(c)}*{base}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    @staticmethod
    def from_json(obj: Mapping[str, int]) -> "LaurentPoly":
        return LaurentPoly({int(e): int(c) for e, c in obj.items()})


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
V = LaurentPoly({1: 1})
VINV = LaurentPoly({-1: 1})
