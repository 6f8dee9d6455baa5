"""The extended affine Hecke algebra, in Soergel's normalization.

Generated over Z[v, v^{-1}] by standard basis elements H_x (x in the
extended affine Weyl group) subject to

    (H_s + v)(H_s - v^{-1}) = 0          for affine simple reflections s,
    H_x H_y = H_{xy}                     whenever len(x) + len(y) = len(xy).

Products are computed by expanding the right factor into a reduced word
times its length-zero part (which multiplies by index relabelling at no
polynomial cost).  The bar involution is the ring homomorphism fixing the
basis-free structure with v -> v^{-1} and H_x -> (H_{x^{-1}})^{-1}; the
self-dual (Kazhdan-Lusztig) basis element at x is the unique bar-invariant
element of H_x + sum_{y < x} vZ[v] H_y (Bruhat order), computed by the
standard multiply-by-(H_s + v)-and-correct recursion.  It is used in this
package as an internal cross-check oracle; the periodic module carries its
own self-dual basis.

Bernstein translation elements are theta_lam = H_{t(mu)} (H_{t(nu)})^{-1}
for any splitting lam = mu - nu into dominant parts; independence of the
splitting is asserted in the test suite.

All caches are plain dicts owned by the algebra object; operations are pure
apart from cache insertion, so sharing an algebra across threads only needs
the usual CPython guarantees.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

from .laurent import ONE, V, VINV, ZERO, LaurentPoly
from .rootdata import Weight
from .weyl import AffineWeyl, ExtAffineElement

__all__ = ["HeckeAlgebra", "HeckeElement"]

_V_MINUS_VINV = V - VINV  # v - v^{-1}


class HeckeElement:
    """A finite Z[v^{+-1}]-linear combination of standard basis elements."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: Mapping[ExtAffineElement, LaurentPoly]):
        self.algebra = algebra
        self.terms = {x: p for x, p in terms.items() if not p.is_zero()}

    # -- linear structure ------------------------------------------------------

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        d = dict(self.terms)
        for x, p in other.terms.items():
            q = d.get(x)
            d[x] = p if q is None else q + p
        return HeckeElement(self.algebra, d)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        d = dict(self.terms)
        for x, p in other.terms.items():
            q = d.get(x, ZERO)
            d[x] = q - p
        return HeckeElement(self.algebra, d)

    def scale(self, p: LaurentPoly | int) -> "HeckeElement":
        if isinstance(p, int):
            p = LaurentPoly({0: p})
        return HeckeElement(self.algebra, {x: q * p for x, q in self.terms.items()})

    def coefficient(self, x: ExtAffineElement) -> LaurentPoly:
        return self.terms.get(x, ZERO)

    def support(self) -> list[ExtAffineElement]:
        return list(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key in hot paths
        return hash(frozenset((x, p) for x, p in self.terms.items()))

    # -- products ----------------------------------------------------------------

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return self.algebra.multiply(self, other)

    def bar(self) -> "HeckeElement":
        return self.algebra.bar(self)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for x in self.algebra.sort_support(self.terms):
            parts.append(f"({self.terms[x]})*H[{x!r}]")
        return " + ".join(parts)

    def to_json(self) -> list:
        alg = self.algebra
        return [
            {"element": alg.group.format_element(x), "polynomial": self.terms[x].to_json()}
            for x in alg.sort_support(self.terms)
        ]


class HeckeAlgebra:
    def __init__(self, group: AffineWeyl):
        self.group = group
        self.rd = group.rd
        self._bar_cache: dict = {}
        self._kl_cache: dict = {}

    # -- constructors --------------------------------------------------------------

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def unit(self) -> HeckeElement:
        return HeckeElement(self, {self.group.identity(): ONE})

    def basis(self, x: ExtAffineElement) -> HeckeElement:
        return HeckeElement(self, {x: ONE})

    def from_terms(self, terms: Mapping[ExtAffineElement, LaurentPoly]) -> HeckeElement:
        return HeckeElement(self, terms)

    def sort_support(self, terms: Iterable[ExtAffineElement]) -> list[ExtAffineElement]:
        return sorted(terms, key=lambda x: (x.length, x.trans.coords, x.w.index))

    # -- products ----------------------------------------------------------------------

    def right_mul_gen(self, h: HeckeElement, j: int) -> HeckeElement:
        """h * H_{s_j} for an affine simple reflection s_j."""
        g = self.group
        out: dict[ExtAffineElement, LaurentPoly] = {}
        for x, p in h.terms.items():
            xs = g.right_multiply_gen(x, j)
            q = out.get(xs)
            out[xs] = p if q is None else q + p
            if xs.length < x.length:
                extra = p * _V_MINUS_VINV
                q = out.get(x)
                out[x] = -extra if q is None else q - extra
        return HeckeElement(self, out)

    def right_mul_gen_inverse(self, h: HeckeElement, j: int) -> HeckeElement:
        """h * (H_{s_j})^{-1} = h * (H_{s_j} + (v - v^{-1}))."""
        return self.right_mul_gen(h, j) + h.scale(_V_MINUS_VINV)

    def right_mul_cs(self, h: HeckeElement, j: int) -> HeckeElement:
        """h * (H_{s_j} + v), the self-dual generator product."""
        return self.right_mul_gen(h, j) + h.scale(V)

    def right_mul_element(self, h: HeckeElement, y: ExtAffineElement) -> HeckeElement:
        """h * H_y via a reduced word for y."""
        word, omega = self.group.reduced_word(y)
        # H_y = H_omega H_{s_j1} ... H_{s_jk}; multiply left-to-right.
        cur = self.right_mul_basis_translate(h, omega)
        for j in word:
            cur = self.right_mul_gen(cur, j)
        return cur

    def right_mul_basis_translate(self, h: HeckeElement, omega: ExtAffineElement) -> HeckeElement:
        """h * H_omega for a length-zero omega: pure index relabelling."""
        if omega.length != 0:
            raise ValueError("expected a length-zero element")
        g = self.group
        return HeckeElement(self, {g.multiply(x, omega): p for x, p in h.terms.items()})

    def multiply(self, h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
        out = self.zero()
        for y, p in h2.terms.items():
            out = out + self.right_mul_element(h1.scale(p), y)
        return out

    def inverse_basis(self, x: ExtAffineElement) -> HeckeElement:
        """(H_x)^{-1}, via the reversed word of generator inverses."""
        word, omega = self.group.reduced_word(x)
        cur = self.unit()
        for j in reversed(word):
            cur = self.right_mul_gen_inverse(cur, j)
        return self.right_mul_basis_translate(cur, self.group.inverse(omega))

    # -- bar involution --------------------------------------------------------------------

    def bar_basis(self, x: ExtAffineElement) -> HeckeElement:
        """bar(H_x) = (H_{x^{-1}})^{-1}, cached."""
        hit = self._bar_cache.get(x)
        if hit is None:
            hit = self.inverse_basis(self.group.inverse(x))
            self._bar_cache[x] = hit
        return hit

    def bar(self, h: HeckeElement) -> HeckeElement:
        out = self.zero()
        for x, p in h.terms.items():
            out = out + self.bar_basis(x).scale(p.bar())
        return out

    # -- Kazhdan-Lusztig basis (internal oracle) ----------------------------------------------

    def kl_basis(self, x: ExtAffineElement, max_length: int = 64) -> HeckeElement:
        """The self-dual basis element at x for the Bruhat order.

        Unique bar-invariant element of H_x + sum_{y<x} vZ[v] H_y.  The
        recursion multiplies the element one step down by (H_s + v) and
        subtracts integer multiples of shorter self-dual elements until all
        off-leading coefficients lie in vZ[v].
        """
        hit = self._kl_cache.get(x)
        if hit is not None:
            return hit
        if x.length > max_length:
            raise ResourceError(f"KL recursion exceeds configured length bound {max_length}")
        if x.length == 0:
            result = self.basis(x)
        else:
            j = next(k for k in self.group.affine_generator_indices() if self.group.right_descent(x, k))
            u = self.group.right_multiply_gen(x, j)
            cur = self.right_mul_cs(self.kl_basis(u, max_length), j)
            while True:
                offenders = [
                    y for y, p in cur.terms.items() if y != x and not p.in_v_times_Zv()
                ]
                if not offenders:
                    break
                y = max(offenders, key=lambda z: z.length)
                m = cur.terms[y].lower_symmetrization()
                if not m.is_bar_symmetric() or m.coefficient(0) != cur.terms[y].coefficient(0):
                    raise AssertionError("unexpected correction shape in KL recursion")
                cur = cur - self.kl_basis(y, max_length).scale(m)
            result = cur
        lead = result.coefficient(x)
        if lead != ONE:
            raise AssertionError("KL basis element has wrong leading coefficient")
        self._kl_cache[x] = result
        return result

    # -- Bernstein translation elements -----------------------------------------------------------

    def bernstein(self, lam: Weight) -> HeckeElement:
        """theta_lam = H_{t(lam_+)} (H_{t(lam_-)})^{-1} with dominant lam_+ and lam_-."""
        plus = Weight(tuple(max(c, 0) for c in lam.coords))
        minus = Weight(tuple(max(-c, 0) for c in lam.coords))
        g = self.group
        h = self.basis(g.translation(plus))
        if minus.is_zero():
            return h
        return self.multiply(h, self.inverse_basis(g.translation(minus)))


class ResourceError(RuntimeError):
    """Raised when a configured resource bound is exceeded."""
