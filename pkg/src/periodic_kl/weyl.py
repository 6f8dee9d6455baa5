"""Finite, affine and extended affine Weyl groups.

Every element of the extended affine group is kept in the normal form
``x = t(lam) * w`` with ``lam`` a weight (the translation part) and ``w`` in
the finite Weyl group; the group law is

    (t(lam) w)(t(mu) u) = t(lam + w mu)(w u).

The finite group is small for the supported ranks, so :class:`AffineWeyl`
tabulates it completely at construction (matrices on fundamental-weight
coordinates, lengths, reduced words, inverses, and the signs of ``w(beta)``
for every root ``beta``).  An :class:`ExtAffineElement` is then just a
translation vector plus an index into that table, which makes elements cheap
to hash and compare.

Affine simple reflections are indexed ``0, 1, ..., rank`` where index ``0``
is the reflection through the wall of the fundamental alcove not containing
the origin; concretely ``s_0 = t(eta) s_eta`` with ``eta`` the dominant root
whose coroot is the highest coroot.  The length-zero subgroup (isomorphic to
(weight lattice)/(root lattice)) is enumerated once from the minuscule
fundamental weights.

Lengths are computed by the Iwahori-Matsumoto formula

    len(t(lam) w) = sum_{b > 0, w^{-1} b > 0} |<lam, b^>|
                  + sum_{b > 0, w^{-1} b < 0} |<lam, b^> - 1|,

and the Bruhat order by the standard descent recursion, with comparability
only inside a common coset of the length-zero subgroup.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

from .rootdata import Coroot, RootDatum, Weight, pairing

__all__ = [
    "AffineWeyl",
    "ExtAffineElement",
    "FiniteWeylElement",
]


class FiniteWeylElement:
    """Element of the finite Weyl group: an integer matrix on weight coordinates.

    Instances are owned by an :class:`AffineWeyl` context and deduplicated, so
    identity comparison through the context index is valid.
    """

    __slots__ = ("index", "matrix", "word", "length", "inverse_index")

    def __init__(self, index: int, matrix: tuple[tuple[int, ...], ...], word: tuple[int, ...]):
        self.index = index
        self.matrix = matrix
        self.word = word  # reduced word in simple-reflection indices (0-based)
        self.length = len(word)
        self.inverse_index: int = -1  # filled by the context

    def apply(self, lam: Weight) -> Weight:
        m = self.matrix
        n = len(m)
        return Weight(tuple(sum(m[i][j] * lam.coords[j] for j in range(n)) for i in range(n)))

    def __repr__(self) -> str:
        return f"w[{' '.join(str(i + 1) for i in self.word)}]"


class ExtAffineElement:
    """Element ``t(lam) w`` of the extended affine Weyl group."""

    __slots__ = ("group", "trans", "w", "_length", "_hash", "_omega")

    def __init__(self, group: "AffineWeyl", trans: Weight, w: FiniteWeylElement):
        self.group = group
        self.trans = trans
        self.w = w
        self._length: Optional[int] = None
        self._hash: Optional[int] = None
        self._omega: Optional[tuple[int, ...]] = None

    # Equality ignores the context object itself: elements from different
    # contexts never meet in correct code, and operations check for that.
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtAffineElement):
            return NotImplemented
        return self.trans.coords == other.trans.coords and self.w.index == other.w.index

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.trans.coords, self.w.index))
        return self._hash

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = self.group.length(self)
        return self._length

    @property
    def omega_component(self) -> tuple[int, ...]:
        if self._omega is None:
            self._omega = self.group.rd.coset_tag(self.trans)
        return self._omega

    def __repr__(self) -> str:
        return self.group.format_element(self)


class AffineWeyl:
    """Context object: the extended affine Weyl group of a root datum."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self._gen_product_cache: dict = {}
        self._build_finite_group()
        self._build_affine_data()
        self._build_omega()

    # -- finite group table ----------------------------------------------------

    def _build_finite_group(self) -> None:
        rd = self.rd
        rank = rd.rank
        ident = tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))
        gens = []
        for i in range(rank):
            # s_i(lam) = lam - lam_i * alpha_i.
            col = rd.simple_roots[i].coords
            gens.append(tuple(tuple((1 if r == c else 0) - (col[r] if c == i else 0) for c in range(rank)) for r in range(rank)))
        elements: list[FiniteWeylElement] = [FiniteWeylElement(0, ident, ())]
        index_of = {ident: 0}
        frontier = [elements[0]]
        while frontier:
            el = frontier.pop(0)
            for i, g in enumerate(gens):
                # right multiplication: (el * s_i) acts by el.matrix @ g
                m = _matmul(el.matrix, g)
                if m not in index_of:
                    new = FiniteWeylElement(len(elements), m, el.word + (i,))
                    index_of[m] = new.index
                    elements.append(new)
                    frontier.append(new)
        self.finite_elements: tuple[FiniteWeylElement, ...] = tuple(elements)
        self._findex = index_of
        self._gen_indices = [index_of[g] for g in gens]

        n = len(elements)
        self._fin_mul = [[0] * n for _ in range(n)]
        for a in elements:
            for b in elements:
                self._fin_mul[a.index][b.index] = index_of[_matmul(a.matrix, b.matrix)]
        for a in elements:
            for b in elements:
                if self._fin_mul[a.index][b.index] == 0:
                    a.inverse_index = b.index
        # Reduced words from BFS are geodesic, so word length is the Coxeter length;
        # cross-check against the inversion count.
        for a in elements:
            inv = sum(1 for beta in rd.positive_roots if rd.root_sign(a.apply(beta)) < 0)
            assert inv == a.length, "BFS word is not reduced"
        self.w0 = max(elements, key=lambda e: e.length)
        assert self.w0.length == len(rd.positive_roots)

        # sign_table[w][k] = sign of w(beta_k) for the k-th positive root.
        self.sign_table = tuple(
            tuple(rd.root_sign(w.apply(beta)) for beta in rd.positive_roots) for w in elements
        )
        self._pos_root_index = {beta.coords: k for k, beta in enumerate(rd.positive_roots)}
        # image_root[w][k] = weight coords of w(beta_k), used by the length formula.
        self.simple_root_pos = tuple(self._pos_root_index[rd.simple_roots[i].coords] for i in range(rank))
        # finite reflection s_beta for each positive root, as a group index.
        self.reflection_index = tuple(
            self._findex[self._reflection_matrix(beta)] for beta in rd.positive_roots
        )

    # -- affine data -------------------------------------------------------------

    def _build_affine_data(self) -> None:
        rd = self.rd
        eta = rd.short_dominant_root
        self.s0_root = eta
        self.s0_root_pos = self._pos_root_index[eta.coords]
        refl = self._reflection_matrix(eta)
        self.s0_finite_index = self._findex[refl]
        # affine generator list: index 0 is s_0, index i >= 1 is s_i.
        self.num_affine_gens = rd.rank + 1

    def _reflection_matrix(self, beta: Weight) -> tuple[tuple[int, ...], ...]:
        rd = self.rd
        rank = rd.rank
        cor = rd.coroot(beta).coords
        # s_beta(lam) = lam - <lam, beta^> beta
        return tuple(
            tuple((1 if r == c else 0) - beta.coords[r] * cor[c] for c in range(rank)) for r in range(rank)
        )

    # -- length-zero subgroup ------------------------------------------------------

    def _build_omega(self) -> None:
        rd = self.rd
        found: dict[tuple[int, ...], ExtAffineElement] = {}
        found[rd.coset_tag(Weight((0,) * rd.rank))] = self.identity()
        for i in range(rd.rank):
            wt = rd.fundamental_weight(i)
            if all(pairing(rd, wt, rd.coroot(b)) <= 1 for b in rd.positive_roots):
                for w in self.finite_elements:
                    cand = self.element(wt, w)
                    if self.length(cand) == 0:
                        found.setdefault(rd.coset_tag(wt), cand)
                        break
        # close under multiplication
        changed = True
        while changed:
            changed = False
            for a in list(found.values()):
                for b in list(found.values()):
                    c = self.multiply(a, b)
                    tag = c.omega_component
                    if tag not in found:
                        found[tag] = c
                        changed = True
        if len(found) != rd.lattice_index_e:
            raise AssertionError("length-zero subgroup has wrong size")
        self.omega_elements = found  # tag -> canonical length-0 element

    # -- element constructors ------------------------------------------------------

    def identity(self) -> ExtAffineElement:
        return ExtAffineElement(self, Weight((0,) * self.rd.rank), self.finite_elements[0])

    def element(self, trans: Weight, w: FiniteWeylElement | int) -> ExtAffineElement:
        if isinstance(w, int):
            w = self.finite_elements[w]
        return ExtAffineElement(self, trans, w)

    def translation(self, lam: Weight) -> ExtAffineElement:
        return ExtAffineElement(self, lam, self.finite_elements[0])

    def simple_reflection(self, i: int) -> ExtAffineElement:
        """The i-th finite simple reflection as an extended affine element (i >= 1 one-based? no: 0-based)."""
        return self.element(Weight((0,) * self.rd.rank), self._gen_indices[i])

    def affine_generator(self, j: int) -> ExtAffineElement:
        """Affine simple reflection: j = 0 is s_0, j >= 1 is the finite s_j."""
        if j == 0:
            return self.element(self.s0_root, self.s0_finite_index)
        return self.simple_reflection(j - 1)

    def affine_generator_indices(self) -> range:
        return range(self.num_affine_gens)

    # -- group operations ------------------------------------------------------------

    def _check(self, *xs: ExtAffineElement) -> None:
        for x in xs:
            if x.group is not self:
                raise ValueError("elements belong to different root data")

    def multiply(self, x: ExtAffineElement, y: ExtAffineElement) -> ExtAffineElement:
        self._check(x, y)
        trans = x.trans + x.w.apply(y.trans)
        w = self.finite_elements[self._fin_mul[x.w.index][y.w.index]]
        return ExtAffineElement(self, trans, w)

    def inverse(self, x: ExtAffineElement) -> ExtAffineElement:
        self._check(x)
        winv = self.finite_elements[x.w.inverse_index]
        return ExtAffineElement(self, -winv.apply(x.trans), winv)

    def right_multiply_gen(self, x: ExtAffineElement, j: int) -> ExtAffineElement:
        """x * s_j for an affine simple reflection, without building s_j.

        Memoized: generator products dominate the basis recursions, so the
        (element, generator) -> element map is kept for the context's lifetime.
        """
        key = (x.trans.coords, x.w.index, j)
        hit = self._gen_product_cache.get(key)
        if hit is not None:
            return hit
        if j == 0:
            trans = x.trans + x.w.apply(self.s0_root)
            w = self.finite_elements[self._fin_mul[x.w.index][self.s0_finite_index]]
        else:
            trans = x.trans
            w = self.finite_elements[self._fin_mul[x.w.index][self._gen_indices[j - 1]]]
        result = ExtAffineElement(self, trans, w)
        self._gen_product_cache[key] = result
        return result

    def translate_left(self, nu: Weight, x: ExtAffineElement) -> ExtAffineElement:
        """t(nu) * x; cheap because it only shifts the translation part."""
        return ExtAffineElement(self, nu + x.trans, x.w)

    def length(self, x: ExtAffineElement) -> int:
        self._check(x)
        rd = self.rd
        total = 0
        inv_sign = self.sign_table[x.w.inverse_index]
        for k, beta in enumerate(rd.positive_roots):
            p = pairing(rd, x.trans, rd.coroot(beta))
            if inv_sign[k] > 0:
                total += abs(p)
            else:
                total += abs(p - 1)
        return total

    def longest_element(self) -> FiniteWeylElement:
        return self.w0

    # -- dot action -----------------------------------------------------------------

    def dot_action(self, x: ExtAffineElement, lam: Weight, n: int) -> Weight:
        """The n-dilated rho-shifted action: for x = t(nu) w this is w(lam+rho) + n*nu - rho."""
        self._check(x)
        rd = self.rd
        return x.w.apply(lam + rd.rho) + n * x.trans - rd.rho

    def dot_zero(self, x: ExtAffineElement, n: Optional[int] = None) -> Weight:
        """x dot 0 at dilation n (default: the datum's l)."""
        if n is None:
            n = self.rd.l
        return x.w.apply(self.rd.rho) + n * x.trans - self.rd.rho

    # -- descents, words, Bruhat order -------------------------------------------------

    def right_descent(self, x: ExtAffineElement, j: int) -> bool:
        """True iff len(x s_j) < len(x)."""
        return self.right_multiply_gen(x, j).length < x.length

    def reduced_word(self, x: ExtAffineElement) -> tuple[tuple[int, ...], ExtAffineElement]:
        """A reduced word for the affine part, and the residual length-zero element.

        Returns ``(word, omega)`` with ``x = omega * s_{j1} ... s_{jk}`` and
        ``k = len(x)``.  The word is canonical (lowest descent peeled first
        from the right).
        """
        self._check(x)
        word_rev: list[int] = []
        cur = x
        while cur.length > 0:
            for j in range(self.num_affine_gens):
                nxt = self.right_multiply_gen(cur, j)
                if nxt.length < cur.length:
                    word_rev.append(j)
                    cur = nxt
                    break
            else:
                raise AssertionError("positive-length element with no descent")
        return tuple(reversed(word_rev)), cur

    def from_word(self, word: Iterable[int], omega: Optional[ExtAffineElement] = None) -> ExtAffineElement:
        """Rebuild ``omega * s_{j1} ... s_{jk}`` from a word and optional omega part."""
        cur = self.identity() if omega is None else omega
        for j in word:
            cur = self.right_multiply_gen(cur, j)
        return cur

    def bruhat_leq(self, x: ExtAffineElement, y: ExtAffineElement) -> bool:
        """Bruhat order on the extended group: subword order after splitting off
        the common length-zero part; False across different cosets."""
        self._check(x, y)
        if x.omega_component != y.omega_component:
            return False
        return self._bruhat_af(x, y)

    def _bruhat_af(self, x: ExtAffineElement, y: ExtAffineElement) -> bool:
        # Descent recursion: if ys < y then x <= y iff (xs <= ys if xs < x else x <= ys).
        lx, ly = x.length, y.length
        while True:
            if lx > ly:
                return False
            if ly == 0:
                return x == y
            for j in range(self.num_affine_gens):
                ys = self.right_multiply_gen(y, j)
                if ys.length < ly:
                    xs = self.right_multiply_gen(x, j)
                    if xs.length < lx:
                        x, lx = xs, lx - 1
                    y, ly = ys, ly - 1
                    break
            else:  # pragma: no cover
                raise AssertionError("positive-length element with no descent")

    # -- element text form ---------------------------------------------------------

    def format_element(self, x: ExtAffineElement) -> str:
        coords = ",".join(str(c) for c in x.trans.coords)
        word = " ".join(str(i + 1) for i in x.w.word)
        return f"t({coords})*w[{word}]"

    def parse_element(self, text: str) -> ExtAffineElement:
        """Parse the textual form ``t(a1,...,ar)*w[i1 i2 ...]``.

        The finite word uses 1-based simple-reflection indices; ``w[]`` is the
        identity.  A bare ``t(...)`` is accepted for pure translations.
        """
        s = text.strip()
        if "*" in s:
            tpart, wpart = s.split("*", 1)
        else:
            tpart, wpart = s, "w[]"
        tpart = tpart.strip()
        wpart = wpart.strip()
        if not (tpart.startswith("t(") and tpart.endswith(")")):
            raise ValueError(f"bad element syntax: {text!r}")
        inner = tpart[2:-1].strip()
        coords = [int(c) for c in inner.split(",")] if inner else []
        if len(coords) != self.rd.rank:
            raise ValueError(f"expected {self.rd.rank} translation coordinates in {text!r}")
        if not (wpart.startswith("w[") and wpart.endswith("]")):
            raise ValueError(f"bad element syntax: {text!r}")
        idxs = [int(t) for t in wpart[2:-1].split()] if wpart[2:-1].strip() else []
        w = self.finite_elements[0]
        for i in idxs:
            if not 1 <= i <= self.rd.rank:
                raise ValueError(f"finite reflection index {i} out of range in {text!r}")
            w = self.finite_elements[self._fin_mul[w.index][self._gen_indices[i - 1]]]
        return self.element(Weight(tuple(coords)), w)

    def elements_of_length_leq(self, bound: int) -> Iterator[ExtAffineElement]:
        """All extended elements of length <= bound (BFS over generators and omega)."""
        seen = set()
        frontier: list[ExtAffineElement] = []
        for om in self.omega_elements.values():
            if om not in seen:
                seen.add(om)
                frontier.append(om)
        yield from frontier
        while frontier:
            nxt: list[ExtAffineElement] = []
            for x in frontier:
                for j in range(self.num_affine_gens):
                    y = self.right_multiply_gen(x, j)
                    if y not in seen and y.length <= bound:
                        seen.add(y)
                        nxt.append(y)
                        yield y
            frontier = nxt


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))
