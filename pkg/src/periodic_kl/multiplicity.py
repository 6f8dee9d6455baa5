"""Block combinatorics and graded multiplicity tables.

Blocks of the principal-type module categories are labelled by orbits of the
l-dilated dot action; each orbit has a unique representative in the closed
fundamental alcove

    { lam : 0 <= <lam + rho, beta^> <= l  for all positive coroots beta^ },

whose lattice points this module enumerates together with their stabilizers
under the affine dot action.  The stabilizer of a point is generated by the
reflections through the alcove walls containing it: the finite reflection
s_i for a wall <lam + rho, alpha_i^> = 0 and the affine reflection
t(eta) s_eta for the upper wall <lam + rho, eta^> = l (eta the dominant root
with highest coroot).  A label is regular iff its stabilizer is trivial.

The graded multiplicity tables are views over the periodic and generic
polynomial tables of :mod:`.periodic`:

- simple-in-Verma:                [x : y]  =  q_{w0 x, w0 y},
- Verma-in-(truncated) projective: (x : y) =  q'_{w0 y, w0 x} if
  y dot_l 0 <= l * nu, and 0 otherwise,
- baby-Verma-in-projective and simple-in-baby-Verma, which coincide:
                                   p_{w0 x, w0 y}.

Grading normalization: each lift is normalized so that the diagonal entry
is 1 (no overall grading shift); tables are reported in that convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence

from .laurent import ONE, ZERO, LaurentPoly
from .periodic import PeriodicModule
from .rootdata import RootDatum, Weight, dominance_leq, pairing
from .weyl import AffineWeyl, ExtAffineElement

__all__ = [
    "BlockLabel",
    "MultiplicityTable",
    "enumerate_blocks",
    "select_omega_s",
    "MultiplicityTables",
]


@dataclass(frozen=True)
class BlockLabel:
    """An orbit label: a lattice point of the closed fundamental alcove."""

    representative: Weight
    stabilizer_generators: tuple[ExtAffineElement, ...]
    walls: tuple[str, ...]  # "s1", "s2", ... for lower walls, "s0" for the upper wall
    regular: bool


def enumerate_blocks(group: AffineWeyl) -> list[BlockLabel]:
    """All lattice points of the closed fundamental alcove with stabilizers."""
    rd = group.rd
    l = rd.l
    rank = rd.rank
    eta = rd.short_dominant_root
    eta_check = rd.coroot(eta)
    out = []
    for coords in _box(rank, -1, l - 1):
        lam = Weight(coords)
        shifted = lam + rd.rho
        if any(pairing(rd, shifted, rd.coroot(b)) < 0 for b in rd.positive_roots):
            continue
        if any(pairing(rd, shifted, rd.coroot(b)) > l for b in rd.positive_roots):
            continue
        gens: list[ExtAffineElement] = []
        walls: list[str] = []
        for i in range(rank):
            if pairing(rd, shifted, rd.simple_coroots[i]) == 0:
                gens.append(group.simple_reflection(i))
                walls.append(f"s{i + 1}")
        if pairing(rd, shifted, eta_check) == l:
            gens.append(group.affine_generator(0))
            walls.append("s0")
        out.append(
            BlockLabel(
                representative=lam,
                stabilizer_generators=tuple(gens),
                walls=tuple(walls),
                regular=not gens,
            )
        )
    out.sort(key=lambda b: b.representative.coords)
    return out


def select_omega_s(group: AffineWeyl, j: int) -> BlockLabel:
    """A block label whose dot-action stabilizer is {1, s_j} exactly.

    ``j`` indexes the affine simple reflections (0 is the affine one).
    """
    want = "s0" if j == 0 else f"s{j}"
    for label in enumerate_blocks(group):
        if label.walls == (want,):
            return label
    raise ValueError(f"no block label with stabilizer {{1, {want}}} (is l large enough?)")


TableKind = Literal[
    "simple_in_verma",
    "verma_in_projective_truncated",
    "babyverma_in_projective",
    "simple_in_babyverma",
]


@dataclass
class MultiplicityTable:
    kind: TableKind
    window: tuple[ExtAffineElement, ...]
    truncation: Optional[Weight]
    entries: dict[tuple[ExtAffineElement, ExtAffineElement], LaurentPoly]

    def get(self, x: ExtAffineElement, y: ExtAffineElement) -> LaurentPoly:
        return self.entries.get((x, y), ZERO)


class MultiplicityTables:
    """Graded multiplicities as views over one periodic-module context."""

    def __init__(self, module: PeriodicModule):
        self.module = module
        self.group = module.group
        self.rd = module.rd
        g = self.group
        self._w0 = g.element(Weight((0,) * self.rd.rank), g.w0.index)

    def _twist(self, x: ExtAffineElement) -> ExtAffineElement:
        return self.group.multiply(self._w0, x)

    # -- operations -------------------------------------------------------------

    def simple_in_verma(self, x: ExtAffineElement, y: ExtAffineElement) -> LaurentPoly:
        """Graded multiplicity of the simple at y dot 0 in the Verma at x dot 0."""
        return self.module.generic_polynomial(self._twist(x), self._twist(y), "q")

    def verma_in_projective(
        self, x: ExtAffineElement, y: ExtAffineElement, nu: Weight
    ) -> LaurentPoly:
        """Graded multiplicity of the Verma at y dot 0 in the nu-truncated
        projective at x dot 0; zero when y dot 0 is not below l*nu."""
        if not dominance_leq(self.rd, self.group.dot_zero(y), self.rd.l * nu):
            return ZERO
        return self.module.generic_polynomial(self._twist(y), self._twist(x), "qprime")

    def baby_verma_in_projective(self, x: ExtAffineElement, y: ExtAffineElement) -> LaurentPoly:
        """(projective at y : baby Verma at x), graded."""
        return self.module.p_polynomial(self._twist(x), self._twist(y))

    def simple_in_baby_verma(self, x: ExtAffineElement, y: ExtAffineElement) -> LaurentPoly:
        """[baby Verma at x : simple at y], graded; equals the reciprocal
        multiplicity baby_verma_in_projective(x, y)."""
        return self.module.p_polynomial(self._twist(x), self._twist(y))

    # -- tables ------------------------------------------------------------------

    def table(
        self,
        kind: TableKind,
        window: Sequence[ExtAffineElement],
        nu: Optional[Weight] = None,
    ) -> MultiplicityTable:
        win = tuple(window)
        entries: dict[tuple[ExtAffineElement, ExtAffineElement], LaurentPoly] = {}
        for x in win:
            for y in win:
                if kind == "simple_in_verma":
                    p = self.simple_in_verma(x, y)
                elif kind == "verma_in_projective_truncated":
                    if nu is None:
                        raise ValueError("truncated table needs a truncation weight nu")
                    p = self.verma_in_projective(x, y, nu)
                elif kind == "babyverma_in_projective":
                    p = self.baby_verma_in_projective(x, y)
                elif kind == "simple_in_babyverma":
                    p = self.simple_in_baby_verma(x, y)
                else:
                    raise ValueError(f"unknown table kind {kind!r}")
                if not p.is_zero():
                    entries[(x, y)] = p
        return MultiplicityTable(kind, win, nu, entries)


def _box(rank: int, lo: int, hi: int):
    if rank == 0:
        yield ()
        return
    for first in range(lo, hi + 1):
        for rest in _box(rank - 1, lo, hi):
            yield (first,) + rest
