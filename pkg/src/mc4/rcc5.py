"""Bridge between MC-4 congruence relations and RCC-5 parthood relations.

MC-4 talks about size and shape (can one region be congruently embedded in
the other?), RCC-5 about actual extension (is one region literally part of
the other?).  The two interact in both directions:

- to_rcc5 reads each congruence base case under its witnessing placement:
  congruent regions placed identically give EQ, an embeddable region placed
  inside its host gives PP (or PPI from the host's side), and two mutually
  unembeddable regions placed to overlap give PO.  Mapping a scenario this
  way yields an RCC-5 scenario realizing it.
- envelope lists every RCC-5 relation realizable by SOME placement of two
  regions in the given congruence relation: congruent regions can be
  equal, apart or overlapping but never proper parts of one another;
  mutually unembeddable regions can only be apart or overlapping.
- lift translates an RCC-5 statement back into what it forces about
  congruence: equal regions are congruent, a proper part is congruently
  embeddable in its whole, while overlap and disjointness force nothing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .algebra import EMPTY, UNIVERSAL, Relation, basics
from .solvers import Scenario


class Rcc5(enum.IntFlag):
    """RCC-5 relations as a bitmask of the five base cases."""

    EQ = 1    # identical extension
    PP = 2    # proper part
    PPI = 4   # has a proper part (converse of PP)
    PO = 8    # partial overlap
    DR = 16   # discrete (no common part)


RCC5_EMPTY = Rcc5(0)
RCC5_ALL = Rcc5(31)
RCC5_BASIC_RELATIONS = (Rcc5.EQ, Rcc5.PP, Rcc5.PPI, Rcc5.PO, Rcc5.DR)

_RCC5_TOKENS = ("EQ", "PP", "PPi", "PO", "DR")

_TO_RCC5 = {
    Relation.CG: Rcc5.EQ,
    Relation.CGPP: Rcc5.PP,
    Relation.CGPPI: Rcc5.PPI,
    Relation.CNO: Rcc5.PO,
}

_ENVELOPE = {
    Relation.CG: Rcc5.EQ | Rcc5.DR | Rcc5.PO,
    Relation.CGPP: Rcc5.PP | Rcc5.DR | Rcc5.PO,
    Relation.CGPPI: Rcc5.PPI | Rcc5.DR | Rcc5.PO,
    Relation.CNO: Rcc5.DR | Rcc5.PO,
}

_LIFT = {
    Rcc5.EQ: Relation.CG,
    Rcc5.PP: Relation.CGPP,
    Rcc5.PPI: Relation.CGPPI,
    Rcc5.PO: UNIVERSAL,
    Rcc5.DR: UNIVERSAL,
}


def to_rcc5(r: Relation) -> Rcc5:
    """RCC-5 image of r under witnessing placements, base case by base case."""
    out = RCC5_EMPTY
    for b in basics(r):
        out |= _TO_RCC5[b]
    return out


def envelope(r: Relation) -> Rcc5:
    """Every RCC-5 relation realizable by some placement respecting r."""
    out = RCC5_EMPTY
    for b in basics(r):
        out |= _ENVELOPE[b]
    return out


def lift(s: Rcc5) -> Relation:
    """MC-4 consequence of an RCC-5 statement (ALL when nothing is forced).

    The lift of a union is the union of the lifts, so a disjunctive RCC-5
    statement lifts to the weakest congruence constraint any disjunct
    allows; the empty statement lifts to NONE.
    """
    out = EMPTY
    for b in RCC5_BASIC_RELATIONS:
        if b & s:
            out |= _LIFT[b]
    return out


def format_rcc5(s: Rcc5) -> str:
    """Canonical token form: NONE, ALL, or |-joined base tokens."""
    code = int(s)
    if code == 0:
        return "NONE"
    if code == 31:
        return "ALL"
    return "|".join(_RCC5_TOKENS[k] for k in range(5) if code >> k & 1)


@dataclass(frozen=True)
class Rcc5Scenario:
    """Atomic RCC-5 assignment: one (i, j, code) triple per pair, i < j."""

    pairs: tuple[tuple[int, int, int], ...]

    def as_json(self) -> dict:
        return {"pairs": [[i, j, code] for i, j, code in self.pairs]}


def convert_scenario(scenario: Scenario) -> Rcc5Scenario:
    """RCC-5 scenario induced by an MC-4 scenario's witnessing placements."""
    pairs = tuple(
        (i, j, int(to_rcc5(Relation(code)))) for i, j, code in scenario.pairs
    )
    return Rcc5Scenario(pairs)
