"""Built-in rings and ideals used by the scenarios and the CLI."""

from __future__ import annotations

from gradua.arith.fields import Field
from gradua.rings.ring import HomIdeal, RingPresentation

B_RELATIONS = ["x^2+x*y+y^2", "x^2*y+x*y^2"]

RINGS = {
    "poly1": ([("x", 1)], []),
    "poly2": ([("x", 1), ("y", 1)], []),
    "poly3": ([("x", 1), ("y", 1), ("z", 1)], []),
    "klein": ([("a", 1), ("b", 1)], []),
    "B": ([("x", 1), ("y", 1)], B_RELATIONS),
    "h_q8": ([("x", 1), ("y", 1), ("z", 4)], B_RELATIONS),
    "m_squared": ([("x", 1), ("y", 1)], ["x^2", "x*y", "y^2"]),
    "z_w2": ([("z", 1), ("w", 1)], ["w^2"]),
}


def ring(name: str, field: Field | None = None) -> RingPresentation:
    gens, rels = RINGS[name]
    return RingPresentation(field or Field(2), gens, rels, name=name)


def ideal(r: RingPresentation, gens) -> HomIdeal:
    return r.ideal(list(gens))
