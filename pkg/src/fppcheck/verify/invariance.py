"""Certificate that the span of the cubics is stable under G = <g7, g3>.

g7 acts diagonally, so stability reduces to every equation having a single
g7-weight.  g3 permutes variables; stability of the degree-3 span is checked
by exact row reduction over Q(t).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..corpus import EquationCorpus
from ..linalg import ExactEchelon
from ..poly import (
    conjugation_exponent,
    g3_permutation_order,
    g7_weight_order,
    mono_g7_weight,
    poly_apply_g3,
    poly_weight_homogeneous,
)


@dataclass(frozen=True)
class InvarianceOutcome:
    weights: dict[int, int | None]
    g3_outside_span: tuple[int, ...]
    g3_order: int
    g7_order: int
    conjugation_k: int | None
    first_violation: str | None = None

    @property
    def weight_homogeneous(self) -> bool:
        return all(w is not None for w in self.weights.values())

    @property
    def relations_hold(self) -> bool:
        return self.g3_order == 3 and self.g7_order == 7 and self.conjugation_k in (2, 4)

    @property
    def passed(self) -> bool:
        return self.weight_homogeneous and not self.g3_outside_span and self.relations_hold


def invariance_certificate(c: EquationCorpus) -> InvarianceOutcome:
    weights: dict[int, int | None] = {}
    violation = None
    for e in c.entries:
        w = poly_weight_homogeneous(e.poly) if e.poly else 0
        weights[e.index] = w
        if w is None and violation is None:
            support = e.poly.support
            w0 = mono_g7_weight(support[0])
            bad = next(m for m in support if mono_g7_weight(m) != w0)
            violation = f"eq {e.index}: {bad} has weight {mono_g7_weight(bad)}, {support[0]} has {w0}"

    span = ExactEchelon()
    for e in c.entries:
        span.add({m.exps: v for m, v in e.poly.terms.items()})
    outside = []
    for e in c.entries:
        image = poly_apply_g3(e.poly)
        if span.reduce({m.exps: v for m, v in image.terms.items()}):
            outside.append(e.index)
            if violation is None:
                violation = f"g3(eq {e.index}) is not in the span of the equations"

    k = conjugation_exponent()
    g3o, g7o = g3_permutation_order(), g7_weight_order()
    if violation is None and not (g3o == 3 and g7o == 7 and k in (2, 4)):
        violation = f"group relations fail: ord(g3)={g3o}, ord(g7)={g7o}, k={k}"
    return InvarianceOutcome(weights, tuple(outside), g3o, g7o, k, violation)
