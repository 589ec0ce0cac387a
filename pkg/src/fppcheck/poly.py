"""Homogeneous polynomials in U0..U9 and the action of G = Z/7 x| Z/3.

Coefficients come from a pluggable field: :data:`~fppcheck.arith.QQ_T` for
exact work, :class:`~fppcheck.arith.PrimeField` after reduction.

The diagonal generator g7 is never applied with actual roots of unity.  It
scales ``U_i`` by ``xi**W7[i]``, so a monomial picks up ``xi**weight`` and a
polynomial spans a g7-stable line iff all its monomials share one weight.
The generator g3 acts by direct substitution of the permuted coordinates,
``f -> f(U0, U2, U3, U1, U5, U6, U4, U8, U9, U7)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cache
from itertools import combinations_with_replacement

from .arith import (
    QQ_T,
    ModularEmbedding,
    NumberField,
    NumberFieldElement,
    PrimeField,
)

NVARS = 10
W7 = (0, 6, 5, 3, 1, 2, 4, 1, 2, 4)
# U_i <- U_{G3_SOURCE[i]}
G3_SOURCE = (0, 2, 3, 1, 5, 6, 4, 8, 9, 7)


@dataclass(frozen=True, eq=False)
class Monomial:
    """Exponent vector of length 10 with a cached total degree.

    Ordered by graded reverse lexicographic order with U0 > U1 > ... > U9.
    """

    exps: tuple[int, ...]
    degree: int

    def __init__(self, exps: Iterable[int]) -> None:
        exps = tuple(exps)
        if len(exps) != NVARS or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps}")
        object.__setattr__(self, "exps", exps)
        object.__setattr__(self, "degree", sum(exps))

    @classmethod
    def var(cls, i: int, power: int = 1) -> Monomial:
        e = [0] * NVARS
        e[i] = power
        return cls(e)

    @classmethod
    def one(cls) -> Monomial:
        return cls((0,) * NVARS)

    def __hash__(self) -> int:
        return hash(self.exps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps

    def sort_key(self) -> tuple:
        return (self.degree, tuple(-e for e in reversed(self.exps)))

    def __lt__(self, other: Monomial) -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: Monomial) -> bool:
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other: Monomial) -> bool:
        return self.sort_key() > other.sort_key()

    def __ge__(self, other: Monomial) -> bool:
        return self.sort_key() >= other.sort_key()

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(a + b for a, b in zip(self.exps, other.exps))

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def __str__(self) -> str:
        parts = [f"U{i}" if e == 1 else f"U{i}^{e}" for i, e in enumerate(self.exps) if e]
        return "*".join(parts) if parts else "1"


def mono_g7_weight(m: Monomial) -> int:
    return sum(e * w for e, w in zip(m.exps, W7)) % 7


def mono_apply_g3(m: Monomial) -> Monomial:
    new = [0] * NVARS
    for i, e in enumerate(m.exps):
        new[G3_SOURCE[i]] += e
    return Monomial(new)


@cache
def monomials_of_degree(d: int) -> tuple[Monomial, ...]:
    """All monomials of degree ``d`` in descending grevlex order."""
    out = []
    for combo in combinations_with_replacement(range(NVARS), d):
        e = [0] * NVARS
        for i in combo:
            e[i] += 1
        out.append(Monomial(e))
    out.sort(reverse=True)
    return tuple(out)


class Polynomial:
    """Sparse polynomial: mapping Monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, ring=QQ_T) -> None:
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c
        self.terms: dict[Monomial, object] = clean
        self.ring = ring

    @classmethod
    def constant(cls, c, ring=QQ_T) -> Polynomial:
        return cls({Monomial.one(): c}, ring)

    @classmethod
    def variable(cls, i: int, ring=QQ_T) -> Polynomial:
        return cls({Monomial.var(i): ring.one}, ring)

    def __repr__(self) -> str:
        return f"Polynomial({self}, ring={self.ring})"

    def __str__(self) -> str:
        return self.format()

    def format(self, flagged: frozenset[Monomial] | set[Monomial] = frozenset()) -> str:
        """Canonical text: terms in descending grevlex order, ``(c)*U..``.

        Coefficients of monomials in ``flagged`` carry a ``?`` suffix.
        """
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            coeff = f"({self.terms[m]})"
            if m in flagged:
                coeff += "?"
            parts.append(coeff if m.degree == 0 else f"{coeff}*{m}")
        return " + ".join(parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _check_ring(self, other: Polynomial) -> None:
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __neg__(self) -> Polynomial:
        return Polynomial({m: -c for m, c in self.terms.items()}, self.ring)

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return Polynomial(out, self.ring)

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> Polynomial:
        return Polynomial({m: c * v for m, v in self.terms.items()}, self.ring)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_ring(other)
        out: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                v = c1 * c2
                out[m] = out[m] + v if m in out else v
        return Polynomial(out, self.ring)

    def __rmul__(self, other) -> Polynomial:
        return self.scale(other)

    def __pow__(self, n: int) -> Polynomial:
        result = Polynomial.constant(self.ring.one, self.ring)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, m: Monomial) -> Polynomial:
        return Polynomial({m * k: c for k, c in self.terms.items()}, self.ring)

    @property
    def support(self) -> list[Monomial]:
        return sorted(self.terms, reverse=True)

    def coefficient(self, m: Monomial):
        return self.terms.get(m, self.ring.zero)

    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {m.degree for m in self.terms}
        if d is not None:
            return degs <= {d}
        return len(degs) <= 1

    def apply_g3(self) -> Polynomial:
        return poly_apply_g3(self)

    def partial(self, i: int) -> Polynomial:
        return poly_partial(self, i)

    def evaluate(self, point: Sequence):
        return poly_evaluate(self, point)


def poly_apply_g3(f: Polynomial) -> Polynomial:
    return Polynomial({mono_apply_g3(m): c for m, c in f.terms.items()}, f.ring)


def poly_weight_homogeneous(f: Polynomial) -> int | None:
    """Common g7-weight of all monomials of ``f``, or None if they differ."""
    if not f:
        raise ValueError("weight of the zero polynomial is undefined")
    weights = {mono_g7_weight(m) for m in f.terms}
    return weights.pop() if len(weights) == 1 else None


def poly_partial(f: Polynomial, i: int) -> Polynomial:
    if not 0 <= i < NVARS:
        raise IndexError(f"variable index {i} out of range")
    out = {}
    for m, c in f.terms.items():
        e = m.exps[i]
        if e:
            new = list(m.exps)
            new[i] -= 1
            out[Monomial(new)] = c * e
    return Polynomial(out, f.ring)


def poly_evaluate(f: Polynomial, point: Sequence):
    if len(point) != NVARS:
        raise ValueError(f"point must have {NVARS} coordinates")
    total = f.ring.zero
    for m, c in f.terms.items():
        v = c
        for x, e in zip(point, m.exps):
            if e:
                v = v * x**e
                if not v:
                    break
        total = total + v
    return total


def poly_reduce_mod(f: Polynomial, e: ModularEmbedding) -> Polynomial:
    if not isinstance(f.ring, NumberField):
        raise ValueError("reduction needs a polynomial over Q(t)")
    field = PrimeField(e.p)
    return Polynomial({m: field(e.reduce_int(c)) for m, c in f.terms.items()}, field)


def reduce_to_ints(f: Polynomial, e: ModularEmbedding) -> dict[Monomial, int]:
    """Coefficientwise reduction as plain residues, zeros dropped."""
    out = {}
    for m, c in f.terms.items():
        v = e.reduce_int(c)
        if v:
            out[m] = v
    return out


@dataclass(frozen=True)
class GroupElement:
    """The element g7**a * g3**b of G, acting on monomials.

    ``act`` returns the image monomial and the power of xi it is scaled by.
    g3 is applied first (as a substitution), then g7 scales the result.
    """

    a: int = 0
    b: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", self.a % 7)
        object.__setattr__(self, "b", self.b % 3)

    def act(self, m: Monomial) -> tuple[Monomial, int]:
        for _ in range(self.b):
            m = mono_apply_g3(m)
        return m, (self.a * mono_g7_weight(m)) % 7

    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0


def g3_permutation_order() -> int:
    perm = list(range(NVARS))
    for n in range(1, 100):
        perm = [G3_SOURCE[j] for j in perm]
        if perm == list(range(NVARS)):
            return n
    raise RuntimeError("g3 substitution has no finite order below 100")


def g7_weight_order() -> int:
    """Smallest n>0 with n*w_i == 0 mod 7 for all i (order of g7)."""
    for n in range(1, 8):
        if all(n * w % 7 == 0 for w in W7):
            return n
    raise RuntimeError("unreachable")


def conjugation_exponent() -> int | None:
    """The k with W7[G3_SOURCE[i]] == k*W7[i] (mod 7) for every i.

    This is the relation g3 g7 g3^-1 = g7^k read on variables; returns None
    if no single k works.
    """
    for k in range(1, 7):
        if all(W7[G3_SOURCE[i]] == (k * W7[i]) % 7 for i in range(NVARS)):
            return k
    return None


__all__ = [
    "G3_SOURCE",
    "NVARS",
    "W7",
    "GroupElement",
    "Monomial",
    "NumberFieldElement",
    "Polynomial",
    "conjugation_exponent",
    "g3_permutation_order",
    "g7_weight_order",
    "mono_apply_g3",
    "mono_g7_weight",
    "monomials_of_degree",
    "poly_apply_g3",
    "poly_evaluate",
    "poly_partial",
    "poly_reduce_mod",
    "poly_weight_homogeneous",
    "reduce_to_ints",
]
