"""Exact arithmetic in Q(t), t = i*sqrt(7), and its reductions to prime fields.

Elements of the quadratic field are pairs of rationals ``a + b*t`` with the
single relation ``t**2 == -7``.  A :class:`ModularEmbedding` fixes a prime
``p`` and a residue ``r`` with ``r**2 == -7 (mod p)``; reducing an element
sends ``t`` to ``r``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class InadmissiblePrimeError(ValueError):
    """The prime cannot be used to reduce the corpus."""


class NotAQuadraticResidueError(InadmissiblePrimeError):
    pass


def _as_fraction(x: Rational | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class NumberFieldElement:
    """An element ``a + b*t`` of Q(t) with ``t**2 = -7``."""

    __slots__ = ("a", "b")

    a: Fraction
    b: Fraction

    def __init__(self, a: Rational | str = 0, b: Rational | str = 0) -> None:
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("NumberFieldElement is immutable")

    def __reduce__(self):
        return (NumberFieldElement, (self.a, self.b))

    @classmethod
    def _coerce(cls, other) -> NumberFieldElement | None:
        if isinstance(other, NumberFieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other, 0)
        return None

    def __repr__(self) -> str:
        return f"NumberFieldElement({self.a!s}, {self.b!s})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        tpart = "t" if abs(self.b) == 1 else f"{abs(self.b)}*t"
        if self.a == 0:
            return tpart if self.b > 0 else f"-{tpart}"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{tpart}"

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __neg__(self) -> NumberFieldElement:
        return NumberFieldElement(-self.a, -self.b)

    def __add__(self, other) -> NumberFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other) -> NumberFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(self.a - o.a, self.b - o.b)

    def __rsub__(self, other) -> NumberFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> NumberFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return nf_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other) -> NumberFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return nf_mul(self, nf_inv(o))

    def __rtruediv__(self, other) -> NumberFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return nf_mul(o, nf_inv(self))

    def __pow__(self, n: int) -> NumberFieldElement:
        if n < 0:
            return nf_inv(self) ** (-n)
        result = NumberFieldElement(1)
        base = self
        while n:
            if n & 1:
                result = nf_mul(result, base)
            base = nf_mul(base, base)
            n >>= 1
        return result

    def conjugate(self) -> NumberFieldElement:
        return NumberFieldElement(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + 7 * self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def denominator(self) -> int:
        """Least common denominator of both rational components."""
        da, db = self.a.denominator, self.b.denominator
        return da * db // _gcd(da, db)

    @classmethod
    def parse(cls, text: str) -> NumberFieldElement:
        """Inverse of ``str``; also accepts ``(a+b*t)/n`` and ``(a+b*t)``."""
        s = text.replace(" ", "")
        scale = Fraction(1)
        m = _WRAPPED_RE.fullmatch(s)
        if m is not None:
            s = m.group("body")
            if m.group("den"):
                scale = 1 / Fraction(m.group("den"))
        m = _NF_RE.fullmatch(s)
        if m is None:
            raise ValueError(f"not a number field element: {text!r}")
        if m.group("a") is not None:
            a = Fraction(m.group("a"))
            if m.group("sign") is None:
                return cls(a * scale, 0)
            b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
            if m.group("sign") == "-":
                b = -b
        else:
            a = Fraction(0)
            b = Fraction(m.group("b2")) if m.group("b2") else Fraction(1)
            if m.group("neg"):
                b = -b
        return cls(a * scale, b * scale)


_NUM = r"\d+(?:/\d+)?"
_NF_RE = re.compile(
    rf"(?P<a>-?{_NUM})(?:(?P<sign>[+-])(?:(?P<b>{_NUM})\*)?t)?"
    rf"|(?P<neg>-)?(?:(?P<b2>{_NUM})\*)?t"
)
_WRAPPED_RE = re.compile(rf"\((?P<body>[^()]+)\)(?:/(?P<den>{_NUM}))?")


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return x


THETA = NumberFieldElement(0, 1)


def nf_mul(x: NumberFieldElement, y: NumberFieldElement) -> NumberFieldElement:
    return NumberFieldElement(x.a * y.a - 7 * x.b * y.b, x.a * y.b + x.b * y.a)


def nf_inv(x: NumberFieldElement) -> NumberFieldElement:
    n = x.norm()
    if n == 0:
        raise ZeroDivisionError("inverse of zero in Q(t)")
    return NumberFieldElement(x.a / n, -x.b / n)


class PrimeFieldElement:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("modulus", "residue")

    residue: int
    modulus: int

    def __init__(self, residue: int, modulus: int) -> None:
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "residue", residue % modulus)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeFieldElement is immutable")

    def __reduce__(self):
        return (PrimeFieldElement, (self.residue, self.modulus))

    def _coerce(self, other) -> PrimeFieldElement | None:
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise ValueError(f"moduli differ: {self.modulus} vs {other.modulus}")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.modulus)
        return None

    def __repr__(self) -> str:
        return f"PrimeFieldElement({self.residue}, {self.modulus})"

    def __str__(self) -> str:
        return str(self.residue)

    def __int__(self) -> int:
        return self.residue

    def __eq__(self, other) -> bool:
        if isinstance(other, PrimeFieldElement):
            return self.residue == other.residue and self.modulus == other.modulus
        if isinstance(other, int):
            return self.residue == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, self.modulus))

    def __bool__(self) -> bool:
        return self.residue != 0

    def __neg__(self) -> PrimeFieldElement:
        return PrimeFieldElement(-self.residue, self.modulus)

    def __add__(self, other) -> PrimeFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue + o.residue, self.modulus)

    __radd__ = __add__

    def __sub__(self, other) -> PrimeFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue - o.residue, self.modulus)

    def __rsub__(self, other) -> PrimeFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> PrimeFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElement(self.residue * o.residue, self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> PrimeFieldElement:
        if self.residue == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.modulus}")
        return PrimeFieldElement(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other) -> PrimeFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> PrimeFieldElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> PrimeFieldElement:
        return PrimeFieldElement(pow(self.residue, n, self.modulus), self.modulus)


@dataclass(frozen=True)
class NumberField:
    """Coefficient ring tag for Q(t)."""

    def __call__(self, a: Rational = 0, b: Rational = 0) -> NumberFieldElement:
        return NumberFieldElement(a, b)

    @property
    def zero(self) -> NumberFieldElement:
        return NumberFieldElement(0)

    @property
    def one(self) -> NumberFieldElement:
        return NumberFieldElement(1)

    def __str__(self) -> str:
        return "QQ(sqrt(-7))"


@dataclass(frozen=True)
class PrimeField:
    """Coefficient ring tag for F_p."""

    p: int

    def __call__(self, x: int) -> PrimeFieldElement:
        return PrimeFieldElement(x, self.p)

    @property
    def zero(self) -> PrimeFieldElement:
        return PrimeFieldElement(0, self.p)

    @property
    def one(self) -> PrimeFieldElement:
        return PrimeFieldElement(1, self.p)

    def __str__(self) -> str:
        return f"GF({self.p})"


QQ_T = NumberField()


def is_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.3e24
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _tonelli_shanks(n: int, p: int) -> int:
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        raise NotAQuadraticResidueError(f"{n} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def check_admissible(p: int) -> None:
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        raise InadmissiblePrimeError(f"p={p} must be an odd prime")
    if not is_prime(p):
        raise InadmissiblePrimeError(f"p={p} is not prime")
    if p == 7:
        raise InadmissiblePrimeError("p=7 is ramified in Q(sqrt(-7))")


def sqrt_minus7_mod_p(p: int) -> int:
    """Least residue r in [0, p/2] with r**2 == -7 (mod p)."""
    check_admissible(p)
    try:
        r = _tonelli_shanks(-7, p)
    except NotAQuadraticResidueError:
        raise NotAQuadraticResidueError(
            f"-7 is not a quadratic residue mod {p}"
        ) from None
    return min(r, p - r)


# float64 matrix products in splinalg stay exact only below this bound
MAX_MODULUS = 1 << 24


@dataclass(frozen=True)
class ModularEmbedding:
    """Reduction map Q(t) -> F_p sending t to ``r``."""

    p: int
    r: int

    def __post_init__(self) -> None:
        check_admissible(self.p)
        if self.p >= MAX_MODULUS:
            raise InadmissiblePrimeError(f"p={self.p} exceeds the supported bound {MAX_MODULUS}")
        if not 0 <= self.r < self.p:
            raise ValueError(f"root {self.r} not reduced mod {self.p}")
        if (self.r * self.r + 7) % self.p:
            raise NotAQuadraticResidueError(f"{self.r}^2 != -7 mod {self.p}")

    @classmethod
    def for_prime(cls, p: int, root: int | None = None) -> ModularEmbedding:
        if root is None:
            root = sqrt_minus7_mod_p(p)
        else:
            check_admissible(p)
            root %= p
        return cls(p, root)

    def conjugate(self) -> ModularEmbedding:
        return ModularEmbedding(self.p, (self.p - self.r) % self.p)

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def reduce_int(self, x: NumberFieldElement) -> int:
        """Image of ``x`` as a plain residue in [0, p)."""
        p = self.p
        a, b = x.a, x.b
        da, db = a.denominator % p, b.denominator % p
        if da == 0 or db == 0:
            raise InadmissiblePrimeError(
                f"denominator of {x} is not invertible mod {p}"
            )
        ra = a.numerator * pow(da, -1, p)
        rb = b.numerator * pow(db, -1, p)
        return (ra + rb * self.r) % p


def nf_reduce(x: NumberFieldElement, e: ModularEmbedding) -> PrimeFieldElement:
    return PrimeFieldElement(e.reduce_int(x), e.p)
