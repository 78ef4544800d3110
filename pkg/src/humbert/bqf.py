"""Integral binary quadratic forms: reduction, class numbers, Hurwitz numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_discriminant


@dataclass(frozen=True, order=True)
class BQF:
    """The form a*x**2 + b*x*y + c*y**2."""

    a: int
    b: int
    c: int

    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def content(self) -> int:
        return math.gcd(self.a, math.gcd(self.b, self.c))

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc() < 0

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def reflected(self) -> "BQF":
        """The mirror form (a, -b, c)."""
        return BQF(self.a, -self.b, self.c)

    def __repr__(self):
        return f"BQF({self.a}, {self.b}, {self.c})"

    def __str__(self):
        def term(coef, mon):
            return f"{coef}{mon}" if coef >= 0 else f"({coef}){mon}"

        return f"{self.a}x^2 + {term(self.b, 'xy')} + {term(self.c, 'y^2')}"


def _is_reduced(a: int, b: int, c: int) -> bool:
    return (-a < b <= a < c) or (0 <= b <= a == c)


def reduce(q: BQF) -> BQF:
    """The unique SL(2,Z)-reduced representative of a positive definite form."""
    if not q.is_positive_definite():
        raise ValueError("not positive definite")
    a, b, c = q.a, q.b, q.c
    while not _is_reduced(a, b, c):
        if c < a or (c == a and b < 0):
            a, b, c = c, -b, a
        else:
            # translate b into (-a, a]
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
    return BQF(a, b, c)


def gl2_canonical(q: BQF) -> BQF:
    """Reduced representative of the GL(2,Z)-class, normalized to b >= 0."""
    r = reduce(q)
    return r if r.b >= 0 else BQF(r.a, -r.b, r.c)


def is_equivalent(q1: BQF, q2: BQF) -> bool:
    """SL(2,Z)-equivalence via reduced representatives."""
    return reduce(q1) == reduce(q2)


def is_ambiguous(q: BQF) -> bool:
    """True iff the form is SL(2,Z)-equivalent to its mirror image."""
    return reduce(q) == reduce(q.reflected())


def reduced_forms(d: int, primitive_only: bool = True) -> list[BQF]:
    """All SL(2,Z)-reduced positive definite forms of discriminant d < 0."""
    if d >= 0 or not is_discriminant(d):
        raise ValueError(f"not a discriminant: {d}")
    forms = []
    amax = math.isqrt(-d // 3)
    for a in range(1, amax + 1):
        for b in range(d % 2, a + 1, 2):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            for bb in ((b, -b) if 0 < b < a < c else (b,)):
                q = BQF(a, bb, c)
                if not primitive_only or q.content() == 1:
                    forms.append(q)
    return sorted(forms)


_CLASS_NUMBER_CACHE: dict[int, int] = {}


def class_number(d: int) -> int:
    """h(d): number of primitive reduced forms of discriminant d < 0."""
    h = _CLASS_NUMBER_CACHE.get(d)
    if h is None:
        h = len(reduced_forms(d, primitive_only=True))
        _CLASS_NUMBER_CACHE[d] = h
    return h


def cache_snapshot() -> dict[int, int]:
    """Copy of the current class-number memo (for persistence)."""
    return dict(_CLASS_NUMBER_CACHE)


def cache_update(entries: dict[int, int]) -> None:
    """Preload memoized class numbers (values are trusted as-is)."""
    _CLASS_NUMBER_CACHE.update(entries)


def cache_clear() -> None:
    _CLASS_NUMBER_CACHE.clear()


def unit_weight_denominator(d: int) -> int:
    """Half the number of units: 3 for d=-3, 2 for d=-4, else 1."""
    if d == -3:
        return 3
    if d == -4:
        return 2
    return 1


_HURWITZ_CACHE: dict[int, Fraction] = {}


def hurwitz(n: int) -> Fraction:
    """Hurwitz class number H(n).

    H(0) = -1/12; for n > 0 with -n a discriminant, H(n) counts classes of
    positive definite forms of discriminant -n weighted by automorphisms,
    computed as sum over square divisors r**2 | n of h(-n/r**2) / e(-n/r**2);
    H(n) = 0 when -n is 2 or 3 mod 4.
    """
    if n < 0:
        raise ValueError("undefined for negative argument")
    if n == 0:
        return Fraction(-1, 12)
    value = _HURWITZ_CACHE.get(n)
    if value is not None:
        return value
    if (-n) % 4 in (2, 3):
        value = Fraction(0)
    else:
        value = Fraction(0)
        r = 1
        while r * r <= n:
            if n % (r * r) == 0:
                d = -(n // (r * r))
                if d % 4 in (0, 1):
                    value += Fraction(class_number(d), unit_weight_denominator(d))
            r += 1
    _HURWITZ_CACHE[n] = value
    return value


def represents_only_0_1_mod4(q: BQF) -> bool:
    """True iff every value of the form is 0 or 1 mod 4 (scan of residues mod 4)."""
    return all(q(x, y) % 4 in (0, 1) for x in range(4) for y in range(4))


def gl2_classes(forms: list[BQF]) -> list[BQF]:
    """Merge SL(2,Z)-classes under the mirror map; keep b >= 0 representatives."""
    seen = set()
    out = []
    for q in forms:
        canon = gl2_canonical(q)
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return sorted(out)


def represent(q: BQF, m: int) -> tuple[int, int] | None:
    """Some (x, y) with q(x, y) = m, or None; exact enumeration."""
    if not q.is_positive_definite():
        raise ValueError("not positive definite")
    if m < 0:
        return None
    if m == 0:
        return (0, 0)
    a, b, c = q.a, q.b, q.c
    # For fixed x the y-range is bounded by the discriminant of c*y^2+b*x*y+(a*x^2-m)
    xmax = math.isqrt(4 * c * m // (4 * a * c - b * b))
    for x in range(0, xmax + 1):
        for xx in ((x,) if x == 0 else (x, -x)):
            disc_y = b * b * xx * xx - 4 * c * (a * xx * xx - m)
            if disc_y < 0:
                continue
            s = math.isqrt(disc_y)
            if s * s != disc_y:
                continue
            for sign in ((s,) if s == 0 else (s, -s)):
                num = -b * xx + sign
                if num % (2 * c) == 0:
                    return (xx, num // (2 * c))
    return None
