"""Eligible forms for a squarefree D0, genus characters, and the (D, N) split.

A form of discriminant -16*D0 is *eligible* when every integer it represents
is 0 or 1 mod 4.  Such a form is primitive or four times a primitive form of
discriminant -D0 (the latter only when D0 = 3 mod 4).  Its genus characters
at the primes dividing D0 split D0 = D*N, with D the product of the primes
where the character is -1; D is the discriminant of the quaternion algebra
attached to the form and N the level of the Eichler order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Literal

from . import bqf
from .arith import is_prime, is_squarefree, kronecker, prime_divisors
from .bqf import BQF

# A primitive positive definite form represents a value coprime to any fixed
# modulus well inside this search radius; running past it signals misuse.
SPIRAL_SEARCH_BOUND = 200


@dataclass(frozen=True)
class EligibleForm:
    form: BQF
    d0: int
    kind: Literal["primitive", "four_times_primitive"]
    chars: dict[int, int]
    D: int
    N: int
    ambiguous: bool

    @property
    def character_form(self) -> BQF:
        """The form the genus characters are evaluated on (Q itself or Q/4)."""
        if self.kind == "primitive":
            return self.form
        return BQF(self.form.a // 4, self.form.b // 4, self.form.c // 4)

    def __repr__(self):
        return (
            f"EligibleForm({self.form!r}, D0={self.d0}, kind={self.kind}, "
            f"D={self.D}, N={self.N}, ambiguous={self.ambiguous})"
        )


def _spiral() -> Iterator[tuple[int, int]]:
    # Rings of constant sup-norm r, each starting at (r, 0) and walking
    # counterclockwise; deterministic order for reproducible searches.
    yield (0, 0)
    r = 1
    while True:
        for y in range(0, r + 1):
            yield (r, y)
        for x in range(r - 1, -r - 1, -1):
            yield (x, r)
        for y in range(r - 1, -r - 1, -1):
            yield (-r, y)
        for x in range(-r + 1, r + 1):
            yield (x, -r)
        for y in range(-r + 1, 0):
            yield (r, y)
        r += 1


def coprime_values(q: BQF, m: int, bound: int = SPIRAL_SEARCH_BOUND) -> Iterator[tuple[int, int, int]]:
    """Yield (x, y, q(x,y)) over the spiral where gcd(q(x,y), 2m) = 1."""
    for x, y in _spiral():
        if max(abs(x), abs(y)) > bound:
            return
        value = q(x, y)
        if value > 0 and math.gcd(value, 2 * m) == 1:
            yield (x, y, value)


def find_coprime_value(q: BQF, m: int, bound: int = SPIRAL_SEARCH_BOUND) -> tuple[int, int, int]:
    """Smallest-height (x, y) with q(x, y) positive and coprime to 2m."""
    if not q.is_positive_definite():
        raise ValueError("not positive definite")
    for hit in coprime_values(q, m, bound):
        return hit
    raise ValueError("no coprime representation found within search bound")


def genus_character(q: BQF, p: int, d0: int) -> int:
    """Genus character of the class of q at a prime p dividing d0.

    Evaluated on a represented value a coprime to 2*d0: the Legendre symbol
    (a|p) for odd p, and the Kronecker symbol (8|a) for p = 2.
    """
    if d0 % p != 0 or not is_prime(p):
        raise ValueError("character prime must divide D0")
    _, _, a = find_coprime_value(q, d0)
    if p == 2:
        return kronecker(8, a)
    return kronecker(a, p)


def chi_minus4(q: BQF, d0: int) -> int:
    """The character a -> (-4|a) on values coprime to 2*d0."""
    _, _, a = find_coprime_value(q, d0)
    return kronecker(-4, a)


def eligible_forms(d0: int) -> list[EligibleForm]:
    """All GL(2,Z)-classes of discriminant -16*d0 representing only 0,1 mod 4.

    Each class is decorated with its genus characters at the primes dividing
    d0 (evaluated on Q itself when primitive, on Q' when Q = 4Q'), the split
    d0 = D*N, and the ambiguity flag.
    """
    if d0 < 1 or not is_squarefree(d0):
        raise ValueError("D0 must be squarefree")
    every = bqf.reduced_forms(-16 * d0, primitive_only=False)
    passing = [q for q in every if bqf.represents_only_0_1_mod4(q)]
    for q in passing:
        assert q.content() in (1, 4), f"unexpected content {q.content()} for {q}"
    primes = prime_divisors(d0)
    out = []
    for form in bqf.gl2_classes(passing):
        if form.content() == 1:
            kind: Literal["primitive", "four_times_primitive"] = "primitive"
            char_form = form
        else:
            kind = "four_times_primitive"
            assert d0 % 4 == 3
            char_form = BQF(form.a // 4, form.b // 4, form.c // 4)
            assert char_form.disc() == -d0 and char_form.content() == 1
        chars = {p: genus_character(char_form, p, d0) for p in primes}
        D = math.prod(p for p in primes if chars[p] == -1)
        N = d0 // D
        assert math.gcd(D, N) == 1 and D * N == d0
        assert sum(1 for p in primes if chars[p] == -1) % 2 == 0
        out.append(
            EligibleForm(
                form=form,
                d0=d0,
                kind=kind,
                chars=chars,
                D=D,
                N=N,
                ambiguous=bqf.is_ambiguous(form),
            )
        )
    return sorted(out, key=lambda f: (f.form.a, f.form.b, f.form.c))


def atkin_lehner_group_order(f: EligibleForm) -> int:
    """Order of the Atkin-Lehner group attached to the form: 4 if ambiguous else 2."""
    return 4 if f.ambiguous else 2
