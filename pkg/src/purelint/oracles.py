"""Reference implementations of the two worked examples.

These are ordinary (iterative) Python, extensionally equal to the
recursive functional versions in the pass corpus, plus a trial-division
primality test that the sieve is validated against.
"""

from __future__ import annotations

from math import isqrt
from typing import NamedTuple, Sequence


def caesar_encode(n: int, s: str) -> str:
    """Rotate each lowercase ASCII letter of ``s`` by ``n`` places."""
    a = ord("a")
    return "".join(
        chr(a + (ord(c) - a + n) % 26) if "a" <= c <= "z" else c for c in s
    )


def remove_multiples(x: int, xs: Sequence[int]) -> list[int]:
    return [v for v in xs if v % x != 0]


def sieve(xs: Sequence[int]) -> list[int]:
    """Keep the head, drop its multiples from the rest, repeat.

    Equivalent to the recursive definition for any input; a contiguous
    ascending run starting at 2 takes the array sieve fast path.
    """
    xs = list(xs)
    if xs and xs[0] == 2 and xs == list(range(2, xs[-1] + 1)):
        return _eratosthenes(xs[-1])
    kept: list[int] = []
    rest = xs
    while rest:
        head = rest[0]
        kept.append(head)
        rest = [v for v in rest[1:] if v % head != 0]
    return kept


def _eratosthenes(n: int) -> list[int]:
    marks = bytearray([1]) * (n + 1)
    marks[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if marks[p]:
            marks[p * p::p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i in range(n + 1) if marks[i]]


class TwinPair(NamedTuple):
    first: int
    second: int


def twin_primes(n: int) -> list[TwinPair]:
    if n < 2:
        raise ValueError("twin_primes needs n >= 2")
    ps = sieve(range(2, n + 1))
    return [TwinPair(p, q) for p, q in zip(ps, ps[1:]) if p + 2 == q]


def is_prime_trial(k: int) -> bool:
    if k < 2:
        return False
    return all(k % d for d in range(2, isqrt(k) + 1))
