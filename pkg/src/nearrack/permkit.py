"""
Finite permutations of [1, n].

Permutations are stored as a mapping table: ``map[x-1]`` is the image of ``x``,
so element labels are 1-based throughout (matching the labelling of the finite
sets the rest of the library works over).  Cycle notation follows the
convention that ``(a1, a2, ..., at)`` sends ``a1`` to ``a2``, ``a2`` to ``a3``
and so on.

Composition is the left action: ``compose(f, g)`` maps ``x`` to ``f(g(x))``.

All values are immutable; every function here is pure.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class PermutationError(ValueError):
    """Malformed permutation data (bad table, bad cycle string, bad degree)."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of [1, n], stored as the tuple of images of 1..n."""

    map: tuple[int, ...]

    def __post_init__(self):
        n = len(self.map)
        seen = [False] * n
        for v in self.map:
            if not isinstance(v, int) or not 1 <= v <= n or seen[v - 1]:
                raise PermutationError(f"not a bijection of [1,{n}]: {self.map}")
            seen[v - 1] = True

    @property
    def n(self) -> int:
        return len(self.map)

    def __call__(self, x: int) -> int:
        if not 1 <= x <= self.n:
            raise PermutationError(f"element {x} out of range [1,{self.n}]")
        return self.map[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.map, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.map, start=1))

    def is_involution(self) -> bool:
        """True for non-identity permutations squaring to the identity."""
        return not self.is_identity() and all(
            self.map[v - 1] == i for i, v in enumerate(self.map, start=1)
        )

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.map, start=1) if v == i)

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p = compose(p, self)
            k += 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles of length >= 2, smallest moved point first."""
        out = []
        seen = [False] * self.n
        for start in range(1, self.n + 1):
            if seen[start - 1] or self.map[start - 1] == start:
                continue
            cyc = [start]
            seen[start - 1] = True
            x = self.map[start - 1]
            while x != start:
                cyc.append(x)
                seen[x - 1] = True
                x = self.map[x - 1]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __str__(self) -> str:
        return print_cycles(self)

    def relabel(self, phi: "Permutation") -> "Permutation":
        """Conjugate by phi: the same permutation written in relabelled points."""
        if phi.n != self.n:
            raise PermutationError("relabelling degree mismatch")
        return compose(compose(phi, self), phi.inverse())


def identity(n: int) -> Permutation:
    if n < 1:
        raise PermutationError("degree must be >= 1")
    return Permutation(tuple(range(1, n + 1)))


def compose(f: Permutation, g: Permutation) -> Permutation:
    """Left-action composition: (f o g)(x) = f(g(x))."""
    if f.n != g.n:
        raise PermutationError(f"degree mismatch: {f.n} != {g.n}")
    return Permutation(tuple(f.map[y - 1] for y in g.map))


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """Build a permutation of [1, n] from disjoint cycles."""
    table = list(range(1, n + 1))
    used: set[int] = set()
    for cyc in cycles:
        for a in cyc:
            if not isinstance(a, int) or not 1 <= a <= n:
                raise PermutationError(f"cycle entry {a} out of range [1,{n}]")
            if a in used:
                raise PermutationError(f"element {a} repeated across cycles")
            used.add(a)
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            table[a - 1] = b
    return Permutation(tuple(table))


_CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``"(2,5)(3,4)"`` or ``"id"``."""
    text = text.strip()
    if text in ("id", "()", ""):
        return identity(n)
    pieces = _CYCLE_RE.findall(text)
    leftover = _CYCLE_RE.sub("", text).strip()
    if not pieces or leftover:
        raise PermutationError(f"malformed cycle string: {text!r}")
    cycles = [[int(tok) for tok in piece.split(",")] for piece in pieces]
    return from_cycles(n, cycles)


def print_cycles(p: Permutation) -> str:
    """Canonical cycle form: fixed points omitted, smallest moved point first."""
    cycles = p.cycles()
    if not cycles:
        return "id"
    return "".join("(" + ",".join(map(str, cyc)) + ")" for cyc in cycles)


def all_permutations(n: int) -> Iterator[Permutation]:
    for tab in itertools.permutations(range(1, n + 1)):
        yield Permutation(tab)


def involutions(n: int, fixed_point_free: bool = False) -> Iterator[Permutation]:
    """
    Yield every non-identity involution of [1, n], each exactly once.

    Involutions are products of k >= 1 disjoint transpositions; they are
    generated by recursively pairing the smallest unused point, which avoids
    scanning all n! permutations.
    """
    if n < 2 or (fixed_point_free and n % 2 == 1):
        return

    def build(avail: tuple[int, ...], pairs: list[tuple[int, int]]):
        if not avail:
            if pairs:
                yield from_cycles(n, pairs)
            return
        a, rest = avail[0], avail[1:]
        if not fixed_point_free:
            yield from build(rest, pairs)
        for i, b in enumerate(rest):
            yield from build(rest[:i] + rest[i + 1 :], pairs + [(a, b)])

    yield from build(tuple(range(1, n + 1)), [])


def telephone_number(n: int) -> int:
    """Number of involutions of [1,n] including the identity (T(n))."""
    a, b = 1, 1  # T(0), T(1)
    if n == 0:
        return 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b
