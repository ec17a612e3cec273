"""Finite groups given by multiplication tables, and free groups on reduced words.

Both group kinds expose the same small surface (``identity``, ``mul``,
``inv``) so the ring construction does not care which one it is handed.
Finite-group elements are ints ``0..n-1``; free-group elements are
:class:`FreeWord` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Protocol, Sequence


class Group(Protocol):
    identity: Hashable

    def mul(self, s, t): ...

    def inv(self, t): ...


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        n = len(self.table)
        if n == 0:
            raise GroupTableError("empty multiplication table")
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise GroupTableError("table must be n x n with entries in range(n)")
        # the identity is required to sit at index 0
        if any(self.table[0][t] != t or self.table[t][0] != t for t in range(n)):
            raise GroupTableError("index 0 is not a two-sided identity")
        for s in range(n):
            if 0 not in self.table[s] or sorted(self.table[s]) != list(range(n)):
                raise GroupTableError(f"row {s} is not a permutation; element has no inverse")
        for s in range(n):
            for t in range(n):
                st = self.table[s][t]
                for u in range(n):
                    if self.table[st][u] != self.table[s][self.table[t][u]]:
                        raise GroupTableError(f"not associative at ({s}, {t}, {u})")
        object.__setattr__(self, "_inverse", tuple(row.index(0) for row in self.table))

    @property
    def identity(self) -> int:
        return 0

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, s: int, t: int) -> int:
        return self.table[s][t]

    def inv(self, t: int) -> int:
        return self._inverse[t]

    def power(self, t: int, k: int) -> int:
        r = 0
        base = t if k >= 0 else self.inv(t)
        for _ in range(abs(k)):
            r = self.mul(r, base)
        return r

    def to_json(self) -> dict:
        if self.table == cyclic_group(self.order).table:
            return {"type": "cyclic", "n": self.order}
        return {"type": "table", "mul": [list(r) for r in self.table]}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or self.order})"


def cyclic_group(n: int) -> FiniteGroup:
    """Z/nZ with generator 1."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclic group order must be a positive integer, got {n!r}")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(table, name=f"C{n}")


def group_from_json(obj: dict) -> FiniteGroup:
    kind = obj.get("type")
    if kind == "cyclic":
        return cyclic_group(obj["n"])
    if kind == "table":
        return FiniteGroup(tuple(tuple(int(x) for x in row) for row in obj["mul"]))
    raise ValueError(f"unknown group type {kind!r}")


# -- free groups -------------------------------------------------------------

Letter = tuple[str, int]


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for sym, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign!r}")
        if out and out[-1][0] == sym and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((sym, sign))
    return tuple(out)


@dataclass(frozen=True, order=True)
class FreeWord:
    """A reduced word; reduction happens at construction so equality is structural."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def path(cls, edges: Sequence[str]) -> "FreeWord":
        return cls(tuple((e, 1) for e in edges))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return word_multiply(self, other)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((s, -e) for s, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(s if e == 1 else f"{s}^-1" for s, e in self.letters)


def word_multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    return FreeWord(u.letters + v.letters)


@dataclass(frozen=True)
class FreeGroup:
    generators: tuple[str, ...]

    @property
    def identity(self) -> FreeWord:
        return FreeWord()

    def mul(self, s: FreeWord, t: FreeWord) -> FreeWord:
        return word_multiply(s, t)

    def inv(self, t: FreeWord) -> FreeWord:
        return t.inverse()
