"""Morphisms of the simplex, duplex and paracyclic categories.

A morphism ``<m> -> <n>`` is a weakly increasing map ``f: Z -> Z`` with
``f(a + m + 1) = f(a) + n + 1``.  It is stored by its values on the
fundamental domain ``0..m``; the periodic extension is computed on demand.

Flavors nest as ``DELTA`` (``0 <= f(0)``, ``f(m) <= n``) inside ``XI``
(``0 <= f(0)``) inside ``PARACYCLIC`` (no condition on ``f(0)``).  The flavor
records which category a map was built in; it does not take part in
equality, since the categories are nested subcategories.

The 2-morphisms ``f => g`` are pointwise inequalities ``f <= g``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union


class Flavor(enum.IntEnum):
    DELTA = 0
    XI = 1
    PARACYCLIC = 2


def _parse_flavor(value: Union[str, Flavor]) -> Flavor:
    if isinstance(value, Flavor):
        return value
    key = {"delta": "DELTA", "xi": "XI", "paracyclic": "PARACYCLIC"}.get(str(value).lower())
    if key is None:
        raise ValueError(f"unknown flavor {value!r}")
    return Flavor[key]


@dataclass(frozen=True)
class XiMap:
    src: int
    tgt: int
    values: tuple[int, ...]
    flavor: Flavor = field(default=Flavor.XI, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        object.__setattr__(self, "flavor", _parse_flavor(self.flavor))
        m, n, v = self.src, self.tgt, self.values
        if m < 0 or n < 0:
            raise ValueError(f"negative degree in {m}->{n}")
        if len(v) != m + 1:
            raise ValueError(f"map <{m}> -> <{n}> needs {m + 1} values, got {len(v)}")
        if any(a > b for a, b in zip(v, v[1:])):
            raise ValueError(f"values {v} are not weakly increasing")
        if v[-1] > v[0] + n + 1:
            raise ValueError(f"values {v} violate f(m) <= f(0) + n + 1")
        if self.flavor <= Flavor.XI and v[0] < 0:
            raise ValueError(f"values {v} have f(0) < 0, not a duplex map")
        if self.flavor == Flavor.DELTA and v[-1] > n:
            raise ValueError(f"values {v} exceed [{n}], not a simplex map")

    def __call__(self, a: int) -> int:
        return eval_at(self, a)

    def __repr__(self) -> str:
        return f"XiMap(<{self.src}> -> <{self.tgt}>, {list(self.values)}, {self.flavor.name})"

    def to_json(self) -> dict:
        return {"flavor": self.flavor.name.lower(), "src": self.src, "tgt": self.tgt, "values": list(self.values)}

    @classmethod
    def from_json(cls, obj: dict) -> XiMap:
        return cls(int(obj["src"]), int(obj["tgt"]), tuple(int(v) for v in obj["values"]), obj.get("flavor", "xi"))


def eval_at(f: XiMap, a: int) -> int:
    """Value of the periodic extension of ``f`` at ``a``."""
    q, r = divmod(a, f.src + 1)
    return f.values[r] + q * (f.tgt + 1)


def narrowest_flavor(f: XiMap) -> Flavor:
    if is_delta(f):
        return Flavor.DELTA
    return Flavor.XI if f.values[0] >= 0 else Flavor.PARACYCLIC


def compose(g: XiMap, f: XiMap) -> XiMap:
    """``g o f`` (apply ``f`` first)."""
    if f.tgt != g.src:
        raise ValueError(f"cannot compose <{g.src}> -> <{g.tgt}> after <{f.src}> -> <{f.tgt}>")
    values = tuple(eval_at(g, v) for v in f.values)
    return XiMap(f.src, g.tgt, values, max(f.flavor, g.flavor))


def compose_all(maps: Sequence[XiMap]) -> XiMap:
    """Compose ``maps`` in application order: ``maps[-1] o ... o maps[0]``."""
    if not maps:
        raise ValueError("empty composite")
    result = maps[0]
    for g in maps[1:]:
        result = compose(g, result)
    return result


def identity(n: int) -> XiMap:
    return XiMap(n, n, tuple(range(n + 1)), Flavor.DELTA)


def face(n: int, i: int) -> XiMap:
    """The coface ``<n-1> -> <n>`` skipping ``i``."""
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"face index {i} out of range for degree {n}")
    return XiMap(n - 1, n, tuple(j if j < i else j + 1 for j in range(n)), Flavor.DELTA)


def degeneracy(n: int, i: int) -> XiMap:
    """The codegeneracy ``<n+1> -> <n>`` hitting ``i`` twice.

    ``i = n + 1`` gives the extra duplicial degeneracy with values
    ``(0, 1, ..., n + 1)``, which identifies ``n + 1`` with ``0`` modulo the
    period.
    """
    if n < 0 or not 0 <= i <= n + 1:
        raise ValueError(f"degeneracy index {i} out of range for degree {n}")
    values = tuple(j if j <= i else j - 1 for j in range(n + 2))
    return XiMap(n + 1, n, values, Flavor.DELTA if i <= n else Flavor.XI)


def shift(n: int, k: int = 1) -> XiMap:
    """``t_n^k``: ``i -> i + k``.  Negative powers only exist paracyclically."""
    if n < 0:
        raise ValueError("negative degree")
    flavor = Flavor.DELTA if k == 0 else Flavor.XI if k > 0 else Flavor.PARACYCLIC
    return XiMap(n, n, tuple(range(k, k + n + 1)), flavor)


def cube_f(n: int, a: Sequence[int]) -> XiMap:
    """Vertex ``a`` of the standard cube: ``j -> j + a_j`` with ``a_n = 0``."""
    if len(a) != n or any(x not in (0, 1) for x in a):
        raise ValueError(f"cube vertex {a} is not a 0/1 vector of length {n}")
    return XiMap(n, n, tuple(j + a[j] for j in range(n)) + (n,), Flavor.DELTA)


def two_morphism_leq(f: XiMap, g: XiMap) -> bool:
    """Whether there is a 2-morphism ``f => g``."""
    if (f.src, f.tgt) != (g.src, g.tgt):
        raise ValueError("2-morphisms need parallel maps")
    return all(a <= b for a, b in zip(f.values, g.values))


def verify_adjunction(left: XiMap, right: XiMap) -> bool:
    """Whether ``left -| right`` in the poset-enriched 2-category.

    Triangle identities are automatic in posets, so this is just
    ``left o right <= id`` and ``id <= right o left``.
    """
    if left.tgt != right.src or right.tgt != left.src:
        raise ValueError("adjunction candidates must go back and forth between the same objects")
    return two_morphism_leq(compose(left, right), identity(left.tgt)) and two_morphism_leq(
        identity(left.src), compose(right, left)
    )


def is_injective_on_fd(f: XiMap) -> bool:
    return all(a < b for a, b in zip(f.values, f.values[1:]))


def is_delta(f: XiMap) -> bool:
    return f.values[0] >= 0 and f.values[-1] <= f.tgt


def as_delta(f: XiMap) -> XiMap:
    return XiMap(f.src, f.tgt, f.values, Flavor.DELTA)


def as_xi(f: XiMap) -> XiMap:
    return XiMap(f.src, f.tgt, f.values, Flavor.XI)


# ---------------------------------------------------------------------------
# generator words


@dataclass(frozen=True)
class Face:
    n: int
    i: int

    def map(self) -> XiMap:
        return face(self.n, self.i)


@dataclass(frozen=True)
class Degeneracy:
    n: int
    i: int

    def map(self) -> XiMap:
        return degeneracy(self.n, self.i)


@dataclass(frozen=True)
class Shift:
    n: int
    k: int

    def map(self) -> XiMap:
        return shift(self.n, self.k)


Token = Union[Face, Degeneracy, Shift]


@dataclass(frozen=True)
class GeneratorWord:
    """Generators in application order, from ``<src>`` to ``<tgt>``."""

    src: int
    tgt: int
    tokens: tuple[Token, ...]

    def __post_init__(self) -> None:
        degree = self.src
        for tok in self.tokens:
            m = tok.map()
            if m.src != degree:
                raise ValueError(f"token {tok} does not start at degree {degree}")
            degree = m.tgt
        if degree != self.tgt:
            raise ValueError(f"word ends at degree {degree}, expected {self.tgt}")

    def compose(self) -> XiMap:
        if not self.tokens:
            return identity(self.src)
        return compose_all([tok.map() for tok in self.tokens])


def factorize(f: XiMap) -> GeneratorWord:
    """Write a duplex map as a word in faces, degeneracies and a shift power.

    Greedy peeling: a repeated value gives an ordinary degeneracy, a
    wrap-around ``f(m) = f(0) + n + 1`` gives the extra degeneracy, a value
    missed in ``(f(0), f(0) + n]`` gives a face, and what is left is a power
    of the shift.  Simplex maps come out as degeneracies followed by faces.
    """
    if f.values[0] < 0:
        raise ValueError("factorize is only defined for duplex maps")
    src, tgt = f.src, f.tgt
    head: list[Token] = []
    tail: list[Token] = []
    while True:
        m, n, v = f.src, f.tgt, f.values
        rep = next((i for i in range(m) if v[i] == v[i + 1]), None)
        if rep is not None:
            head.append(Degeneracy(m - 1, rep))
            f = XiMap(m - 1, n, v[: rep + 1] + v[rep + 2:], f.flavor)
            continue
        if m > 0 and v[m] == v[0] + n + 1:
            head.append(Degeneracy(m - 1, m))
            f = XiMap(m - 1, n, v[:m], f.flavor)
            continue
        hit = set(v)
        missed = next((x for x in range(v[0] + 1, v[0] + n + 1) if x not in hit), None)
        if missed is not None:
            j = missed % (n + 1)
            tail.append(Face(n, j))
            new = []
            for y in v:
                q, r = divmod(y, n + 1)
                new.append(q * n + (r if r < j else r - 1))
            f = XiMap(m, n - 1, tuple(new), f.flavor)
            continue
        if v[0]:
            head.append(Shift(n, v[0]))
        break
    return GeneratorWord(src, tgt, tuple(head) + tuple(reversed(tail)))


# ---------------------------------------------------------------------------
# enumeration


def delta_maps(m: int, n: int) -> Iterator[XiMap]:
    """All weakly increasing ``[m] -> [n]`` in lexicographic order."""
    for values in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield XiMap(m, n, values, Flavor.DELTA)


def injective_delta_maps(m: int, n: int) -> Iterator[XiMap]:
    for values in itertools.combinations(range(n + 1), m + 1):
        yield XiMap(m, n, values, Flavor.DELTA)


def xi_maps(m: int, n: int, max_value: int) -> Iterator[XiMap]:
    """Duplex maps ``<m> -> <n>`` with all fundamental-domain values ``<= max_value``."""
    for values in itertools.combinations_with_replacement(range(max_value + 1), m + 1):
        if values[-1] <= values[0] + n + 1:
            yield XiMap(m, n, values, Flavor.XI)


def injective_xi_maps(m: int, n: int, max_value: int) -> Iterator[XiMap]:
    """Duplex maps injective on ``0..m`` with ``f(m) <= max_value``, lexicographic."""
    for values in itertools.combinations(range(max_value + 1), m + 1):
        if values[-1] <= values[0] + n + 1:
            yield XiMap(m, n, values, Flavor.XI)
