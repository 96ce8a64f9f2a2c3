"""Truncated, levelwise free simplicial and duplicial abelian groups.

A functor ``X`` on the opposite of Delta (or Xi) is stored by its generator
matrices up to a truncation degree.  The convention is contravariant: for
``h: <a> -> <b>`` the matrix ``X(h)`` maps ``X_b -> X_a``, so

    d_i = X(face(n, i))         : X_n -> X_{n-1}   (``faces[n][i]``)
    s_i = X(degeneracy(n, i))   : X_n -> X_{n+1}   (``degeneracies[n][i]``)
    T_n = X(shift(n, 1)) = d_0 s_{n+1}

and ``X(g o f) == X(f) @ X(g)``.  Anything that would need a degree beyond
the truncation raises :class:`OutOfTruncation` instead of guessing zero.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import index_cat as ic
from .index_cat import Degeneracy, Face, Shift, Token, XiMap
from .linalg import IntMatrix, Subgroup, kernel_basis


class OutOfTruncation(ValueError):
    """A formula reached a degree that the truncated object does not store."""


@dataclass(frozen=True)
class Failure:
    """A violated matrix identity, with both sides."""

    identity: str
    lhs: IntMatrix
    rhs: IntMatrix


@dataclass
class ValidationReport:
    failures: list[Failure] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def compare(self, name: str, lhs: IntMatrix, rhs: IntMatrix) -> None:
        self.checked += 1
        if lhs != rhs:
            self.failures.append(Failure(name, lhs, rhs))


@dataclass(frozen=True, eq=False)
class TruncatedSimplicialGroup:
    trunc: int
    ranks: tuple[int, ...]
    faces: tuple[tuple[IntMatrix, ...], ...]
    degeneracies: tuple[tuple[IntMatrix, ...], ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    extra_degeneracy = False
    kind = "simplicial"

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "faces", tuple(tuple(fs) for fs in self.faces))
        object.__setattr__(self, "degeneracies", tuple(tuple(ds) for ds in self.degeneracies))
        N, r = self.trunc, self.ranks
        if len(r) != N + 1:
            raise ValueError(f"expected {N + 1} ranks, got {len(r)}")
        if len(self.faces) != N + 1 or self.faces[0]:
            raise ValueError("faces must list degrees 0..trunc with no faces in degree 0")
        if len(self.degeneracies) != N:
            raise ValueError("degeneracies must list degrees 0..trunc-1")
        extra = 1 if self.extra_degeneracy else 0
        for n in range(1, N + 1):
            if len(self.faces[n]) != n + 1:
                raise ValueError(f"degree {n} needs {n + 1} faces")
            for i, M in enumerate(self.faces[n]):
                if M.shape != (r[n - 1], r[n]):
                    raise ValueError(f"face d_{i} in degree {n} has shape {M.shape}, expected {(r[n - 1], r[n])}")
        for n in range(N):
            if len(self.degeneracies[n]) != n + 1 + extra:
                raise ValueError(f"degree {n} needs {n + 1 + extra} degeneracies")
            for i, M in enumerate(self.degeneracies[n]):
                if M.shape != (r[n + 1], r[n]):
                    raise ValueError(
                        f"degeneracy s_{i} from degree {n} has shape {M.shape}, expected {(r[n + 1], r[n])}"
                    )

    def face(self, n: int, i: int) -> IntMatrix:
        if not 1 <= n <= self.trunc:
            raise OutOfTruncation(f"face d_{i} in degree {n} (truncation {self.trunc})")
        return self.faces[n][i]

    def degeneracy(self, n: int, i: int) -> IntMatrix:
        if not 0 <= n < self.trunc:
            raise OutOfTruncation(f"degeneracy s_{i} from degree {n} (truncation {self.trunc})")
        if i > n and not self.extra_degeneracy:
            raise ValueError(f"s_{i} from degree {n} is the extra degeneracy; this object is only simplicial")
        return self.degeneracies[n][i]

    def shift_matrix(self, n: int) -> IntMatrix:
        """``T_n = d_0 s_{n+1}`` on ``X_n``."""
        return self.face(n + 1, 0) @ self.degeneracy(n, n + 1)

    def token_matrix(self, tok: Token) -> IntMatrix:
        if isinstance(tok, Face):
            return self.face(tok.n, tok.i)
        if isinstance(tok, Degeneracy):
            return self.degeneracy(tok.n, tok.i)
        if tok.k < 0:
            raise ValueError("negative shift powers do not act on a duplicial object")
        return self.shift_matrix(tok.n) ** tok.k

    def word_matrix(self, tokens: Sequence[Token], src: int) -> IntMatrix:
        """Matrix of a generator word given in application order."""
        M = IntMatrix.identity(self.rank(src))
        for tok in tokens:
            M = M @ self.token_matrix(tok)
        return M

    def rank(self, n: int) -> int:
        if not 0 <= n <= self.trunc:
            raise OutOfTruncation(f"degree {n} (truncation {self.trunc})")
        return self.ranks[n]

    def underlying_simplicial(self) -> TruncatedSimplicialGroup:
        if not self.extra_degeneracy:
            return self
        return TruncatedSimplicialGroup(
            self.trunc, self.ranks, self.faces, tuple(ds[: n + 1] for n, ds in enumerate(self.degeneracies))
        )

    def with_face(self, n: int, i: int, M: IntMatrix):
        faces = [list(fs) for fs in self.faces]
        faces[n][i] = M
        return type(self)(self.trunc, self.ranks, faces, self.degeneracies)

    def with_degeneracy(self, n: int, i: int, M: IntMatrix):
        degs = [list(ds) for ds in self.degeneracies]
        degs[n][i] = M
        return type(self)(self.trunc, self.ranks, self.faces, degs)


class TruncatedDuplicialGroup(TruncatedSimplicialGroup):
    """Like the simplicial version, with ``degeneracies[n][n+1]`` the extra ``s_{n+1}``."""

    extra_degeneracy = True
    kind = "duplicial"


def zero_object(trunc: int, duplicial: bool = True) -> TruncatedSimplicialGroup:
    cls = TruncatedDuplicialGroup if duplicial else TruncatedSimplicialGroup
    extra = 1 if duplicial else 0
    return cls(
        trunc,
        (0,) * (trunc + 1),
        [()] + [tuple(IntMatrix.zeros(0, 0) for _ in range(n + 1)) for n in range(1, trunc + 1)],
        [tuple(IntMatrix.zeros(0, 0) for _ in range(n + 1 + extra)) for n in range(trunc)],
    )


def evaluate(X: TruncatedSimplicialGroup, h: XiMap) -> IntMatrix:
    """Matrix of ``X(h): X_tgt -> X_src``, via the generator factorization of ``h``."""
    if h.src > X.trunc or h.tgt > X.trunc:
        raise OutOfTruncation(f"{h} leaves truncation {X.trunc}")
    key = (h.src, h.tgt, h.values)
    cached = X._cache.get(key)
    if cached is None:
        word = ic.factorize(h)
        cached = X.word_matrix(word.tokens, word.src)
        X._cache[key] = cached
    return cached


def _generators(X: TruncatedSimplicialGroup) -> list[Token]:
    gens: list[Token] = []
    for n in range(1, X.trunc + 1):
        gens.extend(Face(n, i) for i in range(n + 1))
    extra = 1 if X.extra_degeneracy else 0
    for n in range(X.trunc):
        gens.extend(Degeneracy(n, i) for i in range(n + 1 + extra))
    return gens


def _fmt_word(tokens: Sequence[Token]) -> str:
    names = []
    for tok in reversed(tokens):
        if isinstance(tok, Face):
            names.append(f"face({tok.n},{tok.i})")
        elif isinstance(tok, Degeneracy):
            names.append(f"degeneracy({tok.n},{tok.i})")
        else:
            names.append(f"shift({tok.n},{tok.k})")
    return " o ".join(names) if names else "id"


def validate(X: TruncatedSimplicialGroup, probes: int = 50, seed: int = 0) -> ValidationReport:
    """Check functoriality within the truncation.

    Every composable pair of generators is compared with the normal form of
    its composite; this covers all the simplicial identities and their
    duplicial extensions.  For duplicial objects ``probes`` longer random
    words (fixed seed) are compared the same way.
    """
    report = ValidationReport()
    gens = _generators(X)
    by_src: dict[int, list[Token]] = {}
    for g in gens:
        by_src.setdefault(g.map().src, []).append(g)

    def check(tokens: Sequence[Token]) -> None:
        maps = [t.map() for t in tokens]
        composite = ic.compose_all(maps)
        try:
            rhs = evaluate(X, composite)
        except OutOfTruncation:
            return
        lhs = X.word_matrix(tokens, maps[0].src)
        report.compare(f"X({_fmt_word(tokens)}) == X({composite.values} : <{composite.src}> -> <{composite.tgt}>)", lhs, rhs)

    for g1 in gens:
        for g2 in by_src.get(g1.map().tgt, []):
            check((g1, g2))

    if X.extra_degeneracy and X.trunc > 0:
        rng = random.Random(seed)
        for _ in range(probes):
            length = rng.randint(3, 6)
            start = rng.choice([g for g in gens])
            word = [start]
            while len(word) < length:
                options = by_src.get(word[-1].map().tgt, [])
                if not options:
                    break
                word.append(rng.choice(options))
            check(word)
    return report


def alternating_differential(X: TruncatedSimplicialGroup, n: int) -> IntMatrix:
    """``sum_i (-1)^(n-i) d_i : X_n -> X_{n-1}``."""
    if not 1 <= n <= X.trunc:
        raise OutOfTruncation(f"alternating differential in degree {n}")
    total = IntMatrix.zeros(X.ranks[n - 1], X.ranks[n])
    for i in range(n + 1):
        term = X.faces[n][i]
        total = total + term if (n - i) % 2 == 0 else total - term
    return total


def degenerate_subgroup(X: TruncatedSimplicialGroup, n: int) -> Subgroup:
    """Span of the images of the ordinary degeneracies ``s_0..s_{n-1}`` in ``X_n``."""
    if not 1 <= n <= X.trunc:
        raise OutOfTruncation(f"degenerate subgroup in degree {n}")
    return Subgroup.span(IntMatrix.hstack([X.degeneracies[n - 1][i] for i in range(n)]))


def pi_matrix(X: TruncatedSimplicialGroup, n: int) -> IntMatrix:
    """The projection onto normalized chains along the degenerate part."""
    if not 0 <= n <= X.trunc:
        raise OutOfTruncation(f"projection in degree {n}")
    total = IntMatrix.zeros(X.ranks[n], X.ranks[n])
    for a in itertools.product((0, 1), repeat=n):
        term = evaluate(X, ic.cube_f(n, a))
        total = total - term if sum(a) % 2 else total + term
    return total


def normalized_inclusion(X: TruncatedSimplicialGroup, n: int) -> IntMatrix:
    """Columns: a basis of ``C(X)_n``, the common kernel of ``d_0..d_{n-1}``."""
    if n == 0:
        return IntMatrix.identity(X.rank(0))
    if n > X.trunc:
        raise OutOfTruncation(f"normalized chains in degree {n}")
    stacked = IntMatrix.vstack([X.faces[n][i] for i in range(n)])
    return kernel_basis(stacked).basis


def linearized_simplex(n: int, trunc: int) -> TruncatedSimplicialGroup:
    """The free simplicial abelian group on the standard ``n``-simplex."""
    bases = [list(ic.delta_maps(m, n)) for m in range(trunc + 1)]
    index = [{tau.values: k for k, tau in enumerate(b)} for b in bases]

    def structure(h: XiMap) -> IntMatrix:
        a, b = h.src, h.tgt
        M = [[0] * len(bases[b]) for _ in range(len(bases[a]))]
        for col, tau in enumerate(bases[b]):
            M[index[a][ic.compose(tau, h).values]][col] = 1
        return IntMatrix(M, shape=(len(bases[a]), len(bases[b])))

    faces = [()] + [tuple(structure(ic.face(m, i)) for i in range(m + 1)) for m in range(1, trunc + 1)]
    degs = [tuple(structure(ic.degeneracy(m, i)) for i in range(m + 1)) for m in range(trunc)]
    return TruncatedSimplicialGroup(trunc, tuple(len(b) for b in bases), faces, degs)


@dataclass(frozen=True, eq=False)
class DuplicialMorphism:
    """Levelwise matrices ``components[n]: source_n -> target_n``.

    Also serves simplicial objects: only the generators the source carries
    are checked.
    """

    source: TruncatedSimplicialGroup
    target: TruncatedSimplicialGroup
    components: tuple[IntMatrix, ...]

    def check(self) -> ValidationReport:
        report = ValidationReport()
        f, X, Y = self.components, self.source, self.target
        top = min(X.trunc, Y.trunc, len(f) - 1)
        extra = 1 if (X.extra_degeneracy and Y.extra_degeneracy) else 0
        for n in range(1, top + 1):
            for i in range(n + 1):
                report.compare(f"f_{n - 1} d_{i} == d_{i} f_{n}", f[n - 1] @ X.faces[n][i], Y.faces[n][i] @ f[n])
        for n in range(top):
            for i in range(n + 1 + extra):
                report.compare(
                    f"f_{n + 1} s_{i} == s_{i} f_{n}", f[n + 1] @ X.degeneracies[n][i], Y.degeneracies[n][i] @ f[n]
                )
        return report
