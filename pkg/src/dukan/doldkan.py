"""Normalized chains and the Dold-Kan nerve for free simplicial abelian groups.

An ``n``-cell of the nerve of a chain complex ``B`` is a family ``(b_tau)``
indexed by the injective monotone maps ``tau: [m] -> [n]``, ``b_tau in B_m``,
with ``d(b_tau) = sum_i (-1)^(m-i) b_(tau o face_i)``.  Degree ``n`` of the
nerve is realized as the kernel of these constraints inside the ambient free
module ``V_n = (+)_tau B_m``; cells are ordered by ``m`` and then
lexicographically by values, and that order is part of the wire format.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import index_cat as ic
from .index_cat import XiMap
from .linalg import IntMatrix, NoSolution, homology, is_unimodular, kernel_basis, solve_matrix
from .objects import (
    DuplicialMorphism,
    OutOfTruncation,
    TruncatedSimplicialGroup,
    evaluate,
    normalized_inclusion,
    pi_matrix,
)


class InvalidObject(ValueError):
    """Raised when a construction's linear solve fails, i.e. the input is not functorial."""


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """``d[n]: B_n -> B_{n-1}`` for ``1 <= n <= trunc``; ``d[0]`` is the map to 0."""

    trunc: int
    ranks: tuple[int, ...]
    d: tuple[IntMatrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", tuple(self.ranks))
        d = tuple(self.d)
        if len(d) == self.trunc:
            d = (IntMatrix.zeros(0, self.ranks[0]),) + d
        object.__setattr__(self, "d", d)
        if len(self.ranks) != self.trunc + 1 or len(d) != self.trunc + 1:
            raise ValueError("chain complex needs trunc + 1 ranks and differentials")
        if d[0].shape != (0, self.ranks[0]):
            raise ValueError("d[0] must be the zero map to the zero group")
        for n in range(1, self.trunc + 1):
            if d[n].shape != (self.ranks[n - 1], self.ranks[n]):
                raise ValueError(f"d[{n}] has shape {d[n].shape}, expected {(self.ranks[n - 1], self.ranks[n])}")

    def squares_to_zero(self) -> bool:
        return all((self.d[n] @ self.d[n + 1]).is_zero() for n in range(1, self.trunc))

    def check(self) -> None:
        if not self.squares_to_zero():
            raise ValueError("d o d != 0")

    def homology(self) -> list[list[int]]:
        """Invariant factors of ``H_n`` for ``n < trunc`` (the top degree has no incoming map)."""
        return [homology(self.d[n], self.d[n + 1]) for n in range(self.trunc)]

    def truncated(self, trunc: int) -> ChainComplex:
        return ChainComplex(trunc, self.ranks[: trunc + 1], self.d[: trunc + 1])


def zero_complex(trunc: int) -> ChainComplex:
    return ChainComplex(trunc, (0,) * (trunc + 1), tuple(IntMatrix.zeros(0, 0) for _ in range(trunc + 1)))


@dataclass(frozen=True, eq=False)
class NormalizedChainsResult:
    complex: ChainComplex
    inclusions: tuple[IntMatrix, ...]


def normalized_chains(X: TruncatedSimplicialGroup) -> NormalizedChainsResult:
    """Common kernels of all faces but the last, with the last face as differential."""
    incl = [normalized_inclusion(X, n) for n in range(X.trunc + 1)]
    d = [IntMatrix.zeros(0, incl[0].cols)]
    for n in range(1, X.trunc + 1):
        try:
            d.append(solve_matrix(incl[n - 1], X.faces[n][n] @ incl[n]))
        except NoSolution as exc:
            raise InvalidObject(f"last face does not preserve normalized chains in degree {n}") from exc
    C = ChainComplex(X.trunc, tuple(i.cols for i in incl), tuple(d))
    return NormalizedChainsResult(C, tuple(incl))


# ---------------------------------------------------------------------------
# the nerve


@dataclass(frozen=True, eq=False)
class NerveData:
    """A nerve together with how its cells sit in the ambient free modules."""

    complex: ChainComplex
    group: TruncatedSimplicialGroup
    cells: tuple[tuple[XiMap, ...], ...]
    blocks: tuple[dict, ...]
    embeddings: tuple[IntMatrix, ...]

    @property
    def trunc(self) -> int:
        return self.group.trunc

    def ambient_rank(self, n: int) -> int:
        return self.embeddings[n].rows

    def block(self, n: int, tau: XiMap) -> tuple[int, int]:
        return self.blocks[n][tau.values]

    def coordinate(self, n: int, tau: XiMap) -> IntMatrix:
        """``cell -> b_tau`` as a matrix from nerve coordinates to ``B_m``."""
        start, stop = self.block(n, tau)
        return self.embeddings[n].row_block(start, stop)


def nerve_cells(n: int) -> tuple[XiMap, ...]:
    return tuple(tau for m in range(n + 1) for tau in ic.injective_delta_maps(m, n))


def _layout(B: ChainComplex, n: int) -> tuple[tuple[XiMap, ...], dict, int]:
    cells = nerve_cells(n)
    blocks, pos = {}, 0
    for tau in cells:
        blocks[tau.values] = (pos, pos + B.ranks[tau.src])
        pos += B.ranks[tau.src]
    return cells, blocks, pos


def constraint_matrix(B: ChainComplex, n: int) -> IntMatrix:
    """Rows encode ``d b_tau - sum_i (-1)^(m-i) b_(tau o face_i) = 0`` for every cell with m >= 1."""
    cells, blocks, dim = _layout(B, n)
    rows = []
    for tau in cells:
        m = tau.src
        if m == 0:
            continue
        r = B.ranks[m - 1]
        block = [[0] * dim for _ in range(r)]
        start, _ = blocks[tau.values]
        dm = B.d[m]
        for i in range(r):
            block[i][start:start + B.ranks[m]] = dm.row(i)
        for k in range(m + 1):
            sigma = ic.compose(tau, ic.face(m, k))
            s0, _ = blocks[sigma.values]
            sign = -1 if (m - k) % 2 == 0 else 1
            for i in range(r):
                block[i][s0 + i] += sign
        rows.extend(block)
    return IntMatrix(rows, shape=(len(rows), dim))


def _precomposition(B: ChainComplex, alpha: XiMap, blocks_src: dict, dim_src: int, cells_tgt, blocks_tgt, dim_tgt) -> IntMatrix:
    """Ambient matrix ``V_n -> V_k`` sending ``(b_tau)`` to ``(b_(alpha o sigma))``, zero on degenerate composites."""
    P = [[0] * dim_src for _ in range(dim_tgt)]
    for sigma in cells_tgt:
        composite = ic.compose(alpha, sigma)
        if not ic.is_injective_on_fd(composite):
            continue
        t0, t1 = blocks_tgt[sigma.values]
        s0, _ = blocks_src[composite.values]
        for i in range(t1 - t0):
            P[t0 + i][s0 + i] = 1
    return IntMatrix(P, shape=(dim_tgt, dim_src))


def dold_kan_nerve(B: ChainComplex, trunc: int) -> NerveData:
    """The nerve of ``B`` up to degree ``trunc`` (needs ``B`` up to the same degree)."""
    if trunc > B.trunc:
        raise OutOfTruncation(f"nerve degree {trunc} needs the complex up to degree {trunc}, have {B.trunc}")
    layouts = [_layout(B, n) for n in range(trunc + 1)]
    K = [kernel_basis(constraint_matrix(B, n)).basis for n in range(trunc + 1)]

    def structure(alpha: XiMap) -> IntMatrix:
        k, n = alpha.src, alpha.tgt
        cells_k, blocks_k, dim_k = layouts[k]
        _, blocks_n, dim_n = layouts[n]
        P = _precomposition(B, alpha, blocks_n, dim_n, cells_k, blocks_k, dim_k)
        try:
            return solve_matrix(K[k], P @ K[n])
        except NoSolution as exc:  # pragma: no cover - would mean the nerve is not a functor
            raise InvalidObject(f"precomposition with {alpha} leaves the nerve") from exc

    faces = [()] + [tuple(structure(ic.face(n, i)) for i in range(n + 1)) for n in range(1, trunc + 1)]
    degs = [tuple(structure(ic.degeneracy(n, i)) for i in range(n + 1)) for n in range(trunc)]
    group = TruncatedSimplicialGroup(trunc, tuple(k.cols for k in K), faces, degs)
    return NerveData(
        complex=B,
        group=group,
        cells=tuple(l[0] for l in layouts),
        blocks=tuple(l[1] for l in layouts),
        embeddings=tuple(K),
    )


def nerve_rank_formula(ranks, n: int) -> int:
    """``sum_m C(n, m) r_m``: one copy of ``B_m`` per surjection ``[n] -> [m]``."""
    return sum(comb(n, m) * ranks[m] for m in range(min(n, len(ranks) - 1) + 1))


# ---------------------------------------------------------------------------
# unit and counit


def counit(B: ChainComplex, trunc: int, nerve: NerveData | None = None) -> list[IntMatrix]:
    """``C(N(B))_n -> B_n``: read off the coordinate at the identity cell."""
    N = nerve if nerve is not None else dold_kan_nerve(B, trunc)
    C = normalized_chains(N.group)
    return [N.coordinate(n, ic.identity(n)) @ C.inclusions[n] for n in range(trunc + 1)]


def counit_report(B: ChainComplex, trunc: int) -> tuple[list[IntMatrix], bool, bool]:
    """Counit matrices, whether each is unimodular, and whether they intertwine ``d``."""
    N = dold_kan_nerve(B, trunc)
    C = normalized_chains(N.group)
    eps = [N.coordinate(n, ic.identity(n)) @ C.inclusions[n] for n in range(trunc + 1)]
    unimodular = all(is_unimodular(e) for e in eps)
    intertwines = all(eps[n - 1] @ C.complex.d[n] == B.d[n] @ eps[n] for n in range(1, trunc + 1))
    return eps, unimodular, intertwines


@dataclass(frozen=True, eq=False)
class UnitResult:
    components: tuple[IntMatrix, ...]
    normalized: NormalizedChainsResult
    nerve: NerveData

    def morphism(self, source: TruncatedSimplicialGroup) -> DuplicialMorphism:
        return DuplicialMorphism(source, self.nerve.group, self.components)

    def unimodular(self) -> bool:
        return all(is_unimodular(u) for u in self.components)


def unit(X: TruncatedSimplicialGroup, trunc: int | None = None) -> UnitResult:
    """``X_n -> N(C(X))_n``: ``x`` goes to the family ``(pi_m X(tau) x)_tau``."""
    M = X.trunc if trunc is None else trunc
    if M > X.trunc:
        raise OutOfTruncation(f"unit up to degree {M} needs the object up to degree {M}")
    C = normalized_chains(X)
    N = dold_kan_nerve(C.complex, M)
    pis = [pi_matrix(X, m) for m in range(M + 1)]
    comps = []
    for n in range(M + 1):
        blocks = []
        for tau in N.cells[n]:
            image = pis[tau.src] @ evaluate(X, tau)
            try:
                blocks.append(solve_matrix(C.inclusions[tau.src], image))
            except NoSolution as exc:
                raise InvalidObject(f"projection of X({tau}) is not normalized") from exc
        amb = IntMatrix.vstack(blocks, ncols=X.ranks[n])
        try:
            comps.append(solve_matrix(N.embeddings[n], amb))
        except NoSolution as exc:
            raise InvalidObject(f"unit family in degree {n} violates the nerve equations") from exc
    return UnitResult(tuple(comps), C, N)


# ---------------------------------------------------------------------------
# induced maps


def normalized_map(f: DuplicialMorphism, CX: NormalizedChainsResult, CY: NormalizedChainsResult) -> list[IntMatrix]:
    """``C(f)_n``, expressed in the normalized bases of source and target."""
    top = min(len(f.components), len(CX.inclusions), len(CY.inclusions))
    return [solve_matrix(CY.inclusions[n], f.components[n] @ CX.inclusions[n]) for n in range(top)]


def nerve_map(g, NB: NerveData, NC: NerveData) -> list[IntMatrix]:
    """``N(g)_n`` for a chain map ``g`` (one matrix per degree), in kernel coordinates."""
    out = []
    for n in range(min(NB.trunc, NC.trunc) + 1):
        amb = IntMatrix.block_diag([g[tau.src] for tau in NB.cells[n]])
        out.append(solve_matrix(NC.embeddings[n], amb @ NB.embeddings[n]))
    return out
