"""Duchain complexes, the Dwyer-Kan nerve, and paracyclic/cyclic classification.

A duchain complex is a chain complex ``(B, d)`` with a second differential
``delta: B_n -> B_{n+1}``, ``delta^2 = 0``, and no relation between ``d`` and
``delta``.

An ``n``-cell of the Dwyer-Kan nerve is a family ``(b_tau)`` indexed by the
duplex maps ``tau: <m> -> <n>`` that are injective on ``0..m``, subject to the
boundary equations and ``delta(b_tau) = b_(tau o sigma_(m+1))``.  Such a family
is determined by its simplicial part, and the rest is produced level by level
by :func:`extend`.  Because the extension is linear in the cell, it is carried
out once on matrices rather than per element.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import index_cat as ic
from .doldkan import (
    ChainComplex,
    InvalidObject,
    NerveData,
    NormalizedChainsResult,
    dold_kan_nerve,
    normalized_chains,
)
from .index_cat import XiMap
from .linalg import IntMatrix, NoSolution, is_unimodular, kernel_basis, snf, solve_matrix
from .objects import (
    OutOfTruncation,
    TruncatedDuplicialGroup,
    ValidationReport,
    pi_matrix,
)


@dataclass(frozen=True, eq=False)
class DuchainComplex:
    """``chain`` plus ``delta[n]: B_n -> B_{n+1}`` for ``0 <= n < trunc``."""

    chain: ChainComplex
    delta: tuple[IntMatrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", tuple(self.delta))
        r = self.chain.ranks
        if len(self.delta) != self.trunc:
            raise ValueError(f"duchain complex needs {self.trunc} delta maps, got {len(self.delta)}")
        for n, D in enumerate(self.delta):
            if D.shape != (r[n + 1], r[n]):
                raise ValueError(f"delta[{n}] has shape {D.shape}, expected {(r[n + 1], r[n])}")

    @property
    def trunc(self) -> int:
        return self.chain.trunc

    @property
    def ranks(self) -> tuple[int, ...]:
        return self.chain.ranks

    @property
    def d(self) -> tuple[IntMatrix, ...]:
        return self.chain.d

    def delta_squares_to_zero(self) -> bool:
        return all((self.delta[n + 1] @ self.delta[n]).is_zero() for n in range(self.trunc - 1))

    def check(self) -> None:
        if not self.chain.squares_to_zero():
            raise ValueError("d o d != 0")
        if not self.delta_squares_to_zero():
            raise ValueError("delta o delta != 0")

    def id_minus_d_delta(self, n: int) -> IntMatrix:
        """``1 - d delta`` on ``B_n`` (needs ``n < trunc``)."""
        if not 0 <= n < self.trunc:
            raise OutOfTruncation(f"1 - d delta in degree {n} (truncation {self.trunc})")
        return IntMatrix.identity(self.ranks[n]) - self.d[n + 1] @ self.delta[n]

    def id_minus_delta_d(self, n: int) -> IntMatrix:
        """``1 - delta d`` on ``B_n`` (identity in degree 0)."""
        if not 0 <= n <= self.trunc:
            raise OutOfTruncation(f"1 - delta d in degree {n} (truncation {self.trunc})")
        if n == 0:
            return IntMatrix.identity(self.ranks[0])
        return IntMatrix.identity(self.ranks[n]) - self.delta[n - 1] @ self.d[n]

    def shift_power(self, n: int) -> IntMatrix:
        """``(1 - d delta)^(n+1) (1 - delta d)^n`` on ``B_n``."""
        return self.id_minus_d_delta(n) ** (n + 1) @ self.id_minus_delta_d(n) ** n


def zero_duchain(trunc: int) -> DuchainComplex:
    from .doldkan import zero_complex

    return DuchainComplex(zero_complex(trunc), tuple(IntMatrix.zeros(0, 0) for _ in range(trunc)))


# ---------------------------------------------------------------------------
# normalized duchains


@dataclass(frozen=True, eq=False)
class NormalizedDuchainsResult:
    complex: DuchainComplex
    inclusions: tuple[IntMatrix, ...]


def normalized_duchains(X: TruncatedDuplicialGroup, chains: NormalizedChainsResult | None = None) -> NormalizedDuchainsResult:
    """Normalized chains with ``delta(x) = pi_(n+1)(s_(n+1) x)``."""
    C = chains if chains is not None else normalized_chains(X.underlying_simplicial())
    incl = C.inclusions
    delta = []
    for n in range(X.trunc):
        image = pi_matrix(X, n + 1) @ X.degeneracy(n, n + 1) @ incl[n]
        try:
            delta.append(solve_matrix(incl[n + 1], image))
        except NoSolution as exc:
            raise InvalidObject(f"projected extra degeneracy leaves normalized chains in degree {n + 1}") from exc
    return NormalizedDuchainsResult(DuchainComplex(C.complex, tuple(delta)), incl)


# ---------------------------------------------------------------------------
# the extension algorithm


@dataclass(frozen=True, eq=False)
class ExtensionTable:
    """Linear maps ``E_tau: N(B)_base -> B_m`` for every injective ``tau`` with ``tau(m) <= level``.

    Entries are keyed by the value tuple of ``tau``; ``tau`` always has target
    ``<base>``.
    """

    base: int
    level: int
    entries: dict = field(repr=False)
    nerve: NerveData = field(repr=False)

    def __getitem__(self, tau: XiMap) -> IntMatrix:
        return self.entries[tau.values]

    def __contains__(self, tau: XiMap) -> bool:
        return tau.values in self.entries

    def maps(self) -> list[XiMap]:
        return [XiMap(len(v) - 1, self.base, v) for v in self.entries]


def _new_cells(n: int, k: int):
    """Injective duplex maps into ``<n>`` with top value ``k + 1``, split by whether ``tau(0) = k - n``."""
    forced, solved = [], []
    low = k - n
    # injectivity and tau(m) <= tau(0) + n + 1 put all values in [k - n, k + 1]
    for m in range(n + 2):
        for head in itertools.combinations(range(max(low, 0), k + 1), m):
            tau = XiMap(m, n, head + (k + 1,))
            (forced if m >= 1 and head[0] == low else solved).append(tau)
    return forced, solved


def extend(B: DuchainComplex, n: int, k: int, nerve: NerveData | None = None) -> ExtensionTable:
    """Extend the simplicial families of ``N(B)_n`` to all duplex indices up to ``k``.

    Step ``k -> k + 1``: indices starting at ``k - n`` are forced to be
    ``delta`` of their restriction; the remaining new indices are solved from
    the boundary equation of the index obtained by prepending ``k - n``.
    """
    if k < n:
        raise ValueError(f"extension level {k} below base degree {n}")
    if B.trunc < n + 1:
        raise OutOfTruncation(f"extending {n}-cells needs the complex up to degree {n + 1}, have {B.trunc}")
    N = nerve if nerve is not None else dold_kan_nerve(B.chain, n)
    if N.trunc < n:
        raise OutOfTruncation(f"nerve only computed to degree {N.trunc}")
    E: dict = {}
    for tau in N.cells[n]:
        E[tau.values] = N.coordinate(n, tau)
    d, delta = B.d, B.delta
    for level in range(n, k):
        forced, solved = _new_cells(n, level)
        for tau in forced:
            m = tau.src
            E[tau.values] = delta[m - 1] @ E[tau.values[:-1]]
        for tau in solved:
            m = tau.src
            phi = (level - n,) + tau.values
            total = d[m + 1] @ E[phi]
            for i in range(1, m + 2):
                face_values = phi[:i] + phi[i + 1:]
                term = E[face_values]
                total = total - term if (m + 1 - i) % 2 == 0 else total + term
            E[tau.values] = total if (m + 1) % 2 == 0 else -total
    return ExtensionTable(n, k, E, N)


def check_extension(table: ExtensionTable, B: DuchainComplex) -> ValidationReport:
    """Re-verify every boundary and ``delta`` equation the table can express."""
    report = ValidationReport()
    n = table.base
    cols = table.nerve.embeddings[n].cols
    for tau in table.maps():
        m = tau.src
        if m >= 1:
            rhs = IntMatrix.zeros(B.ranks[m - 1], cols)
            for i in range(m + 1):
                term = table[ic.compose(tau, ic.face(m, i))]
                rhs = rhs + term if (m - i) % 2 == 0 else rhs - term
            report.compare(f"d b_{tau.values} == sum (-1)^(m-i) b_(tau o face_i)", B.d[m] @ table[tau], rhs)
        if m + 1 <= B.trunc:
            target = ic.compose(tau, ic.degeneracy(m, m + 1))
            lhs = B.delta[m] @ table[tau]
            if not ic.is_injective_on_fd(target):
                report.compare(f"delta b_{tau.values} == 0", lhs, IntMatrix.zeros(B.ranks[m + 1], cols))
            elif target in table:
                report.compare(f"delta b_{tau.values} == b_{target.values}", lhs, table[target])
    return report


# ---------------------------------------------------------------------------
# the nerve


@dataclass(frozen=True, eq=False)
class DwyerKanNerve:
    complex: DuchainComplex
    group: TruncatedDuplicialGroup
    simplicial: NerveData


def dwyer_kan_nerve(B: DuchainComplex, trunc: int) -> DwyerKanNerve:
    """The duplicial nerve of ``B`` up to degree ``trunc`` (needs ``B`` to ``trunc + 1``)."""
    if B.trunc < trunc + 1:
        raise OutOfTruncation(f"nerve degree {trunc} needs the duchain complex up to degree {trunc + 1}, have {B.trunc}")
    N = dold_kan_nerve(B.chain, trunc)
    degs = [list(ds) for ds in N.group.degeneracies]
    for n in range(trunc):
        table = extend(B, n, n + 1, N)
        blocks = []
        for rho in N.cells[n + 1]:
            # sigma_(n+1) o rho has the same values as rho, read as a map into <n>
            blocks.append(table.entries[rho.values])
        amb = IntMatrix.vstack(blocks, ncols=N.embeddings[n].cols)
        try:
            degs[n].append(solve_matrix(N.embeddings[n + 1], amb))
        except NoSolution as exc:
            raise InvalidObject(f"extra degeneracy from degree {n} leaves the nerve") from exc
    group = TruncatedDuplicialGroup(trunc, N.group.ranks, N.group.faces, degs)
    return DwyerKanNerve(B, group, N)


@dataclass(frozen=True, eq=False)
class RoundtripReport:
    """Comparison ``C(N'(B))_n -> B_n`` and which intertwining equations fail."""

    comparisons: tuple[IntMatrix, ...]
    unimodular: tuple[bool, ...]
    d_failures: tuple[int, ...]
    delta_failures: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(self.unimodular) and not self.d_failures and not self.delta_failures


def roundtrip(B: DuchainComplex, trunc: int, nerve: DwyerKanNerve | None = None) -> RoundtripReport:
    """Run ``B -> N'(B) -> C(N'(B))`` and compare with ``B`` through the counit.

    Failures are listed by the source degree of the offending map.
    """
    NB = nerve if nerve is not None else dwyer_kan_nerve(B, trunc)
    D = normalized_duchains(NB.group)
    C = D.complex
    eps = tuple(NB.simplicial.coordinate(n, ic.identity(n)) @ D.inclusions[n] for n in range(trunc + 1))
    d_bad = tuple(n for n in range(1, trunc + 1) if eps[n - 1] @ C.d[n] != B.d[n] @ eps[n])
    delta_bad = tuple(n for n in range(trunc) if eps[n + 1] @ C.delta[n] != B.delta[n] @ eps[n])
    return RoundtripReport(eps, tuple(is_unimodular(e) for e in eps), d_bad, delta_bad)


# ---------------------------------------------------------------------------
# shifts and the cyclic equation


def shift_on_normalized(X: TruncatedDuplicialGroup, n: int, inclusions=None) -> IntMatrix:
    """``T_n^(n+1)`` restricted to ``C(X)_n``, in the normalized basis."""
    if not 0 <= n < X.trunc:
        raise OutOfTruncation(f"T_{n} needs degree {n + 1} (truncation {X.trunc})")
    incl = inclusions[n] if inclusions is not None else normalized_chains(X.underlying_simplicial()).inclusions[n]
    power = X.shift_matrix(n) ** (n + 1)
    try:
        return solve_matrix(incl, power @ incl)
    except NoSolution as exc:
        raise InvalidObject(f"T_{n}^{n + 1} does not preserve normalized chains") from exc


def cyclic_equation_sides(X: TruncatedDuplicialGroup, n: int, normalized: NormalizedDuchainsResult | None = None):
    """``((1 - d delta)^(n+1) (1 - delta d)^n, T_n^(n+1))`` on ``C(X)_n``."""
    D = normalized if normalized is not None else normalized_duchains(X)
    return D.complex.shift_power(n), shift_on_normalized(X, n, D.inclusions)


def cyclic_equation_check(X: TruncatedDuplicialGroup, n: int, normalized: NormalizedDuchainsResult | None = None) -> bool:
    lhs, rhs = cyclic_equation_sides(X, n, normalized)
    return lhs == rhs


def shifts_unimodular(X: TruncatedDuplicialGroup, top: int) -> bool:
    """Whether ``T_n`` is invertible over Z for every ``n <= top``."""
    return all(is_unimodular(X.shift_matrix(n)) for n in range(top + 1))


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class DegreeVerdict:
    degree: int
    id_minus_d_delta: IntMatrix
    id_minus_delta_d: IntMatrix
    shift_power: IntMatrix
    paracyclic_ok: bool
    cyclic_ok: bool
    duplicial_ok: bool = True


@dataclass(frozen=True)
class Classification:
    """Per-degree verdicts, valid within the truncation only."""

    trunc: int
    degrees: tuple[DegreeVerdict, ...]

    @property
    def duplicial_ok(self) -> bool:
        return all(v.duplicial_ok for v in self.degrees)

    @property
    def paracyclic_ok(self) -> bool:
        return all(v.paracyclic_ok for v in self.degrees)

    @property
    def cyclic_ok(self) -> bool:
        return all(v.cyclic_ok for v in self.degrees)


def classify(B: DuchainComplex) -> Classification:
    """Paracyclic: ``1 - d delta`` and ``1 - delta d`` invertible; cyclic: their power product is 1.

    Degrees ``0..trunc-1`` are covered, since ``1 - d delta`` on ``B_n``
    needs ``d`` out of degree ``n + 1``.
    """
    verdicts = []
    for n in range(B.trunc):
        a = B.id_minus_d_delta(n)
        b = B.id_minus_delta_d(n)
        power = a ** (n + 1) @ b ** n
        para = is_unimodular(a) and is_unimodular(b)
        verdicts.append(DegreeVerdict(n, a, b, power, para, power == IntMatrix.identity(B.ranks[n])))
    return Classification(B.trunc, tuple(verdicts))


@dataclass(frozen=True)
class TransferReport:
    injective_gf: bool
    injective_fg: bool
    surjective_gf: bool
    surjective_fg: bool

    @property
    def holds(self) -> bool:
        return self.injective_gf == self.injective_fg and self.surjective_gf == self.surjective_fg


def _injective(A: IntMatrix) -> bool:
    return snf(A).rank == A.cols


def _surjective(A: IntMatrix) -> bool:
    s = snf(A)
    return s.rank == A.rows and all(f == 1 for f in s.invariant_factors)


def transfer_check(f: IntMatrix, g: IntMatrix) -> TransferReport:
    """Compare ``1 - g f`` on ``A`` with ``1 - f g`` on ``B`` for ``f: A -> B``, ``g: B -> A``."""
    if f.rows != g.cols or f.cols != g.rows:
        raise ValueError(f"f {f.shape} and g {g.shape} do not go back and forth")
    gf = IntMatrix.identity(f.cols) - g @ f
    fg = IntMatrix.identity(f.rows) - f @ g
    return TransferReport(_injective(gf), _injective(fg), _surjective(gf), _surjective(fg))


# ---------------------------------------------------------------------------
# random generation


def _random_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> IntMatrix:
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], shape=(rows, cols))


def gen_random_duchain(seed: int, max_trunc: int, max_rank: int, entry_bound: int = 2) -> DuchainComplex:
    """Deterministic random duchain complex of truncation ``max_trunc``.

    Ranks are drawn from ``0..max_rank``.  ``d[n+1]`` is a kernel basis of
    ``d[n]`` times a random matrix and ``delta[n]`` a kernel basis of
    ``delta[n+1]`` times a random matrix, so both square to zero.  The bound
    applies to the random factors; composed entries may exceed it.
    """
    rng = random.Random(seed)
    N = max_trunc
    ranks = [rng.randint(0, max_rank) for _ in range(N + 1)]
    d = [IntMatrix.zeros(0, ranks[0])]
    for n in range(1, N + 1):
        if n == 1:
            d.append(_random_matrix(rng, ranks[0], ranks[1], entry_bound))
        else:
            K = kernel_basis(d[n - 1]).basis
            d.append(K @ _random_matrix(rng, K.cols, ranks[n], entry_bound))
    delta: list[IntMatrix] = [IntMatrix.zeros(0, 0)] * N
    for n in reversed(range(N)):
        if n == N - 1:
            delta[n] = _random_matrix(rng, ranks[n + 1], ranks[n], entry_bound)
        else:
            K = kernel_basis(delta[n + 1]).basis
            delta[n] = K @ _random_matrix(rng, K.cols, ranks[n], entry_bound)
    B = DuchainComplex(ChainComplex(N, tuple(ranks), tuple(d)), tuple(delta))
    B.check()
    return B
