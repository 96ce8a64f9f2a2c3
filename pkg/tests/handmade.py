"""Small hand-built duchain complexes with known classification."""

from dukan.doldkan import ChainComplex
from dukan.dwyerkan import DuchainComplex
from dukan.linalg import IntMatrix


def one_by_one(d: int, delta: int, trunc: int = 1) -> DuchainComplex:
    """``Z <-d- Z`` in degrees 0 and 1 with ``delta: B_0 -> B_1``, zero above."""
    ranks = (1, 1) + (0,) * (trunc - 1)
    ds = [IntMatrix.zeros(0, 1), IntMatrix([[d]])]
    ds += [IntMatrix.zeros(ranks[n - 1], ranks[n]) for n in range(2, trunc + 1)]
    deltas = [IntMatrix([[delta]])] + [IntMatrix.zeros(ranks[n + 1], ranks[n]) for n in range(1, trunc)]
    return DuchainComplex(ChainComplex(trunc, ranks, tuple(ds)), tuple(deltas))


def zero_delta(trunc: int = 5) -> DuchainComplex:
    """``Z^2 <- Z^2 <- Z`` with nonzero ``d`` and ``delta = 0``."""
    ranks = (2, 2, 1) + (0,) * (trunc - 2)
    ds = [IntMatrix.zeros(0, 2), IntMatrix([[1, 2], [0, 3]]), IntMatrix([[0], [0]])]
    ds += [IntMatrix.zeros(ranks[n - 1], ranks[n]) for n in range(3, trunc + 1)]
    deltas = [IntMatrix.zeros(ranks[n + 1], ranks[n]) for n in range(trunc)]
    return DuchainComplex(ChainComplex(trunc, ranks, tuple(ds)), tuple(deltas))


FIXTURES = {
    "d=1,delta=2": lambda trunc=5: one_by_one(1, 2, trunc),
    "d=1,delta=1": lambda trunc=5: one_by_one(1, 1, trunc),
    "delta=0": zero_delta,
}
