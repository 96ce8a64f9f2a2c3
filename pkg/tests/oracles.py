"""Slow, independent reference computations used to cross-check the library.

Nothing here calls into ``dukan.linalg``: determinants come from the Leibniz
formula, ranks and solutions from Gaussian elimination over the rationals,
and lattice facts from enumeration.  Matrices are plain lists of rows.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, prod


def leibniz_det(M: list[list[int]]) -> int:
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inversions * prod(M[i][perm[i]] for i in range(n))
    return total


def minors_gcd(M: list[list[int]], k: int) -> int:
    """gcd of all ``k x k`` minors (the ``k``-th determinantal divisor)."""
    rows, cols = len(M), len(M[0]) if M else 0
    g = 0
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            g = gcd(g, leibniz_det([[M[i][j] for j in cs] for i in rs]))
    return g


def invariant_factors(M: list[list[int]]) -> list[int]:
    """Nonzero invariant factors as quotients of consecutive determinantal divisors."""
    out = []
    prev = 1
    for k in range(1, min(len(M), len(M[0]) if M else 0) + 1):
        dk = minors_gcd(M, k)
        if dk == 0:
            break
        out.append(dk // prev)
        prev = dk
    return out


def rational_rank(M: list[list[int]]) -> int:
    A = [[Fraction(x) for x in row] for row in M]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(A)) if A[r][c] != 0), None)
        if pivot is None:
            continue
        A[rank], A[pivot] = A[pivot], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c] != 0:
                f = A[r][c] / A[rank][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def rational_solve(columns: list[list[int]], b: list[int]) -> list[Fraction] | None:
    """Unique rational coefficients of ``b`` over linearly independent ``columns``, or None."""
    n = len(b)
    k = len(columns)
    A = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(b[i])] for i in range(n)]
    row = 0
    pivots = []
    for c in range(k):
        p = next((r for r in range(row, n) if A[r][c] != 0), None)
        if p is None:
            raise ValueError("columns are dependent")
        A[row], A[p] = A[p], A[row]
        A[row] = [x / A[row][c] for x in A[row]]
        for r in range(n):
            if r != row and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[row])]
        pivots.append(row)
        row += 1
    if any(A[r][k] != 0 for r in range(row, n)):
        return None
    return [A[r][k] for r in pivots]


def in_integer_span(columns: list[list[int]], b: list[int]) -> bool:
    if not columns:
        return not any(b)
    coeffs = rational_solve(columns, b)
    return coeffs is not None and all(c.denominator == 1 for c in coeffs)


def box_kernel(M: list[list[int]], bound: int) -> list[tuple[int, ...]]:
    """All nonzero integer ``v`` with ``|v_i| <= bound`` and ``M v = 0``."""
    cols = len(M[0]) if M else 0
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=cols):
        if any(v) and all(sum(a * x for a, x in zip(row, v)) == 0 for row in M):
            out.append(v)
    return out


def closure_mod(columns: list[list[int]], n: int, modulus: int) -> set[tuple[int, ...]]:
    """The subgroup of ``(Z/modulus)^n`` generated by ``columns``, by breadth-first closure."""
    gens = [tuple(x % modulus for x in c) for c in columns]
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % modulus for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def subgroup_index_mod(columns: list[list[int]], n: int, modulus: int) -> int:
    """Index of ``span(columns) + modulus * Z^n`` in ``Z^n``."""
    return modulus**n // len(closure_mod(columns, n, modulus))
