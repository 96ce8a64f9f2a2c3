"""JSON codecs for matrices, complexes and (du)plicial objects.

Matrix entries travel as decimal strings so that arbitrarily large integers
survive any JSON parser; plain JSON integers are accepted on input.  Shapes
of empty matrices are recovered from the ``ranks`` field.
"""

from __future__ import annotations

import json
import os
from typing import Any

from .doldkan import ChainComplex
from .dwyerkan import DuchainComplex
from .linalg import IntMatrix
from .objects import TruncatedDuplicialGroup, TruncatedSimplicialGroup

MAX_BITS_ENV = "DUKAN_MAX_ENTRY_BITS"


class ParseError(ValueError):
    """Input is not a well-formed description."""


class EntryTooLarge(ValueError):
    """A matrix entry exceeds the cap set by ``DUKAN_MAX_ENTRY_BITS``."""


def max_entry_bits() -> int | None:
    raw = os.environ.get(MAX_BITS_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"{MAX_BITS_ENV}={raw!r} is not an integer") from exc


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool):
        raise ParseError(f"{what}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip(), 10)
        except ValueError:
            pass
    raise ParseError(f"{what}: expected an integer, got {x!r}")


def matrix_to_json(M: IntMatrix) -> list[list[str]]:
    cap = max_entry_bits()
    if cap is not None and M.max_bits() > cap:
        raise EntryTooLarge(f"matrix entry with {M.max_bits()} bits exceeds {MAX_BITS_ENV}={cap}")
    return [[str(x) for x in row] for row in M.tolist()]


def matrix_from_json(obj: Any, shape: tuple[int, int], what: str = "matrix") -> IntMatrix:
    if not isinstance(obj, list) or any(not isinstance(row, list) for row in obj):
        raise ParseError(f"{what}: expected a list of rows")
    rows, cols = shape
    if rows == 0:
        # [] and [[]] both describe a matrix without rows
        if any(row for row in obj):
            raise ParseError(f"{what}: expected shape {shape}")
        return IntMatrix.zeros(0, cols)
    if len(obj) != rows or any(len(row) != cols for row in obj):
        raise ParseError(f"{what}: expected shape {shape}")
    return IntMatrix([[_int(x, what) for x in row] for row in obj], shape=shape)


def _header(obj: Any, kinds: tuple[str, ...]) -> tuple[str, int, tuple[int, ...]]:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object")
    kind = obj.get("kind")
    if kind not in kinds:
        raise ParseError(f"expected kind in {kinds}, got {kind!r}")
    if "trunc" not in obj or "ranks" not in obj:
        raise ParseError("missing 'trunc' or 'ranks'")
    trunc = _int(obj["trunc"], "trunc")
    if trunc < 0:
        raise ParseError("negative truncation")
    if not isinstance(obj["ranks"], list):
        raise ParseError("'ranks' must be a list")
    ranks = tuple(_int(r, "ranks") for r in obj["ranks"])
    if len(ranks) != trunc + 1 or any(r < 0 for r in ranks):
        raise ParseError(f"'ranks' must list {trunc + 1} nonnegative ranks")
    return kind, trunc, ranks


def _list(obj: dict, key: str, length: int | None = None) -> list:
    value = obj.get(key)
    if not isinstance(value, list):
        raise ParseError(f"missing list '{key}'")
    if length is not None and len(value) != length:
        raise ParseError(f"'{key}' must have {length} entries, got {len(value)}")
    return value


def _chain_parts(obj: dict, trunc: int, ranks: tuple[int, ...]) -> ChainComplex:
    raw = _list(obj, "d")
    if len(raw) == trunc:
        raw = [[]] + raw
    if len(raw) != trunc + 1:
        raise ParseError(f"'d' must have {trunc + 1} entries (d[0] empty), got {len(raw)}")
    d = [IntMatrix.zeros(0, ranks[0])]
    d += [matrix_from_json(raw[n], (ranks[n - 1], ranks[n]), f"d[{n}]") for n in range(1, trunc + 1)]
    try:
        return ChainComplex(trunc, ranks, tuple(d))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def chain_from_json(obj: Any) -> ChainComplex:
    _, trunc, ranks = _header(obj, ("chain",))
    return _chain_parts(obj, trunc, ranks)


def duchain_from_json(obj: Any) -> DuchainComplex:
    _, trunc, ranks = _header(obj, ("duchain",))
    chain = _chain_parts(obj, trunc, ranks)
    raw = _list(obj, "delta", trunc)
    delta = tuple(matrix_from_json(raw[n], (ranks[n + 1], ranks[n]), f"delta[{n}]") for n in range(trunc))
    return DuchainComplex(chain, delta)


def object_from_json(obj: Any) -> TruncatedSimplicialGroup:
    kind, trunc, ranks = _header(obj, ("simplicial", "duplicial"))
    extra = 1 if kind == "duplicial" else 0
    raw_faces = _list(obj, "faces", trunc + 1)
    raw_degs = _list(obj, "degeneracies", trunc)
    faces: list[tuple[IntMatrix, ...]] = [()]
    for n in range(1, trunc + 1):
        fs = raw_faces[n]
        if not isinstance(fs, list) or len(fs) != n + 1:
            raise ParseError(f"faces[{n}] must list {n + 1} matrices")
        faces.append(tuple(matrix_from_json(fs[i], (ranks[n - 1], ranks[n]), f"faces[{n}][{i}]") for i in range(n + 1)))
    degs = []
    for n in range(trunc):
        ds = raw_degs[n]
        if not isinstance(ds, list) or len(ds) != n + 1 + extra:
            raise ParseError(f"degeneracies[{n}] must list {n + 1 + extra} matrices")
        degs.append(
            tuple(matrix_from_json(ds[i], (ranks[n + 1], ranks[n]), f"degeneracies[{n}][{i}]") for i in range(len(ds)))
        )
    cls = TruncatedDuplicialGroup if extra else TruncatedSimplicialGroup
    try:
        return cls(trunc, ranks, faces, degs)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def chain_to_json(C: ChainComplex) -> dict:
    return {
        "kind": "chain",
        "trunc": C.trunc,
        "ranks": list(C.ranks),
        "d": [matrix_to_json(M) for M in C.d],
    }


def duchain_to_json(B: DuchainComplex) -> dict:
    out = chain_to_json(B.chain)
    out["kind"] = "duchain"
    out["delta"] = [matrix_to_json(M) for M in B.delta]
    return out


def object_to_json(X: TruncatedSimplicialGroup) -> dict:
    return {
        "kind": X.kind,
        "trunc": X.trunc,
        "ranks": list(X.ranks),
        "faces": [[matrix_to_json(M) for M in fs] for fs in X.faces],
        "degeneracies": [[matrix_to_json(M) for M in ds] for ds in X.degeneracies],
    }


def load_any(obj: Any):
    """Decode by the ``kind`` field."""
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object")
    kind = obj.get("kind")
    if kind == "chain":
        return chain_from_json(obj)
    if kind == "duchain":
        return duchain_from_json(obj)
    if kind in ("simplicial", "duplicial"):
        return object_from_json(obj)
    raise ParseError(f"unknown kind {kind!r}")


def dumps(obj: Any) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"
