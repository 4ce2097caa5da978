"""Matroid files: one JSON object, one field per line, fixed field order.

    {"kind": "linear", "p": ..., "rows": ..., "cols": ..., "columns": [[...], ...]}
    {"kind": "bases", "m": ..., "rank": ..., "bases": [[...], ...]}
    {"kind": "fixture", "name": "..."}
"""
from __future__ import annotations

import json

from . import gf
from .errors import MatroidError
from .fixtures import fixture
from .matroid import BasisMatroid, LinearMatroid, Matroid, bits, from_bases


class MatroidFileError(MatroidError, ValueError):
    pass


FIELDS = {
    "linear": ("kind", "p", "rows", "cols", "columns"),
    "bases": ("kind", "m", "rank", "bases"),
    "fixture": ("kind", "name"),
}


def _field(obj, name, typ):
    if name not in obj:
        raise MatroidFileError(f"missing field {name!r}")
    val = obj[name]
    if not isinstance(val, typ) or isinstance(val, bool):
        raise MatroidFileError(f"field {name!r}: expected {typ.__name__}, got {type(val).__name__}")
    return val


def parse_matroid_file(text: str) -> Matroid:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatroidFileError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise MatroidFileError("line 1: top level must be an object")
    kind = _field(obj, "kind", str)
    if kind not in FIELDS:
        raise MatroidFileError(f"field 'kind': unknown kind {kind!r}")
    extra = set(obj) - set(FIELDS[kind])
    if extra:
        raise MatroidFileError(f"unexpected field(s) {sorted(extra)} for kind {kind!r}")
    if kind == "fixture":
        return fixture(_field(obj, "name", str))
    if kind == "linear":
        p = _field(obj, "p", int)
        rows = _field(obj, "rows", int)
        cols = _field(obj, "cols", int)
        columns = _field(obj, "columns", list)
        try:
            gf.check_prime(p)
        except ValueError as exc:
            raise MatroidFileError(f"field 'p': {exc}") from None
        if len(columns) != cols:
            raise MatroidFileError(f"field 'columns': {len(columns)} columns, but cols = {cols}")
        for i, c in enumerate(columns):
            if not isinstance(c, list) or len(c) != rows or not all(isinstance(x, int) for x in c):
                raise MatroidFileError(f"field 'columns': entry {i} is not a list of {rows} integers")
        return LinearMatroid(gf.MatrixF(p, tuple(tuple(c) for c in columns), rows))
    m = _field(obj, "m", int)
    rank = _field(obj, "rank", int)
    bases = _field(obj, "bases", list)
    for i, b in enumerate(bases):
        if not isinstance(b, list) or len(b) != rank or not all(isinstance(x, int) and 0 <= x < m for x in b):
            raise MatroidFileError(f"field 'bases': entry {i} is not a {rank}-subset of 0..{m - 1}")
    return from_bases(m, bases)


def serialize_matroid(M: Matroid) -> str:
    if isinstance(M, LinearMatroid):
        cols = ", ".join(json.dumps(list(c)) for c in M.matrix.columns)
        lines = ['"kind": "linear"', f'"p": {M.p}', f'"rows": {M.matrix.nrows}',
                 f'"cols": {M.m}', f'"columns": [{cols}]']
    elif isinstance(M, BasisMatroid):
        bl = ", ".join(json.dumps(bits(b)) for b in M.bases)
        lines = ['"kind": "bases"', f'"m": {M.m}', f'"rank": {M.r}', f'"bases": [{bl}]']
    else:
        raise TypeError(f"cannot serialize {type(M).__name__}")
    return "{\n  " + ",\n  ".join(lines) + "\n}\n"


def load_matroid(source: str) -> Matroid:
    """A path to a matroid file, a JSON object literal, or a fixture name."""
    import os

    if source.lstrip().startswith("{"):
        return parse_matroid_file(source)
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return parse_matroid_file(fh.read())
    return fixture(source)
