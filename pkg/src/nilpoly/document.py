"""JSON documents for polynomial maps and sequence samples.

Polynomial map::

    {"n": 3, "N": 1, "ring": {"type": "rational"},
     "entries": [{"row": 1, "col": 2, "terms": [{"coeff": "1", "exps": [1]}]}]}

``ring`` may also be ``{"type": "mod", "m": 4}``; coefficients then must be
integers and the modulus only affects pointwise evaluation.  Samples::

    {"samples": [{"t": 0, "matrix": [["1", "0"], ["0", "1"]]}, ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import NilpolyError
from .mpoly import MPoly, make_layout
from .polymap import PolyMap
from .scalars import format_rational, parse_rational
from .unitri import UniTri


class DocumentError(NilpolyError, ValueError):
    pass


@dataclass(frozen=True)
class PolyMapDocument:
    polymap: PolyMap
    modulus: int | None = None


def _int(value, where: str, minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise DocumentError(f"{where}: must be >= {minimum}, got {value}")
    return value


def _load(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _coeff(value, where: str) -> Fraction:
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def document_from_obj(obj) -> PolyMapDocument:
    if not isinstance(obj, dict):
        raise DocumentError("document: expected a JSON object")
    for key in ("n", "N", "entries"):
        if key not in obj:
            raise DocumentError(f"document: missing field {key!r}")
    n = _int(obj["n"], "n", 1)
    N = _int(obj["N"], "N", 1)
    ring = obj.get("ring", {"type": "rational"})
    modulus = None
    if not isinstance(ring, dict) or ring.get("type") not in ("rational", "mod"):
        raise DocumentError(f"ring: expected {{'type': 'rational'}} or {{'type': 'mod', 'm': int}}, got {ring!r}")
    if ring["type"] == "mod":
        modulus = _int(ring.get("m"), "ring.m", 2)

    blocks = make_layout(("t", N))
    entries = {}
    if not isinstance(obj["entries"], list):
        raise DocumentError("entries: expected a list")
    for k, entry in enumerate(obj["entries"]):
        where = f"entries[{k}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        row = _int(entry.get("row"), f"{where}.row")
        col = _int(entry.get("col"), f"{where}.col")
        if row == col:
            raise DocumentError(f"{where}: diagonal entry not allowed ({row},{col})")
        if row > col:
            raise DocumentError(f"{where}: below-diagonal entry not allowed ({row},{col})")
        if not (1 <= row and col <= n):
            raise DocumentError(f"{where}: index ({row},{col}) out of range for n={n}")
        if (row, col) in entries:
            raise DocumentError(f"{where}: duplicate entry ({row},{col})")
        terms = entry.get("terms")
        if not isinstance(terms, list):
            raise DocumentError(f"{where}.terms: expected a list")
        coeffs = {}
        for m, term in enumerate(terms):
            tw = f"{where}.terms[{m}]"
            if not isinstance(term, dict):
                raise DocumentError(f"{tw}: expected an object")
            c = _coeff(term.get("coeff"), f"{tw}.coeff")
            if modulus is not None and c.denominator != 1:
                raise DocumentError(f"{tw}.coeff: coefficients must be integers in a mod-{modulus} document")
            exps = term.get("exps")
            if not isinstance(exps, list) or len(exps) != N:
                raise DocumentError(f"{tw}.exps: exponent vector of wrong length (expected {N})")
            exps = tuple(_int(e, f"{tw}.exps", 0) for e in exps)
            if exps in coeffs:
                raise DocumentError(f"{tw}.exps: duplicate exponent vector {list(exps)}")
            coeffs[exps] = c
        entries[row, col] = MPoly(coeffs, blocks)
    return PolyMapDocument(PolyMap.from_entries(n, entries, blocks=blocks), modulus)


def parse_document(text: str) -> PolyMapDocument:
    return document_from_obj(_load(text, "document"))


def parse_polymap(text: str) -> PolyMap:
    return parse_document(text).polymap


def polymap_to_obj(f: PolyMap, modulus: int | None = None) -> dict:
    if f.shift_blocks:
        raise DocumentError("cannot serialize a map with shift parameters")
    entries = []
    for (i, j), p in sorted(f.matrix.entries.items()):
        if not p:
            continue
        terms = [{"coeff": format_rational(c), "exps": list(e)} for e, c in p.sorted_terms()]
        entries.append({"row": i, "col": j, "terms": terms})
    ring = {"type": "rational"} if modulus is None else {"type": "mod", "m": modulus}
    return {"n": f.n, "N": f.N, "ring": ring, "entries": entries}


def emit_polymap(f: PolyMap, modulus: int | None = None) -> str:
    return json.dumps(polymap_to_obj(f, modulus), indent=2)


def parse_samples(text: str) -> list[tuple[int, UniTri]]:
    obj = _load(text, "samples")
    if not isinstance(obj, dict) or not isinstance(obj.get("samples"), list):
        raise DocumentError("samples: expected {'samples': [...]}")
    out = []
    for k, s in enumerate(obj["samples"]):
        where = f"samples[{k}]"
        if not isinstance(s, dict):
            raise DocumentError(f"{where}: expected an object")
        t = _int(s.get("t"), f"{where}.t", 0)
        rows = s.get("matrix")
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            raise DocumentError(f"{where}.matrix: expected a list of rows")
        vals = [[_coeff(v, f"{where}.matrix[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows)]
        try:
            out.append((t, UniTri.from_rows(vals)))
        except NilpolyError as exc:
            raise DocumentError(f"{where}.matrix: {exc}") from None
    return out


def samples_to_obj(samples) -> dict:
    return {
        "samples": [
            {"t": t, "matrix": [[format_rational(Fraction(v)) for v in row] for row in g.to_rows()]}
            for t, g in samples
        ]
    }


def unitri_to_obj(g: UniTri) -> list[list[str]]:
    return [[format_rational(Fraction(v)) if not hasattr(v, "modulus") else str(v) for v in row] for row in g.to_rows()]
