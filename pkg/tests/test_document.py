import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nilpoly.document import (
    DocumentError,
    emit_polymap,
    parse_document,
    parse_polymap,
    parse_samples,
    polymap_to_obj,
    samples_to_obj,
)
from nilpoly.mpoly import MPoly, make_layout
from nilpoly.polymap import PolyMap, diff_left
from nilpoly.unitri import UniTri

from conftest import random_polymap


def doc(entries, n=3, N=1, ring=None):
    obj = {"n": n, "N": N, "entries": entries}
    if ring is not None:
        obj["ring"] = ring
    return json.dumps(obj)


def entry(row, col, *terms):
    return {"row": row, "col": col, "terms": [{"coeff": c, "exps": e} for c, e in terms]}


def test_parse_example(t):
    f = parse_polymap(doc([entry(1, 2, ("1", [1]))]))
    assert f == PolyMap.from_entries(3, {(1, 2): t})
    d = parse_document(doc([entry(1, 3, (2, [0]))], ring={"type": "mod", "m": 4}))
    assert d.modulus == 4 and d.polymap[1, 3] == MPoly.const(2, t.blocks)


@pytest.mark.parametrize(
    "text, message",
    [
        (doc([entry(2, 2, ("1", [1]))]), "diagonal entry not allowed"),
        (doc([entry(3, 2, ("1", [1]))]), "below-diagonal"),
        (doc([entry(1, 4, ("1", [1]))]), "out of range"),
        (doc([entry(1, 2, ("3/0", [1]))]), "entries\\[0\\].terms\\[0\\].coeff: zero denominator"),
        (doc([entry(1, 2, ("x", [1]))]), "malformed coefficient"),
        (doc([entry(1, 2, ("1", [1, 0]))]), "exponent vector of wrong length"),
        (doc([entry(1, 2, ("1", [1]), ("2", [1]))]), "duplicate exponent vector"),
        (doc([entry(1, 2, ("1", [1])), entry(1, 2, ("1", [0]))]), "duplicate entry"),
        (doc([entry(1, 2, ("1/2", [1]))], ring={"type": "mod", "m": 3}), "must be integers"),
        (doc([], ring={"type": "p-adic"}), "ring"),
        ('{"n": 3, "N": 1, "entries": [}', "invalid JSON at line 1"),
        ('{"n": 3, "entries": []}', "missing field 'N'"),
        (doc([], n=0), "n: must be >= 1"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(DocumentError, match=message):
        parse_document(text)


def test_emit_is_canonical(t):
    f = PolyMap.from_entries(3, {(2, 3): t, (1, 2): t * t * Fraction(-1, 3) + 1})
    obj = polymap_to_obj(f)
    assert [(e["row"], e["col"]) for e in obj["entries"]] == [(1, 2), (2, 3)]
    assert obj["entries"][0]["terms"] == [{"coeff": "-1/3", "exps": [2]}, {"coeff": "1", "exps": [0]}]
    with pytest.raises(DocumentError):
        polymap_to_obj(diff_left(f))


def test_round_trip_bit_exact(rng):
    for _ in range(40):
        n = rng.randint(1, 5)
        f = random_polymap(rng, n, N=rng.randint(1, 3), deg=3, nonidentity=n > 1)
        text = emit_polymap(f)
        g = parse_polymap(text)
        assert g == f and emit_polymap(g) == text


@given(st.lists(st.tuples(st.integers(-50, 50), st.integers(1, 20)), min_size=1, max_size=5))
def test_round_trip_coefficients(pairs):
    L = make_layout(("t", 1))
    p = MPoly({(k,): Fraction(a, b) for k, (a, b) in enumerate(pairs)}, L)
    f = PolyMap.from_entries(2, {(1, 2): p})
    assert parse_polymap(emit_polymap(f)) == f


def test_samples(rng):
    g = UniTri(3, {(1, 2): Fraction(1, 2), (1, 3): -4})
    text = json.dumps(samples_to_obj([(0, g), (5, g)]))
    assert parse_samples(text) == [(0, g), (5, g)]
    bad = json.dumps({"samples": [{"t": 0, "matrix": [["1", "1"], ["1", "1"]]}]})
    with pytest.raises(DocumentError, match="samples\\[0\\].matrix"):
        parse_samples(bad)
    with pytest.raises(DocumentError):
        parse_samples('{"samples": [{"t": -1, "matrix": [["1"]]}]}')
