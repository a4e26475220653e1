"""JSON documents for rings, matrices, words, covers and certificates.

Ring elements are written as strings in the ring's own grammar
(``"3*x^2 - 1"``, ``"5 / a^2"``) and parsed back with :meth:`Ring.parse`.
Field order is fixed so equal objects give byte-identical documents.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .certificates import Certificate, Check
from .errors import SchemaError, SizeLimitExceeded
from .forms import AlternatingForm, form_decompose, standard_form
from .localglobal import CoverSpec
from .matrix import MAX_SIZE, Matrix, psi
from .rings import QQ, ZZ, IntegersMod, PolynomialRing, Ring, RingElement, ring_from_json
from .words import (
    Alpha,
    Atom,
    Beta,
    ColBlock,
    Conjugated,
    Elem,
    GeneratorWord,
    IdealSpec,
    Inverse,
    RowBlock,
    SymplElem,
)


def _need(doc: dict, *keys: str) -> list:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected an object, got {type(doc).__name__}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise SchemaError(f"missing field(s) {missing}")
    return [doc[k] for k in keys]


def _parse_elem(ring: Ring, value) -> RingElement:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(f"ring elements are written as strings or integers, got {value!r}")
    return ring(value)


# -- rings, elements, matrices -------------------------------------------------


def ring_to_json(ring: Ring) -> dict:
    return ring.to_json()


_RING_NAME = re.compile(r"\s*(ZZ|QQ|Z|Q)(?:\s*/\s*(\d+))?\s*(?:\[([^\]]*)\])?\s*\Z")


def parse_ring_name(text: str) -> Ring:
    """Shorthand ring names: ``ZZ``, ``QQ``, ``ZZ/7``, ``ZZ[x,y]``, ``ZZ/49[t]``."""
    m = _RING_NAME.match(text)
    if not m:
        raise SchemaError(f"cannot read ring name {text!r}")
    head, modulus, variables = m.groups()
    if modulus is not None:
        if head not in ("ZZ", "Z"):
            raise SchemaError("only ZZ/m quotients are supported")
        ring: Ring = IntegersMod(int(modulus))
    else:
        ring = ZZ if head in ("ZZ", "Z") else QQ
    if variables is not None:
        names = [v.strip() for v in variables.split(",") if v.strip()]
        ring = PolynomialRing(ring, names)
    return ring


def ring_of(doc) -> Ring:
    """A ring from its JSON descriptor or a shorthand name."""
    try:
        if isinstance(doc, str):
            return parse_ring_name(doc)
        return ring_from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad ring descriptor {doc!r}: {exc}") from exc


def element_to_json(x: RingElement) -> str:
    return str(x)


def matrix_to_json(m: Matrix, *, with_ring: bool = True) -> dict:
    doc: dict[str, Any] = {}
    if with_ring:
        doc["ring"] = m.ring.to_json()
    doc.update(rows=m.nrows, cols=m.ncols, entries=m.to_strings())
    return doc


def matrix_from_json(doc: dict, ring: Ring | None = None) -> Matrix:
    if ring is None:
        (rd,) = _need(doc, "ring")
        ring = ring_of(rd)
    (entries,) = _need(doc, "entries")
    if not isinstance(entries, list) or not entries or not all(isinstance(r, list) for r in entries):
        raise SchemaError("entries must be a non-empty list of rows")
    nrows, ncols = doc.get("rows", len(entries)), doc.get("cols", len(entries[0]))
    if nrows != len(entries) or any(len(r) != ncols for r in entries):
        raise SchemaError("rows/cols do not match the entries")
    if nrows > MAX_SIZE or ncols > MAX_SIZE:
        raise SizeLimitExceeded(f"matrix {nrows}x{ncols} exceeds the size guard {MAX_SIZE}")
    return Matrix(ring, [[_parse_elem(ring, v).value for v in row] for row in entries])


def _vector_to_json(v: Matrix) -> list[str]:
    return v.to_strings()[0]


def _vector_from_json(ring: Ring, values) -> Matrix:
    if not isinstance(values, list) or not values:
        raise SchemaError("vector must be a non-empty list")
    return Matrix(ring, [[_parse_elem(ring, x).value for x in values]])


# -- words -------------------------------------------------------------------


class _FormCache:
    """Decode each distinct alpha/beta form once."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.cache: dict[tuple, AlternatingForm] = {}

    def get(self, entries) -> AlternatingForm:
        key = tuple(tuple(r) for r in entries)
        if key not in self.cache:
            m = matrix_from_json({"entries": entries}, self.ring)
            n = m.nrows // 2
            if m.is_square and m.nrows % 2 == 0 and m == psi(self.ring, n):
                self.cache[key] = standard_form(self.ring, n)
            else:
                self.cache[key] = form_decompose(m)
        return self.cache[key]


def atom_to_json(atom: Atom) -> dict:
    if isinstance(atom, Elem):
        return {"kind": "elem", "i": atom.i, "j": atom.j, "value": str(atom.value)}
    if isinstance(atom, SymplElem):
        return {"kind": "se", "i": atom.i, "j": atom.j, "value": str(atom.value)}
    if isinstance(atom, RowBlock):
        return {"kind": "row", "vector": _vector_to_json(atom.vector)}
    if isinstance(atom, ColBlock):
        return {"kind": "col", "vector": _vector_to_json(atom.vector)}
    if isinstance(atom, (Alpha, Beta)):
        return {
            "kind": "alpha" if isinstance(atom, Alpha) else "beta",
            "form": atom.form.phi.to_strings(),
            "vector": _vector_to_json(atom.vector),
        }
    if isinstance(atom, Conjugated):
        return {"kind": "conj", "outer": [atom_to_json(a) for a in atom.outer.atoms], "inner": atom_to_json(atom.inner)}
    if isinstance(atom, Inverse):
        return {"kind": "inv", "atom": atom_to_json(atom.atom)}
    raise SchemaError(f"cannot serialize atom {atom!r}")


def atom_from_json(doc: dict, size: int, ring: Ring, forms: _FormCache | None = None) -> Atom:
    forms = forms or _FormCache(ring)
    (kind,) = _need(doc, "kind")
    if kind in ("elem", "se"):
        i, j, value = _need(doc, "i", "j", "value")
        if not isinstance(i, int) or not isinstance(j, int):
            raise SchemaError("indices must be integers")
        cls = Elem if kind == "elem" else SymplElem
        return cls(i, j, _parse_elem(ring, value))
    if kind in ("row", "col"):
        (vec,) = _need(doc, "vector")
        return (RowBlock if kind == "row" else ColBlock)(_vector_from_json(ring, vec))
    if kind in ("alpha", "beta"):
        form, vec = _need(doc, "form", "vector")
        return (Alpha if kind == "alpha" else Beta)(forms.get(form), _vector_from_json(ring, vec))
    if kind == "conj":
        outer, inner = _need(doc, "outer", "inner")
        if not isinstance(outer, list):
            raise SchemaError("outer must be a list of atoms")
        outer_word = GeneratorWord(size, ring, [atom_from_json(a, size, ring, forms) for a in outer])
        return Conjugated(outer_word, atom_from_json(inner, size, ring, forms))
    if kind == "inv":
        (inner,) = _need(doc, "atom")
        return Inverse(atom_from_json(inner, size, ring, forms))
    raise SchemaError(f"unknown atom kind {kind!r}")


def word_to_json(w: GeneratorWord) -> dict:
    return {"size": w.size, "ring": w.ring.to_json(), "atoms": [atom_to_json(a) for a in w.atoms]}


def word_from_json(doc: dict, ring: Ring | None = None) -> GeneratorWord:
    size, atoms = _need(doc, "size", "atoms")
    if ring is None or "ring" in doc:
        (rd,) = _need(doc, "ring")
        ring = ring_of(rd)
    if not isinstance(size, int) or size < 1:
        raise SchemaError("size must be a positive integer")
    if size > MAX_SIZE:
        raise SizeLimitExceeded(f"word size {size} exceeds the size guard {MAX_SIZE}")
    if not isinstance(atoms, list):
        raise SchemaError("atoms must be a list")
    forms = _FormCache(ring)
    return GeneratorWord(size, ring, [atom_from_json(a, size, ring, forms) for a in atoms])


# -- covers, ideals ------------------------------------------------------------


def cover_to_json(cover: CoverSpec) -> dict:
    return {
        "ring": cover.ring.to_json(),
        "elements": [str(a) for a in cover.elements],
        "coefficients": [str(c) for c in cover.coefficients],
        "exponent": cover.exponent,
    }


def cover_from_json(doc: dict, ring: Ring | None = None) -> CoverSpec:
    elements, coefficients = _need(doc, "elements", "coefficients")
    if "ring" in doc:
        ring = ring_of(doc["ring"])
    if ring is None:
        raise SchemaError("cover needs a ring")
    exponent = doc.get("exponent", 1)
    if not isinstance(exponent, int) or exponent < 1:
        raise SchemaError("exponent must be a positive integer")
    return CoverSpec.build(ring, [_parse_elem(ring, a) for a in elements], [_parse_elem(ring, c) for c in coefficients], exponent)


def ideal_to_json(ideal: IdealSpec) -> dict:
    return {"ring": ideal.ring.to_json(), "generators": [str(g) for g in ideal.generators]}


def ideal_from_json(doc: dict) -> IdealSpec:
    rd, gens = _need(doc, "ring", "generators")
    ring = ring_of(rd)
    return IdealSpec(ring, [_parse_elem(ring, g) for g in gens])


# -- tagged values and certificates -------------------------------------------------


def value_to_json(value) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Matrix):
        return {"type": "matrix", **matrix_to_json(value)}
    if isinstance(value, AlternatingForm):
        return {"type": "matrix", **matrix_to_json(value.phi)}
    if isinstance(value, GeneratorWord):
        return {"type": "word", **word_to_json(value)}
    if isinstance(value, RingElement):
        return {"type": "element", "ring": value.ring.to_json(), "value": str(value)}
    if isinstance(value, CoverSpec):
        return {"type": "cover", **cover_to_json(value)}
    if isinstance(value, IdealSpec):
        return {"type": "ideal", **ideal_to_json(value)}
    if isinstance(value, (list, tuple)):
        return [value_to_json(v) for v in value]
    raise SchemaError(f"cannot serialize {type(value).__name__}")


def value_from_json(doc) -> Any:
    if isinstance(doc, list):
        return [value_from_json(v) for v in doc]
    if not isinstance(doc, dict):
        return doc
    kind = doc.get("type")
    if kind == "matrix":
        return matrix_from_json(doc)
    if kind == "word":
        return word_from_json(doc)
    if kind == "element":
        rd, value = _need(doc, "ring", "value")
        return _parse_elem(ring_of(rd), value)
    if kind == "cover":
        return cover_from_json(doc)
    if kind == "ideal":
        return ideal_from_json(doc)
    raise SchemaError(f"unknown value type {kind!r}")


def _render(side) -> Any:
    if side is None:
        return None
    if isinstance(side, Matrix):
        return side.to_strings()
    return str(side)


def certificate_to_json(cert: Certificate) -> dict:
    return {
        "claim": cert.claim,
        "verdict": cert.verdict,
        "inputs": {k: value_to_json(v) for k, v in cert.inputs.items()},
        "witnesses": {k: value_to_json(v) for k, v in cert.witnesses.items()},
        "transcript": [
            {"check": c.name, "holds": c.holds, "lhs": _render(c.lhs), "rhs": _render(c.rhs), "note": c.note}
            for c in cert.transcript
        ],
    }


def certificate_from_json(doc: dict) -> Certificate:
    claim, verdict, inputs, witnesses = _need(doc, "claim", "verdict", "inputs", "witnesses")
    if not isinstance(inputs, dict) or not isinstance(witnesses, dict):
        raise SchemaError("inputs and witnesses must be objects")
    transcript = [
        Check(c.get("check", ""), bool(c.get("holds")), c.get("lhs"), c.get("rhs"), c.get("note", ""))
        for c in doc.get("transcript", [])
    ]
    return Certificate(
        claim,
        {k: value_from_json(v) for k, v in inputs.items()},
        {k: value_from_json(v) for k, v in witnesses.items()},
        transcript,
        verdict,
    )


def dumps(doc, *, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, indent=2, ensure_ascii=False)
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


__all__ = [
    "atom_from_json",
    "atom_to_json",
    "certificate_from_json",
    "certificate_to_json",
    "cover_from_json",
    "cover_to_json",
    "dumps",
    "ideal_from_json",
    "loads",
    "matrix_from_json",
    "matrix_to_json",
    "parse_ring_name",
    "ring_of",
    "value_from_json",
    "value_to_json",
    "word_from_json",
    "word_to_json",
]
