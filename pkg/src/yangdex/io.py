"""JSON interchange for complexes, involutions, coordinates and auxiliary inputs.

A complex file looks like::

    {"name": "oct",
     "facets": [["+e1", "+e2", "+e3"], ...],
     "involution": {"+e1": "-e1", ...},          # optional
     "coordinates": {"+e1": ["1", "0", "0"], ...}}  # optional, rationals as strings

Serialization is canonical (natural vertex order, sorted facets) so that
writing a parsed file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from .complex import (
    EquivariantComplex,
    FreeInvolution,
    SimplicialComplex,
    check_free_involution,
    natural_key,
    validate_complex,
)
from .errors import ParseError, YangdexError


@dataclass(frozen=True, eq=False)
class ComplexFile:
    name: str
    complex: SimplicialComplex
    involution: Optional[FreeInvolution] = None
    coordinates: Optional[dict[str, tuple[Fraction, ...]]] = None

    @property
    def equivariant(self) -> EquivariantComplex:
        if self.involution is None:
            raise ParseError("file has no involution", path=self.name)
        return EquivariantComplex(self.complex, self.involution, self.coordinates)


def _locate(text: str, token: Any) -> Optional[int]:
    """Line number of the first occurrence of ``token`` in the raw text."""
    pos = text.find(json.dumps(token))
    if pos < 0 and isinstance(token, str):
        pos = text.find(token)
    return None if pos < 0 else text.count("\n", 0, pos) + 1


def _load_json(source: Union[str, Path], text: Optional[str] = None):
    path = str(source)
    if text is None:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read file: {exc.strerror}", path=path) from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        line_text = lines[exc.lineno - 1] if exc.lineno <= len(lines) else ""
        token = line_text[exc.colno - 1:exc.colno + 9].strip() or None
        raise ParseError(exc.msg, path=path, line=exc.lineno, token=token) from None


def parse_rational(x, path=None, text="") -> Fraction:
    if isinstance(x, bool):
        raise ParseError("boolean is not a rational", path=path, line=_locate(text, x), token=x)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError("expected a rational like \"p/q\"", path=path, line=_locate(text, x), token=x)


def _fail(msg, path, text, token):
    raise ParseError(msg, path=path, line=_locate(text, token), token=token)


def parse_complex(data: Any, path: str = "<input>", text: str = "") -> ComplexFile:
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", path=path, line=1)
    facets = data.get("facets")
    if not isinstance(facets, list):
        raise ParseError("missing list 'facets'", path=path, line=_locate(text, "facets"))
    for f in facets:
        if not isinstance(f, list) or not f:
            _fail("facet must be a nonempty list of vertex names", path, text, f)
        for v in f:
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                _fail("vertex name must be a string or integer", path, text, v)
    name = data.get("name", Path(path).stem if path else "")
    if not isinstance(name, str):
        _fail("'name' must be a string", path, text, name)
    try:
        K = validate_complex(facets, name)
    except YangdexError as exc:
        raise ParseError(str(exc), path=path) from None

    involution = None
    if data.get("involution") is not None:
        inv = data["involution"]
        if not isinstance(inv, dict):
            _fail("'involution' must map vertex names to vertex names", path, text, "involution")
        for k, v in inv.items():
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                _fail("involution image must be a vertex name", path, text, v)
        involution = check_free_involution(K, inv)

    coords = None
    if data.get("coordinates") is not None:
        raw = data["coordinates"]
        if not isinstance(raw, dict):
            _fail("'coordinates' must map vertex names to lists", path, text, "coordinates")
        coords = {}
        for k, p in raw.items():
            if not isinstance(p, list):
                _fail("coordinate must be a list of rationals", path, text, k)
            coords[str(k)] = tuple(parse_rational(x, path, text) for x in p)
        if len({len(p) for p in coords.values()}) > 1:
            _fail("coordinates of different dimension", path, text, "coordinates")
    return ComplexFile(name, K, involution, coords)


def load_complex(source: Union[str, Path]) -> ComplexFile:
    data, text = _load_json(source)
    return parse_complex(data, str(source), text)


def load_json(source: Union[str, Path]):
    """Raw JSON plus its text (for located errors in auxiliary files)."""
    return _load_json(source)


def _rational_str(x: Fraction) -> str:
    return str(Fraction(x))


def complex_to_dict(K: SimplicialComplex, involution: Optional[FreeInvolution] = None,
                    coordinates=None, name: Optional[str] = None) -> dict:
    out: dict[str, Any] = {"name": K.name if name is None else name,
                           "facets": K.facet_names()}
    if involution is not None:
        out["involution"] = {v: involution(v) for v in K.vertices}
    if coordinates is not None:
        out["coordinates"] = {v: [_rational_str(x) for x in coordinates[v]]
                              for v in sorted(coordinates, key=natural_key)}
    return out


def equivariant_to_dict(E: EquivariantComplex) -> dict:
    return complex_to_dict(E.complex, E.involution, E.coordinates)


def dumps(obj: Any) -> str:
    """Canonical JSON text with a trailing newline."""
    return json.dumps(obj, indent=1, default=_default) + "\n"


def _default(x):
    if isinstance(x, Fraction):
        return _rational_str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")
