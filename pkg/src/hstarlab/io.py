"""Reading and writing polytope files.

Text format::

    # comments run to end of line
    dim 2
    lattice          # optional: rational rows added to Z^d
    1/2 1/2
    vertices
    0 0
    3 0
    0 3

Vertices are written in ambient coordinates.  Two optional sections cover
lattices that do not contain ``Z^d``: ``origin`` (one row) and ``basis``
(rows replacing the standard basis before ``lattice`` rows are added).

The JSON form carries the same fields: ``dim``, ``lattice_generators``,
``vertices`` and optionally ``origin`` and ``basis``.  Rationals are
written as integers or ``"p/q"`` strings.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .linalg import AffineLattice, identity, lattice_from_generators, rebase
from .polytope import LatticePolytope

SECTIONS = ("lattice", "vertices", "origin", "basis")


class PolytopeFormatError(ValueError):
    pass


def _number(tok: str, where: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise PolytopeFormatError(f"{where}: not a rational number: {tok!r}") from None


def _build(dim, vertices, generators=(), origin=None, basis=None) -> LatticePolytope:
    if not isinstance(dim, int) or dim < 0:
        raise PolytopeFormatError(f"bad dimension {dim!r}")
    rows = [*vertices, *generators, *(basis or ()), *([origin] if origin is not None else [])]
    for row in rows:
        if len(row) != dim:
            raise PolytopeFormatError(f"row {list(map(str, row))} does not have {dim} entries")
    if not vertices:
        raise PolytopeFormatError("no vertices")
    if not generators and basis is None and origin is None:
        if any(x.denominator != 1 for v in vertices for x in v):
            raise PolytopeFormatError("fractional vertex over the standard lattice")
        return LatticePolytope(tuple(tuple(int(x) for x in v) for v in vertices))
    gens = [list(r) for r in (basis if basis is not None else identity(dim))] + [list(g) for g in generators]
    lattice = lattice_from_generators(origin if origin is not None else [0] * dim, gens)
    if lattice.rank != dim:
        raise PolytopeFormatError(f"lattice has rank {lattice.rank}, expected {dim}")
    try:
        coords = rebase(vertices, lattice)
    except ValueError as exc:
        raise PolytopeFormatError(f"vertex {exc} is not in the lattice") from None
    return LatticePolytope(tuple(coords), lattice)


def parse_text(text: str) -> LatticePolytope:
    dim = None
    section = None
    data: dict[str, list] = {name: [] for name in SECTIONS}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        where = f"line {lineno}"
        if toks[0] == "dim":
            if len(toks) != 2 or not toks[1].lstrip("-").isdigit():
                raise PolytopeFormatError(f"{where}: expected 'dim <d>'")
            dim = int(toks[1])
            section = None
            continue
        if toks[0] in SECTIONS and len(toks) == 1:
            if toks[0] in seen:
                raise PolytopeFormatError(f"{where}: repeated section {toks[0]}")
            seen.add(toks[0])
            section = toks[0]
            continue
        if section is None:
            raise PolytopeFormatError(f"{where}: data outside a section: {line!r}")
        data[section].append(tuple(_number(t, where) for t in toks))
    if dim is None:
        raise PolytopeFormatError("missing 'dim' line")
    if "vertices" not in seen:
        raise PolytopeFormatError("missing 'vertices' section")
    if len(data["origin"]) > 1:
        raise PolytopeFormatError("origin takes a single row")
    origin = data["origin"][0] if data["origin"] else None
    basis = data["basis"] if "basis" in seen else None
    if dim == 0:
        data["vertices"] = [() for _ in data["vertices"]] or [()]
    return _build(dim, data["vertices"], data["lattice"], origin, basis)


def parse_json(text: str) -> LatticePolytope:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolytopeFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "dim" not in obj or "vertices" not in obj:
        raise PolytopeFormatError("JSON polytope needs 'dim' and 'vertices'")

    def rows(key):
        value = obj.get(key)
        if value is None:
            return None
        if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
            raise PolytopeFormatError(f"'{key}' must be a list of rows")
        return [tuple(_number(str(x), key) for x in r) for r in value]

    origin = obj.get("origin")
    if origin is not None:
        origin = tuple(_number(str(x), "origin") for x in origin)
    return _build(obj["dim"], rows("vertices"), rows("lattice_generators") or (), origin, rows("basis"))


def _lattice_fields(lattice: AffineLattice | None, dim: int):
    """``(origin, basis, generators)`` to write; ``None`` means omit."""
    if lattice is None:
        return None, None, []
    units = identity(dim)
    if all(x == 0 for x in lattice.base_point) and all(u in lattice for u in units):
        extra = [row for row in lattice.basis if list(row) not in units]
        return None, None, [list(r) for r in extra]
    return list(lattice.base_point), [list(r) for r in lattice.basis], []


def ambient_vertices(p: LatticePolytope) -> list[tuple[Fraction, ...]]:
    if p.refinement is None:
        return [tuple(Fraction(x) for x in v) for v in p.vertices]
    return [p.refinement.point(v) for v in p.vertices]


def _fmt(x) -> str:
    return str(Fraction(x))


def to_text(p: LatticePolytope) -> str:
    d = p.ambient_dim
    origin, basis, gens = _lattice_fields(p.refinement, d)
    out = [f"dim {d}"]
    if origin is not None:
        out += ["origin", " ".join(map(_fmt, origin))]
    if basis is not None:
        out += ["basis"] + [" ".join(map(_fmt, r)) for r in basis]
    if gens:
        out += ["lattice"] + [" ".join(map(_fmt, r)) for r in gens]
    out.append("vertices")
    out += [" ".join(map(_fmt, v)) for v in ambient_vertices(p)]
    return "\n".join(out) + "\n"


def _jnum(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def to_json(p: LatticePolytope) -> str:
    d = p.ambient_dim
    origin, basis, gens = _lattice_fields(p.refinement, d)
    obj = {"dim": d}
    if origin is not None:
        obj["origin"] = [_jnum(x) for x in origin]
        obj["basis"] = [[_jnum(x) for x in r] for r in basis]
    obj["lattice_generators"] = [[_jnum(x) for x in r] for r in gens]
    obj["vertices"] = [[_jnum(x) for x in v] for v in ambient_vertices(p)]
    return json.dumps(obj) + "\n"


def is_json_path(path) -> bool:
    return str(path).endswith(".json")


def loads(text: str, json_format: bool | None = None) -> LatticePolytope:
    if json_format is None:
        json_format = text.lstrip().startswith("{")
    return parse_json(text) if json_format else parse_text(text)


def dumps(p: LatticePolytope, json_format: bool = False) -> str:
    return to_json(p) if json_format else to_text(p)


def load(path) -> LatticePolytope:
    return loads(Path(path).read_text(), is_json_path(path) or None)


def save(p: LatticePolytope, path) -> None:
    Path(path).write_text(dumps(p, is_json_path(path)))


def same_polytope(a: LatticePolytope, b: LatticePolytope) -> bool:
    """Equal vertex lists and equal lattices (``None`` means ``Z^d``)."""
    return a.vertices == b.vertices and a.refinement == b.refinement
