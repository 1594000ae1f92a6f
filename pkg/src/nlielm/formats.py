"""JSON files for algebras, representations, cochains, extensions and deformations.

Every file is one JSON object with ``schema_version``, ``kind`` and the
fields of that kind.  Rationals are strings ``"p/q"`` (integers may also be
plain JSON numbers), indices are 1-based, and wedge arguments are listed in
strictly increasing order.  Only nonzero structure constants are listed.
See ``docs/formats.md`` for one complete example per kind.

Parsing checks shapes (dimensions, index ranges, duplicates) but never the
algebraic axioms; use the validators for that.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

from .exactlinalg import Matrix, format_rational, q
from .extensions import AbelianExtension, Section
from .deformations import DeformationTriple, FormalDeformation, NijenhuisPair
from .lm_cohomology import LMCochain, lm_cochain_spaces_for_dims
from .lm_core import LMAlgebra
from .lm_representations import LMRepresentation
from .multilinear import BlockCochain, CochainSpace, SkewTensor, Sparse
from .nlie_core import LeibnizNAlgebra, NLieAlgebra
from .representations import Representation

__all__ = [
    "FormatError",
    "JSONSyntaxError",
    "KINDS",
    "SCHEMA_VERSION",
    "ShapeError",
    "UnknownKindError",
    "dump",
    "dumps",
    "kind_of",
    "parse",
    "parse_text",
    "to_json_obj",
]

SCHEMA_VERSION = 1
KINDS = ("nlie", "leibniz_n", "representation", "lm", "lm_rep", "extension",
         "section", "cochain", "deformation", "nijenhuis")


class FormatError(ValueError):
    """Any problem reading a file; ``path`` is the JSON path of the offending value."""

    def __init__(self, message: str, path: str = "$"):
        self.path = path
        super().__init__(f"{path}: {message}")


class JSONSyntaxError(FormatError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        ValueError.__init__(self, f"line {line}, column {column}: {message}")
        self.path = "$"


class ShapeError(FormatError):
    pass


class UnknownKindError(FormatError):
    pass


# -- reading helpers -----------------------------------------------------------

def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _field(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise ShapeError("expected an object", path)
    if key not in obj:
        raise ShapeError(f"missing field {key!r}", path)
    return obj[key]


def _list(v: Any, path: str) -> list:
    if not isinstance(v, list):
        raise ShapeError("expected a list", path)
    return v


def _int(v: Any, path: str, lo: int = 0) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ShapeError("expected an integer", path)
    if v < lo:
        raise ShapeError(f"expected an integer >= {lo}", path)
    return v


def _rat(v: Any, path: str):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ShapeError("expected a rational as a string 'p/q' or an integer", path)
    try:
        return q(v)
    except ValueError as exc:
        raise ShapeError(str(exc), path) from None


def _index(v: Any, dim: int, path: str) -> int:
    i = _int(v, path, 1)
    if i > dim:
        raise ShapeError(f"index {i} out of range 1..{dim}", path)
    return i - 1


def _tuple(v: Any, arity: int, dim: int, path: str, wedge: bool) -> Tuple[int, ...]:
    items = _list(v, path)
    if len(items) != arity:
        raise ShapeError(f"expected {arity} indices, got {len(items)}", path)
    out = tuple(_index(x, dim, f"{path}[{k}]") for k, x in enumerate(items))
    if wedge and any(out[k] >= out[k + 1] for k in range(len(out) - 1)):
        raise ShapeError(f"wedge arguments must be strictly increasing, got {items}", path)
    return out


def _sparse(v: Any, dim: int, path: str) -> Sparse:
    if not isinstance(v, dict):
        raise ShapeError("expected an object mapping 1-based indices to rationals", path)
    out: Sparse = {}
    for k, x in v.items():
        try:
            i = int(k)
        except ValueError:
            raise ShapeError(f"bad index key {k!r}", path) from None
        i = _index(i, dim, f"{path}.{k}")
        c = _rat(x, f"{path}.{k}")
        if c != 0:
            out[i] = c
    return out


def _matrix(v: Any, rows: int, cols: int, path: str) -> Matrix:
    items = _list(v, path)
    if len(items) != rows:
        raise ShapeError(f"expected {rows} rows, got {len(items)}", path)
    data = []
    for i, row in enumerate(items):
        row = _list(row, f"{path}[{i}]")
        if len(row) != cols:
            raise ShapeError(f"expected {cols} columns, got {len(row)}", f"{path}[{i}]")
        data.append([_rat(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix.from_rows(data, cols)


def _str(v: Any, path: str) -> str:
    if not isinstance(v, str):
        raise ShapeError("expected a string", path)
    return v


# -- writing helpers -----------------------------------------------------------

def _w_sparse(vec: Sparse) -> Dict[str, str]:
    return {str(i + 1): format_rational(vec[i]) for i in sorted(vec)}


def _w_matrix(m: Matrix) -> List[List[str]]:
    return [[format_rational(x) for x in row] for row in m.to_lists()]


def _w_tuple(t: Sequence[int]) -> List[int]:
    return [i + 1 for i in t]


# -- per-kind codecs -----------------------------------------------------------

def _r_nlie(obj, path) -> NLieAlgebra:
    n = _int(_field(obj, "n", path), f"{path}.n", 2)
    dim = _int(_field(obj, "dim", path), f"{path}.dim")
    name = _str(obj.get("name", ""), f"{path}.name")
    table: Dict[Tuple[int, ...], Sparse] = {}
    for k, e in enumerate(_list(_field(obj, "brackets", path), f"{path}.brackets")):
        p = f"{path}.brackets[{k}]"
        key = _tuple(_field(e, "args", p), n, dim, f"{p}.args", wedge=True)
        if key in table:
            raise ShapeError(f"duplicate bracket key {_w_tuple(key)}", p)
        table[key] = _sparse(_field(e, "value", p), dim, f"{p}.value")
    return NLieAlgebra(n, dim, table, name)


def _w_nlie(g: NLieAlgebra) -> Dict[str, Any]:
    return {
        "n": g.n,
        "dim": g.dim,
        "name": g.name,
        "brackets": [{"args": _w_tuple(k), "value": _w_sparse(v)} for k, v in sorted(g.structure.items())],
    }


def _r_leibniz(obj, path) -> LeibnizNAlgebra:
    n = _int(_field(obj, "n", path), f"{path}.n", 1)
    dim = _int(_field(obj, "dim", path), f"{path}.dim")
    name = _str(obj.get("name", ""), f"{path}.name")
    table: Dict[Tuple[int, ...], Sparse] = {}
    for k, e in enumerate(_list(_field(obj, "brackets", path), f"{path}.brackets")):
        p = f"{path}.brackets[{k}]"
        key = _tuple(_field(e, "args", p), n, dim, f"{p}.args", wedge=False)
        if key in table:
            raise ShapeError(f"duplicate bracket key {_w_tuple(key)}", p)
        table[key] = _sparse(_field(e, "value", p), dim, f"{p}.value")
    return LeibnizNAlgebra(n, dim, table, name)


def _w_leibniz(h: LeibnizNAlgebra) -> Dict[str, Any]:
    return {
        "n": h.n,
        "dim": h.dim,
        "name": h.name,
        "brackets": [{"args": _w_tuple(k), "value": _w_sparse(v)} for k, v in sorted(h.table.items())],
    }


def _r_action(v, g: NLieAlgebra, dim: int, path: str) -> Dict[Tuple[int, ...], Matrix]:
    out: Dict[Tuple[int, ...], Matrix] = {}
    for k, e in enumerate(_list(v, path)):
        p = f"{path}[{k}]"
        key = _tuple(_field(e, "args", p), g.n - 1, g.dim, f"{p}.args", wedge=True)
        if key in out:
            raise ShapeError(f"duplicate action key {_w_tuple(key)}", p)
        out[key] = _matrix(_field(e, "matrix", p), dim, dim, f"{p}.matrix")
    return out


def _w_action(r: Representation) -> List[Dict[str, Any]]:
    return [{"args": _w_tuple(k), "matrix": _w_matrix(m)} for k, m in sorted(r.rho.items())]


def _r_representation(obj, path) -> Representation:
    g = _r_nlie(_field(obj, "algebra", path), f"{path}.algebra")
    dim = _int(_field(obj, "dim", path), f"{path}.dim")
    act = _r_action(_field(obj, "action", path), g, dim, f"{path}.action")
    return Representation(g, dim, act, _str(obj.get("name", ""), f"{path}.name"))


def _w_representation(r: Representation) -> Dict[str, Any]:
    return {"algebra": _w_nlie(r.algebra), "dim": r.module_dim, "name": r.name, "action": _w_action(r)}


def _r_lm(obj, path) -> LMAlgebra:
    g = _r_nlie(_field(obj, "algebra", path), f"{path}.algebra")
    dm = _int(_field(obj, "module_dim", path), f"{path}.module_dim")
    act = _r_action(_field(obj, "action", path), g, dm, f"{path}.action")
    f = _matrix(_field(obj, "f", path), g.dim, dm, f"{path}.f")
    name = _str(obj.get("name", ""), f"{path}.name")
    return LMAlgebra(Representation(g, dm, act, _str(obj.get("action_name", ""), path)), f, name)


def _w_lm(a: LMAlgebra) -> Dict[str, Any]:
    return {
        "algebra": _w_nlie(a.g),
        "module_dim": a.M_dim,
        "name": a.name,
        "action_name": a.rho.name,
        "action": _w_action(a.rho),
        "f": _w_matrix(a.f),
    }


def _r_lm_rep(obj, path) -> LMRepresentation:
    base = _r_lm(_field(obj, "base", path), f"{path}.base")
    g = base.g
    dv = _int(_field(obj, "V_dim", path), f"{path}.V_dim")
    dw = _int(_field(obj, "W_dim", path), f"{path}.W_dim")
    rho1 = Representation(g, dv, _r_action(_field(obj, "rho1", path), g, dv, f"{path}.rho1"), "rho1")
    rho2 = Representation(g, dw, _r_action(_field(obj, "rho2", path), g, dw, f"{path}.rho2"), "rho2")
    phi = _matrix(_field(obj, "phi", path), dw, dv, f"{path}.phi")
    rho3 = {}
    for k, e in enumerate(_list(_field(obj, "rho3", path), f"{path}.rho3")):
        p = f"{path}.rho3[{k}]"
        x = _tuple(_field(e, "args", p), g.n - 2, g.dim, f"{p}.args", wedge=True)
        m = _index(_field(e, "m", p), base.M_dim, f"{p}.m")
        if (x, m) in rho3:
            raise ShapeError(f"duplicate rho3 key {_w_tuple(x)}, m={m + 1}", p)
        rho3[(x, m)] = _matrix(_field(e, "matrix", p), dv, dw, f"{p}.matrix")
    return LMRepresentation(base, rho1, rho2, phi, rho3, _str(obj.get("name", ""), f"{path}.name"))


def _w_lm_rep(r: LMRepresentation) -> Dict[str, Any]:
    return {
        "base": _w_lm(r.base),
        "V_dim": r.V_dim,
        "W_dim": r.W_dim,
        "name": r.name,
        "rho1": _w_action(r.rho1),
        "rho2": _w_action(r.rho2),
        "phi": _w_matrix(r.phi),
        "rho3": [{"args": _w_tuple(x), "m": m + 1, "matrix": _w_matrix(mat)}
                 for (x, m), mat in sorted(r.rho3_entries.items())],
    }


def _r_extension(obj, path) -> AbelianExtension:
    base = _r_lm(_field(obj, "base", path), f"{path}.base")
    total = _r_lm(_field(obj, "total", path), f"{path}.total")
    dw = _int(_field(obj, "W_dim", path), f"{path}.W_dim")
    dv = _int(_field(obj, "V_dim", path), f"{path}.V_dim")
    G, Mt = total.g.dim, total.M_dim
    return AbelianExtension(
        base, total,
        _matrix(_field(obj, "i0", path), G, dw, f"{path}.i0"),
        _matrix(_field(obj, "i1", path), Mt, dv, f"{path}.i1"),
        _matrix(_field(obj, "p0", path), base.g.dim, G, f"{path}.p0"),
        _matrix(_field(obj, "p1", path), base.M_dim, Mt, f"{path}.p1"),
        _matrix(_field(obj, "phi", path), dw, dv, f"{path}.phi"),
    )


def _w_extension(e: AbelianExtension) -> Dict[str, Any]:
    return {
        "base": _w_lm(e.base),
        "total": _w_lm(e.total),
        "W_dim": e.W_dim,
        "V_dim": e.V_dim,
        "i0": _w_matrix(e.i0),
        "i1": _w_matrix(e.i1),
        "p0": _w_matrix(e.p0),
        "p1": _w_matrix(e.p1),
        "phi": _w_matrix(e.phi),
    }


def _dims(obj, path, names: Sequence[str]) -> List[int]:
    return [_int(_field(obj, nm, path), f"{path}.{nm}") for nm in names]


def _r_section(obj, path) -> Section:
    dg, dm, G, Mt = _dims(obj, path, ("g_dim", "M_dim", "total_g_dim", "total_M_dim"))
    return Section(_matrix(_field(obj, "sigma0", path), G, dg, f"{path}.sigma0"),
                   _matrix(_field(obj, "sigma1", path), Mt, dm, f"{path}.sigma1"))


def _w_section(s: Section) -> Dict[str, Any]:
    return {
        "g_dim": s.sigma0.cols,
        "M_dim": s.sigma1.cols,
        "total_g_dim": s.sigma0.rows,
        "total_M_dim": s.sigma1.rows,
        "sigma0": _w_matrix(s.sigma0),
        "sigma1": _w_matrix(s.sigma1),
    }


def _r_nijenhuis(obj, path) -> NijenhuisPair:
    dg, dm = _dims(obj, path, ("g_dim", "M_dim"))
    return NijenhuisPair(_matrix(_field(obj, "N0", path), dg, dg, f"{path}.N0"),
                         _matrix(_field(obj, "N1", path), dm, dm, f"{path}.N1"))


def _w_nijenhuis(p: NijenhuisPair) -> Dict[str, Any]:
    return {"g_dim": p.N0.rows, "M_dim": p.N1.rows, "N0": _w_matrix(p.N0), "N1": _w_matrix(p.N1)}


def _r_skew(v, arity: int, dim: int, target: int, path: str) -> SkewTensor:
    entries: Dict[Tuple[int, ...], Sparse] = {}
    for k, e in enumerate(_list(v, path)):
        p = f"{path}[{k}]"
        key = _tuple(_field(e, "args", p), arity, dim, f"{p}.args", wedge=True)
        if key in entries:
            raise ShapeError(f"duplicate key {_w_tuple(key)}", p)
        entries[key] = _sparse(_field(e, "value", p), target, f"{p}.value")
    return SkewTensor(arity, dim, target, entries)


def _w_skew(t: SkewTensor) -> List[Dict[str, Any]]:
    return [{"args": _w_tuple(k), "value": _w_sparse(v)} for k, v in sorted(t.entries.items())]


def _r_block(v, space: CochainSpace, path: str) -> BlockCochain:
    """Entries ``{"blocks": [[..], ..], "trailing": [..], "value": {..}}``."""
    values = [0] * space.size
    seen = set()
    for k, e in enumerate(_list(v, path)):
        p = f"{path}[{k}]"
        blocks = _list(_field(e, "blocks", p), f"{p}.blocks")
        if len(blocks) != space.blocks:
            raise ShapeError(f"expected {space.blocks} blocks, got {len(blocks)}", f"{p}.blocks")
        bl = tuple(_tuple(b, space.block_arity, space.dim, f"{p}.blocks[{j}]", wedge=True)
                   for j, b in enumerate(blocks))
        trailing = _list(_field(e, "trailing", p), f"{p}.trailing")
        if len(trailing) != len(space.trailing):
            raise ShapeError(f"expected {len(space.trailing)} trailing indices", f"{p}.trailing")
        tr = tuple(_index(t, d, f"{p}.trailing[{j}]") for j, (t, d) in enumerate(zip(trailing, space.trailing)))
        if (bl, tr) in seen:
            raise ShapeError("duplicate cochain argument", p)
        seen.add((bl, tr))
        _, base = space.locate(bl, tr)
        for i, c in _sparse(_field(e, "value", p), space.target_dim, f"{p}.value").items():
            values[base + i] = c
    return BlockCochain(space, values)


def _w_block(c: BlockCochain) -> List[Dict[str, Any]]:
    out = []
    for bl, tr in c.space.argument_tuples():
        vec = c.evaluate_sparse(bl, tr)
        if vec:
            out.append({"blocks": [_w_tuple(b) for b in bl], "trailing": _w_tuple(tr), "value": _w_sparse(vec)})
    return out


def _r_cochain(obj, path):
    complex_ = _str(_field(obj, "complex", path), f"{path}.complex")
    n = _int(_field(obj, "n", path), f"{path}.n", 2)
    if complex_ == "nlie":
        dg, dv = _dims(obj, path, ("g_dim", "V_dim"))
        return _r_skew(_field(obj, "omega", path), n, dg, dv, f"{path}.omega")
    if complex_ != "lm":
        raise ShapeError(f"unknown complex {complex_!r}; expected 'nlie' or 'lm'", f"{path}.complex")
    dg, dm, dv, dw = _dims(obj, path, ("g_dim", "M_dim", "V_dim", "W_dim"))
    degree = _int(_field(obj, "degree", path), f"{path}.degree", 1)
    so, sn, st = lm_cochain_spaces_for_dims(n, dg, dm, dv, dw, degree)
    om = _r_block(_field(obj, "omega", path), so, f"{path}.omega")
    nu = _r_block(_field(obj, "nu", path), sn, f"{path}.nu")
    th = _r_block(_field(obj, "theta", path), st, f"{path}.theta") if st is not None else None
    return LMCochain(degree, om, nu, th)


def _w_cochain(c) -> Dict[str, Any]:
    if isinstance(c, SkewTensor):
        return {"complex": "nlie", "n": c.arity, "g_dim": c.dim, "V_dim": c.target_dim, "omega": _w_skew(c)}
    so, sn = c.omega.space, c.nu.space
    n = so.block_arity if c.degree == 2 else so.block_arity + 1
    out = {
        "complex": "lm", "n": n, "degree": c.degree,
        "g_dim": so.dim, "M_dim": sn.trailing[0], "V_dim": sn.target_dim, "W_dim": so.target_dim,
        "omega": _w_block(c.omega), "nu": _w_block(c.nu),
    }
    if c.theta is not None:
        out["theta"] = _w_block(c.theta)
    return out


def _r_deformation(obj, path) -> FormalDeformation:
    n = _int(_field(obj, "n", path), f"{path}.n")
    if n != 3:
        raise ShapeError("deformations are defined for arity 3", f"{path}.n")
    dg, dm = _dims(obj, path, ("g_dim", "M_dim"))
    order = _int(_field(obj, "order", path), f"{path}.order")
    terms = _list(_field(obj, "terms", path), f"{path}.terms")
    if len(terms) != order:
        raise ShapeError(f"order {order} but {len(terms)} terms", f"{path}.terms")
    space = CochainSpace(dg, 2, 1, (dm,), dm)
    out = []
    for k, t in enumerate(terms):
        p = f"{path}.terms[{k}]"
        out.append(DeformationTriple(
            _matrix(_field(t, "theta", p), dg, dm, f"{p}.theta"),
            _r_skew(_field(t, "omega", p), 3, dg, dg, f"{p}.omega"),
            _r_block(_field(t, "nu", p), space, f"{p}.nu"),
        ))
    return FormalDeformation(out)


def _w_deformation(d: FormalDeformation) -> Dict[str, Any]:
    if not d.terms:
        raise ValueError("cannot infer dimensions of an empty deformation")
    t0 = d.terms[0]
    return {
        "n": 3, "g_dim": t0.omega.dim, "M_dim": t0.theta.cols, "order": d.order,
        "terms": [{"theta": _w_matrix(t.theta), "omega": _w_skew(t.omega), "nu": _w_block(t.nu)} for t in d.terms],
    }


_READERS = {
    "nlie": _r_nlie,
    "leibniz_n": _r_leibniz,
    "representation": _r_representation,
    "lm": _r_lm,
    "lm_rep": _r_lm_rep,
    "extension": _r_extension,
    "section": _r_section,
    "cochain": _r_cochain,
    "deformation": _r_deformation,
    "nijenhuis": _r_nijenhuis,
}


def kind_of(value) -> str:
    if isinstance(value, NLieAlgebra):
        return "nlie"
    if isinstance(value, LeibnizNAlgebra):
        return "leibniz_n"
    if isinstance(value, Representation):
        return "representation"
    if isinstance(value, LMAlgebra):
        return "lm"
    if isinstance(value, LMRepresentation):
        return "lm_rep"
    if isinstance(value, AbelianExtension):
        return "extension"
    if isinstance(value, Section):
        return "section"
    if isinstance(value, (LMCochain, SkewTensor)):
        return "cochain"
    if isinstance(value, (FormalDeformation, DeformationTriple)):
        return "deformation"
    if isinstance(value, NijenhuisPair):
        return "nijenhuis"
    raise TypeError(f"no file format for {type(value).__name__}")


_WRITERS = {
    "nlie": _w_nlie,
    "leibniz_n": _w_leibniz,
    "representation": _w_representation,
    "lm": _w_lm,
    "lm_rep": _w_lm_rep,
    "extension": _w_extension,
    "section": _w_section,
    "cochain": _w_cochain,
    "deformation": _w_deformation,
    "nijenhuis": _w_nijenhuis,
}


def to_json_obj(value) -> Dict[str, Any]:
    kind = kind_of(value)
    if isinstance(value, DeformationTriple):
        value = FormalDeformation([value])
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **_WRITERS[kind](value)}


def _is_leaf(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (list, dict)) for x in v) or all(
            isinstance(x, list) and all(not isinstance(y, (list, dict)) for y in x) for x in v)
    if isinstance(v, dict):
        return all(not isinstance(x, (list, dict)) for x in v.values())
    return True


def _pretty(v, level: int = 0) -> str:
    """Indented JSON with scalar lists, matrices and sparse vectors kept on one line."""
    if _is_leaf(v) or (isinstance(v, dict) and set(v) <= {"args", "m", "value", "matrix", "blocks", "trailing"}
                       and len(json.dumps(v)) <= 100):
        return json.dumps(v, ensure_ascii=False)
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(v, list):
        return "[\n" + ",\n".join(inner + _pretty(x, level + 1) for x in v) + "\n" + pad + "]"
    items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_pretty(x, level + 1)}" for k, x in v.items()]
    return "{\n" + ",\n".join(items) + "\n" + pad + "}"


def dumps(value) -> str:
    return _pretty(to_json_obj(value)) + "\n"


def dump(value, path) -> None:
    Path(path).write_text(dumps(value), encoding="utf-8")


def parse_text(text: str):
    """Parse a file's contents into the typed value it describes."""
    try:
        obj = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise JSONSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise ShapeError(str(exc)) from None
    if not isinstance(obj, dict):
        raise ShapeError("top level must be an object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ShapeError(f"unsupported schema_version {version!r}", "$.schema_version")
    kind = obj.get("kind", "nlie")
    if kind not in _READERS:
        raise UnknownKindError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "$.kind")
    try:
        return _READERS[kind](obj, "$")
    except FormatError:
        raise
    except (ValueError, IndexError, TypeError) as exc:
        raise ShapeError(str(exc)) from None


def parse(path):
    """Read and parse a UTF-8 JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"not UTF-8: {exc}") from None
    return parse_text(text)
