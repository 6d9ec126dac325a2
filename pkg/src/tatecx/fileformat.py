"""YAML complex-description files.

A file describes one complex::

    ring:
      kind: graded-quotient          # or int-mod, prime-field
      modulus: 2
      variables: {x: 1, y: 1}
      relations: ["x*y"]
      degree_bound: 8
    name: T^x
    window: [0, 2]
    period: {length: 2, twist: -2}   # or below/above: zero | unknown
    modules:
      0: {twists: [0]}
      1: {twists: [-1]}
      2: {twists: [-2]}
    differentials:
      1: [[x]]
      2: [[y]]

A module entry may carry ``relations`` (a presentation) and
``condition``/``condition_relations`` (a kernel-type restriction), each a
matrix block ``{cols: [...], entries: [[...]]}`` whose rows are implied.
A file may instead describe a construction on two other descriptions::

    construction: pinched-tensor     # tensor, hom, pinched-tensor, pinched-hom
    left: t.yaml                     # a path relative to this file, or an inline description
    right: {...}

Errors carry the line and column of the offending node.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

from .complexes import ChainComplex, ComplexError, WindowComplex, materialize
from .constructions import HomComplex, PinchedHom, PinchedTensor, TensorComplex
from .matrix import Matrix, ShapeError
from .modules import Module
from .rings import Ring, RingError, RingSpec, make_ring

CONSTRUCTIONS = {
    "tensor": TensorComplex,
    "hom": HomComplex,
    "pinched-tensor": PinchedTensor,
    "pinched-hom": PinchedHom,
}


class FormatError(ValueError):
    """A description file is malformed; ``line``/``column`` are 1-based."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str | None = None):
        self.line, self.column, self.source = line, column, source
        where = ""
        if line is not None:
            where = f"{source + ':' if source else ''}{line}:{column}: "
        elif source:
            where = f"{source}: "
        super().__init__(where + message)


class _Node:
    """A YAML value together with where it was written."""

    __slots__ = ("value", "line", "column")

    def __init__(self, value, mark):
        self.value = value
        self.line = mark.line + 1 if mark else None
        self.column = mark.column + 1 if mark else None


def _convert(node: yaml.Node) -> _Node:
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            key = yaml.safe_load(yaml.serialize(k)) if isinstance(k, yaml.ScalarNode) else None
            out[key] = _convert(v)
        return _Node(out, node.start_mark)
    if isinstance(node, yaml.SequenceNode):
        return _Node([_convert(v) for v in node.value], node.start_mark)
    return _Node(yaml.safe_load(yaml.serialize(node)), node.start_mark)


def _plain(n: _Node):
    if isinstance(n.value, dict):
        return {k: _plain(v) for k, v in n.value.items()}
    if isinstance(n.value, list):
        return [_plain(v) for v in n.value]
    return n.value


class _Reader:
    def __init__(self, source: str | None, base: Path | None):
        self.source, self.base = source, base

    def fail(self, msg: str, node: _Node | None = None):
        raise FormatError(msg, node.line if node else None, node.column if node else None, self.source)

    def get(self, node: _Node, key: str, required: bool = True) -> _Node | None:
        if not isinstance(node.value, dict):
            self.fail("expected a mapping", node)
        if key not in node.value:
            if required:
                self.fail(f"missing key {key!r}", node)
            return None
        return node.value[key]

    def int_of(self, node: _Node, what: str) -> int:
        if not isinstance(node.value, int) or isinstance(node.value, bool):
            self.fail(f"{what} must be an integer", node)
        return node.value

    def int_list(self, node: _Node, what: str) -> list[int]:
        if not isinstance(node.value, list):
            self.fail(f"{what} must be a list of integers", node)
        return [self.int_of(v, what) for v in node.value]

    def ring(self, node: _Node) -> Ring:
        try:
            return make_ring(RingSpec.from_dict(_plain(node)))
        except (RingError, TypeError, ValueError) as e:
            self.fail(f"bad ring: {e}", node)

    def matrix(self, R: Ring, rows, cols, node: _Node, what: str) -> Matrix:
        if not isinstance(node.value, list) or len(node.value) != len(rows):
            self.fail(f"{what} needs {len(rows)} rows", node)
        data = []
        for r in node.value:
            if not isinstance(r.value, list) or len(r.value) != len(cols):
                self.fail(f"{what}: every row needs {len(cols)} entries", r)
            row = []
            for v in r.value:
                if not isinstance(v.value, (int, str)) or isinstance(v.value, bool):
                    self.fail(f"{what}: entries are integers or polynomial strings", v)
                try:
                    row.append(R.parse(v.value))
                except RingError as e:
                    self.fail(f"{what}: {e}", v)
            data.append(row)
        try:
            return Matrix.from_rows(R, rows, cols, data)
        except ShapeError as e:
            self.fail(f"{what}: {e}", node)

    def block(self, R: Ring, rows, node: _Node, what: str) -> Matrix:
        cols = self.int_list(self.get(node, "cols"), f"{what} cols")
        return self.matrix(R, rows, cols, self.get(node, "entries"), what)

    def module(self, R: Ring, node: _Node, i: int) -> Module:
        tw = self.int_list(self.get(node, "twists"), f"twists of module {i}")
        rel = cond = crel = None
        if (n := self.get(node, "relations", False)) is not None:
            rel = self.block(R, tw, n, f"relations of module {i}")
        if (n := self.get(node, "condition", False)) is not None:
            rows = self.int_list(self.get(n, "rows"), f"condition rows of module {i}")
            cond = self.matrix(R, rows, tw, self.get(n, "entries"), f"condition of module {i}")
            if (m := self.get(node, "condition_relations", False)) is not None:
                crel = self.block(R, rows, m, f"condition relations of module {i}")
        try:
            return Module(R, tw, rel, cond, crel)
        except ShapeError as e:
            self.fail(str(e), node)

    def keyed(self, node: _Node, what: str) -> dict[int, _Node]:
        if not isinstance(node.value, dict):
            self.fail(f"{what} must map degrees to entries", node)
        out = {}
        for k, v in node.value.items():
            try:
                out[int(k)] = v
            except (TypeError, ValueError):
                self.fail(f"{what}: degree {k!r} is not an integer", v)
        return out

    def complex(self, node: _Node, ring: Ring | None = None) -> ChainComplex:
        if not isinstance(node.value, dict):
            self.fail("a complex description must be a mapping", node)
        if "construction" in node.value:
            return self.construction(node, ring)
        R = self.ring(self.get(node, "ring")) if "ring" in node.value or ring is None else ring
        w = self.int_list(self.get(node, "window"), "window")
        if len(w) != 2 or w[0] > w[1]:
            self.fail("window must be [lo, hi] with lo <= hi", self.get(node, "window"))
        lo, hi = w
        mods_node = self.keyed(self.get(node, "modules"), "modules")
        mods = {}
        for i in range(lo, hi + 1):
            if i not in mods_node:
                self.fail(f"no module in degree {i}", self.get(node, "modules"))
            mods[i] = self.module(R, mods_node[i], i)
        extra = sorted(set(mods_node) - set(mods))
        if extra:
            self.fail(f"modules outside the window: {extra}", self.get(node, "modules"))
        diffs = {}
        dn = self.get(node, "differentials", False)
        for i, v in (self.keyed(dn, "differentials").items() if dn is not None else ()):
            if not lo < i <= hi:
                self.fail(f"differential {i} lies outside the window", v)
            diffs[i] = self.matrix(R, mods[i - 1].twists, mods[i].twists, v, f"differential {i}")
        period = None
        if (pn := self.get(node, "period", False)) is not None:
            period = (self.int_of(self.get(pn, "length"), "period length"), self.int_of(self.get(pn, "twist"), "period twist"))
        below = self.get(node, "below", False)
        above = self.get(node, "above", False)
        name = self.get(node, "name", False)
        try:
            return WindowComplex(
                R,
                lo,
                hi,
                mods,
                diffs,
                below=below.value if below is not None else "zero",
                above=above.value if above is not None else "zero",
                period=period,
                name=str(name.value) if name is not None else None,
            )
        except ComplexError as e:
            self.fail(str(e), node)

    def construction(self, node: _Node, ring: Ring | None) -> ChainComplex:
        kind = self.get(node, "construction")
        if kind.value not in CONSTRUCTIONS:
            self.fail(f"unknown construction {kind.value!r}; expected one of {sorted(CONSTRUCTIONS)}", kind)
        parts = []
        for side in ("left", "right"):
            sub = self.get(node, side)
            if isinstance(sub.value, str):
                if self.base is None:
                    self.fail("file references need a file location", sub)
                parts.append(load_complex(self.base / sub.value))
            else:
                parts.append(self.complex(sub, ring))
        if parts[0].ring != parts[1].ring:
            self.fail("the two sides live over different rings", node)
        return CONSTRUCTIONS[kind.value](*parts)


def _compose(text: str, source: str | None) -> _Node:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise FormatError(
            f"YAML syntax error: {getattr(e, 'problem', e)}",
            mark.line + 1 if mark else None,
            mark.column + 1 if mark else None,
            source,
        ) from None
    if root is None:
        raise FormatError("empty document", source=source)
    return _convert(root)


def loads_complex(text: str, source: str | None = None, base: Path | None = None) -> ChainComplex:
    return _Reader(source, base).complex(_compose(text, source))


def load_complex(path: str | Path) -> ChainComplex:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FormatError(f"cannot read: {e.strerror}", source=str(path)) from None
    return loads_complex(text, str(path), path.parent)


# -- writing ------------------------------------------------------------------


def _matrix_rows(m: Matrix) -> list[list]:
    return m.to_lists()


def _module_doc(M: Module) -> dict:
    d: dict[str, Any] = {"twists": list(M.twists)}
    if M.rel is not None:
        d["relations"] = {"cols": list(M.rel.cols), "entries": _matrix_rows(M.rel)}
    if M.cond is not None:
        d["condition"] = {"rows": list(M.cond.rows), "entries": _matrix_rows(M.cond)}
        if M.cond_rel is not None:
            d["condition_relations"] = {"cols": list(M.cond_rel.cols), "entries": _matrix_rows(M.cond_rel)}
    return d


def complex_to_doc(c: ChainComplex, window: tuple[int, int] | None = None, name: str | None = None) -> dict:
    """A plain description of c; non-window complexes are frozen on ``window``."""
    if not isinstance(c, WindowComplex) or (window is not None and (c.lo, c.hi) != tuple(window)):
        if window is None:
            raise ComplexError("a window is needed to write this complex")
        c = materialize(c, window[0], window[1], name=name)
    doc: dict[str, Any] = {"ring": c.ring.spec.to_dict()}
    if name or c.name:
        doc["name"] = name or c.name
    doc["window"] = [c.lo, c.hi]
    if c.period is not None:
        doc["period"] = {"length": c.period[0], "twist": c.period[1]}
    else:
        doc["below"], doc["above"] = c.below, c.above
    doc["modules"] = {i: _module_doc(c.mods[i]) for i in range(c.lo, c.hi + 1)}
    doc["differentials"] = {i: _matrix_rows(c.diffs[i]) for i in range(c.lo + 1, c.hi + 1) if not c.diffs[i].is_zero()}
    return doc


def dumps_complex(c: ChainComplex, window: tuple[int, int] | None = None, name: str | None = None) -> str:
    return yaml.safe_dump(complex_to_doc(c, window, name), sort_keys=False, default_flow_style=None)


def dump_complex(c: ChainComplex, path: str | Path, window: tuple[int, int] | None = None, name: str | None = None) -> None:
    Path(path).write_text(dumps_complex(c, window, name))


def same_complex(a: ChainComplex, b: ChainComplex, lo: int, hi: int) -> bool:
    """Equal rings, modules and differentials on ``[lo, hi]``."""
    if a.ring != b.ring or a.period != b.period:
        return False
    return all(a.module(i) == b.module(i) for i in range(lo, hi + 1)) and all(
        a.diff(i) == b.diff(i) for i in range(lo + 1, hi + 1)
    )
