"""JSON bundle files: schema, loading with validation, deterministic emission.

A bundle file carries the coefficient characteristic, the variable names,
the length-4 sequence, the hypersurface element f, and the algebra block:
ranks, differentials (row-major polynomial strings), multiplication tensors
keyed "i,j:s,t" mapped to coefficient columns, the divided-square table,
the orientation unit, and the degree-1 split.  Emission is deterministic;
emit -> load -> emit is byte-identical.
"""

import json
import os
import tempfile

from .complexes import FreeComplex
from .dga import DgaBundle
from .errors import BundleFormatError, DgmfError
from .field import field_from_characteristic
from .instances import Instance
from .matrix import PolyMatrix
from .poly import PolyRing

SCHEMA_KEYS = ("label", "characteristic", "variables", "sequence", "f", "M", "options")
M_KEYS = ("ranks", "differentials", "mult", "sq2", "orientation", "split")


def _matrix_to_rows(m):
    return [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _rows_to_matrix(ring, rows, nrows, ncols, what):
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise BundleFormatError(f"{what}: expected a {nrows}x{ncols} matrix")
    try:
        data = [[ring.parse(e) for e in r] for r in rows]
    except DgmfError as exc:
        raise BundleFormatError(f"{what}: {exc}") from exc
    return PolyMatrix(ring, data, rows=nrows, cols=ncols)


def instance_to_dict(inst):
    bundle = inst.bundle
    ranks = [bundle.rank(i) for i in range(5)]
    mult = {}
    for (i, j) in sorted(bundle.mult):
        tensor = bundle.mult[(i, j)]
        for s in range(ranks[i]):
            for t in range(ranks[j]):
                col = tensor.column(s * ranks[j] + t)
                if all(p.is_zero() for p in col):
                    continue
                mult[f"{i},{j}:{s},{t}"] = [str(p) for p in col]
    return {
        "label": inst.name,
        "characteristic": inst.ring.field.characteristic,
        "variables": list(inst.ring.variables),
        "sequence": [str(p) for p in inst.sequence],
        "f": str(inst.f),
        "M": {
            "ranks": ranks,
            "differentials": [_matrix_to_rows(bundle.d(i)) for i in range(1, 5)],
            "mult": mult,
            "sq2": _matrix_to_rows(bundle.sq2),
            "orientation": str(bundle.orientation),
            "split": (
                [list(bundle.split[0]), list(bundle.split[1])]
                if bundle.split is not None
                else None
            ),
        },
        "options": {},
    }


def emit_text(inst):
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def _require(cond, message):
    if not cond:
        raise BundleFormatError(message)


def dict_to_instance(data, differentials_only=False):
    _require(isinstance(data, dict), "bundle must be a JSON object")
    for key in SCHEMA_KEYS:
        _require(key in data, f"missing top-level key {key!r}")
    char = data["characteristic"]
    _require(isinstance(char, int) and char >= 0, "characteristic must be an integer")
    try:
        field = field_from_characteristic(char)
    except DgmfError as exc:
        raise BundleFormatError(str(exc)) from exc
    variables = data["variables"]
    _require(
        isinstance(variables, list)
        and variables
        and all(isinstance(v, str) for v in variables),
        "variables must be a nonempty list of names",
    )
    ring = PolyRing(field, variables)
    try:
        sequence = [ring.parse(s) for s in data["sequence"]]
        f = ring.parse(data["f"])
    except DgmfError as exc:
        raise BundleFormatError(str(exc)) from exc
    _require(len(sequence) == 4, "the sequence must have length 4")

    block = data["M"]
    _require(isinstance(block, dict), "M must be an object")
    for key in M_KEYS:
        _require(key in block, f"missing M key {key!r}")
    ranks = block["ranks"]
    _require(
        isinstance(ranks, list)
        and len(ranks) == 5
        and all(isinstance(r, int) and r >= 0 for r in ranks),
        "ranks must be five nonnegative integers",
    )
    diffs = block["differentials"]
    _require(
        isinstance(diffs, list) and len(diffs) == 4, "expected four differentials"
    )
    matrices = [
        _rows_to_matrix(ring, diffs[i - 1], ranks[i - 1], ranks[i], f"differential {i}")
        for i in range(1, 5)
    ]
    try:
        cx = FreeComplex(ring, ranks, matrices)
    except DgmfError as exc:
        raise BundleFormatError(str(exc)) from exc

    split = block["split"]
    if split is not None:
        _require(
            isinstance(split, list)
            and len(split) == 2
            and all(isinstance(part, list) for part in split),
            "split must be two index lists",
        )
        split = (list(split[0]), list(split[1]))

    if differentials_only:
        return ring, sequence, f, cx, split, data["label"]

    mult = {}
    for (i, j) in ((1, 1), (1, 2), (1, 3), (2, 2)):
        mult[(i, j)] = [
            [ring.zero] * ranks[i + j] for _ in range(ranks[i] * ranks[j])
        ]
    _require(isinstance(block["mult"], dict), "mult must be an object")
    for key, col in block["mult"].items():
        try:
            head, tail = key.split(":")
            i, j = (int(v) for v in head.split(","))
            s, t = (int(v) for v in tail.split(","))
        except ValueError as exc:
            raise BundleFormatError(f"bad mult key {key!r}") from exc
        _require((i, j) in mult, f"mult key {key!r}: unsupported degree pair")
        _require(0 <= s < ranks[i] and 0 <= t < ranks[j], f"mult key {key!r}: index out of range")
        _require(
            isinstance(col, list) and len(col) == ranks[i + j],
            f"mult key {key!r}: column must have length {ranks[i + j]}",
        )
        try:
            mult[(i, j)][s * ranks[j] + t] = [ring.parse(e) for e in col]
        except DgmfError as exc:
            raise BundleFormatError(f"mult key {key!r}: {exc}") from exc
    tensors = {
        key: PolyMatrix.from_columns(ring, cols, ranks[key[0] + key[1]])
        for key, cols in mult.items()
    }
    sq2 = _rows_to_matrix(ring, block["sq2"], ranks[4], ranks[2], "sq2")
    try:
        orientation = ring.parse(block["orientation"])
    except DgmfError as exc:
        raise BundleFormatError(f"orientation: {exc}") from exc
    try:
        bundle = DgaBundle(
            cx, tensors, sq2, orientation, split=split, label=data["label"]
        )
    except DgmfError as exc:
        raise BundleFormatError(str(exc)) from exc
    return Instance(data["label"], ring, sequence, f, bundle)


def load_path(path, differentials_only=False):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BundleFormatError(f"cannot read bundle {path}: {exc}") from exc
    return dict_to_instance(data, differentials_only=differentials_only)


def atomic_write(path, text):
    """Write text to path via a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_path(path, inst):
    atomic_write(path, emit_text(inst))
