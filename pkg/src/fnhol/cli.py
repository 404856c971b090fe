"""Command-line interface.

Reads a surface document (JSON) describing a pants decomposition with
Fenchel-Nielsen coordinates and optionally spin data, and runs one of:

* ``verify``    face residuals and normal-form checks,
* ``holonomy``  trace / translation length of an edge word,
* ``fn``        coordinate extraction round trip,
* ``wp``        the pairing matrix of the coordinate directions against
                the twist-length reference,
* ``spin``      lift assembly and rotation numbers, or enumeration with
                ``--list``.

Exit codes: 0 success, 1 verification failure, 2 bad input.  Output is
deterministic; numbers print with 15 significant digits.

Document schema::

    {
      "genus": 2,
      "pants": [0, 1],
      "curves": [{"id": 0, "left": {"pants": 0, "k": 0},
                            "right": {"pants": 1, "k": 0}}, ...],
      "fn": [{"curve": 0, "length": 2.0, "twist": 0.0}, ...],
      "spin": {"eps": {"0": -1, ...}, "crossing_signs": {"0": 1, ...}}
    }

``spin`` is optional.  Lengths must lie in [1e-6, 50].
"""

import argparse
import json
import sys
from dataclasses import dataclass

from .mat2 import NonHyperbolicError, translation_length
from .surface import (
    Curve,
    FNPoint,
    SurfaceSpec,
    assemble_cocycle,
    build_complex,
    extract_fn,
    holonomy,
    curve_loop_word,
    parse_word,
)
from .wp import wp_matrix
from . import spin as spin_mod

LENGTH_RANGE = (1e-6, 50.0)


class DocumentError(ValueError):
    """Malformed or invalid input document; the message carries the
    offending field path."""


@dataclass
class SurfaceDocument:
    spec: SurfaceSpec
    fn: FNPoint
    spin: dict | None  # {"eps": {...}, "crossing_signs": {...}} with curve-id keys


def _fail(path, msg):
    raise DocumentError(f"{path}: {msg}")


def _require(obj, key, kind, path):
    if not isinstance(obj, dict) or key not in obj:
        _fail(path, f"missing field {key!r}")
    val = obj[key]
    if kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            _fail(f"{path}.{key}", f"expected a number, got {val!r}")
        return float(val)
    if isinstance(val, bool) and kind is int:
        _fail(f"{path}.{key}", f"expected int, got {val!r}")
    if not isinstance(val, kind):
        name = kind.__name__ if isinstance(kind, type) else "value"
        _fail(f"{path}.{key}", f"expected {name}, got {val!r}")
    return val


def _curve_key(raw_id, curve_ids, path):
    """Resolve a curve reference used as a JSON object key (always a
    string there) against the declared curve ids."""
    for cid in curve_ids:
        if str(cid) == str(raw_id):
            return cid
    _fail(path, f"unknown curve {raw_id!r}")


def parse_document(text):
    """Parse and fully validate a surface document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        _fail("document", "expected a JSON object")

    genus = _require(raw, "genus", int, "document")
    pants = _require(raw, "pants", list, "document")
    curves_raw = _require(raw, "curves", list, "document")
    fn_raw = _require(raw, "fn", list, "document")

    curves = []
    for i, item in enumerate(curves_raw):
        path = f"curves[{i}]"
        cid = _require(item, "id", (int, str), path)
        sides = []
        for side in ("left", "right"):
            rec = _require(item, side, dict, path)
            pid = _require(rec, "pants", (int, str), f"{path}.{side}")
            k = _require(rec, "k", int, f"{path}.{side}")
            sides.append((pid, k))
        curves.append(Curve(cid, sides[0], sides[1]))
    spec = SurfaceSpec(genus, tuple(pants), tuple(curves))

    from .surface import validate_surface

    diag = validate_surface(spec)
    if not diag.ok:
        _fail("document", str(diag))

    curve_ids = spec.curve_ids()
    lengths, twists = {}, {}
    for i, item in enumerate(fn_raw):
        path = f"fn[{i}]"
        cid = _curve_key(_require(item, "curve", (int, str), path), curve_ids, path)
        l = _require(item, "length", float, path)
        if not (LENGTH_RANGE[0] <= l <= LENGTH_RANGE[1]):
            _fail(f"{path}.length", f"{l!r} outside [{LENGTH_RANGE[0]}, {LENGTH_RANGE[1]}]")
        if cid in lengths:
            _fail(path, f"duplicate coordinates for curve {cid!r}")
        lengths[cid] = l
        twists[cid] = _require(item, "twist", float, path)
    missing = [c for c in curve_ids if c not in lengths]
    if missing:
        _fail("fn", f"no coordinates for curves {missing!r}")
    fn = FNPoint(lengths, twists)

    spin = None
    if "spin" in raw and raw["spin"] is not None:
        block = raw["spin"]
        if not isinstance(block, dict):
            _fail("spin", "expected an object")
        eps = {}
        for key, val in _require(block, "eps", dict, "spin").items():
            cid = _curve_key(key, curve_ids, "spin.eps")
            if val not in (-1, 1):
                _fail(f"spin.eps.{key}", f"expected +-1, got {val!r}")
            eps[cid] = val
        if set(eps) != set(curve_ids):
            _fail("spin.eps", "must assign a sign to every curve")
        signs = {c: 1 for c in curve_ids}
        if "crossing_signs" in block:
            for key, val in block["crossing_signs"].items():
                cid = _curve_key(key, curve_ids, "spin.crossing_signs")
                if val not in (-1, 1):
                    _fail(f"spin.crossing_signs.{key}", f"expected +-1, got {val!r}")
                signs[cid] = val
        spin = {"eps": eps, "crossing_signs": signs}
    return SurfaceDocument(spec, fn, spin)


def serialize_document(doc):
    """Canonical JSON text of a document; stable under a parse/serialize
    round trip."""
    spec, fn = doc.spec, doc.fn
    out = {
        "genus": spec.genus,
        "pants": list(spec.pants),
        "curves": [
            {
                "id": c.id,
                "left": {"pants": c.left[0], "k": c.left[1]},
                "right": {"pants": c.right[0], "k": c.right[1]},
            }
            for c in spec.curves
        ],
        "fn": [
            {"curve": c.id, "length": fn.lengths[c.id], "twist": fn.twists[c.id]}
            for c in spec.curves
        ],
    }
    if doc.spin is not None:
        out["spin"] = {
            "eps": {str(c): doc.spin["eps"][c] for c in spec.curve_ids()},
            "crossing_signs": {
                str(c): doc.spin["crossing_signs"][c] for c in spec.curve_ids()
            },
        }
    return json.dumps(out, indent=2, sort_keys=False) + "\n"


def _num(x):
    """15 significant digits, stable across platforms."""
    return format(float(x), ".15g")


def _emit(report, fmt, stream):
    if fmt == "json":
        json.dump(report, stream, indent=2)
        stream.write("\n")
    else:
        for line in report["lines"]:
            stream.write(line + "\n")


def run_command(doc, command, word=None, tolerance=1e-8, list_spin=False):
    """Execute a command against a parsed document.

    Returns (report dict with a "lines" key, exit code)."""
    complex_ = build_complex(doc.spec)
    if command == "verify":
        cocycle = assemble_cocycle(complex_, doc.fn)
        residuals = {fid: cocycle.face_residual(fid) for fid in sorted(complex_.faces)}
        worst = max(residuals.values())
        fnback = extract_fn(cocycle)
        rt = max(
            max(abs(fnback.lengths[c] - doc.fn.lengths[c]) for c in fnback.lengths),
            max(abs(fnback.twists[c] - doc.fn.twists[c]) for c in fnback.twists),
        )
        ok = worst <= tolerance and rt <= tolerance
        lines = [
            f"faces {len(residuals)}  max residual {_num(worst)}",
            f"coordinate round trip {_num(rt)}",
            "PASS" if ok else "FAIL",
        ]
        report = {
            "command": "verify",
            "max_residual": worst,
            "roundtrip": rt,
            "residuals": {k: v for k, v in residuals.items()},
            "ok": ok,
            "lines": lines,
        }
        return report, 0 if ok else 1

    if command == "holonomy":
        if not word:
            raise DocumentError("holonomy requires --word")
        cocycle = assemble_cocycle(complex_, doc.fn)
        w = parse_word(complex_, word)
        hol = holonomy(cocycle, w)
        m = hol.rep
        tr = hol.trace_abs()
        lines = [
            f"word {word}",
            f"matrix [[{_num(m.a)}, {_num(m.b)}], [{_num(m.c)}, {_num(m.d)}]]",
            f"|trace| {_num(tr)}",
        ]
        report = {
            "command": "holonomy",
            "matrix": [[m.a, m.b], [m.c, m.d]],
            "trace_abs": tr,
            "lines": lines,
        }
        try:
            length = translation_length(hol)
            report["translation_length"] = length
            lines.append(f"translation length {_num(length)}")
        except NonHyperbolicError:
            report["translation_length"] = None
            lines.append("translation length n/a (not hyperbolic)")
        return report, 0

    if command == "fn":
        cocycle = assemble_cocycle(complex_, doc.fn)
        back = extract_fn(cocycle)
        lines = []
        worst = 0.0
        for c in doc.spec.curves:
            dl = abs(back.lengths[c.id] - doc.fn.lengths[c.id])
            dt = abs(back.twists[c.id] - doc.fn.twists[c.id])
            worst = max(worst, dl, dt)
            lines.append(
                f"curve {c.id}  length {_num(back.lengths[c.id])}"
                f"  twist {_num(back.twists[c.id])}"
            )
        ok = worst <= tolerance
        lines.append(f"round trip {_num(worst)}")
        lines.append("PASS" if ok else "FAIL")
        report = {
            "command": "fn",
            "lengths": {str(c): back.lengths[c] for c in back.lengths},
            "twists": {str(c): back.twists[c] for c in back.twists},
            "roundtrip": worst,
            "ok": ok,
            "lines": lines,
        }
        return report, 0 if ok else 1

    if command == "wp":
        labels, matrix = wp_matrix(complex_, doc.fn)
        n = len(labels) // 2
        worst = 0.0
        for i in range(2 * n):
            for j in range(2 * n):
                expected = 0.0
                if i < n and j == n + i:
                    expected = -1.0
                elif i >= n and j == i - n:
                    expected = 1.0
                worst = max(worst, abs(matrix[i][j] - expected))
        ok = worst <= tolerance
        lines = [" ".join(labels)]
        for row in matrix:
            lines.append(" ".join(_num(x) for x in row))
        lines.append(f"max deviation from twist-length block form {_num(worst)}")
        lines.append("PASS" if ok else "FAIL")
        report = {
            "command": "wp",
            "labels": labels,
            "matrix": matrix,
            "max_deviation": worst,
            "ok": ok,
            "lines": lines,
        }
        return report, 0 if ok else 1

    if command == "spin":
        if list_spin:
            eps_list, classes = spin_mod.enumerate_spin(doc.spec)
            tree = spin_mod.spanning_tree_curves(doc.spec)
            lines = [
                f"boundary-sign assignments {len(eps_list)}",
                f"crossing-sign classes per assignment {len(classes)}",
                f"total lifts in normal form {len(eps_list) * len(classes)}",
                f"tree curves {' '.join(str(c) for c in tree)}",
            ]
            for eps in eps_list:
                lines.append(
                    "eps " + " ".join(f"{c}:{eps[c]:+d}" for c in sorted(eps, key=str))
                )
            for signs in classes:
                lines.append(
                    "class "
                    + " ".join(f"{c}:{signs[c]:+d}" for c in sorted(signs, key=str))
                )
            report = {
                "command": "spin",
                "eps_assignments": [
                    {str(c): e[c] for c in sorted(e, key=str)} for e in eps_list
                ],
                "crossing_classes": [
                    {str(c): s[c] for c in sorted(s, key=str)} for s in classes
                ],
                "tree_curves": [str(c) for c in tree],
                "lines": lines,
            }
            return report, 0
        if doc.spin is None:
            raise DocumentError("document has no spin block (or use --list)")
        lifted = spin_mod.assemble_spin(
            complex_, doc.fn, doc.spin["eps"], doc.spin["crossing_signs"]
        )
        worst = lifted.max_face_residual()
        lines = [f"max face residual against +I {_num(worst)}"]
        rots = {}
        for c in doc.spec.curves:
            loop = curve_loop_word(doc.spec, c.id)
            r = spin_mod.rot2(lifted, loop)
            rots[str(c.id)] = r
            lines.append(f"curve {c.id}  rot {r}")
        pants_sums = {}
        for pid in doc.spec.pants:
            sides = doc.spec.sides_of_pants(pid)
            s = 0
            for k in range(3):
                loop = ((f"p{pid}.b{k}0", 1), (f"p{pid}.b{k}1", 1))
                s += spin_mod.rot2(lifted, loop)
            pants_sums[str(pid)] = s % 2
            lines.append(f"pants {pid}  rot sum mod 2 = {s % 2}")
        ok = worst <= tolerance and all(v == 1 for v in pants_sums.values())
        lines.append("PASS" if ok else "FAIL")
        report = {
            "command": "spin",
            "max_residual": worst,
            "rot": rots,
            "pants_rot_sums": pants_sums,
            "ok": ok,
            "lines": lines,
        }
        return report, 0 if ok else 1

    raise DocumentError(f"unknown command {command!r}")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="fnhol",
        description="holonomy cocycles of pants-decomposed surfaces: "
        "verification, holonomy, coordinates, symplectic pairing, spin lifts",
    )
    parser.add_argument(
        "command", choices=["verify", "holonomy", "fn", "wp", "spin"]
    )
    parser.add_argument("--input", required=True, help="surface document (JSON)")
    parser.add_argument("--word", help="edge word for the holonomy command")
    parser.add_argument("--tolerance", type=float, default=1e-8)
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument(
        "--list", action="store_true", help="spin: enumerate structures"
    )
    args = parser.parse_args(argv)

    try:
        with open(args.input, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        print(f"fnhol: cannot read {args.input}: {exc}", file=sys.stderr)
        return 2
    try:
        doc = parse_document(text)
        report, code = run_command(
            doc,
            args.command,
            word=args.word,
            tolerance=args.tolerance,
            list_spin=args.list,
        )
    except (DocumentError, ValueError) as exc:
        print(f"fnhol: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.format, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
