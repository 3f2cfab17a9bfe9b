"""JSON frame files shared by the CLI and the enveloping-algebra layer.

Schema::

    {
      "variables": ["x", "y", "z"],
      "h": "(x*z+y)*(x^4+y^5+x*y^4)",          # optional for abstract data
      "matrix": [["...", "...", "..."], ...],   # anchor rows, one per line
      "structure_constants": {"1,2": ["...", ...], ...}   # optional, 1-based
    }

Structure constants are recomputed when absent and validated (bracket
closure and the Jacobi identity) when present.
"""

from __future__ import annotations

import json
from pathlib import Path

from .derivations import Divisor, LogFrame
from .enveloping import LieRinehartData
from .errors import InvalidArgument, NotInSpan
from .groebner import lift_through
from .ring import PolyRing, PolyVec


def _load_dict(source) -> dict:
    if isinstance(source, dict):
        return source
    text = Path(source).read_text()
    return json.loads(text)


def load_frame(source, local: bool = False) -> LogFrame:
    """Read a frame file with a divisor equation and certify it."""
    doc = _load_dict(source)
    try:
        ring = PolyRing(doc["variables"])
        if "h" not in doc:
            raise InvalidArgument("frame file has no divisor equation 'h'")
        h = ring.parse(doc["h"])
        rows = [PolyVec([ring.parse(s) for s in row]) for row in doc["matrix"]]
    except KeyError as exc:
        raise InvalidArgument(f"frame file missing field {exc}") from exc
    frame = LogFrame(Divisor(h), rows, local=local)
    if "structure_constants" in doc:
        stated = _parse_constants(ring, len(rows), doc["structure_constants"])
        if stated != {k: tuple(v.entries)
                      for k, v in frame.structure_constants.items()}:
            raise InvalidArgument("stated structure constants disagree with "
                                  "the computed brackets")
    return frame


def load_lie_data(source) -> LieRinehartData:
    """Read a frame file as abstract Lie-Rinehart data (no divisor needed)."""
    doc = _load_dict(source)
    if "h" in doc:
        return LieRinehartData.from_frame(load_frame(doc))
    ring = PolyRing(doc["variables"])
    rows = [PolyVec([ring.parse(s) for s in row]) for row in doc["matrix"]]
    t = len(rows)
    if "structure_constants" in doc:
        constants = _parse_constants(ring, t, doc["structure_constants"])
    else:
        constants = {}
        for i in range(t):
            for j in range(i + 1, t):
                br = PolyVec([
                    _apply(rows[i], rows[j][m]) - _apply(rows[j], rows[i][m])
                    for m in range(ring.n)])
                try:
                    constants[(i, j)] = tuple(lift_through(br, rows))
                except NotInSpan as exc:
                    raise InvalidArgument(
                        "anchor rows are not bracket-closed; supply "
                        "structure_constants") from exc
    return LieRinehartData(ring, rows, constants)


def _apply(coeffs: PolyVec, p):
    out = p.ring.zero()
    for i, a in enumerate(coeffs):
        out = out + a * p.partial(i)
    return out


def _parse_constants(ring: PolyRing, t: int, doc: dict) -> dict:
    constants = {}
    for key, vec in doc.items():
        i, j = (int(s) for s in key.split(","))
        if not (1 <= i < j <= t):
            raise InvalidArgument(f"bad structure constant key {key!r}")
        if len(vec) != t:
            raise InvalidArgument(f"structure constant vector {key!r} has "
                                  f"wrong length")
        constants[(i - 1, j - 1)] = tuple(ring.parse(s) for s in vec)
    missing = [(i, j) for i in range(t) for j in range(i + 1, t)
               if (i, j) not in constants]
    if missing:
        raise InvalidArgument(f"missing structure constants for {missing}")
    return constants


def frame_to_dict(frame: LogFrame) -> dict:
    return {
        "variables": list(frame.ring.names),
        "h": str(frame.divisor.h),
        "matrix": [[str(p) for p in r.coeffs] for r in frame.rows],
        "structure_constants": {
            f"{i + 1},{j + 1}": [str(p) for p in vec.entries]
            for (i, j), vec in sorted(frame.structure_constants.items())},
    }


def save_frame(frame: LogFrame, path) -> None:
    Path(path).write_text(json.dumps(frame_to_dict(frame), indent=2,
                                     sort_keys=True) + "\n")
