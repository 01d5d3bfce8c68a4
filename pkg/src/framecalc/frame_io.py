"""Frame files.

A frame is stored as one JSON object:

    {
      "dim": 2,
      "field": "real",
      "vectors": [[[1.0, 0.0], [0.0, 0.0]], ...]
    }

Each vector is a list of dim [re, im] pairs. A "real"-tagged file must
have every im exactly 0.0; anything else is a format error. Floats are
written with repr precision, so a write/read round trip reproduces the
array bit for bit.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import FrameFormatError
from .frames import Frame

_FIELDS = ("real", "complex")


def frame_to_document(frame: Frame) -> dict[str, Any]:
    vectors = [
        [[float(z.real), float(z.imag)] for z in row] for row in frame.vectors
    ]
    return {"dim": frame.dim, "field": frame.field, "vectors": vectors}


def frame_from_document(doc: Any) -> Frame:
    if not isinstance(doc, dict):
        raise FrameFormatError("frame document must be a JSON object")
    missing = {"dim", "field", "vectors"} - set(doc)
    if missing:
        raise FrameFormatError(f"missing keys: {sorted(missing)}")
    dim = doc["dim"]
    field = doc["field"]
    vectors = doc["vectors"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FrameFormatError(f"dim must be a positive integer, got {dim!r}")
    if field not in _FIELDS:
        raise FrameFormatError(f"field must be one of {_FIELDS}, got {field!r}")
    if not isinstance(vectors, list) or not vectors:
        raise FrameFormatError("vectors must be a non-empty list")
    rows = np.empty((len(vectors), dim), dtype=np.complex128)
    for i, vec in enumerate(vectors):
        if not isinstance(vec, list) or len(vec) != dim:
            raise FrameFormatError(f"vector {i} must be a list of {dim} entries")
        for j, entry in enumerate(vec):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise FrameFormatError(
                    f"vector {i} entry {j} must be a [re, im] pair of numbers"
                )
            re, im = float(entry[0]), float(entry[1])
            if not (np.isfinite(re) and np.isfinite(im)):
                raise FrameFormatError(f"vector {i} entry {j} is not finite")
            if field == "real" and im != 0.0:
                raise FrameFormatError(
                    f"field is 'real' but vector {i} entry {j} has im = {im!r}"
                )
            rows[i, j] = complex(re, im)
    return Frame(dim, rows, field)


def write_frame(frame: Frame, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(frame_to_document(frame), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_frame(path: str) -> Frame:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FrameFormatError(f"invalid JSON: {exc}") from exc
    return frame_from_document(doc)
