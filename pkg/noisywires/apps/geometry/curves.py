"""Wire curves as 3D polylines, and their JSON document form.

Document schema (version 1), coordinates in metres::

    {"schema_version": 1, "closed": true, "points": [[x, y, z], ...]}

A closed curve lists each vertex once; a trailing copy of the first point is
dropped on input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from noisywires.apps.core.exceptions import ValidationException

SCHEMA_VERSION = 1


class CurveError(ValidationException):
    """Raised for malformed curves or curve documents."""

    error_code = "curve_error"
    message = "Invalid wire curve"


@dataclass(frozen=True, eq=False)
class Polyline3:
    points: np.ndarray
    closed: bool = False

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise CurveError(f"points must have shape (n, 3), got {pts.shape}")
        if self.closed and len(pts) > 2 and np.array_equal(pts[0], pts[-1]):
            pts = pts[:-1]
        if len(pts) < 2:
            raise CurveError("a curve needs at least 2 points")
        if not np.isfinite(pts).all():
            raise CurveError("points must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

        lengths = np.linalg.norm(self.directions, axis=1)
        if (lengths == 0).any():
            index = int(np.argmin(lengths))
            raise CurveError(f"consecutive points must be distinct (segment {index})")

    @property
    def starts(self) -> np.ndarray:
        return self.points if self.closed else self.points[:-1]

    @property
    def ends(self) -> np.ndarray:
        if self.closed:
            return np.roll(self.points, -1, axis=0)
        return self.points[1:]

    @property
    def directions(self) -> np.ndarray:
        return self.ends - self.starts

    @property
    def n_segments(self) -> int:
        return len(self.starts)

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.directions, axis=1).sum())

    def translated(self, a: Sequence[float]) -> "Polyline3":
        return Polyline3(self.points + as_vector(a), self.closed)

    def refined(self) -> "Polyline3":
        """Same curve with every segment split at its midpoint."""
        mids = self.starts + 0.5 * self.directions
        pts = np.empty((2 * self.n_segments, 3))
        pts[0::2] = self.starts
        pts[1::2] = mids
        if not self.closed:
            pts = np.vstack([pts, self.points[-1:]])
        return Polyline3(pts, self.closed)

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "closed": self.closed, "points": self.points.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "Polyline3":
        if not isinstance(data, dict) or "points" not in data:
            raise CurveError("curve document must be an object with a 'points' array")
        version = data.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise CurveError(f"unsupported curve schema_version {version!r}")
        return cls(np.asarray(data["points"], dtype=float), bool(data.get("closed", False)))

    @classmethod
    def from_json(cls, text: str) -> "Polyline3":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CurveError(f"curve document is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Polyline3":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise CurveError(f"cannot read curve document {str(path)!r}: {exc.strerror}") from exc
        return cls.from_json(text)


def as_vector(a: Sequence[float]) -> np.ndarray:
    vec = np.asarray(a, dtype=float)
    if vec.shape != (3,) or not np.isfinite(vec).all():
        raise CurveError(f"expected a finite 3-vector, got {a!r}")
    return vec


def circle_polyline(
    radius: float,
    n: int = 128,
    center: Sequence[float] = (0.0, 0.0, 0.0),
    normal: Sequence[float] = (0.0, 0.0, 1.0),
) -> Polyline3:
    """Closed regular n-gon inscribed in the circle."""
    if not radius > 0 or n < 3:
        raise CurveError("circle needs radius > 0 and n >= 3")
    axis = as_vector(normal)
    axis = axis / np.linalg.norm(axis)
    helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = np.cross(axis, helper)
    u /= np.linalg.norm(u)
    v = np.cross(axis, u)
    phi = 2.0 * np.pi * np.arange(n) / n
    pts = as_vector(center) + radius * (np.outer(np.cos(phi), u) + np.outer(np.sin(phi), v))
    return Polyline3(pts, closed=True)


def segment_polyline(start: Sequence[float], end: Sequence[float], n: int = 1) -> Polyline3:
    """Straight open wire from ``start`` to ``end`` in ``n`` equal segments."""
    if n < 1:
        raise CurveError("n must be >= 1")
    s = np.linspace(0.0, 1.0, n + 1)[:, None]
    return Polyline3((1.0 - s) * as_vector(start) + s * as_vector(end), closed=False)
