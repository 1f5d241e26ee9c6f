"""Spin-cluster geometries: preset builders, config parsing, pair coordinates.

All lengths are dimensionless, measured in units of the nearest-neighbor
distance, so every valid cluster has a minimal pair separation of exactly 1.
Spin sites are indexed 1-based throughout the package.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ClusterParseError

log = logging.getLogger(__name__)

MAX_SPINS = 12

_DISTINCT_TOL = 1e-9
_UNIT_TOL = 1e-12

_Z_AXIS = np.array([0.0, 0.0, 1.0])


def _pair_distances(positions):
    diffs = positions[:, None, :] - positions[None, :, :]
    dists = np.sqrt((diffs ** 2).sum(axis=-1))
    iu = np.triu_indices(len(positions), k=1)
    return dists[iu]


@dataclass(frozen=True)
class PairGeometry:
    """Spherical coordinates of the vector from spin m to spin n.

    theta is the polar angle against the field direction, phi the azimuth
    around it measured from the cluster-frame x axis, in [0, 2*pi).
    """

    r: float
    theta: float
    phi: float


@dataclass(frozen=True)
class SpinCluster:
    """Immutable arrangement of N spin-1/2 sites plus a field direction.

    Positions must already be normalized (minimal pair distance 1); use
    :func:`cluster_from_positions` or :func:`parse_cluster_config` to build
    a cluster from raw coordinates. ``scale_applied`` records the rescale
    factor those helpers used.
    """

    positions: np.ndarray
    field_direction: np.ndarray = field(default_factory=lambda: _Z_AXIS.copy())
    scale_applied: float = 1.0

    def __post_init__(self):
        pos = np.array(self.positions, dtype=float)
        fdir = np.array(self.field_direction, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 3:
            raise ValueError(f"positions must have shape (N, 3), got {pos.shape}")
        n = pos.shape[0]
        if n < 2:
            raise ValueError("a cluster needs at least 2 spins")
        if n > MAX_SPINS:
            raise ValueError(f"at most {MAX_SPINS} spins are supported, got {n}")
        if not np.all(np.isfinite(pos)):
            raise ValueError("positions contain non-finite coordinates")
        if fdir.shape != (3,):
            raise ValueError("field_direction must be a 3-vector")
        if abs(np.linalg.norm(fdir) - 1.0) > _UNIT_TOL:
            raise ValueError("field_direction must have unit norm")
        dists = _pair_distances(pos)
        if dists.min() <= _DISTINCT_TOL:
            raise ValueError("cluster contains coincident spins")
        if abs(dists.min() - 1.0) > _UNIT_TOL:
            raise ValueError(
                "nearest-neighbor distance must equal 1; "
                "use cluster_from_positions() to rescale raw coordinates"
            )
        pos.setflags(write=False)
        fdir.setflags(write=False)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "field_direction", fdir)

    @property
    def n_spins(self) -> int:
        return self.positions.shape[0]

    def pairs(self) -> list[tuple[int, int]]:
        """All 1-based site pairs (m, n) with m < n."""
        n = self.n_spins
        return [(m, k) for m in range(1, n + 1) for k in range(m + 1, n + 1)]


def cluster_from_positions(positions, field_direction=None) -> SpinCluster:
    """Build a cluster from raw coordinates, rescaling so min pair distance is 1."""
    pos = np.array(positions, dtype=float)
    if pos.ndim != 2 or pos.shape[1] != 3:
        raise ValueError(f"positions must have shape (N, 3), got {pos.shape}")
    if len(pos) < 2:
        raise ValueError("a cluster needs at least 2 spins")
    if not np.all(np.isfinite(pos)):
        raise ValueError("positions contain non-finite coordinates")
    dmin = _pair_distances(pos).min()
    if dmin <= _DISTINCT_TOL:
        raise ValueError("cluster contains coincident spins")
    if field_direction is None:
        fdir = _Z_AXIS.copy()
    else:
        fdir = np.array(field_direction, dtype=float)
        norm = np.linalg.norm(fdir)
        if fdir.shape != (3,) or norm <= _DISTINCT_TOL:
            raise ValueError("field_direction must be a nonzero 3-vector")
        fdir = fdir / norm
    return SpinCluster(positions=pos / dmin, field_direction=fdir, scale_applied=1.0 / dmin)


def build_chain(n: int) -> SpinCluster:
    """Equally spaced chain of n spins along x, perpendicular to the z field."""
    if not 2 <= n <= MAX_SPINS:
        raise ValueError(f"chain length must be in [2, {MAX_SPINS}], got {n}")
    pos = np.zeros((n, 3))
    pos[:, 0] = np.arange(n, dtype=float)
    return SpinCluster(positions=pos)


def build_circle(n: int) -> SpinCluster:
    """Regular n-gon in the xy plane with unit nearest-neighbor chord."""
    if not 3 <= n <= MAX_SPINS:
        raise ValueError(f"circle size must be in [3, {MAX_SPINS}], got {n}")
    radius = 1.0 / (2.0 * math.sin(math.pi / n))
    angles = 2.0 * math.pi * np.arange(n) / n
    pos = np.column_stack([radius * np.cos(angles), radius * np.sin(angles), np.zeros(n)])
    return SpinCluster(positions=pos)


def _check_pair(n_spins: int, m: int, n: int) -> None:
    if not (1 <= m <= n_spins and 1 <= n <= n_spins):
        raise ValueError(f"pair indices must be in [1, {n_spins}], got ({m}, {n})")
    if m == n:
        raise ValueError(f"pair indices must differ, got ({m}, {n})")


def pair_geometry(cluster: SpinCluster, m: int, n: int) -> PairGeometry:
    """Distance and field-relative angles of the vector from spin m to spin n."""
    _check_pair(cluster.n_spins, m, n)
    vec = cluster.positions[n - 1] - cluster.positions[m - 1]
    r = float(np.linalg.norm(vec))
    axis = cluster.field_direction
    cos_theta = float(np.clip(vec @ axis / r, -1.0, 1.0))
    theta = math.acos(cos_theta)
    # Azimuth frame: x axis projected perpendicular to the field, falling back
    # to y when the field is (anti)parallel to x.
    ref = np.array([1.0, 0.0, 0.0])
    if abs(ref @ axis) > 1.0 - 1e-9:
        ref = np.array([0.0, 1.0, 0.0])
    e1 = ref - (ref @ axis) * axis
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    phi = math.atan2(float(vec @ e2), float(vec @ e1)) % (2.0 * math.pi)
    return PairGeometry(r=r, theta=theta, phi=phi)


def _coordinate_triples(raw, key):
    if not isinstance(raw, list):
        raise ClusterParseError(f"'{key}' must be a list of [x, y, z] triples")
    out = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != 3:
            raise ClusterParseError(f"{key}[{i}]: expected a [x, y, z] triple")
        try:
            triple = [float(v) for v in row]
        except (TypeError, ValueError):
            raise ClusterParseError(f"{key}[{i}]: coordinates must be numbers") from None
        if not all(math.isfinite(v) for v in triple):
            raise ClusterParseError(f"{key}[{i}]: non-finite coordinate")
        out.append(triple)
    return np.array(out, dtype=float)


def parse_cluster_config(text: str) -> SpinCluster:
    """Parse a JSON cluster document with ``positions`` and optional ``field_direction``.

    Raw positions are rescaled so the minimal pair distance is 1; the applied
    factor is stored on the returned cluster and logged.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ClusterParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise ClusterParseError("top-level value must be an object")
    if "positions" not in doc:
        raise ClusterParseError("missing required key 'positions'")
    pos = _coordinate_triples(doc["positions"], "positions")
    if len(pos) < 2:
        raise ClusterParseError("a cluster needs at least 2 spins")
    if len(pos) > MAX_SPINS:
        raise ClusterParseError(f"at most {MAX_SPINS} spins are supported, got {len(pos)}")
    diffs = _pair_distances(pos)
    if diffs.min() <= _DISTINCT_TOL:
        flat = np.argmin(diffs)
        pairs = [(i, j) for i in range(len(pos)) for j in range(i + 1, len(pos))]
        i, j = pairs[flat]
        raise ClusterParseError(f"positions[{i}] and positions[{j}] coincide")
    fdir = None
    if "field_direction" in doc:
        fvec = _coordinate_triples([doc["field_direction"]], "field_direction")[0]
        if np.linalg.norm(fvec) <= _DISTINCT_TOL:
            raise ClusterParseError("field_direction: vector has (near-)zero norm")
        fdir = fvec
    cluster = cluster_from_positions(pos, field_direction=fdir)
    if abs(cluster.scale_applied - 1.0) > 1e-15:
        log.info("rescaled cluster positions by factor %.12g", cluster.scale_applied)
    return cluster


def serialize_cluster(cluster: SpinCluster) -> str:
    """JSON document that parses back to the same (already normalized) cluster."""
    doc = {
        "positions": [[float(v) for v in row] for row in cluster.positions],
        "field_direction": [float(v) for v in cluster.field_direction],
    }
    return json.dumps(doc, indent=2)
