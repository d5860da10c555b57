"""Antipodal-free open covers of spheres, built and verified by sampling.

A cover set is a small predicate tree over unit vectors: open half-space
caps, latitude bands whose equatorial foot must land in a set one dimension
down, pure latitude cutoffs, and unions. Caps with threshold <= 0 are
antipodal-free exactly (strict inequality), which is what makes the sampled
verification verdicts trustworthy rather than merely probabilistic.

Latitude convention: a point x on the h-sphere has latitude
t = arcsin(x[-1]) in [-pi/2, pi/2] and, away from the poles, equatorial foot
x[:-1] normalized. Lifting a cover always appends the new coordinate last.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DEFAULT_EPSILON = 0.05
EPSILON_MAX = math.pi / 8
POLE_TOLERANCE = 1e-12
UNIT_TOLERANCE = 1e-9
POINT_NORM_TOLERANCE = 1e-12

# Latitudes probed by the structured battery, in units of the default band
# parameter: the equator, the middle of the lower overhang (-2e, -e) and the
# middle of the polar collar (3e, 4e) of a lifted cover.
BATTERY_LATITUDES = (0.0, -1.5 * DEFAULT_EPSILON, 3.5 * DEFAULT_EPSILON)


# ---------------------------------------------------------------------------
# predicate trees


@dataclass(frozen=True)
class Cap:
    """Open half-space cap {x : <x, normal> < threshold}."""

    normal: tuple[float, ...]
    threshold: float

    def __post_init__(self):
        nrm = math.sqrt(sum(c * c for c in self.normal))
        if abs(nrm - 1.0) > UNIT_TOLERANCE:
            raise ValueError(f"cap normal must be a unit vector, got norm {nrm!r}")
        if not math.isfinite(self.threshold):
            raise ValueError("cap threshold must be finite")


@dataclass(frozen=True)
class Band:
    """Points with latitude in (lower, upper) whose equatorial foot lies in base."""

    base: "CoverSet"
    lower: float
    upper: float

    def __post_init__(self):
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("band bounds must be finite")
        if not self.lower < self.upper:
            raise ValueError("band needs lower < upper")
        if not self.upper < math.pi / 2:
            raise ValueError("band upper bound must stay below the pole")


@dataclass(frozen=True)
class LatitudeAbove:
    bound: float

    def __post_init__(self):
        if not math.isfinite(self.bound):
            raise ValueError("latitude bound must be finite")


@dataclass(frozen=True)
class LatitudeBelow:
    bound: float

    def __post_init__(self):
        if not math.isfinite(self.bound):
            raise ValueError("latitude bound must be finite")


@dataclass(frozen=True)
class Union:
    parts: tuple["CoverSet", ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("union needs at least one part")


CoverSet = Cap | Band | LatitudeAbove | LatitudeBelow | Union


def required_dim(s: CoverSet) -> int | None:
    """Ambient vector length a set constrains, or None for latitude-only sets."""
    if isinstance(s, Cap):
        return len(s.normal)
    if isinstance(s, Band):
        base = required_dim(s.base)
        return None if base is None else base + 1
    if isinstance(s, Union):
        dims = {d for d in (required_dim(p) for p in s.parts) if d is not None}
        if len(dims) > 1:
            raise ValueError(f"union mixes ambient dimensions {sorted(dims)}")
        return dims.pop() if dims else None
    return None


@dataclass(frozen=True)
class Cover:
    """A finite list of cover sets on the h-sphere."""

    sphere_dim: int
    sets: tuple[CoverSet, ...]
    epsilon: float | None = None

    def __post_init__(self):
        if self.sphere_dim < 1:
            raise ValueError("covers live on spheres of dimension at least 1")
        ambient = self.sphere_dim + 1
        for i, s in enumerate(self.sets):
            d = required_dim(s)
            if d is not None and d != ambient:
                raise ValueError(
                    f"set {i} expects ambient dimension {d}, cover has {ambient}"
                )

    @property
    def n_sets(self) -> int:
        return len(self.sets)


# ---------------------------------------------------------------------------
# membership


def evaluate(s: CoverSet, pts: np.ndarray) -> np.ndarray:
    """Vectorized membership of an (m, dim) block of unit vectors in s."""
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2:
        raise ValueError("expected a 2d array of points")
    d = required_dim(s)
    if d is not None and pts.shape[1] != d:
        raise ValueError(f"points have dimension {pts.shape[1]}, set needs {d}")
    return _evaluate(s, pts)


def _evaluate(s: CoverSet, pts: np.ndarray) -> np.ndarray:
    if isinstance(s, Cap):
        return pts @ np.asarray(s.normal) < s.threshold
    if isinstance(s, LatitudeAbove):
        return _latitude(pts) > s.bound
    if isinstance(s, LatitudeBelow):
        return _latitude(pts) < s.bound
    if isinstance(s, Union):
        out = np.zeros(len(pts), dtype=bool)
        for p in s.parts:
            out |= _evaluate(p, pts)
        return out
    if isinstance(s, Band):
        t = _latitude(pts)
        lead = pts[:, :-1]
        nrm = np.linalg.norm(lead, axis=1)
        ok = (t > s.lower) & (t < s.upper) & (nrm > POLE_TOLERANCE)
        out = np.zeros(len(pts), dtype=bool)
        if ok.any():
            foot = lead[ok] / nrm[ok, None]
            out[ok] = _evaluate(s.base, foot)
        return out
    raise TypeError(f"unknown cover set node {type(s).__name__}")


def _latitude(pts: np.ndarray) -> np.ndarray:
    return np.arcsin(np.clip(pts[:, -1], -1.0, 1.0))


def membership(s: CoverSet, x) -> bool:
    """Membership of a single point, with dimension checking."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError("expected a single coordinate vector")
    return bool(evaluate(s, arr[None, :])[0])


def unit_point(coords) -> np.ndarray:
    """Validate a coordinate vector as a sphere point (norm within 1e-12)."""
    arr = np.asarray(coords, dtype=float)
    nrm = float(np.linalg.norm(arr))
    if abs(nrm - 1.0) > POINT_NORM_TOLERANCE:
        raise ValueError(f"point norm {nrm!r} is not within {POINT_NORM_TOLERANCE} of 1")
    return arr


# ---------------------------------------------------------------------------
# constructions


def regular_simplex_vertices(h: int) -> np.ndarray:
    """Vertices of a regular simplex inscribed in the h-sphere.

    Returns h+2 unit vectors with pairwise inner product -1/(h+1) and zero
    vector sum: the standard basis of R^(h+2) recentred at its centroid and
    rotated into the first h+1 coordinates by a Householder reflection.
    """
    if h < 1:
        raise ValueError("need sphere dimension at least 1")
    n = h + 2
    centered = np.eye(n) - 1.0 / n
    u = np.full(n, 1.0 / math.sqrt(n))
    u = u - np.eye(n)[n - 1]
    u /= np.linalg.norm(u)
    reflected = centered - 2.0 * np.outer(centered @ u, u)
    coords = reflected[:, : n - 1]
    return coords / np.linalg.norm(coords, axis=1, keepdims=True)


def cap_cover(h: int) -> Cover:
    """The h+2 open caps opposite the vertices of an inscribed regular simplex.

    Each cap is {x : <x, w_i> < 0}. Strict inequality makes the sets exactly
    antipodal-free; the zero vertex sum forces both coverage and the
    multiplicity ceiling h+1.
    """
    w = regular_simplex_vertices(h)
    sets = tuple(Cap(normal=tuple(float(c) for c in row), threshold=0.0) for row in w)
    return Cover(sphere_dim=h, sets=sets, epsilon=None)


def lift_cover(U: Cover, epsilon: float) -> Cover:
    """Lift an n-set cover of the h-sphere to an (n+1)-set cover one dimension up.

    Every base set becomes a meridian band reaching 4*epsilon above and
    2*epsilon below the equator; the last band also absorbs the open polar
    cap above latitude 3*epsilon, and a fresh set takes everything below
    latitude -epsilon. If no base point lies in more than l sets, no lifted
    point lies in more than l+1, and antipodal-freeness is preserved.

    The caller must supply an antipodal-free U; that property is not
    re-checked here.
    """
    if not 0.0 < epsilon < EPSILON_MAX:
        raise ValueError(f"epsilon must lie in (0, pi/8), got {epsilon!r}")
    bands = [Band(base=s, lower=-2.0 * epsilon, upper=4.0 * epsilon) for s in U.sets]
    sets = tuple(bands[:-1]) + (
        Union(parts=(bands[-1], LatitudeAbove(bound=3.0 * epsilon))),
        LatitudeBelow(bound=-epsilon),
    )
    return Cover(sphere_dim=U.sphere_dim + 1, sets=sets, epsilon=epsilon)


def lift_chain(h: int, epsilon: float = DEFAULT_EPSILON) -> list[Cover]:
    """The covers obtained by lifting the three-cap circle cover up to dimension h."""
    if h < 1:
        raise ValueError("need sphere dimension at least 1")
    covers = [cap_cover(1)]
    while covers[-1].sphere_dim < h:
        covers.append(lift_cover(covers[-1], epsilon))
    return covers


def embed_in_equator(e: np.ndarray, t: float) -> np.ndarray:
    """The point of the (h+1)-sphere at latitude t above foot e on the h-sphere."""
    return np.concatenate([math.cos(t) * np.asarray(e, dtype=float), [math.sin(t)]])


# ---------------------------------------------------------------------------
# sampling


def structured_battery(h: int) -> np.ndarray:
    """Deterministic probe points for the h-sphere.

    Contains the signed coordinate axes (the poles of every lifting level),
    the inscribed-simplex vertices with their antipodes and normalized pair
    midpoints, and recursive equatorial embeds of the battery one dimension
    down at the latitudes a default-parameter lift cares about. The last
    ingredient pushes sampled multiplicity maxima of lifted covers up to the
    exact ceiling instead of leaving them to chance.
    """
    if h < 1:
        raise ValueError("need sphere dimension at least 1")
    points: list[np.ndarray] = []
    seen: set[bytes] = set()

    def add(p: np.ndarray) -> None:
        arr = np.asarray(p, dtype=float)
        arr = arr / np.linalg.norm(arr)
        key = arr.tobytes()
        if key not in seen:
            seen.add(key)
            points.append(arr)

    eye = np.eye(h + 1)
    for i in range(h + 1):
        add(eye[i])
        add(-eye[i])
    w = regular_simplex_vertices(h)
    for row in w:
        add(row)
        add(-row)
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            add(w[i] + w[j])
    if h >= 2:
        for p in structured_battery(h - 1):
            for t in BATTERY_LATITUDES:
                add(embed_in_equator(p, t))
    return np.array(points)


@dataclass(frozen=True, eq=False)
class Samples:
    """An ordered block of antipodal pairs: battery pairs first, then random."""

    sphere_dim: int
    pairs: np.ndarray  # shape (P, 2, sphere_dim + 1)
    n_battery: int
    n_random: int
    seed: int

    @property
    def n_pairs(self) -> int:
        return int(self.pairs.shape[0])

    def flat(self) -> np.ndarray:
        return self.pairs.reshape(-1, self.pairs.shape[2])


def sample_sphere(h: int, count: int, seed: int) -> Samples:
    """count seeded Gaussian-normalized antipodal pairs plus the structured battery."""
    if h < 1:
        raise ValueError("need sphere dimension at least 1")
    if count < 1:
        raise ValueError("need at least one random pair")
    battery = structured_battery(h)
    battery_pairs: list[np.ndarray] = []
    seen: set[bytes] = set()
    for p in battery:
        key = max(p.tobytes(), (-p).tobytes())
        if key not in seen:
            seen.add(key)
            battery_pairs.append(np.stack([p, -p]))
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((count, h + 1))
    norms = np.linalg.norm(pts, axis=1)
    while (bad := norms < 1e-8).any():
        pts[bad] = rng.standard_normal((int(bad.sum()), h + 1))
        norms = np.linalg.norm(pts, axis=1)
    pts /= norms[:, None]
    random_pairs = np.stack([pts, -pts], axis=1)
    pairs = np.concatenate([np.array(battery_pairs), random_pairs])
    return Samples(
        sphere_dim=h,
        pairs=pairs,
        n_battery=len(battery_pairs),
        n_random=count,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class SampleReport:
    """Deterministic verdict of a sampled cover check.

    Witnesses are re-evaluated before the report is returned, so a report
    never claims a property its own witness fails to reproduce.
    """

    sphere_dim: int
    n_sets: int
    samples_used: int
    n_battery: int
    n_random: int
    seed: int
    covered: bool
    uncovered_witness: tuple[float, ...] | None
    antipodal_free: bool
    antipodal_witness: tuple[float, ...] | None
    antipodal_set_index: int | None
    max_multiplicity: int
    multiplicity_witness: tuple[float, ...]
    multiplicity_counts: tuple[tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return self.covered and self.antipodal_free

    def to_dict(self) -> dict:
        return {
            "sphere_dim": self.sphere_dim,
            "n_sets": self.n_sets,
            "samples_used": self.samples_used,
            "n_battery": self.n_battery,
            "n_random": self.n_random,
            "seed": self.seed,
            "covered": self.covered,
            "uncovered_witness": _coords_or_none(self.uncovered_witness),
            "antipodal_free": self.antipodal_free,
            "antipodal_witness": _coords_or_none(self.antipodal_witness),
            "antipodal_set_index": self.antipodal_set_index,
            "max_multiplicity": self.max_multiplicity,
            "multiplicity_witness": list(self.multiplicity_witness),
            "multiplicity_counts": [list(pair) for pair in self.multiplicity_counts],
        }


def _coords_or_none(c):
    return None if c is None else list(c)


def _membership_matrix(C: Cover, flat: np.ndarray) -> np.ndarray:
    return np.column_stack([evaluate(s, flat) for s in C.sets])


def verify_cover(C: Cover, samples: Samples) -> SampleReport:
    """Check coverage, antipodal-freeness and multiplicity over the samples."""
    if samples.sphere_dim != C.sphere_dim:
        raise ValueError(
            f"samples live on dimension {samples.sphere_dim}, cover on {C.sphere_dim}"
        )
    flat = samples.flat()
    members = _membership_matrix(C, flat)
    mult = members.sum(axis=1)

    uncovered_witness = None
    holes = np.nonzero(mult == 0)[0]
    if holes.size:
        uncovered_witness = tuple(float(v) for v in flat[holes[0]])

    antipodal_witness = None
    antipodal_set = None
    both = members[0::2] & members[1::2]
    bad_pairs = np.nonzero(both.any(axis=1))[0]
    if bad_pairs.size:
        i = int(bad_pairs[0])
        antipodal_set = int(np.nonzero(both[i])[0][0])
        antipodal_witness = tuple(float(v) for v in samples.pairs[i, 0])

    top = int(mult.max()) if len(mult) else 0
    mult_witness = tuple(float(v) for v in flat[int(np.argmax(mult))])
    values, freqs = np.unique(mult, return_counts=True)
    counts = tuple((int(v), int(f)) for v, f in zip(values, freqs))

    report = SampleReport(
        sphere_dim=C.sphere_dim,
        n_sets=C.n_sets,
        samples_used=samples.n_pairs,
        n_battery=samples.n_battery,
        n_random=samples.n_random,
        seed=samples.seed,
        covered=uncovered_witness is None,
        uncovered_witness=uncovered_witness,
        antipodal_free=antipodal_witness is None,
        antipodal_witness=antipodal_witness,
        antipodal_set_index=antipodal_set,
        max_multiplicity=top,
        multiplicity_witness=mult_witness,
        multiplicity_counts=counts,
    )
    _check_witnesses(C, report)
    return report


def _check_witnesses(C: Cover, r: SampleReport) -> None:
    if r.uncovered_witness is not None:
        if any(membership(s, r.uncovered_witness) for s in C.sets):
            raise AssertionError("uncovered witness is actually covered")
    if r.antipodal_witness is not None:
        s = C.sets[r.antipodal_set_index]
        x = np.asarray(r.antipodal_witness)
        if not (membership(s, x) and membership(s, -x)):
            raise AssertionError("antipodal witness does not violate")
    got = sum(membership(s, r.multiplicity_witness) for s in C.sets)
    if got != r.max_multiplicity:
        raise AssertionError("multiplicity witness does not reproduce the maximum")


@dataclass(frozen=True)
class EmpiricalNerve:
    """Nerve faces witnessed by common sample points, closed downward."""

    n_vertices: int
    faces: tuple[tuple[int, ...], ...]
    dimension: int

    def to_dict(self) -> dict:
        return {
            "n_vertices": self.n_vertices,
            "dimension": self.dimension,
            "n_faces": len(self.faces),
            "faces": [list(f) for f in self.faces],
        }


def empirical_nerve(C: Cover, samples: Samples) -> EmpiricalNerve:
    """Downward-closed family of index sets witnessed by at least one sample."""
    if samples.sphere_dim != C.sphere_dim:
        raise ValueError("sample dimension does not match the cover")
    members = _membership_matrix(C, samples.flat())
    signatures = {
        tuple(np.nonzero(row)[0].tolist()) for row in members if row.any()
    }
    faces: set[tuple[int, ...]] = set()
    for sig in signatures:
        n = len(sig)
        for mask in range(1, 1 << n):
            faces.add(tuple(sig[i] for i in range(n) if mask >> i & 1))
    ordered = sorted(faces, key=lambda f: (len(f), f))
    dim = max((len(f) for f in ordered), default=0) - 1
    return EmpiricalNerve(n_vertices=C.n_sets, faces=tuple(ordered), dimension=dim)


# ---------------------------------------------------------------------------
# cover files


def coverset_to_dict(s: CoverSet) -> dict:
    if isinstance(s, Cap):
        return {"kind": "cap", "normal": list(s.normal), "threshold": s.threshold}
    if isinstance(s, Band):
        return {
            "kind": "band",
            "base": coverset_to_dict(s.base),
            "lower": s.lower,
            "upper": s.upper,
        }
    if isinstance(s, LatitudeAbove):
        return {"kind": "latitude_above", "bound": s.bound}
    if isinstance(s, LatitudeBelow):
        return {"kind": "latitude_below", "bound": s.bound}
    if isinstance(s, Union):
        return {"kind": "union", "parts": [coverset_to_dict(p) for p in s.parts]}
    raise TypeError(f"unknown cover set node {type(s).__name__}")


def coverset_from_dict(d: dict) -> CoverSet:
    if not isinstance(d, dict) or "kind" not in d:
        raise ValueError("cover set node must be an object with a 'kind' field")
    kind = d["kind"]
    try:
        if kind == "cap":
            return Cap(normal=tuple(float(v) for v in d["normal"]),
                       threshold=float(d["threshold"]))
        if kind == "band":
            return Band(base=coverset_from_dict(d["base"]),
                        lower=float(d["lower"]), upper=float(d["upper"]))
        if kind == "latitude_above":
            return LatitudeAbove(bound=float(d["bound"]))
        if kind == "latitude_below":
            return LatitudeBelow(bound=float(d["bound"]))
        if kind == "union":
            return Union(parts=tuple(coverset_from_dict(p) for p in d["parts"]))
    except KeyError as exc:
        raise ValueError(f"cover set node of kind {kind!r} misses field {exc}") from exc
    raise ValueError(f"unknown cover set kind {kind!r}")


def cover_to_dict(C: Cover) -> dict:
    doc: dict = {"sphere_dim": C.sphere_dim, "sets": [coverset_to_dict(s) for s in C.sets]}
    if C.epsilon is not None:
        doc["epsilon"] = C.epsilon
    return doc


def cover_from_dict(d: dict) -> Cover:
    if not isinstance(d, dict):
        raise ValueError("cover document must be an object")
    try:
        sphere_dim = int(d["sphere_dim"])
        sets = tuple(coverset_from_dict(s) for s in d["sets"])
    except KeyError as exc:
        raise ValueError(f"cover document misses field {exc}") from exc
    epsilon = float(d["epsilon"]) if "epsilon" in d else None
    return Cover(sphere_dim=sphere_dim, sets=sets, epsilon=epsilon)


def save_cover(C: Cover, path) -> None:
    Path(path).write_text(json.dumps(cover_to_dict(C), indent=2, sort_keys=True) + "\n")


def load_cover(path) -> Cover:
    return cover_from_dict(json.loads(Path(path).read_text()))
