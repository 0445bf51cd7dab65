"""Discrete probability measures and compact-set discretizations."""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ..linalg import InputError

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteMeasure:
    """Weighted atoms approximating a unit measure on a compact set."""

    atoms: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64)
        if atoms.ndim != 2 or weights.ndim != 1 or len(atoms) != len(weights):
            raise InputError("atoms (N, n) and weights (N,) must align")
        if np.any(weights < 0.0):
            raise InputError("weights must be non-negative")
        if abs(float(weights.sum()) - 1.0) > WEIGHT_SUM_TOL:
            raise InputError("weights must sum to 1")
        if len(atoms) > 1:
            diff = atoms[:, None, :] - atoms[None, :, :]
            dist = np.sqrt((diff * diff).sum(axis=-1))
            np.fill_diagonal(dist, np.inf)
            if float(dist.min()) <= 0.0:
                raise InputError("atoms must be pairwise distinct")
        atoms.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self):
        return self.atoms.shape[1]

    def to_json(self):
        def fmt(x):
            return float(format(x, ".17g"))

        payload = {
            "atoms": [[fmt(v) for v in a] for a in self.atoms],
            "weights": [fmt(w) for w in self.weights],
        }
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text)
        return cls(np.asarray(payload["atoms"]), np.asarray(payload["weights"]))


@dataclass(frozen=True)
class SetSpec:
    """Generator + resolution for a compact set inside B_d.

    Generators: point(location), point_cloud(points), segment(a, b),
    circle(center, radius), cantor(level, endpoints). `resolution` is the
    atom count N (cantor requires N = 2^level).
    """

    generator: str
    resolution: int
    location: tuple = ()
    points: tuple = ()
    a: tuple = ()
    b: tuple = ()
    center: tuple = ()
    radius: float = 0.0
    level: int = 0
    scale: float = 1.0
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.resolution < 1:
            raise InputError("resolution must be >= 1")
        if self.generator not in (
            "point",
            "point_cloud",
            "segment",
            "circle",
            "cantor",
        ):
            raise InputError(f"unknown generator {self.generator!r}")

    def generate(self):
        """(atoms, spacings): atom coordinates and the local regularization
        lengths used for self-energies.

        Continuum sets use half the nearest-neighbor distance; degenerate
        sets (point, point_cloud) cap it at scale/N so refinement sharpens
        the self-energy and capacity-zero sets show diverging energies.
        """
        if "atoms" in self._cache:
            return self._cache["atoms"], self._cache["spacings"]
        n_res = self.resolution
        if self.generator == "point":
            atoms = np.asarray([self.location], dtype=np.float64)
            spacings = np.full(1, self.scale / n_res)
        elif self.generator == "point_cloud":
            atoms = np.asarray(self.points, dtype=np.float64)
            spacings = np.minimum(_half_nn(atoms), self.scale / n_res)
        elif self.generator == "segment":
            if n_res < 2:
                raise InputError("segment needs at least 2 atoms")
            a = np.asarray(self.a, dtype=np.float64)
            b = np.asarray(self.b, dtype=np.float64)
            t = np.linspace(0.0, 1.0, n_res)[:, None]
            atoms = a[None, :] * (1.0 - t) + b[None, :] * t
            spacings = _half_nn(atoms)
        elif self.generator == "circle":
            if n_res < 2:
                raise InputError("circle needs at least 2 atoms")
            center = np.asarray(self.center, dtype=np.float64)
            angles = 2.0 * math.pi * np.arange(n_res) / n_res
            ring = np.stack(
                [np.cos(angles), np.sin(angles)], axis=1
            ) * self.radius
            if center.shape[0] > 2:
                pad = np.zeros((n_res, center.shape[0] - 2))
                ring = np.hstack([ring, pad])
            atoms = center[None, :] + ring
            spacings = _half_nn(atoms)
        else:  # cantor
            if n_res != 2**self.level:
                raise InputError("cantor resolution must equal 2^level")
            a = np.asarray(self.a, dtype=np.float64)
            b = np.asarray(self.b, dtype=np.float64)
            intervals = [(0.0, 1.0)]
            for _ in range(self.level):
                nxt = []
                for lo, hi in intervals:
                    third = (hi - lo) / 3.0
                    nxt.append((lo, lo + third))
                    nxt.append((hi - third, hi))
                intervals = nxt
            mids = np.asarray([(lo + hi) / 2.0 for lo, hi in intervals])
            atoms = a[None, :] + mids[:, None] * (b - a)[None, :]
            seg_len = np.linalg.norm(b - a) / 3.0**self.level
            spacings = np.full(len(atoms), seg_len / 2.0)
        self._cache["atoms"] = atoms
        self._cache["spacings"] = spacings
        return atoms, spacings

    def check_inside(self, d):
        atoms, _ = self.generate()
        radius = float(np.max(np.linalg.norm(atoms, axis=1), initial=0.0))
        if radius >= d:
            raise InputError("generated atoms must lie inside B_d")


def _half_nn(atoms):
    if len(atoms) < 2:
        raise InputError("need at least 2 atoms for neighbor spacing")
    diff = atoms[:, None, :] - atoms[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    np.fill_diagonal(dist, np.inf)
    nearest = dist.min(axis=1)
    if float(nearest.min()) <= 0.0:
        raise InputError("atoms must be pairwise distinct")
    return nearest / 2.0


def uniform_measure(atoms):
    atoms = np.asarray(atoms, dtype=np.float64)
    return DiscreteMeasure(atoms, np.full(len(atoms), 1.0 / len(atoms)))
