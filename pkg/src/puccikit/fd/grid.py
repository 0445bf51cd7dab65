"""Masked 2-D lattices over disks, annuli and rectangles.

A node is interior when every stencil arm endpoint stays inside the
domain; inside nodes that fail this are the boundary band and carry
Dirichlet data evaluated at their own coordinates.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..linalg import InputError

OUTSIDE, INTERIOR, BOUNDARY = 0, 1, 2


@dataclass(frozen=True)
class Disk:
    delta: float

    def inside(self, x, y):
        return x * x + y * y < self.delta * self.delta

    @property
    def circumradius(self):
        return self.delta

    @property
    def bbox(self):
        d = self.delta
        return (-d, d, -d, d)


@dataclass(frozen=True)
class Annulus:
    r_in: float
    r_out: float

    def inside(self, x, y):
        r2 = x * x + y * y
        return (r2 > self.r_in * self.r_in) & (r2 < self.r_out * self.r_out)

    @property
    def circumradius(self):
        return self.r_out

    @property
    def bbox(self):
        d = self.r_out
        return (-d, d, -d, d)


@dataclass(frozen=True)
class Rectangle:
    x0: float
    x1: float
    y0: float
    y1: float

    def inside(self, x, y):
        return (
            (x > self.x0) & (x < self.x1) & (y > self.y0) & (y < self.y1)
        )

    @property
    def circumradius(self):
        return max(
            math.hypot(x, y)
            for x in (self.x0, self.x1)
            for y in (self.y0, self.y1)
        )

    @property
    def bbox(self):
        return (self.x0, self.x1, self.y0, self.y1)


class Grid2D:
    """Lattice nodes with interior/boundary/outside flags.

    Every interior node has all stencil arm endpoints on interior or
    boundary nodes by construction.
    """

    def __init__(self, domain, h, stencil, boundary_fn=None, exclude=()):
        if h <= 0.0:
            raise InputError("spacing must be positive")
        self.domain = domain
        self.h = float(h)
        self.stencil = stencil
        x0, x1, y0, y1 = domain.bbox
        imin = math.floor(x0 / h) - 1
        imax = math.ceil(x1 / h) + 1
        jmin = math.floor(y0 / h) - 1
        jmax = math.ceil(y1 / h) + 1
        self.imin, self.jmin = imin, jmin
        self.nx = imax - imin + 1
        self.ny = jmax - jmin + 1
        ii = np.arange(imin, imax + 1)
        jj = np.arange(jmin, jmax + 1)
        self.xs = ii[:, None] * self.h * np.ones((1, self.ny))
        self.ys = np.ones((self.nx, 1)) * (jj[None, :] * self.h)
        inside = domain.inside(self.xs, self.ys)
        for i, j in exclude:
            inside[i - imin, j - jmin] = False
        interior = inside.copy()
        for dx, dy in stencil.full_arms:
            interior &= _shifted(inside, dx, dy)
        boundary = inside & ~interior
        self.mask = np.zeros((self.nx, self.ny), dtype=np.int8)
        self.mask[interior] = INTERIOR
        self.mask[boundary] = BOUNDARY
        self.mask_flat = self.mask.reshape(-1)
        self.interior_flat = np.flatnonzero(self.mask_flat == INTERIOR)
        self.boundary_flat = np.flatnonzero(self.mask_flat == BOUNDARY)
        if self.interior_flat.size == 0:
            raise InputError("grid has no interior nodes; refine h")
        self.values = np.zeros(self.nx * self.ny)
        if boundary_fn is not None:
            bx = self.xs.reshape(-1)[self.boundary_flat]
            by = self.ys.reshape(-1)[self.boundary_flat]
            self.values[self.boundary_flat] = [
                float(boundary_fn(x, y)) for x, y in zip(bx, by)
            ]
        if not np.all(np.isfinite(self.values)):
            raise InputError("boundary values must be finite")

    def flat_index(self, i, j):
        """Flat index of lattice node (i, j) in lattice coordinates."""
        return (i - self.imin) * self.ny + (j - self.jmin)

    def lattice_coords(self, flat):
        i, j = divmod(int(flat), self.ny)
        return i + self.imin, j + self.jmin

    def node_xy(self, flat):
        i, j = divmod(int(flat), self.ny)
        return self.xs[i, j], self.ys[i, j]

    def nearest_node(self, x, y, kind=None):
        """Flat index of the nearest node, optionally of a given mask kind."""
        if kind is None:
            cand = np.flatnonzero(self.mask_flat != OUTSIDE)
        else:
            cand = np.flatnonzero(self.mask_flat == kind)
        cx = self.xs.reshape(-1)[cand]
        cy = self.ys.reshape(-1)[cand]
        k = int(np.argmin((cx - x) ** 2 + (cy - y) ** 2))
        return int(cand[k])

    def build_tables(self):
        """Gather tables consumed by the sweep kernels."""
        ny = self.ny
        center = self.interior_flat.astype(np.intp)
        arms = self.stencil.arms
        na = len(arms)
        nb_plus = np.empty((na, center.size), dtype=np.intp)
        nb_minus = np.empty((na, center.size), dtype=np.intp)
        for a, (dx, dy) in enumerate(arms):
            off = dx * ny + dy
            nb_plus[a] = center + off
            nb_minus[a] = center - off
            if np.any(self.mask_flat[nb_plus[a]] == OUTSIDE) or np.any(
                self.mask_flat[nb_minus[a]] == OUTSIDE
            ):
                raise InputError("stencil arm leaves the masked domain")
        lengths = np.asarray(self.stencil.lengths)
        pairs = self.stencil.pairs
        return {
            "center": center,
            "nb_plus": nb_plus,
            "nb_minus": nb_minus,
            "inv_len2": 1.0 / (lengths * self.h) ** 2,
            "inv_len": 1.0 / (lengths * self.h),
            "pairs": np.asarray(pairs, dtype=np.intp) if pairs else None,
        }

    def interior_xy(self):
        fx = self.xs.reshape(-1)[self.interior_flat]
        fy = self.ys.reshape(-1)[self.interior_flat]
        return fx, fy


def _shifted(inside, dx, dy):
    """Boolean array: node (i, j) has its (i+dx, j+dy) neighbor inside."""
    out = np.zeros_like(inside)
    nx, ny = inside.shape
    xs = slice(max(0, -dx), min(nx, nx - dx))
    xt = slice(max(0, dx), min(nx, nx + dx))
    ys = slice(max(0, -dy), min(ny, ny - dy))
    yt = slice(max(0, dy), min(ny, ny + dy))
    out[xs, ys] = inside[xt, yt]
    return out


@dataclass
class GridField:
    """Node values attached to a grid (the solver's field type)."""

    grid: Grid2D
    values: np.ndarray

    def interior_values(self):
        return self.values[self.grid.interior_flat]

    def boundary_values(self):
        return self.values[self.grid.boundary_flat]

    def interior_max(self):
        return float(self.interior_values().max())

    def boundary_max(self):
        return float(self.boundary_values().max())

    def value_at(self, flat):
        return float(self.values[flat])

    def to_csv(self, path):
        grid = self.grid
        xs = grid.xs.reshape(-1)
        ys = grid.ys.reshape(-1)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("x,y,value,mask\n")
            for flat in np.flatnonzero(grid.mask_flat != OUTSIDE):
                fh.write(
                    f"{format(xs[flat], '.17g')},{format(ys[flat], '.17g')},"
                    f"{format(self.values[flat], '.17g')},"
                    f"{int(grid.mask_flat[flat])}\n"
                )
