"""Symmetric matrices and their deterministic eigendecomposition."""

from dataclasses import dataclass

import numpy as np

from ._backend import jacobi_eigh_batch


class InputError(ValueError):
    """Invalid user-supplied data (asymmetry, non-finite entries, shapes)."""


class SymMat:
    """Dense symmetric matrix with upper-triangle storage.

    Symmetry holds by construction: only entries with i <= j are stored, so
    the reconstructed dense matrix is exactly symmetric.
    """

    def __init__(self, n, packed):
        packed = np.asarray(packed, dtype=np.float64)
        if packed.shape != (n * (n + 1) // 2,):
            raise InputError("packed length does not match dimension")
        if not np.all(np.isfinite(packed)):
            raise InputError("matrix entries must be finite")
        self.n = int(n)
        self._packed = packed
        self._packed.setflags(write=False)
        self._dense = None

    @classmethod
    def from_dense(cls, arr, atol=0.0):
        """Build from a square array; rejects asymmetry beyond atol."""
        arr = np.asarray(arr, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputError("expected a square matrix")
        if not np.all(np.isfinite(arr)):
            raise InputError("matrix entries must be finite")
        if np.max(np.abs(arr - arr.T), initial=0.0) > atol:
            raise InputError("matrix is not symmetric")
        n = arr.shape[0]
        iu = np.triu_indices(n)
        return cls(n, arr[iu])

    @classmethod
    def from_diag(cls, values):
        values = np.asarray(values, dtype=np.float64)
        return cls.from_dense(np.diag(values))

    @classmethod
    def zero(cls, n):
        return cls(n, np.zeros(n * (n + 1) // 2))

    def dense(self):
        if self._dense is None:
            n = self.n
            out = np.zeros((n, n))
            iu = np.triu_indices(n)
            out[iu] = self._packed
            out.T[iu] = self._packed
            out.setflags(write=False)
            self._dense = out
        return self._dense

    def max_abs(self):
        """Largest entry magnitude; the tolerance scale proxy for ||X||."""
        return float(np.max(np.abs(self._packed), initial=0.0))

    def __add__(self, other):
        if not isinstance(other, SymMat) or other.n != self.n:
            return NotImplemented
        return SymMat(self.n, self._packed + other._packed)

    def __sub__(self, other):
        if not isinstance(other, SymMat) or other.n != self.n:
            return NotImplemented
        return SymMat(self.n, self._packed - other._packed)

    def __neg__(self):
        return SymMat(self.n, -self._packed)

    def __mul__(self, scalar):
        return SymMat(self.n, self._packed * float(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"SymMat(n={self.n})"


def as_symmat(X, atol=0.0):
    """Coerce an array or SymMat to SymMat."""
    if isinstance(X, SymMat):
        return X
    return SymMat.from_dense(X, atol=atol)


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with the matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)


def eigen_sorted(X):
    """Spectrum of a symmetric matrix via cyclic Jacobi.

    Deterministic for a fixed input; eigenvalues ascending.
    """
    X = as_symmat(X)
    evals, evecs = jacobi_eigh_batch(X.dense())
    return Spectrum(evals, evecs)


def eigh_batch(stack):
    """(eigenvalues, eigenvectors) for a (B, n, n) stack; ascending order."""
    stack = np.asarray(stack, dtype=np.float64)
    if not np.all(np.isfinite(stack)):
        raise InputError("matrix entries must be finite")
    return jacobi_eigh_batch(stack)
