"""Hyperplanes as points of the unit sphere and arrangements as points of its D-fold product."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Iterator, Sequence

import numpy as np

from hyperbisect.errors import DegenerateSpanError, DimensionMismatchError

NORM_TOL = 1e-12
ZERO_TOL = 1e-12
SIGN_FIX_TOL = 1e-9
DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class Hyperplane:
    """Unit coefficient vector (a_0, ..., a_n) encoding A(x) = a_0 + a_1 x_1 + ... + a_n x_n."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(value) for value in self.coeffs)
        if len(values) < 2:
            raise ValueError("A hyperplane needs at least two coefficients")
        if not all(math.isfinite(value) for value in values):
            raise ValueError("Hyperplane coefficients must be finite")
        norm = math.sqrt(math.fsum(value * value for value in values))
        if norm == 0.0:
            raise ValueError("Hyperplane coefficients cannot be the zero vector")
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"Hyperplane coefficients must have unit norm (got {norm!r})")
        object.__setattr__(self, "coeffs", values)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[float], *, normalize: bool = True) -> Hyperplane:
        """Build a hyperplane, rescaling to the unit sphere unless ``normalize`` is False."""

        vector = np.asarray(list(coeffs), dtype=float).ravel()
        if normalize:
            norm = float(np.linalg.norm(vector))
            if norm == 0.0:
                raise ValueError("Hyperplane coefficients cannot be the zero vector")
            vector = vector / norm
        return cls(tuple(vector.tolist()))

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def __neg__(self) -> Hyperplane:
        return Hyperplane(tuple(-value for value in self.coeffs))

    def lift(self, dim: int) -> Hyperplane:
        """Zero-pad the coefficients so the hyperplane lives in R^dim."""

        if dim < self.dim:
            raise DimensionMismatchError(f"Cannot lift a hyperplane of R^{self.dim} into R^{dim}")
        return Hyperplane(self.coeffs + (0.0,) * (dim - self.dim))


@dataclass(frozen=True)
class Arrangement:
    """Ordered tuple of D hyperplanes sharing an ambient dimension."""

    hyperplanes: tuple[Hyperplane, ...]

    def __post_init__(self) -> None:
        hyperplanes = tuple(self.hyperplanes)
        if not hyperplanes:
            raise ValueError("An arrangement needs at least one hyperplane")
        dims = {plane.dim for plane in hyperplanes}
        if len(dims) != 1:
            raise DimensionMismatchError(f"Hyperplanes disagree on dimension: {sorted(dims)}")
        object.__setattr__(self, "hyperplanes", hyperplanes)

    @classmethod
    def from_matrix(
        cls, matrix: np.ndarray | Sequence[Sequence[float]], *, normalize: bool = True
    ) -> Arrangement:
        rows = np.atleast_2d(np.asarray(matrix, dtype=float))
        return cls(tuple(Hyperplane.from_coeffs(row, normalize=normalize) for row in rows))

    @property
    def dim(self) -> int:
        return self.hyperplanes[0].dim

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self) -> Iterator[Hyperplane]:
        return iter(self.hyperplanes)

    def __getitem__(self, index: int) -> Hyperplane:
        return self.hyperplanes[index]

    def matrix(self) -> np.ndarray:
        """Return the D x (n+1) coefficient matrix."""

        return np.asarray([plane.coeffs for plane in self.hyperplanes], dtype=float)

    def lift(self, dim: int) -> Arrangement:
        return Arrangement(tuple(plane.lift(dim) for plane in self.hyperplanes))


@dataclass(frozen=True)
class GroupElement:
    """Element of S_D ⋉ (Z/2)^D: slot j takes input ``permutation[j]`` times ``signs[j]``."""

    permutation: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        permutation = tuple(int(index) for index in self.permutation)
        signs = tuple(int(sign) for sign in self.signs)
        if sorted(permutation) != list(range(len(permutation))):
            raise ValueError(f"Not a permutation of 0..{len(permutation) - 1}: {permutation}")
        if len(signs) != len(permutation):
            raise ValueError("signs and permutation must have the same length")
        if any(sign not in (1, -1) for sign in signs):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "permutation", permutation)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, size: int) -> GroupElement:
        return cls(tuple(range(size)), (1,) * size)

    @classmethod
    def random(cls, size: int, rng: np.random.Generator) -> GroupElement:
        permutation = tuple(int(index) for index in rng.permutation(size))
        signs = tuple(int(sign) for sign in rng.choice((-1, 1), size=size))
        return cls(permutation, signs)

    @property
    def size(self) -> int:
        return len(self.permutation)

    @property
    def sign_product(self) -> int:
        return math.prod(self.signs)


def _as_point(h_dim: int, x: Sequence[float] | np.ndarray) -> np.ndarray:
    point = np.asarray(x, dtype=float).ravel()
    if point.shape != (h_dim,):
        raise DimensionMismatchError(f"Expected a point of R^{h_dim}, got shape {point.shape}")
    return point


def _as_points(dim: int, points: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    array = np.asarray(points, dtype=float)
    if array.ndim == 1:
        array = array.reshape(1, -1)
    if array.ndim != 2 or array.shape[1] != dim:
        raise DimensionMismatchError(f"Expected points of R^{dim}, got shape {array.shape}")
    return array


def affine_eval(h: Hyperplane, x: Sequence[float] | np.ndarray) -> float:
    """Evaluate A(x) = a_0 + sum_i a_i x_i."""

    point = _as_point(h.dim, x)
    return float(h.vector[0] + h.vector[1:] @ point)


def factor_values(arr: Arrangement, points: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    """Matrix of A_j(p) with one row per point and one column per hyperplane."""

    array = _as_points(arr.dim, points)
    matrix = arr.matrix()
    return matrix[:, 0] + array @ matrix[:, 1:].T


def product_signs(arr: Arrangement, points: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    """Vectorized sign of P(x) = A_1(x)...A_D(x); zero where any factor is within ZERO_TOL of 0."""

    values = factor_values(arr, points)
    signs = np.where(np.abs(values) <= ZERO_TOL, 0, np.sign(values)).astype(int)
    return np.prod(signs, axis=1)


def product_sign(arr: Arrangement, x: Sequence[float] | np.ndarray) -> int:
    point = _as_point(arr.dim, x)
    return int(product_signs(arr, point.reshape(1, -1))[0])


def apply_group(g: GroupElement, arr: Arrangement) -> Arrangement:
    """Permute the hyperplanes and apply antipodal maps."""

    if g.size != len(arr):
        raise DimensionMismatchError(
            f"Group element acts on {g.size} hyperplanes, arrangement has {len(arr)}"
        )
    planes = []
    for sign, source in zip(g.signs, g.permutation):
        plane = arr[source]
        planes.append(plane if sign == 1 else -plane)
    return Arrangement(tuple(planes))


def _sign_fixed(plane: Hyperplane) -> Hyperplane:
    for value in plane.coeffs:
        if abs(value) > SIGN_FIX_TOL:
            return plane if value > 0 else -plane
    return plane


def _snapped(plane: Hyperplane) -> Hyperplane:
    """Zero out coordinates inside the sign-fixing band so float noise cannot reorder rows."""

    values = tuple(0.0 if abs(value) <= SIGN_FIX_TOL else value for value in plane.coeffs)
    if values == plane.coeffs:
        return plane
    return Hyperplane.from_coeffs(values)


def _compare_rows(first: Hyperplane, second: Hyperplane) -> int:
    for left, right in zip(first.coeffs, second.coeffs):
        if abs(left - right) > SIGN_FIX_TOL:
            return -1 if left < right else 1
    return 0


def canonicalize(arr: Arrangement) -> Arrangement:
    """Orbit representative: sign-fix every hyperplane, then sort rows up to SIGN_FIX_TOL."""

    fixed = sorted((_sign_fixed(_snapped(plane)) for plane in arr), key=cmp_to_key(_compare_rows))
    return Arrangement(tuple(fixed))


def is_degenerate(arr: Arrangement, tol: float = DEGENERACY_TOL) -> bool:
    """True when two hyperplanes coincide up to sign (the non-free locus)."""

    if tol <= 0:
        raise ValueError("tol must be positive")
    matrix = arr.matrix()
    for i in range(len(matrix)):
        for j in range(i + 1, len(matrix)):
            gap = min(
                np.linalg.norm(matrix[i] - matrix[j]), np.linalg.norm(matrix[i] + matrix[j])
            )
            if gap < tol:
                return True
    return False


def arrangements_close(first: Arrangement, second: Arrangement, tol: float = SIGN_FIX_TOL) -> bool:
    """Compare canonical forms coordinatewise."""

    if len(first) != len(second) or first.dim != second.dim:
        return False
    left = canonicalize(first).matrix()
    right = canonicalize(second).matrix()
    return bool(np.allclose(left, right, rtol=0.0, atol=tol))


def hyperplane_through(
    points: Sequence[Sequence[float]] | np.ndarray, *, rel_tol: float = 1e-10
) -> Hyperplane:
    """Unit hyperplane vanishing on up to n points of R^n.

    With exactly n points the points must be affinely independent; with fewer points
    the returned hyperplane is one deterministic member of the pencil through them.
    """

    array = np.atleast_2d(np.asarray(points, dtype=float))
    count, dim = array.shape
    if count == 0 or count > dim:
        raise DimensionMismatchError(f"Need between 1 and {dim} points in R^{dim}, got {count}")
    homogenized = np.hstack([np.ones((count, 1)), array])
    _, singular, vt = np.linalg.svd(homogenized)
    if count == dim and singular[-1] <= rel_tol * singular[0]:
        raise DegenerateSpanError("Points are affinely dependent; hyperplane is not unique")
    return Hyperplane.from_coeffs(vt[-1])
