#!/usr/bin/env python
# Created by "Thieu" at 09:31, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import numpy as np
import tancert.utils.constant as co
from tancert.utils.exception import InputError


def format_vector(x, n=None, name="x"):
    """
    Convert x into a finite 1D float array, optionally checking its dimension.

    Args:
        x (tuple, list, np.ndarray, float): The point or direction
        n (int, optional): Expected dimension
        name (str): Name used in error messages

    Returns:
        np.ndarray: 1D float array
    """
    if isinstance(x, (int, float, np.number)) and not isinstance(x, bool):
        x = [x]
    if not isinstance(x, co.SUPPORTED_LIST):
        raise TypeError(f"{name} must be a list, tuple or numpy array, got {type(x).__name__}.")
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size == 0:
        raise InputError(f"{name} must not be empty.")
    if not np.all(np.isfinite(x)):
        raise InputError(f"{name} has non-finite entries: {x.tolist()}")
    if n is not None and x.size != n:
        raise InputError(f"{name} has dimension {x.size}, expected {n}.")
    return x


def format_matrix(X, n=None, name="X", allow_empty=True):
    """
    Convert X into a finite 2D float array whose rows live in R^n.

    Args:
        X (tuple, list, np.ndarray): Rows of vectors
        n (int, optional): Expected number of columns (needed when X is empty)
        name (str): Name used in error messages
        allow_empty (bool): Accept zero rows

    Returns:
        np.ndarray: Array with shape (k, n)
    """
    if not isinstance(X, co.SUPPORTED_LIST):
        raise TypeError(f"{name} must be a list, tuple or numpy array, got {type(X).__name__}.")
    X = np.asarray(X, dtype=float)
    if X.size == 0:
        if not allow_empty:
            raise InputError(f"{name} must not be empty.")
        if n is None:
            raise InputError(f"{name} is empty and no dimension was given.")
        return np.zeros((0, n))
    if X.ndim == 1:
        X = X.reshape(1, -1) if n is None or X.size == n else X.reshape(-1, 1)
    if X.ndim != 2:
        raise InputError(f"{name} must be a 2D array, got {X.ndim} dimensions.")
    if not np.all(np.isfinite(X)):
        raise InputError(f"{name} has non-finite entries.")
    if n is not None and X.shape[1] != n:
        raise InputError(f"{name} rows have dimension {X.shape[1]}, expected {n}.")
    return X


def parse_point_text(text, n=None, name="--x"):
    """Parse a comma-joined list of decimals such as "0,-1.5"."""
    try:
        values = [float(item) for item in str(text).split(",") if item.strip() != ""]
    except ValueError:
        raise InputError(f"{name} must be comma-separated decimals, got {text!r}.")
    return format_vector(values, n, name)


def point_key(x):
    """Comma-joined decimal key of a point, the format used by instance files."""
    return ",".join(repr(float(v)) for v in np.asarray(x, dtype=float).reshape(-1))


def normalize_rows(X, tol=co.TOL_DEDUP):
    """Scale rows to unit length and drop rows with norm <= tol."""
    X = np.asarray(X, dtype=float)
    if X.size == 0:
        return X.reshape(0, X.shape[-1] if X.ndim == 2 else 0)
    norms = np.linalg.norm(X, axis=1)
    keep = norms > tol
    return X[keep] / norms[keep, None]


def unique_rows(X, tol=co.TOL_DEDUP):
    """Keep the first of every group of rows closer than tol (max-norm), preserving order."""
    kept = []
    for row in X:
        if all(np.max(np.abs(row - other)) > tol for other in kept):
            kept.append(row)
    if not kept:
        return np.zeros((0, X.shape[1]))
    return np.vstack(kept)


def unit_directions(n, n_dirs=None):
    """
    Deterministic unit directions: +-1 in R^1, equally spaced angles in R^2, a Fibonacci sphere in R^3.

    Args:
        n (int): Dimension, 1 <= n <= 3
        n_dirs (int, optional): Number of directions (default 360 in R^2, 500 in R^3)

    Returns:
        np.ndarray: Array with shape (n_dirs, n)
    """
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        k = co.N_DIRS_2D if n_dirs is None else int(n_dirs)
        theta = 2 * np.pi * np.arange(k) / k
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if n == 3:
        k = co.N_DIRS_3D if n_dirs is None else int(n_dirs)
        idx = np.arange(k) + 0.5
        z = 1 - 2 * idx / k
        r = np.sqrt(np.clip(1 - z ** 2, 0, None))
        phi = np.pi * (1 + 5 ** 0.5) * idx
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    raise InputError(f"Direction sampling supports dimensions 1..3, got {n}.")


def random_unit_vectors(rng, k, n):
    """k uniformly distributed unit vectors in R^n drawn from rng."""
    V = rng.normal(size=(k, n))
    norms = np.linalg.norm(V, axis=1)
    norms[norms == 0] = 1.0
    return V / norms[:, None]
