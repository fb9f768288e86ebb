"""Pequeñas utilidades vectoriales compartidas por el núcleo geométrico."""

import numpy as np


def cross(u, v):
    """Producto vectorial escalar (determinante) sobre el último eje."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def rot90(v) -> np.ndarray:
    """Rotación de +90 grados: (x, y) -> (−y, x)."""
    v = np.asarray(v, dtype=float)
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def directions(n: int, offset: float = 0.0) -> np.ndarray:
    """`n` direcciones euclídeas unitarias equiespaciadas en [0, 2π)."""
    theta = offset + 2.0 * np.pi * np.arange(n) / n
    return np.column_stack([np.cos(theta), np.sin(theta)])


def merge_close(values, gap: float) -> list[float]:
    """Fusiona valores ordenados separados menos de `gap` (se queda con el primero)."""
    merged: list[float] = []
    for v in sorted(values):
        if not merged or v - merged[-1] >= gap:
            merged.append(float(v))
    return merged


def sign_changes(values: np.ndarray) -> np.ndarray:
    """Índices i tales que values[i] y values[i+1] tienen signo estricto opuesto."""
    s = np.sign(values)
    return np.nonzero(s[:-1] * s[1:] < 0)[0]
