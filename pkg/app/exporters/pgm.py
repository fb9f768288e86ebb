"""
Rejillas de ocupación en PGM ASCII (P2).
- Valor de gris = código de pertenencia (0 Interior, 1 On, 2 Exterior), maxval 2.
- La primera fila escrita es la de y máxima.
"""

from pathlib import Path
from typing import Union
from app.models.curve import OccupancyGrid

VALUES_PER_LINE = 30  # las líneas de un PGM no deben pasar de 70 caracteres


def grid_to_pgm(grid: OccupancyGrid, comment: str = "") -> str:
    ny, nx = grid.shape
    xmin, ymin, xmax, ymax = grid.bbox
    lines = ["P2"]
    if comment:
        lines.append("# " + " ".join(comment.split()))
    lines.append(f"# bbox {xmin:.17g} {ymin:.17g} {xmax:.17g} {ymax:.17g}")
    lines.append(f"{nx} {ny}")
    lines.append("2")
    for row in grid.codes[::-1]:
        values = [str(int(v)) for v in row]
        for start in range(0, nx, VALUES_PER_LINE):
            lines.append(" ".join(values[start:start + VALUES_PER_LINE]))
    return "\n".join(lines) + "\n"


def write_pgm(path: Union[str, Path], grid: OccupancyGrid, comment: str = "") -> None:
    Path(path).write_text(grid_to_pgm(grid, comment), encoding="utf-8")
