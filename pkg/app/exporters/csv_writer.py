"""
Curvas en CSV: una fila `x,y` por punto y una línea en blanco entre curvas.
Las curvas cerradas repiten su primer punto al final.
"""

import csv
import io
from pathlib import Path
from typing import Iterable, Union
from app.models.curve import PolyCurve


def fmt(value: float) -> str:
    """17 cifras significativas: suficiente para recuperar el mismo float."""
    return format(float(value), ".17g")


def curves_to_csv(curves: Iterable[PolyCurve]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for k, curve in enumerate(curves):
        if k:
            writer.writerow([])
        points = list(curve.points)
        if curve.closed and points:
            points.append(points[0])
        writer.writerows([fmt(x), fmt(y)] for x, y in points)
    return buffer.getvalue()


def write_csv(path: Union[str, Path], curves: Iterable[PolyCurve]) -> None:
    Path(path).write_text(curves_to_csv(curves), encoding="utf-8")
