"""
Utilidades compartidas por los comandos de la CLI: descriptores de bola,
carga de escenas y traducción de errores a códigos de salida.
"""

from contextlib import contextmanager
from pathlib import Path
from typing import List, Sequence, Tuple, Union
import orjson
import typer
from pydantic import ValidationError
from rich.console import Console
from app.exceptions import ConicsError, InvalidBallError, SceneError
from app.geometry.loci import validate_spec
from app.models.ball import INF, LpBall, PolygonBall, UnitBall
from app.models.conic import ConicSpec
from app.schemas.report import ClaimReport
from app.schemas.scene import Scene
from app.utils.validation import normalize_descriptor

err_console = Console(stderr=True)

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2


def _floats(text: str, what: str) -> List[float]:
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise InvalidBallError(f"Coordenadas no válidas en {what}: '{text}'")


def parse_ball(descriptor: str) -> UnitBall:
    """
    Interpreta un descriptor de bola de la línea de órdenes.
    - `lp:<p>` y `lp:inf`
    - `polygon:x1,y1;x2,y2;...` (vértices en sentido antihorario, simétricos)
    - `regular:<n>` y `random:<n>:<seed>`
    """
    text = normalize_descriptor(descriptor)
    kind, _, rest = text.partition(":")
    try:
        if kind == "lp":
            return LpBall(INF if rest == "inf" else float(rest))
        if kind == "polygon":
            vertices = []
            for pair in rest.split(";"):
                xy = _floats(pair, "polygon")
                if len(xy) != 2:
                    raise InvalidBallError(f"Cada vértice necesita dos coordenadas: '{pair}'")
                vertices.append(tuple(xy))
            return PolygonBall(tuple(vertices))
        if kind == "regular":
            return PolygonBall.regular(int(rest))
        if kind == "random":
            n, _, seed = rest.partition(":")
            return PolygonBall.random(int(n), seed=int(seed) if seed else None)
    except ValueError:
        raise InvalidBallError(f"Descriptor de bola no válido: '{descriptor}'")
    raise InvalidBallError(
        f"Tipo de bola desconocido '{kind}'. Use lp:<p>, lp:inf, polygon:..., regular:<n> o random:<n>:<seed>"
    )


def load_scene(path: Union[str, Path]) -> Scene:
    """Lee y valida una escena JSON; los errores indican línea/columna o campo."""
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise SceneError(e.strerror or str(e), str(path))
    try:
        data = orjson.loads(raw)
    except orjson.JSONDecodeError as e:
        raise SceneError(e.msg, f"{path}:{e.lineno}:{e.colno}")
    try:
        return Scene.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<raíz>"
        raise SceneError(first["msg"], f"{path}: campo {field}")


def scene_models(scene: Scene) -> Tuple[UnitBall, List[ConicSpec]]:
    """Convierte la escena en modelos del dominio y valida cada cónica con la bola."""
    try:
        B = scene.ball.to_model()
    except ConicsError as e:
        raise SceneError(e.detail, "ball")
    specs = []
    for k, fragment in enumerate(scene.specs):
        try:
            spec = fragment.to_model()
            validate_spec(B, spec)
        except ConicsError as e:
            raise SceneError(e.detail, f"specs[{k}]")
        specs.append(spec)
    return B, specs


@contextmanager
def cli_errors():
    """Traduce los errores conocidos a un diagnóstico en stderr y al código de salida 2."""
    try:
        yield
    except ConicsError as e:
        err_console.print(f"[bold red]Error:[/bold red] {e.detail}")
        raise typer.Exit(code=e.exit_code)
    except ValidationError as e:
        err_console.print(f"[bold red]Error de validación:[/bold red] {e}")
        raise typer.Exit(code=EXIT_USAGE)
    except orjson.JSONDecodeError as e:
        err_console.print(f"[bold red]JSON no válido:[/bold red] línea {e.lineno}, columna {e.colno}: {e.msg}")
        raise typer.Exit(code=EXIT_USAGE)
    except OSError as e:
        err_console.print(f"[bold red]Error de E/S:[/bold red] {e}")
        raise typer.Exit(code=EXIT_USAGE)


def claims_exit_code(reports: Sequence[ClaimReport]) -> int:
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CLAIM_FAILED
