from pathlib import Path
from typing import Optional
import typer
from rich.console import Console
from rich.table import Table
from app.dependencies import claims_exit_code, cli_errors, parse_ball
from app.exporters.json_writer import reports_to_json
from app.utils.logging import get_logger
from app.verify.suites import parse_claims, run_claims

logger = get_logger(__name__)
console = Console(stderr=True)


def verify_claims(
    claims: str = typer.Option("all", "--claims", help="Lista separada por comas o 'all'"),
    ball: str = typer.Option(..., "--ball", help="lp:<p>, lp:inf, polygon:..., regular:<n>, random:<n>:<seed>"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Semilla de las configuraciones aleatorias"),
    json_out: Optional[Path] = typer.Option(None, "--json", help="Informe JSON (por defecto, salida estándar)"),
):
    """
    Ejecuta las comprobaciones pedidas.
    - Código 0 si todas se cumplen, 1 si alguna falla, 2 si la entrada no es válida.
    """
    with cli_errors():
        B = parse_ball(ball)
        reports = run_claims(B, parse_claims(claims), seed)
        payload = reports_to_json(reports)
        if json_out:
            json_out.write_bytes(payload)
        else:
            typer.echo(payload.decode("utf-8"), nl=False)

    table = Table(title=f"Comprobaciones sobre {B.describe()}")
    table.add_column("claim")
    table.add_column("pass")
    for report in reports:
        table.add_row(report.claim, "[green]sí[/green]" if report.passed else "[red]no[/red]")
    console.print(table)
    raise typer.Exit(code=claims_exit_code(reports))
