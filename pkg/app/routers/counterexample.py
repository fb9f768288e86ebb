from pathlib import Path
from typing import Optional
import typer
from rich.console import Console
from app.dependencies import claims_exit_code, cli_errors
from app.exporters.json_writer import reports_to_json
from app.verify.counterexample import reproduce_linf_counterexample

console = Console(stderr=True)


def counterexample_command(
    json_out: Optional[Path] = typer.Option(None, "--json", help="Informe JSON (por defecto, salida estándar)"),
):
    """Reproduce el contraejemplo de ℓ∞ (elipse por focos que no lo es por directriz)."""
    with cli_errors():
        report = reproduce_linf_counterexample()
        payload = reports_to_json([report])
        if json_out:
            json_out.write_bytes(payload)
        else:
            typer.echo(payload.decode("utf-8"), nl=False)
    m = report.metrics
    console.print(f"s = {m['s']:g}, r = {m['r']:.6f}, razón en −z = {m['ratio_minus_z']:.6f}")
    raise typer.Exit(code=claims_exit_code([report]))
