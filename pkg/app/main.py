import typer
from app.exporters.json_writer import dumps
from app.routers import counterexample, grid, sip, trace, verify
from app.schemas.scene import Scene
from app.utils.logging import set_level

app = typer.Typer(
    name="conics",
    help="Cónicas métricas en planos normados: trazado, rejillas y comprobaciones.",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def main(
    log_level: str = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING o ERROR"),
):
    if log_level:
        set_level(log_level.upper())


# Registrar comandos
app.command("trace")(trace.trace_scene)
app.command("verify")(verify.verify_claims)
app.command("grid")(grid.grid_scene)
app.command("sip")(sip.sip_command)
app.command("counterexample")(counterexample.counterexample_command)


@app.command("schema")
def schema():
    """Escribe el esquema JSON de las escenas."""
    typer.echo(dumps(Scene.model_json_schema()).decode("utf-8"), nl=False)
