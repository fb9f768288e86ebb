import logging
from rich.console import Console
from rich.logging import RichHandler
from app.utils.settings import get_settings

# Los registros van siempre a stderr para no mezclarse con las salidas de la CLI
_console = Console(stderr=True)
_configured = False


def get_logger(name: str) -> logging.Logger:
    """Devuelve un logger del paquete configurado con RichHandler."""
    global _configured
    if not _configured:
        root = logging.getLogger("app")
        root.setLevel(get_settings().log_level)
        root.addHandler(RichHandler(console=_console, show_path=False))
        root.propagate = False
        _configured = True
    return logging.getLogger(name)


def set_level(level: str) -> None:
    logging.getLogger("app").setLevel(level)
