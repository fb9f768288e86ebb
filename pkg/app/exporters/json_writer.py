"""Serialización JSON con orjson: claves ordenadas, sangría de 2 espacios y salto de línea final."""

from pathlib import Path
from typing import Any, Sequence, Union
import orjson
from pydantic import BaseModel

OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def dumps(data: Any) -> bytes:
    return orjson.dumps(data, option=OPTIONS) + b"\n"


def model_payload(model: BaseModel) -> Any:
    """Volcado JSON de un esquema usando los alias (`passed` se escribe `pass`)."""
    return model.model_dump(mode="json", by_alias=True)


def reports_to_json(reports: Sequence[BaseModel]) -> bytes:
    return dumps([model_payload(r) for r in reports])


def write_json(path: Union[str, Path], data: Any) -> None:
    payload = model_payload(data) if isinstance(data, BaseModel) else data
    Path(path).write_bytes(dumps(payload))
