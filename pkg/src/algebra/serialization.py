"""
JSON documents for monoids, modules, M-sets and extensions.
"""

import json
from pathlib import Path
from typing import Any, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.errors import InvalidArgumentError, SpecParseError
from .finite_algebra import CModule, FiniteMonoid, as_abelian, as_group, classify


class MonoidModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = ""
    size: int = Field(ge=1)
    identity: int = 0
    mul: List[List[int]]
    inv: Optional[List[int]] = None

    def to_monoid(self) -> FiniteMonoid:
        if len(self.mul) != self.size:
            raise InvalidArgumentError(f"table has {len(self.mul)} rows for size {self.size}")
        monoid = classify(self.mul, self.identity, self.name, check=True)
        if self.inv is not None and tuple(self.inv) != getattr(monoid, "inv", None):
            raise InvalidArgumentError(f"{monoid.label()}: inverse table does not match the multiplication")
        return monoid


class CModuleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    C: MonoidModel
    B: MonoidModel
    xi: List[List[int]]

    def to_module(self) -> CModule:
        C = as_group(self.C.to_monoid())
        B = as_abelian(self.B.to_monoid())
        return CModule(C, B, self.xi).validate()


class MSetModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    monoid: MonoidModel
    size: int = Field(ge=0)
    act: List[List[int]]


class ExtensionModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    module: CModuleModel
    cocycle: List[List[int]]


class ActionTableModel(BaseModel):
    """Bare action table for `--action @file`: xi[c][b]"""

    model_config = ConfigDict(extra="forbid")

    xi: List[List[int]]


def _location(error: ValidationError) -> str:
    first = error.errors()[0]
    return ".".join(str(part) for part in first.get("loc", ())) or "document"


def parse_document(model: type, source: Union[str, Path, dict]) -> Any:
    """Load a pydantic model from a dict, a JSON string or a file path"""
    if isinstance(source, dict):
        data = source
    else:
        text = source
        if isinstance(source, Path) or not str(source).lstrip().startswith(("{", "[")):
            path = Path(source)
            try:
                text = path.read_text()
            except OSError as e:
                raise SpecParseError(f"cannot read {path}: {e.strerror}", str(path))
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecParseError(f"invalid JSON: {e.msg}", f"line {e.lineno} column {e.colno}")
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise SpecParseError(f"invalid {model.__name__}: {e.errors()[0]['msg']}", _location(e))


def load_monoid(source) -> FiniteMonoid:
    return parse_document(MonoidModel, source).to_monoid()


def load_module(source) -> CModule:
    return parse_document(CModuleModel, source).to_module()


def dump_json(data: Any) -> str:
    """Deterministic JSON: sorted keys, no trailing whitespace"""
    return json.dumps(data, sort_keys=True, indent=2)
