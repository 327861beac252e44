import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Union

from logring.cli.expressions import InputError, parse_log_class, parse_motive_class
from logring.models.io_models import ExpressionFile, FanFile, SncFile, SymbolDeclaration
from logring.services.fan_toolkit import Fan, validate_fan
from logring.services.log_ring import LogClass
from logring.services.motive_ring import EPolynomial, MotiveClass, SymbolTable
from logring.services.snc_calculator import SncSpec, Stratum, build_snc_spec, parse_stratum_key

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def load_json(path: PathLike) -> Any:
    """Read a JSON file, reporting syntax errors with line and column."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, exc.lineno, exc.colno, str(path)) from None


def detect_input_kind(data: Any) -> str:
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    if "rays" in data:
        return "fan"
    if "components" in data:
        return "snc"
    if "expr" in data:
        return "expr"
    raise InputError("input is neither a fan, an s.n.c. spec nor an expression file")


def register_symbols(table: SymbolTable, declarations: Iterable[SymbolDeclaration]) -> SymbolTable:
    for declaration in declarations:
        table.register(
            declaration.name,
            EPolynomial.from_triples(declaration.e_poly),
            declaration.dimension,
            declaration.smooth_projective,
            declaration.empty,
        )
    return table


def fan_from_model(model: FanFile) -> Fan:
    return validate_fan(model.dim, model.rays, model.cones)


def fan_to_model(fan: Fan) -> FanFile:
    return FanFile.model_validate(fan.to_data())


def load_fan(path: PathLike) -> Fan:
    return fan_from_model(FanFile.model_validate(load_json(path)))


def write_fan(path: PathLike, fan: Fan, indent: int = 2) -> None:
    path = Path(path)
    try:
        path.write_text(fan_to_model(fan).model_dump_json(indent=indent) + "\n")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None
    logger.info("wrote fan with %d rays to %s", len(fan.rays), path)


def snc_from_model(model: SncFile, table: SymbolTable = None, source: str = None) -> SncSpec:
    table = register_symbols(table or SymbolTable(), model.symbols)
    strata: Dict[Stratum, MotiveClass] = {}
    for key, text in model.strata.items():
        stratum = parse_stratum_key(key)
        if stratum in strata:
            raise InputError(f"stratum '{key}' is listed twice", source=source)
        strata[stratum] = parse_motive_class(text, table, source=f"{source or '<snc>'}[{key!r}]")
    return build_snc_spec(table, model.dim, model.components, strata, closed=model.closed)


def load_snc(path: PathLike, table: SymbolTable = None) -> SncSpec:
    return snc_from_model(SncFile.model_validate(load_json(path)), table, source=str(path))


def expression_from_model(model: ExpressionFile, table: SymbolTable = None, source: str = None) -> LogClass:
    table = register_symbols(table or SymbolTable(), model.symbols)
    return parse_log_class(model.expr, table, source=source)

