# app/storage/reports_store.py
"""
Report files.

Exposes:
 - dump_json(model) -> str           key-sorted, 2-space indent, trailing newline
 - save_report_json(path, model)
 - save_summary_csv(path, result)    one row per check
 - load_report_json(path, model_cls)
"""
import csv
import json
import logging
from pathlib import Path
from typing import Type, TypeVar, Union

from pydantic import BaseModel, ValidationError

from app.models.schemas import SweepResult
from app.utils.errors import ParseError

logger = logging.getLogger("dimforce.storage.reports")

M = TypeVar("M", bound=BaseModel)

CSV_COLUMNS = ["check", "kind", "passed", "failed", "not_applicable"]


def dump_json(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def save_report_json(path: Union[str, Path], model: BaseModel) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(model), encoding="utf-8")
    logger.info("saved report %s", path)
    return path


def save_summary_csv(path: Union[str, Path], result: SweepResult) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for name in sorted(result.tallies):
            tally = result.tallies[name]
            writer.writerow(
                {
                    "check": name,
                    "kind": tally.kind,
                    "passed": tally.passed,
                    "failed": tally.failed,
                    "not_applicable": tally.not_applicable,
                }
            )
    logger.info("saved summary %s", path)
    return path


def load_report_json(path: Union[str, Path], model_cls: Type[M] = SweepResult) -> M:
    path = Path(path)
    try:
        return model_cls.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read report: {exc.strerror}", str(path))
    except ValidationError as exc:
        raise ParseError(f"not a valid {model_cls.__name__}: {exc.error_count()} error(s)", str(path))
