import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from zolldisks.dataflows.disk_files import format_complex, parse_complex
from zolldisks.errors import SpecFileError
from zolldisks.geometry.projective import P1Point

console = Console()


def setup_logging(verbose: bool = False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True, show_path=verbose)],
        force=True,
    )


def parse_p1(text: str) -> P1Point:
    """Parse "re,im;re,im" into a point of CP^1."""
    parts = text.split(";")
    if len(parts) != 2:
        raise SpecFileError(f"expected two complex numbers separated by ';', got '{text}'")
    try:
        return P1Point(np.array([parse_complex(part.strip()) for part in parts]))
    except ValueError as exc:
        raise SpecFileError(str(exc)) from exc


def format_p1(u: P1Point) -> str:
    return ";".join(format_complex(c) for c in u.v)


def parse_value(text: str) -> Any:
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def parse_overrides(items: Optional[List[str]]) -> Dict[str, Any]:
    """Turn repeated --set key=value options into a config dict."""
    overrides = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise SpecFileError(f"--set expects key=value, got '{item}'")
        overrides[key.strip()] = parse_value(value.strip())
    return overrides


def report_table(title: str, rows: List[Tuple[str, Any]]) -> Table:
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green", justify="right")
    for name, value in rows:
        if isinstance(value, float):
            value = f"{value:.6g}"
        table.add_row(name, str(value))
    return table


def model_rows(model) -> List[Tuple[str, Any]]:
    """Scalar fields of a pydantic report, skipping unset ones."""
    return [
        (name, value.value if hasattr(value, "value") else value)
        for name, value in model.model_dump().items()
        if value is not None and not isinstance(value, (dict, list))
    ]


def write_diagnostic(
    output_dir: Path, command: str, error: BaseException, u0: Optional[P1Point] = None
) -> Path:
    """Record a failed run as diagnostic.json in the output directory."""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    if u0 is None and isinstance(getattr(error, "u0", None), P1Point):
        u0 = error.u0
    record = {
        "command": command,
        "error": type(error).__name__,
        "message": str(error),
        "u0": format_p1(u0) if u0 is not None else None,
    }
    report = getattr(error, "report", None)
    if report is not None:
        record["report"] = report.model_dump()
    path = output_dir / "diagnostic.json"
    with open(path, "w") as f:
        json.dump(record, f, indent=4, default=str)
    return path
