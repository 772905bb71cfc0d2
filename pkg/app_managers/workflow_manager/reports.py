import json
from pathlib import Path
from typing import Dict

from app_managers.core.types import SCHEMA_VERSION, TOOLKIT_VERSION


def build_report(command: str, field: str, result: Dict) -> Dict:
    return {
        "toolkit_version": TOOLKIT_VERSION,
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "field": field,
        "result": result,
    }


def dumps(report: Dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(report: Dict, path: str = None) -> str:
    """Writes the report to ``path`` when given and returns the serialized text."""
    text = dumps(report)
    if path:
        file = Path(path)
        file.parent.mkdir(parents=True, exist_ok=True)
        file.write_text(text, encoding="utf-8")
    return text
