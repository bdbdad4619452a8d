"""Report rendering: CSV, Markdown and JSON with reproducible formatting.

Numeric serialization uses 17 significant digits (round-trip exact for
binary64) in CSV; JSON relies on Python's shortest round-trip float repr,
which parses back to the identical value.  Output carries no timestamps in
the body; the runtime lives only in the footer.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .criteria import CONSTANTS

TOOL_VERSION = "0.1.0"


def constants_digest() -> str:
    blob = repr(CONSTANTS).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def fmt_number(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


@dataclass
class RenderedReport:
    command: str
    parameters: dict[str, Any]
    columns: list[str]
    rows: list[dict[str, Any]]
    footer: dict[str, Any] = field(default_factory=dict)

    @property
    def meta(self) -> dict[str, Any]:
        meta = {"command": self.command, "tool_version": TOOL_VERSION,
                "constants_digest": constants_digest()}
        meta.update({k: v for k, v in sorted(self.parameters.items())})
        return meta

    def to_csv(self) -> str:
        lines = [f"# {k}={fmt_number(v)}" for k, v in self.meta.items()]
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(fmt_number(row.get(c, "")) for c in self.columns))
        for k, v in self.footer.items():
            lines.append(f"# {k}={fmt_number(v)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {"meta": self.meta, "columns": self.columns,
               "rows": self.rows, "footer": self.footer}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def to_markdown(self, digits: int = 6) -> str:
        def disp(x):
            if isinstance(x, float):
                return f"{x:.{digits}g}"
            return str(x)

        lines = [f"**{self.command}** "
                 + " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items())),
                 ""]
        lines.append("| " + " | ".join(self.columns) + " |")
        lines.append("|" + "|".join("---" for _ in self.columns) + "|")
        for row in self.rows:
            lines.append("| " + " | ".join(disp(row.get(c, "")) for c in self.columns) + " |")
        if self.footer:
            lines.append("")
            lines.append(" ".join(f"{k}={disp(v)}" for k, v in self.footer.items()))
        return "\n".join(lines) + "\n"

    def render(self, output_format: str, digits: int = 6) -> str:
        if output_format == "csv":
            return self.to_csv()
        if output_format == "json":
            return self.to_json()
        if output_format == "md":
            return self.to_markdown(digits)
        raise ValueError(f"unknown output format {output_format!r}")
