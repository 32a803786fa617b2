"""
Output interface shared by front ends.

Commands build an Output (plain records plus an optional human-readable
form); a Renderer turns it into text for one OutputFormat. Core logic
never formats anything itself.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


@dataclass
class Output:
    """Format-agnostic result of one command."""

    records: list[dict[str, Any]] = field(default_factory=list)
    text: list[str] | None = None   # human form; renderers fall back to the records
    written: bool = False           # the command already wrote its own --out file


class Renderer(ABC):
    """Interface every output format implements."""

    format: OutputFormat

    @abstractmethod
    def render(self, output: Output) -> str:
        """Full text to write, ending with a newline unless empty."""
        ...
