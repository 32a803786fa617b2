"""
Pydantic schemas for persisted classification records.

One CatalogEntry is one line of a catalog JSONL file. Field order is the
on-disk key order.
"""

from pydantic import BaseModel, ConfigDict, Field

from textile.core.codes import KnotSymbol


class SymbolRecord(BaseModel):
    """Knot symbol n^k_(x,y) with homology summed over components."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0, description="Crossings")
    k: int = Field(ge=1, description="Components (words)")
    x: int = Field(description="Meridional winding")
    y: int = Field(description="Longitudinal winding")

    @classmethod
    def from_symbol(cls, symbol: KnotSymbol) -> "SymbolRecord":
        total = symbol.total
        return cls(n=symbol.crossings, k=symbol.components, x=total.x, y=total.y)

    def __str__(self) -> str:
        return f"{self.n}^{self.k}_({self.x},{self.y})"


class CatalogEntry(BaseModel):
    """A textile code with its classification data."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    schema_version: int = Field(default=1, alias="schema", description="Catalog format version")
    code: str = Field(description="Code text in the code grammar")
    complexity: int = Field(ge=2, description="n + l + m")
    realizable: bool
    r1: bool = Field(description="Contains a Reidemeister I pattern")
    r2: bool = Field(description="Contains a Reidemeister II pattern")
    symbol: SymbolRecord
    zenkina: str | None = Field(default=None, description="Rendered Zenkina polynomial")

    @property
    def sort_key(self) -> tuple[int, str]:
        return (self.complexity, self.code)
