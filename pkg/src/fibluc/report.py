"""Check reports shared by the identity catalog and the identity language.

A report is a flat, deterministically ordered list of grid cells; each cell
records which case ran at which indices, whether both sides agreed, and the
rendered sides when they did not.
"""

from __future__ import annotations

from dataclasses import dataclass


class DomainError(ValueError):
    """An index or exponent fell outside its declared domain."""


@dataclass(frozen=True)
class CellResult:
    case_id: str
    n: int | None
    k: int | None
    passed: bool
    elapsed_ms: float
    lhs: str | None = None
    rhs: str | None = None


def _cell_key(cell: CellResult) -> tuple:
    return (
        cell.case_id,
        -1 if cell.n is None else cell.n,
        -1 if cell.k is None else cell.k,
    )


@dataclass(frozen=True)
class CheckReport:
    cells: tuple[CellResult, ...]

    @classmethod
    def from_cells(cls, cells) -> CheckReport:
        return cls(tuple(sorted(cells, key=_cell_key)))

    @classmethod
    def combine(cls, reports) -> CheckReport:
        merged: list[CellResult] = []
        for report in reports:
            merged.extend(report.cells)
        return cls(tuple(merged))

    @property
    def all_passed(self) -> bool:
        return all(cell.passed for cell in self.cells)

    def failures(self) -> list[CellResult]:
        return [cell for cell in self.cells if not cell.passed]

    def to_text(self) -> str:
        """Line-oriented table, one line per cell plus sides on failure."""
        lines: list[str] = []
        for cell in self.cells:
            n_text = "-" if cell.n is None else str(cell.n)
            k_text = "-" if cell.k is None else str(cell.k)
            status = "pass" if cell.passed else "FAIL"
            lines.append(
                f"{cell.case_id:<6} n={n_text:<4} k={k_text:<3} {status:<4} {cell.elapsed_ms:9.3f}ms"
            )
            if not cell.passed:
                if cell.lhs is not None:
                    lines.append(f"    lhs: {cell.lhs}")
                if cell.rhs is not None:
                    lines.append(f"    rhs: {cell.rhs}")
        return "\n".join(lines)

    def to_records(self) -> list[dict]:
        """Structured form: one record per cell, lhs/rhs only on failure."""
        records = []
        for cell in self.cells:
            record: dict = {
                "id": cell.case_id,
                "n": cell.n,
                "k": cell.k,
                "status": "pass" if cell.passed else "fail",
                "elapsed_ms": round(cell.elapsed_ms, 3),
            }
            if not cell.passed:
                record["lhs"] = cell.lhs
                record["rhs"] = cell.rhs
            records.append(record)
        return records
