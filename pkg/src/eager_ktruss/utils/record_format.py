"""CSV and markdown rendering of benchmark records."""

import csv
import io
from collections.abc import Iterable

from ..models.bench import BenchRecord

COLUMNS = (
    "graph",
    "vertices",
    "edges",
    "k",
    "strategy",
    "threads",
    "trials",
    "mean_ms",
    "me_per_s",
)
FORMATS = ("csv", "md")


def _row(record: BenchRecord) -> list[str]:
    return [
        record.graph_name,
        str(record.num_vertices),
        str(record.num_edges),
        str(record.k),
        record.strategy.value,
        str(record.threads),
        str(record.trials),
        f"{record.mean_ms:.3f}",
        f"{record.me_per_s:.3f}",
    ]


def emit_records(records: Iterable[BenchRecord], fmt: str = "csv") -> str:
    """Render records as CSV or a markdown table with fixed column order.

    Floats are printed with three decimals.

    Raises:
        ValueError: If ``fmt`` is not ``csv``, ``md`` or ``markdown``
    """
    fmt = fmt.lower()
    if fmt == "markdown":
        fmt = "md"
    if fmt not in FORMATS:
        raise ValueError(f"unknown record format '{fmt}'")

    rows = [_row(record) for record in records]
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(COLUMNS)
        writer.writerows(rows)
        return buffer.getvalue()

    lines = [
        "| " + " | ".join(COLUMNS) + " |",
        "|" + "|".join("---" for _ in COLUMNS) + "|",
    ]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def parse_csv_records(text: str) -> list[BenchRecord]:
    """Read records back from :func:`emit_records` CSV output.

    ``me_per_s`` is taken from the file, not recomputed, so the values match
    what was printed.

    Raises:
        ValueError: If the header does not match the record columns
    """
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != COLUMNS:
        raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
    return [
        BenchRecord(
            graph_name=row["graph"],
            num_vertices=int(row["vertices"]),
            num_edges=int(row["edges"]),
            k=int(row["k"]),
            strategy=row["strategy"],
            threads=int(row["threads"]),
            trials=int(row["trials"]),
            mean_ms=float(row["mean_ms"]),
            me_per_s=float(row["me_per_s"]),
        )
        for row in reader
    ]
