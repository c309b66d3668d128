"""
Result File Writers
CSV and JSON output with 17 significant digits for reals
"""

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from waldron.config.config import Config
from waldron.utils.errors import DomainError

PathLike = Union[str, Path]


def format_real(value) -> str:
    """Shortest text that round-trips a double"""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return 'nan'
    return f"{value:.{Config.CSV_DIGITS}g}"


def _to_builtin(value):
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return _to_builtin(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # JSON has no NaN/inf
        return value if math.isfinite(value) else None
    return value


def _emit(text: str, path: Optional[PathLike]):
    if path is None or str(path) == '-':
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', newline='') as fh:
        fh.write(text)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_real(v) if not isinstance(v, str) else v for v in row])
    return buffer.getvalue()


def write_csv(header: Sequence[str], rows: Iterable[Sequence], path: Optional[PathLike] = None):
    """Header row plus data rows; stdout when path is None or '-'"""
    _emit(csv_text(header, rows), path)


def write_records_csv(records: List[dict], path: Optional[PathLike] = None,
                      columns: Optional[Sequence[str]] = None):
    """Dict records as CSV, columns taken from the first record unless given"""
    if columns is None:
        columns = list(records[0].keys()) if records else []
    write_csv(columns, ([record.get(c) for c in columns] for record in records), path)


def read_table(path: PathLike) -> Tuple[List[str], np.ndarray]:
    """
    Headed numeric CSV as (column names, float array)

    Blank lines are skipped. Empty cells read as NaN.

    Raises:
        DomainError: missing file, ragged rows or non-numeric cells
    """
    path = Path(path)
    try:
        with path.open(newline='') as fh:
            lines = [row for row in csv.reader(fh) if row]
    except OSError as exc:
        raise DomainError(f"Cannot read {path}: {exc.strerror}") from exc
    if len(lines) < 2:
        raise DomainError(f"{path} needs a header row and at least one data row")

    header = [name.strip() for name in lines[0]]
    data = []
    for number, row in enumerate(lines[1:], start=2):
        if len(row) != len(header):
            raise DomainError(f"{path}:{number}: expected {len(header)} cells, got {len(row)}")
        try:
            data.append([float(cell) if cell.strip() else math.nan for cell in row])
        except ValueError as exc:
            raise DomainError(f"{path}:{number}: {exc}") from exc
    return header, np.array(data)


def aligned_table(header: Sequence[str], rows: Iterable[Sequence], digits: int = 2) -> str:
    """Right-aligned text table for logs; reals rounded, empty cells blank"""
    def cell(value):
        if value is None:
            return ''
        if isinstance(value, (float, np.floating)):
            return f"{value:.{digits}f}"
        return str(value)

    body = [[cell(v) for v in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(header)]
    lines = ['  '.join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ['  '.join(c.rjust(w) for c, w in zip(row, widths)) for row in body]
    return '\n'.join(lines)


def json_text(payload) -> str:
    # repr of a Python float round-trips, matching the 17-digit CSV contract
    return json.dumps(_to_builtin(payload), indent=2, sort_keys=True) + '\n'


def write_json(payload, path: Optional[PathLike] = None):
    """Pretty JSON with sorted keys; stdout when path is None or '-'"""
    _emit(json_text(payload), path)


def write_output(fmt: str, header: Sequence[str], rows: List[Sequence],
                 path: Optional[PathLike] = None, extra: Optional[dict] = None):
    """
    Emit a table as CSV or JSON

    JSON output is {"columns": [...], "rows": [[...], ...]} plus any extra keys.
    """
    if fmt == 'csv':
        write_csv(header, rows, path)
        return
    payload = {'columns': list(header), 'rows': [list(r) for r in rows]}
    if extra:
        payload.update(extra)
    write_json(payload, path)
