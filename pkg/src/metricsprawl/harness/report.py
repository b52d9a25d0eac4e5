"""Benchmark reports: JSON lines or CSV, plus a summary sidecar."""
from __future__ import annotations

import csv
import io
import json
import statistics
from pathlib import Path
from typing import Iterable

from .bench import FIELDS, BenchRecord


def summarize(records: Iterable[BenchRecord]) -> dict:
    by: dict[str, list[BenchRecord]] = {}
    for r in records:
        by.setdefault(r.builder, []).append(r)
    rows = []
    for name, recs in by.items():
        counts = [r.distance_count for r in recs]
        checked = [r.correct for r in recs if r.correct is not None]
        rows.append({
            "builder": name,
            "queries": len(recs),
            "mean_distance_count": statistics.fmean(counts),
            "median_distance_count": statistics.median(counts),
            "max_distance_count": max(counts),
            "build_distances": recs[0].build_distances,
            "errors": sum(r.error is not None for r in recs),
            "correct": sum(checked) if checked else None,
        })
    return {"rows": rows}


def _csv_cell(key, value):
    if key == "params":
        return json.dumps(value, sort_keys=True)
    return "" if value is None else value


def _csv_value(key, text):
    if key == "params":
        return json.loads(text)
    if text == "":
        return None
    if key in ("query_id", "result_size", "distance_count", "build_distances"):
        return int(text)
    if key == "wall_time":
        return float(text)
    if key == "correct":
        return text == "True"
    return text


def format_records(records: list[BenchRecord], fmt: str = "jsonl") -> str:
    if fmt == "jsonl":
        return "".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for r in records:
            d = r.to_dict()
            w.writerow([_csv_cell(k, d[k]) for k in FIELDS])
        return buf.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")


def summary_path(path) -> Path:
    return Path(str(path) + ".summary.json")


def emit_report(records: Iterable[BenchRecord], path, fmt: str = "jsonl") -> dict:
    """Write records to ``path`` and the summary to ``<path>.summary.json``."""
    records = list(records)
    Path(path).write_text(format_records(records, fmt), encoding="utf-8")
    summary = summarize(records)
    summary_path(path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return summary


def parse_report(path, fmt: str = "jsonl") -> list[BenchRecord]:
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "jsonl":
        return [BenchRecord(**json.loads(line)) for line in text.splitlines() if line.strip()]
    rows = list(csv.DictReader(io.StringIO(text)))
    return [BenchRecord(**{k: _csv_value(k, row[k]) for k in FIELDS}) for row in rows]
