from __future__ import annotations

import json
from typing import *

from ..arith import PrimeSet
from ..utils import RECORD_SCHEMA_VERSION, RecordParseError
from .misc import HallStatus, HallVerdict, Witness

SCHEMA_HEADER = f"# schema: {RECORD_SCHEMA_VERSION}"


class VerdictRecord(TypedDict):
    group: str
    pi: list[int]
    status: str
    condition_tag: str | None
    witnesses: list[list[Any]]
    notes: list[str]
    citations: list[str]
    checked: list[str]
    upi: bool


def to_record(verdict: HallVerdict) -> VerdictRecord:
    return {
        "group": verdict.group,
        "pi": list(verdict.pi),
        "status": verdict.status.value,
        "condition_tag": verdict.condition_tag,
        "witnesses": [[w.name, w.value] for w in verdict.witnesses],
        "notes": list(verdict.notes),
        "citations": list(verdict.citations),
        "checked": list(verdict.checked),
        "upi": verdict.upi,
    }


def from_record(record: Mapping[str, Any]) -> HallVerdict:
    try:
        verdict = HallVerdict(
            group=str(record["group"]),
            pi=PrimeSet(tuple(record["pi"])),
            status=HallStatus(record["status"]),
            condition_tag=record.get("condition_tag"),
            witnesses=tuple(Witness(str(name), value) for name, value in record["witnesses"]),
            notes=tuple(record.get("notes", ())),
            citations=tuple(record.get("citations", ())),
            checked=tuple(record.get("checked", ())),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise RecordParseError(f"Malformed verdict record: {e}")

    if "upi" in record and bool(record["upi"]) != verdict.upi:
        raise RecordParseError(
            f"upi flag {record['upi']} disagrees with status {verdict.status.value}"
        )

    return verdict


def render_records(verdicts: Iterable[HallVerdict]) -> str:
    """Schema header line, then one JSON object per verdict."""
    lines = [SCHEMA_HEADER]
    lines.extend(json.dumps(to_record(v), ensure_ascii=False) for v in verdicts)
    return "\n".join(lines) + "\n"


def parse_records(text: str) -> list[HallVerdict]:
    lines = [line for line in text.splitlines() if line.strip()]

    if not lines or lines[0].strip() != SCHEMA_HEADER:
        raise RecordParseError(f"Missing or unknown schema header; expected {SCHEMA_HEADER!r}")

    verdicts = []
    for line_no, line in enumerate(lines[1:], start=2):
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise RecordParseError(f"line {line_no}: {e}")
        verdicts.append(from_record(record))

    return verdicts


def render_verdict(verdict: HallVerdict, upi: bool = False) -> str:
    """Human-readable multi-line rendering of a verdict."""
    status = verdict.status.value
    if upi:
        status += f" (U_pi: {'yes' if verdict.upi else 'no' if verdict.status.determined else 'undetermined'})"

    lines = [f"{verdict.group}  pi={verdict.pi!r}  {status}"]

    if verdict.condition_tag is not None:
        lines.append(f"  condition: {verdict.condition_tag}")
    if verdict.witnesses:
        lines.append("  witnesses: " + ", ".join(w.render() for w in verdict.witnesses))
    for note in verdict.notes:
        lines.append(f"  note: {note}")
    if verdict.citations:
        lines.append("  cites: " + " ".join(verdict.citations))
    if verdict.checked:
        lines.append("  checked: " + " ".join(verdict.checked))

    return "\n".join(lines)
