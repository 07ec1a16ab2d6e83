"""Run checks and collect reports."""

from __future__ import annotations

import json
import time
import traceback
from collections.abc import Iterable
from dataclasses import asdict, dataclass, field

from .checks import REGISTRY, Selection
from .datafile import DataFileError, available_ids, load_check_spec

REPORT_VERSION = 1


@dataclass
class CheckReport:
    id: str
    status: str  # "pass", "fail" or "error"
    computed: dict[str, object] = field(default_factory=dict)
    expected: dict[str, object] = field(default_factory=dict)
    runtime_ms: int = 0
    notes: dict[str, object] = field(default_factory=dict)
    mismatches: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _row_selected(key: str, types: frozenset[str] | None, p: int | None, spec_types: tuple[str, ...]) -> bool:
    head = key.split(".", 1)[0]
    if "." not in key:
        return True
    if head in spec_types:
        return types is None or head in types
    if head.isdigit():
        return p is None or int(head) == p
    return True


def run_check(check_id: str, types: Iterable[str] | None = None, p: int | None = None) -> CheckReport:
    t0 = time.perf_counter()
    tset = frozenset(types) if types is not None else None
    try:
        if check_id not in REGISTRY:
            raise DataFileError(f"unknown check {check_id!r}")
        spec = load_check_spec(check_id)
        expected = {k: v for k, v in spec.expected.items() if _row_selected(k, tset, p, spec.types)}
        computed, notes = REGISTRY[check_id](spec, Selection(tset, p))
    except Exception as exc:  # every failure becomes an error report
        return CheckReport(
            id=check_id,
            status="error",
            runtime_ms=int(1000 * (time.perf_counter() - t0)),
            error=f"{type(exc).__name__}: {exc}",
            notes={"traceback": traceback.format_exc(limit=4)},
        )
    computed = {k: _plain(v) for k, v in computed.items()}
    mismatches = [k for k, v in expected.items() if not _same(computed.get(k), v)]
    status = "pass" if not mismatches and expected else "fail"
    return CheckReport(
        id=check_id,
        status=status,
        computed=computed,
        expected=expected,
        runtime_ms=int(1000 * (time.perf_counter() - t0)),
        notes={k: _plain(v) for k, v in notes.items()},
        mismatches=mismatches,
    )


def _same(computed, expected) -> bool:
    """Equality, reading a bare integer in a data file as text when compared with text."""
    if isinstance(computed, str) and isinstance(expected, int) and not isinstance(expected, bool):
        return computed == str(expected)
    return computed == expected


def _plain(v):
    """Convert numpy scalars and containers to JSON-friendly values."""
    if hasattr(v, "item") and not isinstance(v, (list, dict)):
        try:
            return v.item()
        except (ValueError, AttributeError):
            pass
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _id_key(check_id: str) -> tuple[int, str]:
    digits = check_id[1:]
    return (int(digits), check_id) if digits.isdigit() else (10**9, check_id)


def select_ids(prefix: str | None = None, only: Iterable[str] | None = None, type_: str | None = None, p: int | None = None) -> list[str]:
    """Matching check ids in id order; unknown ids named in ``only`` are kept so they report an error."""
    known = set(available_ids())
    ids = sorted(set(only) if only is not None else known, key=_id_key)
    if prefix:
        ids = [i for i in ids if i.startswith(prefix)]
    out = []
    for i in ids:
        if i in known:
            spec = load_check_spec(i)
            if type_ is not None and type_ not in spec.types:
                continue
            if p is not None and spec.primes and p not in spec.primes:
                continue
        out.append(i)
    return out


def run_all(prefix: str | None = None, only: Iterable[str] | None = None, type_: str | None = None, p: int | None = None) -> list[CheckReport]:
    """Reports for the selected checks, ordered by id."""
    types = [type_] if type_ is not None else None
    return [run_check(i, types=types, p=p) for i in select_ids(prefix, only, type_, p)]


def reports_json(reports: list[CheckReport]) -> str:
    return json.dumps({"version": REPORT_VERSION, "reports": [asdict(r) for r in reports]}, indent=2, sort_keys=True)
