"""Loader for the check data files.

A data file is UTF-8 text with one ``key = value`` pair per line; blank lines
and lines starting with ``#`` are ignored.  Keys starting with ``expect.``
hold expected values and must end in one of the tags ``[given]``,
``[trivial]`` or ``[derived]``.  Every file declares ``convention``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

TAGS = ("given", "trivial", "derived")
_TAG_RE = re.compile(r"\s*\[(\w+)\]\s*$")


class DataFileError(ValueError):
    pass


@dataclass(frozen=True)
class CheckSpec:
    id: str
    title: str
    types: tuple[str, ...]
    primes: tuple[int, ...]
    data: dict[str, str]
    expected: dict[str, object]
    tags: dict[str, str] = field(default_factory=dict)

    def elements(self, prefix: str = "") -> dict[str, str]:
        return {k[len(prefix) :]: v for k, v in self.data.items() if k.startswith(prefix)}


def parse_value(text: str) -> object:
    t = text.strip()
    if t in ("true", "false"):
        return t == "true"
    if re.fullmatch(r"-?\d+", t):
        return int(t)
    return t


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def parse_datafile(text: str, name: str = "<data>") -> CheckSpec:
    data: dict[str, str] = {}
    expected: dict[str, object] = {}
    tags: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DataFileError(f"{name}:{lineno}: expected 'key = value'")
        key, _, value = (s.strip() for s in line.partition("="))
        if not key:
            raise DataFileError(f"{name}:{lineno}: empty key")
        if key.startswith("expect."):
            k = key[len("expect.") :]
            if k in expected:
                raise DataFileError(f"{name}:{lineno}: duplicate key {key!r}")
            m = _TAG_RE.search(value)
            if m is None or m.group(1) not in TAGS:
                raise DataFileError(f"{name}:{lineno}: expected value for {key!r} lacks a tag")
            expected[k] = parse_value(value[: m.start()])
            tags[k] = m.group(1)
        else:
            if key in data:
                raise DataFileError(f"{name}:{lineno}: duplicate key {key!r}")
            data[key] = value
    for req in ("id", "convention"):
        if req not in data:
            raise DataFileError(f"{name}: missing {req!r}")
    try:
        primes = _ints(data.get("primes", ""))
    except ValueError as exc:
        raise DataFileError(f"{name}: bad primes: {exc}") from None
    types = tuple(t.strip() for t in data.get("types", "").split(",") if t.strip())
    return CheckSpec(
        id=data["id"],
        title=data.get("title", ""),
        types=types,
        primes=primes,
        data=data,
        expected=expected,
        tags=tags,
    )


def available_ids() -> list[str]:
    files = resources.files("modlie.paperlab").joinpath("data")
    ids = [f.name[:-4] for f in files.iterdir() if f.name.endswith(".txt")]
    return sorted(ids, key=lambda s: (len(s), s))  # C2 before C10


def load_check_spec(check_id: str) -> CheckSpec:
    path = resources.files("modlie.paperlab").joinpath("data", f"{check_id}.txt")
    if not path.is_file():
        raise DataFileError(f"no data file for {check_id!r}")
    spec = parse_datafile(path.read_text(encoding="utf-8"), name=f"{check_id}.txt")
    if spec.id != check_id:
        raise DataFileError(f"{check_id}.txt declares id {spec.id!r}")
    return spec
