"""Scripted verifications of explicit computations, driven by data files."""

from __future__ import annotations

from .datafile import CheckSpec, DataFileError, available_ids, load_check_spec, parse_datafile
from .runner import REPORT_VERSION, CheckReport, reports_json, run_all, run_check

__all__ = [
    "REPORT_VERSION",
    "CheckReport",
    "CheckSpec",
    "DataFileError",
    "available_ids",
    "load_check_spec",
    "parse_datafile",
    "reports_json",
    "run_all",
    "run_check",
]
