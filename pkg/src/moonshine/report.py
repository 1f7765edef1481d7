"""Verification reports shared by every identity check."""

from __future__ import annotations

import enum
import json
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

__all__ = ["Mismatch", "Status", "Stopwatch", "VerificationReport", "compare_pairs", "merge"]


class Status(str, enum.Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    REJECTED = "rejected"


@dataclass(frozen=True)
class Mismatch:
    at: tuple[int, ...]
    lhs: int | str
    rhs: int | str

    def to_dict(self) -> dict:
        return {"at": list(self.at), "lhs": str(self.lhs), "rhs": str(self.rhs)}


@dataclass(frozen=True)
class VerificationReport:
    identity_name: str
    window: str
    status: Status
    first_mismatch: Mismatch | None = None
    checked_count: int = 0
    elapsed: int = 0  # milliseconds

    def __post_init__(self) -> None:
        status = Status(self.status)
        object.__setattr__(self, "status", status)
        if (status is Status.FAILED) != (self.first_mismatch is not None):
            raise ValueError("a report carries a mismatch exactly when it failed")
        if status is not Status.REJECTED and self.checked_count <= 0:
            raise ValueError("verified or failed reports must have compared something")

    @property
    def ok(self) -> bool:
        return self.status is Status.VERIFIED

    def to_dict(self) -> dict:
        return {
            "identity": self.identity_name,
            "window": self.window,
            "status": self.status.value,
            "first_mismatch": None if self.first_mismatch is None else self.first_mismatch.to_dict(),
            "checked": self.checked_count,
            "elapsed_ms": int(self.elapsed),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        line = f"{self.identity_name} [{self.window}]: {self.status.value} ({self.checked_count} checked, {self.elapsed} ms)"
        if self.first_mismatch is not None:
            m = self.first_mismatch
            at = ",".join(str(k) for k in m.at)
            line += f"\n  first mismatch at ({at}): lhs={m.lhs} rhs={m.rhs}"
        return line


class Stopwatch:
    def __init__(self) -> None:
        self._start = time.perf_counter()

    def ms(self) -> int:
        return int(round((time.perf_counter() - self._start) * 1000))


def compare_pairs(
    identity: str,
    window: str,
    pairs: Iterable[tuple[Sequence[int] | int, object, object]],
    watch: Stopwatch | None = None,
) -> VerificationReport:
    """Compare ``(at, lhs, rhs)`` triples in order and report the first disagreement."""
    watch = watch or Stopwatch()
    checked = 0
    first = None
    for at, lhs, rhs in pairs:
        checked += 1
        if first is None and lhs != rhs:
            at = (at,) if isinstance(at, int) else tuple(at)
            first = Mismatch(at, lhs, rhs)
    status = Status.VERIFIED if first is None else Status.FAILED
    return VerificationReport(identity, window, status, first, checked, watch.ms())


def merge(reports: Sequence[VerificationReport], identity: str = "merged", window: str | None = None) -> VerificationReport:
    """Verified iff all are verified; the first failure (in order) is carried over."""
    if not reports:
        raise ValueError("cannot merge an empty list of reports")
    checked = sum(r.checked_count for r in reports)
    elapsed = sum(r.elapsed for r in reports)
    window = window if window is not None else f"{len(reports)} checks"
    failed = next((r for r in reports if r.status is Status.FAILED), None)
    if failed is not None:
        if window == f"{len(reports)} checks":
            window += f", first failure in {failed.identity_name}"
        return VerificationReport(identity, window, Status.FAILED, failed.first_mismatch, checked, elapsed)
    if any(r.status is Status.REJECTED for r in reports):
        return VerificationReport(identity, window, Status.REJECTED, None, checked, elapsed)
    return VerificationReport(identity, window, Status.VERIFIED, None, checked, elapsed)
