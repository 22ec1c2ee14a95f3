"""File-backed document store for scenario presets and curves.

A single directory of JSON/CSV files; no external database. Every
scenario document carries a version counter, writes are compare-and-set
(stale version -> conflict) and land atomically via a temp file and
rename, so readers only ever see complete documents and a failed write
leaves the previous preset intact.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from pathlib import Path

from .errors import DomainError
from .prior import bundled_scenario
from .sensitivity import SensitivityCurve, load_curve, serialize_curve


class VersionConflictError(Exception):
    """The document changed since the writer last read it."""


class PresetStore:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        (self.root / "scenarios").mkdir(parents=True, exist_ok=True)
        (self.root / "curves").mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, key: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(key, threading.Lock())

    # -- scenarios ---------------------------------------------------------

    def _scenario_path(self, scenario_id: str) -> Path:
        if not scenario_id or "/" in scenario_id or scenario_id.startswith("."):
            raise DomainError(f"invalid scenario id {scenario_id!r}")
        return self.root / "scenarios" / f"{scenario_id}.json"

    def get_scenario(self, scenario_id: str) -> dict | None:
        path = self._scenario_path(scenario_id)
        if not path.exists():
            return None
        return json.loads(path.read_text("utf-8"))

    def list_scenarios(self) -> list[dict]:
        docs = []
        for path in sorted((self.root / "scenarios").glob("*.json")):
            docs.append(json.loads(path.read_text("utf-8")))
        return docs

    def put_scenario(self, scenario_id: str, body: dict, expected_version: int) -> dict:
        """Compare-and-set write; expected_version 0 means 'create new'."""
        path = self._scenario_path(scenario_id)
        with self._lock_for(f"scenario:{scenario_id}"):
            current = self.get_scenario(scenario_id)
            current_version = current["version"] if current else 0
            if expected_version != current_version:
                raise VersionConflictError(
                    f"scenario {scenario_id!r} is at version {current_version}, "
                    f"write expected {expected_version}"
                )
            doc = dict(body)
            doc["id"] = scenario_id
            doc["version"] = current_version + 1
            self._atomic_write(path, json.dumps(doc, indent=2) + "\n")
            return doc

    # -- curves (read-only via the API) ------------------------------------

    def _curve_path(self, curve_id: str) -> Path:
        if not curve_id or "/" in curve_id or curve_id.startswith("."):
            raise DomainError(f"invalid curve id {curve_id!r}")
        return self.root / "curves" / f"{curve_id}.csv"

    def get_curve(self, curve_id: str) -> SensitivityCurve | None:
        path = self._curve_path(curve_id)
        if not path.exists():
            return None
        return load_curve(path.read_text("utf-8"), name=curve_id)

    def list_curve_ids(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "curves").glob("*.csv"))

    def seed_curve(self, curve_id: str, curve: SensitivityCurve):
        path = self._curve_path(curve_id)
        if not path.exists():
            self._atomic_write(path, serialize_curve(curve))

    # -- plumbing -----------------------------------------------------------

    @staticmethod
    def _atomic_write(path: Path, text: str):
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def seed_defaults(store: PresetStore, default_threshold: float = 0.9):
    """Install the bundled school-class scenario and default PCR curve."""
    from .sensitivity import default_curve

    store.seed_curve("pcr_default", default_curve())
    if store.get_scenario("school_class") is None:
        preset = bundled_scenario("school_class")
        store.put_scenario(
            "school_class",
            {
                "name": preset["name"],
                "p_any_transmission": preset["p_any_transmission"],
                "mean_given_transmission": preset["mean_given_transmission"],
                "curve_id": "pcr_default",
                "threshold": default_threshold,
            },
            expected_version=0,
        )
