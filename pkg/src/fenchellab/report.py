"""Machine-readable verification reports.

Every check run by the suite produces a :class:`CheckRecord` tagged with an
anchor from :data:`ANCHOR_REGISTRY` — the registry of numbered statements
(lemmas, propositions, theorems, inequalities, family conditions) that the
toolkit verifies, plus ``"plumbing"`` for infrastructure checks.  Reports
serialize to deterministic JSON: records sorted by check id, keys sorted,
non-finite floats encoded as strings, and the timestamp optional so two
runs with the same seed produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

__version__ = "0.1.0"

__all__ = ["ANCHOR_REGISTRY", "CheckRecord", "VerificationReport"]


# The numbered statements the suite can certify.  Anchors are the suite's
# stable vocabulary: acceptance tests and downstream dashboards key on
# them, so additions are append-only.
ANCHOR_REGISTRY: tuple[str, ...] = (
    "plumbing",
    "Lemma 1",
    "Lemma 2",
    "Lemma 3",
    "Lemma 4",
    "Lemma 5",
    "Lemma 6",
    "Corollary 1",
    "Corollary 2",
    "Proposition 1",
    "Proposition 2",
    "Proposition 3",
    "Proposition 4",
    "Theorem 1",
    "Theorem 2",
    "Theorem 3",
    "Theorem 4",
    "Remark 1",
    "Remark 2",
    "inequality (1)",
    "inequality (3)",
    "inequality (5)",
    "inequality (7)",
    "inequality (9)",
    "inequality (12)",
    "inequality (18)",
    "inequality (19)",
    "inequality (20)",
    "inequality (21)",
    "inequality (22)",
    "condition i0",
    "condition i1",
    "condition i2",
    "condition i3",
    "condition i4",
    "Stirling bound",
)


def _jsonable(value):
    """Recursively convert witnesses/constants into valid, sortable JSON."""
    if value is None or isinstance(value, (bool, str, int)):
        return value
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, complex):
        return {"re": _jsonable(value.real), "im": _jsonable(value.imag)}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return _jsonable(value.item())
    return str(value)


@dataclass(frozen=True)
class CheckRecord:
    """One verified statement instance.

    ``margin`` is RHS minus LHS for inequality checks (None when the check
    is a flag, e.g. a convergence verdict); ``witness`` locates the extremal
    configuration; ``truncation`` records grid radii / lattice bounds;
    ``constants`` embeds every estimated constant so reruns detect drift.
    """

    check_id: str
    anchor: str
    passed: bool
    margin: float | None = None
    witness: dict | None = None
    truncation: dict | None = None
    constants: dict | None = None

    def __post_init__(self):
        if self.anchor not in ANCHOR_REGISTRY:
            raise ValueError(f"anchor {self.anchor!r} is not in the registry; "
                             f"known anchors: {', '.join(ANCHOR_REGISTRY)}")
        if not self.check_id:
            raise ValueError("check_id must be non-empty")
        # numpy comparison results sneak in as np.bool_; pin the plain type
        # so report serialization never depends on who computed the flag
        object.__setattr__(self, "passed", bool(self.passed))
        if self.margin is not None:
            object.__setattr__(self, "margin", float(self.margin))

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "passed": self.passed,
            "margin": _jsonable(self.margin),
            "witness": _jsonable(self.witness),
            "truncation": _jsonable(self.truncation),
            "constants": _jsonable(self.constants),
        }


@dataclass
class VerificationReport:
    """An ordered collection of check records plus run metadata."""

    command: str
    seed: int | None = None
    tolerances: dict = field(default_factory=dict)
    records: list[CheckRecord] = field(default_factory=list)
    timestamp: str | None = None

    @classmethod
    def start(cls, command: str, seed: int | None = None,
              tolerances: dict | None = None,
              with_timestamp: bool = True) -> "VerificationReport":
        ts = datetime.now(timezone.utc).isoformat() if with_timestamp else None
        return cls(command=command, seed=seed, tolerances=dict(tolerances or {}),
                   timestamp=ts)

    def add(self, record: CheckRecord) -> None:
        if any(r.check_id == record.check_id for r in self.records):
            raise ValueError(f"duplicate check id {record.check_id!r}")
        self.records.append(record)

    def extend(self, records) -> None:
        for r in records:
            self.add(r)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def summary(self) -> dict:
        total = len(self.records)
        ok = sum(1 for r in self.records if r.passed)
        return {"total": total, "passed": ok, "failed": total - ok}

    def to_dict(self) -> dict:
        out = {
            "version": __version__,
            "command": self.command,
            "seed": self.seed,
            "tolerances": _jsonable(self.tolerances),
            "summary": self.summary(),
            "records": [r.to_dict() for r in sorted(self.records,
                                                    key=lambda r: r.check_id)],
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True,
                          allow_nan=False) + "\n"

    def write(self, path) -> None:
        with open(str(path), "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    def lines(self) -> list[str]:
        """One human-readable pass/fail line per record, sorted by id."""
        out = []
        for r in sorted(self.records, key=lambda r: r.check_id):
            mark = "PASS" if r.passed else "FAIL"
            margin = "" if r.margin is None else f" margin={r.margin:.3g}"
            out.append(f"[{mark}] {r.check_id} ({r.anchor}){margin}")
        s = self.summary()
        out.append(f"{s['passed']}/{s['total']} checks passed")
        return out
