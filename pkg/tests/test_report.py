"""Check records and report serialization."""
from __future__ import annotations

import json
import math

import numpy as np
import pytest

from fenchellab.report import ANCHOR_REGISTRY, CheckRecord, VerificationReport


class TestCheckRecord:
    def test_unknown_anchor_rejected(self):
        with pytest.raises(ValueError, match="not in the registry"):
            CheckRecord("x.y", "Lemma 99", True)

    def test_registry_covers_the_verified_statements(self):
        for anchor in ("plumbing", "Lemma 1", "Lemma 6", "Corollary 2",
                       "Theorem 3", "inequality (12)", "condition i1",
                       "Stirling bound"):
            assert anchor in ANCHOR_REGISTRY

    def test_numpy_scalars_normalized(self):
        r = CheckRecord("a.b", "Lemma 1", np.bool_(True),
                        margin=np.float64(0.5))
        assert type(r.passed) is bool
        assert type(r.margin) is float

    def test_margin_may_be_absent(self):
        r = CheckRecord("a.b", "plumbing", True)
        assert r.margin is None


class TestVerificationReport:
    def _sample(self) -> VerificationReport:
        rep = VerificationReport(command="demo", seed=7)
        rep.add(CheckRecord("z.last", "Lemma 1", True, margin=0.25))
        rep.add(CheckRecord("a.first", "Lemma 2", True, margin=1e-9))
        return rep

    def test_duplicate_id_rejected(self):
        rep = self._sample()
        with pytest.raises(ValueError, match="duplicate"):
            rep.add(CheckRecord("z.last", "Lemma 1", True))

    def test_records_sorted_by_id(self):
        d = self._sample().to_dict()
        ids = [r["check_id"] for r in d["records"]]
        assert ids == sorted(ids)

    def test_json_is_deterministic(self):
        a = self._sample().to_json()
        b = self._sample().to_json()
        assert a == b

    def test_infinity_and_nan_become_strings(self):
        rep = VerificationReport(command="demo")
        rep.add(CheckRecord("a.a", "Lemma 1", False, margin=math.inf,
                            constants={"bad": math.nan}))
        d = json.loads(rep.to_json())
        assert d["records"][0]["margin"] == "inf"
        assert d["records"][0]["constants"]["bad"] == "nan"

    def test_complex_constants_split(self):
        rep = VerificationReport(command="demo")
        rep.add(CheckRecord("a.a", "Lemma 1", True,
                            constants={"z": complex(1.0, -2.0)}))
        d = json.loads(rep.to_json())
        assert d["records"][0]["constants"]["z"] == {"re": 1.0, "im": -2.0}

    def test_summary_and_pass_flag(self):
        rep = self._sample()
        assert rep.summary() == {"total": 2, "passed": 2, "failed": 0}
        assert rep.passed
        rep.add(CheckRecord("m.mid", "Lemma 3", False, margin=-0.5))
        assert rep.summary()["failed"] == 1
        assert not rep.passed

    def test_lines_format(self):
        rep = self._sample()
        rep.add(CheckRecord("m.mid", "Lemma 3", False, margin=-0.5))
        lines = rep.lines()
        assert lines[-1] == "2/3 checks passed"
        assert any(l.startswith("[PASS] a.first") for l in lines)
        assert any(l.startswith("[FAIL] m.mid") for l in lines)

    def test_timestamp_opt_out(self):
        with_ts = VerificationReport.start("demo", seed=1)
        without = VerificationReport.start("demo", seed=1,
                                           with_timestamp=False)
        assert with_ts.timestamp is not None
        assert without.timestamp is None
        assert "timestamp" not in json.loads(without.to_json())

    def test_write_roundtrip(self, tmp_path):
        rep = self._sample()
        path = tmp_path / "report.json"
        rep.write(path)
        on_disk = json.loads(path.read_text())
        assert on_disk == json.loads(rep.to_json())
