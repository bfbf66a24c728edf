"""Smoke tests for the python bindings."""

import json
import math

import pytest

kf = pytest.importorskip("kleinfusion")


def test_label_counts():
    assert kf.label_count(3) == 22
    assert kf.label_count(4) == 38
    assert len(kf.labels(6)) == 49


def test_canonicalize_aliases():
    assert kf.canonicalize("T1:4:+", 5) == "T1:1:+"
    assert kf.canonicalize("U:3:-", 5) == "U:3:+"
    with pytest.raises(ValueError):
        kf.canonicalize("T1:2:+", 4)


def test_qdim():
    assert kf.qdim_float("U:0:v1", 5) == pytest.approx(1.0)
    assert kf.qdim_float("U:2:v1", 4) == pytest.approx(2.0)
    want = 2 * math.sin(2 * math.pi / 7) / math.sin(math.pi / 7)
    assert kf.qdim_float("T3:1:-", 5) == pytest.approx(want, abs=1e-12)
    coeffs = kf.qdim_coeffs("U:0:v1", 3)
    assert coeffs[0] == "1/1"
    assert all(c == "0/1" for c in coeffs[1:])


def test_fusion_table():
    t = kf.FusionTable(4)
    assert t.k == 4
    assert t.fuse("U:2:v1", "U:2:v1") == {"U:0:v1": 1, "U:2:v4": 1, "U:4:v1": 1}
    assert t.mult("U:1:+", "U:1:+", "U:0:v3") == 1
    back = kf.FusionTable.from_json(t.to_json())
    assert back == t


def test_verify_report():
    rep = json.loads(kf.verify(4, seed=3))
    assert rep["k"] == 4
    assert all(c["status"] == "pass" for c in rep["checks"])
