import json
from fractions import Fraction

import pytest

import cyclocode


def test_volumes_and_bounds():
    assert cyclocode.ball_volume(7, 2, 2) == 29
    assert cyclocode.cw_ball_volume(6, 3, 2) == 10
    assert cyclocode.gv_bound(7, 2, 3) == Fraction(128, 29)
    report = cyclocode.bounds(6, d=3, w=3)
    rows = {e["key"]: e for e in report["entries"]}
    assert rows["levenshtein"]["exact"]["exact"] == "2"


def test_distances():
    assert cyclocode.auto_distance([0, 0, 1, 0, 1, 1, 1], 2) == 4
    assert cyclocode.class_distance([0, 0, 1], [0, 1, 1], 2) == 1
    with pytest.raises(cyclocode.DomainError):
        cyclocode.auto_distance([0, 2], 2)


def test_construct_and_verify():
    report, words = cyclocode.construct(7, 2, 3, exact_limit=40)
    assert report["verdict"]["pass"]
    assert len(words) == 14
    assert report["solver"]["exact_size"] == 2
    assert cyclocode.verify(words, 7, 2, 3)["pass"]
    broken = [list(w) for w in words]
    broken[0][0] ^= 1
    assert not cyclocode.verify(broken, 7, 2, 3)["pass"]

    ooc_report, ooc = cyclocode.construct(7, 2, 3, weight=3)
    assert ooc_report["verdict"]["pass"]
    assert all(sum(w) == 3 for w in ooc)


def test_construct_is_reproducible():
    a = cyclocode.construct(9, 3, 4, solver="random-restart", seed=5)
    b = cyclocode.construct(9, 3, 4, solver="random-restart", seed=5, threads=3)
    assert json.dumps(a[0]) == json.dumps(b[0])
    assert a[1] == b[1]


def test_correlations_and_concentration():
    _, words = cyclocode.construct(7, 2, 3)
    reps = sorted({min(tuple(w[i:] + w[:i]) for i in range(7)) for w in words})
    c = cyclocode.correlations([list(r) for r in reps], 2)
    assert c["lambda_achieved"] <= 7 - 3
    s = cyclocode.exact_set_a(10, 2, 0.1)
    assert s["holds"]
    t1 = cyclocode.mc_tail(40, 2, 0.1, 2000, seed=3)
    t2 = cyclocode.mc_tail(40, 2, 0.1, 2000, seed=3, threads=2)
    assert t1["hits"] == t2["hits"]


def test_code_files():
    text = cyclocode.write_code("OOC", 7, 2, 3, [[1, 1, 0, 1, 0, 0, 0]], weight=3)
    header, words = cyclocode.read_code(text)
    assert header["kind"] == "OOC"
    assert words == [[1, 1, 0, 1, 0, 0, 0]]
    with pytest.raises(cyclocode.ParseError):
        cyclocode.read_code("HCC 7 2\n")
    with pytest.raises(cyclocode.CapacityError):
        cyclocode.construct(40, 2, 3)
