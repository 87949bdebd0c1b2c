"""Smoke test for the mhcheck Python bindings.

Build and install first:  pip install -e crates/py --no-build-isolation
Then run:                 python python/smoke_test.py   (or pytest python/)
"""

import json

import mhcheck_py as mh


def test_gallery_names():
    assert "A_G" in mh.gallery_names()
    assert "taft" in mh.gallery_names()


def test_a_g_bundle_passes_its_declarations():
    bundle = mh.Bundle.gallery("A_G", group="Z4", subgroup="0,2")
    assert sorted(bundle.mha_ids()) == ["A", "Y"]
    report = bundle.verify()
    assert report.ok, report.to_text()
    parsed = json.loads(report.to_json())
    assert parsed["report_version"] == 1
    statuses = {(s, st) for s, _, st in report.statuses()}
    assert ("global", "expected_fail_confirmed") in statuses


def test_mha_and_coaction_objects():
    bundle = mh.Bundle.gallery("A_G")
    a = bundle.mha("A")
    assert len(a) == 4 and a.is_dense
    assert a.hopf().ok
    rho = bundle.coaction("rho")
    assert rho.t_rank() == (4, 8)
    assert rho.check("partial").ok
    assert not rho.check("global").ok


def test_json_round_trip_and_errors():
    text = mh.gallery_json("sweedler", alpha=2)
    bundle = mh.Bundle.from_json(text)
    assert bundle.verify(suite="h_conditions").ok
    try:
        mh.Bundle.from_json("{}")
    except ValueError as e:
        assert "$" in str(e)
    else:
        raise AssertionError("empty document accepted")
    try:
        mh.Bundle.gallery("no_such_bundle")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown gallery accepted")


def test_smash_round_trip():
    smash = mh.Bundle.gallery("A_G").smash()
    assert len(smash.mha("smash")) == 4
    assert smash.verify(suite="bialgebra").ok
    try:
        mh.Bundle.gallery("sweedler").smash()
    except mh.PreconditionError as e:
        assert "not commutative" in str(e)
    else:
        raise AssertionError("smash over a noncommutative A accepted")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok  {name}")
