import pytest

import lcongr


@pytest.fixture(scope="module")
def kit():
    return lcongr.Toolkit()


def test_labels(kit):
    labels = kit.labels()
    assert "11a1" in labels
    assert len(labels) == len(set(labels))


def test_lratio(kit):
    assert kit.lratio("11a1") == "1/5"
    r = kit.lvalue("11a1")
    assert r["root_number"] == 1
    assert r["lratio"] == "1/5"


def test_twist_clash(kit):
    r = kit.twist("50b1", "5:2:chi(2)=z")
    assert r["algebraic"] == "1/3"
    assert not r["integral"]


def test_modsym(kit):
    values = [kit.modsym("11a1", a, 7)["plus"] for a in range(1, 7)]
    assert values == [1, 1, -4, -4, 1, 1]


def test_congruence(kit):
    assert kit.congruence("1356d1", "7:3:chi(3)=z2")["match"]


def test_tables():
    for which in ("1", "2", "conj"):
        rows = lcongr.verify_table(which)
        assert rows and all(r["ok"] for r in rows)


def test_sweep_residue():
    assert lcongr.sweep_residue("1/5", 10, 3) == 1
    assert lcongr.sweep_residue("1/3", 6, 3) == 1
    with pytest.raises(lcongr.LcongrError):
        lcongr.sweep_residue("1/3", 7, 3)


def test_density(kit):
    r = kit.density("11a1", limit=5000)
    assert r["eligible"] == sum(r["counts"])
    assert r["prediction"] is not None
    assert r["max_deviation"] < 0.05


def test_kn_gcd(kit):
    assert kit.kn_gcd("11a1")["gcd"] == 5
    assert kit.kn_gcd("15a1")["gcd"] == 4


def test_errors(kit):
    with pytest.raises(lcongr.LcongrError) as info:
        kit.lratio("nope")
    assert info.value.kind == "UnknownLabel"
    with pytest.raises(lcongr.LcongrError):
        lcongr.verify_table("3")
