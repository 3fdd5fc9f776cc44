import pytest

from ioaco.config import (ConfigError, derive_seed, format_dms, generate_dm_settings, parse_dm_text,
                          parse_interval, parse_plan_text)
from ioaco.intervals import Interval
from ioaco.outranking import DmValidationError

DM_TEXT = """
# two objectives
[dm low]
weights = 0.4,0.6; 0.4,0.6
indifference = 0.02,0.05; 0.02,0.05   # normalized units
veto = 0.2,0.4; 0.2,0.4
lambda = 0.6,0.7
beta = 0.67
"""


class TestIntervals:
    def test_parse(self):
        assert parse_interval("0.1, 0.3") == Interval(0.1, 0.3)
        assert parse_interval("2") == Interval(2, 2)

    @pytest.mark.parametrize("text", ["a,b", "1,2,3", "3,1"])
    def test_bad(self, text):
        with pytest.raises(ConfigError):
            parse_interval(text)


class TestDmText:
    def test_parse(self):
        (dm,) = parse_dm_text(DM_TEXT)
        assert dm.name == "low" and dm.n == 2
        assert dm.indifference[1] == Interval(0.02, 0.05)

    def test_round_trip(self):
        dms = generate_dm_settings(4, 7, 5)
        assert parse_dm_text(format_dms(dms)) == dms

    def test_missing_key(self):
        with pytest.raises(ConfigError, match="beta"):
            parse_dm_text(DM_TEXT.replace("beta = 0.67", ""))

    def test_invalid_model(self):
        with pytest.raises(DmValidationError):
            parse_dm_text(DM_TEXT.replace("lambda = 0.6,0.7", "lambda = 0.3,0.7"))

    def test_unnamed(self):
        with pytest.raises(ConfigError):
            parse_dm_text("[dm]\nbeta = 1\n")


class TestGenerator:
    def test_valid_and_deterministic(self):
        for m in (3, 5, 10):
            dms = generate_dm_settings(10, 2024, m)
            assert dms == generate_dm_settings(10, 2024, m)
            for dm in dms:
                assert sum(w.lo for w in dm.weights) <= 1 <= sum(w.hi for w in dm.weights)
                assert (dm.lam.lo, dm.lam.hi) == (0.6, 0.7) and dm.beta == 0.67
                assert dm.veto[0] == Interval(0.2, 0.4) and dm.indifference[0] == Interval(0.02, 0.05)

    def test_seed_matters(self):
        assert generate_dm_settings(2, 1, 3) != generate_dm_settings(2, 2, 3)

    def test_overrides(self):
        (dm,) = generate_dm_settings(1, 0, 3, lam=(0.55, 0.65), beta=0.8)
        assert dm.lam == Interval(0.55, 0.65) and dm.beta == 0.8

    def test_count(self):
        with pytest.raises(ValueError):
            generate_dm_settings(0, 1, 3)


def test_derive_seed():
    s = derive_seed(2024, "dtlz2", 3, "d0", 7)
    assert s == derive_seed(2024, "dtlz2", 3, "d0", 7)
    assert 0 <= s < 2**63
    assert s != derive_seed(2024, "dtlz2", 3, "d0", 8)


class TestPlan:
    def test_parse(self):
        plan = parse_plan_text("[plan]\nproblems = dtlz1:3, WFG4:5\nseeds_per_cell = 5\ndms = generate 2\n")
        assert plan.problems == [("dtlz1", 3), ("wfg4", 5)]
        assert plan.seeds_per_cell == 5 and plan.dm_count == 2
        assert [dm.name for dm in plan.dms_for(5)] == ["m5-d0", "m5-d1"]

    def test_file_dms(self):
        text = """
[dm three]
weights = 0.3,0.4; 0.3,0.4; 0.3,0.4
indifference = 0.02,0.05; 0.02,0.05; 0.02,0.05
veto = 0.2,0.4; 0.2,0.4; 0.2,0.4
lambda = 0.6,0.7
beta = 0.67

[plan]
problems = dtlz2:3
dms = file
"""
        plan = parse_plan_text(text)
        assert [dm.name for dm in plan.dms_for(3)] == ["three"]

    def test_file_dms_wrong_size(self):
        with pytest.raises(ConfigError, match="objectives"):
            parse_plan_text(DM_TEXT + "[plan]\nproblems = dtlz2:3\ndms = file\n")

    @pytest.mark.parametrize("body,match", [
        ("problems = dtlz2", "dtlz2:3"),
        ("problems = dtlz2:x", "objective"),
        ("problems = zdt1:3", "unknown problem"),
        ("algorithms = ioaco, nsga2", "algorithm"),
        ("colour = red", "unknown plan keys"),
        ("dms = random", "dms"),
        ("seeds_per_cell = 0", "seeds_per_cell"),
    ])
    def test_errors(self, body, match):
        with pytest.raises((ConfigError, ValueError), match=match):
            parse_plan_text(f"[plan]\n{body}\n")

    def test_empty_plan(self):
        assert parse_plan_text("[plan]\n").problems == []

    def test_no_plan_section(self):
        with pytest.raises(ConfigError):
            parse_plan_text(DM_TEXT)
