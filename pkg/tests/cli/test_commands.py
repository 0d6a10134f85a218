"""
End-to-end tests for the command-line interface.
"""

import orjson
import pytest

from shapql.core.config import settings
from tests.factories import E1, E2, E3, E4, data_path

RECIPE = ["--kb", data_path("recipe.kbq"), "--query", data_path("landsea.q")]
RECIPE_VALUES = {str(E1): "7/12", str(E2): "1/4", str(E3): "1/12", str(E4): "1/12"}
PATH3 = [
    "--kb", data_path("path3.kbq"),
    "--query", data_path("path3.q"),
    "--path", "a0,a1,a2,a3",
]


def _error(result) -> dict:
    return orjson.loads(result.output.strip().splitlines()[-1])


# ── shapley ────────────────────────────────────────────────────────


class TestShapleyCommand:
    """Exact, sampled and single-player runs on the recipe."""

    @pytest.mark.parametrize(
        "method,tag",
        [("exact", "subset"), ("permutation", "permutation"), ("supports", "supports")],
    )
    def test_exact_methods(self, run_json, method, tag):
        record = run_json("shapley", *RECIPE, "--method", method)
        assert record["values"] == RECIPE_VALUES
        assert record["method"] == tag
        assert record["command"] == "shapley"

    def test_single_player_ignores_spaces(self, run_json):
        record = run_json("shapley", *RECIPE, "--player", "hasIngr(poulardeNantua, poularde)")
        assert record["values"] == {str(E1): "7/12"}

    def test_unknown_player(self, run):
        result = run("shapley", *RECIPE, "--player", "hasIngr(a,b)")
        assert result.exit_code == 2

    def test_sampling(self, run_json):
        record = run_json(
            "shapley", *RECIPE, "--method", "sample", "--player", str(E1),
            "--eps", "1/20", "--delta", "1/20",
        )
        assert record["samples"] == 738
        assert record["seed"] == 0
        assert record["method"] == "sample-additive"

    def test_sampling_needs_parameters(self, run):
        result = run("shapley", *RECIPE, "--method", "sample")
        assert result.exit_code == 2
        assert _error(result)["exit_code"] == 2

    def test_decimal_and_table(self, run, run_json):
        record = run_json("shapley", *RECIPE, "--decimal")
        assert record["approx_decimal"][str(E2)] == 0.25
        table = run("shapley", *RECIPE, "--table").output
        assert "entailment_calls" in table
        assert "7/12" in table

    def test_size_limit(self, run, monkeypatch):
        monkeypatch.setattr(settings, "EXACT_PLAYER_LIMIT", 2)
        result = run("shapley", *RECIPE)
        assert result.exit_code == 4

    def test_undecided_chase(self, run):
        result = run(
            "shapley", "--kb", data_path("endless.kbq"),
            "--query", data_path("b_of_a.q"), "--chase-depth", "2",
        )
        assert result.exit_code == 3

    def test_missing_file(self, run):
        result = run("shapley", "--kb", data_path("nope.kbq"), "--query", data_path("landsea.q"))
        assert result.exit_code == 2
        assert "File not found" in _error(result)["error"]


# ── supports and the reasoner ──────────────────────────────────────


class TestSupportsCommand:
    def test_recipe(self, run_json):
        extra = run_json("supports", *RECIPE)["extra"]
        assert len(extra["supports"]) == 2
        assert extra["complete"] is True
        assert extra["connected"] is True
        assert extra["size_bound"] == 3
        assert all(extra["relevant"].values())

    def test_cap(self, run_json):
        extra = run_json("supports", *RECIPE, "--cap", "2")["extra"]
        assert extra["complete"] is False
        assert "size_bound" not in extra


class TestReasonerCommands:
    def test_consistency(self, run_json):
        record = run_json("consistency", "--kb", data_path("recipe.kbq"))
        assert record["extra"] == {"consistency": "consistent"}

    def test_entails(self, run_json):
        assert run_json("entails", *RECIPE)["extra"] == {"verdict": "yes"}

    def test_undecided(self, run_json):
        record = run_json(
            "entails", "--kb", data_path("endless.kbq"),
            "--query", data_path("b_of_a.q"), "--chase-depth", "2",
        )
        assert record["extra"] == {"verdict": "unknown"}


# ── pqe ────────────────────────────────────────────────────────────


class TestPqeCommand:
    HALF = ["--kb", data_path("recipe_half.kbq"), "--query", data_path("landsea.q")]

    def test_probability(self, run_json):
        record = run_json("pqe", *self.HALF)
        assert record["values"] == {"probability": "5/16"}
        assert record["extra"]["regimes"]["half-one"] is True
        assert record["extra"]["regimes"]["half"] is False

    def test_regime_violation(self, run):
        result = run("pqe", *self.HALF, "--regime", "half")
        assert result.exit_code == 2
        assert _error(result)["details"]["regime"] == "half"

    def test_qstar(self, run_json):
        record = run_json("pqe", *self.HALF, "--qstar")
        assert record["values"]["pr_bottom"] == "0/1"
        assert record["values"]["plus_form"] == "5/16"
        assert record["extra"]["plus_holds"] is True


# ── lab ────────────────────────────────────────────────────────────


class TestLabCommands:
    """Counting reductions checked against brute force."""

    def test_st_count(self, run_json):
        extra = run_json("lab", "st-count", "--graph", data_path("triangle.dg"))["extra"]
        assert extra == {"via_shapley": 5, "brute": 5, "match": True}

    def test_is_count(self, run_json):
        extra = run_json(
            "lab", "is-count", *PATH3, "--graph", data_path("single_edge.bg")
        )["extra"]
        assert extra["interface"] == 1
        assert extra["via_shapley"] == 3
        assert extra["by_size"] == [1, 2, 0]
        assert extra["match"] is True

    def test_is_count_needs_an_unsplittable_interface(self, run):
        result = run(
            "lab", "is-count",
            "--kb", data_path("path3.kbq"),
            "--query", data_path("path3_split.q"),
            "--path", "a0,a1,a2,a3",
            "--graph", data_path("single_edge.bg"),
        )
        assert result.exit_code == 2
        assert "splittable" in _error(result)["error"]

    def test_verify_bijection(self, run_json):
        extra = run_json(
            "lab", "verify-bijection", *PATH3, "--graph", data_path("k22.bg")
        )["extra"]
        assert extra == {"interface": 1, "players": 4, "holds": True}

    def test_interfaces(self, run_json):
        extra = run_json("lab", "interfaces", *PATH3, "--interface", "1")["extra"]
        assert extra["splittable"] == {"1": False}
        assert extra["unsplittable"] == 1
        assert extra["classification"]["left"] == ["r1(a0,a1)"]
        assert extra["classification"]["right"] == ["r2(a1,a2)", "r3(a2,a3)"]

    def test_game_iso(self, run_json):
        record = run_json("lab", "game-iso", "--graph", data_path("triangle.dg"))
        assert record["values"] == {"s->a": "1/6", "a->t": "1/6", "s->t": "2/3"}
        assert record["extra"]["identical"] is True

    def test_bad_graph_file(self, run, tmp_path):
        bad = tmp_path / "bad.dg"
        bad.write_text("s s\n", encoding="utf-8")
        result = run("lab", "st-count", "--graph", str(bad))
        assert result.exit_code == 2
