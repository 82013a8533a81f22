import json

import pytest

from greenstream.cli import main
from greenstream.serialize import load_model

CSV_TEXT = "a,b,k\n" + "".join(
    f"{i % 2},{(i // 2) % 2},{'yes' if i % 2 else 'no'}\n" for i in range(400)
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestRun:
    def test_summary_json_on_stdout(self, capsys):
        code, out = run_cli(
            capsys,
            "run", "--algo", "gaht", "--stream", "led",
            "--instances", "3000", "--seed", "1",
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["config"]["algo"] == "gaht"
        assert summary["config"]["seed"] == 1
        assert summary["instances_seen"] == 3000
        assert 0.0 <= summary["final_accuracy"] <= 1.0
        assert "inactive_leaves" in summary["node_census"]
        assert "fast_nodes" in summary["node_census"]
        assert summary["proxy_energy"] > 0

    def test_degenerate_gaht_flags_match_ht(self, capsys):
        _, ht_out = run_cli(
            capsys,
            "run", "--algo", "ht", "--stream", "rtree",
            "--instances", "5000", "--seed", "4",
        )
        _, gaht_out = run_cli(
            capsys,
            "run", "--algo", "gaht", "--stream", "rtree",
            "--instances", "5000", "--seed", "4",
            "--deactivate-threshold", "0", "--grow-fast-threshold", "inf",
        )
        ht = json.loads(ht_out)
        gaht = json.loads(gaht_out)
        assert gaht["final_accuracy"] == ht["final_accuracy"]
        assert gaht["prediction_hash"] == ht["prediction_hash"]
        for key in ("total", "split_nodes", "active_leaves", "deactivated_leaves"):
            assert gaht["node_census"][key] == ht["node_census"][key]

    def test_snapshot_records_written(self, tmp_path, capsys):
        out_path = str(tmp_path / "snaps.jsonl")
        code, _ = run_cli(
            capsys,
            "run", "--algo", "ht", "--stream", "wave",
            "--instances", "2500", "--snapshot-every", "1000",
            "--seed", "2", "--out", out_path,
        )
        assert code == 0
        lines = [json.loads(l) for l in open(out_path)]
        assert [s["instances_seen"] for s in lines] == [1000, 2000]
        assert all("counters" in s for s in lines)

    def test_save_model_roundtrips(self, tmp_path, capsys):
        model_path = str(tmp_path / "m.json")
        code, _ = run_cli(
            capsys,
            "run", "--algo", "efdt", "--stream", "led",
            "--instances", "2000", "--seed", "3", "--save-model", model_path,
        )
        assert code == 0
        model = load_model(model_path)
        assert model.algorithm == "efdt"
        assert model.total_weight == 2000.0

    def test_file_input(self, tmp_path, capsys):
        csv_path = str(tmp_path / "data.csv")
        with open(csv_path, "w") as fh:
            fh.write(CSV_TEXT)
        code, out = run_cli(
            capsys,
            "run", "--algo", "ht", "--file", csv_path,
            "--instances", "400", "--seed", "1",
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["instances_seen"] == 400
        assert summary["final_accuracy"] > 0.9  # label == attribute a

    def test_seed_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("GREENSTREAM_SEED", "77")
        _, out = run_cli(
            capsys,
            "run", "--algo", "ht", "--stream", "led", "--instances", "500",
        )
        assert json.loads(out)["config"]["seed"] == 77

    def test_missing_source_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--algo", "ht", "--instances", "100"])
        assert exc.value.code == 2

    def test_unknown_algo_is_a_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--algo", "forest", "--stream", "led",
                  "--instances", "100"])
        assert exc.value.code == 2

    def test_missing_file_reports_error(self, capsys):
        code = main(["run", "--algo", "ht", "--file", "/nonexistent.csv",
                     "--instances", "10"])
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestCompare:
    def test_rank_artifact(self, tmp_path, capsys):
        out_path = str(tmp_path / "ranks.json")
        code, out = run_cli(
            capsys,
            "compare", "--algos", "ht,gaht", "--streams", "led,wave",
            "--instances", "2000", "--seed", "1", "--out", out_path,
        )
        assert code == 0
        artifact = json.loads(open(out_path).read())
        assert artifact["streams"] == ["led", "wave"]
        for metric in ("accuracy", "proxy_energy", "model_bytes"):
            block = artifact[metric]
            assert set(block["average_rank"]) == {"ht", "gaht"}
            for ds_ranks in block["ranks"].values():
                # ranks are 1,2 or an averaged tie 1.5,1.5 -- they sum to 3
                assert sum(ds_ranks.values()) == pytest.approx(3.0)
        # stdout carries the same artifact
        assert json.loads(out) == artifact

    def test_all_synthetic_expands(self, capsys):
        code, out = run_cli(
            capsys,
            "compare", "--algos", "ht,gaht", "--streams", "all-synthetic",
            "--instances", "300", "--seed", "1",
        )
        assert code == 0
        assert len(json.loads(out)["streams"]) == 6

    def test_unknown_algorithm_fails_cleanly(self, capsys):
        code = main(["compare", "--algos", "ht,forest", "--streams", "led",
                     "--instances", "100"])
        assert code == 1
        assert "forest" in capsys.readouterr().err
