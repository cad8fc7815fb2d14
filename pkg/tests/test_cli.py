import json

import pytest

from lexrel.cli import main

from conftest import write_jsonl

FAST_CONFIG = """
extraction.max_n = 2
extraction.min_term_freq = 2
model.architecture = 8
train.max_iterations = 30
train.initial_lr = 0.3
train.batch_size = 8
train.val_fraction = 0.25
train.seed = 1
"""


def make_training_corpus(path, n_per_class=20):
    records = []
    for i in range(n_per_class):
        records.append({
            "id": f"p{i}",
            "text": f"writ granted and case remanded for filler{i % 5} review",
            "label": 1,
        })
        records.append({
            "id": f"n{i}",
            "text": f"quarterly newsletter about filler{i % 5} revenue and growth",
            "label": 0,
        })
    write_jsonl(path, records)


@pytest.fixture
def workspace(tmp_path):
    corpus = tmp_path / "train.jsonl"
    make_training_corpus(corpus)
    config = tmp_path / "fast.cfg"
    config.write_text(FAST_CONFIG)
    return tmp_path, corpus, config


def run(argv):
    return main([str(a) for a in argv])


class TestExtractKeywords:
    def test_writes_keyword_file(self, workspace, capsys):
        tmp, corpus, config = workspace
        out = tmp / "kw.json"
        assert run(["extract-keywords", "--config", config, "--train", corpus, "--out", out]) == 0
        payload = json.loads(out.read_text())
        terms = [k["term"] for k in payload["keywords"]]
        assert "granted" in terms
        assert "writ granted" in terms
        assert "newsletter" not in terms  # negative-only terms score 0
        assert len(payload["config_fingerprint"]) == 48

    def test_single_class_corpus_exits_2(self, tmp_path, capsys):
        corpus = tmp_path / "one.jsonl"
        write_jsonl(corpus, [{"id": "a", "text": "x y", "label": 1},
                             {"id": "b", "text": "y z", "label": 1}])
        assert run(["extract-keywords", "--train", corpus, "--out", tmp_path / "kw.json"]) == 2

    def test_unknown_config_key_exits_2(self, workspace):
        tmp, corpus, _ = workspace
        bad = tmp / "bad.cfg"
        bad.write_text("extraction.maxn = 4\n")
        code = run(["extract-keywords", "--config", bad, "--train", corpus, "--out", tmp / "kw.json"])
        assert code == 2


@pytest.fixture
def trained(workspace, capsys):
    tmp, corpus, config = workspace
    kw = tmp / "kw.json"
    model = tmp / "model.json"
    assert run(["extract-keywords", "--config", config, "--train", corpus, "--out", kw]) == 0
    assert run(["train", "--config", config, "--train", corpus, "--keywords", kw, "--out", model]) == 0
    capsys.readouterr()
    return tmp, corpus, config, kw, model


class TestTrain:
    def test_writes_model_and_epoch_log(self, trained):
        tmp, _, _, _, model = trained
        assert model.exists()
        log_lines = (tmp / "model.log").read_text().splitlines()
        assert log_lines[0] == "epoch\ttrain_loss\tval_loss\tlr\timproved"
        assert len(log_lines) >= 2

    def test_missing_keyword_file_exits_2(self, workspace):
        tmp, corpus, config = workspace
        code = run(["train", "--config", config, "--train", corpus,
                    "--keywords", tmp / "missing.json", "--out", tmp / "m.json"])
        assert code == 2


class TestEvaluate:
    def test_perfect_model_on_training_data(self, trained, capsys):
        tmp, corpus, config, kw, model = trained
        assert run(["evaluate", "--config", config, "--model", model,
                    "--keywords", kw, "--test", corpus]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert lines[0].startswith("run_name\taccuracy\tf1")
        cells = lines[1].split("\t")
        assert cells[0] == "model"
        assert float(cells[1]) == 100.0

    def test_baseline_rows(self, trained, capsys):
        tmp, corpus, config, kw, model = trained
        manual = tmp / "manual.txt"
        manual.write_text("granted\n")
        assert run(["evaluate", "--config", config, "--model", model, "--keywords", kw,
                    "--test", corpus, "--train", corpus, "--with-baselines",
                    "--manual-keywords", manual]) == 0
        out = capsys.readouterr().out
        names = [line.split("\t")[0] for line in out.strip().splitlines()[1:]]
        assert names == [
            "model", "baseline_majority", "baseline_always_positive",
            "baseline_manual_keywords",
        ]

    def test_dimension_mismatch_exits_2(self, trained, capsys):
        tmp, corpus, config, kw, model = trained
        short = tmp / "short.json"
        payload = json.loads(kw.read_text())
        payload["keywords"] = payload["keywords"][:1]
        short.write_text(json.dumps(payload))
        code = run(["evaluate", "--config", config, "--model", model,
                    "--keywords", short, "--test", corpus])
        assert code == 2


class TestClassify:
    def test_jsonl_in_jsonl_out(self, trained, capsys):
        tmp, corpus, config, kw, model = trained
        unlabeled = tmp / "new.jsonl"
        write_jsonl(unlabeled, [
            {"id": "u1", "text": "writ granted and remanded"},
            {"id": "u2", "text": "newsletter growth story"},
            {"id": "u3", "text": ""},  # empty documents are classified, never skipped
        ])
        out = tmp / "preds.jsonl"
        assert run(["classify", "--config", config, "--model", model,
                    "--keywords", kw, str(unlabeled), "--out", out]) == 0
        records = [json.loads(line) for line in out.read_text().splitlines()]
        assert [r["id"] for r in records] == ["u1", "u2", "u3"]
        assert records[0]["label"] == 1
        assert records[1]["label"] == 0
        assert all(0.0 < r["probability"] < 1.0 for r in records)

    def test_directory_of_txt_files(self, trained, capsys):
        tmp, corpus, config, kw, model = trained
        docs = tmp / "docs"
        docs.mkdir()
        (docs / "one.txt").write_text("writ granted on appeal")
        (docs / "two.txt").write_text("nothing legal at all")
        assert run(["classify", "--config", config, "--model", model,
                    "--keywords", kw, docs]) == 0

    def test_txt_ids_are_file_paths(self, trained, capsys):
        tmp, corpus, config, kw, model = trained
        txt = tmp / "single.txt"
        txt.write_text("writ granted")
        assert run(["classify", "--config", config, "--model", model,
                    "--keywords", kw, txt]) == 0
        out = capsys.readouterr().out
        record = json.loads(out.strip().splitlines()[0])
        assert record["id"] == str(txt)


class TestSweep:
    def test_grid_rows(self, workspace, capsys):
        tmp, corpus, config = workspace
        grid = tmp / "grid.txt"
        grid.write_text("extraction.max_n = 1, 2\nscoring.df_weight = 0.5, 0.75\n")
        assert run(["sweep", "--config", config, "--grid", grid,
                    "--train", corpus, "--test", corpus]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert len(lines) == 5  # header + 2x2 combinations
        assert lines[1].startswith("max_n=1,df_weight=0.5\t")

    def test_empty_grid_exits_2(self, workspace):
        tmp, corpus, config = workspace
        grid = tmp / "grid.txt"
        grid.write_text("# nothing\n")
        assert run(["sweep", "--config", config, "--grid", grid,
                    "--train", corpus, "--test", corpus]) == 2

    def test_unknown_grid_key_exits_2(self, workspace):
        tmp, corpus, config = workspace
        grid = tmp / "grid.txt"
        grid.write_text("scoring.bogus = 1, 2\n")
        assert run(["sweep", "--config", config, "--grid", grid,
                    "--train", corpus, "--test", corpus]) == 2


class TestRerunnability:
    def test_identical_artifacts_across_runs(self, workspace, capsys):
        tmp, corpus, config = workspace
        outputs = []
        for tag in ("one", "two"):
            kw = tmp / f"kw_{tag}.json"
            model = tmp / f"model_{tag}.json"
            assert run(["extract-keywords", "--config", config, "--train", corpus, "--out", kw]) == 0
            assert run(["train", "--config", config, "--train", corpus,
                        "--keywords", kw, "--out", model]) == 0
            outputs.append((kw.read_bytes(), model.read_bytes()))
        assert outputs[0] == outputs[1]


class TestGlobalFlags:
    def test_seed_override_changes_model(self, workspace, capsys):
        tmp, corpus, config = workspace
        kw = tmp / "kw.json"
        assert run(["extract-keywords", "--config", config, "--train", corpus, "--out", kw]) == 0
        models = {}
        for seed in ("1", "1", "2"):
            model = tmp / f"model_s{seed}_{len(models)}.json"
            assert run(["train", "--config", config, "--seed", seed, "--train", corpus,
                        "--keywords", kw, "--out", model]) == 0
            models[len(models)] = model.read_bytes()
        assert models[0] == models[1]
        assert models[0] != models[2]

    def test_threads_flag_preserves_output(self, workspace, capsys):
        tmp, corpus, config = workspace
        kw = tmp / "kw.json"
        preds1, preds2 = tmp / "p1.jsonl", tmp / "p2.jsonl"
        model = tmp / "model.json"
        assert run(["extract-keywords", "--config", config, "--train", corpus, "--out", kw]) == 0
        assert run(["train", "--config", config, "--train", corpus, "--keywords", kw, "--out", model]) == 0
        assert run(["classify", "--config", config, "--model", model, "--keywords", kw,
                    corpus, "--out", preds1]) == 0
        assert run(["classify", "--config", config, "--threads", "4", "--model", model,
                    "--keywords", kw, corpus, "--out", preds2]) == 0
        assert preds1.read_bytes() == preds2.read_bytes()


class TestFingerprintWarning:
    def test_train_warns_on_config_mismatch(self, trained, capsys):
        tmp, corpus, config, kw, model = trained
        other_cfg = tmp / "other.cfg"
        other_cfg.write_text(FAST_CONFIG + "extraction.max_n = 3\n")
        assert run(["train", "--config", other_cfg, "--train", corpus,
                    "--keywords", kw, "--out", tmp / "m2.json"]) == 0
        assert "does not match" in capsys.readouterr().err


class TestStatsDump:
    def test_dump_stats_tsv(self, workspace, capsys):
        tmp, corpus, config = workspace
        stats_path = tmp / "stats.tsv"
        assert run(["extract-keywords", "--config", config, "--train", corpus,
                    "--out", tmp / "kw.json", "--dump-stats", stats_path]) == 0
        lines = stats_path.read_text().splitlines()
        assert lines[0] == "term\tpos_freq\tneg_freq\tpos_docs\tneg_docs"
        assert len(lines) > 10


class TestSweepCaching:
    def test_scoring_only_sweep_counts_once(self, workspace, capsys, monkeypatch):
        import lexrel.cli as cli_module

        calls = []
        real = cli_module.accumulate_stats

        def counting(*args, **kwargs):
            calls.append(1)
            return real(*args, **kwargs)

        monkeypatch.setattr(cli_module, "accumulate_stats", counting)
        tmp, corpus, config = workspace
        grid = tmp / "grid.txt"
        grid.write_text("scoring.df_weight = 0.5, 0.75\nscoring.penalty_exponent = 2, 10\n")
        assert run(["sweep", "--config", config, "--grid", grid,
                    "--train", corpus, "--test", corpus]) == 0
        assert len(calls) == 1  # KE stage unaffected by scoring-only changes
