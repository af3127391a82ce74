import json

import pytest

from senselex.cli import main

# Frozen hand counts for the shipped tagged corpus (see test_corpus.py).
FIXTURE_PAIRS = 15
FIXTURE_AV = 11
FIXTURE_VA = 4


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_usage_error_exit_1():
    with pytest.raises(SystemExit) as err:
        main(["extract-pairs", "--no-such-flag"])
    assert err.value.code == 1
    with pytest.raises(SystemExit) as err:
        main(["definitely-not-a-command"])
    assert err.value.code == 1


def test_missing_file_exit_2(capsys):
    code, _, err = run_cli(capsys, "experiment", "--config",
                           "does-not-exist.cfg")
    assert code == 2
    assert "does-not-exist.cfg" in err


def test_extract_pairs_matches_fixture_oracle(capsys, fixtures_dir, tmp_path):
    pairs_path = tmp_path / "pairs.jsonl"
    code, out, _ = run_cli(
        capsys, "extract-pairs",
        "--corpus", str(fixtures_dir / "tagged_corpus.txt"),
        "--tagset", str(fixtures_dir / "tagset.cfg"),
        "--output", str(pairs_path), "--json")
    assert code == 0
    stats = json.loads(out)
    assert stats["pairs"] == FIXTURE_PAIRS
    assert stats["adverb_verb_count"] == FIXTURE_AV
    assert stats["verb_adverb_count"] == FIXTURE_VA
    assert len(pairs_path.read_text().splitlines()) == FIXTURE_PAIRS


def test_extract_pairs_rerun_byte_identical(capsys, fixtures_dir, tmp_path):
    paths = [tmp_path / "a.jsonl", tmp_path / "b.jsonl"]
    for path in paths:
        code, _, _ = run_cli(
            capsys, "extract-pairs",
            "--corpus", str(fixtures_dir / "tagged_corpus.txt"),
            "--tagset", str(fixtures_dir / "tagset.cfg"),
            "--output", str(path))
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_distribution_table_and_json(capsys, fixtures_dir, tmp_path):
    pairs_path = tmp_path / "pairs.jsonl"
    run_cli(capsys, "extract-pairs",
            "--corpus", str(fixtures_dir / "tagged_corpus.txt"),
            "--tagset", str(fixtures_dir / "tagset.cfg"),
            "--output", str(pairs_path))
    code, out, _ = run_cli(
        capsys, "distribution", "--pairs", str(pairs_path),
        "--lexicon", str(fixtures_dir / "corpus_lexicon.jsonl"))
    assert code == 0
    body = [line for line in out.splitlines()
            if any(line.lstrip().startswith(c) for c in
                   ("Spatial", "Temporal", "Force", "Measure"))]
    assert len(body) == 4
    assert all(line.count("%") == 7 for line in body)

    code, out, _ = run_cli(
        capsys, "distribution", "--pairs", str(pairs_path),
        "--lexicon", str(fixtures_dir / "corpus_lexicon.jsonl"), "--json")
    payload = json.loads(out)
    assert payload["skipped"] == 1
    assert payload["row_totals"] == [3, 4, 3, 4]


def test_distribution_from_corpus_directly(capsys, fixtures_dir):
    code, out, _ = run_cli(
        capsys, "distribution",
        "--corpus", str(fixtures_dir / "tagged_corpus.txt"),
        "--tagset", str(fixtures_dir / "tagset.cfg"),
        "--lexicon", str(fixtures_dir / "corpus_lexicon.jsonl"), "--json")
    assert code == 0
    assert json.loads(out)["row_totals"] == [3, 4, 3, 4]


def test_train_embeddings_and_featurize(capsys, tmp_path, fixtures_dir):
    reviews = tmp_path / "reviews.jsonl"
    with open(reviews, "w", encoding="utf-8") as fh:
        for i in range(8):
            fh.write(json.dumps({
                "id": f"r{i}", "text": "alpha beta gamma delta",
                "label": "pos" if i % 2 else "neg"}) + "\n")
    emb = tmp_path / "emb.txt"
    code, out, _ = run_cli(
        capsys, "train-embeddings", "--reviews", str(reviews),
        "--dim", "4", "--epochs", "1", "--output", str(emb))
    assert code == 0 and "dim 4" in out

    features = tmp_path / "features.jsonl"
    code, _, _ = run_cli(
        capsys, "featurize", "--reviews", str(reviews),
        "--embeddings", str(emb),
        "--sense-lexicon", str(fixtures_dir / "corpus_lexicon.jsonl"),
        "--use-sense", "--output", str(features))
    assert code == 0
    rows = [json.loads(line) for line in features.read_text().splitlines()]
    assert len(rows) == 8
    assert all(len(row["values"]) == 4 + 11 for row in rows)


def test_import_export_round_trip(capsys, tmp_path, fixtures_dir):
    store = tmp_path / "store"
    code, out, _ = run_cli(capsys, "import-lexicon", "--store", str(store),
                           "--input", str(fixtures_dir / "corpus_lexicon.jsonl"))
    assert code == 0 and "18" in out
    exported = tmp_path / "exported.jsonl"
    code, _, _ = run_cli(capsys, "export-lexicon", "--store", str(store),
                         "--output", str(exported))
    assert code == 0
    original = (fixtures_dir / "corpus_lexicon.jsonl").read_text().strip()
    round_tripped = exported.read_text().strip()
    original_ids = [json.loads(l)["word_id"] for l in original.splitlines()]
    back_ids = [json.loads(l)["word_id"] for l in round_tripped.splitlines()]
    assert back_ids == sorted(original_ids)
    # resolved tags preserved per word
    back = {json.loads(l)["word_id"]: json.loads(l).get("resolved")
            for l in round_tripped.splitlines()}
    for line in original.splitlines():
        obj = json.loads(line)
        assert back[obj["word_id"]] == obj.get("resolved")

    code, out, _ = run_cli(capsys, "export-lexicon", "--store", str(store),
                           "--pos", "verb", "--output", "-")
    assert code == 0
    assert all(json.loads(l)["pos"] == "verb" for l in out.strip().splitlines())


def test_experiment_subcommand_small(capsys, tmp_path, fixtures_dir):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        f"reviews = {fixtures_dir}/synthetic_reviews.jsonl\n"
        f"sense_lexicon = {fixtures_dir}/synthetic_sense_lexicon.jsonl\n"
        "embed_dim = 8\nembed_epochs = 1\nseeds = 0\n"
        "classifiers = knn\nfeature_configs = embeddings, +sense\n",
        encoding="utf-8")
    out_json = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "experiment", "--config", str(cfg),
                           "--output", str(out_json))
    assert code == 0
    assert "K-Nearest Neighbor" in out
    payload = json.loads(out_json.read_text())
    assert payload["feature_dims"] == {"embeddings": 8, "+sense": 19}
