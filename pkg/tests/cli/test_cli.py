"""Tests for the firecast command-line interface."""

import json
import logging
import shutil
from pathlib import Path
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from firecast.cli.commands import image_timestamp, main, parse_window
from firecast.common.errors import InputError, TrainingDivergenceError
from firecast.config import ArchitectureConfig
from firecast.io import model_save, synth_generate
from firecast.nn import init_model

CONFIG_TOML = """
[architecture]
input_height = 8
input_width = 8
filters = 2
hidden_units = 8
"""


@pytest.fixture(autouse=True)
def reset_logging():
    """setup_logger binds the root handler to CliRunner's stderr; drop it after each test."""
    yield
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "firecast.toml"
    path.write_text(CONFIG_TOML)
    return path


@pytest.fixture
def dataset(tmp_path):
    synth_generate(tmp_path / "data", count=8, seed=2, image_size=8)
    return tmp_path / "data"


@pytest.fixture
def fire_model(tmp_path):
    """8x8 model whose output is forced to fire."""
    model = init_model(ArchitectureConfig(input_height=8, input_width=8, filters=2, hidden_units=8), seed=0)
    model.output.weights[:] = 0.0
    model.output.bias[:] = 30.0
    return model_save(model, tmp_path / "fire_model.json")


@pytest.fixture
def init_file(tmp_path):
    path = tmp_path / "init.json"
    path.write_text(json.dumps({"values": [0.5] * 7}))
    return path


def invoke(runner, *args):
    return runner.invoke(main, ["--log-level", "ERROR", *[str(a) for a in args]])


def test_parse_window():
    assert parse_window("100:200") == (100, 200)
    assert parse_window(" 5 : 5 ") == (5, 5)


def test_image_timestamp():
    assert image_timestamp(Path("1690000000_tile3.pgm")) == 1690000000
    with pytest.raises(InputError):
        image_timestamp(Path("tile3.pgm"))


def test_synth(runner, tmp_path):
    result = invoke(runner, "synth", "--out", tmp_path / "out", "--count", 4, "--seed", 1, "--size", 8)

    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout) == {"root": str(tmp_path / "out"), "fire": 2, "nofire": 2, "size": 8}
    assert len(list((tmp_path / "out" / "fire").glob("*.pgm"))) == 2


def test_synth_requires_seed(runner, tmp_path):
    result = invoke(runner, "synth", "--out", tmp_path / "out")
    assert result.exit_code == 2


def test_synth_odd_count(runner, tmp_path):
    result = invoke(runner, "synth", "--out", tmp_path / "out", "--count", 3, "--seed", 1)
    assert result.exit_code == 3


def test_synth_into_populated_directory(runner, tmp_path):
    assert invoke(runner, "synth", "--out", tmp_path / "out", "--count", 6, "--seed", 1, "--size", 8).exit_code == 0
    result = invoke(runner, "synth", "--out", tmp_path / "out", "--count", 4, "--seed", 1, "--size", 8)
    assert result.exit_code == 3
    assert len(list((tmp_path / "out" / "fire").glob("*.pgm"))) == 3


def test_train_eval_classify(runner, tmp_path, config_file, dataset):
    model_path = tmp_path / "model.json"
    result = runner.invoke(
        main,
        [
            "--log-level", "ERROR", "--config", str(config_file),
            "train", "--data", str(dataset), "--model", str(model_path),
            "--epochs", "2", "--batch", "2", "--seed", "0", "--validation-split", "0.25",
        ],
    )  # fmt: skip

    assert result.exit_code == 0, result.output
    lines = [json.loads(line) for line in result.stdout.splitlines()]
    assert [line["epoch"] for line in lines] == [1, 2]
    assert lines[0]["total"] == 6
    assert {"loss", "accuracy", "val_loss", "val_accuracy"} <= set(lines[0])
    assert model_path.exists()

    result = invoke(runner, "eval", "--data", dataset, "--model", model_path)
    assert result.exit_code == 0, result.output
    metrics = json.loads(result.stdout)
    assert metrics["total"] == 8
    assert 0.0 <= metrics["accuracy"] <= 1.0

    image = sorted((dataset / "fire").glob("*.pgm"))[0]
    result = invoke(runner, "classify", "--model", model_path, "--image", image)
    assert result.exit_code == 0, result.output
    detection = json.loads(result.stdout)
    assert detection["label"] in ("fire", "no_fire")
    assert 0.0 < detection["probability"] < 1.0


def test_train_is_deterministic(runner, tmp_path, config_file, dataset):
    outputs = []
    for name in ("a.json", "b.json"):
        result = runner.invoke(
            main,
            [
                "--log-level", "ERROR", "--config", str(config_file),
                "train", "--data", str(dataset), "--model", str(tmp_path / name),
                "--epochs", "1", "--batch", "3", "--seed", "4",
            ],
        )  # fmt: skip
        assert result.exit_code == 0, result.output
        outputs.append((tmp_path / name).read_bytes())
    assert outputs[0] == outputs[1]


def test_train_size_mismatch(runner, tmp_path, dataset):
    """The default 32x32 architecture rejects the 8x8 dataset."""
    result = invoke(runner, "train", "--data", dataset, "--model", tmp_path / "m.json", "--seed", 0)
    assert result.exit_code == 3


def test_train_divergence_exit_code(runner, tmp_path, config_file, dataset):
    with patch("firecast.cli.commands.fit", side_effect=TrainingDivergenceError(0, float("nan"), epoch=1)):
        result = runner.invoke(
            main,
            [
                "--log-level", "ERROR", "--config", str(config_file),
                "train", "--data", str(dataset), "--model", str(tmp_path / "m.json"), "--seed", "0",
            ],
        )  # fmt: skip
    assert result.exit_code == 4
    assert not (tmp_path / "m.json").exists()


def test_classify_wrong_size(runner, tmp_path, fire_model):
    synth_generate(tmp_path / "big", count=2, seed=0, image_size=12)
    image = next((tmp_path / "big" / "fire").glob("*.pgm"))
    result = invoke(runner, "classify", "--model", fire_model, "--image", image)
    assert result.exit_code == 3


def test_classify_fire_box(runner, dataset, fire_model):
    image = sorted((dataset / "fire").glob("*.pgm"))[0]
    result = invoke(runner, "classify", "--model", fire_model, "--image", image)
    detection = json.loads(result.stdout)
    assert detection["label"] == "fire"
    box = detection["bbox"]
    assert detection["area_px"] == (box["x_max"] - box["x_min"] + 1) * (box["y_max"] - box["y_min"] + 1)


def test_fcm_run(runner, init_file):
    result = invoke(runner, "fcm", "run", "--map", "sanitary", "--init", init_file)

    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["verdict"] == "fixed_point"
    assert data["concepts"][4] == "wildfire_frequency"
    assert len(data["states"]) == data["iterations"] + 1
    assert data["states"][0] == [0.5] * 7


def test_fcm_run_clamped(runner, tmp_path):
    init = tmp_path / "init.json"
    init.write_text(json.dumps({"values": [0.5, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5]}))
    result = invoke(runner, "fcm", "run", "--map", "sanitary", "--init", init, "--clamp", "wildfire_frequency")

    assert result.exit_code == 0, result.output
    assert all(state[4] == 1.0 for state in json.loads(result.stdout)["states"])


def test_fcm_run_bad_init(runner, tmp_path):
    init = tmp_path / "init.json"
    init.write_text(json.dumps({"values": [0.5] * 6}))
    result = invoke(runner, "fcm", "run", "--map", "sanitary", "--init", init)
    assert result.exit_code == 3


def test_fcm_run_unknown_clamp(runner, init_file):
    result = invoke(runner, "fcm", "run", "--map", "sanitary", "--init", init_file, "--clamp", "rainfall")
    assert result.exit_code == 3


def test_fcm_compare(runner, tmp_path, init_file):
    perturbed = tmp_path / "perturbed.json"
    perturbed.write_text(json.dumps({"values": [0.5, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5]}))
    result = invoke(runner, "fcm", "compare", "--map", "sanitary", "--baseline", init_file, "--perturbed", perturbed)

    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["comparable"] is True
    assert len(data["deltas"]) == 7


def test_fcm_show_uses_config_defaults(runner, tmp_path):
    map_path = tmp_path / "map.json"
    map_path.write_text(json.dumps({"concepts": ["a", "b"], "edges": [{"from": "a", "to": "b", "term": "weak"}]}))
    config = tmp_path / "fcm.toml"
    config.write_text("[fcm]\nmax_iters = 7\n")
    result = runner.invoke(main, ["--log-level", "ERROR", "--config", str(config), "fcm", "show", "--map", str(map_path)])

    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["weights"] == [[0.0, 0.3], [0.0, 0.0]]
    assert data["config"]["max_iters"] == 7


def test_fcm_missing_map(runner, tmp_path):
    result = invoke(runner, "fcm", "show", "--map", tmp_path / "absent.json")
    assert result.exit_code == 3


def _timestamped_images(dataset, target):
    target.mkdir()
    fire = sorted((dataset / "fire").glob("*.pgm"))
    for ts, source in zip((100, 150, 300), fire + fire):
        shutil.copy(source, target / f"{ts}_tile.pgm")
    return target


def test_pipeline_json(runner, tmp_path, dataset, fire_model):
    images = _timestamped_images(dataset, tmp_path / "tiles")
    result = invoke(
        runner, "pipeline", "--model", fire_model, "--images", images, "--map", "sanitary",
        "--window", "100:200", "--cap", 4,
    )  # fmt: skip

    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["window"] == {"start": 100, "end": 200}
    assert report["fire_count"] == 2
    assert report["activation_e5"] == 0.5
    assert report["verdicts"] == {"baseline": "fixed_point", "scenario": "fixed_point"}
    assert len(report["deltas"]) == 7


def test_pipeline_text_and_out_dir(runner, tmp_path, dataset, fire_model):
    images = _timestamped_images(dataset, tmp_path / "tiles")
    out = tmp_path / "report"
    result = invoke(
        runner, "pipeline", "--model", fire_model, "--images", images, "--map", "sanitary",
        "--window", "0:1000", "--concept", "wildfire_frequency", "--clamp", "--format", "text", "--out", out,
    )  # fmt: skip

    assert result.exit_code == 0, result.output
    assert "wildfire_frequency" in result.stdout
    assert json.loads((out / "report.json").read_text())["fire_count"] == 3
    assert (out / "report.txt").read_text() == result.stdout


@pytest.mark.parametrize("window,code", [("abc", 2), ("200:100", 3)])
def test_pipeline_bad_window(runner, tmp_path, dataset, fire_model, window, code):
    images = _timestamped_images(dataset, tmp_path / "tiles")
    result = invoke(
        runner, "pipeline", "--model", fire_model, "--images", images, "--map", "sanitary", "--window", window
    )
    assert result.exit_code == code


def test_pipeline_untimestamped_image(runner, tmp_path, dataset, fire_model):
    images = _timestamped_images(dataset, tmp_path / "tiles")
    shutil.copy(next((dataset / "nofire").glob("*.pgm")), images / "tile.pgm")
    result = invoke(
        runner, "pipeline", "--model", fire_model, "--images", images, "--map", "sanitary", "--window", "0:10"
    )
    assert result.exit_code == 3


def test_invalid_config_file(runner, tmp_path):
    config = tmp_path / "bad.toml"
    config.write_text("[train]\nlearning_rate = -1\n")
    result = runner.invoke(main, ["--config", str(config), "fcm", "show", "--map", "sanitary"])
    assert result.exit_code == 3
