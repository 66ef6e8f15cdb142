#!/usr/bin/env python3
"""The ``firecast`` command-line interface.

Machine-readable results go to stdout as JSON; diagnostics go to stderr.
Exit codes: 0 success, 2 usage error, 3 input or validation error,
4 numeric or training error.
"""

import functools
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any

import click
from dotenv import load_dotenv

from firecast.cli.log_utils import EpochPrinter, setup_logger
from firecast.common.errors import InputError
from firecast.config import FirecastConfig, TrainConfig, load_config
from firecast.config.utils import visible_files
from firecast.fcm import fcm_file_load, load_activation, map_to_dict, scenario_compare
from firecast.fcm.dynamics import fcm_run
from firecast.io import dataset_load, model_load, model_save, pgm_load, split_dataset, synth_generate
from firecast.nn import evaluate, fit, init_model
from firecast.pipeline import DetectionLog, forecast_from_log, render_report
from firecast.vision import detect_fire

load_dotenv()

EXIT_INPUT = 3
EXIT_NUMERIC = 4

TIMESTAMP_PATTERN = re.compile(r"^(\d+)")


def handle_errors(func):
    """Map library exceptions to the documented exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ArithmeticError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_NUMERIC)
        except (ValueError, OSError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_INPUT)

    return wrapper


def _emit(data: Any) -> None:
    click.echo(json.dumps(data))


def _settings(ctx: click.Context) -> FirecastConfig:
    return ctx.obj["config"]


def parse_window(value: str) -> tuple[int, int]:
    """Parse ``START:END`` epoch seconds (order is checked later)."""
    match = re.fullmatch(r"\s*(-?\d+)\s*:\s*(-?\d+)\s*", value)
    if not match:
        raise click.BadParameter(f"expected START:END integers, got '{value}'", param_hint="--window")
    return int(match.group(1)), int(match.group(2))


def image_timestamp(path: Path) -> int:
    """Leading integer of the file stem, e.g. ``1690000000_tile3.pgm``."""
    match = TIMESTAMP_PATTERN.match(path.stem)
    if not match:
        raise InputError(f"{path}: file name must start with an integer timestamp")
    return int(match.group(1))


@click.group()
@click.option(
    "--config",
    "config_path",
    envvar="FIRECAST_CONFIG",
    type=click.Path(exists=True, dir_okay=False),
    help="TOML or YAML file with default settings",
)
@click.option(
    "--log-level",
    "-l",
    envvar="FIRECAST_LOG_LEVEL",
    default="INFO",
    show_default=True,
    help="Set logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
)
@click.pass_context
def main(ctx: click.Context, config_path: str | None, log_level: str) -> None:
    """Wildfire detection on grayscale tiles and fuzzy-cognitive-map forecasting."""
    setup_logger(log_level)
    ctx.ensure_object(dict)
    try:
        ctx.obj["config"] = load_config(config_path) if config_path else FirecastConfig()
    except (ValueError, OSError) as e:
        click.echo(f"Error loading config file: {e}", err=True)
        sys.exit(EXIT_INPUT)


@main.command()
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False), help="Output dataset directory")
@click.option("--count", default=400, show_default=True, type=int, help="Total number of images (even)")
@click.option("--seed", required=True, type=int, help="Random seed")
@click.option("--size", default=32, show_default=True, type=int, help="Image side length in pixels")
@handle_errors
def synth(out_dir: str, count: int, seed: int, size: int) -> None:
    """Write a seeded synthetic fire/nofire dataset."""
    manifest = synth_generate(out_dir, count, seed, size)
    _emit({"root": str(manifest.root), "fire": len(manifest.fire), "nofire": len(manifest.nofire), "size": size})


@main.command()
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True, file_okay=False), help="Dataset root")
@click.option("--model", "model_path", required=True, type=click.Path(dir_okay=False), help="Output model file")
@click.option("--epochs", type=int, help="Number of epochs [default: 20]")
@click.option("--lr", "learning_rate", type=float, help="Learning rate [default: 0.01]")
@click.option("--batch", "batch_size", type=int, help="Mini-batch size [default: 16]")
@click.option("--seed", required=True, type=int, help="Seed for initialization, shuffling and the split")
@click.option("--validation-split", type=float, help="Held-out fraction [default: 0.2]")
@click.pass_context
@handle_errors
def train(
    ctx: click.Context,
    data_dir: str,
    model_path: str,
    epochs: int | None,
    learning_rate: float | None,
    batch_size: int | None,
    seed: int,
    validation_split: float | None,
) -> None:
    """Train the classifier, printing one Metrics JSON line per epoch."""
    logger = logging.getLogger("firecast.cli")
    settings = _settings(ctx)
    overrides = {
        "epochs": epochs,
        "learning_rate": learning_rate,
        "batch_size": batch_size,
        "validation_split": validation_split,
        "seed": seed,
    }
    cfg = TrainConfig.model_validate(
        {**settings.train.model_dump(), **{k: v for k, v in overrides.items() if v is not None}}
    )
    arch = settings.architecture

    samples = dataset_load(data_dir, image_size=(arch.input_height, arch.input_width))
    train_set, validation_set = split_dataset(samples, cfg.validation_split, cfg.seed)
    logger.info(f"Training on {len(train_set)} samples, holding out {len(validation_set)}")

    model = init_model(arch, seed=cfg.seed)
    history = fit(model, train_set, cfg, validation=validation_set or None, callbacks=[EpochPrinter(logger, cfg.epochs)])
    model_save(model, model_path)
    final = history.final
    if final is not None and final.validation is not None:
        logger.info(f"Held-out loss {final.validation.loss:.4f}, accuracy {final.validation.accuracy:.4f}")


@main.command("eval")
@click.option("--data", "data_dir", required=True, type=click.Path(exists=True, file_okay=False), help="Dataset root")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Model file")
@handle_errors
def eval_command(data_dir: str, model_path: str) -> None:
    """Report loss and accuracy of a model on a dataset."""
    model = model_load(model_path)
    h, w, _ = model.input_spec
    _emit(evaluate(model, dataset_load(data_dir, image_size=(h, w))).to_dict())


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Model file")
@click.option("--image", "image_path", required=True, type=click.Path(exists=True, dir_okay=False), help="PGM image")
@click.option("--quantile", type=float, help="Brightness quantile for localization [default: 0.99]")
@click.pass_context
@handle_errors
def classify(ctx: click.Context, model_path: str, image_path: str, quantile: float | None) -> None:
    """Classify one image and localize the fire."""
    quantile = quantile if quantile is not None else _settings(ctx).localizer.quantile
    detection = detect_fire(model_load(model_path), pgm_load(image_path), quantile)
    _emit(detection.to_dict())


@main.group()
def fcm() -> None:
    """Fuzzy cognitive map commands."""


MAP_OPTION = click.option(
    "--map", "map_path", required=True, help="Map file (JSON, YAML or TOML) or the built-in name 'sanitary'"
)


@fcm.command("run")
@MAP_OPTION
@click.option("--init", "init_path", required=True, type=click.Path(exists=True, dir_okay=False), help="INIT.json")
@click.option("--clamp", "clamped", multiple=True, help="Concept (index or name) held at its initial value")
@click.pass_context
@handle_errors
def fcm_run_command(ctx: click.Context, map_path: str, init_path: str, clamped: tuple[str, ...]) -> None:
    """Iterate the map from an initial activation vector."""
    cognitive_map = fcm_file_load(map_path, default_config=_settings(ctx).fcm)
    initial = load_activation(init_path, cognitive_map.n)
    trajectory = fcm_run(cognitive_map, initial, [cognitive_map.index_of(c) for c in clamped])
    _emit({"concepts": cognitive_map.names, **trajectory.to_dict()})


@fcm.command("compare")
@MAP_OPTION
@click.option("--baseline", "baseline_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--perturbed", "perturbed_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--clamp", "clamped", multiple=True, help="Concept (index or name) held at its initial value")
@click.pass_context
@handle_errors
def fcm_compare_command(
    ctx: click.Context, map_path: str, baseline_path: str, perturbed_path: str, clamped: tuple[str, ...]
) -> None:
    """Compare the fixed points reached from two activation vectors."""
    cognitive_map = fcm_file_load(map_path, default_config=_settings(ctx).fcm)
    comparison = scenario_compare(
        cognitive_map,
        load_activation(baseline_path, cognitive_map.n),
        load_activation(perturbed_path, cognitive_map.n),
        [cognitive_map.index_of(c) for c in clamped],
    )
    _emit({"concepts": cognitive_map.names, **comparison.to_dict()})


@fcm.command("show")
@MAP_OPTION
@click.pass_context
@handle_errors
def fcm_show_command(ctx: click.Context, map_path: str) -> None:
    """Print the validated map."""
    _emit(map_to_dict(fcm_file_load(map_path, default_config=_settings(ctx).fcm)))


@main.command()
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Model file")
@click.option("--images", "images_dir", required=True, type=click.Path(exists=True, file_okay=False))
@MAP_OPTION
@click.option("--window", required=True, help="START:END epoch seconds, inclusive")
@click.option("--cap", type=int, help="Fire count that saturates the activation [default: 10]")
@click.option("--concept", help="Wildfire-frequency concept (index or name) [default: 4]")
@click.option("--baseline", "baseline_path", type=click.Path(exists=True, dir_okay=False), help="Baseline INIT.json")
@click.option("--quantile", type=float, help="Brightness quantile for localization [default: 0.99]")
@click.option("--clamp/--no-clamp", default=None, help="Hold the wildfire concept at its scenario value")
@click.option("--format", "output_format", type=click.Choice(["json", "text"]), default="json", show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), help="Also write report.json and report.txt here")
@click.pass_context
@handle_errors
def pipeline(
    ctx: click.Context,
    model_path: str,
    images_dir: str,
    map_path: str,
    window: str,
    cap: int | None,
    concept: str | None,
    baseline_path: str | None,
    quantile: float | None,
    clamp: bool | None,
    output_format: str,
    out_dir: str | None,
) -> None:
    """Classify timestamped tiles and forecast the wildfire scenario on a map."""
    logger = logging.getLogger("firecast.cli")
    settings = _settings(ctx)
    start, end = parse_window(window)
    cap = cap if cap is not None else settings.pipeline.cap
    quantile = quantile if quantile is not None else settings.localizer.quantile
    clamp = clamp if clamp is not None else settings.pipeline.clamp

    model = model_load(model_path)
    cognitive_map = fcm_file_load(map_path, default_config=settings.fcm)
    e5_index = cognitive_map.index_of(concept if concept is not None else settings.pipeline.concept)
    baseline = load_activation(baseline_path, cognitive_map.n) if baseline_path else None

    entries = []
    for path in visible_files(images_dir):
        entries.append((image_timestamp(path), detect_fire(model, pgm_load(path), quantile)))
    log = DetectionLog.from_unordered(entries)
    logger.info(f"Classified {len(log)} images from {images_dir}")

    report = forecast_from_log(cognitive_map, log, (start, end), cap, e5_index, baseline=baseline, clamp=clamp)
    rendered = render_report(report)
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(rendered.json + "\n")
        (out / "report.txt").write_text(rendered.text)
        logger.info(f"Wrote report to {out}")
    click.echo(rendered.text if output_format == "text" else rendered.json, nl=output_format != "text")


if __name__ == "__main__":
    main()
