"""Tests for model construction, prediction and SGD training."""

import numpy as np
import pytest

from firecast.callbacks import TrainingEvent
from firecast.common.errors import DimensionError, InputError, TrainingDivergenceError
from firecast.common.results import Metrics
from firecast.config import ArchitectureConfig, TrainConfig
from firecast.io.synth import synth_fire_image, synth_nofire_image
from firecast.nn import evaluate, fit, init_model, model_predict, train_epoch
from firecast.nn.layers import ConvLayer, DenseLayer, PoolSpec
from firecast.nn.model import Model
from tests.conftest import SMALL_ARCH


def _dataset(count: int, seed: int = 0, size: int = 8):
    rng = np.random.default_rng(seed)
    samples = []
    for i in range(count):
        if i % 2 == 0:
            image, _ = synth_fire_image(rng, size)
            samples.append((image.to_tensor(), 1))
        else:
            samples.append((synth_nofire_image(rng, size).to_tensor(), 0))
    return samples


def _weights(model):
    return [array.copy() for _, array in model.parameters()]


class TestModel:
    def test_reference_architecture_shapes(self):
        model = init_model(seed=0)
        conv, pool, flatten, hidden, output = model.layers
        assert model.input_spec == (32, 32, 1)
        assert conv.weights.shape == (8, 1, 3, 3)
        assert pool.window == 2
        assert hidden.weights.shape == (128, 8 * 15 * 15)
        assert output.weights.shape == (1, 128)
        assert hidden.activation == "relu" and output.activation == "sigmoid"

    def test_init_is_seed_deterministic(self):
        a = init_model(SMALL_ARCH, seed=5)
        b = init_model(SMALL_ARCH, seed=5)
        c = init_model(SMALL_ARCH, seed=6)
        for (_, x), (_, y) in zip(a.parameters(), b.parameters()):
            np.testing.assert_array_equal(x, y)
        assert not np.array_equal(a.conv.weights, c.conv.weights)
        assert not np.any(a.hidden.bias)

    def test_prediction_in_open_interval(self, small_model, rng):
        for _ in range(20):
            p = model_predict(small_model, rng.uniform(0, 1, size=small_model.input_shape))
            assert 0.0 < p < 1.0

    def test_shape_mismatch_names_axes(self, small_model):
        with pytest.raises(DimensionError) as exc:
            model_predict(small_model, np.zeros((1, 9, 8)))
        assert exc.value.axes == ("height",)

    def test_inconsistent_stack_rejected(self):
        with pytest.raises(DimensionError):
            Model(
                input_spec=(8, 8, 1),
                conv=ConvLayer(weights=np.zeros((2, 1, 3, 3)), bias=np.zeros(2)),
                pool=PoolSpec(window=2),
                hidden=DenseLayer(weights=np.zeros((4, 7)), bias=np.zeros(4)),
                output=DenseLayer(weights=np.zeros((1, 4)), bias=np.zeros(1), activation="sigmoid"),
            )

    def test_architecture_config_rejects_oversized_kernel(self):
        with pytest.raises(ValueError):
            ArchitectureConfig(input_height=2, input_width=2, kernel=3)


class TestTraining:
    def test_epoch_is_deterministic(self):
        data = _dataset(12)
        cfg = TrainConfig(learning_rate=0.05, batch_size=4, epochs=1, seed=3)
        a, b = init_model(SMALL_ARCH, seed=1), init_model(SMALL_ARCH, seed=1)
        metrics_a = train_epoch(a, data, cfg, epoch=1)
        metrics_b = train_epoch(b, data, cfg, epoch=1)
        assert metrics_a == metrics_b
        for x, y in zip(_weights(a), _weights(b)):
            np.testing.assert_array_equal(x, y)

    def test_zero_learning_rate_leaves_weights(self):
        data = _dataset(8)
        model = init_model(SMALL_ARCH, seed=1)
        before = _weights(model)
        train_epoch(model, data, TrainConfig(learning_rate=0.0, batch_size=4))
        for x, y in zip(before, _weights(model)):
            np.testing.assert_array_equal(x, y)

    def test_training_reduces_loss(self):
        data = _dataset(16, seed=2)
        model = init_model(SMALL_ARCH, seed=2)
        before = evaluate(model, data).loss
        fit(model, data, TrainConfig(learning_rate=0.05, batch_size=4, epochs=20, seed=2))
        assert evaluate(model, data).loss < before

    def test_batch_larger_than_dataset(self):
        with pytest.raises(InputError):
            train_epoch(init_model(SMALL_ARCH), _dataset(3), TrainConfig(batch_size=4))

    def test_empty_dataset(self):
        with pytest.raises(InputError):
            train_epoch(init_model(SMALL_ARCH), [], TrainConfig(batch_size=1))
        with pytest.raises(InputError):
            evaluate(init_model(SMALL_ARCH), [])

    def test_bad_label(self):
        data = [(np.zeros((1, 8, 8)), 2)]
        with pytest.raises(InputError):
            evaluate(init_model(SMALL_ARCH), data)

    def test_non_finite_sample_diverges(self):
        image = np.full((1, 8, 8), np.nan)
        with pytest.raises(TrainingDivergenceError) as exc:
            train_epoch(init_model(SMALL_ARCH), [(image, 1)], TrainConfig(batch_size=1), epoch=2)
        assert exc.value.batch_index == 0
        assert exc.value.epoch == 2
        assert isinstance(exc.value, ArithmeticError)

    def test_evaluate_counts(self):
        model = init_model(SMALL_ARCH, seed=0)
        model.output.weights[:] = 0.0
        model.output.bias[:] = 30.0
        metrics = evaluate(model, _dataset(6))
        assert metrics.total == 6
        assert metrics.correct == 3
        assert metrics.accuracy == pytest.approx(0.5)

    def test_fit_history_and_callbacks(self):
        data = _dataset(10)
        events = []

        class Recorder:
            def epoch_start(self, epoch):
                events.append(("start", epoch))

            def batch_end(self, epoch, batch_index, loss):
                events.append(("batch", epoch, batch_index))

            def epoch_end(self, epoch, train_metrics, val_metrics):
                assert isinstance(train_metrics, Metrics)
                events.append(("end", epoch, val_metrics is not None))

        def failing(event, **kwargs):
            raise RuntimeError("callback failure must not stop training")

        history = fit(
            init_model(SMALL_ARCH),
            data[:8],
            TrainConfig(batch_size=3, epochs=2),
            validation=data[8:],
            callbacks=[Recorder(), failing],
        )
        assert [record.epoch for record in history.epochs] == [1, 2]
        assert history.final.validation.total == 2
        assert events.count(("start", 1)) == 1
        assert len([e for e in events if e[0] == "batch"]) == 2 * 3
        assert ("end", 2, True) in events
        assert history.to_dict()["epochs"][0]["train"]["total"] == 8


def test_training_event_values():
    assert TrainingEvent.EPOCH_END.value == "epoch_end"
