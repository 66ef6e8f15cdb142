import inspect
import logging
from collections.abc import Callable, Sequence
from typing import Any

from firecast.callbacks import TrainingEvent

logger = logging.getLogger(__name__)

# Mapping of callback events to their expected parameter names
TRAINING_EVENT_PARAMETERS = {
    TrainingEvent.EPOCH_START: ["epoch"],
    TrainingEvent.BATCH_END: ["epoch", "batch_index", "loss"],
    TrainingEvent.EPOCH_END: ["epoch", "train_metrics", "val_metrics"],
}


def filter_callback_parameters(method: Callable, available_params: dict[str, Any]) -> dict[str, Any]:
    """Keep only the training values ``method`` declares (everything if it takes ``**kwargs``)."""
    name = getattr(method, "__name__", repr(method))
    try:
        params = inspect.signature(method).parameters
    except (TypeError, ValueError) as e:
        logger.debug("Cannot inspect callback %s: %s", name, e)
        return {}

    if any(p.kind is inspect.Parameter.VAR_KEYWORD for p in params.values()):
        return dict(available_params)

    missing = [n for n, p in params.items() if n not in available_params and p.default is inspect.Parameter.empty]
    if missing:
        logger.debug("Callback %s wants %s, which event does not provide", name, missing)
    return {n: available_params[n] for n in params if n in available_params}


def trigger_event(callbacks: Sequence[Any], event: TrainingEvent, *args, **kwargs) -> None:
    """Trigger an event on every callback.

    A callback may be an object with a method named after the event, or a
    plain callable that receives the event as its first argument. Errors
    raised by callbacks are logged and do not interrupt training.
    """
    if not callbacks:
        return

    event_kwargs = kwargs.copy()
    param_names = TRAINING_EVENT_PARAMETERS.get(event, [])
    for i, arg in enumerate(args):
        if i < len(param_names):
            event_kwargs[param_names[i]] = arg

    for callback in callbacks:
        try:
            if hasattr(callback, event.value):
                method = getattr(callback, event.value)
                method(**filter_callback_parameters(method, event_kwargs))
            elif callable(callback):
                callback(event, **event_kwargs)
        except Exception as e:  # pylint: disable=broad-except
            logger.warning("Error in %s callback: %s", event.name, e)
