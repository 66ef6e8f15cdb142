"""firecast - wildfire detection on satellite tiles and fuzzy-cognitive-map forecasting."""

from importlib.metadata import PackageNotFoundError, version

from firecast.config import FirecastConfig, load_config
from firecast.fcm import CognitiveMap, fcm_build, fcm_file_load, fcm_run, scenario_compare
from firecast.nn import Model, init_model, model_predict
from firecast.vision import GrayImage, detect_fire

__all__ = [
    "CognitiveMap",
    "FirecastConfig",
    "GrayImage",
    "Model",
    "detect_fire",
    "fcm_build",
    "fcm_file_load",
    "fcm_run",
    "init_model",
    "load_config",
    "model_predict",
    "scenario_compare",
]

try:
    __version__ = version("firecast")
except PackageNotFoundError:  # running from a source checkout
    __version__ = "0.0.0"
