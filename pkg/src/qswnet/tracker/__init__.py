import logging

from .log_mlflow import log_artifact, log_metrics, log_params, set_tags
from .tracker import Tracker

try:
    import mlflow  # noqa: F401

    HAS_MLFLOW = True
except ModuleNotFoundError:
    logging.getLogger(__name__).debug("mlflow is not installed; tracking needs the 'tracker' extra")
    HAS_MLFLOW = False

__all__ = ["HAS_MLFLOW", "Tracker", "log_artifact", "log_metrics", "log_params", "set_tags"]
