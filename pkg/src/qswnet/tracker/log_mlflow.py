import logging
import os
import time

import numpy as np

logger = logging.getLogger(__name__)

# artifacts above this size (bytes) are skipped
ARTIFACT_SIZE_LIMIT = 10e6


def log_params(tracker, **params):
    for k, v in params.items():
        tracker.client.log_param(tracker.run_id, k, v)


def log_metrics(tracker, step, **metrics):
    for k, v in metrics.items():
        v = float(np.nan_to_num(v))
        tracker.client.log_metric(tracker.run_id, k, v, int(time.time() * 1000), step=step)


def set_tags(tracker, **tags):
    for k, v in tags.items():
        tracker.client.set_tag(tracker.run_id, k, v)


def log_artifact(tracker, *paths):
    for p in paths:
        if os.path.getsize(p) > ARTIFACT_SIZE_LIMIT:
            logger.warning("File %s won't be stored as an artifact (oversize limit)", p)
        else:
            tracker.client.log_artifact(tracker.run_id, p)
