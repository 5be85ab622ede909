import logging

from .log_mlflow import log_artifact, log_metrics, log_params, set_tags

logger = logging.getLogger(__name__)


class Tracker:
    """
    mlflow run of one experiment command.

    Params, metrics, tags and artifacts logged before ``create_run`` are buffered and flushed
    once the run exists. ``client`` may be any object with the ``MlflowClient`` logging methods.
    """

    def __init__(self, exp_name, run_id=None, tracker_uri=None, client=None):
        self.exp_name = exp_name
        self.run_id = run_id
        self._metrics = []
        self._params = []
        self._tags = []
        self._artifacts = []

        self.run_started = False
        self.client = None
        self.exp_id = None
        if client is not None:
            self.attach_client(client)
        elif tracker_uri:
            self.create_client(tracker_uri)

    def create_client(self, tracker_uri, artifact_uri=None):
        from mlflow.tracking.client import MlflowClient

        self.attach_client(MlflowClient(tracker_uri), artifact_uri)

    def attach_client(self, client, artifact_uri=None):
        self.client = client
        exp = self.client.get_experiment_by_name(self.exp_name)
        if exp is None:
            self.exp_id = self.client.create_experiment(self.exp_name, artifact_location=artifact_uri)
        else:
            self.exp_id = exp.experiment_id

    def log_metrics(self, step, **metrics):
        if self.run_started:
            log_metrics(self, step, **metrics)
        else:
            self._metrics.append((step, metrics))

    def log_params(self, **params):
        if self.run_started:
            log_params(self, **params)
        else:
            self._params.append(params)

    def log_artifacts(self, *paths):
        if self.run_started:
            log_artifact(self, *paths)
        else:
            self._artifacts.append(paths)

    def set_tags(self, **tags):
        if self.run_started:
            set_tags(self, **tags)
        else:
            self._tags.append(tags)

    def create_run(self, tags=None, run_name=None):
        if self.client is None:
            raise RuntimeError("Tracker %r has no client; pass tracker_uri or client first" % self.exp_name)
        run = self.client.create_run(experiment_id=self.exp_id, tags=tags or {}, run_name=run_name)
        self.run_id = run.info.run_id
        self.initialize_run()
        logger.info("Tracking run %s in experiment %s", self.run_id, self.exp_name)

    def initialize_run(self):
        self.run_started = True
        for step, metrics in self._metrics:
            self.log_metrics(step, **metrics)
        for params in self._params:
            self.log_params(**params)
        for tags in self._tags:
            self.set_tags(**tags)
        for paths in self._artifacts:
            self.log_artifacts(*paths)
        self._metrics, self._params, self._tags, self._artifacts = [], [], [], []
        return True

    def set_status(self, status: str):
        self.client.set_terminated(self.run_id, status)

    def get_metric_history(self, metric: str):
        return self.client.get_metric_history(self.run_id, metric)

    def get_best_score_for_metric(self, metric: str, maximize=True):
        values = [m.value for m in self.get_metric_history(metric)]
        return max(values) if maximize else min(values)
