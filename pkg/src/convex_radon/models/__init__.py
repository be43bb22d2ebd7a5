from .run import ExperimentRun, ReportRecord, RunStatus  # noqa: F401
