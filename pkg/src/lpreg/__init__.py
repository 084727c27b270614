"""lpreg - Signal and image recovery with designed inhomogeneous lp regularization."""

__version__ = "0.1.0"

from lpreg.admm.solver import admm_solve  # noqa: E402
from lpreg.pipeline.experiment import ExperimentRunner, run_experiment  # noqa: E402

__all__ = ["ExperimentRunner", "admm_solve", "run_experiment", "__version__"]
