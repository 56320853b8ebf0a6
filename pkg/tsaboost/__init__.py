# pylint: disable=line-too-long
"""
Welcome to tsaboost !
---------------------

tsaboost assesses the transient stability of a power system right after a fault
is cleared. A classical-model simulator of the New England 39-bus system labels
fault scenarios as stable or unstable, and a gradient-boosted ensemble of
oblivious trees, trained with gradient harmonizing sample weights, learns to
predict the label from the bus voltages and branch flows at the clearing instant.

The toolkit also ships the evaluation protocol: stratified cross-validation,
measurement noise and class imbalance sweeps, feature importance and PMU
placement studies, all reachable from the `tsa` command line tool.

Subpackages
-----------

tsaboost.grid        test system, admittance matrix and power flow
tsaboost.sim         fault simulation and datasets
tsaboost.boost       boosted oblivious trees with gradient harmonizing
tsaboost.evaluation  metrics, cross-validation and experiments
"""
# module level dunders
__version__ = "1.0.0"
__author__ = "The tsaboost developers"
__credits__ = "The tsaboost community"
__all__ = [
    "grid",
    "sim",
    "boost",
    "evaluation",
    "defaults",
    "__version__",
    "__author__",
    "__credits__",
]

# create interface to outside of package
from tsaboost import grid, sim, boost, evaluation
from tsaboost._src.defaults.defaults_classes import default_settings as defaults
