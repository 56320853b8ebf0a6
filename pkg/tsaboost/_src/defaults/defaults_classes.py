from tsaboost._src.defaults.defaults_utility import get_defaults_dict
from tsaboost._src.defaults.defaults_utility import MagicProperties
from tsaboost._src.defaults.defaults_utility import SUPPORTED_BOOSTING_MODES
from tsaboost._src.defaults.defaults_utility import validate_number
from tsaboost._src.defaults.defaults_utility import validate_property_class


class SectionProperties(MagicProperties):
    """MagicProperties bound to one section of the package defaults. Properties left
    unset (`None`) take the hard coded default of that section."""

    _section = None

    def _default(self, name):
        return get_defaults_dict(self._section)[name]

    def _number(self, val, name, **kwargs):
        if val is None:
            val = self._default(name)
        return validate_number(val, name, self, **kwargs)

    def _flag(self, val, name):
        if val is None:
            val = self._default(name)
        if not isinstance(val, bool):
            raise ValueError(
                f"the `{name}` property of `{type(self).__name__}` must be a bool\n"
                f" but received {repr(val)} instead"
            )
        return val


class DefaultConfig(MagicProperties):
    """Library default settings.

    Parameters
    ----------
    grid: dict or GridConfig
        loading and power-flow settings
    sim: dict or SimConfig
        fault protocol and integration settings
    training: dict or TrainingConfig
        boosting settings
    sweep: dict or SweepConfig
        evaluation grids
    """

    def __init__(self, grid=None, sim=None, training=None, sweep=None, **kwargs):
        super().__init__(grid=grid, sim=sim, training=training, sweep=sweep, **kwargs)
        self.reset()

    def reset(self):
        """Resets all nested properties to their hard coded default values"""
        self.update(get_defaults_dict(), _match_properties=False)
        return self

    @property
    def grid(self):
        """`GridConfig` with loading and power-flow settings"""
        return self._grid

    @grid.setter
    def grid(self, val):
        self._grid = validate_property_class(val, "grid", GridConfig, self)

    @property
    def sim(self):
        """`SimConfig` with fault protocol and integration settings"""
        return self._sim

    @sim.setter
    def sim(self, val):
        self._sim = validate_property_class(val, "sim", SimConfig, self)

    @property
    def training(self):
        """`TrainingConfig` with boosting settings"""
        return self._training

    @training.setter
    def training(self, val):
        self._training = validate_property_class(val, "training", TrainingConfig, self)

    @property
    def sweep(self):
        """`SweepConfig` with evaluation grids"""
        return self._sweep

    @sweep.setter
    def sweep(self, val):
        self._sweep = validate_property_class(val, "sweep", SweepConfig, self)


class GridConfig(SectionProperties):
    """
    Defines how operating points are drawn and solved.

    Properties
    ----------
    load_min, load_max: float, default=0.7, 1.3
        bounds of the uniform per-bus load factor

    global_load_factor: bool, default=False
        draw one factor shared by all buses instead of one per bus

    loss_fraction: float, default=0.03
        loss allowance added to the scaled load, as a fraction of base total generation

    v_min, v_max: float, default=0.95, 1.05
        voltage screen applied to solved operating points

    max_redraws: int, default=50
        redraws before an operating point is given up

    pf_tolerance: float, default=1e-6
        power-flow mismatch tolerance in p.u.

    pf_max_iterations: int, default=30
        Newton-Raphson iteration limit
    """

    _section = "grid"

    @property
    def load_min(self):
        """lower bound of the load factor"""
        return self._load_min

    @load_min.setter
    def load_min(self, val):
        self._load_min = self._number(val, "load_min", minimum=0, strict_min=True)

    @property
    def load_max(self):
        """upper bound of the load factor"""
        return self._load_max

    @load_max.setter
    def load_max(self, val):
        self._load_max = self._number(val, "load_max", minimum=0, strict_min=True)

    @property
    def global_load_factor(self):
        """one shared factor for all buses"""
        return self._global_load_factor

    @global_load_factor.setter
    def global_load_factor(self, val):
        self._global_load_factor = self._flag(val, "global_load_factor")

    @property
    def loss_fraction(self):
        """loss allowance as a fraction of base total generation"""
        return self._loss_fraction

    @loss_fraction.setter
    def loss_fraction(self, val):
        self._loss_fraction = self._number(val, "loss_fraction", minimum=0)

    @property
    def v_min(self):
        """lower voltage screen bound"""
        return self._v_min

    @v_min.setter
    def v_min(self, val):
        self._v_min = self._number(val, "v_min", minimum=0, strict_min=True)

    @property
    def v_max(self):
        """upper voltage screen bound"""
        return self._v_max

    @v_max.setter
    def v_max(self, val):
        self._v_max = self._number(val, "v_max", minimum=0, strict_min=True)

    @property
    def max_redraws(self):
        """redraws before an operating point is given up"""
        return self._max_redraws

    @max_redraws.setter
    def max_redraws(self, val):
        self._max_redraws = self._number(val, "max_redraws", minimum=0, integer=True)

    @property
    def pf_tolerance(self):
        """power-flow mismatch tolerance"""
        return self._pf_tolerance

    @pf_tolerance.setter
    def pf_tolerance(self, val):
        self._pf_tolerance = self._number(
            val, "pf_tolerance", minimum=0, strict_min=True
        )

    @property
    def pf_max_iterations(self):
        """Newton-Raphson iteration limit"""
        return self._pf_max_iterations

    @pf_max_iterations.setter
    def pf_max_iterations(self, val):
        self._pf_max_iterations = self._number(
            val, "pf_max_iterations", minimum=1, integer=True
        )


class SimConfig(SectionProperties):
    """
    Defines the fault protocol and the swing integration.

    Properties
    ----------
    dt: float, default=0.005
        integration step in seconds

    horizon: float, default=10.0
        simulated time in seconds

    n_scenarios: int, default=3000
        scenarios drawn by dataset generation

    fault_position_min, fault_position_max: float, default=0.1, 0.9
        range of the fault location along the line, from the from-end

    clearing_time_min, clearing_time_max: float, default=0.1, 0.3
        range of the fault duration in seconds

    fault_conductance: float, default=1e6
        shunt conductance grounding the fault node, p.u.

    frequency: float, default=60.0
        nominal system frequency in Hz

    max_failure_fraction: float, default=0.2
        share of failed scenarios above which generation aborts

    skip_islanding_faults: bool, default=True
        draw faults only on branches whose removal keeps the network connected

    max_class_rounds: int, default=5
        extra generation rounds run while the dataset holds a single class
    """

    _section = "sim"

    @property
    def dt(self):
        """integration step in seconds"""
        return self._dt

    @dt.setter
    def dt(self, val):
        self._dt = self._number(val, "dt", minimum=0, strict_min=True)

    @property
    def horizon(self):
        """simulated time in seconds"""
        return self._horizon

    @horizon.setter
    def horizon(self, val):
        self._horizon = self._number(val, "horizon", minimum=0, strict_min=True)

    @property
    def n_scenarios(self):
        """scenarios drawn by dataset generation"""
        return self._n_scenarios

    @n_scenarios.setter
    def n_scenarios(self, val):
        self._n_scenarios = self._number(val, "n_scenarios", minimum=1, integer=True)

    @property
    def fault_position_min(self):
        """lowest fault location"""
        return self._fault_position_min

    @fault_position_min.setter
    def fault_position_min(self, val):
        self._fault_position_min = self._number(
            val, "fault_position_min", minimum=0, maximum=1
        )

    @property
    def fault_position_max(self):
        """highest fault location"""
        return self._fault_position_max

    @fault_position_max.setter
    def fault_position_max(self, val):
        self._fault_position_max = self._number(
            val, "fault_position_max", minimum=0, maximum=1
        )

    @property
    def clearing_time_min(self):
        """shortest fault duration"""
        return self._clearing_time_min

    @clearing_time_min.setter
    def clearing_time_min(self, val):
        self._clearing_time_min = self._number(
            val, "clearing_time_min", minimum=0, strict_min=True
        )

    @property
    def clearing_time_max(self):
        """longest fault duration"""
        return self._clearing_time_max

    @clearing_time_max.setter
    def clearing_time_max(self, val):
        self._clearing_time_max = self._number(
            val, "clearing_time_max", minimum=0, strict_min=True
        )

    @property
    def fault_conductance(self):
        """shunt conductance grounding the fault node"""
        return self._fault_conductance

    @fault_conductance.setter
    def fault_conductance(self, val):
        self._fault_conductance = self._number(
            val, "fault_conductance", minimum=0, strict_min=True
        )

    @property
    def frequency(self):
        """nominal frequency in Hz"""
        return self._frequency

    @frequency.setter
    def frequency(self, val):
        self._frequency = self._number(val, "frequency", minimum=0, strict_min=True)

    @property
    def max_failure_fraction(self):
        """tolerated share of failed scenarios"""
        return self._max_failure_fraction

    @max_failure_fraction.setter
    def max_failure_fraction(self, val):
        self._max_failure_fraction = self._number(
            val, "max_failure_fraction", minimum=0, maximum=1
        )

    @property
    def skip_islanding_faults(self):
        """fault only branches whose loss keeps the network connected"""
        return self._skip_islanding_faults

    @skip_islanding_faults.setter
    def skip_islanding_faults(self, val):
        self._skip_islanding_faults = self._flag(val, "skip_islanding_faults")

    @property
    def max_class_rounds(self):
        """extra generation rounds for a single-class dataset"""
        return self._max_class_rounds

    @max_class_rounds.setter
    def max_class_rounds(self, val):
        self._max_class_rounds = self._number(
            val, "max_class_rounds", minimum=0, integer=True
        )


class GHMConfig(SectionProperties):
    """
    Defines the gradient harmonizing reweighting.

    Properties
    ----------
    enabled: bool, default=True
        apply the coordination parameters as sample weights

    z_bins: int, default=10
        number of unit regions the gradient modulus range is divided into

    momentum: float, default=0.0
        exponential moving average factor for the bin counts, 0 disables smoothing
    """

    _section = "training.ghm"

    @property
    def enabled(self):
        """apply the coordination parameters as sample weights"""
        return self._enabled

    @enabled.setter
    def enabled(self, val):
        self._enabled = self._flag(val, "enabled")

    @property
    def z_bins(self):
        """number of gradient modulus bins"""
        return self._z_bins

    @z_bins.setter
    def z_bins(self, val):
        self._z_bins = self._number(val, "z_bins", minimum=1, integer=True)

    @property
    def momentum(self):
        """moving average factor of the bin counts"""
        return self._momentum

    @momentum.setter
    def momentum(self, val):
        val = self._number(val, "momentum", minimum=0)
        if val >= 1:
            raise ValueError(
                f"the `momentum` property of `{type(self).__name__}` must be <1\n"
                f" but received {repr(val)} instead"
            )
        self._momentum = val


class TrainingConfig(SectionProperties):
    """
    Defines the boosting run.

    Properties
    ----------
    n_iterations: int, default=500
        number of trees

    depth: int, default=6
        levels per oblivious tree, between 1 and 16

    learning_rate: float, default=0.1
        shrinkage applied to every tree, in (0, 1]

    boosting_mode: str, default='plain'
        'plain' or 'ordered'

    n_permutations: int, default=4
        random orders maintained in ordered mode

    ghm: dict or GHMConfig
        gradient harmonizing settings

    threshold_candidates_per_feature: int, default=32
        quantile borders per feature

    min_samples_per_leaf: int, default=1
        smallest populated leaf a split may produce

    rng_seed: int, default=0
        seed of the permutations drawn in ordered mode

    Examples
    --------
    >>> from tsaboost._src.defaults.defaults_classes import TrainingConfig
    >>> cfg = TrainingConfig(depth=3, ghm_z_bins=5)
    >>> cfg.depth, cfg.ghm.z_bins, cfg.n_iterations
    (3, 5, 500)
    """

    _section = "training"

    @property
    def n_iterations(self):
        """number of trees"""
        return self._n_iterations

    @n_iterations.setter
    def n_iterations(self, val):
        self._n_iterations = self._number(val, "n_iterations", minimum=1, integer=True)

    @property
    def depth(self):
        """levels per oblivious tree"""
        return self._depth

    @depth.setter
    def depth(self, val):
        self._depth = self._number(val, "depth", minimum=1, maximum=16, integer=True)

    @property
    def learning_rate(self):
        """shrinkage applied to every tree"""
        return self._learning_rate

    @learning_rate.setter
    def learning_rate(self, val):
        self._learning_rate = self._number(
            val, "learning_rate", minimum=0, maximum=1, strict_min=True
        )

    @property
    def boosting_mode(self):
        """'plain' or 'ordered'"""
        return self._boosting_mode

    @boosting_mode.setter
    def boosting_mode(self, val):
        if val is None:
            val = self._default("boosting_mode")
        if isinstance(val, str):
            val = val.lower()
        if val not in SUPPORTED_BOOSTING_MODES:
            raise ValueError(
                f"the `boosting_mode` property of {type(self).__name__} must be one of "
                f"{SUPPORTED_BOOSTING_MODES}\n but received {repr(val)} instead"
            )
        self._boosting_mode = val

    @property
    def n_permutations(self):
        """random orders maintained in ordered mode"""
        return self._n_permutations

    @n_permutations.setter
    def n_permutations(self, val):
        self._n_permutations = self._number(
            val, "n_permutations", minimum=1, integer=True
        )

    @property
    def ghm(self):
        """`GHMConfig` with gradient harmonizing settings"""
        return self._ghm

    @ghm.setter
    def ghm(self, val):
        self._ghm = validate_property_class(val, "ghm", GHMConfig, self)

    @property
    def threshold_candidates_per_feature(self):
        """quantile borders per feature"""
        return self._threshold_candidates_per_feature

    @threshold_candidates_per_feature.setter
    def threshold_candidates_per_feature(self, val):
        self._threshold_candidates_per_feature = self._number(
            val, "threshold_candidates_per_feature", minimum=1, maximum=1024, integer=True
        )

    @property
    def min_samples_per_leaf(self):
        """smallest populated leaf a split may produce"""
        return self._min_samples_per_leaf

    @min_samples_per_leaf.setter
    def min_samples_per_leaf(self, val):
        self._min_samples_per_leaf = self._number(
            val, "min_samples_per_leaf", minimum=1, integer=True
        )

    @property
    def rng_seed(self):
        """seed of the ordered-mode permutations"""
        return self._rng_seed

    @rng_seed.setter
    def rng_seed(self, val):
        self._rng_seed = self._number(val, "rng_seed", minimum=0, integer=True)


class SweepConfig(SectionProperties):
    """
    Defines the evaluation grids.

    Properties
    ----------
    k_folds: int, default=5
        folds of the stratified cross-validation

    noise_levels: tuple of float, default=(0, 1, 2, 3)
        noise levels in percent of each feature's standard deviation

    stable_ratios: tuple of float, default=(1, 3, 9, 19)
        stable:unstable training compositions

    train_size, test_size: int, default=4000, 1897
        sizes of the imbalance experiment splits

    holdout_fraction: float, default=0.2
        share of samples held out by `train`

    pmu_top: int, default=5
        buses in the importance-ranked PMU plan
    """

    _section = "sweep"

    @property
    def k_folds(self):
        """folds of the stratified cross-validation"""
        return self._k_folds

    @k_folds.setter
    def k_folds(self, val):
        self._k_folds = self._number(val, "k_folds", minimum=2, integer=True)

    @property
    def noise_levels(self):
        """noise levels in percent"""
        return self._noise_levels

    @noise_levels.setter
    def noise_levels(self, val):
        if val is None:
            val = self._default("noise_levels")
        self._noise_levels = tuple(
            validate_number(v, "noise_levels", self, minimum=0) for v in val
        )

    @property
    def stable_ratios(self):
        """stable:unstable training compositions"""
        return self._stable_ratios

    @stable_ratios.setter
    def stable_ratios(self, val):
        if val is None:
            val = self._default("stable_ratios")
        self._stable_ratios = tuple(
            validate_number(v, "stable_ratios", self, minimum=0, strict_min=True)
            for v in val
        )

    @property
    def train_size(self):
        """training size of the imbalance experiment"""
        return self._train_size

    @train_size.setter
    def train_size(self, val):
        self._train_size = self._number(val, "train_size", minimum=1, integer=True)

    @property
    def test_size(self):
        """test size of the imbalance experiment"""
        return self._test_size

    @test_size.setter
    def test_size(self, val):
        self._test_size = self._number(val, "test_size", minimum=1, integer=True)

    @property
    def holdout_fraction(self):
        """share of samples held out by `train`"""
        return self._holdout_fraction

    @holdout_fraction.setter
    def holdout_fraction(self, val):
        val = self._number(val, "holdout_fraction", minimum=0)
        if val >= 1:
            raise ValueError(
                f"the `holdout_fraction` property of `{type(self).__name__}` must be <1\n"
                f" but received {repr(val)} instead"
            )
        self._holdout_fraction = val

    @property
    def pmu_top(self):
        """buses in the importance-ranked PMU plan"""
        return self._pmu_top

    @pmu_top.setter
    def pmu_top(self, val):
        self._pmu_top = self._number(val, "pmu_top", minimum=1, integer=True)


default_settings = DefaultConfig()
