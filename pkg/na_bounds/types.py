"""
Shared type definitions for na_bounds.

Enums used by the numerical core, the report writers and the CLI live here to
avoid circular imports between those layers.
"""

from enum import Enum


class BoundFamily(str, Enum):
    """Family tag carried by every BoundResult.

    Declaration order is the tie-break order used when bounds are ranked.
    """

    FUK_NAGAEV_H = "FukNagaevH"
    BENNETT = "Bennett"
    BERNSTEIN1 = "Bernstein1"
    FUK_NAGAEV_TAIL = "FukNagaevTail"
    WEAK_MOMENT = "WeakMoment"
    FUK_PTH = "FukPth"
    SEMI_EXP = "SemiExp"
    EXP_MOMENT = "ExpMoment"
    BERNSTEIN_COND = "BernsteinCond"
    RIO = "Rio"
    HOEFFDING_AZUMA = "HoeffdingAzuma"

    @property
    def rank(self) -> int:
        return list(BoundFamily).index(self)


class FukNagaevVariant(str, Enum):
    """Which Gaussian-family function closes the Fuk-Nagaev bound."""

    HN = "Hn"
    BENNETT = "Bennett"
    BERNSTEIN = "Bernstein"


class SemiExpForm(str, Enum):
    PIECEWISE = "Piecewise"
    SMOOTHED = "Smoothed"


class BernsteinForm(str, Enum):
    SHARP = "Sharp"
    SIMPLE = "Simple"


class RioForm(str, Enum):
    YOUNG = "YoungForm"
    CLOSED = "ClosedForm"
    HOEFFDING_AZUMA = "HoeffdingAzuma"
    DELTA = "DeltaForm"
    DELTA_RELAXED = "DeltaRelaxed"


class Convexity(str, Enum):
    CONVEX = "Convex"
    CONCAVE = "Concave"
    UNKNOWN = "Unknown"


class TruncationMode(str, Enum):
    """How the truncation level y is chosen."""

    DEFAULT_RULE = "DefaultRule"
    NUMERIC_SCAN = "NumericScan"


class Statistic(str, Enum):
    """Monte Carlo estimand."""

    MAX_PREFIX = "MaxPrefix"
    FINAL_SUM = "FinalSum"
    EXPECTATION = "Expectation"


class ModelKind(str, Enum):
    SAMPLING_WITHOUT_REPLACEMENT = "sampling_without_replacement"
    MULTINOMIAL_COUNTS = "multinomial_counts"
    GAUSSIAN_NEG_COV = "gaussian_neg_cov"


class DistributionKind(str, Enum):
    BOUNDED_DISCRETE = "bounded_discrete"
    UNIFORM = "uniform"
    CENTERED_GAUSSIAN = "centered_gaussian"
    TRUNCATED_CENTERED_GAUSSIAN = "truncated_centered_gaussian"
    FINITE_POPULATION_VALUE = "finite_population_value"


class ConvexKind(str, Enum):
    """Nondecreasing convex test functions for the comparison checks."""

    EXPONENTIAL = "exponential"
    SHIFTED_SQUARE = "shifted_square"
    IDENTITY_PLUS = "identity_plus"


class ExitCode(int, Enum):
    """Stable CLI exit-code contract."""

    SUCCESS = 0
    FINDING = 1
    CONFIG_ERROR = 2
    DOMAIN_ERROR = 3
