#  Problem, solution and record types shared across cutlab
from cutlab.types.dominance import (
    ConsistencyReport,
    ConsistencyViolation,
    DominanceRelation,
    DominanceVerdict,
    SuiteReport,
)
from cutlab.types.instance import INFINITE_BOUND, Cut, CutOrigin, Incumbent, MipInstance, RowKind
from cutlab.types.learning import (
    FEATURE_NAMES,
    CrossValidationReport,
    DecisionCell,
    FeatureVector,
    PcaProjection,
    RegressionModel,
    TrainingRecord,
)
from cutlab.types.measures import MeasureKind, ScoringContext
from cutlab.types.records import (
    BruteForceResult,
    ExperimentRecord,
    MipStatus,
    NodeStats,
    RoundReport,
    SeparationConfig,
    SeparationResult,
)
from cutlab.types.solution import (
    CenterKind,
    CenterPoint,
    LpOutcome,
    LpStatus,
    OptimaSet,
    TableauRow,
    VarStatus,
)
from cutlab.types.stats import DensityRow, HeadToHead, PickerSummary
