"""scrollread: readability prediction and statistics from scroll logs.

The pipeline: ingest session logs -> engagement filter -> per-session
interaction measures -> per-text aggregation (plus text features) ->
linear-SVM level prediction and the statistical analyses.
"""

from .aggregation import (
    BASELINE_FEATURES,
    FEATURE_SELECTIONS,
    SCROLL_FEATURES,
    TRADITIONAL_FEATURES,
    FeatureRow,
    SubgroupFilter,
    aggregate_by_text,
    build_matrix,
)
from .classifier import CVReport, LinearModel, evaluate, standardize, stratified_folds, train_svm
from .engagement import EngagementReport, filter_sessions, is_engaged, max_scroll_depth
from .interaction import (
    MEASURE_NAMES,
    InteractionMeasures,
    NormalizedMeasures,
    count_regressions,
    measure_session,
    normalize,
    pairwise_accelerations,
    pairwise_speeds,
)
from .session_model import (
    ADVANCED,
    ELEMENTARY,
    LEVELS,
    AoALexicon,
    Article,
    Participant,
    Question,
    ScrollEvent,
    Session,
    Viewport,
    corpus_index,
    load_aoa_lexicon,
    load_corpus,
    load_participants,
    parse_session_file,
    write_corpus,
    write_participants,
    write_session_file,
)
from .stats import (
    CorrelationResult,
    LevelDifferenceResult,
    bonferroni,
    l1_correlates,
    level_difference_test,
    pearson,
    score_by_proficiency,
    speed_distribution,
    table1_rows,
)
from .text_features import (
    TextFeatures,
    compute_text_features,
    count_syllables,
    lexical_richness,
    mean_aoa,
    tokenize,
    traditional_features,
)

__version__ = "0.1.0"
