from .instance import (
    GapBicliqueInstance,
    Promise,
    PromiseVerdict,
    check_promise,
    max_common_neighbors,
    source_preconditions,
)
from .preprocess import PreprocessResult, preprocess
from .synth import synth_no_instance, synth_yes_instance
from .wrappers import attach_colorings, duplicate_side, find_colorful_biclique, lift_planted_biclique
