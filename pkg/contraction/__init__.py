from contraction.goodness import GoodnessReport, goodness_report, miss_probability_bound
from contraction.learn_subgraph import learn_subgraph
from contraction.out_sampling import one_out_sample, two_out_sample
from contraction.star import StarSample, sample_centers, uniform_star_contraction
from graphs import DirectedSubgraph

__all__ = [
    "DirectedSubgraph",
    "GoodnessReport",
    "StarSample",
    "goodness_report",
    "learn_subgraph",
    "miss_probability_bound",
    "one_out_sample",
    "sample_centers",
    "two_out_sample",
    "uniform_star_contraction",
]
