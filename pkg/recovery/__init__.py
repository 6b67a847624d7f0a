from recovery.buckets import (
    AdjacencyLists,
    BucketPlan,
    expected_recover_queries,
    learn_bucket,
    recover_k_from_all,
    wc_recover_k_from_all,
)
from recovery.coin_weighing import coins_of_order, decode, identify_coins, order_for, weighing_matrix
from recovery.learning import dump_learned_block, learn_bounded_matrix, learn_by_search, learning_budget
from recovery.separating import (
    SeparatingMatrix,
    TargetSet,
    full_set_row_bound,
    is_separating_bruteforce,
    random_separating_matrix,
    sparse_set_row_bound,
)

__all__ = [
    "AdjacencyLists",
    "BucketPlan",
    "SeparatingMatrix",
    "TargetSet",
    "coins_of_order",
    "decode",
    "dump_learned_block",
    "expected_recover_queries",
    "full_set_row_bound",
    "identify_coins",
    "is_separating_bruteforce",
    "learn_bounded_matrix",
    "learn_bucket",
    "learn_by_search",
    "learning_budget",
    "order_for",
    "random_separating_matrix",
    "recover_k_from_all",
    "sparse_set_row_bound",
    "wc_recover_k_from_all",
    "weighing_matrix",
]
