from oracles.bipartite import BipartiteOracle, BipartiteView, MatrixOracle, SubmatrixOracle
from oracles.cut_oracle import CutOracle, GraphView, QueryPrimitives, RemovedEdges
from oracles.ledger import (
    CUT_UNIT_CATEGORIES,
    DERIVED_QUERY_UNITS,
    MDCP_CATEGORIES,
    LedgerSnapshot,
    QueryCategory,
    QueryLedger,
    log2_ceil,
    modeled_mincut_units,
)
from oracles.mdcp import MdcpCostTable, MdcpOracle

__all__ = [
    "BipartiteOracle",
    "BipartiteView",
    "CUT_UNIT_CATEGORIES",
    "CutOracle",
    "DERIVED_QUERY_UNITS",
    "GraphView",
    "LedgerSnapshot",
    "MDCP_CATEGORIES",
    "MatrixOracle",
    "MdcpCostTable",
    "MdcpOracle",
    "QueryCategory",
    "QueryLedger",
    "QueryPrimitives",
    "RemovedEdges",
    "SubmatrixOracle",
    "log2_ceil",
    "modeled_mincut_units",
]
