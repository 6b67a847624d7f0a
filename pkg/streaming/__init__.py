from streaming.engine import (
    EstimateReport,
    ForestStack,
    StreamEstimate,
    StreamOutcome,
    StreamRepetition,
    estimate_values,
    stream_ec,
    stream_ec_complete,
    stream_ec_random,
)
from streaming.events import (
    ARRIVAL_MODELS,
    VertexArrivalEvent,
    VertexStream,
    read_stream,
    stream_from_text,
    stream_graph,
    stream_to_text,
    synthesize_stream,
    write_stream,
)
from streaming.sampler import independent_subsets, parallel_center_sampler

__all__ = [
    "ARRIVAL_MODELS",
    "EstimateReport",
    "ForestStack",
    "StreamEstimate",
    "StreamOutcome",
    "StreamRepetition",
    "VertexArrivalEvent",
    "VertexStream",
    "estimate_values",
    "independent_subsets",
    "parallel_center_sampler",
    "read_stream",
    "stream_ec",
    "stream_ec_complete",
    "stream_ec_random",
    "stream_from_text",
    "stream_graph",
    "stream_to_text",
    "synthesize_stream",
    "write_stream",
]
