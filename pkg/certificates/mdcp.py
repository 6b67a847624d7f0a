"""Certificates from MDCP spanning-forest queries."""

import logging
from typing import List

from graphs import CertificateForests, VertexPartition
from graphs.simple_graph import Edge
from oracles import MdcpOracle

logger = logging.getLogger(__name__)


def spf_certificate(oracle: MdcpOracle, r: int) -> CertificateForests:
    """F_i = spf(F_1 + ... + F_(i-1)) for i = 1..r."""
    found: List[Edge] = []
    forests: List[List[Edge]] = []
    for _ in range(r):
        forest = oracle.spf(found)
        forests.append(forest)
        found.extend(forest)
    logger.debug(f"spf certificate: r={r}, {len(found)} edges")
    return CertificateForests(forests, VertexPartition(oracle.n))
