"""Graph families for experiments, built with networkx generators.

Each family is a pydantic model tagged by `kind`, so specs can name them in
YAML or JSON. `generate(family, seed)` is deterministic in the seed.
"""

import logging
import math
from typing import Annotated, List, Literal, Union

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, model_validator

from errors import InvalidInputError
from graphs import SimpleGraph, exact_min_cut, min_degree

logger = logging.getLogger(__name__)

PLANTED_VERIFY_LIMIT = 512
PLANTED_ATTEMPTS = 20
MIXED_MIN_N = 16
MIXED_BARBELL_LIMIT = 128


class GnpFamily(BaseModel):
    kind: Literal["gnp"] = "gnp"
    n: int = Field(ge=1)
    p: float = Field(ge=0, le=1)
    with_cycle: bool = False

    def resized(self, n: int) -> "GnpFamily":
        return self.model_copy(update={"n": n})


class CycleFamily(BaseModel):
    kind: Literal["cycle"] = "cycle"
    n: int = Field(ge=3)

    def resized(self, n: int) -> "CycleFamily":
        return self.model_copy(update={"n": n})


class PathFamily(BaseModel):
    kind: Literal["path"] = "path"
    n: int = Field(ge=1)

    def resized(self, n: int) -> "PathFamily":
        return self.model_copy(update={"n": n})


class StarFamily(BaseModel):
    kind: Literal["star"] = "star"
    n: int = Field(ge=2)

    def resized(self, n: int) -> "StarFamily":
        return self.model_copy(update={"n": n})


class CompleteFamily(BaseModel):
    kind: Literal["complete"] = "complete"
    n: int = Field(ge=1)

    def resized(self, n: int) -> "CompleteFamily":
        return self.model_copy(update={"n": n})


class PlantedCutFamily(BaseModel):
    """Two random blobs joined by `cut` edges with pairwise distinct endpoints."""
    kind: Literal["planted_cut"] = "planted_cut"
    n1: int = Field(ge=2)
    n2: int = Field(ge=2)
    cut: int = Field(ge=1)
    density: float = Field(default=1.0, gt=0, le=1)

    @model_validator(mode="after")
    def _cut_fits(self):
        if self.cut > min(self.n1, self.n2):
            raise ValueError(f"cut {self.cut} needs distinct endpoints on both sides")
        return self

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    def resized(self, n: int) -> "PlantedCutFamily":
        return self.model_copy(update={"n1": n // 2, "n2": n - n // 2})


class NearRegularFamily(BaseModel):
    """Random d-regular graph; d+1 when n*d is odd."""
    kind: Literal["near_regular"] = "near_regular"
    n: int = Field(ge=2)
    d: int = Field(ge=1)

    def resized(self, n: int) -> "NearRegularFamily":
        return self.model_copy(update={"n": n})


class BarbellFamily(BaseModel):
    """Two cliques of `clique` vertices joined by a path of `bridge` vertices."""
    kind: Literal["barbell"] = "barbell"
    clique: int = Field(ge=3)
    bridge: int = Field(default=0, ge=0)

    @property
    def n(self) -> int:
        return 2 * self.clique + self.bridge

    def resized(self, n: int) -> "BarbellFamily":
        return self.model_copy(update={"clique": max(3, (n - self.bridge) // 2)})


class MixedFamily(BaseModel):
    """A seeded draw from the gnp, near-regular, planted-cut and barbell families."""
    kind: Literal["mixed"] = "mixed"
    n: int = Field(ge=MIXED_MIN_N)

    def resized(self, n: int) -> "MixedFamily":
        return self.model_copy(update={"n": n})


GraphFamily = Annotated[
    Union[GnpFamily, CycleFamily, PathFamily, StarFamily, CompleteFamily,
          PlantedCutFamily, NearRegularFamily, BarbellFamily, MixedFamily],
    Field(discriminator="kind"),
]

_FAMILY_ADAPTER = TypeAdapter(GraphFamily)


def parse_family(data: dict) -> BaseModel:
    """Validate a family given as a plain mapping with a `kind` key."""
    return _FAMILY_ADAPTER.validate_python(data)


def resolve_mixed(family: MixedFamily, rng: np.random.Generator) -> BaseModel:
    """Pick the concrete family of one mixed draw.

    Densities shrink with n so every pick keeps min degree well above the
    planted cut while staying sparse enough for exact verification at n = 512.
    Barbells are only drawn up to MIXED_BARBELL_LIMIT vertices.
    """
    n = family.n
    kinds = ["gnp", "near_regular", "planted_cut"]
    if n <= MIXED_BARBELL_LIMIT:
        kinds.append("barbell")
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "gnp":
        p = min(1.0, max(0.05, 6 * math.log(n) / n) * float(rng.uniform(1.0, 1.5)))
        return GnpFamily(n=n, p=p, with_cycle=True)
    if kind == "near_regular":
        return NearRegularFamily(n=n, d=int(rng.integers(3, 9)))
    if kind == "planted_cut":
        half = n // 2
        density = min(1.0, max(0.3, 12 / half))
        return PlantedCutFamily(n1=half, n2=n - half, cut=int(rng.integers(1, 4)), density=density)
    return BarbellFamily(clique=(n - 2) // 2, bridge=n - 2 * ((n - 2) // 2))


def _blob(n: int, density: float, rng: np.random.Generator) -> nx.Graph:
    if density >= 1.0:
        return nx.complete_graph(n)
    return nx.gnp_random_graph(n, density, seed=int(rng.integers(2 ** 31)))


def _planted(family: PlantedCutFamily, rng: np.random.Generator) -> SimpleGraph:
    left = _blob(family.n1, family.density, rng)
    right = _blob(family.n2, family.density, rng)
    graph = nx.disjoint_union(left, right)
    tails = rng.choice(family.n1, size=family.cut, replace=False)
    heads = family.n1 + rng.choice(family.n2, size=family.cut, replace=False)
    graph.add_edges_from(zip(tails.tolist(), heads.tolist()))
    return SimpleGraph.from_networkx(graph)


def _verify_planted(graph: SimpleGraph, family: PlantedCutFamily) -> bool:
    """Planted cut is the unique non-trivial minimum and below delta.

    Each blob being more than `cut`-connected makes every other cut larger.
    """
    if graph.n > PLANTED_VERIFY_LIMIT:
        return True
    if min_degree(graph) <= family.cut:
        return False
    for lo, hi in ((0, family.n1), (family.n1, graph.n)):
        blob = graph.to_networkx().subgraph(range(lo, hi))
        part = SimpleGraph.from_networkx(nx.Graph(blob))
        if part.n >= 2 and exact_min_cut(part).value <= family.cut:
            return False
    return exact_min_cut(graph).value == family.cut


def generate(family: BaseModel, seed: int) -> SimpleGraph:
    """Build one graph of the family.

    Raises:
        InvalidInputError: Infeasible parameters, or a planted cut that could
            not be made the unique minimum.
    """
    rng = np.random.default_rng(seed)
    kind = getattr(family, "kind", None)
    if kind == "mixed":
        concrete = resolve_mixed(family, rng)
        logger.debug(f"mixed draw for n={family.n}: {concrete.kind}")
        return generate(concrete, int(rng.integers(2 ** 31)))
    if kind == "gnp":
        graph = nx.gnp_random_graph(family.n, family.p, seed=int(rng.integers(2 ** 31)))
        if family.with_cycle and family.n >= 3:
            order = rng.permutation(family.n).tolist()
            graph.add_edges_from(zip(order, order[1:] + order[:1]))
        return SimpleGraph.from_networkx(graph)
    if kind == "cycle":
        return SimpleGraph.from_networkx(nx.cycle_graph(family.n))
    if kind == "path":
        return SimpleGraph.from_networkx(nx.path_graph(family.n))
    if kind == "star":
        return SimpleGraph.from_networkx(nx.star_graph(family.n - 1))
    if kind == "complete":
        return SimpleGraph.from_networkx(nx.complete_graph(family.n))
    if kind == "near_regular":
        d = family.d + (family.n * family.d) % 2
        if d >= family.n:
            raise InvalidInputError(f"degree {d} too large for n={family.n}")
        graph = nx.random_regular_graph(d, family.n, seed=int(rng.integers(2 ** 31)))
        return SimpleGraph.from_networkx(graph)
    if kind == "barbell":
        return SimpleGraph.from_networkx(nx.barbell_graph(family.clique, family.bridge))
    if kind == "planted_cut":
        if min(family.n1, family.n2) - 1 <= family.cut:
            raise InvalidInputError(f"planted cut {family.cut} is not below the densest blob degree",
                                    family.model_dump())
        for attempt in range(PLANTED_ATTEMPTS):
            graph = _planted(family, rng)
            if _verify_planted(graph, family):
                return graph
            logger.debug(f"planted cut attempt {attempt} rejected")
        raise InvalidInputError("could not plant a unique minimum cut", family.model_dump())
    raise InvalidInputError(f"unknown graph family {kind!r}")


def family_size(family: BaseModel) -> int:
    return int(family.n)


def families_for_grid(family: BaseModel, sizes: List[int]) -> List[BaseModel]:
    return [family.resized(n) for n in sizes]
