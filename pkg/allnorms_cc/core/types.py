"""Report and record models.

Everything that leaves the process as JSON is a pydantic model defined here.
Infinite norms are serialised as the string ``"inf"`` because JSON has no
infinity literal.
"""

import math
from datetime import datetime
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, computed_field, field_validator, model_serializer, model_validator

from .errors import InvalidParameterError


class NormSpec(BaseModel):
    """An l_p norm with p >= 1, or the l_inf norm."""

    p: float = Field(..., description="Norm exponent; math.inf for the max norm")

    @model_validator(mode="before")
    @classmethod
    def accept_scalar(cls, data: Any) -> Any:
        if isinstance(data, (str, int, float)):
            return {"p": data}
        return data

    @field_validator("p", mode="before")
    @classmethod
    def parse_token(cls, v: Union[str, float, int]) -> float:
        if isinstance(v, str):
            token = v.strip().lower()
            if token in ("inf", "infinity", "∞"):
                return math.inf
            try:
                v = float(token)
            except ValueError:
                raise ValueError(f"not a norm exponent: {v!r}")
        if math.isnan(v) or v < 1:
            raise ValueError(f"p must be at least 1 or 'inf', got {v}")
        return float(v)

    @model_serializer
    def serialize(self) -> Union[str, float]:
        """Serialised as the bare exponent, or "inf"."""
        return "inf" if math.isinf(self.p) else self.p

    @classmethod
    def parse(cls, token: Union[str, float, int]) -> "NormSpec":
        """Parse a CLI token; raises InvalidParameterError on bad input."""
        try:
            return cls(p=token)
        except ValueError as e:
            raise InvalidParameterError(f"invalid norm {token!r}: {e}")

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.p)

    @property
    def token(self) -> str:
        """Stable key used in norm tables: ``"1"``, ``"1.5"``, ``"inf"``."""
        return "inf" if self.is_inf else f"{self.p:g}"

    def __hash__(self) -> int:
        return hash(self.p)


class GraphSummary(BaseModel):
    """Metadata about an input graph."""

    n: int = Field(ge=1)
    positive_edges: int = Field(ge=0)
    negative_edges: int = Field(ge=0)
    max_degree: int = Field(ge=0, description="Largest loop-free positive degree")
    is_regular: bool
    source: Optional[str] = Field(None, description="File or generator the graph came from")


class ClusteringScore(BaseModel):
    """Norms of one clustering's disagreement vector."""

    name: str
    num_clusters: int = Field(ge=1)
    norms: Dict[str, float] = Field(default_factory=dict, description="Norm value by p token")
    l1_vertex: int = Field(ge=0, description="Sum of the disagreement vector")
    edge_disagreements: int = Field(ge=0, description="Number of disagreeing edges")
    metadata: Dict[str, Any] = Field(default_factory=dict)


class FractionalSummary(BaseModel):
    """Fractional costs of the correlation metric and the adjusted metric."""

    correlation: Dict[str, float] = Field(default_factory=dict)
    adjusted: Dict[str, float] = Field(default_factory=dict)
    stored_correlation: int = Field(ge=0)
    stored_adjusted: int = Field(ge=0)
    isolated_vertices: int = Field(ge=0, description="Vertices isolated by the singleton rule")


class DualBoundSummary(BaseModel):
    """Dual-fitting lower bound on the number of disagreeing edges."""

    value: float = Field(ge=0.0)
    is_regular: bool
    degree: int = Field(ge=0)
    bad_triangles: int = Field(ge=0)


class ExactSummary(BaseModel):
    """Result of the exhaustive oracle."""

    p: NormSpec
    value: float
    clustering: List[List[int]]
    partitions: int = Field(ge=1)


class Report(BaseModel):
    """Evaluation record for one graph and one clustering."""

    graph: GraphSummary
    p_list: List[NormSpec]
    algorithm: ClusteringScore
    baselines: List[ClusteringScore] = Field(default_factory=list)
    fractional: Optional[FractionalSummary] = None
    dual_lower_bound: Optional[DualBoundSummary] = None
    bad_triangles: Optional[int] = None
    exact: Optional[ExactSummary] = None
    guarantee_violations: Optional[List[int]] = None
    timings_ms: Dict[str, float] = Field(default_factory=dict)
    created: datetime = Field(default_factory=datetime.now)


class Finding(BaseModel):
    """One invariant violation found by the verifier."""

    suite: str
    instance: str
    seed: Optional[int] = None
    message: str
    observed: Optional[float] = None
    bound: Optional[float] = None


class SuiteResult(BaseModel):
    """Outcome of one verification suite."""

    suite: str
    instances: int = Field(ge=0)
    skipped: int = Field(default=0, ge=0, description="Given instances too large for the suite")
    findings: List[Finding] = Field(default_factory=list)
    max_ratios: Dict[str, float] = Field(default_factory=dict, description="Observed worst ratios")
    duration_ms: float = Field(default=0.0, ge=0.0)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return not self.findings


class VerificationReport(BaseModel):
    """All suites run by one ``verify`` invocation."""

    seed: int
    suites: List[SuiteResult] = Field(default_factory=list)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    @property
    def findings(self) -> List[Finding]:
        return [f for s in self.suites for f in s.findings]


class BenchRow(BaseModel):
    """One benchmark measurement.

    The CSV carries every field except ``family``; rows are written in family blocks.
    """

    n: int
    delta: int
    seed: int
    t_metric_ms: float
    t_adjust_ms: float
    t_round_ms: float
    l1: float
    l2: float
    linf: float
    pivot_l1: float
    dual_lb: float
    family: str = "regular-circulant"
