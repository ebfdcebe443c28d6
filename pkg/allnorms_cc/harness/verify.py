"""Invariant suites run by ``allnorms-cc verify``.

Each suite walks a deterministic corpus of instances, checks one family of proved
bounds on every instance and turns violations into ``Finding`` records. Instances
carry the seed they were generated from so any finding can be replayed.
"""

import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from ..algorithms.metric import adjust_metric, check_delta_triangle, correlation_metric
from ..analyzers.objective import (
    GUARANTEE_RELATIVE_SLACK,
    bad_triangle_load,
    check_dual_feasibility,
    check_rounding_guarantee,
    disagreement_vector,
    dual_lower_bound,
    edge_fractional_cost,
    fractional_cost,
    fractional_split,
    lp_norm,
    per_vertex_fractional,
)
from ..baselines.exact import brute_force_opt, brute_force_profile
from ..core.config import Config
from ..core.errors import InvalidParameterError
from ..core.graph import CorrelationGraph, load_graph
from ..core.performance import AsyncPoolExecutor, StageTimer
from ..core.pipeline import ADJUSTED_METRIC_FACTOR, AllNormsClusterer
from ..core.types import Finding, NormSpec, SuiteResult, VerificationReport
from ..generators.graph_generator import (
    complete_positive,
    empty_positive,
    make_graph,
    neg_matching,
    random_graph,
    regular_circulant,
    star,
)


logger = logging.getLogger(__name__)

SUITES = ("triangle", "guarantee", "cost-bounds", "dual", "oracle-ratios")

ADJUSTED_DELTA = 10 / 7
LINF_FRACTIONAL_CEILING = 56.0
LP_FRACTIONAL_CEILING = 529.0
POSITIVE_SPLIT_CEILING = 34.0
NEGATIVE_SPLIT_CEILING = 40.0
END_TO_END_CEILING = 6348.0
DUAL_CERTIFICATE_FACTOR = 6.0
DUAL_MAX_N = 8

METRIC_DENSITIES = (0.05, 0.2, 0.5)
ORACLE_DENSITIES = (0.3, 0.5, 0.7)
FRACTIONAL_NORMS = tuple(NormSpec.parse(p) for p in ("1", "1.5", "2", "3"))
PIPELINE_NORMS = FRACTIONAL_NORMS + (NormSpec.parse("inf"),)
LINF = PIPELINE_NORMS[-1]
L1 = PIPELINE_NORMS[0]


@dataclass(frozen=True)
class Instance:
    """A labelled graph of a verification corpus."""

    label: str
    graph: CorrelationGraph
    seed: Optional[int] = None


@dataclass
class InstanceOutcome:
    findings: List[Finding] = field(default_factory=list)
    ratios: Dict[str, float] = field(default_factory=dict)


def _exceeds(observed: float, bound: float) -> bool:
    return observed > bound * (1.0 + GUARANTEE_RELATIVE_SLACK) + 1e-9


def _ratio(observed: float, reference: float) -> Optional[float]:
    if reference > 0:
        return observed / reference
    return None


def metric_corpus(trials: int, n: int, seed: int) -> List[Instance]:
    """Random graphs cycling through the sparse/medium/dense densities, plus stars and negative matchings."""
    instances = []
    for i in range(trials):
        q = METRIC_DENSITIES[i % len(METRIC_DENSITIES)]
        instances.append(
            Instance(f"random(n={n},q={q},seed={seed + i})", random_graph(n, q, seed + i), seed + i)
        )
    for m in range(1, n + 1):
        instances.append(Instance(f"star({m})", star(m)))
    for m in range(2, n + 1, 2):
        instances.append(Instance(f"neg_matching({m})", neg_matching(m)))
    return instances


def oracle_corpus(trials: int, max_n: int, seed: int) -> List[Instance]:
    """Small instances for exhaustive comparison: seeded random graphs and every named family."""
    instances = []
    for i in range(trials):
        m = 1 + i % max_n
        q = ORACLE_DENSITIES[(i // max_n) % len(ORACLE_DENSITIES)]
        instances.append(
            Instance(f"random(n={m},q={q},seed={seed + i})", random_graph(m, q, seed + i), seed + i)
        )
    for m in range(1, max_n + 1):
        instances.append(Instance(f"star({m})", star(m)))
        instances.append(Instance(f"complete_positive({m})", complete_positive(m)))
        instances.append(Instance(f"empty_positive({m})", empty_positive(m)))
        if m % 2 == 0:
            instances.append(Instance(f"neg_matching({m})", neg_matching(m)))
        for degree in range(2, m, 2):
            instances.append(Instance(f"regular_circulant({m},{degree})", regular_circulant(m, degree)))
    return instances


def circulant_corpus(max_n: int = DUAL_MAX_N) -> List[Instance]:
    return [
        Instance(f"regular_circulant({m},{degree})", regular_circulant(m, degree))
        for m in range(1, max_n + 1)
        for degree in range(0, m, 2)
    ]


LABEL_PATTERN = re.compile(r"^([a-z_]+)\((.*)\)$")
POSITIONAL_PARAMS = {"regular_circulant": ("n", "degree")}


def _label_value(token: str) -> Union[int, float]:
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        raise InvalidParameterError(f"bad parameter value {token!r} in instance label")


def instance_from_label(label: str) -> Instance:
    """Rebuild a generated instance from the label a finding recorded.

    Accepts ``random(n=60,q=0.2,seed=7)``, ``star(5)``, ``regular_circulant(8,4)``
    and the other generator labels the corpora produce.
    """
    label = label.strip()
    match = LABEL_PATTERN.match(label)
    if match is None:
        raise InvalidParameterError(f"not an instance label: {label!r}")
    kind, body = match.groups()
    names = POSITIONAL_PARAMS.get(kind, ("n",))
    params: Dict[str, Any] = {}
    for position, part in enumerate(p.strip() for p in body.split(",") if p.strip()):
        key, sep, value = part.partition("=")
        if not sep:
            if position >= len(names):
                raise InvalidParameterError(f"too many parameters in instance label {label!r}")
            key, value = names[position], part
        params[key.strip()] = _label_value(value.strip())
    graph = make_graph(kind, **params)
    seed = params.get("seed")
    return Instance(label, graph, int(seed) if seed is not None else None)


def input_corpus(paths: Sequence[Union[str, Path]]) -> List[Instance]:
    """Graph files as instances labelled by their path."""
    return [Instance(str(path), load_graph(path)) for path in paths]


class InvariantVerifier:
    """Runs the verification suites concurrently, one instance per pool task."""

    def __init__(self, config: Optional[Config] = None, instances: Optional[Sequence[Instance]] = None):
        """Initialize the verifier.

        Args:
            config: Configuration; the harness section sizes the generated corpora
            instances: Fixed instances replacing every generated corpus. The exhaustive
                suites only take those small enough for the oracle.
        """
        self.config = config or Config()
        self.harness = self.config.harness
        self.clusterer = AllNormsClusterer(self.config)
        self.instances = list(instances) if instances is not None else None
        self._suites: Dict[str, Tuple[Callable[[], List[Instance]], Callable[[Instance], InstanceOutcome]]] = {
            "triangle": (self._metric_instances, self.check_triangle),
            "guarantee": (self._metric_instances, self.check_guarantee),
            "cost-bounds": (self._oracle_instances, self.check_cost_bounds),
            "dual": (self._dual_instances, self.check_dual),
            "oracle-ratios": (self._oracle_instances, self.check_oracle_ratios),
        }

    def _given(self, max_n: Optional[int] = None) -> List[Instance]:
        assert self.instances is not None
        if max_n is None:
            return list(self.instances)
        return [i for i in self.instances if i.graph.n <= max_n]

    def _metric_instances(self) -> List[Instance]:
        if self.instances is not None:
            return self._given()
        return metric_corpus(self.harness.trials, self.harness.n, self.harness.seed)

    def _oracle_instances(self) -> List[Instance]:
        if self.instances is not None:
            return self._given(self.harness.max_n)
        return oracle_corpus(self.harness.cost_trials, self.harness.max_n, self.harness.seed)

    def _dual_instances(self) -> List[Instance]:
        if self.instances is not None:
            return self._given(DUAL_MAX_N)
        return circulant_corpus()

    def check_triangle(self, instance: Instance) -> InstanceOutcome:
        """f is a 10/7-semi-metric and d an ordinary semi-metric."""
        outcome = InstanceOutcome()
        d = correlation_metric(instance.graph)
        f = adjust_metric(instance.graph, d, self.config.adjustment)
        for name, z, delta in (("adjusted", f, ADJUSTED_DELTA), ("correlation", d, 1.0)):
            violations = check_delta_triangle(z, delta)
            if violations:
                u, v, w = violations[0]
                outcome.findings.append(Finding(
                    suite="triangle",
                    instance=instance.label,
                    seed=instance.seed,
                    message=(
                        f"{name} metric breaks the {delta:.6g}-triangle inequality on "
                        f"{len(violations)} triples, first (u={u}, v={v}, w={w})"
                    ),
                    observed=z.distance(u, v),
                    bound=delta * (z.distance(u, w) + z.distance(v, w)),
                ))
        return outcome

    def check_guarantee(self, instance: Instance) -> InstanceOutcome:
        """Every vertex pays at most 12 times its fractional cost under f."""
        outcome = InstanceOutcome()
        graph = instance.graph
        result = self.clusterer.run(graph)
        violating = check_rounding_guarantee(graph, result.metric, result.clustering, ADJUSTED_METRIC_FACTOR)
        alg = disagreement_vector(graph, result.clustering)
        frac = per_vertex_fractional(graph, result.metric)
        for u in violating:
            outcome.findings.append(Finding(
                suite="guarantee",
                instance=instance.label,
                seed=instance.seed,
                message=f"vertex {u} has {alg[u]} disagreements",
                observed=float(alg[u]),
                bound=ADJUSTED_METRIC_FACTOR * frac[u],
            ))
        ratios = [alg[u] / frac[u] for u in range(graph.n) if frac[u] > 0]
        if ratios:
            outcome.ratios["alg/fractional"] = max(ratios)
        return outcome

    def check_cost_bounds(self, instance: Instance) -> InstanceOutcome:
        """Fractional cost of f against the exhaustive optimum, per norm and per edge sign."""
        outcome = InstanceOutcome()
        graph = instance.graph
        exact = {r.norm.token: r.best_value for r in brute_force_profile(graph, PIPELINE_NORMS, self.harness.max_n)}
        f = adjust_metric(graph, correlation_metric(graph), self.config.adjustment)

        def check(key: str, observed: float, opt: float, ceiling: float) -> None:
            ratio = _ratio(observed, opt)
            if ratio is not None:
                outcome.ratios[key] = ratio
            if _exceeds(observed, ceiling * opt):
                outcome.findings.append(Finding(
                    suite="cost-bounds",
                    instance=instance.label,
                    seed=instance.seed,
                    message=f"{key} exceeds {ceiling:g} x OPT ({opt:g})",
                    observed=observed,
                    bound=ceiling * opt,
                ))

        check("fractional_linf/opt", fractional_cost(graph, f, LINF), exact[LINF.token], LINF_FRACTIONAL_CEILING)
        for spec in FRACTIONAL_NORMS:
            check(f"fractional_l{spec.token}/opt", fractional_cost(graph, f, spec), exact[spec.token], LP_FRACTIONAL_CEILING)

        positive_part, negative_part = fractional_split(graph, f)
        opt1 = exact[L1.token]
        check("positive_split/opt_l1", math.fsum(positive_part), opt1, POSITIVE_SPLIT_CEILING)
        check("negative_split/opt_l1", math.fsum(negative_part), opt1, NEGATIVE_SPLIT_CEILING)
        return outcome

    def check_dual(self, instance: Instance) -> InstanceOutcome:
        """Dual bound validity, edge-by-edge feasibility and the regular-graph certificate."""
        outcome = InstanceOutcome()
        graph = instance.graph
        bound = dual_lower_bound(graph)
        opt_edges = brute_force_opt(graph, L1, max_n=DUAL_MAX_N).best_value / 2

        def report(message: str, observed: float, limit: float) -> None:
            outcome.findings.append(Finding(
                suite="dual", instance=instance.label, seed=instance.seed,
                message=message, observed=observed, bound=limit,
            ))

        if _exceeds(bound.value, opt_edges):
            report("dual lower bound exceeds the optimal number of disagreeing edges", bound.value, opt_edges)
        for u, v in check_dual_feasibility(graph, bound):
            report(
                f"edge ({u}, {v}) lies in too many bad triangles",
                float(bad_triangle_load(graph, u, v)),
                float(2 * bound.degree),
            )

        if bound.is_regular:
            cost = edge_fractional_cost(graph, correlation_metric(graph))
            certificate = DUAL_CERTIFICATE_FACTOR * bound.value
            if _exceeds(cost, certificate):
                report("edge-level fractional cost of d exceeds 6 x the dual value", cost, certificate)
            ratio = _ratio(cost, bound.value)
            if ratio is not None:
                outcome.ratios["edge_fractional/dual"] = ratio
        ratio = _ratio(bound.value, opt_edges)
        if ratio is not None:
            outcome.ratios["dual/opt_edges"] = ratio
        return outcome

    def check_oracle_ratios(self, instance: Instance) -> InstanceOutcome:
        """Pipeline norms against the exhaustive optimum for every norm."""
        outcome = InstanceOutcome()
        graph = instance.graph
        y = disagreement_vector(graph, self.clusterer.run(graph).clustering)
        for exact in brute_force_profile(graph, PIPELINE_NORMS, self.harness.max_n):
            key = f"pipeline_l{exact.norm.token}/opt"
            value = lp_norm(y, exact.norm)
            ratio = _ratio(value, exact.best_value)
            if ratio is not None:
                outcome.ratios[key] = ratio
            if _exceeds(value, END_TO_END_CEILING * exact.best_value):
                outcome.findings.append(Finding(
                    suite="oracle-ratios",
                    instance=instance.label,
                    seed=instance.seed,
                    message=f"{key} exceeds {END_TO_END_CEILING:g} x OPT ({exact.best_value:g})",
                    observed=value,
                    bound=END_TO_END_CEILING * exact.best_value,
                ))
        return outcome

    async def run_suite(self, suite: str) -> SuiteResult:
        if suite not in self._suites:
            raise InvalidParameterError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        build, check = self._suites[suite]
        timer = StageTimer()
        with timer.stage(suite):
            instances = build()
            executor = AsyncPoolExecutor(self.harness.workers)
            outcomes = await executor.submit_all(check, [(instance,) for instance in instances])
        skipped = len(self.instances) - len(instances) if self.instances is not None else 0
        if skipped:
            logger.warning(f"Suite {suite}: {skipped} given instances are too large for the exact oracle")

        findings: List[Finding] = []
        max_ratios: Dict[str, float] = {}
        for outcome in outcomes:
            findings.extend(outcome.findings)
            for key, value in outcome.ratios.items():
                max_ratios[key] = max(value, max_ratios.get(key, value))

        logger.info(
            f"Suite {suite}: {len(instances)} instances, {len(findings)} findings "
            f"in {timer.total_ms:.0f} ms"
        )
        return SuiteResult(
            suite=suite,
            instances=len(instances),
            skipped=skipped,
            findings=findings,
            max_ratios=max_ratios,
            duration_ms=timer.total_ms,
        )

    async def run(self, suites: Sequence[str] = SUITES) -> VerificationReport:
        """Run ``suites`` in order and collect their results."""
        unknown = [s for s in suites if s not in self._suites]
        if unknown:
            raise InvalidParameterError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
        report = VerificationReport(seed=self.harness.seed)
        for suite in suites:
            report.suites.append(await self.run_suite(suite))
        return report
