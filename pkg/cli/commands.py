"""Command-line entry point.

Each subcommand maps to one handler that loads its inputs, calls the owning
package and returns a report together with the process exit code.
"""

import argparse
import logging
import sys
from enum import Enum
from typing import Callable, Dict, Optional, Sequence, Tuple

from pydantic import ValidationError

from category.bounds import cat_bracket, cri_bracket, gcat_bracket, strong_category_bracket, tcat_bracket
from category.covers import Cover, Coverage, CoverMode, verify_cover
from category.factory import EvaluatorMode, create_evaluator
from census.classification import CENSUS_BUDGET, classify_homotopy
from cli import messages
from cli.inputs import (
    load_certificate,
    load_cover,
    load_ordering,
    metadata_certificates,
    metadata_covers,
)
from cli.reports import (
    CategoryReport,
    CensusCommandReport,
    CertificateVerifyReport,
    ContractibleReport,
    CoverVerifyReport,
    CritReport,
    CritSummary,
    CupReport,
    CurvatureCommandReport,
    ErrorReport,
    FixturesReport,
    HomotopicReport,
    InputDescriptor,
    InvariantReport,
    MorseCheckReport,
    PoincareHopfReport,
    Report,
    ReduceReport,
    to_json,
    to_text,
)
from cohomology.betti import betti, format_polynomial, poincare_polynomial
from cohomology.cup_length import cup_length
from core.canonical import are_isomorphic
from core.cliques import euler_characteristic, fvector
from core.config import SearchBudget, get_settings, override_settings
from core.errors import (
    CertificateError,
    CoverageError,
    GraphFormatError,
    LscatError,
    MoveConditionError,
    NotMorseError,
    SizeLimitError,
)
from core.fixtures import fixture, list_fixtures
from core.graph_io import GraphDocument, LoadedGraph, load_graph, serialize_json
from curvature.curvatures import DEFAULT_SAMPLES, betti_curvature, category_curvature, euler_curvature
from homotopy.contractibility import default_cache, is_contractible
from homotopy.moves import replay, verify_certificate
from homotopy.search import VerdictStatus, homotopic_bounded, reduce
from morse.category_index import category_index_profile
from morse.crit import crit, crit_heuristic
from morse.filtration import index_profile
from morse.morse_functions import is_morse, morse_inequalities

logger = logging.getLogger(__name__)

OK, NEGATIVE, UNKNOWN, INPUT_ERROR = 0, 1, 2, 3

Outcome = Tuple[Report, int]


class Subcommand(Enum):
    """Subcommands of the executable."""
    INVARIANTS = "invariants"
    CONTRACTIBLE = "contractible"
    REDUCE = "reduce"
    CRIT = "crit"
    CUP = "cup"
    CATEGORY = "category"
    CURVATURE = "curvature"
    PH_CHECK = "ph-check"
    MORSE_CHECK = "morse-check"
    COVER_VERIFY = "cover-verify"
    HOMOTOPIC = "homotopic"
    CERTIFICATE_VERIFY = "certificate-verify"
    CENSUS = "census"
    FIXTURES = "fixtures"


def _budget(args: argparse.Namespace) -> SearchBudget:
    budget = get_settings().budget
    if getattr(args, "budget", None) is not None:
        budget = budget.model_copy(update={"max_states": args.budget})
    return budget


def _crit_summary(graph) -> CritSummary:
    result = crit(graph)
    return CritSummary(value=result.value, exact=result.exact, method=result.method, ordering=list(result.witness.sequence))


def _euler_options(method: Optional[str]) -> Dict[str, int]:
    """``exact`` keeps the configured degree cap, ``mc[:SAMPLES]`` samples every vertex."""
    if method is None or method == "exact":
        return {}
    if method.startswith("mc"):
        count = method.partition(":")[2]
        try:
            return {"degree_cap": 0, "samples": int(count) if count else DEFAULT_SAMPLES}
        except ValueError:
            raise GraphFormatError(f"bad sample count in {method!r}", "--method") from None
    raise ValueError(f"unknown curvature method {method!r}")


def _covers(args: argparse.Namespace, loaded: LoadedGraph):
    return metadata_covers(loaded) + [load_cover(path) for path in args.cover or ()]


def _certificates(args: argparse.Namespace, loaded: LoadedGraph):
    return metadata_certificates(loaded) + [load_certificate(p, loaded.graph) for p in args.certificate or ()]


# ============================================================================
# Handlers
# ============================================================================

def run_invariants(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    graph = loaded.graph
    budget = _budget(args)
    certificates = _certificates(args, loaded)
    report = InvariantReport(
        command=Subcommand.INVARIANTS.value,
        input=InputDescriptor.of(loaded),
        fvector=list(fvector(graph)),
        euler_characteristic=euler_characteristic(graph),
        betti=list(betti(graph)),
        poincare_polynomial=format_polynomial(poincare_polynomial(graph)),
        contractible=bool(is_contractible(graph)),
        cup=cup_length(graph),
        crit=_crit_summary(graph),
        tcat=tcat_bracket(graph, budget, _covers(args, loaded)),
        cat=cat_bracket(graph, budget, certificates),
        cri=cri_bracket(graph, budget, certificates),
        budget=budget,
    )
    return report, OK


def run_contractible(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    cache = default_cache()
    result = is_contractible(loaded.graph, cache)
    refutation = None
    if not result:
        refutation = "no removal order shrinks the graph to a vertex"
        if loaded.graph.order and not loaded.graph.is_connected():
            refutation = "graph is not connected"
        elif euler_characteristic(loaded.graph) != 1:
            refutation = f"euler characteristic {euler_characteristic(loaded.graph)} differs from 1"
    report = ContractibleReport(
        command=Subcommand.CONTRACTIBLE.value,
        input=InputDescriptor.of(loaded),
        contractible=bool(result),
        witness=list(result.witness) if result else None,
        refutation=refutation,
        greedy_misses=cache.greedy_misses,
    )
    return report, OK if result else NEGATIVE


def run_reduce(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    reduction = reduce(loaded.graph)
    report = ReduceReport(
        command=Subcommand.REDUCE.value,
        input=InputDescriptor.of(loaded),
        reduced=GraphDocument.from_graph(reduction.graph),
        removed=loaded.graph.order - reduction.graph.order,
        certificate=reduction.certificate,
    )
    return report, OK


def run_crit(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    if args.heuristic:
        result = crit_heuristic(loaded.graph, restarts=args.restarts)
        summary = CritSummary(value=result.value, exact=False, method=result.method, ordering=list(result.witness.sequence))
    else:
        summary = _crit_summary(loaded.graph)
    return CritReport(command=Subcommand.CRIT.value, input=InputDescriptor.of(loaded), crit=summary), OK


def run_cup(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    bracket = cup_length(loaded.graph, random_trials=args.trials)
    report = CupReport(
        command=Subcommand.CUP.value,
        input=InputDescriptor.of(loaded),
        betti=list(betti(loaded.graph)),
        cup=bracket,
    )
    return report, OK


def run_category(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    graph = loaded.graph
    budget = _budget(args)
    covers = _covers(args, loaded)
    certificates = _certificates(args, loaded)
    report = CategoryReport(
        command=Subcommand.CATEGORY.value,
        input=InputDescriptor.of(loaded),
        tcat=tcat_bracket(graph, budget, covers),
        gcat=gcat_bracket(graph, covers),
        cat=cat_bracket(graph, budget, certificates),
        strong_cat=strong_category_bracket(graph, certificates, covers),
        cri=cri_bracket(graph, budget, certificates),
    )
    return report, OK


def run_curvature(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    graph = loaded.graph
    which = args.which
    if which == "euler":
        curvature = euler_curvature(graph, seed=args.seed, **_euler_options(args.method))
    elif which.startswith("betti:"):
        try:
            k = int(which.partition(":")[2])
        except ValueError:
            raise GraphFormatError(f"bad Betti degree in {which!r}", "--which") from None
        curvature = betti_curvature(graph, k, method=args.method, seed=args.seed)
    elif which == "category":
        evaluator = create_evaluator(EvaluatorMode(args.evaluator))
        curvature = category_curvature(graph, evaluator, method=args.method, seed=args.seed)
    else:
        raise GraphFormatError(f"unknown curvature {which!r}; use {messages.CURVATURE_WHICH_HELP}", "--which")
    total = curvature.total()
    report = CurvatureCommandReport(
        command=Subcommand.CURVATURE.value,
        input=InputDescriptor.of(loaded),
        curvature=curvature,
        total=None if total is None else str(total),
    )
    return report, OK


def run_ph_check(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    graph = loaded.graph
    ordering = load_ordering(args.ordering, loaded)
    indices = index_profile(graph, ordering, with_betti=True)
    running = 0
    prefix_ok = True
    for i, entry in enumerate(indices):
        running += entry.index
        if running != euler_characteristic(graph.induced_subgraph(ordering.sequence[: i + 1])):
            prefix_ok = False
    if args.category_index:
        profile = category_index_profile(graph, ordering, create_evaluator(EvaluatorMode(args.evaluator)))
        for entry, k in zip(indices, profile.entries):
            entry.category_index = (k.lower, k.upper)
    report = PoincareHopfReport(
        command=Subcommand.PH_CHECK.value,
        input=InputDescriptor.of(loaded),
        ordering=list(ordering.sequence),
        indices=indices,
        index_sum=running,
        euler_characteristic=euler_characteristic(graph),
        prefix_sums_match=prefix_ok,
    )
    return report, OK if report.holds else NEGATIVE


def run_morse_check(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    ordering = load_ordering(args.ordering, loaded)
    classification = is_morse(loaded.graph, ordering)
    inequalities = morse_inequalities(loaded.graph, ordering) if classification.morse else None
    report = MorseCheckReport(
        command=Subcommand.MORSE_CHECK.value,
        input=InputDescriptor.of(loaded),
        ordering=list(ordering.sequence),
        morse=classification.morse,
        critical_points=classification.critical_points,
        counts=classification.counts,
        inequalities=inequalities,
    )
    holds = classification.morse and inequalities.holds
    return report, OK if holds else NEGATIVE


def run_cover_verify(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph)
    if args.cover.startswith("metadata:"):
        name = args.cover.partition(":")[2]
        documents = loaded.metadata.covers
        if name not in documents:
            known = ", ".join(sorted(documents)) or "none"
            raise GraphFormatError(f"no cover named {name!r} (known: {known})", "--cover")
        cover = Cover.from_documents(documents[name])
    else:
        cover = load_cover(args.cover)
    result = verify_cover(loaded.graph, cover, CoverMode(args.mode), _budget(args), Coverage(args.coverage))
    report = CoverVerifyReport(command=Subcommand.COVER_VERIFY.value, input=InputDescriptor.of(loaded), cover=result)
    if result.verified:
        return report, OK
    return report, UNKNOWN if result.inconclusive else NEGATIVE


def run_homotopic(args: argparse.Namespace) -> Outcome:
    first, second = load_graph(args.first), load_graph(args.second)
    verdict = homotopic_bounded(first.graph, second.graph, _budget(args))
    end_isomorphic = None
    if verdict.certificate is not None:
        end_isomorphic = are_isomorphic(verify_certificate(verdict.certificate), second.graph)
    report = HomotopicReport(
        command=Subcommand.HOMOTOPIC.value,
        input=InputDescriptor.of(first),
        second=InputDescriptor.of(second),
        status=verdict.status,
        states_explored=verdict.states_explored,
        reason=verdict.reason,
        witness=verdict.witness,
        certificate=verdict.certificate,
        end_isomorphic=end_isomorphic,
    )
    codes = {VerdictStatus.EQUIVALENT: OK, VerdictStatus.DISTINCT: NEGATIVE, VerdictStatus.UNKNOWN: UNKNOWN}
    return report, codes[verdict.status]


def run_certificate_verify(args: argparse.Namespace) -> Outcome:
    loaded = load_graph(args.graph) if args.graph else None
    cert = load_certificate(args.certificate, loaded.graph if loaded else None)
    try:
        result = replay(cert)
    except CertificateError as e:
        report = CertificateVerifyReport(
            command=Subcommand.CERTIFICATE_VERIFY.value,
            input=InputDescriptor.of(loaded) if loaded else None,
            valid=False,
            failed_step=e.step,
            reason=e.reason,
        )
        return report, NEGATIVE
    report = CertificateVerifyReport(
        command=Subcommand.CERTIFICATE_VERIFY.value,
        input=InputDescriptor.of(loaded) if loaded else None,
        valid=True,
        steps=result.steps,
        end=GraphDocument.from_graph(result.graph),
        marked=None if result.marked is None else sorted(result.marked),
    )
    return report, OK


def run_census(args: argparse.Namespace) -> Outcome:
    budget = CENSUS_BUDGET if args.budget is None else CENSUS_BUDGET.model_copy(update={"max_states": args.budget})
    census = classify_homotopy(args.order, budget, long=args.long, keep_records=args.records)
    report = CensusCommandReport(command=Subcommand.CENSUS.value, census=census)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(to_json(report))
    return report, OK if census.exact else UNKNOWN


def run_fixtures(args: argparse.Namespace) -> Outcome:
    if args.action == "emit":
        if not args.name:
            raise GraphFormatError("fixtures emit needs a fixture name", "NAME")
        named = fixture(args.name)
        sys.stdout.write(serialize_json(named.graph, named.metadata) + "\n")
        return None, OK
    return FixturesReport(command=Subcommand.FIXTURES.value, fixtures=list_fixtures()), OK


HANDLERS: Dict[Subcommand, Callable[[argparse.Namespace], Outcome]] = {
    Subcommand.INVARIANTS: run_invariants,
    Subcommand.CONTRACTIBLE: run_contractible,
    Subcommand.REDUCE: run_reduce,
    Subcommand.CRIT: run_crit,
    Subcommand.CUP: run_cup,
    Subcommand.CATEGORY: run_category,
    Subcommand.CURVATURE: run_curvature,
    Subcommand.PH_CHECK: run_ph_check,
    Subcommand.MORSE_CHECK: run_morse_check,
    Subcommand.COVER_VERIFY: run_cover_verify,
    Subcommand.HOMOTOPIC: run_homotopic,
    Subcommand.CERTIFICATE_VERIFY: run_certificate_verify,
    Subcommand.CENSUS: run_census,
    Subcommand.FIXTURES: run_fixtures,
}


# ============================================================================
# Parser
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lscat",
        description=messages.PROGRAM_DESCRIPTION,
        epilog=messages.EXIT_CODES_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--seed", type=int, help="seed for random orderings and sampling")
    parser.add_argument("--threads", type=int, help="worker processes for the census, crit DP, set cover and sampled curvature")
    parser.add_argument("--budget-states", type=int, help="state budget for homotopy searches")
    parser.add_argument("--budget-extra-vertices", type=int, help="extra vertices allowed in homotopy searches")
    parser.add_argument("--dp-limit", type=int, help="largest order for the exact crit DP")
    parser.add_argument("--json", action="store_true", help="print JSON reports")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--progress", action="store_true", default=None, help="show census progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: Subcommand, graph: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name.value, help=messages.COMMAND_HELP[name.value])
        if graph:
            p.add_argument("graph", help="fixture:NAME, a file path or -")
        return p

    p = command(Subcommand.INVARIANTS)
    p.add_argument("--cover", action="append", help="extra cover file for the tcat bound")
    p.add_argument("--certificate", action="append", help="homotopy certificate to a representative")
    command(Subcommand.CONTRACTIBLE)
    command(Subcommand.REDUCE)
    p = command(Subcommand.CRIT)
    p.add_argument("--heuristic", action="store_true", help="random-restart greedy upper bound")
    p.add_argument("--restarts", type=int, help="restarts for --heuristic")
    p = command(Subcommand.CUP)
    p.add_argument("--trials", type=int, help="random class combinations per length")
    p = command(Subcommand.CATEGORY)
    p.add_argument("--cover", action="append", help="cover file for the tcat and gcat bounds")
    p.add_argument("--certificate", action="append", help="homotopy certificate to a representative")
    p = command(Subcommand.CURVATURE)
    p.add_argument("--which", default="euler", help=messages.CURVATURE_WHICH_HELP)
    p.add_argument("--method", help=messages.CURVATURE_METHOD_HELP)
    p.add_argument("--evaluator", default=EvaluatorMode.AUTO.value, choices=[m.value for m in EvaluatorMode])
    p = command(Subcommand.PH_CHECK)
    p.add_argument("--ordering", required=True, help=messages.ORDERING_HELP)
    p.add_argument("--category-index", action="store_true", help="add the category index of each vertex")
    p.add_argument("--evaluator", default=EvaluatorMode.AUTO.value, choices=[m.value for m in EvaluatorMode])
    p = command(Subcommand.MORSE_CHECK)
    p.add_argument("--ordering", required=True, help=messages.ORDERING_HELP)
    p = command(Subcommand.COVER_VERIFY)
    p.add_argument("--cover", required=True, help="cover file or metadata:NAME")
    p.add_argument("--mode", default=CoverMode.IN_ITSELF.value, choices=[m.value for m in CoverMode])
    p.add_argument("--coverage", default=Coverage.STRICT.value, choices=[c.value for c in Coverage])
    p.add_argument("--budget", type=int, help="state budget for in-G searches")
    p = command(Subcommand.HOMOTOPIC, graph=False)
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--budget", type=int, help="state budget")
    p = command(Subcommand.CERTIFICATE_VERIFY, graph=False)
    p.add_argument("certificate", help="certificate JSON file")
    p.add_argument("--graph", help="start graph for a bare move list")
    p = command(Subcommand.CENSUS, graph=False)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--long", action="store_true", help="allow the long-running order")
    p.add_argument("--budget", type=int, help="state budget per core pair")
    p.add_argument("--records", action="store_true", help="include per-graph records")
    p.add_argument("--out", help="also write the JSON report here")
    p = command(Subcommand.FIXTURES, graph=False)
    p.add_argument("action", nargs="?", default="list", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    return parser


# ============================================================================
# Errors and output
# ============================================================================

def exit_code_for(error: Exception) -> int:
    if isinstance(error, SizeLimitError):
        return UNKNOWN
    if isinstance(error, (CoverageError, NotMorseError, CertificateError, MoveConditionError)):
        return NEGATIVE
    return INPUT_ERROR


def _emit_error(error: Exception, as_json: bool) -> None:
    message = str(error)
    if isinstance(error, ValidationError):
        message = error.errors()[0]["msg"]
    position = getattr(error, "position", None)
    if as_json:
        report = ErrorReport(error=type(error).__name__, message=message, position=position)
        sys.stdout.write(to_json(report) + "\n")
    elif position:
        sys.stderr.write(messages.ERROR_POSITION_LINE.format(message=message, position=position) + "\n")
    else:
        sys.stderr.write(messages.ERROR_LINE.format(message=message) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = override_settings(
        seed=args.seed,
        threads=args.threads,
        budget_states=args.budget_states,
        budget_extra_vertices=args.budget_extra_vertices,
        dp_limit=args.dp_limit,
        log_level=args.log_level,
        progress=args.progress,
    )
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )
    if getattr(args, "seed", None) is None:
        args.seed = settings.seed
    handler = HANDLERS[Subcommand(args.command)]
    try:
        report, code = handler(args)
    except (LscatError, ValueError) as e:
        logger.debug("Command %s failed", args.command, exc_info=True)
        _emit_error(e, args.json)
        return exit_code_for(e)
    if report is not None:
        sys.stdout.write((to_json(report) if args.json else to_text(report)) + "\n")
    return code
