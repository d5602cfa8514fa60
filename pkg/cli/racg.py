import argparse
import json
import logging
import sys

from alignment.align import align
from classifier.classify import classification_to_dict, classify
from classifier.survey import classify_survey
from cli.fixtures import fixture_names, load_fixture
from cli.graph_file import load_graph, serialize_graph
from filtering.checks import check_factor_bound, check_new_letter_property, level_report, map_to_cayley, verify_facts
from filtering.dot_export import DotOptions, write_dot
from filtering.filter_config import default_depth
from filtering.filter_graph import build_filter
from graph_core.presentation_graph import PresentationGraph
from oracle.ball import Ball
from oracle.oracle_config import default_radius
from separators.detectors import ends, find_product_separator, find_vfs, suspended_separators
from utils.errors import GraphParseError, InputError, InvariantViolation, ResourceGuardError
from utils.utils import format_word, parse_word
from word_engine.descent import extend_to_letter, project_to_coset
from word_engine.words import descent_set, is_geodesic, normal_form, reduce, walls

logger = logging.getLogger("racg")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load(args) -> PresentationGraph:
    if args.fixture is not None:
        return load_fixture(args.fixture)
    if args.graph is None:
        raise UsageError("a graph file or --fixture NAME is required")
    return load_graph(args.graph)


def _emit(args, payload: dict, text: str):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_classify(args, graph: PresentationGraph) -> int:
    verdict, trace = classify(graph)
    lines = [str(verdict)]
    for step in trace:
        certificate = f"  {step.certificate.to_dict(graph)}" if step.certificate is not None else ""
        lines.append(f"  {step.rule.value} {graph.names_of(step.subgraph)}{certificate}")
    _emit(args, classification_to_dict(graph, verdict, trace), "\n".join(lines))
    return EXIT_OK


def cmd_separators(args, graph: PresentationGraph) -> int:
    everything = not (args.product or args.vfs or args.suspended)
    payload = {}
    lines = []
    if everything or args.product:
        product = find_product_separator(graph)
        payload["product"] = product.to_dict(graph) if product is not None else None
        lines.append(f"product: {payload['product']}")
    if everything or args.vfs:
        vfs = find_vfs(graph)
        payload["vfs"] = vfs.to_dict(graph) if vfs is not None else None
        lines.append(f"vfs: {payload['vfs']}")
    if everything or args.suspended:
        payload["suspended"] = [graph.names_of(C) for C in suspended_separators(graph)]
        lines.append(f"suspended: {payload['suspended']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_reduce(args, graph: PresentationGraph) -> int:
    print(format_word(graph, reduce(graph, parse_word(graph, args.word))))
    return EXIT_OK


def cmd_geodesic(args, graph: PresentationGraph) -> int:
    print("true" if is_geodesic(graph, parse_word(graph, args.word)) else "false")
    return EXIT_OK


def cmd_nf(args, graph: PresentationGraph) -> int:
    print(format_word(graph, normal_form(graph, parse_word(graph, args.word)).word))
    return EXIT_OK


def cmd_walls(args, graph: PresentationGraph) -> int:
    for wall in walls(graph, parse_word(graph, args.word)):
        print(f"{graph.names[wall.letter]}: {format_word(graph, wall.reflection.word)}")
    return EXIT_OK


def cmd_descent(args, graph: PresentationGraph) -> int:
    members = descent_set(graph, normal_form(graph, parse_word(graph, args.word))).members
    print(" ".join(graph.names_of(members)))
    return EXIT_OK


def cmd_project(args, graph: PresentationGraph) -> int:
    T = graph.subset_from_names(args.subset.split())
    projected = project_to_coset(graph, normal_form(graph, parse_word(graph, args.word)), T)
    print(format_word(graph, projected.word))
    return EXIT_OK


def cmd_extend(args, graph: PresentationGraph) -> int:
    extended = extend_to_letter(graph, parse_word(graph, args.word), graph.index_of(args.letter))
    print(format_word(graph, extended))
    return EXIT_OK


def cmd_align(args, graph: PresentationGraph) -> int:
    target = normal_form(graph, parse_word(graph, args.target))
    result = align(graph, parse_word(graph, args.alpha), target)
    print(f"alpha': {format_word(graph, result.alpha_prime)}")
    print(f"beta': {format_word(graph, result.beta_prime)}")
    print(f"common prefix: {result.common_prefix_length}")
    return EXIT_OK


def cmd_filter(args, graph: PresentationGraph) -> int:
    if find_product_separator(graph) is not None or find_vfs(graph) is not None:
        logger.warning("graph has a product separator or VFS; the filter facts are not guaranteed")
    filt = build_filter(
        graph,
        parse_word(graph, args.alpha),
        parse_word(graph, args.beta),
        args.depth,
        prefix_length=args.prefix_length,
    )
    print(level_report(filt).to_csv(index=False), end="")
    if args.dot:
        write_dot(filt, args.dot, DotOptions(show_elements=args.show_elements))
        print(f"DOT written to {args.dot}")
    if not args.check:
        return EXIT_OK

    facts = verify_facts(filt)
    map_to_cayley(filt)
    longest, bound_ok = check_factor_bound(filt)
    new_letters = check_new_letter_property(filt)
    print(f"facts: {'pass' if facts.passed else 'FAIL'}")
    for failure in facts.failures:
        print(f"  fact {failure.fact} vertex {failure.vertex} edge {failure.edge}: {failure.message}")
    print("level = length: pass")
    print(f"factor bound: {longest} <= {3 * graph.size()}: {'pass' if bound_ok else 'FAIL'}")
    print(f"new letters: {'pass' if new_letters.passed else 'FAIL'} ({new_letters.windows_checked} windows)")
    if facts.passed and bound_ok and new_letters.passed:
        return EXIT_OK
    logger.error("filter checks failed")
    return EXIT_INTERNAL


def cmd_oracle(args, graph: PresentationGraph) -> int:
    ball = Ball(graph, args.radius, workers=args.workers)
    print(ball.sphere_sizes().to_csv(index=False), end="")
    return EXIT_OK


def cmd_ends(args, graph: PresentationGraph) -> int:
    print(ends(graph).value)
    return EXIT_OK


def cmd_serialize(args, graph: PresentationGraph) -> int:
    print(serialize_graph(graph), end="")
    return EXIT_OK


def cmd_survey(args, graph) -> int:
    if args.seed is None and not args.exhaustive:
        raise UsageError("survey needs --seed unless --exhaustive is given")
    summary = classify_survey(
        size_limit=args.size_limit,
        sample_count=args.samples,
        seed=args.seed if args.seed is not None else 0,
        exhaustive=args.exhaustive,
        workers=args.workers,
        progress=not args.quiet,
    )
    print(summary.histogram().to_csv(index=False), end="")
    print(f"undetermined: {len(summary.undetermined)}")
    for undetermined in summary.undetermined:
        print(serialize_graph(undetermined))
    print(f"certificates checked: {summary.certificates_checked}")
    return EXIT_OK


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="racg", description="Right-angled Coxeter group boundary workbench.")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    parser.add_argument("--quiet", action="store_true", help="warnings only, no progress bars")

    graph_args = ArgumentParser(add_help=False)
    graph_args.add_argument("graph", nargs="?", help="graph file")
    graph_args.add_argument("--fixture", choices=fixture_names(), help="use a built-in graph")

    json_args = ArgumentParser(add_help=False)
    json_args.add_argument("--json", action="store_true", help="JSON output")

    word_args = ArgumentParser(add_help=False)
    word_args.add_argument("word", help='whitespace separated generator names, e.g. "a c a"')

    commands = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, parents, help_text, needs_graph=True):
        sub = commands.add_parser(name, parents=parents, help=help_text)
        sub.set_defaults(handler=handler, needs_graph=needs_graph)
        return sub

    command("classify", cmd_classify, [json_args, graph_args], "decide local connectivity of the boundary")
    sub = command("separators", cmd_separators, [json_args, graph_args], "find separator certificates")
    sub.add_argument("--product", action="store_true")
    sub.add_argument("--vfs", action="store_true")
    sub.add_argument("--suspended", action="store_true")

    # the word comes before the graph so the graph file stays optional
    command("reduce", cmd_reduce, [word_args, graph_args], "reduce a word to a geodesic")
    command("geodesic", cmd_geodesic, [word_args, graph_args], "test whether a word is geodesic")
    command("nf", cmd_nf, [word_args, graph_args], "normal form of a word")
    command("walls", cmd_walls, [word_args, graph_args], "walls crossed by a word")
    command("descent", cmd_descent, [word_args, graph_args], "descent set of a word")
    sub = command("project", cmd_project, [word_args, graph_args], "project onto a special coset")
    sub.add_argument("--subset", required=True, help="generators of the special subgroup")
    sub = command("extend", cmd_extend, [word_args, graph_args], "extend a geodesic to end in a letter")
    sub.add_argument("--letter", required=True)

    sub = command("align", cmd_align, [graph_args], "align geodesics to two elements")
    sub.add_argument("--alpha", required=True)
    sub.add_argument("--target", required=True)

    sub = command("filter", cmd_filter, [graph_args], "build and check a filter")
    sub.add_argument("--alpha", required=True)
    sub.add_argument("--beta", required=True)
    sub.add_argument("--depth", type=int, default=default_depth)
    sub.add_argument("--prefix-length", type=int, default=None)
    sub.add_argument("--dot", default=None, help="write the filter as DOT to this file")
    sub.add_argument("--show-elements", action="store_true")
    sub.add_argument("--check", action="store_true", help="verify the filter facts and bounds")

    oracle = commands.add_parser("oracle", help="brute-force Cayley ball")
    oracle.add_argument("action", choices=["ball"])
    oracle.add_argument("graph", nargs="?")
    oracle.add_argument("--fixture", choices=fixture_names())
    oracle.add_argument("--radius", type=int, default=default_radius)
    oracle.add_argument("--workers", type=int, default=None)
    oracle.set_defaults(handler=cmd_oracle, needs_graph=True)

    command("ends", cmd_ends, [graph_args], "number of ends")
    command("serialize", cmd_serialize, [graph_args], "canonical graph file")

    sub = command("survey", cmd_survey, [], "classify many graphs", needs_graph=False)
    sub.add_argument("--size-limit", type=int, default=4)
    sub.add_argument("--samples", type=int, default=0)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--exhaustive", action="store_true")
    sub.add_argument("--workers", type=int, default=1)
    return parser


def run(argv: list[str]) -> int:
    """
    Run the command line and return the exit code: 0 success, 1 usage or
    input error, 2 graph file parse error, 3 internal invariant or resource
    guard failure.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as error:
        print(error, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exit_request:
        return int(exit_request.code or 0)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        graph = _load(args) if args.needs_graph else None
        return args.handler(args, graph)
    except UsageError as error:
        print(error, file=sys.stderr)
        return EXIT_USAGE
    except GraphParseError as error:
        print(f"parse error: {error}", file=sys.stderr)
        return EXIT_PARSE
    except InputError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, ResourceGuardError) as error:
        logger.error(f"{type(error).__name__}: {error}")
        return EXIT_INTERNAL


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
