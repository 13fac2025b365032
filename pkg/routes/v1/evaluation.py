# routes/v1/evaluation.py
"""Commands that evaluate framed links: eval, coeffs, verify-type, axioms, check-disjoint."""
import argparse
import logging

from app.config.settings import settings
from app.middleware.logging import log_command
from core.errors import EXIT_OK, EXIT_PROPERTY_FAILURE
from domain.schemas.run import AxiomRow, CoefficientRow, ConvolutionTableRow, RunConfig, TypeBoundRow
from routes.v1.common import emit_header, emit_rows, load_data, load_diagram
from services.invariants import check_disjoint_union, evaluate, normalized_value, type_bound_sweep
from services.tortile import check_axioms

logger = logging.getLogger(__name__)


def _add_diagram_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--braid", help="Braid text (containing 'strands=') or a braid file")
    group.add_argument("--morse", help="Morse slice file")


def _coefficient_rows(name, value):
    return [CoefficientRow(diagram=name, k=k, coefficient=value.field.format_elem(c))
            for k, c in enumerate(value.coeffs)]


@log_command
def handle_eval(args: argparse.Namespace, config: RunConfig) -> int:
    data, config = load_data(args.data, config)
    diagram = load_diagram(args.braid, args.morse)
    result = evaluate(diagram, data)
    emit_header(config)
    value = result.scalar if result.is_closed else None
    if value is None:
        print(result.matrix.format())
        return EXIT_OK
    if args.normalize:
        value = normalized_value(diagram, data)
    if config.machine:
        emit_rows(config, _coefficient_rows(diagram.name, value))
        return EXIT_OK
    print(f"{diagram.name} {value.format()}")
    if args.coeffs:
        emit_rows(config, _coefficient_rows(diagram.name, value))
    return EXIT_OK


@log_command
def handle_coeffs(args: argparse.Namespace, config: RunConfig) -> int:
    data, config = load_data(args.data, config)
    diagram = load_diagram(args.braid, args.morse)
    value = normalized_value(diagram, data) if args.normalize else evaluate(diagram, data).scalar
    emit_header(config)
    emit_rows(config, _coefficient_rows(diagram.name, value))
    return EXIT_OK


@log_command
def handle_verify_type(args: argparse.Namespace, config: RunConfig) -> int:
    data, config = load_data(args.data, config)
    diagram = load_diagram(args.braid, args.morse)
    max_singular = args.max_singular if args.max_singular is not None else settings.MAX_SINGULAR
    reports = type_bound_sweep(diagram, data, max_singular)
    emit_header(config)
    emit_rows(config, [
        TypeBoundRow(diagram=r.diagram, singular=r.singular_count, applicable=r.applicable, passed=r.passed,
                     value=r.value.format().replace(" ", ""))
        for r in reports
    ])
    failed = [r for r in reports if not r.passed]
    return EXIT_PROPERTY_FAILURE if failed else EXIT_OK


@log_command
def handle_axioms(args: argparse.Namespace, config: RunConfig) -> int:
    data, config = load_data(args.data, config)
    report = check_axioms(data)
    emit_header(config)
    emit_rows(config, [
        AxiomRow(axiom=c.name, passed=c.passed, witness=None if c.witness is None else f"{c.witness[0]},{c.witness[1]}",
                 detail=c.detail.replace(" ", "_") if config.machine else c.detail)
        for c in report.checks
    ], columns=["axiom", "passed", "witness"] if config.machine else None)
    return EXIT_OK if report.passed else EXIT_PROPERTY_FAILURE


@log_command
def handle_check_disjoint(args: argparse.Namespace, config: RunConfig) -> int:
    data, config = load_data(args.data, config)
    left = load_diagram(args.left, None)
    right = load_diagram(args.right, None)
    report = check_disjoint_union(left, right, data)
    emit_header(config)
    field = data.field
    emit_rows(config, [
        ConvolutionTableRow(k=row.k, union=field.format_elem(row.union),
                            convolution=field.format_elem(row.convolution), matches=row.matches)
        for row in report.rows
    ])
    if not config.machine:
        print(f"components: {report.left_components} + {report.right_components} -> {report.union_components}; "
              f"multiplicative: {report.multiplicative}")
    return EXIT_OK if report.passed else EXIT_PROPERTY_FAILURE


def register(subparsers) -> None:
    parser = subparsers.add_parser("eval", help="Evaluate a closed diagram")
    parser.add_argument("--data", required=True, help="kauffman:<n>, symmetric:<d> or a data file")
    _add_diagram_arguments(parser)
    parser.add_argument("--coeffs", action="store_true", help="Also list every coefficient")
    parser.add_argument("--normalize", action="store_true", help="Divide by the unknot value per component")
    parser.set_defaults(handler=handle_eval)

    parser = subparsers.add_parser("coeffs", help="List the eps^k coefficients of a closed diagram")
    parser.add_argument("--data", required=True)
    _add_diagram_arguments(parser)
    parser.add_argument("--normalize", action="store_true")
    parser.set_defaults(handler=handle_coeffs)

    parser = subparsers.add_parser("verify-type", help="Sweep singularization patterns and check the type bound")
    parser.add_argument("--data", required=True)
    _add_diagram_arguments(parser)
    parser.add_argument("--max-singular", type=int, default=None, help="Largest singular point count to sweep")
    parser.set_defaults(handler=handle_verify_type)

    parser = subparsers.add_parser("axioms", help="Check every tortile axiom of a datum")
    parser.add_argument("--data", required=True)
    parser.set_defaults(handler=handle_axioms)

    parser = subparsers.add_parser("check-disjoint", help="Multiplicativity and convolution for a separated union")
    parser.add_argument("--data", required=True)
    parser.add_argument("--left", required=True, help="Braid text or file")
    parser.add_argument("--right", required=True, help="Braid text or file")
    parser.set_defaults(handler=handle_check_disjoint)
