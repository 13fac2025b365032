# routes/v1/deformation.py
"""Commands on skeletal presentations: cohomology, extend, braiding-roundtrip."""
import argparse
import logging

from app.config.settings import settings
from app.middleware.logging import log_command
from core.errors import EXIT_OK, EXIT_PROPERTY_FAILURE, UnsupportedDegreeError
from domain.entities.cochain import DeformationSeries
from domain.schemas.run import BraidingRow, CohomologyTableRow, RunConfig
from infrastructure.formats.presentation import format_deformation, parse_deformation
from infrastructure.storage.file_storage import file_storage
from routes.v1.common import emit_header, emit_rows, load_functor, load_presentation
from services.defcomplex import cohomology_table, extend_deformation
from services.skeletal import braiding_from_mult, enumerate_braidings, mult_functor

logger = logging.getLogger(__name__)


@log_command
def handle_cohomology(args: argparse.Namespace, config: RunConfig) -> int:
    presentation, config = load_presentation(args.presentation, config)
    functor = load_functor(args.functor, presentation)
    for degree in args.degrees:
        if not 1 <= degree <= settings.MAX_DEGREE:
            raise UnsupportedDegreeError(f"Degree {degree} outside the supported range 1..{settings.MAX_DEGREE}")
    rows = cohomology_table(functor, args.degrees, proper=args.proper)
    emit_header(config)
    emit_rows(config, [
        CohomologyTableRow(degree=r.degree, kernel_dim=r.kernel_dim, image_rank=r.image_rank,
                           cohomology_dim=r.cohomology_dim)
        for r in rows
    ])
    return EXIT_OK


@log_command
def handle_extend(args: argparse.Namespace, config: RunConfig) -> int:
    presentation, config = load_presentation(args.presentation, config)
    functor = load_functor(args.functor, presentation)
    series = parse_deformation(file_storage.read_text(args.deformation), functor, args.deformation)
    config = config.bind(args.deformation, order=args.target)
    outcome = extend_deformation(series, args.target)
    emit_header(config)
    if isinstance(outcome, DeformationSeries):
        text = format_deformation(outcome)
        if args.write:
            file_storage.write_text(args.write, text)
            print(f"wrote {args.write}")
        else:
            print(text, end="")
        return EXIT_OK
    field = functor.field
    print(f"obstructed at order {outcome.failed_order}: dim ker delta_3 = {outcome.kernel_dim}, "
          f"rank delta_2 = {outcome.image_rank}, dim H^3 = {outcome.h3_dim}")
    for key, value in sorted(outcome.representative.components.items()):
        print(f"{' '.join(key)} -> {field.format_elem(value)}")
    return EXIT_PROPERTY_FAILURE


@log_command
def handle_braiding_roundtrip(args: argparse.Namespace, config: RunConfig) -> int:
    presentation, config = load_presentation(args.presentation, config)
    field = presentation.field
    if presentation.is_braided and not args.enumerate:
        braidings = [presentation.braiding]
    else:
        braidings = enumerate_braidings(presentation.with_braiding(None))
    emit_header(config)
    if not braidings:
        print("no braidings satisfy the hexagons")
        return EXIT_OK
    all_match = True
    for index, braiding in enumerate(braidings):
        braided = presentation.with_braiding(braiding)
        recovered = braiding_from_mult(mult_functor(braided))
        rows = []
        for a in presentation.objects:
            for b in presentation.objects:
                sigma, back = braided.sigma(a, b), recovered[(a, b)]
                rows.append(BraidingRow(pair=f"({a},{b})", sigma=field.format_elem(sigma),
                                        recovered=field.format_elem(back), matches=sigma == back))
        all_match = all_match and all(row.matches for row in rows)
        if not config.machine:
            print(f"braiding {index + 1}")
        emit_rows(config, rows)
    return EXIT_OK if all_match else EXIT_PROPERTY_FAILURE


def register(subparsers) -> None:
    parser = subparsers.add_parser("cohomology", help="Dimensions of H^n of a functor's deformation complex")
    parser.add_argument("--presentation", required=True, help="Presentation file")
    parser.add_argument("--functor", help="Functor file; the identity functor when omitted")
    parser.add_argument("--proper", action="store_true", help="Use the proper subcomplex")
    parser.add_argument("degrees", nargs="+", type=int, help="Degrees to compute")
    parser.set_defaults(handler=handle_cohomology)

    parser = subparsers.add_parser("extend", help="Extend a deformation order by order")
    parser.add_argument("--presentation", required=True)
    parser.add_argument("--functor")
    parser.add_argument("--deformation", required=True, help="Deformation file")
    parser.add_argument("--target", required=True, type=int, help="Target order")
    parser.add_argument("--write", help="Write the extended series to this path")
    parser.set_defaults(handler=handle_extend)

    parser = subparsers.add_parser("braiding-roundtrip",
                                   help="Recover each braiding from the multiplication functor")
    parser.add_argument("--presentation", required=True)
    parser.add_argument("--enumerate", action="store_true", help="Search all braidings even if one is given")
    parser.set_defaults(handler=handle_braiding_roundtrip)
