from __future__ import annotations

import argparse
import sys
from typing import TYPE_CHECKING, Sequence

from ideal_quasi.app_meta import APP_NAME, APP_VERSION
from ideal_quasi.config import load_settings
from ideal_quasi.debug_logger import install_global_exception_logging, log_warning
from ideal_quasi.errors import (
    CapacityError,
    DispatchError,
    DomainError,
    IdealSpecError,
    MismatchError,
    ParityError,
    PeriodExhaustedError,
    RankRangeError,
    UnsupportedTypeError,
)
from ideal_quasi.runtime_constants import (
    EXIT_BUDGET,
    EXIT_MISMATCH,
    EXIT_USAGE,
    FORMAT_JSON,
    FORMATS,
    LATTICE_S,
    LATTICES,
    METHOD_BOTH,
    METHOD_CLOSED,
    METHODS,
    TABLE_ALL,
    TABLE_LAYOUTS,
)

if TYPE_CHECKING:
    from app import QuasiApp


# Function: build_parser - Déclare les sous-commandes et les options communes.
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="budget de travail q^ℓ·m par comptage")
    common.add_argument("--workers", type=int, default=None, help="threads du noyau de comptage")
    common.add_argument("--no-cross-check", action="store_true", help="désactive le contrôle forme fermée/oracle")
    common.add_argument("--cache", action="store_true", help="active le cache SQLite des comptages")
    common.add_argument(
        "--clear-cache", action="store_true", help="vide le cache SQLite avant la commande (implique --cache)"
    )
    common.add_argument("--timings", action="store_true", help="affiche les durées sur stderr")

    def system_args(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("type", help="A, B, C ou D")
        sub.add_argument("rank", type=int)

    def ideal_args(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--ideal", default=None, help="'ht<=H' ou 'gen:r1,r2,...' (défaut: Φ⁺ entier)")
        sub.add_argument("--lattice", choices=LATTICES, default=LATTICE_S)

    parser = argparse.ArgumentParser(prog="pyquasi", description=APP_NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    roots = commands.add_parser("roots", parents=[common], help="racines positives, hauteurs, colonnes S et T")
    system_args(roots)
    roots.add_argument("--format", choices=FORMATS, default=FORMAT_JSON)

    ideals = commands.add_parser("ideals", parents=[common], help="énumération des idéaux avec DP et SG")
    system_args(ideals)
    ideals.add_argument("--format", choices=FORMATS, default=FORMAT_JSON)

    count = commands.add_parser("count", parents=[common], help="comptage exact du complémentaire en q")
    system_args(count)
    ideal_args(count)
    count.add_argument("--q", required=True, help="valeurs de q: '4', '2,4,6' ou '1-10'")
    count.add_argument("--shifted", action="store_true", help="comptage décalé F (offsets g·S)")
    count.add_argument("--format", choices=FORMATS, default=FORMAT_JSON)

    chi = commands.add_parser("chi", parents=[common], help="quasi-polynôme caractéristique")
    system_args(chi)
    ideal_args(chi)
    chi.add_argument("--method", choices=METHODS, default=METHOD_BOTH)

    toric = commands.add_parser("toric", parents=[common], help="dernier constituant (torique)")
    system_args(toric)
    ideal_args(toric)
    toric.add_argument("--method", choices=METHODS, default=METHOD_CLOSED)

    period = commands.add_parser("period", parents=[common], help="période minimale et période LCM")
    system_args(period)
    ideal_args(period)
    period.add_argument("--subset-cap", type=int, default=None)

    verify = commands.add_parser("verify", parents=[common], help="contrôles exhaustifs jusqu'au rang donné")
    verify.add_argument("type")
    verify.add_argument("rank_max", type=int)
    verify.add_argument("--output", default=None, help="rapport JSON complet")

    tables = commands.add_parser("tables", parents=[common], help="dispositions TSV par hauteur")
    tables.add_argument("type", nargs="?", default=None)
    tables.add_argument("rank", nargs="?", type=int, default=None)
    tables.add_argument("--ideal", default=None)
    tables.add_argument("--table", choices=TABLE_LAYOUTS, default=TABLE_ALL)
    return parser


# Function: run_command - Aiguille vers la méthode cmd_* de l'application.
def run_command(app: QuasiApp, args: argparse.Namespace) -> int:
    if args.command == "roots":
        return app.cmd_roots(args.type, args.rank, fmt=args.format)
    if args.command == "ideals":
        return app.cmd_ideals(args.type, args.rank, fmt=args.format)
    if args.command == "count":
        return app.cmd_count(
            args.type,
            args.rank,
            ideal_spec=args.ideal,
            lattice=args.lattice,
            q_values=args.q,
            shifted=args.shifted,
            fmt=args.format,
        )
    if args.command == "chi":
        return app.cmd_chi(args.type, args.rank, ideal_spec=args.ideal, lattice=args.lattice, method=args.method)
    if args.command == "toric":
        return app.cmd_toric(args.type, args.rank, ideal_spec=args.ideal, lattice=args.lattice, method=args.method)
    if args.command == "period":
        return app.cmd_period(
            args.type, args.rank, ideal_spec=args.ideal, lattice=args.lattice, subset_cap=args.subset_cap
        )
    if args.command == "verify":
        return app.cmd_verify(args.type, args.rank_max, output=args.output)
    return app.cmd_tables(args.type, args.rank, ideal_spec=args.ideal, layout=args.table)


def main(argv: Sequence[str] | None = None) -> int:
    install_global_exception_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    settings = load_settings().with_overrides(
        work_budget=args.budget,
        workers=args.workers,
        cross_check=False if args.no_cross_check else None,
        count_cache=True if args.cache or args.clear_cache else None,
    )

    # Import tardif: l'analyse des arguments reste rapide (pas de numpy/sympy pour --help).
    from app import QuasiApp

    app = QuasiApp(settings, show_timings=args.timings, clear_cache=args.clear_cache)
    try:
        return run_command(app, args)
    except MismatchError as exc:
        print(f"Désaccord: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except CapacityError as exc:
        print(f"Budget dépassé: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (IdealSpecError, RankRangeError, UnsupportedTypeError) as exc:
        print(f"Argument invalide: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, DispatchError, ParityError, PeriodExhaustedError) as exc:
        log_warning(f"main {args.command} echec: {exc}")
        print(f"Erreur: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
