#!/usr/bin/env python3
"""Command-line workbench for Mackey and Green functors over finite groups.

Exit codes: 0 on success, 1 when a mathematical check fails, 2 for usage
errors and malformed input files.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import pandas as pd
from dotenv import load_dotenv

from . import __version__
from .exceptions import CertificateError, MackeyError, UsageError
from .models.certificates import CertificateFile
from .models.reports import DimensionComparison, ValidationReport
from .services.certificates import (
    axiom_certificate,
    bijection_certificate,
    cohomological_certificate,
    dimension_certificate,
    iso_certificate,
    verify_certificate,
)
from .services.convolution import (
    convolve,
    double_dual_iso,
    dress_monoidal_check,
    dress_monoidal_iso,
    internal_hom,
    star_dual,
    star_pairing_check,
)
from .services.finite_group import Group, all_subgroups
from .services.green import (
    GreenFunctor,
    burnside_green,
    burnside_ring_table,
    dress_green,
    end_of_homs,
    green_algebra,
    validate_algebra,
    validate_green,
)
from .services.gset import representatives
from .services.mackey import (
    MackeyFunctor,
    cohomological_check,
    dress,
    fixed_point_functor,
    regular_representation,
    search_isomorphism,
    trivial_representation,
    validate,
)
from .services.workspace import Workspace
from .utils.exact_linalg import format_fraction
from .utils.file_parser import dump_model, functor_to_model, green_to_model
from .utils.settings import get_log_level, order_bound

logger = logging.getLogger(__name__)

CHECKS = ["mackey", "green", "cohomological", "star-autonomy", "dress-monoidal", "centre-lemma"]


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="mackey", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log progress at INFO level.")
    parser.add_argument(
        "--bound",
        type=int,
        default=None,
        help="Largest group order accepted (overrides MACKEY_ORDER_BOUND).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("burnside", help="Burnside functor J and its ring table.")
    p.add_argument("--group", required=True, help="Group definition file.")
    p.add_argument("--algebra", action="store_true", help="Also build and check the Green algebra W_J.")
    p.add_argument("--out", help="Write J as a Green functor file.")

    p = sub.add_parser("fixpt", help="Fixed-point functor of a representation.")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--rep", help="Representation definition file.")
    source.add_argument("--regular", action="store_true", help="Regular representation of --group.")
    source.add_argument("--trivial", action="store_true", help="Trivial representation of --group.")
    p.add_argument("--group", help="Group file for --regular/--trivial.")
    p.add_argument("--out", help="Write the functor file.")

    for name, helptext in (("tensor", "Convolution product L * M."), ("hom", "Internal hom Hom(L, M).")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--lhs", required=True, help="Left functor file.")
        p.add_argument("--rhs", required=True, help="Right functor file.")
        p.add_argument("--out", help="Write the result functor file.")

    p = sub.add_parser("stardual", help="Star dual S(M).")
    p.add_argument("--functor", required=True)
    p.add_argument("--out")

    p = sub.add_parser("dress", help="Dress construction M_Y (or A_Y for a crossed monoid Y).")
    p.add_argument("--functor", required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--gset", help="G-set definition file.")
    target.add_argument("--crossed", help="Crossed G-monoid file (requires a Green functor).")
    p.add_argument("--out")

    p = sub.add_parser("greenalg", help="Green algebra W_A.")
    p.add_argument("--functor", help="Green functor file (defaults to J of --group).")
    p.add_argument("--group")

    p = sub.add_parser("check", help="Run a structural check and certify it.")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--functor", help="Functor (or Green functor) file.")
    p.add_argument("--lhs")
    p.add_argument("--rhs")
    p.add_argument("--group")
    p.add_argument("--out", help="Certificate file (default: <check>.cert.json).")

    p = sub.add_parser("iso", help="Search for an isomorphism between two functors.")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--out", help="Certificate file (default: iso.cert.json).")

    p = sub.add_parser("verify-certificate", help="Re-check a certificate file.")
    p.add_argument("certificate")

    return parser.parse_args(argv)


def configure_logging(verbose: bool) -> None:
    level = logging.INFO if verbose else getattr(logging, get_log_level(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


class Session:
    """One workspace per invocation; each file is loaded once under its path."""

    def __init__(self):
        self.workspace = Workspace()

    def _load(self, path: str) -> str:
        key = str(Path(path).resolve())
        if key not in self.workspace:
            self.workspace.load(path, name=key)
        return key

    def functor(self, path: Optional[str], flag: str = "--functor") -> MackeyFunctor:
        return self.workspace.functor(self._load(self._require(path, flag)))

    def green(self, path: Optional[str], flag: str = "--functor") -> GreenFunctor:
        return self.workspace.green(self._load(self._require(path, flag)))

    def group(self, path: Optional[str]) -> Group:
        return self.workspace.group(self._load(self._require(path, "--group")))

    def get(self, path: str, kind: str):
        return self.workspace.get(self._load(path), kind)

    @staticmethod
    def _require(path: Optional[str], flag: str) -> str:
        if not path:
            raise UsageError(f"{flag} is required")
        return path


# Rendering

def class_labels(group: Group) -> List[str]:
    n = all_subgroups(group).num_classes
    labels = [f"G/H{i}" for i in range(n)]
    labels[-1] = "G/e"
    labels[0] = "G/G"
    return labels


def levels_frame(functor: MackeyFunctor) -> pd.DataFrame:
    table = all_subgroups(functor.group)
    return pd.DataFrame({
        "class": class_labels(functor.group),
        "|H|": [len(table.rep(i)) for i in range(table.num_classes)],
        "H": [" ".join(str(x) for x in sorted(table.rep(i))) for i in range(table.num_classes)],
        "dim": list(functor.level_dims),
    })


def format_combination(coords: Sequence, labels: Sequence[str]) -> str:
    terms = []
    for c, label in zip(coords, labels):
        if c == 0:
            continue
        coef = "" if c == 1 else ("-" if c == -1 else format_fraction(c))
        terms.append(f"{coef}[{label}]")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def ring_frame(green: GreenFunctor) -> pd.DataFrame:
    labels = class_labels(green.group)
    table = burnside_ring_table(green)
    names = [f"[{x}]" for x in labels]
    return pd.DataFrame(
        [[format_combination(entry, labels) for entry in row] for row in table],
        index=names, columns=names,
    )


def report_frame(report: ValidationReport) -> pd.DataFrame:
    row = {"subject": report.subject, "passed": report.passed, "checked": report.checked}
    if report.failure is not None:
        row["diagram"] = report.failure.diagram
        row["detail"] = report.failure.detail
    return pd.DataFrame([row])


def comparisons_frame(comparisons: Sequence[DimensionComparison]) -> pd.DataFrame:
    return pd.DataFrame(
        [{"comparison": c.label, "left": c.left, "right": c.right, "equal": c.equal} for c in comparisons]
    )


def show(frame: pd.DataFrame, title: Optional[str] = None, index: bool = False) -> None:
    if title:
        print(title)
    print(frame.to_string(index=index))


def write_functor(functor: MackeyFunctor, out: Optional[str]) -> None:
    if out:
        dump_model(functor_to_model(functor), out)
        print(f"Wrote {out}")


def write_certificate(cert, out: Optional[str], default: str) -> None:
    path = out or default
    dump_model(CertificateFile(certificate=cert), path)
    print(f"Certificate written to {path}")


# Commands

def cmd_burnside(args: argparse.Namespace, session: Session) -> int:
    group = session.group(args.group)
    j = burnside_green(group)
    show(levels_frame(j.underlying), f"Burnside functor J({group.name})")
    show(ring_frame(j), "\nBurnside ring B(G) = J(G/G):", index=True)
    status = 0
    if args.algebra:
        algebra = green_algebra(j)
        report = validate_algebra(algebra)
        print(f"\nGreen algebra W_J: dim {algebra.dim}")
        show(report_frame(report))
        status = 0 if report.passed else 1
    if args.out:
        dump_model(green_to_model(j), args.out)
        print(f"Wrote {args.out}")
    return status


def cmd_fixpt(args: argparse.Namespace, session: Session) -> int:
    if args.rep:
        rep = session.get(args.rep, "representation")
    else:
        group = session.group(args.group)
        rep = regular_representation(group) if args.regular else trivial_representation(group)
    functor = fixed_point_functor(rep)
    show(levels_frame(functor), f"Fixed-point functor ({rep.dim}-dimensional representation)")
    write_functor(functor, args.out)
    return 0


def cmd_tensor(args: argparse.Namespace, session: Session) -> int:
    result = convolve(session.functor(args.lhs, "--lhs"), session.functor(args.rhs, "--rhs"))
    show(levels_frame(result), result.name)
    write_functor(result, args.out)
    return 0


def cmd_hom(args: argparse.Namespace, session: Session) -> int:
    result = internal_hom(session.functor(args.lhs, "--lhs"), session.functor(args.rhs, "--rhs"))
    show(levels_frame(result), result.name)
    write_functor(result, args.out)
    return 0


def cmd_stardual(args: argparse.Namespace, session: Session) -> int:
    result = star_dual(session.functor(args.functor))
    show(levels_frame(result), result.name)
    write_functor(result, args.out)
    return 0


def cmd_dress(args: argparse.Namespace, session: Session) -> int:
    if args.crossed:
        green = dress_green(session.green(args.functor), session.get(args.crossed, "crossed"))
        show(levels_frame(green.underlying), green.name)
        if args.out:
            dump_model(green_to_model(green), args.out)
            print(f"Wrote {args.out}")
        return 0
    result = dress(session.functor(args.functor), session.get(args.gset, "gset"))
    show(levels_frame(result), result.name)
    write_functor(result, args.out)
    return 0


def cmd_greenalg(args: argparse.Namespace, session: Session) -> int:
    green = session.green(args.functor) if args.functor else burnside_green(session.group(args.group))
    algebra = green_algebra(green)
    blocks = pd.DataFrame(
        [{"block": f"({x},{y})", "dim": algebra.block_dims[(x, y)]} for x, y in algebra.blocks]
    )
    show(blocks, f"Green algebra W({green.name}): dim {algebra.dim}")
    report = validate_algebra(algebra)
    show(report_frame(report))
    return 0 if report.passed else 1


def _check_axioms(args: argparse.Namespace, session: Session, green_check: bool) -> int:
    default = f"{args.check}.cert.json"
    if green_check:
        green = session.green(args.functor)
        report = validate_green(green)
        cert = axiom_certificate(report, f"green axioms of {green.name}", green=green)
    else:
        functor = session.functor(args.functor)
        report = validate(functor)
        cert = axiom_certificate(report, f"Mackey axioms of {functor.name}", functor=functor)
    show(report_frame(report))
    if not report.passed:
        return 1
    write_certificate(cert, args.out, default)
    return 0


def _check_cohomological(args: argparse.Namespace, session: Session) -> int:
    functor = session.functor(args.functor)
    report = cohomological_check(functor)
    show(pd.DataFrame([
        {"H": str(p.h), "K": str(p.k), "[H:K]": p.index, "passed": p.passed} for p in report.pairs
    ]), f"Cohomological check of {functor.name}")
    if not report.passed:
        first = report.failures()[0]
        print(f"FAILED at H={first.h}, K={first.k}")
        return 1
    write_certificate(cohomological_certificate(functor, report, f"{functor.name} is cohomological"),
                      args.out, "cohomological.cert.json")
    return 0


def _check_star_autonomy(args: argparse.Namespace, session: Session) -> int:
    third = session.functor(args.functor)
    first = session.functor(args.lhs, "--lhs") if args.lhs else third
    second = session.functor(args.rhs, "--rhs") if args.rhs else third
    comparison = star_pairing_check(first, second, third)
    show(comparisons_frame([comparison]), "Star-autonomy pairing")
    if not comparison.equal:
        return 1
    iso = iso_certificate(double_dual_iso(third), f"S(S({third.name})) = {third.name}")
    write_certificate(dimension_certificate([comparison], "star-autonomy", iso=iso),
                      args.out, "star-autonomy.cert.json")
    return 0


def _check_dress_monoidal(args: argparse.Namespace, session: Session) -> int:
    first = session.functor(args.lhs, "--lhs")
    second = session.functor(args.rhs, "--rhs")
    reps = representatives(first.group)
    labels = class_labels(first.group)
    comparisons = []
    for x, cx in enumerate(reps):
        for y, cy in enumerate(reps):
            report = dress_monoidal_check(first, second, cx, cy)
            comparisons.extend(
                c.model_copy(update={"label": f"X={labels[x]}, Y={labels[y]}, {c.label}"})
                for c in report.comparisons
            )
    show(comparisons_frame(comparisons), "Dress monoidality")
    if not all(c.equal for c in comparisons):
        return 1
    theta = dress_monoidal_iso(first, second, reps[-1], reps[-1])
    if theta is None:
        print("No isomorphism found at X = Y = G/e")
        return 1
    iso = iso_certificate(theta, "dress monoidal iso at X = Y = G/e")
    write_certificate(dimension_certificate(comparisons, "dress-monoidal", iso=iso),
                      args.out, "dress-monoidal.cert.json")
    return 0


def _check_centre_lemma(args: argparse.Namespace, session: Session) -> int:
    group = session.group(args.group)
    end = end_of_homs(group, bound=args.bound)
    print(f"End of homs over {group.name}: {end.gset.size} natural families, bijective with G_c")
    write_certificate(bijection_certificate(end.iso, f"end of homs over {group.name} = G_c"),
                      args.out, "centre-lemma.cert.json")
    return 0


def cmd_check(args: argparse.Namespace, session: Session) -> int:
    if args.check == "mackey":
        return _check_axioms(args, session, green_check=False)
    if args.check == "green":
        return _check_axioms(args, session, green_check=True)
    if args.check == "cohomological":
        return _check_cohomological(args, session)
    if args.check == "star-autonomy":
        return _check_star_autonomy(args, session)
    if args.check == "dress-monoidal":
        return _check_dress_monoidal(args, session)
    return _check_centre_lemma(args, session)


def cmd_iso(args: argparse.Namespace, session: Session) -> int:
    source = session.functor(args.source, "source")
    target = session.functor(args.target, "target")
    search = search_isomorphism(source, target)
    theta = search.morphism
    if theta is None:
        if search.ruled_out:
            print(f"No isomorphism {source.name} -> {target.name}: not isomorphic")
        else:
            print(f"No isomorphism {source.name} -> {target.name} found by search "
                  f"({search.attempts} candidates; the search is incomplete)")
        return 1
    print(f"Isomorphism {source.name} -> {target.name} found")
    write_certificate(iso_certificate(theta, f"{source.name} = {target.name}"), args.out, "iso.cert.json")
    return 0


def cmd_verify(args: argparse.Namespace, session: Session) -> int:
    report = verify_certificate(session.get(args.certificate, "certificate"))
    show(report_frame(report))
    return 0 if report.passed else 1


COMMANDS: Dict[str, Callable[[argparse.Namespace, Session], int]] = {
    "burnside": cmd_burnside,
    "fixpt": cmd_fixpt,
    "tensor": cmd_tensor,
    "hom": cmd_hom,
    "stardual": cmd_stardual,
    "dress": cmd_dress,
    "greenalg": cmd_greenalg,
    "check": cmd_check,
    "iso": cmd_iso,
    "verify-certificate": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    args = parse_args(argv)
    if args.bound is not None:
        if args.bound <= 0:
            print("--bound must be positive", file=sys.stderr)
            return 2
    configure_logging(args.verbose)

    try:
        with order_bound(args.bound):
            return COMMANDS[args.command](args, Session())
    except CertificateError as exc:
        print(f"Certificate failed: {exc}", file=sys.stderr)
        return 1
    except MackeyError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
