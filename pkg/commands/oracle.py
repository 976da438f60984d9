# commands/oracle.py
"""
Oracle Commands

Verbs:
1. enumerate, list the bounded module universe
2. sandwich, compare the fixpoint closure with the descriptor predicate
3. demo-not-wide, the projection whose kernel leaves I_k
"""

from commands import add_bounds_arguments, bounds_from, emit, read_expressions, register, say
from services.export import matrix_to_json, module_to_json, report_to_json, universe_frame
from services.oracle import demonstrate_not_wide, enumerate_modules, sandwich_check, sandwich_sweep
from services.subcat import classification_line


def _enumerate_arguments(parser):
    add_bounds_arguments(parser)
    parser.add_argument("--json", action="store_true", help="print JSON instead of a table")


@register("enumerate", "list the modules of a bounded universe", _enumerate_arguments)
def enumerate_universe(args) -> int:
    b = bounds_from(args)
    modules = enumerate_modules(b)
    if args.json:
        emit([module_to_json(X) for X in modules])
        return 0
    say(args, f"{len(modules)} modules, primes {list(b.primes)}, rank <= {b.max_rank}, "
              f"length <= {b.max_length_per_prime}")
    print(universe_frame(modules, b.primes).to_string(index=False))
    return 0


def _sandwich_arguments(parser):
    parser.add_argument("--gen", nargs="*", default=[], help="generator expressions")
    parser.add_argument("--sweep", type=int, metavar="N",
                        help="check every generator multiset of size <= N instead")
    add_bounds_arguments(parser)


@register("sandwich", "check the closure descriptor against the fixpoint closure", _sandwich_arguments)
def sandwich(args) -> int:
    b = bounds_from(args)
    if args.sweep is not None:
        failures = sandwich_sweep(b, args.sweep)
        say(args, f"sweep of generator sets of size <= {args.sweep}: "
                  f"{'PASS' if not failures else f'FAIL ({len(failures)})'}")
        emit([report_to_json(report) for report in failures])
        return 0 if not failures else 1
    report = sandwich_check(read_expressions(args.gen), b)
    say(args, f"{report.verdict}: {classification_line(report.descriptor)}, "
              f"{report.fixpoint_size} of {report.universe_size} modules")
    emit(report_to_json(report))
    return 0 if report.passed else 1


def _demo_arguments(parser):
    parser.add_argument("k", type=int, help="rank k >= 2 of the free module")


@register("demo-not-wide", "a morphism in I_k whose kernel is not in I_k", _demo_arguments)
def demo_not_wide(args) -> int:
    demo = demonstrate_not_wide(args.k)
    say(args, f"Z^{args.k} -> Z^{args.k} lies in I_{args.k}; "
              f"its kernel {demo.kernel} does not")
    emit({
        "morphism": matrix_to_json(demo.morphism.matrix),
        "kernel": module_to_json(demo.kernel),
        "descriptor": classification_line(demo.descriptor),
    })
    return 0
