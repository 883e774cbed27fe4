"""
mabisim command line.

PURPOSE:
- decide     – weak (or naive weak) bisimilarity of two automata, or of two states of one.
- normalize  – eliminate every vanishing state; prints the normal form and its report.
- to-pa      – the chi-mapped probabilistic automaton.
- compose    – interleaving parallel composition of two Markov automata.
- info       – model summary; `--convex-sets` lists the generators of S(s,α).
- dot        – GraphViz export, optionally clustered by the weak bisimulation partition.
- states     – tangible / trivially-vanishing / nn-vanishing classification per state.
- oracle     – (hidden) brute-force naive partition for small automata.

CONTEXT:
- stdout carries verdicts, reports and `.ma` text; logs and diagnostics go to stderr.
- Exit codes: 0 bisimilar / success, 1 not bisimilar, 2 error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional, Sequence

import structlog
from jsonschema import ValidationError

from src.config import EngineSettings, load_settings
from src.errors import MaBisimError
from src.logging_setup import configure_logging
from src.model_impl.chi_mapping import as_pa, parallel_compose
from src.model_impl.normal_form import dist_equiv_on_normal_form
from src.model_impl.oracle import coarsest_naive_partition_bruteforce
from src.model_impl.refinement import refine_partition, vanishing_kind
from src.model_impl.weak_reach import generator_set
from src.model_interface.automaton import MarkovAutomaton, ProbAutomaton
from src.model_interface.types import ChiMode, Semantics
from src.pipeline import run_decide, run_normalize
from src.report_io import emit_report, error_to_string
from src.tools.dot_export import export_dot
from src.tools.ma_parser import format_distribution, load_ma, parse_distribution, print_ma

log = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_DIFFERENT = 1
EXIT_ERROR = 2

_VISIBLE_COMMANDS = "{decide,normalize,to-pa,compose,info,dot,states}"


# -------------------- helpers -------------------- #

def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def _settings(args: argparse.Namespace) -> EngineSettings:
    return load_settings(chi_zero=getattr(args, "chi_zero", None))


def _mode(settings: EngineSettings) -> ChiMode:
    return ChiMode.from_flag(settings.chi_zero)


def _write(text: str) -> None:
    sys.stdout.write(text)


def _dist_text(p: ProbAutomaton, mu) -> str:
    return format_distribution({p.name(s): q for s, q in mu.items()})


# -------------------- commands -------------------- #

def cmd_decide(args: argparse.Namespace) -> int:
    settings = _settings(args)
    preprocess = False if args.no_preprocess else settings.preprocess
    if args.within is not None:
        if len(args.files) != 1:
            raise MaBisimError("--within takes exactly one model file")
        m1, m2 = load_ma(args.files[0]), None
        within = tuple(args.within)
    else:
        if len(args.files) != 2:
            raise MaBisimError("decide takes two model files (or one with --within)")
        m1, m2 = load_ma(args.files[0]), load_ma(args.files[1])
        within = None
    report, payload = run_decide(
        m1,
        m2,
        semantics=Semantics(args.semantics),
        mode=_mode(settings),
        preprocess=preprocess,
        within=within,
        limit=settings.sched_limit,
    )
    _write(emit_report(payload, "json" if args.json else "text"))
    return EXIT_OK if report.bisimilar else EXIT_DIFFERENT


def cmd_normalize(args: argparse.Namespace) -> int:
    settings = _settings(args)
    p_hat, report, payload = run_normalize(
        load_ma(args.file),
        mode=_mode(settings),
        preprocess=settings.preprocess,
        limit=settings.sched_limit,
    )
    if args.equiv is not None:
        mu, gamma = (parse_distribution(text) for text in args.equiv)
        same = dist_equiv_on_normal_form(p_hat, report, mu, gamma)
        _write("EQUIVALENT\n" if same else "NOT EQUIVALENT\n")
        return EXIT_OK if same else EXIT_DIFFERENT
    if args.json:
        _write(emit_report(payload, "json"))
    else:
        _write(print_ma(p_hat))
        _write("".join(f"# {line}\n" for line in emit_report(payload, "text").splitlines()))
    return EXIT_OK


def cmd_to_pa(args: argparse.Namespace) -> int:
    settings = _settings(args)
    _write(print_ma(as_pa(load_ma(args.file), _mode(settings))))
    return EXIT_OK


def cmd_compose(args: argparse.Namespace) -> int:
    _write(print_ma(parallel_compose(load_ma(args.left), load_ma(args.right))))
    return EXIT_OK


def _info_lines(m: MarkovAutomaton, p: ProbAutomaton, settings: EngineSettings, convex_sets: bool) -> List[str]:
    kind = "prob_automaton" if isinstance(m, ProbAutomaton) else "markov_automaton"
    lines = [
        f"kind: {kind}",
        f"states: {m.size}",
        f"initial: {m.name(m.initial)}",
        f"probabilistic transitions: {len(m.pt)}",
        f"markovian transitions: {len(m.mt)}",
        "actions: " + " ".join(str(a) for a in p.action_alphabet),
    ]
    if not convex_sets:
        return lines
    for s in range(p.size):
        for alpha in p.action_alphabet:
            gens = generator_set(p, s, alpha, settings.sched_limit)
            if not gens:
                continue
            body = " | ".join(_dist_text(p, mu) for mu in gens)
            lines.append(f"S({p.name(s)}, {alpha}) = {{ {body} }}")
    return lines


def cmd_info(args: argparse.Namespace) -> int:
    settings = _settings(args)
    m = load_ma(args.file)
    p = as_pa(m, _mode(settings))
    _write("\n".join(_info_lines(m, p, settings, args.convex_sets)) + "\n")
    return EXIT_OK


def cmd_dot(args: argparse.Namespace) -> int:
    settings = _settings(args)
    m = load_ma(args.file)
    if not args.partition:
        _write(export_dot(m))
        return EXIT_OK
    p = as_pa(m, _mode(settings))
    outcome = refine_partition(p, Semantics.WEAK, preprocess=False, limit=settings.sched_limit)
    _write(export_dot(outcome.automaton, outcome.partition))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    settings = load_settings()
    p = as_pa(load_ma(args.file), _mode(settings))
    part = coarsest_naive_partition_bruteforce(p, settings.oracle_bound, settings.sched_limit)
    for block in part.named(p.states):
        _write("{" + ", ".join(block) + "}\n")
    return EXIT_OK


def cmd_states(args: argparse.Namespace) -> int:
    """Per-state classification after weak refinement (tangible / vanishing kind)."""
    settings = _settings(args)
    p = as_pa(load_ma(args.file), _mode(settings))
    outcome = refine_partition(p, Semantics.WEAK, preprocess=False, limit=settings.sched_limit)
    for s in range(p.size):
        kind = vanishing_kind(outcome.automaton, s, outcome.state)
        line = f"{p.name(s)}: {kind}"
        nu = outcome.state.vanishing.get(s)
        if nu is not None:
            line += f" -> {_dist_text(p, nu)}"
        _write(line + "\n")
    return EXIT_OK


# -------------------- parser -------------------- #

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mabisim",
        description="Weak bisimilarity and normal forms of Markov automata",
    )
    parser.add_argument("--log-level", default=None, help="log level (default: LOG_LEVEL or WARNING)")

    chi = argparse.ArgumentParser(add_help=False)
    chi.add_argument("--chi-zero", type=_on_off, default=None, metavar="on|off",
                     help="emit chi(0) on stable deadlocks (default: MABISIM_CHI_ZERO or on)")

    sub = parser.add_subparsers(dest="command", metavar=_VISIBLE_COMMANDS, required=True)

    p = sub.add_parser("decide", parents=[chi], help="decide weak or naive weak bisimilarity")
    p.add_argument("files", nargs="+", metavar="A.ma [B.ma]")
    p.add_argument("--semantics", choices=[s.value for s in Semantics], default=Semantics.WEAK.value)
    p.add_argument("--no-preprocess", action="store_true", help="skip trivially-vanishing elimination")
    p.add_argument("--within", nargs=2, metavar=("S", "T"), help="compare two states of one file")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.set_defaults(handler=cmd_decide)

    p = sub.add_parser("normalize", parents=[chi], help="eliminate all vanishing states")
    p.add_argument("file", metavar="A.ma")
    p.add_argument("--json", action="store_true", help="print the JSON report instead of the model")
    p.add_argument("--equiv", nargs=2, metavar=("MU", "GAMMA"),
                   help="decide two distributions (e.g. '1/2 s, 1/2 t') on the normal form")
    p.set_defaults(handler=cmd_normalize)

    p = sub.add_parser("to-pa", parents=[chi], help="print the chi-mapped probabilistic automaton")
    p.add_argument("file", metavar="A.ma")
    p.set_defaults(handler=cmd_to_pa)

    p = sub.add_parser("compose", help="interleaving parallel composition")
    p.add_argument("left", metavar="A.ma")
    p.add_argument("right", metavar="B.ma")
    p.set_defaults(handler=cmd_compose)

    p = sub.add_parser("info", parents=[chi], help="model summary")
    p.add_argument("file", metavar="A.ma")
    p.add_argument("--convex-sets", action="store_true", help="list the generators of every S(s, a)")
    p.set_defaults(handler=cmd_info)

    p = sub.add_parser("dot", parents=[chi], help="GraphViz export")
    p.add_argument("file", metavar="A.ma")
    p.add_argument("--partition", action="store_true", help="cluster states by weak bisimulation class")
    p.set_defaults(handler=cmd_dot)

    p = sub.add_parser("states", parents=[chi], help="tangible / vanishing classification")
    p.add_argument("file", metavar="A.ma")
    p.set_defaults(handler=cmd_states)

    p = sub.add_parser("oracle")
    p.add_argument("kind", choices=["naive"])
    p.add_argument("file", metavar="A.ma")
    p.set_defaults(handler=cmd_oracle)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    t0 = time.time()
    log.info("command.start", command=args.command)
    try:
        code = args.handler(args)
    except (MaBisimError, OSError, ValidationError) as e:
        msg = error_to_string(e)
        log.error("command.error", command=args.command, error=msg)
        sys.stderr.write(f"mabisim {args.command}: {msg}\n")
        return EXIT_ERROR
    log.info("command.done", command=args.command, exit_code=code,
             latency_ms=int((time.time() - t0) * 1000))
    return code


if __name__ == "__main__":
    sys.exit(main())
