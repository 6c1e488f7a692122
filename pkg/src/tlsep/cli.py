"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .automata import dera_to_symbolic_dfa
from .bench import model_paths, run_bench
from .consistency import check_consistency
from .io import ModelParseError, bundled_models, emit_dera, load_dera
from .learner import IterationCapExceeded, LearnOptions, LearningError, tlsep
from .regions import build_regl_automaton
from .teacher import DeraTeacher, InclusionMode
from .timed import Alphabet, GuardError, format_region_word, format_timed_word, parse_region_word

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _model(spec: str, K: int | None = None):
    """A path, or the name of a bundled model."""
    path = Path(spec)
    if not path.exists():
        bundled = bundled_models()
        if spec not in bundled:
            raise InputError(f"no such model file or bundled model: {spec}")
        path = bundled[spec]
    A = load_dera(path)
    if K is not None:
        try:
            A = A.with_K(K)
        except (GuardError, ValueError) as exc:
            raise InputError(str(exc)) from exc
    return A


def _options(args) -> LearnOptions:
    return LearnOptions(
        extract=args.extract,
        reuse_targets=args.reuse_targets,
        strong_complete_check=args.strong_complete_check,
        max_iter=args.max_iter,
    )


def cmd_learn(args) -> int:
    A = _model(args.reference, args.K)
    opts = _options(args)
    if args.verbose:
        opts.on_record = lambda rec: print(json.dumps(rec, ensure_ascii=False), file=sys.stderr)
    try:
        result = tlsep(DeraTeacher(A), opts)
    except IterationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(exc.dump, file=sys.stderr)
        return EXIT_FAIL
    except LearningError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    equivalent = DeraTeacher(A).equivalence(result.dfa) is None
    mq, iq, eq = result.stats.as_tuple()
    doc = emit_dera(result.dera, comment=f"learned from {args.reference}")
    if args.output:
        Path(args.output).write_text(doc, encoding="utf-8")
    else:
        sys.stdout.write(doc)
    if args.dot:
        Path(args.dot).write_text(result.dera.to_dot("Learned"), encoding="utf-8")
    print(
        f"MQ={mq} IQ={iq} EQ={eq} states={result.n_states} iterations={result.iterations} "
        f"equivalent={'yes' if equivalent else 'no'}",
        file=sys.stderr,
    )
    return EXIT_OK if equivalent else EXIT_FAIL


def cmd_bench(args) -> int:
    if args.models_dir:
        directory = Path(args.models_dir)
        if not directory.is_dir():
            raise InputError(f"not a directory: {directory}")
        paths = model_paths(directory)
    else:
        paths = list(bundled_models().values())
    report = run_bench(paths, _options(args), parallel=args.parallel)
    if args.json:
        print(json.dumps(report.as_dicts(), ensure_ascii=False, indent=1))
    else:
        sys.stdout.write(report.format())
    return EXIT_OK if report.ok else EXIT_FAIL


def _alphabet(args) -> Alphabet:
    if args.reference:
        return _model(args.reference, args.K).alphabet
    if not args.letters or args.K is None:
        raise InputError("give --letters and --K, or a reference model")
    return Alphabet(tuple(args.letters), args.K)


def _word(text: str, alphabet: Alphabet):
    try:
        return parse_region_word(text, alphabet)
    except (GuardError, ValueError) as exc:
        raise InputError(f"bad region word: {exc}") from exc


def cmd_check_consistency(args) -> int:
    alphabet = _alphabet(args)
    rw = _word(args.word, alphabet)
    verdict = check_consistency(rw, alphabet)
    if verdict:
        print("consistent")
        print(f"witness {format_timed_word(verdict.witness)}")
    else:
        print("inconsistent")
        for con in verdict.certificate:
            print(f"  {con}")
    return EXIT_OK


def cmd_membership(args) -> int:
    A = _model(args.reference, args.K)
    rw = _word(args.word, A.alphabet)
    verdict = check_consistency(rw, A.alphabet)
    if not verdict:
        print("inconsistent word; membership is not defined", file=sys.stderr)
        return EXIT_INPUT
    print("yes" if DeraTeacher(A).membership(rw) else "no")
    return EXIT_OK


def cmd_inclusion(args) -> int:
    A = _model(args.reference, args.K)
    C = _model(args.candidate, args.K)
    if C.alphabet != A.alphabet:
        raise InputError("candidate and reference use different alphabets or K")
    teacher = DeraTeacher(A)
    modes = list(InclusionMode) if args.mode == "all" else [InclusionMode(args.mode)]
    status = EXIT_OK
    for mode in modes:
        cex = teacher.inclusion(dera_to_symbolic_dfa(C), mode)
        if cex is None:
            print(f"{mode.value}: yes")
        else:
            status = EXIT_FAIL
            witness = check_consistency(cex, A.alphabet).witness
            print(f"{mode.value}: no, counterexample {format_region_word(cex, A.alphabet)}"
                  f" e.g. {format_timed_word(witness)}")
    return status


def cmd_regl(args) -> int:
    alphabet = _alphabet(args)
    regl = build_regl_automaton(alphabet)
    if args.stats:
        print(f"states={len(regl.states)} transitions={regl.n_transitions()} symbols={len(alphabet.symbols)}")
    elif args.format == "dot":
        sys.stdout.write(regl.to_dot())
    else:
        sys.stdout.write(regl.to_text())
    return EXIT_OK


def cmd_dot(args) -> int:
    A = _model(args.model, args.K)
    sys.stdout.write(dera_to_symbolic_dfa(A).to_dot() if args.symbolic else A.to_dot())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tlsep", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def learning_flags(sp):
        sp.add_argument("--extract", choices=["greedy", "exact"], default="greedy")
        sp.add_argument("--reuse-targets", action="store_true", help="prefer already discovered sets")
        sp.add_argument("--strong-complete-check", action="store_true")
        sp.add_argument("--max-iter", type=int, default=200)

    sp = sub.add_parser("learn", help="learn a DERA from a reference model")
    sp.add_argument("reference", help="model file or bundled model name")
    sp.add_argument("--K", type=int)
    learning_flags(sp)
    sp.add_argument("--verbose", "-v", action="store_true", help="trace records on stderr")
    sp.add_argument("--output", "-o")
    sp.add_argument("--dot")
    sp.set_defaults(func=cmd_learn)

    sp = sub.add_parser("bench", help="learn every model of a directory (default: bundled)")
    sp.add_argument("models_dir", nargs="?")
    learning_flags(sp)
    sp.add_argument("--parallel", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bench)

    for name, func, help_ in (
        ("check-consistency", cmd_check_consistency, "decide consistency of a region word"),
        ("membership", cmd_membership, "membership of a region word in a model"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("word", help="e.g. '(a, x_a=0 & x_b=0)(b, x_a=1 & x_b=1)'")
        if name == "membership":
            sp.add_argument("reference")
        else:
            sp.add_argument("--reference")
            sp.add_argument("--letters", nargs="+")
        sp.add_argument("--K", type=int)
        sp.set_defaults(func=func)

    sp = sub.add_parser("inclusion", help="inclusion queries of a candidate against a reference")
    sp.add_argument("candidate")
    sp.add_argument("reference")
    sp.add_argument("--mode", choices=[m.value for m in InclusionMode] + ["all"], default="all")
    sp.add_argument("--K", type=int)
    sp.set_defaults(func=cmd_inclusion)

    sp = sub.add_parser("regl", help="print the recognizer of consistent region words")
    sp.add_argument("--letters", nargs="+")
    sp.add_argument("--K", type=int)
    sp.add_argument("--reference")
    sp.add_argument("--format", choices=["text", "dot"], default="text")
    sp.add_argument("--stats", action="store_true")
    sp.set_defaults(func=cmd_regl)

    sp = sub.add_parser("dot", help="export a model as DOT")
    sp.add_argument("model")
    sp.add_argument("--K", type=int)
    sp.add_argument("--symbolic", action="store_true", help="region-split DFA with sink")
    sp.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, ModelParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
