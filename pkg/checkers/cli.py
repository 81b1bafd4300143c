#!/usr/bin/env python3
# Copyright 2024 The checkers-workbench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Run all tests with:
#  python3 -m unittest discover -s . -p '*_test.py' -v
#
# Run the bundled corpus with:
#  checkers corpus -v detailed

import argparse
import contextlib
import json
import logging
import random
import sys
import traceback

from checkers import codec
from checkers import config as configs
from checkers import corpus
from checkers import interpretation
from checkers import multitype
from checkers import preorders
from checkers import reduction
from checkers import repainting
from checkers import report
from checkers import runner
from checkers import summary
from checkers import syntax
from checkers import term as terms
from checkers import verdict
from checkers import whitening
from checkers.interpretation import Typechecker
from checkers.whitening import Pair, Polarity

VERSION = '0.3.0'
EXITCODE_SUCCESS = 0
EXITCODE_FAILURE = 1
EXITCODE_FLAG_ERROR = 2
EXITCODE_USER_ABORT = 4
EXITCODE_INTERNAL = 70

DEFAULT_LOG_LEVEL = 100

# Set this to True to get a backtrace for debugging
DEBUGME = False

LOG_LEVELS = {"none": None, "info": logging.INFO, "debug": logging.DEBUG}
DEFAULT_LOG_LEVEL_NAME = "none"

VERBOSITY_LEVELS = {"quiet": summary.Detail.NONE, "summary": summary.Detail.BRIEF,
                    "detailed": summary.Detail.FULL}
DEFAULT_VERBOSITY_LEVEL = "summary"

STRATEGIES = ("head", "full", "leftmost", "random")

INPUT_ERRORS = (syntax.ParseError, configs.ConfigError, corpus.CorpusParseError,
                codec.DecodeError, preorders.PreconditionFailed, interpretation.Diverged,
                multitype.UncoloredTerm, OSError)
INTERNAL_ERRORS = (repainting.RepaintError, repainting.WitnessMismatch, whitening.Mismatch,
                   multitype.TypingError, reduction.NotARedex)


def main(argv=None):
  args, usage = parse_cli(argv)
  if not args:
    sys.exit(EXITCODE_FLAG_ERROR)

  if args.version:
    print("checkers version {}".format(VERSION))
    sys.exit(EXITCODE_SUCCESS)

  log_level = LOG_LEVELS[args.logging] or DEFAULT_LOG_LEVEL
  logging.basicConfig(level=log_level)
  logging.info("argv: {}".format(sys.argv if argv is None else argv))

  try:
    config = configs.load_config(args.config, overrides={
        'fuel': args.fuel,
        'depth': args.depth,
        'bound': args.bound,
        'context_size': args.context_size,
        'seed': args.seed,
    })
    status, result = args.command(args, config)
    if args.json and result is not None:
      with smart_open(args.json) as output:
        output.write(result if isinstance(result, str)
                     else json.dumps(codec.encode(result), sort_keys=True,
                                     indent=2, ensure_ascii=False) + '\n')
  except KeyboardInterrupt:
    print('\nkeyboard interrupt; aborting')
    sys.exit(EXITCODE_USER_ABORT)
  except INPUT_ERRORS as e:
    logging.error("input error: {}".format(repr(e)))
    print("\nERROR: could not run {} because {}\n".format(args.name, getattr(e, 'msg', e)))
    if DEBUGME:
      traceback.print_exc(file=sys.stdout)
    else:
      print(usage)
    sys.exit(EXITCODE_FAILURE)
  except INTERNAL_ERRORS as e:
    logging.critical("internal invariant broken: {}".format(repr(e)))
    print("\nINTERNAL ERROR: {} broke an invariant: {}\n".format(args.name, e))
    if DEBUGME:
      traceback.print_exc(file=sys.stdout)
    sys.exit(EXITCODE_INTERNAL)

  sys.exit(status)


## Subcommands
#
# Each returns (exit status, value for --json).

def cmd_reduce(args, config):
  t = syntax.parse_term(args.term)
  strategy = 'leftmost' if args.strategy == 'full' else args.strategy
  if strategy == 'head':
    result = reduction.evaluate_head(t, config.fuel, detect_cycles=config.detect_cycles,
                                     keep_trace=args.trace)
    if args.trace:
      for idx, step in enumerate(result.trace):
        print('{:4d} {:<18} {:<12} {}'.format(idx, step.kind.value,
                                              reduction.format_path(step.path),
                                              syntax.print_term(step.target, args.unicode)))
    print('{}: {}'.format(result.outcome.value, syntax.print_term(result.term, args.unicode)))
    print('interactions: {}  silent: {}'.format(result.interactions, result.silents))
    if result.diverged():
      print('head term repeats with period {}'.format(result.cycle))
    value = {
        'strategy': 'head',
        'result': result,
        'steps': [{'kind': s.kind.value, 'path': reduction.format_path(s.path),
                   'term': syntax.print_term(s.target, args.unicode)} for s in result.trace],
    }
    return EXITCODE_SUCCESS, value

  result = reduction.normalize(t, strategy, config.fuel, random.Random(config.seed))
  print('{}: {}'.format('normal' if result.normal else 'fuel-exhausted',
                        syntax.print_term(result.term, args.unicode)))
  print('steps: {}  interactions: {}'.format(result.steps, result.interactions))
  return EXITCODE_SUCCESS, {'strategy': strategy, 'result': result}


def cmd_type(args, config):
  t = syntax.parse_term(args.term)
  if terms.is_plain(t):
    t = terms.paint(terms.Color.BLACK, t)
  if args.typing:
    typing = syntax.parse_typing(args.typing)
    checker = Typechecker(config.fuel, config.detect_cycles)
    d = checker.min_derivation(t, typing.env, typing.type)
    if d is None:
      print('not typable' + (' within fuel' if checker.inconclusive else ''))
      return EXITCODE_FAILURE, {'typing': typing, 'min_index': None,
                                'inconclusive': checker.inconclusive}
    print('least index: {}'.format(d.index))
    if args.derivations:
      print(syntax.print_derivation(d, args.unicode))
    return (EXITCODE_SUCCESS if d.index == typing.index else EXITCODE_FAILURE,
            {'typing': typing, 'min_index': d.index, 'derivation': d})

  found = interpretation.interpret(t, config.bound, config.fuel)
  print('head normal form after {} interaction steps'.format(found.evaluation.interactions))
  for typing, d in found.typings:
    print(syntax.print_typing(typing, args.unicode))
    if args.derivations:
      print(syntax.print_derivation(d, args.unicode))
  if found.truncated:
    print('(truncated at {} typings)'.format(config.bound.limit))
  return EXITCODE_SUCCESS, {'typings': [typing for typing, _ in found.typings],
                            'truncated': found.truncated}


def _whitenable(src):
  """Parses a typing (as an env/type pair), a linear type, a multi type or an env."""
  for parse in (syntax.parse_typing, syntax.parse_type, syntax.parse_multitype, syntax.parse_env):
    try:
      found = parse(src)
    except syntax.ParseError:
      continue
    if isinstance(found, multitype.Typing):
      return Pair(found.env, found.type)
    return found
  return syntax.parse_type(src)


def cmd_whiten(args, config):
  lhs, rhs = _whitenable(args.lhs), _whitenable(args.rhs)
  w = whitening.decide_whitening(Polarity(args.polarity), lhs, rhs)
  if w is None:
    print('not related at polarity {}'.format(args.polarity))
    return EXITCODE_FAILURE, {'related': False}
  print('related with {} whitening(s)'.format(w.count))
  return EXITCODE_SUCCESS, {'related': True, 'count': w.count, 'witness': w}


def _print_verdict(name, found):
  print('{}: {}{}'.format(name, found.label(),
                          ' ({})'.format(found.reason) if found.reason else ''))
  if isinstance(found.witness, preorders.Separation):
    sep = found.witness
    print('  context {}  counts {} / {}'.format(
        syntax.print_context(sep.context), sep.lhs_count,
        'diverges' if sep.rhs_count is None else sep.rhs_count))


def cmd_compare(args, config):
  t, u = syntax.parse_term(args.lhs), syntax.parse_term(args.rhs)
  relations = preorders.RELATIONS if args.rel == 'all' else (args.rel,)
  if args.equiv:
    found = {rel: preorders.equivalent(rel, t, u, config) for rel in relations}
    disagreements = [(a, b) for a in found for b in found
                     if a < b and verdict.contradicts(found[a], found[b])]
  else:
    check = preorders.crosscheck_main_theorem(t, u, config, relations)
    found, disagreements = check.verdicts, check.disagreements()
  for rel in relations:
    _print_verdict(rel, found[rel])
  for a, b in disagreements:
    print('DISAGREEMENT: {} vs {}'.format(a, b))
  status = EXITCODE_INTERNAL if disagreements else EXITCODE_SUCCESS
  return status, {'verdicts': found, 'disagreements': disagreements}


def cmd_separate(args, config):
  t, u = syntax.parse_term(args.lhs), syntax.parse_term(args.rhs)
  try:
    found = preorders.bohm_out_separator(t, u, config.depth, config.fuel)
  except preorders.PreconditionFailed as e:
    logging.info('falling back to context search: {}'.format(e.msg))
    searched = preorders.interaction_improvement_check(t, u, config.depth, config.fuel,
                                                       config.context_size, config.max_contexts)
    if not searched.fails():
      _print_verdict(preorders.CTX_IMP, searched)
      return EXITCODE_FAILURE, {'separated': False, 'verdict': searched}
    found = searched.witness
  print(syntax.print_context(found.context, args.unicode))
  print('interactions: {} / {}'.format(
      found.lhs_count, 'diverges' if found.rhs_count is None else found.rhs_count))
  return EXITCODE_SUCCESS, {'separated': True, 'separation': found}


def cmd_corpus(args, config):
  files = args.files or [corpus.DEFAULT_CORPUS]
  suites = corpus.suites_from(files, args.suites, args.cases)
  if not suites:
    return EXITCODE_SUCCESS, None
  manager = corpus.Manager(suites)

  verbosity = VERBOSITY_LEVELS[args.verbosity]
  quiet = verbosity == summary.Detail.NONE
  summarizer = summary.SummaryVisitor(verbosity, not args.suppress_failures,
                                      progress_out=sys.stderr, unicode=args.unicode)
  visitor = corpus.MultiVisitor(runner.Visitor(config, args.fail_fast), summarizer)
  success = manager.accept(visitor)
  if not quiet or not success:
    print()
    print("Corpus passed" if success else "Corpus failed")

  output = manager.accept(report.Visitor(config, VERSION, args.unicode)) if args.json else None
  return (EXITCODE_SUCCESS if success else EXITCODE_FAILURE), output


FORMATS = {
    'term': (syntax.parse_term, syntax.print_term),
    'context': (syntax.parse_context, syntax.print_context),
    'type': (syntax.parse_type, syntax.print_type),
    'multitype': (syntax.parse_multitype, syntax.print_multitype),
    'env': (syntax.parse_env, syntax.print_env),
    'typing': (syntax.parse_typing, syntax.print_typing),
}


def cmd_fmt(args, config):
  parse, show = FORMATS[args.kind]
  value = parse(args.source)
  text = show(value, args.unicode)
  print(text)
  return EXITCODE_SUCCESS, {'kind': args.kind, 'text': text, 'value': value}


## Flags

def _common_flags():
  parser = argparse.ArgumentParser(add_help=False)
  parser.add_argument(
      "-l", "--logging",
      help='show logs at the specified level (default: "{}")'.format(DEFAULT_LOG_LEVEL_NAME),
      choices=list(LOG_LEVELS.keys()),
      default=DEFAULT_LOG_LEVEL_NAME)
  parser.add_argument(
      "--json", metavar="FILE", help="JSON output file (use `-` for stdout)")
  parser.add_argument(
      "--config", metavar="FILE", help="YAML file with a top-level `config:` mapping")
  parser.add_argument("--fuel", type=int, help="reduction steps per evaluation")
  parser.add_argument("--depth", type=int, help="Böhm tree comparison depth")
  parser.add_argument(
      "--bound", metavar="w=N,d=N",
      help="type bound: width, depth, result_depth, limit, atoms=X:Y")
  parser.add_argument("--context-size", type=int, help="size bound of searched contexts")
  parser.add_argument("--seed", type=int, help="seed for randomized strategies")
  parser.add_argument("--unicode", action="store_true", help="print λ, • and ∘ glyphs")
  return parser


def parse_cli(argv=None):
  epilog = """Terms use `\\b x. t` / `\\w x. t` for black and white abstractions and
`t @b u` / `t @w u` for applications; a plain `\\x. t` or `t u` is uncolored.
Relations: bohm-eta, pwc, ctx-imp.
  """

  common = _common_flags()
  parser = argparse.ArgumentParser(
      prog="checkers",
      description="A workbench for the checkers calculus and its improvement preorders",
      epilog=epilog,
      formatter_class=argparse.RawDescriptionHelpFormatter)
  parser.add_argument("--version", help="print version number", action="store_true")
  commands = parser.add_subparsers(metavar="COMMAND")

  cmd = commands.add_parser("reduce", parents=[common], help="evaluate a term")
  cmd.add_argument("term", metavar="TERM")
  cmd.add_argument(
      "--strategy", choices=STRATEGIES, default="head",
      help='head reduction, or full normalization ("full" is leftmost)')
  cmd.add_argument("--trace", action="store_true", help="print every head step")
  cmd.set_defaults(command=cmd_reduce, name="reduce")

  cmd = commands.add_parser("type", parents=[common], help="typings of a term")
  cmd.add_argument("term", metavar="TERM")
  cmd.add_argument("--typing", metavar="ENV |- L @ K",
                   help="find the least index of this judgement instead")
  cmd.add_argument("--derivations", action="store_true", help="print derivation trees")
  cmd.set_defaults(command=cmd_type, name="type")

  cmd = commands.add_parser("whiten", parents=[common], help="decide a whitening relation")
  cmd.add_argument("lhs", metavar="LHS")
  cmd.add_argument("rhs", metavar="RHS")
  cmd.add_argument("--polarity", choices=[p.value for p in Polarity], default="+")
  cmd.set_defaults(command=cmd_whiten, name="whiten")

  cmd = commands.add_parser("compare", parents=[common], help="check improvement preorders")
  cmd.add_argument("lhs", metavar="LHS")
  cmd.add_argument("rhs", metavar="RHS")
  cmd.add_argument("--rel", choices=list(preorders.RELATIONS) + ["all"], default="all")
  cmd.add_argument("--equiv", action="store_true", help="check the induced equivalence")
  cmd.set_defaults(command=cmd_compare, name="compare")

  cmd = commands.add_parser("separate", parents=[common],
                            help="build a context where RHS interacts more than LHS")
  cmd.add_argument("lhs", metavar="LHS")
  cmd.add_argument("rhs", metavar="RHS")
  cmd.set_defaults(command=cmd_separate, name="separate")

  cmd = commands.add_parser("corpus", parents=[common], help="run a corpus of term pairs")
  cmd.add_argument("files", metavar="CORPUS", nargs="*",
                   help="corpus YAML files (default: the bundled corpus)")
  cmd.add_argument("--suites", metavar="SUITE_FILTER", help="regex filtering suites to run")
  cmd.add_argument("--cases", metavar="CASE_FILTER", help="regex filtering entries to run")
  cmd.add_argument(
      "--fail-fast", action="store_true",
      help="stop as soon as any entry fails, preempting the remaining entries")
  cmd.add_argument(
      "-v", "--verbosity",
      help='how much output to show for passing entries (default: "{}")'.format(
          DEFAULT_VERBOSITY_LEVEL),
      choices=list(VERBOSITY_LEVELS.keys()),
      default=DEFAULT_VERBOSITY_LEVEL)
  cmd.add_argument(
      "-f", "--suppress_failures", action="store_true",
      help="suppress showing details for failing entries")
  cmd.set_defaults(command=cmd_corpus, name="corpus")

  cmd = commands.add_parser("fmt", parents=[common], help="reformat a term, context or type")
  cmd.add_argument("source", metavar="SOURCE")
  cmd.add_argument("--kind", choices=list(FORMATS), default="term")
  cmd.set_defaults(command=cmd_fmt, name="fmt")

  argv = sys.argv[1:] if argv is None else argv
  if not argv:
    parser.print_help()
    return None, None
  args = parser.parse_args(argv)
  if not args.version and not hasattr(args, 'command'):
    parser.print_usage()
    return None, None
  return args, parser.format_usage()


# from https://stackoverflow.com/a/17603000
@contextlib.contextmanager
def smart_open(filename=None):
  if filename and filename != "-":
    fh = open(filename, "w")
  else:
    fh = sys.stdout

  try:
    yield fh
  finally:
    if fh is not sys.stdout:
      fh.close()


if __name__ == "__main__":
  main()
