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

"""Bounded checks of the improvement preorders on terms.

Three procedures are expected to agree on every pair of plain terms t, u:

  bohm-eta  t is below u in the Böhm preorder up to η-reductions;
  pwc       every typing of t• has a whiter and cheaper typing of u•;
  ctx-imp   no context makes u• spend more interactions than t•.

Each returns a `Verdict`. A positive answer of `pwc` or `ctx-imp` only covers
the explored typings or contexts and is flagged as bounded.
"""

from dataclasses import dataclass
import itertools
import logging
from typing import Dict, Optional

from checkers import bohm
from checkers import interpretation
from checkers import reduction
from checkers import term as terms
from checkers import verdict
from checkers import whitening
from checkers.config import RunConfig
from checkers.interpretation import TypeBound
from checkers.multitype import Typing
from checkers.term import AppLeft, Color, Var, applicative_context, paint, plug
from checkers.whitening import Pair, Polarity

DEFAULT_DEPTH = 6
MAX_ARGUMENTS = 3
MAX_TERM_SIZE = 20000

BOHM_ETA = 'bohm-eta'
PWC = 'pwc'
CTX_IMP = 'ctx-imp'
RELATIONS = (BOHM_ETA, PWC, CTX_IMP)


@dataclass(frozen=True)
class PwcMatch:
  """`rhs` plus `delta` whitenings answers `lhs`: rhs.index + delta <= lhs.index."""
  lhs: Typing
  rhs: Typing
  delta: int
  witness: whitening.WhiteningWitness


@dataclass(frozen=True)
class Separation:
  """A context and the interaction counts it produces on both terms.

  `rhs_count` is None when the right-hand term provably diverges.
  """
  context: object
  lhs_count: int
  rhs_count: Optional[int]


@dataclass(frozen=True)
class EtaGap:
  trail: tuple
  path: tuple
  lhs: object
  rhs: object


def _black(t):
  return paint(Color.BLACK, terms.wash(t))


def _evaluate(t, fuel):
  return reduction.evaluate_head(t, fuel, detect_cycles=True, max_size=MAX_TERM_SIZE,
                                 keep_trace=False)


## Polarized whiter-cheaper improvement

def pwc_check(t, u, bound=TypeBound(), fuel=reduction.DEFAULT_FUEL):
  return pwc_check_colored(_black(t), _black(u), bound, fuel)


def pwc_check_colored(t, u, bound=TypeBound(), fuel=reduction.DEFAULT_FUEL):
  """PWC on checkers terms, over the typings of t within `bound`."""
  try:
    found = interpretation.interpret(t, bound, fuel)
  except interpretation.Diverged as e:
    if e.result.diverged():
      return verdict.holds({'matches': ()}, 'the left term has no typing')
    return verdict.unknown('fuel', {'term': t})
  checker = interpretation.Typechecker(fuel)
  matches = []
  for typing, d in found.typings:
    match = _match(checker, u, typing)
    if match is None:
      if checker.inconclusive:
        return verdict.unknown('fuel', {'typing': typing})
      logging.debug('pwc: no match for {}'.format(typing))
      return verdict.fails({'typing': typing, 'derivation': d},
                           'no whiter and cheaper typing of the right term')
    matches.append(match)
  return verdict.holds({'matches': tuple(matches), 'truncated': found.truncated}, bounded=True)


def _match(checker, u, typing) -> Optional[PwcMatch]:
  target = Pair(typing.env, typing.type)
  for variant, delta in whitening.whiter_variants(target, Polarity.POS):
    if delta > typing.index:
      break
    index = checker.min_index(u, variant.env, variant.type)
    if index is not None and index + delta <= typing.index:
      witness = whitening.decide_whitening(Polarity.POS, variant, target)
      return PwcMatch(typing, Typing(variant.env, variant.type, index), delta, witness)
  return None


## Interaction improvement

def _pool(avoid):
  free = Var(terms.fresh_name('w', avoid))
  substitutes = [bohm.I, bohm.K, bohm.OMEGA, bohm.tupler(2), bohm.tupler(1),
                 bohm.selector(2, 1), bohm.selector(2, 2)]
  return substitutes, substitutes + [free]


def _substitutions(free, choices, budget):
  for subs in itertools.product([None] + choices, repeat=len(free)):
    used = sum(1 for s in subs if s is not None)
    if used <= budget:
      yield [(y, s) for y, s in zip(free, subs) if s is not None]


def white_contexts(t, u, context_size=8):
  """White head contexts (λy..⟨·⟩) s.. a.., smallest argument lists first.

  Free variables of t and u are either left free or substituted, and the
  arguments come from a small pool of combinators and one fresh variable.
  """
  free = sorted(t.free_vars | u.free_vars)
  substitutes, arguments = _pool(terms.all_names(t) | terms.all_names(u))
  for nargs in range(min(MAX_ARGUMENTS, context_size) + 1):
    for subs in _substitutions(free, substitutes, context_size - nargs):
      for args in itertools.product(arguments, repeat=nargs):
        yield applicative_context(Color.WHITE, [y for y, _ in subs],
                                  [paint(Color.WHITE, s) for _, s in subs],
                                  [paint(Color.WHITE, a) for a in args])


def colored_contexts(t, u, context_size=8):
  """Applicative contexts with arguments and applications of either color."""
  free = sorted(t.free_vars | u.free_vars)
  substitutes, arguments = _pool(terms.all_names(t) | terms.all_names(u))
  colored = [(a, paint_color, app_color)
             for a in arguments for paint_color in Color for app_color in Color]
  for nargs in range(min(MAX_ARGUMENTS - 1, context_size) + 1):
    for subs in _substitutions(free, substitutes, context_size - nargs):
      base = applicative_context(Color.WHITE, [y for y, _ in subs],
                                 [paint(Color.WHITE, s) for _, s in subs], [])
      for args in itertools.product(colored, repeat=nargs):
        c = base
        for a, paint_color, app_color in args:
          c = AppLeft(app_color, c, paint(paint_color, a))
        yield c


def _search(t, u, contexts, fuel, max_contexts):
  pending = 0
  tried = 0
  for c in itertools.islice(contexts, max_contexts):
    tried += 1
    lhs = _evaluate(plug(c, t), fuel)
    if not lhs.normal():
      continue
    rhs = _evaluate(plug(c, u), fuel)
    if rhs.normal() and rhs.interactions > lhs.interactions:
      return verdict.fails(Separation(c, lhs.interactions, rhs.interactions),
                           'the right term interacts more')
    if rhs.diverged():
      return verdict.fails(Separation(c, lhs.interactions, None), 'the right term diverges')
    if not rhs.normal():
      pending += 1
  logging.debug('context search tried {} contexts, {} inconclusive'.format(tried, pending))
  if pending:
    return verdict.unknown('fuel', {'contexts': tried, 'inconclusive': pending})
  return verdict.holds({'contexts': tried}, bounded=True)


def interaction_improvement_check(t, u, depth=DEFAULT_DEPTH, fuel=reduction.DEFAULT_FUEL,
                                  context_size=8, max_contexts=300):
  """Searches white head contexts separating t• from u•.

  The Böhm-out separator is tried first. It handles every η-gap regardless
  of the search bounds.
  """
  t, u = terms.wash(t), terms.wash(u)
  try:
    found = bohm_out_separator(t, u, depth, fuel)
    return verdict.fails(found, 'bohm-out')
  except PreconditionFailed as e:
    logging.debug('no Böhm-out separator: {}'.format(e.msg))
  t, u = _black(t), _black(u)
  return _search(t, u, white_contexts(t, u, context_size), fuel, max_contexts)


def interaction_improvement_check_colored(t, u, fuel=reduction.DEFAULT_FUEL,
                                          context_size=8, max_contexts=300):
  return _search(t, u, colored_contexts(t, u, context_size), fuel, max_contexts)


## Böhm-out

def find_eta_gap(t, u, depth=DEFAULT_DEPTH, fuel=reduction.DEFAULT_FUEL) -> EtaGap:
  """The failing path of bohm_leq_eta_red(t, u), when it ends in an η-gap.

  Every node above the gap must have matching spines.
  """
  result = bohm.bohm_leq_eta_red(t, u, depth, fuel)
  if not result.fails():
    raise PreconditionFailed('the Böhm comparison is {}, not a failure'.format(result.label()))
  if result.reason != 'eta-gap':
    raise PreconditionFailed('the terms differ beyond η: plain Böhm-tree difference')
  trail = result.witness['trail']
  for node in trail[:-1]:
    if node.lhs_binders != node.rhs_binders or node.lhs_args != node.rhs_args:
      raise PreconditionFailed('the failing path crosses an η-expansion of the left term')
  return EtaGap(trail, result.witness['path'], result.witness['lhs'], result.witness['rhs'])


def bohm_out_separator(t, u, depth=DEFAULT_DEPTH, fuel=reduction.DEFAULT_FUEL) -> Separation:
  """Builds a white context in which u• needs more interactions than t•.

  Free variables become K-tuplers. Each node above the gap is passed
  n + K - k tuplers and the selector of the followed argument. At the gap,
  a bound head receives n tuplers.
  """
  t, u = terms.wash(t), terms.wash(u)
  gap = find_eta_gap(t, u, depth, fuel)
  width = max(max(node.lhs_args, node.rhs_args) for node in gap.trail) + 2
  tuple_k = bohm.tupler(width)
  args = []
  for node in gap.trail[:-1]:
    args += [tuple_k] * (node.lhs_binders + width - node.lhs_args)
    args.append(bohm.selector(width, node.child + 1))
  last = gap.trail[-1]
  if last.head_bound:
    args += [tuple_k] * last.lhs_binders
  free = sorted(t.free_vars | u.free_vars)
  context = applicative_context(Color.WHITE, free, [paint(Color.WHITE, tuple_k)] * len(free),
                                [paint(Color.WHITE, a) for a in args])
  lhs = _evaluate(plug(context, _black(t)), fuel)
  rhs = _evaluate(plug(context, _black(u)), fuel)
  if not (lhs.normal() and rhs.normal() and rhs.interactions > lhs.interactions):
    raise PreconditionFailed('the synthesized context does not separate the terms')
  logging.info('Böhm-out with K={} separates at counts {} < {}'.format(
      width, lhs.interactions, rhs.interactions))
  return Separation(context, lhs.interactions, rhs.interactions)


## The three relations together

def check(rel, t, u, config: RunConfig = None):
  config = config or RunConfig()
  if rel == BOHM_ETA:
    return bohm.bohm_leq_eta_red(t, u, config.depth, config.fuel)
  if rel == PWC:
    return pwc_check(t, u, config.bound, config.fuel)
  if rel == CTX_IMP:
    return interaction_improvement_check(t, u, config.depth, config.fuel,
                                         config.context_size, config.max_contexts)
  raise ValueError('unknown relation "{}"'.format(rel))


def equivalent(rel, t, u, config: RunConfig = None):
  """The equivalence induced by `rel`: the preorder in both directions."""
  return verdict.conjoin([check(rel, t, u, config), check(rel, u, t, config)])


@dataclass(frozen=True)
class Crosscheck:
  lhs: object
  rhs: object
  verdicts: Dict[str, verdict.Verdict]

  def disagreements(self):
    return [(a, b) for a, b in itertools.combinations(sorted(self.verdicts), 2)
            if verdict.contradicts(self.verdicts[a], self.verdicts[b])]

  def consistent(self):
    return not self.disagreements()


def crosscheck_main_theorem(t, u, config: RunConfig = None, relations=RELATIONS) -> Crosscheck:
  """Runs the relations on (t, u) and flags contradicting conclusive verdicts."""
  found = {}
  for rel in relations:
    found[rel] = check(rel, t, u, config)
    logging.info('{}: {}'.format(rel, found[rel].label()))
  result = Crosscheck(t, u, found)
  for a, b in result.disagreements():
    logging.error('{} and {} disagree: {} vs {}'.format(
        a, b, found[a].label(), found[b].label()))
  return result


class PreconditionFailed(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg
