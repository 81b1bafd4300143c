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

"""Checkers β-reduction, the head strategy and interaction counting.

A redex (λ_a x.t) b@ u is silent when a = b and an interaction otherwise.
Plain terms carry no colors, so all of their steps are silent.
"""

from dataclasses import dataclass
from enum import Enum
import logging
import random
from typing import Optional, Tuple

from checkers import term as terms
from checkers import verdict
from checkers.term import Abs, App, Color, Path, Sel, Term


DEFAULT_FUEL = 10000


class StepKind(Enum):
  SILENT_HEAD = 'silent-head'
  INTERACTION_HEAD = 'interaction-head'
  SILENT_INTERNAL = 'silent-internal'
  INTERACTION_INTERNAL = 'interaction-internal'

  def is_interaction(self):
    return self in (StepKind.INTERACTION_HEAD, StepKind.INTERACTION_INTERNAL)

  def is_head(self):
    return self in (StepKind.SILENT_HEAD, StepKind.INTERACTION_HEAD)


class Beta(Enum):
  """Which redexes a reduction may contract: →βc, →βτ or →βι."""
  ANY = 'any'
  SILENT = 'silent'
  INTERACTION = 'interaction'

  def admits(self, kind: StepKind):
    if self is Beta.ANY:
      return True
    return kind.is_interaction() == (self is Beta.INTERACTION)


@dataclass(frozen=True)
class Step:
  source: Term
  target: Term
  kind: StepKind
  path: Path


class Outcome(Enum):
  NORMAL = 'normal'
  FUEL_EXHAUSTED = 'fuel-exhausted'
  DIVERGED = 'diverged'


@dataclass(frozen=True)
class EvalResult:
  outcome: Outcome
  term: Term
  interactions: int
  silents: int
  trace: Tuple[Step, ...] = ()
  cycle: int = 0

  def normal(self):
    return self.outcome is Outcome.NORMAL

  def diverged(self):
    return self.outcome is Outcome.DIVERGED


def classify_redex(t: Term, head=True) -> Optional[StepKind]:
  if not (isinstance(t, App) and isinstance(t.fun, Abs)):
    return None
  if t.fun.color is t.color:
    return StepKind.SILENT_HEAD if head else StepKind.SILENT_INTERNAL
  return StepKind.INTERACTION_HEAD if head else StepKind.INTERACTION_INTERNAL


def contract(redex: App) -> Term:
  return terms.substitute(redex.fun.body, redex.fun.binder, redex.arg)


def head_redex_path(t: Term) -> Optional[Path]:
  """Position of the head redex: under the leading abstractions, at the
  innermost application of the left spine whose function is an abstraction.
  """
  path = []
  while isinstance(t, Abs):
    path.append(Sel.BODY)
    t = t.body
  depth = 0
  while isinstance(t, App):
    depth += 1
    t = t.fun
  if isinstance(t, Abs) and depth:
    return tuple(path) + (Sel.FUN,) * (depth - 1)
  return None


def is_hnf(t: Term) -> bool:
  return head_redex_path(t) is None


def spine(h: Term):
  """Splits λx1..xn.y b1@t1..bm@tm into ([(a, x)...], y, [(b, t)...]).

  On a term that is not an hnf the head is the leftmost abstraction.
  """
  binders = []
  while isinstance(h, Abs):
    binders.append((h.color, h.binder))
    h = h.body
  args = []
  while isinstance(h, App):
    args.append((h.color, h.arg))
    h = h.fun
  args.reverse()
  return binders, h, args


def head_step(t: Term) -> Optional[Step]:
  path = head_redex_path(t)
  if path is None:
    return None
  redex = terms.subterm_at(t, path)
  target = terms.replace_at(t, path, contract(redex))
  return Step(t, target, classify_redex(redex, head=True), path)


def evaluate_head(t: Term, fuel=DEFAULT_FUEL, detect_cycles=False,
                  max_size=None, keep_trace=True) -> EvalResult:
  """Runs the head strategy for at most `fuel` steps.

  With `detect_cycles`, a head term repeating up to α proves divergence and
  yields DIVERGED. `max_size` stops runaway growth as FUEL_EXHAUSTED.
  """
  trace = []
  interactions = silents = 0
  seen = {}
  current = t
  for count in range(fuel + 1):
    if detect_cycles:
      key = terms.debruijn_key(current)
      if key in seen:
        logging.debug('head reduction cycles after {} steps'.format(count))
        return EvalResult(Outcome.DIVERGED, current, interactions, silents,
                          tuple(trace), count - seen[key])
      seen[key] = count
    step = head_step(current)
    if step is None:
      return EvalResult(Outcome.NORMAL, current, interactions, silents, tuple(trace))
    if count == fuel or (max_size and terms.size(step.target) > max_size):
      break
    if keep_trace:
      trace.append(step)
    if step.kind.is_interaction():
      interactions += 1
    else:
      silents += 1
    current = step.target
  return EvalResult(Outcome.FUEL_EXHAUSTED, current, interactions, silents, tuple(trace))


def redex_paths(t: Term):
  """All redex positions, in preorder (leftmost-outermost first)."""
  found = []
  stack = [(t, ())]
  while stack:
    node, path = stack.pop()
    if classify_redex(node) is not None:
      found.append(path)
    if isinstance(node, Abs):
      stack.append((node.body, path + (Sel.BODY,)))
    elif isinstance(node, App):
      stack.append((node.arg, path + (Sel.ARG,)))
      stack.append((node.fun, path + (Sel.FUN,)))
  return found


def reduce_anywhere(t: Term, path: Path, beta=Beta.ANY) -> Step:
  try:
    redex = terms.subterm_at(t, path)
  except terms.BadPath as e:
    raise NotARedex(e.msg)
  kind = classify_redex(redex, head=(path == head_redex_path(t)))
  if kind is None:
    raise NotARedex('no redex at {}'.format(format_path(path)))
  if not beta.admits(kind):
    raise NotARedex('redex at {} is {}, not {}'.format(
        format_path(path), kind.value, beta.value))
  return Step(t, terms.replace_at(t, path, contract(redex)), kind, path)


@dataclass(frozen=True)
class NormalizeResult:
  term: Term
  steps: int
  interactions: int
  normal: bool


def normalize(t: Term, strategy='leftmost', fuel=DEFAULT_FUEL, rng=None,
              max_size=None) -> NormalizeResult:
  """Full →βc normalization, picking the leftmost or a random redex."""
  rng = rng or random.Random(0)
  interactions = 0
  for steps in range(fuel + 1):
    paths = redex_paths(t)
    if not paths:
      return NormalizeResult(t, steps, interactions, True)
    if steps == fuel or (max_size and terms.size(t) > max_size):
      break
    path = paths[0] if strategy == 'leftmost' else rng.choice(paths)
    step = reduce_anywhere(t, path)
    if step.kind.is_interaction():
      interactions += 1
    t = step.target
  return NormalizeResult(t, fuel, interactions, False)


def confluence_probe(t: Term, trials=5, fuel=1000, seed=0, max_size=2000):
  """Normalizes `t` along `trials` random strategies and compares the results."""
  rng = random.Random(seed)
  normal_forms = []
  for trial in range(trials):
    result = normalize(t, 'random', fuel, rng, max_size)
    logging.debug('confluence trial {}: normal={} after {} steps'.format(
        trial, result.normal, result.steps))
    if result.normal:
      normal_forms.append(result.term)
  if not normal_forms:
    return verdict.unknown('fuel', {'seed': seed, 'trials': trials})
  for other in normal_forms[1:]:
    if not terms.alpha_eq(normal_forms[0], other):
      return verdict.fails({'seed': seed, 'normal_forms': [normal_forms[0], other]},
                           'counterexample')
  return verdict.holds({'seed': seed, 'normal_form': normal_forms[0],
                        'terminated': len(normal_forms)})


def simulate_plain(t: Term, color=Color.BLACK, strategy='head', steps=10, seed=0):
  """Replays plain reduction steps on the painted term and on a random
  recoloring of it.

  Each plain step must map to a silent step of the a-painting with the
  painted result, and to a step at the same position of the recoloring whose
  wash is the plain result.
  """
  rng = random.Random(seed)
  painted = terms.paint(color, t)
  recolored = _recolor(t, rng)
  for idx in range(steps):
    if strategy == 'head':
      step = head_step(t)
      if step is None:
        break
    else:
      paths = redex_paths(t)
      if not paths:
        break
      step = reduce_anywhere(t, rng.choice(paths))
    try:
      painted_step = reduce_anywhere(painted, step.path)
      lifted = reduce_anywhere(recolored, step.path)
    except NotARedex as e:
      return verdict.fails({'step': idx, 'path': step.path}, e.msg)
    if painted_step.kind.is_interaction() or painted_step.target != terms.paint(color, step.target):
      return verdict.fails({'step': idx, 'path': step.path}, 'painting does not simulate')
    if painted_step.kind.is_head() != step.kind.is_head():
      return verdict.fails({'step': idx, 'path': step.path}, 'head position differs')
    if terms.wash(lifted.target) != step.target:
      return verdict.fails({'step': idx, 'path': step.path}, 'washed step does not lift')
    t, painted, recolored = step.target, painted_step.target, lifted.target
  return verdict.holds({'seed': seed, 'term': t})


def _recolor(t: Term, rng):
  if isinstance(t, terms.Var):
    return t
  color = rng.choice((Color.WHITE, Color.BLACK))
  if isinstance(t, Abs):
    return Abs(color, t.binder, _recolor(t.body, rng))
  return App(color, _recolor(t.fun, rng), _recolor(t.arg, rng))


def format_path(path: Path) -> str:
  return '/'.join(sel.value for sel in path) or '<root>'


class NotARedex(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg
