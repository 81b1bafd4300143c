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

"""The colored interpretation of a term: its set of typings (Γ, L, k).

Typings are produced from the head normal form and pulled back along the
head reduction with subject expansion, so each emitted index is the number
of interaction head steps plus the increments inside the hnf typing.
`Typechecker` answers the dual question: the least index of a given
judgement Γ ⊢ t : L.
"""

from collections import Counter
from dataclasses import dataclass
import itertools
import logging
from typing import List, Optional, Tuple

from checkers import derivations
from checkers import multitype
from checkers import reduction
from checkers import verdict
from checkers.multitype import (Arrow, Derivation, MultiType, TypeEnv, Typing,
                                app, ax, lam, many)
from checkers.term import Abs, App


@dataclass(frozen=True)
class TypeBound:
  """Bounds the hnf-stage typings.

  `width` caps multi type cardinality, `depth` the nesting of argument
  typings, `result_depth` the arrow depth of hnf result types, and `limit`
  the number of typings emitted per term.
  """
  width: int = 2
  depth: int = 3
  result_depth: int = 1
  atoms: Tuple[str, ...] = ('X',)
  limit: int = 48

  def shallower(self):
    return TypeBound(self.width, self.depth - 1, self.result_depth, self.atoms, self.limit)

  def result_types(self):
    return multitype.linear_types(self.result_depth, self.width, self.atoms)


@dataclass(frozen=True)
class Interpretation:
  term: object
  typings: Tuple[Tuple[Typing, Derivation], ...]
  truncated: bool
  evaluation: reduction.EvalResult


def _evaluate(t, fuel, detect_cycles=True):
  result = reduction.evaluate_head(t, fuel, detect_cycles=detect_cycles)
  if not result.normal():
    raise Diverged('no head normal form within {} steps'.format(fuel), result)
  return result


def enumerate_typings(t, bound=TypeBound(), fuel=reduction.DEFAULT_FUEL):
  """Yields (Typing, Derivation) pairs of ⟦t⟧ within `bound`.

  Raises Diverged if `t` has no head normal form within `fuel`.
  """
  result = _evaluate(t, fuel)
  logging.debug('enumerating typings after {} interaction and {} silent head steps'.format(
      result.interactions, result.silents))
  for d in itertools.islice(_hnf_derivations(result.term, bound, fuel), bound.limit):
    d = derivations.pull_back(d, result.trace)
    yield d.typing(), d


def interpret(t, bound=TypeBound(), fuel=reduction.DEFAULT_FUEL) -> Interpretation:
  result = _evaluate(t, fuel)
  found = list(itertools.islice(_hnf_derivations(result.term, bound, fuel), bound.limit + 1))
  truncated = len(found) > bound.limit
  pairs = []
  for d in found[:bound.limit]:
    d = derivations.pull_back(d, result.trace)
    pairs.append((d.typing(), d))
  return Interpretation(t, tuple(pairs), truncated, result)


def _argument_pool(arg, bound, fuel):
  if bound.depth <= 0:
    return []
  try:
    return [d for _, d in enumerate_typings(arg, bound.shallower(), fuel)]
  except Diverged:
    return []


def _hnf_derivations(h, bound, fuel):
  """All derivations of the hnf `h` whose head result type is in the bound.

  The head variable is typed N1 ->c1 ... Nm ->cm L with each color c_j either
  matching the application (no increment) or not (one increment).
  """
  binders, head, args = reduction.spine(h)
  pools = [_argument_pool(arg, bound, fuel) for _, arg in args]
  arg_choices = [
      list(_multi_derivations(arg, pool, bound.width))
      for (_, arg), pool in zip(args, pools)]
  color_choices = [(color, color.flip()) for color, _ in args]
  result_types = bound.result_types()
  for arg_derivs in itertools.product(*arg_choices):
    for result_type in result_types:
      for colors in itertools.product(*color_choices):
        head_type = result_type
        for color, d_arg in reversed(list(zip(colors, arg_derivs))):
          head_type = Arrow(d_arg.type, color, head_type)
        d = ax(head.name, head_type)
        for (color, _), d_arg in zip(args, arg_derivs):
          d = app(color, d, d_arg)
        for color, binder in reversed(binders):
          d = lam(color, binder, d)
        yield d


def _multi_derivations(arg, pool, width):
  for count in range(width + 1):
    for combo in itertools.combinations_with_replacement(range(len(pool)), count):
      yield many(arg, [pool[idx] for idx in combo])


class Typechecker:
  """Least index of a judgement Γ ⊢ t : L, memoised per judgement.

  Every typing of t is a typing of its hnf shifted by the interaction head
  steps, so the search head-evaluates t and then matches the hnf spine
  against the judgement. Branches whose evaluation runs out of fuel make the
  answer inconclusive, which `inconclusive` records.
  """

  def __init__(self, fuel=reduction.DEFAULT_FUEL, detect_cycles=True):
    self.fuel = fuel
    self.detect_cycles = detect_cycles
    self.inconclusive = False
    self._memo = {}
    self._evals = {}

  def min_index(self, t, env: TypeEnv, ltype) -> Optional[int]:
    d = self.min_derivation(t, env, ltype)
    return None if d is None else d.index

  def min_derivation(self, t, env: TypeEnv, ltype) -> Optional[Derivation]:
    key = (t, env, ltype)
    if key not in self._memo:
      self._memo[key] = self._search(t, env, ltype)
    return self._memo[key]

  def _evaluate(self, t):
    if t not in self._evals:
      self._evals[t] = reduction.evaluate_head(t, self.fuel, detect_cycles=self.detect_cycles)
    return self._evals[t]

  def _search(self, t, env, ltype):
    if not set(env.support()) <= t.free_vars:
      return None
    result = self._evaluate(t)
    if result.diverged():
      return None
    if not result.normal():
      logging.debug('typechecker ran out of fuel, answer is inconclusive')
      self.inconclusive = True
      return None
    d = self._hnf(result.term, env, ltype)
    if d is None:
      return None
    return derivations.pull_back(d, result.trace)

  def _hnf(self, h, env, ltype):
    if isinstance(h, Abs):
      if not isinstance(ltype, Arrow) or ltype.color is not h.color:
        return None
      if env.get(h.binder).elems:
        return None
      child = self._hnf(h.body, env.bind(h.binder, ltype.arg), ltype.result)
      return None if child is None else lam(h.color, h.binder, child)
    _, head, args = reduction.spine(h)
    best = None
    for head_type in env.get(head.name).distinct():
      slots = _slots(head_type, len(args), ltype)
      if slots is None:
        continue
      rest = env.minus(multitype.singleton_env(head.name, head_type))
      arg_derivs = self._fill(args, slots, rest)
      if arg_derivs is None:
        continue
      d = ax(head.name, head_type)
      for (color, _), d_arg in zip(args, arg_derivs):
        d = app(color, d, d_arg)
      if best is None or d.index < best.index:
        best = d
    return best

  def _fill(self, args, slots, rest):
    """Least-index many derivations for the arguments, sharing out `rest`."""
    jobs = [(idx, arg, elem)
            for idx, ((_, arg), mtype) in enumerate(zip(args, slots))
            for elem in mtype]
    found = self._share(jobs, rest)
    if found is None:
      return None
    children = [[] for _ in args]
    for (idx, _, _), d in zip(jobs, found):
      children[idx].append(d)
    return [many(arg, kids) for (_, arg), kids in zip(args, children)]

  def _share(self, jobs, rest) -> Optional[List[Derivation]]:
    if not jobs:
      return [] if not rest.support() else None
    reachable = set()
    for _, arg, _ in jobs:
      reachable |= arg.free_vars
    if not set(rest.support()) <= reachable:
      return None
    (_, arg, elem), remaining = jobs[0], jobs[1:]
    best, best_index = None, None
    for part in _sub_envs(rest, arg.free_vars):
      d = self.min_derivation(arg, part, elem)
      if d is None:
        continue
      tail = self._share(remaining, rest.minus(part))
      if tail is None:
        continue
      total = d.index + sum(x.index for x in tail)
      if best is None or total < best_index:
        best, best_index = [d] + tail, total
    return best


def _slots(head_type, count, result_type):
  """The argument multi types if head_type has `count` arrows ending in result_type."""
  slots = []
  for _ in range(count):
    if not isinstance(head_type, Arrow):
      return None
    slots.append(head_type.arg)
    head_type = head_type.result
  return slots if head_type == result_type else None


def _sub_envs(env: TypeEnv, names):
  """Every sub-environment of `env` supported on `names`."""
  choices = []
  for name, mtype in env:
    if name in names:
      choices.append([(name, sub) for sub in _sub_multisets(mtype)])
  for combo in itertools.product(*choices):
    yield TypeEnv(tuple(combo))


def _sub_multisets(mtype: MultiType):
  counts = Counter(mtype.elems)
  kinds = list(counts)
  for picks in itertools.product(*(range(counts[k] + 1) for k in kinds)):
    yield MultiType(tuple(k for k, n in zip(kinds, picks) for _ in range(n)))


def check_soundness(t, d: Derivation, fuel=reduction.DEFAULT_FUEL):
  """Holds iff t head-normalizes with at most d.index interaction steps."""
  result = reduction.evaluate_head(t, fuel, detect_cycles=True)
  if result.normal():
    witness = {'interactions': result.interactions, 'index': d.index}
    if result.interactions <= d.index:
      return verdict.holds(witness)
    return verdict.fails(witness, 'more interactions than the derivation index')
  if result.diverged():
    return verdict.fails({'cycle': result.cycle}, 'typable term diverges')
  return verdict.unknown('fuel')


class Diverged(Exception):
  def __init__(self, msg, result):
    super().__init__(msg)
    self.msg = msg
    self.result = result
