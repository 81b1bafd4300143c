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

"""Repainting of derivations.

A negatively occurring arrow of a typing can be turned white by rebuilding
the derivation. The cost is either one positively occurring arrow turned
white as well, or an index shifted by one. `multirepaint` iterates this for
several arrows and `app_repaint` reconciles the two premises of an
application whose argument types differ by whitening.
"""

import logging

from checkers.multitype import (Arrow, MultiType, Rule, app, ax, black_arrows, lam,
                                many, xor_color)
from checkers.whitening import (Pair, Polarity, align, check_whitening, decide_whitening,
                                pair_of)


def repaint_one(d, w):
  """Repaints d along w : ⟨Γ';L'⟩ ⊑^-_1 ⟨Γ;L⟩.

  Returns (d'', i, witness) with witness : ⟨Γ'';L''⟩ ⊑^+_i ⟨Γ';L'⟩ and
  |k - k''| <= 1 - i.
  """
  if w.polarity is not Polarity.NEG or w.count != 1:
    raise WitnessMismatch('repainting needs a single negative whitening')
  if w.rhs != pair_of(d):
    raise WitnessMismatch('the witness does not start from the typing of the derivation')
  if not check_whitening(w):
    raise WitnessMismatch('the witness does not check')
  result = _repaint(d, w.lhs)
  witness = decide_whitening(Polarity.POS, pair_of(result), w.lhs)
  if witness is None or witness.count > 1 or abs(d.index - result.index) > 1 - witness.count:
    raise RepaintError('repainting left the allowed bounds')
  logging.debug('repainted with i={}, index {} -> {}'.format(
      witness.count, d.index, result.index))
  return result, witness.count, witness


def _repaint(d, target: Pair):
  if d.rule is Rule.AX:
    name = d.term.name
    if target.type != d.type:
      return ax(name, target.type)
    return ax(name, target.env.get(name).elems[0])

  if d.rule is Rule.LAM:
    child = d.children[0]
    binder = d.term.binder
    child_target = Pair(target.env.bind(binder, target.type.arg), target.type.result)
    return lam(d.term.color, binder, _repaint(child, child_target))

  if d.rule is Rule.MANY:
    children = list(d.children)
    if target.type != d.type:
      removed, added = _single_change(d.type, target.type)
      idx = next(i for i, c in enumerate(children) if c.type == removed)
      children[idx] = _repaint(children[idx], Pair(children[idx].env, added))
    else:
      name, removed, added = _env_change(d.env, target.env)
      idx = next(i for i, c in enumerate(children) if removed in c.env.get(name).elems)
      child = children[idx]
      children[idx] = _repaint(child, Pair(_swap(child.env, name, removed, added), child.type))
    return many(d.term, children)

  fun, arg = d.children
  color = d.term.color
  if target.type != d.type:
    fun = _repaint(fun, Pair(fun.env, Arrow(fun.type.arg, fun.type.color, target.type)))
  else:
    name, removed, added = _env_change(d.env, target.env)
    if removed in fun.env.get(name).elems:
      fun = _repaint(fun, Pair(_swap(fun.env, name, removed, added), fun.type))
    else:
      arg = _repaint(arg, Pair(_swap(arg.env, name, removed, added), arg.type))
  fun, arg = _settle(fun, arg)
  return app(color, fun, arg)


def _settle(fun, arg):
  """Repaints back and forth until the argument types agree.

  Each round whitens one arrow of the argument multi type, so the number of
  rounds is bounded by its black arrows.
  """
  rounds = black_arrows(arg.type) + black_arrows(fun.type.arg) + 1
  for _ in range(rounds + 1):
    wanted = fun.type.arg
    if wanted == arg.type:
      return fun, arg
    if decide_whitening(Polarity.NEG, wanted, arg.type) is not None:
      arg = _repaint(arg, Pair(arg.env, wanted))
    elif decide_whitening(Polarity.POS, arg.type, wanted) is not None:
      fun = _repaint(fun, Pair(fun.env, Arrow(arg.type, fun.type.color, fun.type.result)))
    else:
      raise RepaintError('argument types are not related by a single whitening')
  raise RepaintError('argument types did not stabilise')


def _single_change(before: MultiType, after: MultiType):
  removed = before.minus(after)
  added = after.minus(before)
  if removed is None or added is None:
    removed = MultiType(tuple(e for e in before.elems if e not in after.elems))
    added = MultiType(tuple(e for e in after.elems if e not in before.elems))
  if len(removed) != 1 or len(added) != 1:
    raise RepaintError('expected exactly one changed element')
  return removed.elems[0], added.elems[0]


def _env_change(before, after):
  for name in sorted(set(before.support()) | set(after.support())):
    if before.get(name) != after.get(name):
      removed, added = _single_change(before.get(name), after.get(name))
      return name, removed, added
  raise RepaintError('no change to repaint')


def _swap(env, name, removed, added):
  rest = env.get(name).minus(MultiType((removed,)))
  return env.bind(name, rest + MultiType((added,)))


def multirepaint(d, w):
  """Repaints d along w : ⟨Γ';L'⟩ ⊑^-_k1 ⟨Γ;L⟩ one arrow at a time.

  Returns (d'', k2, witness) with witness : ⟨Γ'';L''⟩ ⊑^+_k2 ⟨Γ';L'⟩,
  k2 <= k1 and |k - k''| <= k1 - k2.
  """
  if w.polarity is not Polarity.NEG or w.rhs != pair_of(d) or not check_whitening(w):
    raise WitnessMismatch('multirepaint needs a negative whitening of the typing')
  target = w.lhs
  current = d
  for _ in range(w.count + 1):
    aligned = align(pair_of(current), target, Polarity.POS)
    if aligned is None:
      raise RepaintError('lost track of the target typing')
    _, pending, stepped = aligned
    if not pending:
      break
    step = decide_whitening(Polarity.NEG, stepped, pair_of(current))
    current, _, _ = repaint_one(current, step)
  witness = decide_whitening(Polarity.POS, pair_of(current), target)
  if witness is None or witness.count > w.count:
    raise RepaintError('multirepaint did not reach a whiter typing')
  if abs(d.index - current.index) > w.count - witness.count:
    raise RepaintError('multirepaint shifted the index too far')
  return current, witness.count, witness


def app_repaint(fun, arg, color):
  """Types fun b@ arg when the argument types differ by a whitening.

  `fun` types t : M ->a L and `arg` types u : N with M ⊑^-_δ N or
  N ⊑^+_δ M. Returns (derivation, δ', witness) where witness relates the new
  conclusion to ⟨Γ+Δ;L⟩ positively with count δ'.
  """
  original = Pair(fun.env + arg.env, fun.type.result)
  bound_args = (fun.index, arg.index, fun.type.color, color)
  neg = decide_whitening(Polarity.NEG, fun.type.arg, arg.type)
  pos = decide_whitening(Polarity.POS, arg.type, fun.type.arg)
  if neg is not None:
    delta = neg.count
  elif pos is not None:
    delta = pos.count
  else:
    raise WitnessMismatch('argument types are not related by whitening')
  budget = black_arrows(fun.type.arg) + black_arrows(arg.type) + 1
  for _ in range(budget + 1):
    if fun.type.arg == arg.type:
      break
    step = decide_whitening(Polarity.NEG, Pair(arg.env, fun.type.arg), pair_of(arg))
    if step is not None:
      arg, _, _ = multirepaint(arg, step)
      continue
    wanted = Pair(fun.env, Arrow(arg.type, fun.type.color, fun.type.result))
    step = decide_whitening(Polarity.NEG, wanted, pair_of(fun))
    if step is None:
      raise RepaintError('argument types drifted apart')
    fun, _, _ = multirepaint(fun, step)
  else:
    raise RepaintError('application repainting did not stabilise')
  result = app(color, fun, arg)
  witness = decide_whitening(Polarity.POS, pair_of(result), original)
  if witness is None or witness.count > delta:
    raise RepaintError('application repainting is not a whitening of the conclusion')
  if result.index > app_repaint_bound(*bound_args, delta, witness.count):
    raise RepaintError('application repainting exceeded its index bound')
  return result, witness.count, witness


def app_repaint_bound(k, l, arrow_color, app_color, delta, delta_after):
  """The index bound k + l + xor + δ - δ' met by `app_repaint`."""
  return k + l + xor_color(arrow_color, app_color) + delta - delta_after


class WitnessMismatch(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg

class RepaintError(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg
