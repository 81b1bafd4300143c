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

"""Polarized whitening of types, multi types, environments and pairs.

`lhs ⊑^p_k rhs` holds when lhs is rhs with k black arrows turned white, each
at an occurrence of polarity p. Polarity flips on arrow arguments, and on the
environment of a pair. Only positive occurrences may be whitened.

Witnesses are trees of `WhiteningWitness` nodes, one per rule instance, and
can be rechecked with `check_whitening`.
"""

from dataclasses import dataclass
from enum import Enum
import itertools
from typing import Optional, Tuple

from checkers.multitype import Arrow, Atom, MultiType, TypeEnv, wash_type
from checkers.term import Color


class Polarity(Enum):
  POS = '+'
  NEG = '-'

  def flip(self):
    return Polarity.NEG if self is Polarity.POS else Polarity.POS


@dataclass(frozen=True)
class Pair:
  env: TypeEnv
  type: object


class WRule(Enum):
  ATOM = 'atom'
  SAME = 'same'
  WHITEN = 'whiten'
  MULTI = 'multi'
  ENV = 'env'
  PAIR = 'pair'


@dataclass(frozen=True)
class WhiteningWitness:
  polarity: Polarity
  count: int
  lhs: object
  rhs: object
  rule: WRule
  children: Tuple['WhiteningWitness', ...] = ()


def pair_of(d) -> Pair:
  return Pair(d.env, d.type)


def _node(pol, lhs, rhs, rule, children, extra=0):
  return WhiteningWitness(pol, sum(c.count for c in children) + extra, lhs, rhs, rule,
                          tuple(children))


def decide_whitening(pol: Polarity, lhs, rhs) -> Optional[WhiteningWitness]:
  """A witness of lhs ⊑^pol_k rhs, or None. The count k is unique when it exists."""
  if isinstance(lhs, Atom) or isinstance(rhs, Atom):
    return _node(pol, lhs, rhs, WRule.ATOM, ()) if lhs == rhs else None
  if isinstance(lhs, Arrow) and isinstance(rhs, Arrow):
    if lhs.color is rhs.color:
      rule, extra = WRule.SAME, 0
    elif pol is Polarity.POS and lhs.color is Color.WHITE:
      rule, extra = WRule.WHITEN, 1
    else:
      return None
    arg = decide_whitening(pol.flip(), lhs.arg, rhs.arg)
    if arg is None:
      return None
    result = decide_whitening(pol, lhs.result, rhs.result)
    if result is None:
      return None
    return _node(pol, lhs, rhs, rule, (arg, result), extra)
  if isinstance(lhs, MultiType) and isinstance(rhs, MultiType):
    if len(lhs) != len(rhs):
      return None
    children = _pair_elements(pol, list(lhs.elems), list(rhs.elems))
    return None if children is None else _node(pol, lhs, rhs, WRule.MULTI, children)
  if isinstance(lhs, TypeEnv) and isinstance(rhs, TypeEnv):
    if lhs.support() != rhs.support():
      return None
    children = []
    for name in rhs.support():
      child = decide_whitening(pol, lhs.get(name), rhs.get(name))
      if child is None:
        return None
      children.append(child)
    return _node(pol, lhs, rhs, WRule.ENV, children)
  if isinstance(lhs, Pair) and isinstance(rhs, Pair):
    env = decide_whitening(pol.flip(), lhs.env, rhs.env)
    if env is None:
      return None
    ltype = decide_whitening(pol, lhs.type, rhs.type)
    return None if ltype is None else _node(pol, lhs, rhs, WRule.PAIR, (env, ltype))
  return None


def _pair_elements(pol, lhs, rhs):
  """Backtracking search for a bijection relating every lhs element."""
  if not lhs:
    return []
  first, rest = lhs[0], lhs[1:]
  tried = []
  for idx, candidate in enumerate(rhs):
    if candidate in tried or wash_type(candidate) != wash_type(first):
      continue
    tried.append(candidate)
    child = decide_whitening(pol, first, candidate)
    if child is None:
      continue
    others = _pair_elements(pol, rest, rhs[:idx] + rhs[idx + 1:])
    if others is not None:
      return [child] + others
  return None


def whitening_count(pol, lhs, rhs) -> Optional[int]:
  w = decide_whitening(pol, lhs, rhs)
  return None if w is None else w.count


def find_whitening_error(w: WhiteningWitness, path=()):
  """(path, message) for the first node that is not a rule instance, or None."""
  problem = _local_error(w)
  if problem:
    return path, problem
  for idx, child in enumerate(w.children):
    found = find_whitening_error(child, path + (idx,))
    if found:
      return found
  return None


def check_whitening(w: WhiteningWitness) -> bool:
  return find_whitening_error(w) is None


def _local_error(w):
  if w.count != sum(c.count for c in w.children) + (1 if w.rule is WRule.WHITEN else 0):
    return 'count does not add up'
  if wash_pair(w.lhs) != wash_pair(w.rhs):
    return 'sides have different uncolored skeletons'
  if w.rule is WRule.ATOM:
    if not isinstance(w.lhs, Atom) or w.lhs != w.rhs or w.children:
      return 'atom rule relates an atom to itself'
    return None
  if w.rule in (WRule.SAME, WRule.WHITEN):
    if not (isinstance(w.lhs, Arrow) and isinstance(w.rhs, Arrow)) or len(w.children) != 2:
      return 'arrow rule needs two arrows and two premises'
    if w.rule is WRule.SAME and w.lhs.color is not w.rhs.color:
      return 'arrow colors differ'
    if w.rule is WRule.WHITEN:
      if w.polarity is not Polarity.POS:
        return 'arrows may only be whitened at positive polarity'
      if w.lhs.color is not Color.WHITE or w.rhs.color is not Color.BLACK:
        return 'whitening turns a black arrow white'
    arg, result = w.children
    if (arg.polarity, arg.lhs, arg.rhs) != (w.polarity.flip(), w.lhs.arg, w.rhs.arg):
      return 'argument premise must relate the arguments at the opposite polarity'
    if (result.polarity, result.lhs, result.rhs) != (w.polarity, w.lhs.result, w.rhs.result):
      return 'result premise must relate the results'
    return None
  if w.rule is WRule.MULTI:
    if not (isinstance(w.lhs, MultiType) and isinstance(w.rhs, MultiType)):
      return 'multiset rule relates multi types'
    if any(c.polarity is not w.polarity for c in w.children):
      return 'multiset premises keep the polarity'
    if (MultiType(tuple(c.lhs for c in w.children)) != w.lhs
        or MultiType(tuple(c.rhs for c in w.children)) != w.rhs):
      return 'premises are not a bijection between the elements'
    return None
  if w.rule is WRule.ENV:
    if not (isinstance(w.lhs, TypeEnv) and isinstance(w.rhs, TypeEnv)):
      return 'environment rule relates environments'
    names = w.rhs.support()
    if w.lhs.support() != names or len(w.children) != len(names):
      return 'environments must have the same support'
    for name, child in zip(names, w.children):
      if (child.polarity, child.lhs, child.rhs) != (w.polarity, w.lhs.get(name), w.rhs.get(name)):
        return 'premise for {} does not match'.format(name)
    return None
  if not (isinstance(w.lhs, Pair) and isinstance(w.rhs, Pair)) or len(w.children) != 2:
    return 'pair rule needs pairs and two premises'
  env, ltype = w.children
  if (env.polarity, env.lhs, env.rhs) != (w.polarity.flip(), w.lhs.env, w.rhs.env):
    return 'environment premise must be at the opposite polarity'
  if (ltype.polarity, ltype.lhs, ltype.rhs) != (w.polarity, w.lhs.type, w.rhs.type):
    return 'type premise must relate the types'
  return None


def wash_pair(obj):
  if isinstance(obj, Pair):
    return (wash_type(obj.env), wash_type(obj.type))
  return wash_type(obj)


def compose_whitening(w1: WhiteningWitness, w2: WhiteningWitness) -> WhiteningWitness:
  """Transitivity: from a ⊑^p_k1 b and b ⊑^p_k2 c, a ⊑^p_(k1+k2) c."""
  if w1.polarity is not w2.polarity:
    raise Mismatch('cannot compose witnesses of different polarities')
  if w1.rhs != w2.lhs:
    raise Mismatch('the middle objects differ')
  w = decide_whitening(w1.polarity, w1.lhs, w2.rhs)
  if w is None or w.count != w1.count + w2.count:
    raise Mismatch('composite is not a whitening of count {}'.format(w1.count + w2.count))
  return w


def invert_pair(w: WhiteningWitness, x: str, color: Color) -> WhiteningWitness:
  """From ⟨Γ',x:M';L'⟩ ⊑ ⟨Γ,x:M;L⟩ builds ⟨Γ';M' ->a L'⟩ ⊑ ⟨Γ;M ->a L⟩."""
  lhs = Pair(w.lhs.env.without(x), Arrow(w.lhs.env.get(x), color, w.lhs.type))
  rhs = Pair(w.rhs.env.without(x), Arrow(w.rhs.env.get(x), color, w.rhs.type))
  return _same_count(w, lhs, rhs)


def revert_pair(w: WhiteningWitness, x: str) -> WhiteningWitness:
  """The converse of `invert_pair`: moves the arrow argument back to x."""
  if not (isinstance(w.lhs.type, Arrow) and isinstance(w.rhs.type, Arrow)):
    raise Mismatch('pair types must be arrows')
  if x in w.lhs.env.support() or x in w.rhs.env.support():
    raise Mismatch('{} is already bound in the environment'.format(x))
  lhs = Pair(w.lhs.env.bind(x, w.lhs.type.arg), w.lhs.type.result)
  rhs = Pair(w.rhs.env.bind(x, w.rhs.type.arg), w.rhs.type.result)
  return _same_count(w, lhs, rhs)


def _same_count(w, lhs, rhs):
  result = decide_whitening(w.polarity, lhs, rhs)
  if result is None or result.count != w.count:
    raise Mismatch('inversion changed the whitening count')
  return result


## Variants

def _variants(obj, pol):
  """Every object reachable by whitening black arrows at positive occurrences,
  mapped to the number of arrows whitened."""
  if isinstance(obj, Atom):
    return {obj: 0}
  if isinstance(obj, Arrow):
    colors = [(obj.color, 0)]
    if obj.color is Color.BLACK and pol is Polarity.POS:
      colors.append((Color.WHITE, 1))
    found = {}
    args = _variants(obj.arg, pol.flip())
    results = _variants(obj.result, pol)
    for (arg, k1), (result, k2), (color, k3) in itertools.product(
        args.items(), results.items(), colors):
      found[Arrow(arg, color, result)] = k1 + k2 + k3
    return found
  if isinstance(obj, MultiType):
    found = {}
    for combo in itertools.product(*(_variants(e, pol).items() for e in obj.elems)):
      found[MultiType(tuple(e for e, _ in combo))] = sum(k for _, k in combo)
    return found
  if isinstance(obj, TypeEnv):
    found = {}
    names = obj.support()
    for combo in itertools.product(*(_variants(obj.get(n), pol).items() for n in names)):
      found[TypeEnv(tuple((n, m) for n, (m, _) in zip(names, combo)))] = sum(
          k for _, k in combo)
    return found
  found = {}
  for (env, k1), (ltype, k2) in itertools.product(
      _variants(obj.env, pol.flip()).items(), _variants(obj.type, pol).items()):
    found[Pair(env, ltype)] = k1 + k2
  return found


def whiter_variants(obj, pol=Polarity.POS):
  """All (variant, count) with variant ⊑^pol_count obj, fewest whitenings first."""
  found = _variants(obj, pol)
  return sorted(found.items(), key=lambda item: item[1])


def single_whitenings(obj, pol=Polarity.POS):
  return [variant for variant, count in whiter_variants(obj, pol) if count == 1]


## Commutation

def commute(w_neg: WhiteningWitness, w_pos: WhiteningWitness):
  """Completes the square of a ⊑^-_1 and a ⊑^+_1 change of the same pair.

  Returns (corner, to_neg, to_pos) with corner ⊑^+_1 w_neg.lhs and
  corner ⊑^-_1 w_pos.lhs.
  """
  if w_neg.rhs != w_pos.rhs:
    raise Mismatch('the two changes start from different objects')
  if w_neg.polarity is not Polarity.NEG or w_pos.polarity is not Polarity.POS:
    raise Mismatch('commutation needs a negative and a positive witness')
  corner = _overlay(w_neg, w_pos)
  to_neg = decide_whitening(Polarity.POS, corner, w_neg.lhs)
  to_pos = decide_whitening(Polarity.NEG, corner, w_pos.lhs)
  if (to_neg is None or to_pos is None or to_neg.count != w_pos.count
      or to_pos.count != w_neg.count):
    raise Mismatch('the commutation square does not close')
  return corner, to_neg, to_pos


def _overlay(a, b):
  """The object carrying the whitenings of both witnesses over their common rhs."""
  if a.rule is WRule.ATOM:
    return a.lhs
  if isinstance(a.rhs, Arrow):
    white = Color.WHITE in (a.lhs.color, b.lhs.color)
    return Arrow(_overlay(a.children[0], b.children[0]),
                 Color.WHITE if white else a.rhs.color,
                 _overlay(a.children[1], b.children[1]))
  if a.rule is WRule.MULTI:
    remaining = list(b.children)
    elems = []
    for child in a.children:
      idx = next(i for i, other in enumerate(remaining) if other.rhs == child.rhs)
      elems.append(_overlay(child, remaining.pop(idx)))
    return MultiType(tuple(elems))
  if a.rule is WRule.ENV:
    return TypeEnv(tuple((name, _overlay(x, y)) for name, x, y in zip(
        a.rhs.support(), a.children, b.children)))
  return Pair(_overlay(a.children[0], b.children[0]), _overlay(a.children[1], b.children[1]))


## Mixed alignment

def align(current, target, pol=Polarity.POS):
  """Compares `current` with `target` when current is whiter at positive
  occurrences and target is whiter at negative ones.

  Returns (positive, pending, stepped) where positive counts the positive
  whitenings of current, pending the negative whitenings current still
  lacks, and stepped is current with the first pending arrow whitened.
  Returns None if the objects are not related this way.
  """
  return _align(pol, current, target)


def _align(pol, cur, tgt):
  if isinstance(cur, Atom) or isinstance(tgt, Atom):
    return (0, 0, cur) if cur == tgt else None
  if isinstance(cur, Arrow) and isinstance(tgt, Arrow):
    pos = pend = 0
    color = cur.color
    if cur.color is not tgt.color:
      if pol is Polarity.POS and cur.color is Color.WHITE:
        pos = 1
      elif pol is Polarity.NEG and tgt.color is Color.WHITE:
        pend = 1
      else:
        return None
    arg = _align(pol.flip(), cur.arg, tgt.arg)
    result = _align(pol, cur.result, tgt.result)
    if arg is None or result is None:
      return None
    if pend:
      color, arg_step, result_step = Color.WHITE, cur.arg, cur.result
    elif arg[1]:
      arg_step, result_step = arg[2], cur.result
    else:
      arg_step, result_step = cur.arg, result[2]
    return (pos + arg[0] + result[0], pend + arg[1] + result[1],
            Arrow(arg_step, color, result_step))
  if isinstance(cur, MultiType) and isinstance(tgt, MultiType):
    if len(cur) != len(tgt):
      return None
    aligned = _align_elements(pol, list(cur.elems), list(tgt.elems))
    if aligned is None:
      return None
    return _combine(aligned, lambda parts: MultiType(tuple(parts)))
  if isinstance(cur, TypeEnv) and isinstance(tgt, TypeEnv):
    names = cur.support()
    if names != tgt.support():
      return None
    aligned = [_align(pol, cur.get(n), tgt.get(n)) for n in names]
    if any(a is None for a in aligned):
      return None
    return _combine(
        [(a, cur.get(n)) for a, n in zip(aligned, names)],
        lambda parts: TypeEnv(tuple(zip(names, parts))))
  if isinstance(cur, Pair) and isinstance(tgt, Pair):
    env = _align(pol.flip(), cur.env, tgt.env)
    ltype = _align(pol, cur.type, tgt.type)
    if env is None or ltype is None:
      return None
    return _combine([(env, cur.env), (ltype, cur.type)], lambda parts: Pair(*parts))
  return None


def _combine(aligned, build):
  """Sums the counts of aligned parts and steps the first part with pending work."""
  pos = sum(a[0] for a, _ in aligned)
  pend = sum(a[1] for a, _ in aligned)
  parts, stepped = [], False
  for (_, count, step), original in aligned:
    if count and not stepped:
      parts.append(step)
      stepped = True
    else:
      parts.append(original)
  return pos, pend, build(parts)


def _align_elements(pol, cur, tgt):
  if not cur:
    return []
  first, rest = cur[0], cur[1:]
  for idx, candidate in enumerate(tgt):
    found = _align(pol, first, candidate)
    if found is None:
      continue
    others = _align_elements(pol, rest, tgt[:idx] + tgt[idx + 1:])
    if others is not None:
      return [(found, first)] + others
  return None


class Mismatch(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg
