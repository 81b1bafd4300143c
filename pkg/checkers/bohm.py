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

"""Böhm trees of plain terms, cut at a finite depth.

Also hosts the named combinators used across the workbench. Infinite trees
such as the one of J are reached through finite unfoldings (`j_unfold`).
"""

import dataclasses
from dataclasses import dataclass
import logging
from typing import Tuple, Union

from checkers import reduction
from checkers import term as terms
from checkers import verdict
from checkers.term import Var, abstraction, application


## Combinators

def _plain(binders, body):
  return abstraction(None, binders, body)


def _app(fun, *args):
  return application(None, fun, *args)


I = _plain('x', Var('x'))
K = _plain('x y', Var('x'))
DELTA = _plain('x', _app(Var('x'), Var('x')))
OMEGA = _app(DELTA, _plain('y', _app(Var('y'), Var('y'))))

_Y_HALF = _plain('x', _app(Var('f'), _app(Var('x'), Var('x'))))
Y = _plain('f', _app(_Y_HALF, _Y_HALF))
J = _app(Y, _plain('z x y', _app(Var('x'), _app(Var('z'), Var('y')))))


def j_unfold(d: int):
  """J_0 = Ω and J_{d+1} = λxy.x(J_d y)."""
  current = OMEGA
  for _ in range(d):
    current = _plain('x y', _app(Var('x'), _app(current, Var('y'))))
  return current


def tupler(n: int):
  """T_n = λx1..xn.λz.z x1 .. xn."""
  names = ['x{}'.format(i) for i in range(1, n + 1)]
  return _plain(names + ['z'], _app(Var('z'), *(Var(name) for name in names)))


def selector(n: int, i: int):
  """P^n_i = λx1..xn.xi, with 1 <= i <= n."""
  if not 1 <= i <= n:
    raise ValueError('selector index {} out of 1..{}'.format(i, n))
  return _plain(['x{}'.format(k) for k in range(1, n + 1)], Var('x{}'.format(i)))


def numeral(n: int):
  body = Var('y')
  for _ in range(n):
    body = _app(Var('x'), body)
  return _plain('x y', body)


## Approximants

@dataclass(frozen=True)
class Bottom:
  """No head normal form. `proved` is false when only the fuel ran out."""
  proved: bool = True


@dataclass(frozen=True)
class Cut:
  pass


@dataclass(frozen=True)
class Node:
  binders: Tuple[str, ...]
  head: str
  children: Tuple['BohmApproximant', ...]


BohmApproximant = Union[Bottom, Cut, Node]


def _head_normalize(t, fuel):
  return reduction.evaluate_head(terms.wash(t), fuel, detect_cycles=True, keep_trace=False)


def bohm_approximant(t, depth, fuel=reduction.DEFAULT_FUEL) -> BohmApproximant:
  if depth < 0:
    raise ValueError('negative depth {}'.format(depth))
  if depth == 0:
    return Cut()
  result = _head_normalize(t, fuel)
  if not result.normal():
    return Bottom(proved=result.diverged())
  binders, head, args = reduction.spine(result.term)
  return Node(tuple(name for _, name in binders), head.name,
              tuple(bohm_approximant(arg, depth - 1, fuel) for _, arg in args))


def format_approximant(a: BohmApproximant) -> str:
  if isinstance(a, Bottom):
    return '_|_' if a.proved else '_|_?'
  if isinstance(a, Cut):
    return '...'
  body = a.head
  for child in a.children:
    text = format_approximant(child)
    body += ' ' + (text if isinstance(child, (Bottom, Cut)) or
                   (not child.binders and not child.children) else '(' + text + ')')
  if a.binders:
    return '\\{}. {}'.format(' '.join(a.binders), body)
  return body


## Böhm preorder up to η-reductions

@dataclass(frozen=True)
class SpineMatch:
  """One node of a comparison: spine sizes of both head normal forms.

  `child` is the (zero-based) argument followed below this node, or None at
  the node where the comparison failed.
  """
  head: str
  head_bound: bool
  lhs_binders: int
  lhs_args: int
  rhs_binders: int
  rhs_args: int
  child: Union[int, None] = None


def _canonical(h, names):
  """Renames the binders of the hnf `h` to `names`, returning (head, args)."""
  binders, head, args = reduction.spine(h)
  body = _app(head, *(arg for _, arg in args))
  for (_, binder), name in reversed(list(zip(binders, names))):
    body = terms.substitute(body, binder, Var(name))
  _, head, args = reduction.spine(body)
  return head, [arg for _, arg in args]


def _fresh_names(count, avoid):
  names = []
  for _ in range(count):
    name = terms.fresh_name('z', avoid)
    avoid.add(name)
    names.append(name)
  return names


def bohm_leq_eta_red(t, u, depth, fuel=reduction.DEFAULT_FUEL):
  """Decides t ⊑ u in the Böhm preorder up to η-reductions, to `depth`.

  Fails carries the failing path, the spine data along it and the reason:
  'eta-gap' when u η-expands t at the failing node, 'bohm' for any other
  difference of Böhm trees.
  """
  t, u = terms.wash(t), terms.wash(u)
  avoid = set(terms.all_names(t) | terms.all_names(u))
  result = _compare(t, u, depth, fuel, avoid, ())
  logging.debug('bohm-eta verdict {} at depth {}'.format(result.label(), depth))
  return result


def _compare(t, u, depth, fuel, avoid, trail):
  if depth <= 0:
    return verdict.unknown('depth', {'trail': trail})
  rt = _head_normalize(t, fuel)
  if rt.diverged():
    return verdict.holds({'nodes': 1})
  if not rt.normal():
    return verdict.unknown('fuel', {'trail': trail, 'term': t})
  ru = _head_normalize(u, fuel)
  if ru.diverged():
    return _failure('bohm', trail, t, u)
  if not ru.normal():
    return verdict.unknown('fuel', {'trail': trail, 'term': u})

  t_binders, _, t_args = reduction.spine(rt.term)
  u_binders, _, u_args = reduction.spine(ru.term)
  names = _fresh_names(max(len(t_binders), len(u_binders)), avoid)
  t_head, t_args = _canonical(rt.term, names)
  u_head, u_args = _canonical(ru.term, names)
  node = SpineMatch(t_head.name, t_head.name in names[:len(t_binders)],
                    len(t_binders), len(t_args), len(u_binders), len(u_args))
  extra = len(t_binders) - len(u_binders)
  if t_head != u_head or len(t_args) - len(u_args) != extra:
    return _failure('bohm', trail + (node,), t, u)
  if extra < 0:
    return _failure('eta-gap', trail + (node,), t, u)

  pairs = list(zip(t_args, u_args))
  pairs += [(t_args[len(u_args) + j], Var(names[len(u_binders) + j])) for j in range(extra)]
  found = []
  for idx, (lhs, rhs) in enumerate(pairs):
    below = trail + (dataclasses.replace(node, child=idx),)
    sub = _compare(lhs, rhs, depth - 1, fuel, avoid, below)
    if sub.fails():
      return sub
    found.append(sub)
  for sub in found:
    if not sub.definite():
      return sub
  return verdict.holds({'nodes': 1 + sum(sub.witness['nodes'] for sub in found)})


def _failure(reason, trail, t, u):
  path = tuple(node.child for node in trail if node.child is not None)
  return verdict.fails({'path': path, 'trail': trail, 'lhs': t, 'rhs': u}, reason)
