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

"""Transformations on derivations.

Splitting and merging of multi type derivations, substitution and
anti-substitution, and the quantitative subject reduction and expansion that
transport a derivation along a reduction step. Every function here builds its
result with the rule constructors of `checkers.multitype`, so outputs always
satisfy `check_derivation`.
"""

from collections import Counter
import logging

from checkers import reduction
from checkers import term as terms
from checkers.multitype import (EMPTY, Arrow, Atom, Derivation, MultiType, Rule,
                                TypeMismatch, TermMismatch, TypingError, UncoloredTerm,
                                app, ax, lam, many)
from checkers.term import Abs, App, Sel, Var


def type_hnf_zero(h, atom='X') -> Derivation:
  """Types a head normal form λx1..xn.y b1@t1..bm@tm with index 0.

  The head variable receives []->b1 ... []->bm X, so every application is
  silent at the type level and every argument is typed with the empty multi
  type.
  """
  if not reduction.is_hnf(h):
    raise NotHnf('not a head normal form: {}'.format(h))
  binders = []
  body = h
  while isinstance(body, Abs):
    binders.append((body.color, body.binder))
    body = body.body
  args = []
  while isinstance(body, App):
    args.append((body.color, body.arg))
    body = body.fun
  args.reverse()
  head_type = Atom(atom)
  for color, _ in reversed(args):
    if color is None:
      raise UncoloredTerm('cannot type an uncolored application')
    head_type = Arrow(EMPTY, color, head_type)
  d = ax(body.name, head_type)
  for color, arg in args:
    d = app(color, d, many(arg, ()))
  for color, binder in reversed(binders):
    d = lam(color, binder, d)
  return d


def split_derivation(d: Derivation, first: MultiType, second: MultiType):
  """Splits a multi type derivation along first + second = d.type."""
  if d.rule is not Rule.MANY:
    raise BadPartition('only a many rule concludes a multi type')
  if first + second != d.type:
    raise BadPartition('{} + {} is not {}'.format(first, second, d.type))
  wanted = Counter(first.elems)
  left, right = [], []
  for child in d.children:
    if wanted[child.type] > 0:
      wanted[child.type] -= 1
      left.append(child)
    else:
      right.append(child)
  return many(d.term, left), many(d.term, right)


def merge_derivations(d1: Derivation, d2: Derivation) -> Derivation:
  if d1.term != d2.term:
    raise TermMismatch('cannot merge derivations of different terms')
  if d1.rule is not Rule.MANY or d2.rule is not Rule.MANY:
    raise TypeMismatch('only multi type derivations merge')
  return many(d1.term, d1.children + d2.children)


def _take(e: Derivation, need: MultiType):
  rest = e.type.minus(need)
  if rest is None:
    raise TypeMismatch('{} does not contain {}'.format(e.type, need))
  return split_derivation(e, need, rest)


def substitute_derivation(d: Derivation, x: str, e: Derivation) -> Derivation:
  """From Γ, x:M ⊢k t : T and Δ ⊢k' u : M builds Γ+Δ ⊢(k+k') t{x:=u} : T.

  The result types exactly `term.substitute(t, x, u)`, renamed binders
  included.
  """
  if e.rule is not Rule.MANY:
    raise TypeMismatch('the substituted derivation must be a many rule')
  if e.type != d.env.get(x):
    raise TypeMismatch('{} is typed {} but the substitute has {}'.format(
        x, d.env.get(x), e.type))
  return _substitute(d, x, e)


def _substitute(d, x, e):
  u = e.term
  if x not in d.term.free_vars:
    return d
  if d.rule is Rule.MANY:
    children = []
    for child in d.children:
      part, e = _take(e, child.env.get(x))
      children.append(_substitute(child, x, part))
    return many(terms.substitute(d.term, x, u), children)
  if d.rule is Rule.AX:
    return e.children[0]
  if d.rule is Rule.APP:
    fun, arg = d.children
    fun_part, arg_part = _take(e, fun.env.get(x))
    return app(d.term.color, _substitute(fun, x, fun_part), _substitute(arg, x, arg_part))
  child = d.children[0]
  binder = d.term.binder
  if binder in u.free_vars:
    renamed = terms.renamed_binder(d.term, x, u)
    child = _substitute(child, binder, _renaming(child, binder, renamed))
    binder = renamed
  return lam(d.term.color, binder, _substitute(child, x, e))


def _renaming(d, old, new):
  """The many derivation that renames `old` to `new` inside `d`."""
  return many(Var(new), [ax(new, ltype) for ltype in d.env.get(old)])


def _retarget(d, t):
  """Rebuilds `d` over the α-equivalent term `t`."""
  if d.rule is Rule.MANY:
    return many(t, [_retarget(child, t) for child in d.children])
  if d.rule is Rule.AX:
    return ax(t.name, d.type)
  if d.rule is Rule.LAM:
    return lam(t.color, t.binder, _retarget(d.children[0], t.body))
  fun, arg = d.children
  return app(t.color, _retarget(fun, t.fun), _retarget(arg, t.arg))


def anti_substitute(d: Derivation, t, x: str, u):
  """Splits a derivation of t{x:=u} into one for t and one for u.

  Returns (M, d_t, e) where d_t types t with x:M in its environment and e
  is a many derivation of u : M. `t` marks the occurrences of u as free
  occurrences of x.
  """
  target = terms.substitute(t, x, u)
  if not terms.alpha_eq(target, d.term):
    raise MarkingInvalid('substituting into the marking does not give the typed term')
  return _anti(_retarget(d, target), t, x, u)


def _anti(d, t, x, u):
  if d.rule is Rule.MANY:
    total, parts, pieces = EMPTY, [], many(u, ())
    for child in d.children:
      mtype, part, piece = _anti(child, t, x, u)
      total = total + mtype
      parts.append(part)
      pieces = merge_derivations(pieces, piece)
    return total, many(t, parts), pieces
  if x not in t.free_vars:
    return EMPTY, d, many(u, ())
  if isinstance(t, Var):
    return MultiType((d.type,)), ax(x, d.type), many(u, (d,))
  if isinstance(t, App):
    fun, arg = d.children
    m1, d_fun, e1 = _anti(fun, t.fun, x, u)
    m2, d_arg, e2 = _anti(arg, t.arg, x, u)
    return m1 + m2, app(t.color, d_fun, d_arg), merge_derivations(e1, e2)
  child = d.children[0]
  if t.binder in u.free_vars:
    renamed = terms.renamed_binder(t, x, u)
    body = terms.substitute(t.body, t.binder, Var(renamed))
    mtype, d_body, e = _anti(child, body, x, u)
    d_body = _substitute(d_body, renamed, _renaming(d_body, renamed, t.binder))
  else:
    mtype, d_body, e = _anti(child, t.body, x, u)
  return mtype, lam(t.color, t.binder, d_body), e


def _transport(d, path, replacement, fn):
  """Applies `fn` to every derivation node typing the subterm at `path`."""
  if d.rule is Rule.MANY:
    return many(terms.replace_at(d.term, path, replacement),
                [_transport(child, path, replacement, fn) for child in d.children])
  if not path:
    return fn(d)
  sel, rest = path[0], path[1:]
  if sel is Sel.BODY:
    return lam(d.term.color, d.term.binder,
               _transport(d.children[0], rest, replacement, fn))
  fun, arg = d.children
  if sel is Sel.FUN:
    return app(d.term.color, _transport(fun, rest, replacement, fn), arg)
  return app(d.term.color, fun, _transport(arg, rest, replacement, fn))


def subject_reduce(d: Derivation, step) -> Derivation:
  """Transports Γ ⊢k t : L along t -> t'.

  On a head step the applicative size drops by one, and the index drops by
  one exactly when the step is an interaction.
  """
  if not terms.alpha_eq(d.term, step.source):
    raise StepMismatch('the step does not start from the typed term')
  d = _retarget(d, step.source)
  redex = terms.subterm_at(step.source, step.path)
  if reduction.classify_redex(redex) is None:
    raise StepMismatch('no redex at the step position')

  def reduce_node(node):
    fun, arg = node.children
    if fun.rule is not Rule.LAM:
      raise StepMismatch('redex function is not typed by the abstraction rule')
    return _substitute(fun.children[0], redex.fun.binder, arg)

  result = _transport(d, step.path, reduction.contract(redex), reduce_node)
  if result.term != step.target:
    raise StepMismatch('transported derivation does not type the step target')
  logging.debug('subject reduction at {}: index {} -> {}'.format(
      reduction.format_path(step.path), d.index, result.index))
  return result


def subject_expand(d: Derivation, step) -> Derivation:
  """Transports Γ ⊢k' t' : L back along t -> t'.

  The expanded index is k' plus one for an interaction step.
  """
  if not terms.alpha_eq(d.term, step.target):
    raise StepMismatch('the step does not end in the typed term')
  d = _retarget(d, step.target)
  redex = terms.subterm_at(step.source, step.path)
  if reduction.classify_redex(redex) is None:
    raise StepMismatch('no redex at the step position')
  fun = redex.fun
  if fun.color is None or redex.color is None:
    raise UncoloredTerm('cannot expand through an uncolored redex')

  def expand(node):
    _, d_body, e = _anti(node, fun.body, fun.binder, redex.arg)
    return app(redex.color, lam(fun.color, fun.binder, d_body), e)

  result = _transport(d, step.path, redex, expand)
  if result.term != step.source:
    raise StepMismatch('expanded derivation does not type the step source')
  return result


def pull_back(d: Derivation, trace) -> Derivation:
  """Expands a derivation of the last term of `trace` back to its first."""
  for step in reversed(trace):
    d = subject_expand(d, step)
  return d


class NotHnf(TypingError):
  pass

class BadPartition(TypingError):
  pass

class MarkingInvalid(TypingError):
  pass

class StepMismatch(TypingError):
  pass
