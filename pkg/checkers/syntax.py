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

"""Parsing and printing of the concrete syntax.

The grammar lives in `checkers.lark`. ASCII forms (`\\b x. t`, `t @w u`,
`M ->b L`) and the Unicode glyphs (`λ•x. t`, `t @∘ u`, `M →• L`) are accepted
interchangeably; printing is ASCII unless `unicode=True`.
"""

from dataclasses import dataclass
import logging

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from checkers import multitype
from checkers.multitype import Arrow, Atom, MultiType, TypeEnv, Typing
from checkers.term import Abs, App, AppLeft, AppRight, CAbs, HOLE, Hole, Var, color_from

_PARSER = Lark.open('checkers.lark', rel_to=__file__, parser='lalr',
                    start=['term', 'linear', 'multitype', 'env', 'typing'])


@dataclass(frozen=True)
class SourceSpan:
  start: int
  end: int


def _tag_color(token):
  """The color named by a LAMBDA, APP_OP or ARROW token, or None if plain."""
  tag = str(token).lstrip('\\@->→λ')
  return color_from(tag) if tag else None


@v_args(inline=True)
class _Builder(Transformer):

  def var(self, name):
    return Var(str(name))

  def hole(self, _):
    return HOLE

  def abstraction(self, token, *rest):
    names, body = rest[:-1], rest[-1]
    color = _tag_color(token)
    for name in reversed(names):
      body = Abs(color, str(name), body)
    return body

  def app_op(self, fun, token, arg):
    return App(_tag_color(token), fun, arg)

  def app_plain(self, fun, arg):
    return App(None, fun, arg)

  def atom(self, name):
    return Atom(str(name))

  def arrow(self, mtype, token, result):
    return Arrow(mtype, _tag_color(token), result)

  def multitype(self, *elems):
    return MultiType(tuple(elems))

  def empty_multitype(self, _):
    return multitype.EMPTY

  def binding(self, name, mtype):
    return (str(name), mtype)

  def env(self, *bindings):
    names = [name for name, _ in bindings]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
      raise ValueError('variable bound twice in environment: {}'.format(', '.join(duplicates)))
    return TypeEnv(tuple(bindings))

  def typing(self, env, _, ltype, index):
    return Typing(env, ltype, int(index))


def _parse(src: str, start: str):
  try:
    tree = _PARSER.parse(src, start=start)
  except UnexpectedInput as e:
    raise _parse_error(src, e)
  try:
    return _Builder().transform(tree)
  except VisitError as e:
    raise ParseError(str(e.orig_exc), SourceSpan(0, len(src)), [])


def _parse_error(src, e):
  token = getattr(e, 'token', None)
  start = getattr(e, 'pos_in_stream', None)
  if start is None and token is not None:
    start = token.start_pos
  if start is None or start < 0:
    start = len(src)
  end = start
  if token is not None and getattr(token, 'end_pos', None) is not None:
    end = max(start, token.end_pos)
  expected = sorted(getattr(e, 'expected', None) or getattr(e, 'allowed', None) or [])
  message = 'unexpected input at offset {}'.format(start)
  if expected:
    message += '; expected one of: {}'.format(', '.join(expected))
  logging.debug('parse error in "{}": {}'.format(src, message))
  return ParseError(message, SourceSpan(start, min(end, len(src))), expected)


def count_holes(t):
  if isinstance(t, Hole):
    return 1
  if isinstance(t, Var):
    return 0
  if isinstance(t, Abs):
    return count_holes(t.body)
  return count_holes(t.fun) + count_holes(t.arg)


def term_as_context(t):
  if isinstance(t, Hole):
    return t
  if isinstance(t, Abs):
    return CAbs(t.color, t.binder, term_as_context(t.body))
  if count_holes(t.fun):
    return AppLeft(t.color, term_as_context(t.fun), t.arg)
  return AppRight(t.color, t.fun, term_as_context(t.arg))


def parse_term(src: str):
  t = _parse(src, 'term')
  if count_holes(t):
    raise UnboundHole('hole "[]" is not allowed in a term: "{}"'.format(src))
  return t


def parse_context(src: str):
  t = _parse(src, 'term')
  holes = count_holes(t)
  if holes != 1:
    raise HoleCountError(
        'a context needs exactly one hole, found {} in "{}"'.format(holes, src))
  return term_as_context(t)


def parse_type(src: str):
  return _parse(src, 'linear')


def parse_multitype(src: str):
  return _parse(src, 'multitype')


def parse_env(src: str):
  return _parse(src, 'env')


def parse_typing(src: str):
  return _parse(src, 'typing')


## Printing

def _lambda(color, unicode, binder=''):
  if color is None:
    if unicode:
      return 'λ'
    return '\\ ' if binder in ('b', 'w') else '\\'
  return 'λ' + color.glyph() if unicode else '\\' + color.value + ' '


def _app_op(color, unicode):
  if color is None:
    return ' '
  return ' @{} '.format(color.glyph() if unicode else color.value)


def print_term(t, unicode=False) -> str:
  """Prints `t` with the fewest parentheses the grammar allows.

  Holes print as `[]`, so the same printer serves contexts.
  """
  if isinstance(t, Hole):
    return '[]'
  if isinstance(t, Var):
    return t.name
  if isinstance(t, Abs):
    return '{}{}. {}'.format(_lambda(t.color, unicode, t.binder), t.binder,
                             print_term(t.body, unicode))
  fun = print_term(t.fun, unicode)
  if isinstance(t.fun, Abs):
    fun = '(' + fun + ')'
  arg = print_term(t.arg, unicode)
  if isinstance(t.arg, (Abs, App)):
    arg = '(' + arg + ')'
  return fun + _app_op(t.color, unicode) + arg


def context_as_term(c):
  if isinstance(c, Hole):
    return c
  if isinstance(c, CAbs):
    return Abs(c.color, c.binder, context_as_term(c.body))
  if isinstance(c, AppLeft):
    return App(c.color, context_as_term(c.fun), c.arg)
  return App(c.color, c.fun, context_as_term(c.arg))


def print_context(c, unicode=False) -> str:
  return print_term(context_as_term(c), unicode)


def print_type(ltype, unicode=False) -> str:
  if isinstance(ltype, Atom):
    return ltype.name
  arrow = '→' + ltype.color.glyph() if unicode else '->' + ltype.color.value
  return '{} {} {}'.format(print_multitype(ltype.arg, unicode), arrow,
                           print_type(ltype.result, unicode))


def print_multitype(mtype, unicode=False) -> str:
  return '[{}]'.format(', '.join(print_type(elem, unicode) for elem in mtype.elems))


def print_env(env, unicode=False) -> str:
  return ', '.join('{} : {}'.format(name, print_multitype(mtype, unicode))
                   for name, mtype in env.bindings)


def print_typing(typing, unicode=False) -> str:
  env = print_env(typing.env, unicode)
  turnstile = '⊢' if unicode else '|-'
  return '{}{} {} @ {}'.format(env + ' ' if env else '', turnstile,
                               print_type(typing.type, unicode), typing.index)


def print_any_type(obj, unicode=False) -> str:
  if isinstance(obj, MultiType):
    return print_multitype(obj, unicode)
  return print_type(obj, unicode)


def print_derivation(d, unicode=False, indent='  ') -> str:
  """One judgement per line, premises indented under their conclusion."""
  lines = []

  def walk(node, depth):
    lines.append('{}{}: {} |-{} {} : {}'.format(
        indent * depth, node.rule.value, print_env(node.env, unicode),
        node.index, print_term(node.term, unicode),
        print_any_type(node.type, unicode)))
    for child in node.children:
      walk(child, depth + 1)

  walk(d, 0)
  return '\n'.join(lines)


class ParseError(Exception):
  def __init__(self, msg, span, expected):
    super().__init__(msg)
    self.msg = msg
    self.span = span
    self.expected = expected

class UnboundHole(ParseError):
  def __init__(self, msg):
    super().__init__(msg, None, [])

class HoleCountError(ParseError):
  def __init__(self, msg):
    super().__init__(msg, None, [])
