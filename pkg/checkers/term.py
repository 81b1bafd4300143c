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

"""Checkers terms, plain λ-terms and one-hole contexts.

A checkers term is a λ-term whose abstractions and applications each carry a
color. Plain λ-terms use the same classes with `color=None` on every node, so
that substitution, printing and α-equivalence are shared.
"""

from dataclasses import dataclass
from enum import Enum
import functools
import re
from typing import FrozenSet, Optional, Tuple, Union


class Color(Enum):
  WHITE = 'w'
  BLACK = 'b'

  def flip(self):
    return Color.BLACK if self is Color.WHITE else Color.WHITE

  def glyph(self):
    return '∘' if self is Color.WHITE else '•'


def color_from(tag: str) -> Color:
  """Maps 'w'/'b' or the glyphs '∘'/'•' to a Color."""
  for color in Color:
    if tag in (color.value, color.glyph()):
      return color
  raise ValueError('unknown color "{}"'.format(tag))


@dataclass(frozen=True)
class Var:
  name: str

  @functools.cached_property
  def free_vars(self) -> FrozenSet[str]:
    return frozenset((self.name,))


@dataclass(frozen=True)
class Abs:
  color: Optional[Color]
  binder: str
  body: 'Term'

  @functools.cached_property
  def free_vars(self) -> FrozenSet[str]:
    return self.body.free_vars - {self.binder}


@dataclass(frozen=True)
class App:
  color: Optional[Color]
  fun: 'Term'
  arg: 'Term'

  @functools.cached_property
  def free_vars(self) -> FrozenSet[str]:
    return self.fun.free_vars | self.arg.free_vars


Term = Union[Var, Abs, App]


# Path selectors address subterms: BODY of an abstraction, FUN and ARG of an
# application.
class Sel(Enum):
  BODY = 'body'
  FUN = 'fun'
  ARG = 'arg'


Path = Tuple[Sel, ...]


def abstraction(color, binders, body):
  """Builds λx1...xn.body with every binder of the given color."""
  if isinstance(binders, str):
    binders = binders.split()
  for binder in reversed(binders):
    body = Abs(color, binder, body)
  return body


def application(color, fun, *args):
  """Builds fun @ a1 @ ... @ an, left-associated."""
  for arg in args:
    fun = App(color, fun, arg)
  return fun


def free_vars(t: Term) -> FrozenSet[str]:
  return t.free_vars


def all_names(t: Term) -> FrozenSet[str]:
  """Every variable name occurring in `t`, bound or free."""
  names = set()
  stack = [t]
  while stack:
    node = stack.pop()
    if isinstance(node, Var):
      names.add(node.name)
    elif isinstance(node, Abs):
      names.add(node.binder)
      stack.append(node.body)
    else:
      stack.append(node.fun)
      stack.append(node.arg)
  return frozenset(names)


_TRAILING_INDEX = re.compile(r"[0-9']+$")

def fresh_name(base: str, avoid) -> str:
  stem = _TRAILING_INDEX.sub('', base) or 'v'
  idx = 1
  while '{}{}'.format(stem, idx) in avoid:
    idx += 1
  return '{}{}'.format(stem, idx)


def substitute(t: Term, x: str, u: Term) -> Term:
  """Capture-avoiding t{x:=u}.

  A binder that would capture a free variable of `u` is renamed to a name
  fresh for `u`, the body and `x`. Subterms without free occurrences of `x`
  are returned as they are.
  """
  if x not in t.free_vars:
    return t
  if isinstance(t, Var):
    return u
  if isinstance(t, App):
    return App(t.color, substitute(t.fun, x, u), substitute(t.arg, x, u))
  binder, body = t.binder, t.body
  if binder in u.free_vars:
    renamed = renamed_binder(t, x, u)
    body = substitute(body, binder, Var(renamed))
    binder = renamed
  return Abs(t.color, binder, substitute(body, x, u))


def renamed_binder(t: Abs, x: str, u: Term) -> str:
  """The name `substitute` gives to the binder of `t` when it captures."""
  return fresh_name(t.binder, all_names(t.body) | u.free_vars | {x})


def paint(color: Color, t: Term) -> Term:
  if isinstance(t, Var):
    return t
  if isinstance(t, Abs):
    return Abs(color, t.binder, paint(color, t.body))
  return App(color, paint(color, t.fun), paint(color, t.arg))


def wash(t: Term) -> Term:
  if isinstance(t, Var):
    return t
  if isinstance(t, Abs):
    return Abs(None, t.binder, wash(t.body))
  return App(None, wash(t.fun), wash(t.arg))


def colors_of(t: Term):
  stack = [t]
  seen = set()
  while stack:
    node = stack.pop()
    if isinstance(node, Abs):
      seen.add(node.color)
      stack.append(node.body)
    elif isinstance(node, App):
      seen.add(node.color)
      stack.append(node.fun)
      stack.append(node.arg)
  return seen


def is_plain(t: Term) -> bool:
  return colors_of(t) <= {None}


def is_colored(t: Term) -> bool:
  return None not in colors_of(t)


def size(t: Term) -> int:
  count = 0
  stack = [t]
  while stack:
    node = stack.pop()
    count += 1
    if isinstance(node, Abs):
      stack.append(node.body)
    elif isinstance(node, App):
      stack.append(node.fun)
      stack.append(node.arg)
  return count


def debruijn_key(t: Term, scope=()):
  """A hashable key equal for exactly the α-equivalent terms."""
  if isinstance(t, Var):
    for idx, name in enumerate(reversed(scope)):
      if name == t.name:
        return ('b', idx)
    return ('f', t.name)
  if isinstance(t, Abs):
    return ('abs', t.color, debruijn_key(t.body, scope + (t.binder,)))
  return ('app', t.color, debruijn_key(t.fun, scope), debruijn_key(t.arg, scope))


def alpha_eq(t: Term, u: Term) -> bool:
  return t == u or debruijn_key(t) == debruijn_key(u)


def subterm_at(t: Term, path: Path) -> Term:
  for sel in path:
    t = _child(t, sel)
  return t


def replace_at(t: Term, path: Path, u: Term) -> Term:
  if not path:
    return u
  sel, rest = path[0], path[1:]
  child = replace_at(_child(t, sel), rest, u)
  if sel is Sel.BODY:
    return Abs(t.color, t.binder, child)
  if sel is Sel.FUN:
    return App(t.color, child, t.arg)
  return App(t.color, t.fun, child)


def _child(t: Term, sel: Sel) -> Term:
  if sel is Sel.BODY and isinstance(t, Abs):
    return t.body
  if sel is Sel.FUN and isinstance(t, App):
    return t.fun
  if sel is Sel.ARG and isinstance(t, App):
    return t.arg
  raise BadPath('cannot select "{}" in {}'.format(sel.value, type(t).__name__))


## Contexts

@dataclass(frozen=True)
class Hole:
  pass


@dataclass(frozen=True)
class CAbs:
  color: Optional[Color]
  binder: str
  body: 'Context'


@dataclass(frozen=True)
class AppLeft:
  color: Optional[Color]
  fun: 'Context'
  arg: Term


@dataclass(frozen=True)
class AppRight:
  color: Optional[Color]
  fun: Term
  arg: 'Context'


Context = Union[Hole, CAbs, AppLeft, AppRight]

HOLE = Hole()


def plug(c: Context, t: Term) -> Term:
  """Replaces the hole of `c` by `t`. Free variables of `t` may be captured."""
  if isinstance(c, Hole):
    return t
  if isinstance(c, CAbs):
    return Abs(c.color, c.binder, plug(c.body, t))
  if isinstance(c, AppLeft):
    return App(c.color, plug(c.fun, t), c.arg)
  return App(c.color, c.fun, plug(c.arg, t))


def compose(c: Context, inner: Context) -> Context:
  """The context C⟨C′⟩: plugging into it is plugging into `inner` first."""
  if isinstance(c, Hole):
    return inner
  if isinstance(c, CAbs):
    return CAbs(c.color, c.binder, compose(c.body, inner))
  if isinstance(c, AppLeft):
    return AppLeft(c.color, compose(c.fun, inner), c.arg)
  return AppRight(c.color, c.fun, compose(c.arg, inner))


def paint_context(color: Color, c: Context) -> Context:
  if isinstance(c, Hole):
    return c
  if isinstance(c, CAbs):
    return CAbs(color, c.binder, paint_context(color, c.body))
  if isinstance(c, AppLeft):
    return AppLeft(color, paint_context(color, c.fun), paint(color, c.arg))
  return AppRight(color, paint(color, c.fun), paint_context(color, c.arg))


def wash_context(c: Context) -> Context:
  if isinstance(c, Hole):
    return c
  if isinstance(c, CAbs):
    return CAbs(None, c.binder, wash_context(c.body))
  if isinstance(c, AppLeft):
    return AppLeft(None, wash_context(c.fun), wash(c.arg))
  return AppRight(None, wash(c.fun), wash_context(c.arg))


def applicative_context(color: Color, binders, substitutes, args) -> Context:
  """((λy1...yr.⟨·⟩) @ s1 ... @ sr) @ a1 ... @ an, all in one color."""
  c = HOLE
  for binder in reversed(binders):
    c = CAbs(color, binder, c)
  for arg in tuple(substitutes) + tuple(args):
    c = AppLeft(color, c, arg)
  return c


class BadPath(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg
