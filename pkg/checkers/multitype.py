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

"""The checkers multi type system.

Linear types are atoms or colored arrows `M ->a L`; multi types are finite
multisets of linear types; environments map variables to multi types. A
`Derivation` is a full typing tree built with the rule constructors `ax`,
`many`, `lam` and `app`, which compute each conclusion from the premises.
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
import itertools
from typing import Optional, Tuple, Union

from checkers.term import Abs, App, Color, Term, Var


@dataclass(frozen=True)
class Atom:
  name: str


@dataclass(frozen=True)
class Arrow:
  arg: 'MultiType'
  color: Color
  result: 'LinearType'


LinearType = Union[Atom, Arrow]


def type_key(ltype):
  """Total structural order on linear types, used to canonicalize multisets."""
  if isinstance(ltype, Atom):
    return (0, ltype.name)
  return (1, ltype.arg.key(), ltype.color.value, type_key(ltype.result))


@dataclass(frozen=True)
class MultiType:
  elems: Tuple[LinearType, ...] = ()

  def __post_init__(self):
    object.__setattr__(self, 'elems', tuple(sorted(self.elems, key=type_key)))

  def key(self):
    return tuple(type_key(elem) for elem in self.elems)

  def __add__(self, other):
    return MultiType(self.elems + other.elems)

  def __len__(self):
    return len(self.elems)

  def __iter__(self):
    return iter(self.elems)

  def minus(self, other) -> Optional['MultiType']:
    """self - other as multisets, or None if other is not contained in self."""
    remaining = Counter(self.elems)
    remaining.subtract(Counter(other.elems))
    if any(count < 0 for count in remaining.values()):
      return None
    return MultiType(tuple(remaining.elements()))

  def distinct(self):
    seen = []
    for elem in self.elems:
      if elem not in seen:
        seen.append(elem)
    return seen


EMPTY = MultiType(())


def multi(*elems):
  return MultiType(tuple(elems))


@dataclass(frozen=True)
class TypeEnv:
  """A finite-support map from variables to multi types.

  Bindings to the empty multi type are dropped, so lookups outside the
  support yield the empty multi type and equality is extensional.
  """
  bindings: Tuple[Tuple[str, MultiType], ...] = ()

  def __post_init__(self):
    items = (self.bindings.items() if isinstance(self.bindings, dict)
             else self.bindings)
    merged = {}
    for name, mtype in items:
      merged[name] = merged.get(name, EMPTY) + mtype
    object.__setattr__(
        self, 'bindings',
        tuple(sorted(((name, mtype) for name, mtype in merged.items() if mtype.elems),
                     key=lambda binding: binding[0])))

  def get(self, name) -> MultiType:
    for bound, mtype in self.bindings:
      if bound == name:
        return mtype
    return EMPTY

  def bind(self, name, mtype):
    return TypeEnv(tuple(b for b in self.bindings if b[0] != name) + ((name, mtype),))

  def without(self, name):
    return TypeEnv(tuple(b for b in self.bindings if b[0] != name))

  def support(self):
    return tuple(name for name, _ in self.bindings)

  def __add__(self, other):
    return TypeEnv(self.bindings + other.bindings)

  def __iter__(self):
    return iter(self.bindings)

  def minus(self, other) -> Optional['TypeEnv']:
    result = {}
    for name in set(self.support()) | set(other.support()):
      rest = self.get(name).minus(other.get(name))
      if rest is None:
        return None
      result[name] = rest
    return TypeEnv(result)


EMPTY_ENV = TypeEnv(())


def singleton_env(name, ltype):
  return TypeEnv(((name, multi(ltype)),))


@dataclass(frozen=True)
class Typing:
  """One element (Γ, L, k) of the colored interpretation of a term."""
  env: TypeEnv
  type: LinearType
  index: int


def xor_color(a: Color, b: Color) -> int:
  return 0 if a is b else 1


def wash_type(obj):
  """The uncolored skeleton of a type, multi type or environment."""
  if isinstance(obj, Atom):
    return obj
  if isinstance(obj, Arrow):
    return ('->', wash_type(obj.arg), wash_type(obj.result))
  if isinstance(obj, MultiType):
    return tuple(sorted((wash_type(elem) for elem in obj.elems), key=repr))
  return tuple((name, wash_type(mtype)) for name, mtype in obj.bindings)


def black_arrows(obj) -> int:
  if isinstance(obj, Atom):
    return 0
  if isinstance(obj, Arrow):
    own = 1 if obj.color is Color.BLACK else 0
    return own + black_arrows(obj.arg) + black_arrows(obj.result)
  if isinstance(obj, MultiType):
    return sum(black_arrows(elem) for elem in obj.elems)
  if isinstance(obj, TypeEnv):
    return sum(black_arrows(mtype) for _, mtype in obj.bindings)
  return black_arrows(obj[0]) + black_arrows(obj[1])


def type_depth(obj) -> int:
  if isinstance(obj, Atom):
    return 0
  if isinstance(obj, Arrow):
    return 1 + max([type_depth(obj.result)] + [type_depth(e) for e in obj.arg])
  return max([type_depth(e) for e in obj] or [0])


def multitypes(pool, width):
  """All multisets of at most `width` elements drawn from `pool`, smallest first."""
  for count in range(width + 1):
    for combo in itertools.combinations_with_replacement(pool, count):
      yield MultiType(combo)


def linear_types(depth, width, atoms=('X',)):
  """Every linear type of arrow depth <= depth over multisets of width <= width."""
  types = [Atom(name) for name in atoms]
  for _ in range(depth):
    previous = list(types)
    arrows = [Arrow(mtype, color, result)
              for mtype in multitypes(previous, width)
              for color in (Color.BLACK, Color.WHITE)
              for result in previous]
    types = [Atom(name) for name in atoms]
    types.extend(arrow for arrow in arrows if arrow not in types)
  return types


## Derivations

class Rule(Enum):
  AX = 'ax'
  MANY = 'many'
  LAM = 'lam'
  APP = 'app'


@dataclass(frozen=True)
class Derivation:
  rule: Rule
  env: TypeEnv
  term: Term
  type: Union[LinearType, MultiType]
  index: int
  children: Tuple['Derivation', ...] = ()

  def typing(self) -> Typing:
    return Typing(self.env, self.type, self.index)


def ax(name, ltype) -> Derivation:
  return Derivation(Rule.AX, singleton_env(name, ltype), Var(name), ltype, 0)


def many(term, children) -> Derivation:
  children = tuple(children)
  for child in children:
    if child.term != term:
      raise TermMismatch('many: premise is for a different term')
    if isinstance(child.type, MultiType):
      raise TypeMismatch('many: premises must conclude linear types')
  env = EMPTY_ENV
  for child in children:
    env = env + child.env
  return Derivation(Rule.MANY, env, term,
                    MultiType(tuple(child.type for child in children)),
                    sum(child.index for child in children), children)


def lam(color, binder, child) -> Derivation:
  if color is None:
    raise UncoloredTerm('cannot type an uncolored abstraction')
  if isinstance(child.type, MultiType):
    raise TypeMismatch('lam: premise must conclude a linear type')
  return Derivation(Rule.LAM, child.env.without(binder),
                    Abs(color, binder, child.term),
                    Arrow(child.env.get(binder), color, child.type),
                    child.index, (child,))


def app(color, fun, arg) -> Derivation:
  if color is None:
    raise UncoloredTerm('cannot type an uncolored application')
  if not isinstance(fun.type, Arrow):
    raise TypeMismatch('app: function premise has no arrow type')
  if arg.rule is not Rule.MANY or arg.type != fun.type.arg:
    raise TypeMismatch('app: argument does not match {}'.format(fun.type.arg))
  return Derivation(Rule.APP, fun.env + arg.env, App(color, fun.term, arg.term),
                    fun.type.result,
                    fun.index + arg.index + xor_color(fun.type.color, color),
                    (fun, arg))


def find_derivation_error(d: Derivation, path=()):
  """Returns (path, message) for the first node breaking its rule, or None.

  The path lists child indices from the root.
  """
  problem = _local_error(d)
  if problem:
    return path, problem
  for idx, child in enumerate(d.children):
    found = find_derivation_error(child, path + (idx,))
    if found:
      return found
  return None


def check_derivation(d: Derivation) -> bool:
  return find_derivation_error(d) is None


def _local_error(d: Derivation):
  if d.index < 0:
    return 'negative index'
  if d.rule is Rule.AX:
    if not isinstance(d.term, Var) or d.children:
      return 'ax must type a variable without premises'
    if isinstance(d.type, MultiType):
      return 'ax concludes a linear type'
    if d.env != singleton_env(d.term.name, d.type):
      return 'ax environment must be {}:[{}]'.format(d.term.name, d.type)
    if d.index != 0:
      return 'ax has index 0'
    return None

  if d.rule is Rule.MANY:
    if not isinstance(d.type, MultiType):
      return 'many concludes a multi type'
    for child in d.children:
      if child.term != d.term or isinstance(child.type, MultiType):
        return 'many premises must type the same term with linear types'
    expected = MultiType(tuple(child.type for child in d.children))
    if d.type != expected:
      return 'many type must be the sum of premise types'
    env = EMPTY_ENV
    for child in d.children:
      env = env + child.env
    if d.env != env:
      return 'many environment must be the sum of premise environments'
    if d.index != sum(child.index for child in d.children):
      return 'many index must be the sum of premise indices'
    return None

  if d.rule is Rule.LAM:
    if not isinstance(d.term, Abs) or len(d.children) != 1:
      return 'lam must type an abstraction with one premise'
    child = d.children[0]
    if d.term.color is None:
      return 'lam on an uncolored abstraction'
    if child.term != d.term.body or isinstance(child.type, MultiType):
      return 'lam premise must type the body with a linear type'
    expected = Arrow(child.env.get(d.term.binder), d.term.color, child.type)
    if d.type != expected:
      return 'lam type must be {}'.format(expected)
    if d.env != child.env.without(d.term.binder):
      return 'lam environment must drop the binder'
    if d.index != child.index:
      return 'lam index must equal premise index'
    return None

  if not isinstance(d.term, App) or len(d.children) != 2:
    return 'app must type an application with two premises'
  fun, arg = d.children
  if d.term.color is None:
    return 'app on an uncolored application'
  if fun.term != d.term.fun or arg.term != d.term.arg:
    return 'app premises must type the two sides'
  if not isinstance(fun.type, Arrow):
    return 'app function premise must have an arrow type'
  if arg.rule is not Rule.MANY or arg.type != fun.type.arg:
    return 'app argument premise must be a many rule for the arrow source'
  if d.type != fun.type.result:
    return 'app type must be the arrow target'
  if d.env != fun.env + arg.env:
    return 'app environment must be the sum of premise environments'
  expected = fun.index + arg.index + xor_color(fun.type.color, d.term.color)
  if d.index != expected:
    return 'app index must be {}'.format(expected)
  return None


def applicative_size(d: Derivation) -> int:
  own = 1 if d.rule is Rule.APP else 0
  return own + sum(applicative_size(child) for child in d.children)


class TypingError(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg

class TermMismatch(TypingError):
  pass

class TypeMismatch(TypingError):
  pass

class UncoloredTerm(TypingError):
  pass
