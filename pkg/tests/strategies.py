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

"""Hypothesis strategies for terms, contexts, types and derivations."""

from hypothesis import assume, strategies as st
from hypothesis.strategies import DrawFn, composite

from checkers import interpretation
from checkers import reduction
from checkers.interpretation import TypeBound
from checkers.multitype import Arrow, Atom, MultiType, TypeEnv
from checkers.term import Abs, App, AppLeft, AppRight, CAbs, Color, HOLE, Var

NAMES = ('x', 'y', 'z')
ATOMS = ('X', 'Y')
SMALL_BOUND = TypeBound(width=1, depth=1, result_depth=1, limit=4)
SMALL_FUEL = 200

colors = st.sampled_from((Color.WHITE, Color.BLACK))


@composite
def terms(draw: DrawFn, depth=4, colored=True, names=NAMES):
  color = draw(colors) if colored else None
  if depth <= 0:
    return Var(draw(st.sampled_from(names)))
  kind = draw(st.sampled_from(('var', 'abs', 'app', 'app')))
  if kind == 'var':
    return Var(draw(st.sampled_from(names)))
  if kind == 'abs':
    return Abs(color, draw(st.sampled_from(names)),
               draw(terms(depth - 1, colored, names)))
  return App(color, draw(terms(depth - 1, colored, names)),
             draw(terms(depth - 1, colored, names)))


def plain_terms(depth=4):
  return terms(depth, colored=False)


@composite
def contexts(draw: DrawFn, depth=3):
  """Colored one-hole contexts of at most `depth` constructors."""
  if depth <= 0:
    return HOLE
  kind = draw(st.sampled_from(('hole', 'abs', 'left', 'right')))
  if kind == 'hole':
    return HOLE
  color = draw(colors)
  inner = draw(contexts(depth - 1))
  if kind == 'abs':
    return CAbs(color, draw(st.sampled_from(NAMES)), inner)
  other = draw(terms(2))
  if kind == 'left':
    return AppLeft(color, inner, other)
  return AppRight(color, other, inner)


@composite
def linear_types(draw: DrawFn, depth=3):
  if depth <= 0 or draw(st.booleans()):
    return Atom(draw(st.sampled_from(ATOMS)))
  arg = draw(multitypes(depth - 1))
  return Arrow(arg, draw(colors), draw(linear_types(depth - 1)))


@composite
def multitypes(draw: DrawFn, depth=2):
  return MultiType(tuple(draw(st.lists(linear_types(depth), max_size=2))))


@composite
def envs(draw: DrawFn, depth=2):
  names = draw(st.lists(st.sampled_from(NAMES), max_size=2, unique=True))
  return TypeEnv(tuple((name, draw(multitypes(depth))) for name in names))


@composite
def normalizing_terms(draw: DrawFn, depth=4):
  """Colored terms with a head normal form within SMALL_FUEL."""
  t = draw(terms(depth))
  result = reduction.evaluate_head(t, SMALL_FUEL, detect_cycles=True, max_size=400,
                                   keep_trace=False)
  assume(result.normal())
  return t


@composite
def typed_terms(draw: DrawFn, depth=4):
  """(term, derivation) pairs drawn from the enumerated interpretation."""
  t = draw(normalizing_terms(depth))
  found = list(interpretation.enumerate_typings(t, SMALL_BOUND, SMALL_FUEL))
  assume(found)
  _, d = draw(st.sampled_from(found))
  return t, d
