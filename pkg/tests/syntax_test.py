#!/usr/bin/env python3
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

import unittest

from hypothesis import given, settings

from checkers import syntax
from checkers.multitype import EMPTY, Arrow, Atom, MultiType, TypeEnv, Typing
from checkers.term import Abs, App, AppLeft, CAbs, Color, HOLE, Var
from tests import strategies

B, W = Color.BLACK, Color.WHITE
X = Atom('X')


class TestParseTerm(unittest.TestCase):

  def test_colored_abstraction(self):
    self.assertEqual(Abs(B, 'x', Abs(B, 'y', Var('x'))), syntax.parse_term('\\b x y. x'))

  def test_unicode_glyphs(self):
    self.assertEqual(syntax.parse_term('\\w x. x @b x'), syntax.parse_term('λ∘x. x @• x'))

  def test_application_is_left_associative(self):
    self.assertEqual(App(W, App(B, Var('x'), Var('y')), Var('z')),
                     syntax.parse_term('x @b y @w z'))

  def test_abstraction_extends_right(self):
    self.assertEqual(Abs(None, 'x', App(None, Var('x'), Var('y'))),
                     syntax.parse_term('\\x. x y'))

  def test_trailing_abstraction_argument(self):
    self.assertEqual(App(B, Var('x'), Abs(B, 'y', Var('y'))),
                     syntax.parse_term('x @b \\b y. y'))

  def test_names_starting_with_color_letters(self):
    self.assertEqual(Abs(None, 'bx', Var('bx')), syntax.parse_term('\\bx. bx'))
    self.assertEqual(Abs(None, 'b', Var('b')), syntax.parse_term('\\ b. b'))

  def test_error_span(self):
    with self.assertRaises(syntax.ParseError) as raised:
      syntax.parse_term('\\b x. x @b')
    self.assertIsNotNone(raised.exception.span)

  def test_hole_in_term(self):
    with self.assertRaises(syntax.UnboundHole):
      syntax.parse_term('x []')


class TestParseContext(unittest.TestCase):

  def test_context(self):
    self.assertEqual(AppLeft(B, HOLE, Abs(B, 'y', Var('y'))),
                     syntax.parse_context('[] @b \\b y. y'))

  def test_hole_under_binder(self):
    self.assertEqual(CAbs(W, 'x', HOLE), syntax.parse_context('\\w x. []'))

  def test_two_holes(self):
    with self.assertRaises(syntax.HoleCountError):
      syntax.parse_context('[] []')

  def test_no_hole(self):
    with self.assertRaises(syntax.HoleCountError):
      syntax.parse_context('x')


class TestParseTypes(unittest.TestCase):

  def test_arrow(self):
    self.assertEqual(Arrow(EMPTY, W, X), syntax.parse_type('[] ->w X'))

  def test_arrow_is_right_associative(self):
    self.assertEqual(Arrow(MultiType((X,)), B, Arrow(EMPTY, W, X)),
                     syntax.parse_type('[X] ->b [] ->w X'))

  def test_typing(self):
    expected = Typing(TypeEnv((('x', MultiType((Arrow(EMPTY, W, X),))),)),
                      Arrow(EMPTY, B, X), 1)
    self.assertEqual(expected, syntax.parse_typing('x : [[] ->w X] |- [] ->b X @ 1'))
    self.assertEqual(expected, syntax.parse_typing('x : [[] →∘ X] ⊢ [] →• X @ 1'))

  def test_env_rejects_duplicates(self):
    with self.assertRaises(syntax.ParseError):
      syntax.parse_env('x : [X], x : [X]')


class TestPrinting(unittest.TestCase):

  def test_minimal_parentheses(self):
    t = syntax.parse_term('(\\b x. x) @w (y @b z)')
    self.assertEqual('(\\b x. x) @w (y @b z)', syntax.print_term(t))

  def test_unicode(self):
    t = syntax.parse_term('\\w x. x @b x')
    self.assertEqual('λ∘x. x @• x', syntax.print_term(t, unicode=True))

  def test_plain_binder_named_like_a_color(self):
    t = Abs(None, 'w', Var('w'))
    self.assertEqual(t, syntax.parse_term(syntax.print_term(t)))

  def test_typing(self):
    src = 'x : [[] ->w X] |- [] ->b X @ 1'
    self.assertEqual(src, syntax.print_typing(syntax.parse_typing(src)))

  @settings(max_examples=300, deadline=None)
  @given(strategies.terms())
  def test_colored_terms_reparse(self, t):
    self.assertEqual(t, syntax.parse_term(syntax.print_term(t)))
    self.assertEqual(t, syntax.parse_term(syntax.print_term(t, unicode=True)))

  @settings(max_examples=200, deadline=None)
  @given(strategies.plain_terms())
  def test_plain_terms_reparse(self, t):
    self.assertEqual(t, syntax.parse_term(syntax.print_term(t)))

  @settings(max_examples=200, deadline=None)
  @given(strategies.linear_types())
  def test_types_reparse(self, ltype):
    self.assertEqual(ltype, syntax.parse_type(syntax.print_type(ltype)))


if __name__ == '__main__':
  unittest.main()
