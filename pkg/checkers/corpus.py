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

"""The corpus of term pairs and the visitor protocol used to walk it.

A corpus file is YAML:

  corpus:
    suites:
    - name: eta
      cases:
      - name: eta-reduction
        lhs: '\\y. x y'
        rhs: 'x'
        expected: {bohm-eta: holds, pwc: holds, ctx-imp: holds}
        provenance: 'η-reduction is an improvement'
        contexts:
        - {context: '[] @w z', lhs_count: 1, rhs_count: 0}
"""

import copy
import logging
import os
import re
import yaml

from checkers import syntax
from checkers import term as terms
from checkers.config import log_raise

DEFAULT_CORPUS = os.path.join(os.path.dirname(__file__), 'data', 'corpus.yaml')

CORPUS_KEY = 'corpus'
SUITES_KEY = 'suites'
SUITE_NAME = 'name'
SUITE_ENABLED = 'enabled'
SUITE_SOURCE = 'source'
SUITE_CASES = 'cases'
CASE_NAME = 'name'
CASE_LHS = 'lhs'
CASE_RHS = 'rhs'
CASE_EXPECTED = 'expected'
CASE_PROVENANCE = 'provenance'
CASE_CONTEXTS = 'contexts'

EXPECTED_TAGS = ('holds', 'fails', 'unknown')
RELATION_NAMES = ('bohm-eta', 'pwc', 'ctx-imp')


class Wrapper:

  def __init__(self):
    self.num_errors = 0
    self.num_failures = 0
    self.selected_to_run = True

    # whether we attempted to run this Wrapper
    self.attempted = False

    # whether we finished running this Wrapper, even with errors
    self.completed = False

  def success(self):
    return self.num_errors == 0 and self.num_failures == 0

  def selected(self):
    return self.selected_to_run


class Suite(Wrapper):

  def __init__(self, suite_config, suite_filter, case_filter):
    super().__init__()
    self.config = copy.deepcopy(suite_config)
    self.entries = [
        Entry(case_config, case_filter, self.name())
        for case_config in suite_config.get(SUITE_CASES, [])
    ]
    self.config[SUITE_CASES] = None
    self.num_failing_entries = 0
    self.selected_to_run = passes_filter(suite_filter, self.name())

  def selected(self):
    return self.enabled() and super().selected()

  def enabled(self):
    return self.config.get(SUITE_ENABLED, True)

  def name(self):
    return self.config.get(SUITE_NAME, '')

  def source(self):
    return self.config.get(SUITE_SOURCE, '')


class Entry(Wrapper):
  """One term pair with its expected verdicts.

  After a run, `verdicts` maps each relation to its Verdict, `mismatches`
  lists (relation, message) pairs and `context_results` the rechecked counts.
  """

  def __init__(self, case_config, case_filter, suite_name=''):
    super().__init__()
    self.config = copy.deepcopy(case_config)
    self.suite_name = suite_name
    self.lhs = _parse_side(self.config, CASE_LHS, self.name())
    self.rhs = _parse_side(self.config, CASE_RHS, self.name())
    self.verdicts = {}
    self.mismatches = []
    self.errors = []
    self.context_results = []
    self.selected_to_run = passes_filter(case_filter, self.name())

  def name(self):
    return self.config.get(CASE_NAME, '(missing name)')

  def expected(self):
    return dict(self.config.get(CASE_EXPECTED, {}))

  def provenance(self):
    return self.config.get(CASE_PROVENANCE, '')

  def contexts(self):
    return list(self.config.get(CASE_CONTEXTS, []) or [])

  def colored(self):
    return not (terms.is_plain(self.lhs) and terms.is_plain(self.rhs))


def _parse_side(config, key, name):
  src = config.get(key)
  if not isinstance(src, str):
    log_raise(logging.error, CorpusParseError,
              'entry "{}" needs a "{}" term'.format(name, key))
  try:
    return syntax.parse_term(src)
  except syntax.ParseError as e:
    log_raise(logging.error, CorpusParseError,
              'entry "{}": bad {} term: {}'.format(name, key, e.msg))


def passes_filter(filter: str, name: str):
  if not filter:
    return True
  return re.search(filter, name) is not None


class Visitor:
  """Visits a corpus of `Suite`s and `Entry`s.

  Each visit function returns the visit function for the next level, or None
  if that level is not to be traversed. `end_visit` returns the result of the
  whole visit.
  """

  def start_visit(self):
    return self.visit_suite, self.visit_suite_end

  def visit_suite(self, idx: int, suite: Suite, doit: bool):
    return self.visit_entry

  def visit_entry(self, idx: int, entry: Entry, doit: bool):
    pass

  def visit_suite_end(self, idx: int, suite: Suite, doit: bool):
    pass

  def end_visit(self):
    return True


class MultiVisitor(Visitor):
  """Applies multiple visitors in order at each level of a visit."""

  def __init__(self, *visitors: Visitor):
    self.visitors = visitors

  def start_visit(self):
    start_end = [visitor.start_visit() for visitor in self.visitors if visitor]
    start = [fn[0] for fn in start_end]
    end = [fn[1] for fn in start_end]
    return (lambda idx, suite, doit: self.visit_suite(idx, suite, doit, start),
            lambda idx, suite, doit: self.visit_suite_end(idx, suite, doit, end))

  def visit_suite(self, idx: int, suite: Suite, doit: bool, visit_fns):
    start = [visit(idx, suite, doit) for visit in visit_fns if visit]
    return lambda idx, entry, do_entry: self.visit_entry(idx, entry, do_entry, start)

  def visit_entry(self, idx: int, entry: Entry, doit: bool, visit_fns):
    for visit in visit_fns:
      if visit:
        visit(idx, entry, doit)

  def visit_suite_end(self, idx: int, suite: Suite, doit: bool, visit_fns):
    for visit in visit_fns:
      if visit:
        visit(idx, suite, doit)

  def end_visit(self):
    results = [visitor.end_visit() for visitor in self.visitors]
    return all(results)


class Manager:
  """Hosts Visitors to a list of suites."""

  def __init__(self, suites):
    self.suites = suites

  def accept(self, visitor: Visitor):
    visit_suite, visit_suite_end = visitor.start_visit()
    if not visit_suite:
      return visitor.end_visit()

    for suite_num, suite in enumerate(self.suites):
      do_suite = suite.selected()
      visit_entry = visit_suite(suite_num, suite, do_suite)
      if not visit_entry:
        continue

      for idx, entry in enumerate(suite.entries):
        visit_entry(idx, entry, do_suite and entry.selected())

      if visit_suite_end is not None:
        visit_suite_end(suite_num, suite, do_suite)

    return visitor.end_visit()


def _check_case(case, source):
  name = case.get(CASE_NAME)
  if not name:
    log_raise(logging.error, CorpusParseError, 'an entry in "{}" has no name'.format(source))
  expected = case.get(CASE_EXPECTED) or {}
  if not isinstance(expected, dict):
    log_raise(logging.error, CorpusParseError,
              'entry "{}": "expected" must be a mapping'.format(name))
  for rel, tag in expected.items():
    if rel not in RELATION_NAMES or tag not in EXPECTED_TAGS:
      log_raise(logging.error, CorpusParseError,
                'entry "{}": bad expectation {}: {}'.format(name, rel, tag))
  definite = {tag for tag in expected.values() if tag != 'unknown'}
  if len(definite) > 1:
    log_raise(logging.error, CorpusParseError,
              'entry "{}": expected verdicts contradict each other'.format(name))
  if not case.get(CASE_PROVENANCE):
    log_raise(logging.error, CorpusParseError, 'entry "{}" has no provenance'.format(name))
  for item in case.get(CASE_CONTEXTS, []) or []:
    if not isinstance(item, dict) or 'context' not in item:
      log_raise(logging.error, CorpusParseError,
                'entry "{}": every context needs a "context" field'.format(name))


def suite_configs_from(corpus_files):
  """Returns the suite configs (key/value pairs) from all the `corpus_files`."""
  all_suites = []
  for filename in corpus_files:
    logging.info('Reading corpus file "{}"'.format(filename))
    try:
      with open(filename, 'r') as stream:
        spec = yaml.load(stream, Loader=yaml.SafeLoader)
    except (OSError, yaml.YAMLError) as e:
      log_raise(logging.error, CorpusParseError, 'cannot read "{}": {}'.format(filename, e))
    try:
      these_suites = spec[CORPUS_KEY][SUITES_KEY]
    except (KeyError, TypeError):
      log_raise(logging.error, CorpusParseError,
                '"{}" has no {}.{} list'.format(filename, CORPUS_KEY, SUITES_KEY))
    for suite in these_suites:
      suite[SUITE_SOURCE] = filename
      for case in suite.get(SUITE_CASES, []) or []:
        _check_case(case, filename)
    all_suites.extend(these_suites)
  return all_suites


def suites_from(corpus_files, suite_filter=None, case_filter=None):
  """Creates Suite objects from the given YAML corpus files."""
  return [Suite(spec, suite_filter, case_filter) for spec in suite_configs_from(corpus_files)]


class CorpusParseError(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg
