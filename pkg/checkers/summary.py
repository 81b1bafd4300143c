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

from enum import Enum
import sys

from checkers import corpus
from checkers import syntax


class Detail(Enum):
  NONE = 1
  BRIEF = 2
  FULL = 3


class SummaryVisitor(corpus.Visitor):
  """Print a (running) summary of a corpus run.

  Lines are printed as they are recorded unless `progress_out` is None; the
  accumulated text is available via `output()`. Must follow the runner in a
  MultiVisitor so each entry has been run when it is summarized.
  """

  def __init__(self, verbosity, show_failures=True, progress_out=sys.stderr, unicode=False):
    self.verbosity = verbosity
    self.show_failures = show_failures
    self.lines = []
    self.indent = '  '
    self.progress_out = progress_out
    self.unicode = unicode

  def visit_suite(self, idx, suite: corpus.Suite, doit: bool):
    if self.verbosity == Detail.NONE and not self.show_failures:
      return None
    status = self.status_str(suite, doit)
    if not status:
      return None

    # Suites that run are reported once, by visit_suite_end.
    if self.verbosity != Detail.NONE and not (doit and suite.attempted):
      self.append_lines('{}: Suite: "{}"'.format(status, suite.name()))
    return self.visit_entry

  def visit_entry(self, idx, entry: corpus.Entry, doit: bool):
    status = self.status_str(entry, doit)
    if not status:
      return
    failed = entry.completed and not entry.success()
    if self.verbosity == Detail.NONE and not failed:
      return

    self.append_lines(self.indent + '{}: Entry: "{}"  {}  vs  {}'.format(
        status, entry.name(), syntax.print_term(entry.lhs, self.unicode),
        syntax.print_term(entry.rhs, self.unicode)))
    if self.verbosity == Detail.FULL or (self.show_failures and failed):
      for rel, found in sorted(entry.verdicts.items()):
        self.append_lines(self.indent * 3 + '| {}: {}{}'.format(
            rel, found.label(), ' ({})'.format(found.reason) if found.reason else ''))
      for rel, message in entry.mismatches:
        self.append_lines(self.indent * 3 + '| MISMATCH {}: {}'.format(rel, message))
      for name, message in entry.errors:
        self.append_lines(self.indent * 3 + '| ERROR {}: {}'.format(name, message))

  def visit_suite_end(self, idx, suite: corpus.Suite, doit: bool):
    if not doit or not suite.attempted or self.verbosity == Detail.NONE:
      return
    failing = ''
    if suite.num_failing_entries:
      failing = '  ({} failing {})'.format(
          suite.num_failing_entries, 'entry' if suite.num_failing_entries == 1 else 'entries')
    self.append_lines('{}: Suite: "{}"{}'.format(self.status_str(suite, doit), suite.name(),
                                                 failing))

  def output(self):
    return '\n'.join(self.lines)

  def append_lines(self, text):
    if self.progress_out:
      print(text, file=self.progress_out)
    self.lines.append(text)

  def status_str(self, obj, doit):
    """Returns the status to print for `obj`, or None if nothing is to be shown."""
    if not doit:
      return 'SKIPPED' if self.verbosity != Detail.NONE else None
    if not obj.attempted:
      if self.verbosity == Detail.FULL:
        return 'PREEMPTED'
      return None
    if not obj.completed:
      return 'RUNNING'
    return 'PASSED' if obj.success() else 'FAILED'
