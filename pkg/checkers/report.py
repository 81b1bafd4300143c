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

"""Machine-readable JSON report of a corpus run.

The report holds no timestamps and sorts its entries, so two runs with the
same configuration produce identical text.
"""

import json

from checkers import codec
from checkers import corpus
from checkers import syntax
from checkers.config import RunConfig

SCHEMA = 1


class Visitor(corpus.Visitor):

  def __init__(self, config: RunConfig, version='', unicode=False):
    self.config = config
    self.version = version
    self.unicode = unicode
    self.entries = []
    self.num_failures = 0
    self.num_errors = 0

  def visit_suite(self, idx, suite: corpus.Suite, doit: bool):
    if not doit or not suite.attempted:
      return None
    return lambda idx, entry, doit: self.visit_entry(idx, entry, doit, suite)

  def visit_entry(self, idx, entry: corpus.Entry, doit: bool, suite=None):
    if not doit or not entry.attempted:
      return
    self.entries.append({
        'suite': entry.suite_name,
        'name': entry.name(),
        'lhs': syntax.print_term(entry.lhs, self.unicode),
        'rhs': syntax.print_term(entry.rhs, self.unicode),
        'provenance': entry.provenance(),
        'expected': entry.expected(),
        'verdicts': codec.encode(entry.verdicts),
        'contexts': entry.context_results,
        'mismatches': [{'relation': rel, 'message': msg} for rel, msg in entry.mismatches],
        'errors': [{'type': name, 'message': msg} for name, msg in entry.errors],
        'status': 'passed' if entry.success() else 'failed',
    })

  def visit_suite_end(self, idx, suite: corpus.Suite, doit: bool):
    if not doit or not suite.attempted:
      return
    self.num_failures += suite.num_failures
    self.num_errors += suite.num_errors

  def end_visit(self):
    report = {
        'schema': SCHEMA,
        'version': self.version,
        'config': codec.encode(self.config),
        'failures': self.num_failures,
        'errors': self.num_errors,
        'entries': sorted(self.entries, key=lambda e: (e['suite'], e['name'])),
    }
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + '\n'
