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

"""Run configuration: fuel, depths, type bound and context search limits.

Values are layered, later sources winning: built-in defaults, the `config:`
mapping of a YAML file, the CHECKERS_SEED environment variable, and explicit
command-line flags.
"""

import dataclasses
from dataclasses import dataclass, field
import logging
import os
import yaml

from checkers.interpretation import TypeBound

SEED_ENV_VAR = 'CHECKERS_SEED'
CONFIG_KEY = 'config'


@dataclass(frozen=True)
class RunConfig:
  fuel: int = 10000
  depth: int = 6
  bound: TypeBound = field(default_factory=TypeBound)
  context_size: int = 8
  max_contexts: int = 300
  seed: int = 0
  detect_cycles: bool = True

  def replace(self, **changes):
    return dataclasses.replace(self, **changes)


_INT_FIELDS = ('fuel', 'depth', 'context_size', 'max_contexts', 'seed')
_BOUND_KEYS = {'w': 'width', 'width': 'width', 'd': 'depth', 'depth': 'depth',
               'r': 'result_depth', 'result_depth': 'result_depth',
               'limit': 'limit', 'atoms': 'atoms'}


def parse_bound(text: str, base: TypeBound = None) -> TypeBound:
  """Parses "w=2,d=3" (also result_depth, limit, atoms=X:Y) over `base`."""
  base = base or TypeBound()
  changes = {}
  for item in filter(None, (part.strip() for part in text.split(','))):
    key, sep, value = item.partition('=')
    key = key.strip()
    if not sep or key not in _BOUND_KEYS:
      log_raise(logging.error, ConfigError, 'malformed type bound item "{}"'.format(item))
    name = _BOUND_KEYS[key]
    if name == 'atoms':
      changes[name] = tuple(a for a in value.strip().split(':') if a)
    else:
      changes[name] = _positive(name, value.strip())
  return dataclasses.replace(base, **changes)


def _positive(name, value, allow_zero=False):
  try:
    number = int(value)
  except (TypeError, ValueError):
    log_raise(logging.error, ConfigError, '{} must be an integer, got "{}"'.format(name, value))
  if number < 0 or (number == 0 and not allow_zero):
    log_raise(logging.error, ConfigError, '{} out of range: {}'.format(name, number))
  return number


def _bound_from_yaml(value, base):
  if isinstance(value, TypeBound):
    return value
  if isinstance(value, str):
    return parse_bound(value, base)
  if not isinstance(value, dict):
    log_raise(logging.error, ConfigError, 'bound must be a mapping or a "w=..,d=.." string')
  text = ','.join('{}={}'.format(k, ':'.join(v) if isinstance(v, list) else v)
                  for k, v in value.items())
  return parse_bound(text, base)


def from_mapping(mapping, base: RunConfig = None) -> RunConfig:
  base = base or RunConfig()
  if mapping is None:
    return base
  if not isinstance(mapping, dict):
    log_raise(logging.error, ConfigError, 'the "{}" section must be a mapping'.format(CONFIG_KEY))
  changes = {}
  for key, value in mapping.items():
    name = key.replace('-', '_')
    if name in _INT_FIELDS:
      changes[name] = _positive(name, value, allow_zero=(name == 'seed'))
    elif name == 'bound':
      changes[name] = _bound_from_yaml(value, base.bound)
    elif name == 'detect_cycles':
      if not isinstance(value, bool):
        log_raise(logging.error, ConfigError, 'detect_cycles must be true or false')
      changes[name] = value
    else:
      log_raise(logging.error, ConfigError, 'unknown configuration key "{}"'.format(key))
  return base.replace(**changes)


def load_config(path=None, environ=None, overrides=None) -> RunConfig:
  """Builds the effective RunConfig from every source."""
  config = RunConfig()
  if path:
    logging.info('Reading configuration file "{}"'.format(path))
    try:
      with open(path, 'r') as stream:
        spec = yaml.load(stream, Loader=yaml.SafeLoader) or {}
    except (OSError, yaml.YAMLError) as e:
      log_raise(logging.error, ConfigError, 'cannot read config "{}": {}'.format(path, e))
    if not isinstance(spec, dict):
      log_raise(logging.error, ConfigError, 'config "{}" is not a mapping'.format(path))
    config = from_mapping(spec.get(CONFIG_KEY, {}), config)

  environ = os.environ if environ is None else environ
  if environ.get(SEED_ENV_VAR):
    config = config.replace(seed=_positive(SEED_ENV_VAR, environ[SEED_ENV_VAR], allow_zero=True))

  overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
  config = from_mapping(overrides, config)
  logging.debug('effective config: {}'.format(config))
  return config


def log_raise(log_fn, exception, message):
  log_fn(message)
  raise exception(message)


class ConfigError(Exception):
  def __init__(self, msg):
    super().__init__(msg)
    self.msg = msg
