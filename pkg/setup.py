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

import io
import os

from setuptools import find_packages, setup

PACKAGE_ROOT = os.path.abspath(os.path.dirname(__file__))

with io.open(os.path.join(PACKAGE_ROOT, 'README.rst'), encoding='utf-8') as file_obj:
    README = file_obj.read()

setup(
    name='checkers-workbench',
    version='0.3.0',

    license='Apache 2.0',
    author='The checkers-workbench Authors',
    packages=find_packages(exclude=['docs', 'tests', 'tests.*']),
    description=('Reduction, multi types and improvement preorders for the '
                 'checkers lambda calculus'),
    long_description=README,
    entry_points="""[console_scripts]
        checkers=checkers.cli:main
    """,
    platforms='Posix; MacOS X',
    python_requires='>=3.8',
    include_package_data=True,
    package_data={
        'checkers': ['checkers.lark', 'data/corpus.yaml'],
    },
    install_requires=(
        'pyyaml',
        'lark',
    ),
    extras_require={
        'test': ['hypothesis'],
    },

    classifiers=(
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: POSIX',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Mathematics',
    ),
)
