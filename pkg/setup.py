#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
import re
import sys

from setuptools import setup, find_packages

if sys.argv[-1] == 'publish':
    os.system('python setup.py sdist upload')
    sys.exit()

def find_version(fname):
    """Attempts to find the version number in the file names fname.
    Raises RuntimeError if not found.

    """
    version = ''
    with open(fname, 'r') as fp:
        reg = re.compile(r'__version__ = [\'"]([^\'"]*)[\'"]')
        for line in fp:
            m = reg.match(line)
            if m:
                version = m.group(1)
                break
    if not version:
        raise RuntimeError('Cannot find version information')
    return version

def read_requirements(fname):
    with open(fname, 'r') as fp:
        return [
            line.strip() for line in fp
            if line.strip() and not line.startswith(('#', '-'))
        ]

__version__ = find_version('multiport/__init__.py')

readme = open('README.rst').read()
history = open('HISTORY.rst').read().replace('.. :changelog:', '')
requirements = read_requirements('requirements.txt')

setup(
    name='multiport',
    version=__version__,
    description='Multiport beam-splitter Fock simulation and SLOCC '
                'classification of its outputs',
    long_description=readme + '\n\n' + history,
    packages=find_packages(exclude=('tests', 'examples', 'examples.*')),
    include_package_data=True,
    install_requires=requirements,
    python_requires='>=3.8',
    tests_require=[
        'pytest',
    ],
    entry_points={
        'console_scripts': [
            'multiport = multiport.cli:main',
        ],
    },
    license='MIT',
    zip_safe=False,
    keywords='multiport beam-splitter fock slocc entanglement',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    test_suite='tests',
)
