#!/usr/bin/env python

import sys

from setuptools import setup

# this affects the names of all the directories we do stuff with
sys.path.insert(0, './')
from affectbn.version import VERSION


setup(name          = 'affectbn',
      version       = VERSION,
      description   = 'Hybrid Bayesian networks for driver mental states',
      author        = 'affectbn developers',
      packages      = ['affectbn', 'affectbn.families', 'affectbn.tests'],
      package_data  = {'affectbn.tests': ['testfiles/*']},
      scripts       = ['bin/affectbn'],
      data_files    = [('etc/affectbn', ['etc/affectbn.cfg'])],
      install_requires = ['numpy>=1.17', 'scipy>=1.8', 'networkx>=2.4',
                          'pandas>=1.5'],
      python_requires = '>=3.7',
      license       = 'GPL',
      )
