#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN CONSTANTS
#################################################################################
# File:       constants.py
#
#             Shared constants: colours, output levels, exit codes and
#             the numeric defaults of the network priors.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
''' Constants shared by the affectbn modules.'''

__version__ = "$Id: constants.py 2026-10-17 $"


#################################################################################
##
## Color codes
##
#################################################################################

esc_seq = '\x1b['

codes = {}
codes['reset']     = esc_seq + '39;49;00m'
codes['red']       = esc_seq + '31;01m'
codes['green']     = esc_seq + '32;01m'
codes['yellow']    = esc_seq + '33;01m'


OFF = 0
WARN_LEVEL = 4
INFO_LEVEL = 4
DEBUG_LEVEL = 4

SUCCEED = 0
FAILURE = 1
USAGE_ERROR = 2

#################################################################################
##
## Node families
##
#################################################################################

BERNOULLI = 'bernoulli-logistic'
GAUSSIAN = 'gaussian-linear'

BINARY = 'binary'
CONTINUOUS = 'continuous'

#################################################################################
##
## Prior defaults: N(0, 25) on every coefficient, U(0, 30) on every sigma
##
#################################################################################

PRIOR_MEAN = 0.0
PRIOR_VARIANCE = 25.0
SIGMA_LO = 0.0
SIGMA_HI = 30.0

#################################################################################
##
## Sampler and query defaults
##
#################################################################################

TARGET_ACCEPTANCE = 0.44
# Robbins-Monro step decay exponent for the warm-up scale adaptation
ADAPT_DECAY = 0.6
INITIAL_SCALE = 0.1
LATENT_DRAWS = 8
BATCH_SIZE = 512

POOLED = 'pooled'
DRAW_AVERAGE = 'draw-average'
AVERAGING_SCHEMES = (POOLED, DRAW_AVERAGE)

SEED_ENV = 'AFFECTBN_SEED'
SLOW_TESTS_ENV = 'AFFECTBN_SLOW_TESTS'
