# -*- coding: utf-8 -*-
###############################################################################
# AFFECTBN NODE FAMILY BASE CLASS
###############################################################################
# File:       family.py
#
#             Base class for the different node families.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
''' Base class for the conditional distribution of a network node.

A family knows how to score and how to draw a node value given the
linear predictor of the node (and a noise scale when it has one).  All
methods work elementwise on numpy arrays so the same code path serves a
single row, a whole dataset or a block of posterior draws.
'''

__version__ = "0.1"

import numpy as np


class DomainError(ValueError):
    '''A value lies outside the support of a node family.'''
    def __init__(self, node, message):
        self.node = node
        super(DomainError, self).__init__(
            'Node "%s": %s' % (node, message))


class NodeFamily(object):

    family_key = None
    has_sigma = False

    def check_value(self, node, values):
        '''Raise DomainError when values are outside the family support.'''
        values = np.asarray(values, dtype=float)
        if not np.all(np.isfinite(values)):
            raise DomainError(node, 'non-finite value')
        return values

    def check_sigma(self, node, sigma):
        if not self.has_sigma:
            return
        if sigma is None or not sigma > 0:
            raise DomainError(node, 'sigma must be > 0, got %r' % (sigma,))

    def log_density(self, values, eta, sigma=None):
        '''log f(value | eta, sigma), elementwise.'''
        raise NotImplementedError('Method "%s.log_density" not implemented'
            % self.__class__.__name__)

    def sample(self, eta, sigma, rng):
        '''One draw per element of eta.'''
        raise NotImplementedError('Method "%s.sample" not implemented'
            % self.__class__.__name__)
