#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN BERNOULLI-LOGISTIC NODES
#################################################################################
# File:       bernoulli.py
#
#             Binary nodes with a logit link.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
''' Bernoulli-logistic node support.

>>> fam = BernoulliLogistic()
>>> round(float(fam.log_density(1.0, 0.0)), 7)
-0.6931472
>>> round(float(np.exp(fam.log_density(1.0, 2.5)) + np.exp(fam.log_density(0.0, 2.5))), 12)
1.0
>>> fam.check_value('AF', [0, 1, 2])
Traceback (most recent call last):
...
affectbn.families.family.DomainError: Node "AF": value 2.0 is not binary
'''

__version__ = "0.1"

import numpy as np
from scipy.special import expit, log_expit

from affectbn.constants import BERNOULLI
from affectbn.families.family import NodeFamily, DomainError


class BernoulliLogistic(NodeFamily):
    ''' Handles binary nodes, P(y = 1) = logistic(eta).'''

    family_key = BERNOULLI
    has_sigma = False

    def check_value(self, node, values):
        values = NodeFamily.check_value(self, node, values)
        bad = (values != 0.0) & (values != 1.0)
        if np.any(bad):
            raise DomainError(node, 'value %r is not binary'
                % float(np.ravel(values)[np.argmax(np.ravel(bad))]))
        return values

    def log_density(self, values, eta, sigma=None):
        # log p and log(1 - p) straight from the predictor, no exp/log trip
        values = np.asarray(values, dtype=float)
        eta = np.asarray(eta, dtype=float)
        return values * log_expit(eta) + (1.0 - values) * log_expit(-eta)

    def sample(self, eta, sigma, rng):
        eta = np.asarray(eta, dtype=float)
        return (rng.random(eta.shape) < expit(eta)).astype(float)


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
