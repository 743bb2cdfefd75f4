#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN GAUSSIAN-LINEAR NODES
#################################################################################
# File:       gaussian.py
#
#             Continuous nodes with a normal error around a linear mean.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
''' Gaussian-linear node support.

>>> fam = GaussianLinear()
>>> round(float(fam.log_density(0.0, 0.0, 1.0)), 7)
-0.9189385
>>> bool(np.isclose(fam.log_density(3.0, 3.0, 2.0), -np.log(2 * np.sqrt(2 * np.pi))))
True
'''

__version__ = "0.1"

import numpy as np

from affectbn.constants import GAUSSIAN
from affectbn.families.family import NodeFamily

HALF_LOG_2PI = 0.5 * np.log(2.0 * np.pi)


class GaussianLinear(NodeFamily):
    ''' Handles continuous nodes, y ~ Normal(eta, sigma).'''

    family_key = GAUSSIAN
    has_sigma = True

    def log_density(self, values, eta, sigma=None):
        values = np.asarray(values, dtype=float)
        eta = np.asarray(eta, dtype=float)
        z = (values - eta) / sigma
        return -HALF_LOG_2PI - np.log(sigma) - 0.5 * z * z

    def sample(self, eta, sigma, rng):
        eta = np.asarray(eta, dtype=float)
        return eta + sigma * rng.standard_normal(eta.shape)


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
