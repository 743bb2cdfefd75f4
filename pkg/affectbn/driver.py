#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN DRIVER MENTAL-STATE NETWORK
#################################################################################
# File:       driver.py
#
#             The preset driver network (active fatigue, mental load and
#             five physiological measures) and its synthetic data
#             generator.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''The BERTHA driver network.

Active fatigue (AF) and mental load (ML) are binary roots.  The five
physiological measures are gaussian-linear nodes:

    SDD <- AF, ML
    MHR <- SDD, AF, ML
    RLH <- MHR, SDD, AF, ML
    SRT <- RLH, MHR, SDD
    MNB <- SRT

Every node also regresses on Sex (1 = man), Age and BMI.

>>> m = bertha_preset()
>>> m.topo_order
('AF', 'ML', 'SDD', 'MHR', 'RLH', 'SRT', 'MNB')
>>> m.node('SRT').parents
('RLH', 'MHR', 'SDD')
>>> len(m.parameter_names())
46
'''

__version__ = "0.1"

#===============================================================================
#
# Dependencies
#
#-------------------------------------------------------------------------------

import numpy as np

from affectbn.constants import BERNOULLI, GAUSSIAN, BINARY, CONTINUOUS, \
    SIGMA_LO, SIGMA_HI
from affectbn.density import log_prior
from affectbn.model import Covariate, CovariateSchema, NodeSpec, ModelSpec, \
    UniformPrior, ParameterVector, Dataset, ValidationError
from affectbn.predictive import simulate

#===============================================================================
#
# Observed ranges and means of the driver study
#
#-------------------------------------------------------------------------------

# name: (unit, lo, hi, mean)
OBSERVED = {
    'Age': ('years', 24.0, 61.0, 44.59),
    'BMI': ('', 17.65, 35.16, 24.35),
    'SRT': ('ms', 19.45, 191.76, 63.07),
    'SDD': ('ms', 14.38, 104.16, 53.17),
    'MHR': ('bpm', 46.08, 152.09, 73.94),
    'RLH': ('ratio', 0.17, 29.91, 3.51),
    'MNB': ('breaths/min', 9.42, 23.38, 15.26),
    }

# share of men among the participants (9 of 17)
MAN_SHARE = 9.0 / 17.0

BASE_COVARIATES = ('Sex', 'Age', 'BMI')

PARENTS = (
    ('AF', ()),
    ('ML', ()),
    ('SDD', ('AF', 'ML')),
    ('MHR', ('SDD', 'AF', 'ML')),
    ('RLH', ('MHR', 'SDD', 'AF', 'ML')),
    ('SRT', ('RLH', 'MHR', 'SDD')),
    ('MNB', ('SRT',)),
    )


def observed_ranges():
    '''(lo, hi, mean) of every continuous covariate and node.

    >>> observed_ranges()['MNB']
    (9.42, 23.38, 15.26)
    '''
    return dict((name, (lo, hi, mean))
        for name, (unit, lo, hi, mean) in OBSERVED.items())


def bertha_schema():
    return CovariateSchema([
        Covariate('Sex', BINARY),
        Covariate('Age', CONTINUOUS, 'years', OBSERVED['Age'][1:3]),
        Covariate('BMI', CONTINUOUS, '', OBSERVED['BMI'][1:3]),
        ])


def bertha_preset():
    '''The validated driver network with N(0, 25) and U(0, 30) priors.'''
    nodes = []
    for name, parents in PARENTS:
        if parents:
            nodes.append(NodeSpec(name, GAUSSIAN, parents=parents,
                covariates=BASE_COVARIATES,
                sigma_prior=UniformPrior(SIGMA_LO, SIGMA_HI)))
        else:
            nodes.append(NodeSpec(name, BERNOULLI,
                covariates=BASE_COVARIATES))
    return ModelSpec(bertha_schema(), nodes)

#===============================================================================
#
# Reference parameters
#
#-------------------------------------------------------------------------------

# Intercepts place the node means at the study means in OBSERVED (SDD 53.2,
# MHR 73.9, RLH 3.51, SRT 63.1, MNB 15.3) given uniform Age and BMI over
# their ranges; AF and ML rates come out near 0.48 and 0.52.
REFERENCE_THETA = {
    'AF.b0': 1.5, 'AF.b.Sex': 0.2, 'AF.b.Age': -0.04, 'AF.b.BMI': 0.0,
    'ML.b0': 2.0, 'ML.b.Sex': -0.1, 'ML.b.Age': -0.05, 'ML.b.BMI': 0.01,
    'SDD.b0': 6.85, 'SDD.b.Sex': -2.0, 'SDD.b.Age': 0.6, 'SDD.b.BMI': 1.0,
    'SDD.b.AF': -4.0, 'SDD.b.ML': -5.0,
    'MHR.b0': -0.55, 'MHR.b.Sex': -3.0, 'MHR.b.Age': 0.4, 'MHR.b.BMI': 1.5,
    'MHR.b.SDD': 0.3, 'MHR.b.AF': 3.0, 'MHR.b.ML': 4.0,
    'RLH.b0': 0.56, 'RLH.b.Sex': 0.2, 'RLH.b.Age': -0.02, 'RLH.b.BMI': 0.07,
    'RLH.b.MHR': 0.03, 'RLH.b.SDD': -0.02, 'RLH.b.AF': 0.8, 'RLH.b.ML': 0.6,
    'SRT.b0': -2.4, 'SRT.b.Sex': 2.0, 'SRT.b.Age': -0.3, 'SRT.b.BMI': 0.55,
    'SRT.b.RLH': 1.5, 'SRT.b.MHR': 0.2, 'SRT.b.SDD': 0.8,
    'MNB.b0': 1.1, 'MNB.b.Sex': -0.5, 'MNB.b.Age': 0.05, 'MNB.b.BMI': 0.37,
    'MNB.b.SRT': 0.04,
    'SDD.sigma': 12.0, 'MHR.sigma': 8.0, 'RLH.sigma': 2.0, 'SRT.sigma': 15.0,
    'MNB.sigma': 2.0,
    }


def reference_theta(model=None):
    model = model if model is not None else bertha_preset()
    return ParameterVector.from_dict(model, REFERENCE_THETA)

#===============================================================================
#
# Synthetic data
#
#-------------------------------------------------------------------------------

def synth_covariates(n, seed, schema=None):
    '''Random covariate columns, deterministic per seed.

    Sex is a man with probability 9/17; continuous covariates with a
    range are uniform over it, those without are standard normal;
    other binary covariates are fair coins.

    >>> c = synth_covariates(1000, 3)
    >>> bool(c['Age'].min() >= 24 and c['Age'].max() <= 61)
    True
    '''
    if n < 1:
        raise ValidationError('n must be >= 1, got %r' % n)
    schema = schema if schema is not None else bertha_schema()
    rng = np.random.default_rng([seed, 0])
    columns = {}
    for entry in schema:
        if entry.kind == BINARY:
            share = MAN_SHARE if entry.name == 'Sex' else 0.5
            columns[entry.name] = (rng.random(n) < share).astype(float)
        elif entry.range is not None:
            columns[entry.name] = rng.uniform(entry.range[0], entry.range[1],
                n)
        else:
            columns[entry.name] = rng.standard_normal(n)
    return columns


def synth_dataset(params, n, seed):
    '''A complete synthetic dataset drawn forward under params.'''
    model = params.model
    if not np.isfinite(log_prior(model, params)):
        raise ValidationError('The parameters have zero prior density')
    columns = synth_covariates(n, seed, model.covariates)
    rng = np.random.default_rng([seed, 1])
    values = simulate(model, params.values[None, :], columns, n, rng)
    for name, v in values.items():
        columns[name] = v[0]
    return Dataset(model, columns)


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
