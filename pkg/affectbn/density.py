#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN DENSITIES
#################################################################################
# File:       density.py
#
#             Log densities of the factorized joint: node conditionals,
#             priors, likelihood and the unnormalized posterior.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Evaluates the log densities of a network.

Summation order is fixed so results are bit-reproducible: within a row
node terms are added in topological order, then rows are added one
after the other.

>>> logistic(0.0)
0.5
>>> round(logistic(np.log(3.0)), 12), round(logistic(-np.log(3.0)), 12)
(0.75, 0.25)
'''

__version__ = "0.1"

#===============================================================================
#
# Dependencies
#
#-------------------------------------------------------------------------------

import numpy as np
from scipy.special import expit

from affectbn.model import MissingInputError, SchemaMismatchError

#===============================================================================
#
# Helpers
#
#-------------------------------------------------------------------------------

def logistic(x):
    '''Overflow-safe 1 / (1 + exp(-x)); floats in, floats out.'''
    result = expit(x)
    if np.ndim(result) == 0:
        return float(result)
    return result


def accumulate(coefficients, inputs):
    '''Intercept plus coefficient * input terms, added left to right.

    Coefficients and inputs broadcast, so the same routine serves a
    single row, a column of rows or a block of posterior draws.

    >>> float(accumulate([1.0, 2.0, -1.0], [3.0, 4.0]))
    3.0
    '''
    eta = coefficients[0]
    for beta, x in zip(coefficients[1:], inputs):
        eta = eta + beta * x
    return eta


def node_inputs(node, covariates, parent_values):
    '''Values of the node's regressors in coefficient order.'''
    values = []
    for name in node.covariates:
        if covariates is None or name not in covariates:
            raise MissingInputError(name, node.name)
        values.append(covariates[name])
    for name in node.parents:
        if parent_values is None or name not in parent_values:
            raise MissingInputError(name, node.name)
        values.append(parent_values[name])
    return values

#===============================================================================
#
# Node level
#
#-------------------------------------------------------------------------------

def linear_predictor(node, params, covariates, parent_values):
    '''Intercept + dot(coefficients, [covariates, parents]).

    >>> from affectbn.model import *
    >>> m = ModelSpec([Covariate('Age')], [NodeSpec('Y', 'gaussian-linear',
    ...     covariates=['Age'], sigma_prior=UniformPrior(0, 30))])
    >>> p = ParameterVector.from_dict(m, {'Y.b0': 2.0, 'Y.b.Age': 0.5,
    ...                                   'Y.sigma': 1.0})
    >>> linear_predictor(m.node('Y'), p, {'Age': 10.0}, {})
    7.0
    >>> linear_predictor(m.node('Y'), p, {}, {})
    Traceback (most recent call last):
    ...
    affectbn.model.MissingInputError: No value given for "Age" (needed by "Y")
    '''
    inputs = node_inputs(node, covariates, parent_values)
    eta = accumulate(params.coefficients(node.name), inputs)
    if np.ndim(eta) == 0:
        return float(eta)
    return eta


def node_log_density(node, params, value, covariates, parent_values):
    '''log f(value | inputs, params) of one node.

    >>> from affectbn.model import *
    >>> m = ModelSpec([], [NodeSpec('A', 'bernoulli-logistic')])
    >>> p = ParameterVector.zeros(m)
    >>> round(node_log_density(m.node('A'), p, 1, {}, {}), 7)
    -0.6931472
    '''
    family = node.family_impl
    value = family.check_value(node.name, value)
    sigma = params.sigma(node.name)
    family.check_sigma(node.name, sigma)
    eta = linear_predictor(node, params, covariates, parent_values)
    result = family.log_density(value, eta, sigma)
    if np.ndim(result) == 0:
        return float(result)
    return result


def node_terms(model, params, data):
    '''Per-row log densities of every node, keyed by node name.'''
    if not set(model.columns()) <= set(data.columns):
        missing = sorted(set(model.columns()) - set(data.columns))
        raise SchemaMismatchError('Dataset lacks columns: %s'
            % ', '.join(missing))
    terms = {}
    for node in model.ordered_nodes():
        family = node.family_impl
        sigma = params.sigma(node.name)
        family.check_sigma(node.name, sigma)
        inputs = [data.column(name) for name in node.inputs]
        eta = accumulate(params.coefficients(node.name), inputs)
        terms[node.name] = family.log_density(data.column(node.name), eta,
            sigma)
    return terms

#===============================================================================
#
# Model level
#
#-------------------------------------------------------------------------------

def row_log_likelihood(model, params, data):
    '''Log joint density of every row, nodes added in topological order.'''
    terms = node_terms(model, params, data)
    rows = np.zeros(data.n_rows)
    for name in model.topo_order:
        rows = rows + terms[name]
    return rows


def log_likelihood(model, params, data):
    '''Sum over rows of the log joint density.'''
    rows = row_log_likelihood(model, params, data)
    if rows.shape[0] == 0:
        return 0.0
    # cumsum adds strictly left to right, unlike pairwise np.sum
    return float(np.cumsum(rows)[-1])


def log_prior(model, params):
    '''Normal priors on the coefficients plus uniform priors on the sigmas.

    Returns -inf when a sigma falls outside its support.
    '''
    total = 0.0
    for node in model.ordered_nodes():
        for prior, beta in zip(node.coefficient_priors,
                               params.coefficients(node.name)):
            total += float(prior.log_density(beta))
    for node in model.ordered_nodes():
        if node.sigma_prior is not None:
            total += node.sigma_prior.log_density(params.sigma(node.name))
    return total


def log_unnormalized_posterior(model, params, data):
    lp = log_prior(model, params)
    if lp == -np.inf:
        return lp
    return lp + log_likelihood(model, params, data)


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
