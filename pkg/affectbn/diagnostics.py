#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN CONVERGENCE DIAGNOSTICS
#################################################################################
# File:       diagnostics.py
#
#             Potential scale reduction, effective sample size, Monte
#             Carlo errors and posterior summaries.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Convergence diagnostics for a PosteriorSample.

The functions taking a sample and a parameter name have array variants
(prefixed with an underscore) working on a (chains, draws) matrix.

>>> x = np.array([[1.0, 2.0, 3.0, 4.0], [1.0, 2.0, 3.0, 4.0]])
>>> round(_rhat(x), 4)
0.866
'''

__version__ = "0.1"

#===============================================================================
#
# Dependencies
#
#-------------------------------------------------------------------------------

import numpy as np

#===============================================================================
#
# Exceptions
#
#-------------------------------------------------------------------------------

class DiagnosticError(ValueError):
    '''A diagnostic is undefined for the given draws.'''

#===============================================================================
#
# Array level
#
#-------------------------------------------------------------------------------

def _check_chains(x, name):
    if np.any(np.var(x, axis=1) == 0):
        raise DiagnosticError('Parameter "%s": a chain is constant' % name)


def _rhat(x, name='?'):
    '''Classic (non-split) Gelman-Rubin factor of a (chains, n) matrix.'''
    m, n = x.shape
    if m < 2 or n < 2:
        raise DiagnosticError('Parameter "%s": R-hat needs >= 2 chains of '
            '>= 2 draws, got %d x %d' % (name, m, n))
    _check_chains(x, name)
    w = float(np.mean(np.var(x, axis=1, ddof=1)))
    b = n * float(np.var(np.mean(x, axis=1), ddof=1))
    return float(np.sqrt(((n - 1.0) / n * w + b / n) / w))


def autocorrelation(chain):
    '''Normalized autocorrelation of one chain at every lag, via FFT.

    >>> np.round(autocorrelation(np.array([1.0, -1.0, 1.0, -1.0]))[:2], 12).tolist()
    [1.0, -0.75]
    '''
    n = chain.shape[0]
    d = chain - np.mean(chain)
    size = 1
    while size < 2 * n:
        size *= 2
    f = np.fft.rfft(d, size)
    acov = np.fft.irfft(f * np.conjugate(f), size)[:n]
    return acov / acov[0]


def _chain_ess(chain):
    '''n / tau with Geyer's initial positive sequence truncation.'''
    n = chain.shape[0]
    rho = autocorrelation(chain)
    tau = -1.0
    for k in range(0, n - 1, 2):
        pair = rho[k] + rho[k + 1]
        if pair <= 0:
            break
        tau += 2.0 * pair
    return n / tau


def _ess(x, name='?'):
    m, n = x.shape
    if m * n < 100:
        raise DiagnosticError('Parameter "%s": ESS needs >= 100 draws, got %d'
            % (name, m * n))
    _check_chains(x, name)
    return float(sum(_chain_ess(x[c]) for c in range(m)))

#===============================================================================
#
# Sample level
#
#-------------------------------------------------------------------------------

def rhat(sample, parameter):
    return _rhat(sample.column(parameter), parameter)


def ess(sample, parameter):
    return _ess(sample.column(parameter), parameter)


def mcse(sample, parameter):
    '''Monte Carlo standard error of the posterior mean.'''
    x = sample.column(parameter)
    return float(np.std(x, ddof=1) / np.sqrt(_ess(x, parameter)))


def _or_nan(func, *args):
    try:
        return func(*args)
    except DiagnosticError:
        return float('nan')


def summarize(sample):
    '''One row per parameter: mean, sd, quantiles, R-hat, ESS and MCSE.

    R-hat, ESS and MCSE are NaN where they are undefined.
    '''
    rows = []
    for name in sample.parameter_names:
        x = sample.column(name)
        flat = x.reshape(-1)
        q05, q50, q95 = np.quantile(flat, [0.05, 0.5, 0.95])
        n_eff = _or_nan(_ess, x, name)
        sd = float(np.std(flat, ddof=1)) if flat.shape[0] > 1 else float('nan')
        rows.append({
            'parameter': name,
            'mean': float(np.mean(flat)),
            'sd': sd,
            'q05': float(q05),
            'q50': float(q50),
            'q95': float(q95),
            'rhat': _or_nan(_rhat, x, name),
            'ess': n_eff,
            'mcse': float(sd / np.sqrt(n_eff)),
            })
    return rows


def interval_coverage(sample, truth, level=0.9):
    '''Fraction of parameters whose central interval covers the truth.'''
    if not 0.0 < level < 1.0:
        raise ValueError('level must lie in (0, 1), got %r' % level)
    tail = (1.0 - level) / 2.0
    hits = 0
    for name in sample.parameter_names:
        lo, hi = np.quantile(sample.column(name).reshape(-1),
            [tail, 1.0 - tail])
        if lo <= truth[name] <= hi:
            hits += 1
    return hits / float(len(sample.parameter_names))


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
