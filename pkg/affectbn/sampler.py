#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN SAMPLER
#################################################################################
# File:       sampler.py
#
#             Adaptive random-walk Metropolis-within-Gibbs over all
#             coefficients and noise scales of a network.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Draws from the posterior of the network parameters.

Every sweep updates one scalar at a time: the coefficients node by node
in topological order (intercept, covariates, parents), then the sigmas
of the gaussian-linear nodes.  Each proposal is a Gaussian step; during
warm-up the per-parameter step scales are adapted by Robbins-Monro
towards a target acceptance rate and frozen afterwards.  With
standardize the coefficient steps are taken in orthogonalized design
coordinates; draws are always reported as raw coefficients.

Each chain draws from its own stream, derived from (seed, chain index),
so the draws do not depend on how chains are scheduled.

>>> c = SamplerConfig(chains=2, iterations=10, warmup=4, thin=2)
>>> c.n_kept, c.kept_iterations().tolist()
(3, [6, 8, 10])
>>> SamplerConfig(iterations=10, warmup=10)
Traceback (most recent call last):
...
affectbn.sampler.ConfigError: warmup (10) must be smaller than iterations (10)
'''

__version__ = "0.1"

#===============================================================================
#
# Dependencies
#
#-------------------------------------------------------------------------------

from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.linalg import solve_triangular
from scipy.special import log_expit

from affectbn.constants import TARGET_ACCEPTANCE, ADAPT_DECAY, \
    INITIAL_SCALE
from affectbn.density import log_unnormalized_posterior
from affectbn.families.gaussian import HALF_LOG_2PI
from affectbn.model import Dataset, ParameterVector, fingerprint
from affectbn.output import Message

#===============================================================================
#
# Exceptions
#
#-------------------------------------------------------------------------------

class ConfigError(ValueError):
    '''Sampler or run configuration is invalid.'''


class NonFiniteStartError(ValueError):
    def __init__(self, value):
        super(NonFiniteStartError, self).__init__(
            'The initial point has log posterior %r; cannot start the '
            'chains' % value)

#===============================================================================
#
# Configuration
#
#-------------------------------------------------------------------------------

class SamplerConfig(object):
    ''' Chain count, run length, thinning, seed and adaptation settings.

    Without an explicit warmup half of the iterations are used.
    '''

    def __init__(self, chains=4, iterations=2000, warmup=None, thin=1, seed=0,
        target_acceptance=TARGET_ACCEPTANCE, adapt=True, standardize=False
        ):
        self.chains = chains
        self.iterations = iterations
        self.warmup = iterations // 2 if warmup is None else warmup
        self.thin = thin
        self.seed = seed
        self.target_acceptance = target_acceptance
        self.adapt = adapt
        self.standardize = standardize
        self.check()

    def check(self):
        for key in ('chains', 'iterations', 'warmup', 'thin', 'seed'):
            value = getattr(self, key)
            if isinstance(value, bool) or \
                    not isinstance(value, (int, np.integer)):
                raise ConfigError('%s must be an integer, got %r'
                    % (key, value))
        if self.chains < 1:
            raise ConfigError('chains must be >= 1, got %d' % self.chains)
        if self.iterations < 1:
            raise ConfigError('iterations must be >= 1, got %d'
                % self.iterations)
        if self.warmup < 0:
            raise ConfigError('warmup must be >= 0, got %d' % self.warmup)
        if self.warmup >= self.iterations:
            raise ConfigError('warmup (%d) must be smaller than iterations '
                '(%d)' % (self.warmup, self.iterations))
        if self.thin < 1:
            raise ConfigError('thin must be >= 1, got %d' % self.thin)
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError('seed must be a 64-bit unsigned integer, got '
                '%d' % self.seed)
        if not 0.0 < self.target_acceptance < 1.0:
            raise ConfigError('target_acceptance must lie in (0, 1), got %r'
                % self.target_acceptance)

    @property
    def n_kept(self):
        return (self.iterations - self.warmup) // self.thin

    def kept_iterations(self):
        '''1-based numbers of the iterations kept in every chain.'''
        return np.arange(self.warmup + self.thin, self.iterations + 1,
            self.thin)

    def to_dict(self):
        return {
            'chains': self.chains,
            'iterations': self.iterations,
            'warmup': self.warmup,
            'thin': self.thin,
            'seed': self.seed,
            'target_acceptance': self.target_acceptance,
            'adapt': self.adapt,
            'standardize': self.standardize,
            }

    @classmethod
    def from_dict(cls, values):
        known = ('chains', 'iterations', 'warmup', 'thin', 'seed',
                 'target_acceptance', 'adapt', 'standardize')
        unknown = sorted(set(values) - set(known))
        if unknown:
            raise ConfigError('Unknown sampler settings: %s'
                % ', '.join(unknown))
        return cls(**values)

    def __eq__(self, other):
        return isinstance(other, SamplerConfig) and \
            self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not self.__eq__(other)

#===============================================================================
#
# Posterior sample
#
#-------------------------------------------------------------------------------

class PosteriorSample(object):
    ''' Kept draws of every chain plus the run metadata.

    draws has shape (chains, kept draws, parameters).
    '''

    def __init__(self, parameter_names, draws, acceptance, config,
        model_fingerprint
        ):
        self.parameter_names = list(parameter_names)
        self.draws = np.asarray(draws, dtype=float)
        self.acceptance = np.asarray(acceptance, dtype=float)
        self.config = config
        self.fingerprint = model_fingerprint
        self._index = dict((n, i) for i, n in enumerate(self.parameter_names))
        if self.draws.ndim != 3 or \
                self.draws.shape[2] != len(self.parameter_names):
            raise ValueError('draws must have shape (chains, draws, %d), '
                'got %s' % (len(self.parameter_names), self.draws.shape))

    @property
    def n_chains(self):
        return self.draws.shape[0]

    @property
    def n_kept(self):
        return self.draws.shape[1]

    @property
    def n_draws(self):
        return self.draws.shape[0] * self.draws.shape[1]

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError('No parameter named "%s"' % name)

    def column(self, name):
        return self.draws[:, :, self.index(name)]

    def pooled(self, max_draws=None):
        '''All draws stacked chain after chain, optionally thinned out.'''
        flat = self.draws.reshape(-1, self.draws.shape[2])
        return flat[self.subsample(max_draws)]

    def subsample(self, max_draws=None):
        '''Indices of evenly spaced pooled draws.'''
        total = self.n_draws
        if max_draws is None or max_draws >= total:
            return np.arange(total)
        if max_draws < 1:
            raise ConfigError('max_draws must be >= 1, got %r' % max_draws)
        return (np.arange(max_draws) * total) // max_draws

    def param_vector(self, model, chain, draw):
        return ParameterVector(model, self.draws[chain, draw])

    def iter_param_vectors(self, model, max_draws=None):
        for row in self.pooled(max_draws):
            yield ParameterVector(model, row)

#===============================================================================
#
# Per-node update machinery
#
#-------------------------------------------------------------------------------

class NodeUpdater(object):
    ''' Holds one node's design and updates its coefficients.

    The chain moves in coordinates gamma with raw coefficients
    beta = M gamma and design W = X M, X being the raw design with a
    leading column of ones.  Without standardize M is the identity.
    With it the centred and scaled design is orthogonalized by a QR
    decomposition and W'W = n I, so the coefficients of a node are
    close to independent a posteriori and scalar steps mix well.  The
    prior is always the one on the raw coefficients.

    A gaussian-linear node is scored from its sufficient statistics,
    so a coefficient step costs O(k) and not O(n).
    '''

    def __init__(self, node, data, standardize=False):
        self.node = node
        self.name = node.name
        self.gaussian = node.family_impl.has_sigma
        self.y = data.column(node.name)
        self.n = data.n_rows
        x = np.column_stack([np.ones(self.n)] +
            [np.broadcast_to(data.column(i), (self.n,)) for i in node.inputs])
        self.n_coefficients = x.shape[1]
        self.raw_from_gamma = self._coordinates(x, standardize)
        self.gamma_from_raw = np.linalg.inv(self.raw_from_gamma)
        self.design = np.asfortranarray(x @ self.raw_from_gamma)

        prior_mean = np.array([p.mean for p in node.coefficient_priors])
        prior_var = np.array([p.variance for p in node.coefficient_priors])
        m = self.raw_from_gamma
        # log prior = -gamma' P gamma / 2 + b' gamma + const
        self.prior_prec = m.T @ (m / prior_var[:, None])
        self.prior_shift = m.T @ (prior_mean / prior_var)

        if self.gaussian:
            self.gram = self.design.T @ self.design
            self.wy = self.design.T @ self.y
        self.sigma_prior = node.sigma_prior

    def _coordinates(self, x, standardize):
        k = x.shape[1]
        if not standardize or self.n < max(k, 2):
            return np.eye(k)
        sd = np.std(x[:, 1:], axis=0)
        varies = sd > 0
        centres = np.where(varies, np.mean(x[:, 1:], axis=0), 0.0)
        scales = np.where(varies, sd, 1.0)
        scale = np.eye(k)
        scale[0, 1:] = -centres / scales
        scale[1:, 1:] = np.diag(1.0 / scales)
        r = np.linalg.qr(x @ scale, mode='r')
        diag = np.abs(np.diag(r))
        if np.min(diag) <= 1e-10 * np.max(diag):
            # collinear inputs: centre and scale only
            return scale
        r = r * np.sign(np.diag(r))[:, None]
        return np.sqrt(self.n) * (scale @ solve_triangular(r, np.eye(k)))

    def to_raw(self, gamma):
        return self.raw_from_gamma @ np.asarray(gamma, dtype=float)

    def from_raw(self, beta):
        return self.gamma_from_raw @ np.asarray(beta, dtype=float)

    def eta(self, gamma):
        return self.design @ np.asarray(gamma, dtype=float)

    def rss(self, eta):
        r = self.y - eta
        return float(np.dot(r, r))

    def gaussian_log_lik(self, rss, sigma):
        return -self.n * (HALF_LOG_2PI + np.log(sigma)) \
            - 0.5 * rss / (sigma * sigma)

    def log_lik(self, eta, sigma=None):
        if self.gaussian:
            return self.gaussian_log_lik(self.rss(eta), sigma)
        # y log s(eta) + (1 - y) log s(-eta) for y in {0, 1}
        return float(np.dot(self.y, eta) + np.sum(log_expit(-eta)))

    def sweep(self, gamma, sigma, steps, log_u):
        '''Proposes gamma[j] + steps[j] for every j in turn and accepts
        when log_u[j] is below the log acceptance ratio.

        Returns the new coefficients, the log ratios and the accepted
        flags.
        '''
        gamma = np.array(gamma, dtype=float)
        k = self.n_coefficients
        log_alpha = np.empty(k)
        moved = np.zeros(k, dtype=bool)
        if self.gaussian:
            s2 = sigma * sigma
            prec = self.gram / s2 + self.prior_prec
            # minus the gradient of the log conditional at gamma
            slope = prec @ gamma - (self.wy / s2 + self.prior_shift)
            for j in range(k):
                d = steps[j]
                log_alpha[j] = -0.5 * d * (d * prec[j, j] + 2.0 * slope[j])
                if log_u[j] < log_alpha[j]:
                    gamma[j] += d
                    slope += d * prec[:, j]
                    moved[j] = True
            return gamma, log_alpha, moved

        prec = self.prior_prec
        slope = prec @ gamma - self.prior_shift
        e = self.eta(gamma)
        ll = self.log_lik(e)
        for j in range(k):
            d = steps[j]
            e_new = e + d * self.design[:, j]
            ll_new = self.log_lik(e_new)
            log_alpha[j] = ll_new - ll - \
                0.5 * d * (d * prec[j, j] + 2.0 * slope[j])
            if log_u[j] < log_alpha[j]:
                gamma[j] += d
                slope += d * prec[:, j]
                e, ll = e_new, ll_new
                moved[j] = True
        return gamma, log_alpha, moved

    def initial_sigma(self):
        prior = self.sigma_prior
        if self.n > 1:
            sd = float(np.std(self.y, ddof=1))
        else:
            sd = 0.5 * (prior.lo + prior.hi)
        return prior.clamp(sd)

#===============================================================================
#
# Sampler
#
#-------------------------------------------------------------------------------

class Sampler(object):
    ''' Runs the chains of one fit.'''

    def __init__(self, model, data, config, output=None):
        self.model = model
        self.data = data
        self.config = config
        self.output = output if output is not None else Message()
        self.updaters = [NodeUpdater(node, data, config.standardize)
            for node in model.ordered_nodes()]
        self.gaussians = [u for u in self.updaters if u.gaussian]
        self.n_params = model.n_parameters

    def initial_values(self):
        values = np.zeros(self.n_params)
        for upd in self.gaussians:
            values[self.model.sigma_index[upd.name]] = upd.initial_sigma()
        return values

    def check_start(self):
        start = ParameterVector(self.model, self.initial_values())
        value = log_unnormalized_posterior(self.model, start, self.data)
        if not np.isfinite(value):
            raise NonFiniteStartError(value)
        return start

    def _adapt(self, log_scale, index, it, log_alpha):
        log_alpha = np.where(np.isnan(log_alpha), -np.inf, log_alpha)
        alpha = np.exp(np.minimum(0.0, log_alpha))
        log_scale[index] += (it + 1.0) ** (-ADAPT_DECAY) * \
            (alpha - self.config.target_acceptance)

    def run_chain(self, chain):
        config = self.config
        model = self.model
        output = self.output
        rng = np.random.default_rng(
            np.random.SeedSequence(config.seed, spawn_key=(chain,)))
        output.debug('Chain %d: starting %d iterations' % (chain + 1,
            config.iterations), 4)

        start = self.initial_values()
        gamma = {}
        sigma = {}
        for upd in self.updaters:
            gamma[upd.name] = upd.from_raw(start[model.coef_slices[upd.name]])
            if upd.gaussian:
                sigma[upd.name] = start[model.sigma_index[upd.name]]

        log_scale = np.full(self.n_params, np.log(INITIAL_SCALE))
        for upd in self.gaussians:
            log_scale[model.sigma_index[upd.name]] = \
                np.log(INITIAL_SCALE * sigma[upd.name])

        accepted = np.zeros(self.n_params)
        draws = np.empty((config.n_kept, self.n_params))
        kept = 0

        for it in range(config.iterations):
            adapting = config.adapt and it < config.warmup
            counting = it >= config.warmup
            z = rng.standard_normal(self.n_params)
            log_u = np.log1p(-rng.random(self.n_params))

            k = 0
            for upd in self.updaters:
                span = slice(k, k + upd.n_coefficients)
                gamma[upd.name], log_alpha, moved = upd.sweep(
                    gamma[upd.name], sigma.get(upd.name),
                    np.exp(log_scale[span]) * z[span], log_u[span])
                if counting:
                    accepted[span] += moved
                if adapting:
                    self._adapt(log_scale, span, it, log_alpha)
                k = span.stop

            for upd in self.gaussians:
                s = sigma[upd.name]
                rss = upd.rss(upd.eta(gamma[upd.name]))
                s_new = s + np.exp(log_scale[k]) * z[k]
                if upd.sigma_prior.contains(s_new):
                    # flat prior inside the support
                    log_alpha = upd.gaussian_log_lik(rss, s_new) - \
                        upd.gaussian_log_lik(rss, s)
                else:
                    log_alpha = -np.inf
                if log_u[k] < log_alpha:
                    sigma[upd.name] = s_new
                    if counting:
                        accepted[k] += 1
                if adapting:
                    self._adapt(log_scale, k, it, log_alpha)
                k += 1

            if counting and (it + 1 - config.warmup) % config.thin == 0:
                row = draws[kept]
                for upd in self.updaters:
                    row[model.coef_slices[upd.name]] = upd.to_raw(gamma[upd.name])
                    if upd.gaussian:
                        row[model.sigma_index[upd.name]] = sigma[upd.name]
                kept += 1

            if it + 1 == config.warmup:
                output.debug('Chain %d: warm-up done, step scales %s'
                    % (chain + 1, np.round(np.exp(log_scale), 4).tolist()), 6)

        acceptance = accepted / float(config.iterations - config.warmup)
        output.debug('Chain %d: done, mean acceptance %.3f'
            % (chain + 1, float(np.mean(acceptance))), 4)
        return draws, acceptance


def fit(model, data, config=None, output=None, threads=1):
    '''Draws from the posterior of the network parameters given data.

    Returns a PosteriorSample with draws reported on the raw coefficient
    scale whatever the sampler parameterization.
    '''
    config = config if config is not None else SamplerConfig()
    config.check()
    if threads < 1:
        raise ConfigError('threads must be >= 1, got %r' % threads)
    if data.model is not model:
        data = Dataset(model, data.columns)

    sampler = Sampler(model, data, config, output)
    sampler.check_start()

    if threads == 1 or config.chains == 1:
        results = [sampler.run_chain(c) for c in range(config.chains)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            # map yields in chain order whatever the completion order
            results = list(pool.map(sampler.run_chain, range(config.chains)))

    draws = np.stack([r[0] for r in results])
    acceptance = np.stack([r[1] for r in results])
    return PosteriorSample(model.parameter_names(), draws, acceptance, config,
        fingerprint(model))


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
