#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN PREDICTIVE QUERIES
#################################################################################
# File:       predictive.py
#
#             Forward simulation, posterior predictive draws and
#             evidence-conditioned queries over binary node states.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Posterior predictive machinery.

A query asks for the joint distribution of some bernoulli-logistic
target nodes given point evidence.  Per posterior draw the target
states, and the unobserved binary nodes they depend on, are enumerated
exactly; unobserved continuous nodes are drawn forward and every draw
is weighted by the densities of the observed nodes (likelihood
weighting).  Nodes that are not ancestors of a target or an observed
node cannot change the answer and are never visited.

Weights stay in log space until a per-draw maximum has been subtracted.

>>> from affectbn.model import *
>>> m = ModelSpec([], [NodeSpec('A', 'bernoulli-logistic'),
...                    NodeSpec('B', 'bernoulli-logistic')])
>>> r = query(m, ParameterVector.zeros(m), Evidence(), ['A', 'B'])
>>> r.states
[(0, 0), (0, 1), (1, 0), (1, 1)]
>>> r.probabilities.tolist()
[0.25, 0.25, 0.25, 0.25]
'''

__version__ = "0.1"

#===============================================================================
#
# Dependencies
#
#-------------------------------------------------------------------------------

import hashlib
import itertools
import json
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from affectbn.constants import LATENT_DRAWS, BATCH_SIZE, POOLED, \
    DRAW_AVERAGE, AVERAGING_SCHEMES, BERNOULLI
from affectbn.density import accumulate, node_inputs
from affectbn.families import DomainError
from affectbn.model import ParameterVector, ValidationError, \
    DanglingReferenceError, MissingInputError, FingerprintMismatchError, \
    fingerprint
from affectbn.output import Message
from affectbn.sampler import ConfigError

#===============================================================================
#
# Exceptions
#
#-------------------------------------------------------------------------------

class TargetObservedError(ValueError):
    def __init__(self, name):
        self.name = name
        super(TargetObservedError, self).__init__(
            'Target node "%s" is also given as evidence' % name)


class AllWeightsZeroError(ValueError):
    def __init__(self):
        super(AllWeightsZeroError, self).__init__(
            'The evidence has zero density under every posterior draw')

#===============================================================================
#
# Evidence
#
#-------------------------------------------------------------------------------

class Evidence(object):
    ''' Covariate values plus observed node values.

    >>> e = Evidence({'Age': 20.0}, {'MNB': 20.0})
    >>> sorted(e.merge(Evidence({'Sex': 0.0})).covariates.items())
    [('Age', 20.0), ('Sex', 0.0)]
    '''

    def __init__(self, covariates=None, observations=None):
        self.covariates = dict((k, float(v))
            for k, v in (covariates or {}).items())
        self.observations = dict((k, float(v))
            for k, v in (observations or {}).items())
        both = set(self.covariates) & set(self.observations)
        if both:
            raise ValidationError('"%s" given twice as evidence'
                % sorted(both)[0])

    @classmethod
    def from_pairs(cls, model, pairs):
        '''Splits name=value pairs into covariates and node observations.'''
        covariates, observations = {}, {}
        for name, value in pairs:
            if name in covariates or name in observations:
                raise ValidationError('"%s" given twice as evidence' % name)
            if name in model.covariates:
                covariates[name] = value
            elif name in model.by_name:
                observations[name] = value
            else:
                raise DanglingReferenceError(name, 'the evidence', 'variable')
        return cls(covariates, observations)

    def names(self):
        return set(self.covariates) | set(self.observations)

    def merge(self, other):
        clash = self.names() & other.names()
        if clash:
            raise ValidationError('"%s" given twice as evidence'
                % sorted(clash)[0])
        covariates = dict(self.covariates)
        covariates.update(other.covariates)
        observations = dict(self.observations)
        observations.update(other.observations)
        return Evidence(covariates, observations)

    def check(self, model):
        '''Type-checks the evidence against the model.'''
        for name in self.covariates:
            if name not in model.covariates:
                raise DanglingReferenceError(name, 'the evidence', 'covariate')
        for name in model.covariates.names():
            if name not in self.covariates:
                raise MissingInputError(name)
            value = self.covariates[name]
            if not np.isfinite(value):
                raise DomainError(name, 'non-finite value')
            if model.covariates.is_binary(name) and value not in (0.0, 1.0):
                raise DomainError(name, 'value %r is not binary' % value)
        for name, value in self.observations.items():
            node = model.node(name)
            node.family_impl.check_value(name, value)

    def __eq__(self, other):
        return isinstance(other, Evidence) and \
            (self.covariates, self.observations) == \
            (other.covariates, other.observations)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        items = sorted(self.covariates.items()) + \
            sorted(self.observations.items())
        return 'Evidence(%s)' % ','.join('%s=%g' % i for i in items)

#===============================================================================
#
# Results
#
#-------------------------------------------------------------------------------

class QueryResult(object):
    ''' Normalized probabilities of the joint target states.

    States are tuples of 0/1 in target order, the first target varying
    slowest.
    '''

    def __init__(self, targets, probabilities, mc_standard_errors,
        draws_used, latent_draws_per_state, averaging=POOLED
        ):
        self.targets = list(targets)
        self.states = list(itertools.product((0, 1), repeat=len(targets)))
        self.probabilities = np.asarray(probabilities, dtype=float)
        self.mc_standard_errors = np.asarray(mc_standard_errors, dtype=float)
        self.draws_used = draws_used
        self.latent_draws_per_state = latent_draws_per_state
        self.averaging = averaging

    def probability(self, state):
        '''P(state); state is a tuple in target order or a dict.'''
        if isinstance(state, dict):
            state = tuple(int(state[t]) for t in self.targets)
        return float(self.probabilities[self.states.index(tuple(state))])

    def marginal(self, target):
        '''P(target = 1).'''
        k = self.targets.index(target)
        return float(sum(p for s, p in zip(self.states, self.probabilities)
                         if s[k] == 1))

    def state_labels(self):
        return ['_'.join('%s%d' % (t, v) for t, v in zip(self.targets, s))
                for s in self.states]

    def rows(self):
        result = []
        for state, p, se in zip(self.states, self.probabilities,
                                self.mc_standard_errors):
            row = dict(zip(self.targets, state))
            row['probability'] = float(p)
            row['mc_se'] = float(se)
            result.append(row)
        return result


class SweepResult(object):
    ''' One QueryResult per grid point, points in grid order.'''

    def __init__(self, names, points, results):
        self.names = list(names)
        self.points = list(points)
        self.results = list(results)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(zip(self.points, self.results))


class PredictiveDraws(object):
    ''' Posterior predictive node values, draw-major.'''

    def __init__(self, draw_index, values):
        self.draw_index = np.asarray(draw_index, dtype=int)
        self.values = values

    def __len__(self):
        return self.draw_index.shape[0]

    def column(self, name):
        return self.values[name]

#===============================================================================
#
# Parameter blocks
#
#-------------------------------------------------------------------------------

def parameter_block(model, posterior, max_draws=None):
    '''Posterior draws (or a single parameter vector) as a (M, p) matrix.'''
    if isinstance(posterior, ParameterVector):
        if posterior.model != model:
            raise FingerprintMismatchError(fingerprint(model),
                fingerprint(posterior.model))
        return posterior.values[None, :]
    expected = fingerprint(model)
    if posterior.fingerprint != expected:
        raise FingerprintMismatchError(expected, posterior.fingerprint)
    return posterior.pooled(max_draws)


def _node_coefficients(model, node, block, ndim):
    shape = (block.shape[0],) + (1,) * (ndim - 1)
    sl = model.coef_slices[node.name]
    coefs = [block[:, i].reshape(shape) for i in range(sl.start, sl.stop)]
    sigma = None
    if node.name in model.sigma_index:
        sigma = block[:, model.sigma_index[node.name]].reshape(shape)
    return coefs, sigma


def simulate(model, block, covariates, n, rng):
    '''n forward draws per parameter row; every value has shape (M, n).'''
    values = {}
    shape = (block.shape[0], n)
    for node in model.ordered_nodes():
        coefs, sigma = _node_coefficients(model, node, block, 2)
        eta = accumulate(coefs, node_inputs(node, covariates, values))
        eta = np.broadcast_to(eta, shape)
        values[node.name] = node.family_impl.sample(eta, sigma, rng)
    return values

#===============================================================================
#
# Forward sampling
#
#-------------------------------------------------------------------------------

def ancestral_sample(model, params, covariates, rng):
    '''One joint draw of every node under a single parameter vector.'''
    values = simulate(model, params.values[None, :], covariates, 1, rng)
    return dict((name, float(v[0, 0])) for name, v in values.items())


def posterior_predictive(model, posterior, covariates, n_per_draw, rng,
    max_draws=None
    ):
    '''n_per_draw forward draws for every kept posterior draw.'''
    block = parameter_block(model, posterior, max_draws)
    if n_per_draw < 0:
        raise ConfigError('n_per_draw must be >= 0, got %r' % n_per_draw)
    draw_index = np.repeat(np.arange(block.shape[0]), n_per_draw)
    if n_per_draw == 0:
        return PredictiveDraws(draw_index,
            dict((name, np.empty(0)) for name in model.topo_order))
    values = simulate(model, block, covariates, n_per_draw, rng)
    return PredictiveDraws(draw_index,
        dict((name, v.reshape(-1)) for name, v in values.items()))


def predictive_summary(model, posterior, covariates, n_per_draw, rng,
    max_draws=None
    ):
    '''Mean, sd and quantiles of every node under the predictive.'''
    return summarize_draws(model, posterior_predictive(model, posterior,
        covariates, n_per_draw, rng, max_draws))


def summarize_draws(model, draws):
    if len(draws) == 0:
        raise ConfigError('No predictive draws to summarize')
    rows = []
    for name in model.topo_order:
        x = draws.column(name)
        q05, q50, q95 = np.quantile(x, [0.05, 0.5, 0.95])
        rows.append({
            'node': name,
            'mean': float(np.mean(x)),
            'sd': float(np.std(x, ddof=1)) if x.shape[0] > 1 else 0.0,
            'q05': float(q05),
            'q50': float(q50),
            'q95': float(q95),
            })
    return rows

#===============================================================================
#
# Queries
#
#-------------------------------------------------------------------------------

class QueryPlan(object):
    ''' Which nodes a query visits and how each one is treated.'''

    def __init__(self, model, evidence, targets, latent_draws):
        targets = list(targets)
        if not targets:
            raise ValidationError('A query needs at least one target')
        if len(set(targets)) != len(targets):
            raise ValidationError('A target is listed twice')
        for name in targets:
            node = model.node(name)
            if name in evidence.observations:
                raise TargetObservedError(name)
            if node.family != BERNOULLI:
                raise ValidationError('Target "%s" is not a %s node'
                    % (name, BERNOULLI))
        if latent_draws < 1:
            raise ConfigError('latent_draws must be >= 1, got %r'
                % latent_draws)
        evidence.check(model)

        weighted = set(targets) | set(evidence.observations)
        latent = model.ancestors(weighted) - weighted
        self.model = model
        self.evidence = evidence
        self.targets = targets
        self.discrete = [n for n in model.topo_order if n in latent
                         and model.by_name[n].family == BERNOULLI]
        self.continuous = [n for n in model.topo_order if n in latent
                           and model.by_name[n].family != BERNOULLI]
        self.visit = [n for n in model.topo_order
                      if n in weighted or n in latent]
        enumerated = self.targets + self.discrete
        self.position = dict((n, i) for i, n in enumerate(enumerated))
        self.bits = np.array(list(itertools.product((0.0, 1.0),
            repeat=len(enumerated))))
        self.n_states = 2 ** len(self.targets)
        self.n_inner = 2 ** len(self.discrete)
        # without continuous latents every weight is exact
        self.latent_draws = latent_draws if self.continuous else 1

    def log_weights(self, block, rng):
        '''log weight of every (draw, enumerated config, latent draw).'''
        model = self.model
        shape = (block.shape[0], self.bits.shape[0], self.latent_draws)
        values = {}
        logw = np.zeros(shape)
        for name in self.visit:
            node = model.by_name[name]
            family = node.family_impl
            coefs, sigma = _node_coefficients(model, node, block, 3)
            eta = accumulate(coefs,
                node_inputs(node, self.evidence.covariates, values))
            if name in self.evidence.observations:
                value = self.evidence.observations[name]
                logw = logw + family.log_density(value, eta, sigma)
            elif name in self.position:
                value = self.bits[:, self.position[name]][None, :, None]
                logw = logw + family.log_density(value, eta, sigma)
            else:
                value = family.sample(np.broadcast_to(eta, shape), sigma, rng)
            values[name] = value
        return np.broadcast_to(logw, shape)

    def reduce(self, logw):
        '''Per draw: log shift, shifted state weights and their variances.'''
        m = logw.shape[0]
        logw = logw.reshape(m, self.n_states, self.n_inner, self.latent_draws)
        shift = np.max(logw.reshape(m, -1), axis=1)
        live = np.isfinite(shift)
        w = np.zeros(logw.shape)
        w[live] = np.exp(logw[live] - shift[live][:, None, None, None])
        weights = np.sum(np.mean(w, axis=3), axis=2)
        if self.latent_draws > 1:
            variances = np.sum(np.var(w, axis=3, ddof=1), axis=2) / \
                self.latent_draws
        else:
            variances = np.zeros(weights.shape)
        return shift, weights, variances


def _delta_se(p, total, variances):
    '''Standard errors of p = A / sum(A) given the variances of A.'''
    k = p.shape[0]
    grad = (np.eye(k) - p[:, None]) / total
    return np.sqrt(np.dot(grad * grad, variances))


def _combine(shift, weights, variances, averaging, output):
    live = np.isfinite(shift)
    if not np.any(live):
        raise AllWeightsZeroError()
    if averaging == POOLED:
        top = np.max(shift[live])
        scale = np.zeros(shift.shape)
        scale[live] = np.exp(shift[live] - top)
        a = np.sum(scale[:, None] * weights, axis=0)
        v = np.sum((scale * scale)[:, None] * variances, axis=0)
        total = float(np.sum(a))
        if not total > 0:
            raise AllWeightsZeroError()
        p = a / total
        return p, _delta_se(p, total, v)

    totals = np.sum(weights, axis=1)
    good = live & (totals > 0)
    if not np.any(good):
        raise AllWeightsZeroError()
    if not np.all(good):
        output.warn('%d posterior draws give the evidence zero density and '
            'are left out of the average' % int(np.sum(~good)), 2)
    probs = weights[good] / totals[good][:, None]
    var = np.zeros(probs.shape[1])
    for p, t, v in zip(probs, totals[good], variances[good]):
        var += _delta_se(p, t, v) ** 2
    count = float(probs.shape[0])
    return np.mean(probs, axis=0), np.sqrt(var) / count


def query(model, posterior, evidence, targets, latent_draws=LATENT_DRAWS,
    rng=None, max_draws=None, batch_size=BATCH_SIZE, averaging=POOLED,
    output=None
    ):
    '''P(targets | evidence, data) by enumeration and likelihood weighting.

    posterior is a PosteriorSample or, for a degenerate single-atom
    posterior, a ParameterVector.  With averaging 'pooled' the per-draw
    state weights are summed over draws and normalized once; with
    'draw-average' each draw is normalized first and the conditional
    probabilities are averaged.
    '''
    output = output if output is not None else Message()
    if averaging not in AVERAGING_SCHEMES:
        raise ConfigError('Unknown averaging scheme "%s", expected one of %s'
            % (averaging, ', '.join(AVERAGING_SCHEMES)))
    if batch_size < 1:
        raise ConfigError('batch_size must be >= 1, got %r' % batch_size)
    rng = rng if rng is not None else np.random.default_rng(0)

    plan = QueryPlan(model, evidence, targets, latent_draws)
    block = parameter_block(model, posterior, max_draws)
    output.debug('Query %s | %r: %d draws, enumerating %s, weighting %s'
        % (','.join(plan.targets), evidence, block.shape[0],
           plan.targets + plan.discrete, plan.continuous), 6)

    parts = []
    for start in range(0, block.shape[0], batch_size):
        logw = plan.log_weights(block[start:start + batch_size], rng)
        parts.append(plan.reduce(logw))
    shift = np.concatenate([s for s, w, v in parts])
    weights = np.concatenate([w for s, w, v in parts])
    variances = np.concatenate([v for s, w, v in parts])

    p, se = _combine(shift, weights, variances, averaging, output)
    return QueryResult(plan.targets, p, se, block.shape[0],
        plan.latent_draws if plan.continuous else 0, averaging)

#===============================================================================
#
# Sweeps
#
#-------------------------------------------------------------------------------

def point_stream(seed, point):
    '''Random stream of a grid point, independent of the axis order.

    >>> a = point_stream(7, [('SRT', 20.0), ('MNB', 9.5)]).random()
    >>> b = point_stream(7, [('MNB', 9.5), ('SRT', 20.0)]).random()
    >>> a == b
    True
    '''
    key = json.dumps(sorted([name, repr(float(value))]
        for name, value in point))
    digest = hashlib.sha256(key.encode('utf-8')).digest()
    words = tuple(int.from_bytes(digest[i:i + 4], 'little')
        for i in range(0, 16, 4))
    return np.random.default_rng(np.random.SeedSequence(seed,
        spawn_key=words))


def sweep(model, posterior, fixed_evidence, grid, targets,
    latent_draws=LATENT_DRAWS, seed=0, max_draws=None, batch_size=BATCH_SIZE,
    averaging=POOLED, threads=1, output=None
    ):
    '''Runs query at every point of the Cartesian product of grid values.

    grid is a list of (name, values); the first axis varies slowest.
    '''
    output = output if output is not None else Message()
    names = [name for name, values in grid]
    if len(set(names)) != len(names):
        raise ValidationError('A grid variable is listed twice')
    for name in names:
        if name in fixed_evidence.names():
            raise ValidationError('Grid variable "%s" is also fixed evidence'
                % name)
        if name not in model.covariates and name not in model.by_name:
            raise DanglingReferenceError(name, 'the grid', 'variable')
    if threads < 1:
        raise ConfigError('threads must be >= 1, got %r' % threads)

    points = list(itertools.product(*[[float(v) for v in values]
        for name, values in grid]))

    def run(point):
        pairs = list(zip(names, point))
        evidence = fixed_evidence.merge(Evidence.from_pairs(model, pairs))
        return query(model, posterior, evidence, targets, latent_draws,
            point_stream(seed, pairs), max_draws, batch_size, averaging,
            output)

    output.info('Sweeping %d grid points' % len(points), 3)
    if threads == 1:
        results = [run(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, points))
    return SweepResult(names, points, results)


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
