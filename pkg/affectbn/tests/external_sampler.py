# -*- coding: utf-8 -*-
#################################################################################
# EXTERNAL AFFECTBN SAMPLER TESTS
#################################################################################
# File:       external_sampler.py
#
#             Checks the sampler against closed-form and grid posteriors,
#             and the convergence diagnostics against known chains.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Runs the sampler and diagnostics test cases.'''

import os
import unittest
from warnings import filterwarnings, resetwarnings

import numpy as np
from scipy.signal import lfilter
from scipy.special import log_expit

from affectbn.constants import SLOW_TESTS_ENV
from affectbn.density import log_unnormalized_posterior
from affectbn.diagnostics import DiagnosticError, rhat, ess, mcse, \
    summarize, interval_coverage
from affectbn.model import Covariate, NodeSpec, ModelSpec, UniformPrior, \
    Dataset
from affectbn.sampler import SamplerConfig, PosteriorSample, NodeUpdater, \
    ConfigError, NonFiniteStartError, fit

SLOW = bool(os.environ.get(SLOW_TESTS_ENV))


def known_variance_model():
    '''Intercept-only gaussian node whose sigma is pinned near 1.'''
    return ModelSpec([], [NodeSpec('Y', 'gaussian-linear',
        sigma_prior=UniformPrior(0.999, 1.001))])


def coin_model():
    return ModelSpec([], [NodeSpec('A', 'bernoulli-logistic')])


def small_regression():
    model = ModelSpec([Covariate('Age', 'continuous', 'years')],
        [NodeSpec('A', 'bernoulli-logistic', covariates=['Age']),
         NodeSpec('Y', 'gaussian-linear', parents=['A'], covariates=['Age'],
             sigma_prior=UniformPrior(0, 30))])
    rng = np.random.default_rng(4)
    age = rng.uniform(20, 60, 40)
    a = (rng.random(40) < 0.5).astype(float)
    y = 3.0 + 0.1 * age + 2.0 * a + rng.standard_normal(40)
    return model, Dataset(model, {'Age': age, 'A': a, 'Y': y})


def grid_posterior(edges, ones, zeros):
    '''Bin masses of the intercept posterior of a coin model on a
    2001-point grid with the N(0, 25) prior.'''
    grid = np.linspace(edges[0], edges[-1], 2001)
    logp = ones * log_expit(grid) + zeros * log_expit(-grid) - \
        grid * grid / 50.0
    mass = np.exp(logp - np.max(logp))
    mass /= np.sum(mass)
    index = np.clip(np.searchsorted(edges, grid, side='right') - 1, 0,
        len(edges) - 2)
    return np.bincount(index, weights=mass, minlength=len(edges) - 1)


class Config(unittest.TestCase):

    def test_defaults(self):
        c = SamplerConfig()
        self.assertEqual((c.chains, c.iterations, c.warmup, c.thin),
            (4, 2000, 1000, 1))
        self.assertEqual(c.target_acceptance, 0.44)

    def test_invalid(self):
        self.assertRaises(ConfigError, SamplerConfig, chains=0)
        self.assertRaises(ConfigError, SamplerConfig, thin=0)
        self.assertRaises(ConfigError, SamplerConfig, seed=-1)
        self.assertRaises(ConfigError, SamplerConfig, target_acceptance=1.0)
        self.assertRaises(ConfigError, SamplerConfig, iterations=2.5)

    def test_dict_round_trip(self):
        c = SamplerConfig(chains=2, iterations=30, warmup=10, thin=3, seed=9,
            adapt=False, standardize=True)
        self.assertEqual(SamplerConfig.from_dict(c.to_dict()), c)
        self.assertRaises(ConfigError, SamplerConfig.from_dict, {'foo': 1})


class Sampling(unittest.TestCase):

    def test_conjugate_oracle(self):
        model = known_variance_model()
        data = Dataset(model, {'Y': [0.5, 1.5, 1.0, 1.0]})
        sample = fit(model, data, SamplerConfig(chains=4, iterations=20000,
            seed=101))
        x = sample.column('Y.b0')
        error = mcse(sample, 'Y.b0')
        # posterior N(100/101, 25/101) with the variance known
        self.assertLess(abs(np.mean(x) - 100.0 / 101.0), 3.0 * error)
        self.assertLess(abs(np.var(x, ddof=1) / (25.0 / 101.0) - 1.0), 0.10)

    def test_grid_oracle(self):
        model = coin_model()
        y = np.array([1.0] * 14 + [0.0] * 6)
        data = Dataset(model, {'A': y})
        iterations = 2 * 12500 if SLOW else 6000
        sample = fit(model, data, SamplerConfig(chains=4,
            iterations=iterations, seed=7))
        edges = np.linspace(-4.0, 6.0, 41 if SLOW else 21)
        expected = grid_posterior(edges, 14.0, 6.0)
        x = sample.column('A.b0').reshape(-1)
        counts, _ = np.histogram(x, bins=edges)
        observed = counts / float(x.shape[0])
        distance = 0.5 * np.sum(np.abs(observed - expected))
        self.assertLess(distance, 0.05 if SLOW else 0.08)

    def test_deterministic(self):
        model, data = small_regression()
        config = SamplerConfig(chains=3, iterations=200, seed=42)
        first = fit(model, data, config)
        again = fit(model, data, config)
        threaded = fit(model, data, config, threads=3)
        self.assertTrue(np.array_equal(first.draws, again.draws))
        self.assertTrue(np.array_equal(first.draws, threaded.draws))
        self.assertTrue(np.array_equal(first.acceptance,
            threaded.acceptance))
        other = fit(model, data, SamplerConfig(chains=3, iterations=200,
            seed=43))
        self.assertFalse(np.array_equal(first.draws, other.draws))

    def test_chains_differ(self):
        model, data = small_regression()
        s = fit(model, data, SamplerConfig(chains=2, iterations=100, seed=1))
        self.assertFalse(np.array_equal(s.draws[0], s.draws[1]))

    def test_shapes_and_thinning(self):
        model, data = small_regression()
        s = fit(model, data, SamplerConfig(chains=2, iterations=100,
            warmup=40, thin=3, seed=1))
        self.assertEqual(s.draws.shape, (2, 20, model.n_parameters))
        self.assertEqual(s.parameter_names, model.parameter_names())
        self.assertEqual(s.acceptance.shape, (2, model.n_parameters))
        self.assertTrue(np.all((s.acceptance >= 0) & (s.acceptance <= 1)))

    def test_sigma_stays_in_support(self):
        model, data = small_regression()
        s = fit(model, data, SamplerConfig(chains=2, iterations=300, seed=3))
        sigma = s.column('Y.sigma')
        self.assertTrue(np.all((sigma > 0.0) & (sigma < 30.0)))
        pinned = fit(known_variance_model(),
            Dataset(known_variance_model(), {'Y': [0.0, 4.0, -3.0]}),
            SamplerConfig(chains=2, iterations=300, seed=3))
        sigma = pinned.column('Y.sigma')
        self.assertTrue(np.all((sigma > 0.999) & (sigma < 1.001)))

    def test_doubling_thin(self):
        model, data = small_regression()
        full = fit(model, data, SamplerConfig(chains=2, iterations=2000,
            seed=5))
        half = fit(model, data, SamplerConfig(chains=2, iterations=2000,
            thin=2, seed=5))
        self.assertEqual(half.n_kept, full.n_kept // 2)
        # the stream does not depend on thin: every other draw is kept
        self.assertTrue(np.array_equal(half.draws, full.draws[:, 1::2]))
        for name in model.parameter_names():
            self.assertLess(abs(np.mean(half.column(name)) -
                np.mean(full.column(name))), 3.0 * mcse(half, name))

    def test_no_adaptation(self):
        model, data = small_regression()
        s = fit(model, data, SamplerConfig(chains=1, iterations=50, seed=3,
            adapt=False))
        self.assertTrue(np.all(np.isfinite(s.draws)))

    def test_standardized_run(self):
        model, data = small_regression()
        s = fit(model, data, SamplerConfig(chains=2, iterations=300, seed=8,
            standardize=True))
        self.assertTrue(np.all(np.isfinite(s.draws)))
        self.assertTrue(np.all(s.column('Y.sigma') > 0))

    def test_standardize_mapping(self):
        model, data = small_regression()
        upd = NodeUpdater(model.node('Y'), data, standardize=True)
        beta = np.array([3.0, 0.1, 2.0])
        self.assertTrue(np.allclose(upd.to_raw(upd.from_raw(beta)), beta,
            rtol=0, atol=1e-12))
        raw = NodeUpdater(model.node('Y'), data, standardize=False)
        self.assertTrue(np.allclose(upd.eta(upd.from_raw(beta)),
            raw.eta(beta), rtol=0, atol=1e-9))

    def test_orthogonal_design(self):
        model, data = small_regression()
        upd = NodeUpdater(model.node('Y'), data, standardize=True)
        self.assertTrue(np.allclose(upd.design.T @ upd.design,
            data.n_rows * np.eye(3), rtol=0, atol=1e-8))
        raw = NodeUpdater(model.node('Y'), data, standardize=False)
        self.assertTrue(np.array_equal(raw.raw_from_gamma, np.eye(3)))

    def test_sweep_ratios(self):
        model, data = small_regression()
        steps = np.array([0.3, -0.2, 0.5])
        for name, sigma in (('Y', 1.3), ('A', None)):
            upd = NodeUpdater(model.node(name), data, standardize=True)
            priors = model.node(name).coefficient_priors
            k = upd.n_coefficients

            def log_target(gamma):
                prior = sum(p.log_density(b)
                    for p, b in zip(priors, upd.to_raw(gamma)))
                return upd.log_lik(upd.eta(gamma), sigma) + prior

            gamma = upd.from_raw(np.linspace(0.5, -0.5, k))
            # nothing is accepted, so each ratio is taken at gamma
            same, log_alpha, moved = upd.sweep(gamma, sigma, steps[:k],
                np.full(k, np.inf))
            self.assertFalse(np.any(moved))
            self.assertTrue(np.array_equal(same, gamma))
            for j in range(k):
                step = np.zeros(k)
                step[j] = steps[j]
                self.assertAlmostEqual(log_alpha[j],
                    log_target(gamma + step) - log_target(gamma), places=6)
            # everything is accepted
            moved_to, _, moved = upd.sweep(gamma, sigma, steps[:k],
                np.full(k, -np.inf))
            self.assertTrue(np.all(moved))
            self.assertTrue(np.allclose(moved_to, gamma + steps[:k]))

    def test_non_finite_start(self):
        model = ModelSpec([], [NodeSpec('Y', 'gaussian-linear',
            sigma_prior=UniformPrior(0, 1e-300))])
        data = Dataset(model, {'Y': [1e300, -1e300]})
        self.assertRaises(NonFiniteStartError, fit, model, data,
            SamplerConfig(chains=1, iterations=10))

    def test_bad_threads(self):
        model, data = small_regression()
        self.assertRaises(ConfigError, fit, model, data,
            SamplerConfig(chains=1, iterations=10), threads=0)


class Subsampling(unittest.TestCase):

    def setUp(self):
        draws = np.arange(2 * 5 * 1, dtype=float).reshape(2, 5, 1)
        self.sample = PosteriorSample(['A.b0'], draws, np.ones((2, 1)),
            SamplerConfig(chains=2, iterations=10, warmup=5), 'x')

    def test_pooled(self):
        self.assertEqual(self.sample.pooled()[:, 0].tolist(),
            [float(v) for v in range(10)])
        self.assertEqual(self.sample.pooled(4)[:, 0].tolist(),
            [0.0, 2.0, 5.0, 7.0])
        self.assertEqual(self.sample.pooled(50).shape, (10, 1))

    def test_parameter_vectors(self):
        model, data = small_regression()
        s = fit(model, data, SamplerConfig(chains=2, iterations=60, seed=2))
        p = s.param_vector(model, 1, 4)
        self.assertTrue(np.array_equal(p.values, s.draws[1, 4]))
        vectors = list(s.iter_param_vectors(model, max_draws=7))
        self.assertEqual(len(vectors), 7)
        for p in vectors:
            self.assertTrue(np.isfinite(
                log_unnormalized_posterior(model, p, data)))
        self.assertEqual(len(list(s.iter_param_vectors(model))), s.n_draws)

    def test_bad_cap(self):
        self.assertRaises(ConfigError, self.sample.pooled, 0)


def stack(*chains):
    draws = np.stack([np.asarray(c, dtype=float)[:, None] for c in chains])
    n = draws.shape[1]
    return PosteriorSample(['x'], draws, np.ones((draws.shape[0], 1)),
        SamplerConfig(chains=draws.shape[0], iterations=2 * n, warmup=n),
        'x')


class Diagnostics(unittest.TestCase):

    def test_rhat_iid(self):
        rng = np.random.default_rng(12)
        s = stack(*rng.standard_normal((4, 5000)))
        self.assertLess(abs(rhat(s, 'x') - 1.0), 0.01)

    def test_rhat_disagreeing_chains(self):
        rng = np.random.default_rng(12)
        z = rng.standard_normal((2, 500))
        s = stack(z[0], z[1] + 5.0)
        self.assertGreater(rhat(s, 'x'), 2.0)

    def test_rhat_affine_invariance(self):
        rng = np.random.default_rng(9)
        z = rng.standard_normal((3, 800)) + np.array([[0.0], [0.2], [-0.1]])
        plain = rhat(stack(*z), 'x')
        moved = rhat(stack(*(-3.5 * z + 40.0)), 'x')
        self.assertAlmostEqual(plain, moved, places=10)

    def test_rhat_undefined(self):
        rng = np.random.default_rng(1)
        self.assertRaises(DiagnosticError, rhat,
            stack(rng.standard_normal(200)), 'x')
        self.assertRaises(DiagnosticError, rhat,
            stack(np.ones(200), rng.standard_normal(200)), 'x')

    def test_ess_iid(self):
        rng = np.random.default_rng(5)
        s = stack(rng.standard_normal(10000))
        self.assertLess(abs(ess(s, 'x') / 10000.0 - 1.0), 0.15)

    def test_ess_ar1(self):
        rng = np.random.default_rng(6)
        rho, n = 0.9, 100000
        chain = lfilter([1.0], [1.0, -rho], rng.standard_normal(n))
        expected = n * (1.0 - rho) / (1.0 + rho)
        self.assertLess(abs(ess(stack(chain), 'x') / expected - 1.0), 0.25)

    def test_ess_needs_draws(self):
        self.assertRaises(DiagnosticError, ess,
            stack(np.random.default_rng(2).standard_normal(50)), 'x')

    def test_summarize(self):
        rng = np.random.default_rng(3)
        s = stack(*rng.standard_normal((2, 400)))
        row, = summarize(s)
        self.assertEqual(sorted(row), ['ess', 'mcse', 'mean', 'parameter',
            'q05', 'q50', 'q95', 'rhat', 'sd'])
        self.assertLess(row['q05'], row['q50'])
        self.assertLess(row['q50'], row['q95'])
        self.assertAlmostEqual(row['mcse'], row['sd'] / np.sqrt(row['ess']))

    def test_summarize_single_chain(self):
        s = stack(np.random.default_rng(3).standard_normal(400))
        row, = summarize(s)
        self.assertTrue(np.isnan(row['rhat']))
        self.assertFalse(np.isnan(row['ess']))

    def test_interval_coverage(self):
        s = stack(np.linspace(0.0, 1.0, 101))
        self.assertEqual(interval_coverage(s, {'x': 0.5}), 1.0)
        self.assertEqual(interval_coverage(s, {'x': 0.99}), 0.0)
        self.assertRaises(ValueError, interval_coverage, s, {'x': 0.5}, 1.5)


if __name__ == '__main__':
    filterwarnings('ignore')
    unittest.main()
    resetwarnings()
