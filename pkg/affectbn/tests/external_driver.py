# -*- coding: utf-8 -*-
#################################################################################
# EXTERNAL AFFECTBN DRIVER NETWORK TESTS
#################################################################################
# File:       external_driver.py
#
#             Checks the built-in driver network, the synthetic data
#             generator and parameter recovery.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Runs the driver network test cases.'''

import os
import unittest
from warnings import filterwarnings, resetwarnings

import numpy as np

from affectbn.constants import SLOW_TESTS_ENV
from affectbn.density import log_prior
from affectbn.diagnostics import summarize, interval_coverage
from affectbn.driver import bertha_preset, reference_theta, observed_ranges, \
    synth_covariates, synth_dataset, MAN_SHARE, REFERENCE_THETA
from affectbn.model import ParameterVector, ValidationError
from affectbn.predictive import posterior_predictive
from affectbn.sampler import SamplerConfig, fit

SLOW = bool(os.environ.get(SLOW_TESTS_ENV))


class Preset(unittest.TestCase):

    def test_structure(self):
        m = bertha_preset()
        self.assertEqual(m.topo_order, ('AF', 'ML', 'SDD', 'MHR', 'RLH',
            'SRT', 'MNB'))
        self.assertEqual(m.covariates.names(), ['Sex', 'Age', 'BMI'])
        self.assertTrue(m.covariates.is_binary('Sex'))
        self.assertEqual(m.node('MHR').parents, ('SDD', 'AF', 'ML'))
        self.assertEqual(m.node('RLH').parents, ('MHR', 'SDD', 'AF', 'ML'))
        self.assertEqual(m.node('MNB').parents, ('SRT',))
        for name in m.topo_order:
            self.assertEqual(m.node(name).covariates, ('Sex', 'Age', 'BMI'))
        self.assertEqual(m.n_parameters, 46)
        self.assertEqual(sorted(m.sigma_index), ['MHR', 'MNB', 'RLH', 'SDD',
            'SRT'])

    def test_priors(self):
        for node in bertha_preset().nodes:
            for prior in node.coefficient_priors:
                self.assertEqual((prior.mean, prior.variance), (0.0, 25.0))
            if node.sigma_prior is not None:
                self.assertEqual((node.sigma_prior.lo, node.sigma_prior.hi),
                    (0.0, 30.0))

    def test_stable(self):
        self.assertEqual(bertha_preset(), bertha_preset())

    def test_reference_theta(self):
        theta = reference_theta()
        self.assertEqual(sorted(theta.to_dict()), sorted(REFERENCE_THETA))
        self.assertTrue(np.isfinite(log_prior(theta.model, theta)))

    def test_ranges(self):
        r = observed_ranges()
        self.assertEqual(r['SRT'][:2], (19.45, 191.76))
        self.assertEqual(r['MNB'][:2], (9.42, 23.38))


class Synthetic(unittest.TestCase):

    def test_share_of_men(self):
        sex = synth_covariates(100000, 1)['Sex']
        self.assertLess(abs(np.mean(sex) - MAN_SHARE), 0.01)

    def test_covariate_ranges(self):
        c = synth_covariates(5000, 2)
        self.assertTrue(np.all((c['Age'] >= 24.0) & (c['Age'] <= 61.0)))
        self.assertTrue(np.all((c['BMI'] >= 17.65) & (c['BMI'] <= 35.16)))

    def test_fair_roots(self):
        zero = ParameterVector.zeros(bertha_preset(), sigma=1.0)
        data = synth_dataset(zero, 100000, 4)
        self.assertLess(abs(np.mean(data.column('AF')) - 0.5), 0.01)
        self.assertLess(abs(np.mean(data.column('ML')) - 0.5), 0.01)

    def test_deterministic(self):
        theta = reference_theta()
        self.assertEqual(synth_dataset(theta, 50, 8),
            synth_dataset(theta, 50, 8))
        self.assertNotEqual(synth_dataset(theta, 50, 8),
            synth_dataset(theta, 50, 9))

    def test_plausible_measures(self):
        data = synth_dataset(reference_theta(), 2000, 6)
        r = observed_ranges()
        for name in ('SDD', 'MHR', 'RLH', 'SRT', 'MNB'):
            lo, hi, mean = r[name]
            self.assertTrue(lo < np.mean(data.column(name)) < hi, name)

    def test_study_means(self):
        data = synth_dataset(reference_theta(), 20000, 11)
        for name in ('SDD', 'MHR', 'RLH', 'SRT', 'MNB'):
            mean = observed_ranges()[name][2]
            self.assertLess(abs(np.mean(data.column(name)) - mean),
                0.03 * mean, name)

    def test_inadmissible(self):
        model = bertha_preset()
        values = np.array(reference_theta(model).values)
        values[model.sigma_index['MNB']] = 40.0
        self.assertRaises(ValidationError, synth_dataset,
            ParameterVector(model, values), 10, 1)
        self.assertRaises(ValidationError, synth_covariates, 0, 1)


class Recovery(unittest.TestCase):
    '''Fits synthetic preset data and checks the reference parameters
    are covered by the posterior intervals.'''

    def _fit(self, seed, chains, iterations, warmup=None):
        theta = reference_theta()
        data = synth_dataset(theta, 500, seed)
        config = SamplerConfig(chains=chains, iterations=iterations,
            warmup=warmup, seed=seed, standardize=True)
        return theta, data, fit(theta.model, data, config)

    def test_short_fit(self):
        theta, data, sample = self._fit(1, 2, 300)
        self.assertEqual(sample.draws.shape, (2, 150, 46))
        self.assertTrue(np.all(np.isfinite(sample.draws)))
        for name in ('SDD', 'MHR', 'RLH', 'SRT', 'MNB'):
            sigma = sample.column('%s.sigma' % name)
            self.assertTrue(np.all((sigma > 0.0) & (sigma < 30.0)))
        predictive = posterior_predictive(theta.model, sample,
            {'Sex': 1.0, 'Age': 40.0, 'BMI': 24.0}, 1,
            np.random.default_rng(0))
        self.assertEqual(len(predictive), 300)

    @unittest.skipUnless(SLOW, 'set %s to run' % SLOW_TESTS_ENV)
    def test_coverage(self):
        coverage = []
        for seed in range(20):
            theta, data, sample = self._fit(seed, 4, 3000, 1000)
            coverage.append(interval_coverage(sample, theta.to_dict(), 0.9))
            rows = summarize(sample)
            self.assertLess(max(r['rhat'] for r in rows), 1.01)
            self.assertGreater(min(r['ess'] for r in rows), 400)
        self.assertGreaterEqual(np.mean(coverage), 0.8)

    @unittest.skipUnless(SLOW, 'set %s to run' % SLOW_TESTS_ENV)
    def test_predictive_mean(self):
        theta, data, sample = self._fit(3, 4, 3000, 1000)
        driver = {'Sex': 1.0, 'Age': 40.0, 'BMI': 24.0}
        rng = np.random.default_rng(0)
        truth = posterior_predictive(theta.model, theta, driver, 200000,
            rng).column('MNB')
        predictive = posterior_predictive(theta.model, sample, driver, 50,
            rng, max_draws=2000)
        means = predictive.column('MNB').reshape(-1, 50).mean(axis=1)
        se = np.sqrt(np.var(means, ddof=1) + np.var(truth) / truth.shape[0])
        self.assertLess(abs(np.mean(means) - np.mean(truth)), 3.0 * se)


if __name__ == '__main__':
    filterwarnings('ignore')
    unittest.main()
    resetwarnings()
