# -*- coding: utf-8 -*-
#################################################################################
# EXTERNAL AFFECTBN COMMAND LINE TESTS
#################################################################################
# File:       external_cli.py
#
#             Runs the command line actions end to end on temporary files.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Runs the command line test cases.'''

import contextlib
import io
import os
import shutil
import tempfile
import unittest
from unittest import mock
from warnings import filterwarnings, resetwarnings

import numpy as np

from affectbn import AffectBN
from affectbn.argsparser import ArgsParser
from affectbn.cli import Main
from affectbn.constants import SUCCEED, FAILURE, USAGE_ERROR, SEED_ENV
from affectbn.driver import bertha_preset, reference_theta, synth_dataset
from affectbn import formats
from affectbn.model import fingerprint
from affectbn.sampler import SamplerConfig, PosteriorSample

HERE = os.path.dirname(os.path.realpath(__file__))
CHAIN = os.path.join(HERE, 'testfiles', 'chain3.json')
CHAIN_THETA = os.path.join(HERE, 'testfiles', 'chain3-theta.json')


class Command(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.stdout = None
        self.stderr = None

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def path(self, name):
        return os.path.join(self.tmp, name)

    def run_cli(self, *args):
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()
        config = ArgsParser(list(args) + ['--nocolor', '--width', '120'],
            stdout=self.stdout, stderr=self.stderr)
        return Main(config).run()

    def usage_error(self, *args):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                ArgsParser(list(args))
        return ctx.exception.code

    def read(self, name):
        with open(self.path(name), 'rb') as handle:
            return handle.read()

    def simulate_chain(self, name='d.csv', n=40):
        code = self.run_cli('simulate', '--model', CHAIN, '--theta',
            CHAIN_THETA, '--n', str(n), '--seed', '3', '--out',
            self.path(name))
        self.assertEqual(code, SUCCEED, self.stderr.getvalue())

    def fit_chain(self, name='post.csv', threads=1, *extra):
        self.simulate_chain()
        code = self.run_cli('fit', '--model', CHAIN, '--data',
            self.path('d.csv'), '--chains', '2', '--iters', '200', '--seed',
            '5', '--threads', str(threads), '--out', self.path(name), *extra)
        self.assertEqual(code, SUCCEED, self.stderr.getvalue())


class Preset(Command):

    def test_export(self):
        code = self.run_cli('export-preset', '--out', self.path('m.json'),
            '--theta-out', self.path('t.json'))
        self.assertEqual(code, SUCCEED)
        self.assertEqual(self.read('m.json').decode('utf-8'),
            formats.serialize_spec(bertha_preset()))
        theta = formats.read_theta(formats.read_text(self.path('t.json')),
            bertha_preset())
        self.assertEqual(theta, reference_theta())

    def test_simulate_preset(self):
        code = self.run_cli('simulate', '--model', 'bertha', '--n', '50',
            '--seed', '3', '--out', self.path('d.csv'))
        self.assertEqual(code, SUCCEED)
        data = formats.read_dataset_file(self.path('d.csv'), bertha_preset())
        self.assertEqual(data, synth_dataset(reference_theta(), 50, 3))

    def test_simulate_needs_theta(self):
        code = self.run_cli('simulate', '--model', CHAIN, '--n', '5',
            '--out', self.path('d.csv'))
        self.assertEqual(code, FAILURE)
        self.assertIn('--theta', self.stderr.getvalue())

    def test_missing_model_file(self):
        code = self.run_cli('simulate', '--model', self.path('none.json'),
            '--n', '5', '--out', self.path('d.csv'))
        self.assertEqual(code, FAILURE)


class Fitting(Command):

    def test_threads_do_not_change_output(self):
        self.fit_chain('one.csv', 1)
        self.fit_chain('two.csv', 2)
        self.assertEqual(self.read('one.csv'), self.read('two.csv'))
        self.assertEqual(self.read('one.json'), self.read('two.json'))
        self.assertIn('MNB.sigma', self.stdout.getvalue())

    def test_config_file(self):
        with open(self.path('run.cfg'), 'w') as handle:
            handle.write('[MAIN]\nchains : 3\niterations : 60\nthin : 2\n')
        self.fit_chain('post.csv', 1, '--config', self.path('run.cfg'))
        sample = formats.read_posterior(
            formats.posterior_paths(self.path('post.csv')),
            formats.read_spec(CHAIN))
        self.assertEqual(sample.draws.shape[:2], (2, 50))
        code = self.run_cli('fit', '--model', CHAIN, '--data',
            self.path('d.csv'), '--config', self.path('run.cfg'), '--out',
            self.path('cfg.csv'))
        self.assertEqual(code, SUCCEED)
        sample = formats.read_posterior(
            formats.posterior_paths(self.path('cfg.csv')),
            formats.read_spec(CHAIN))
        self.assertEqual(sample.draws.shape[:2], (3, 15))

    def test_bad_data(self):
        with open(self.path('d.csv'), 'w') as handle:
            handle.write('ML,MHR\n1,70\n')
        code = self.run_cli('fit', '--model', CHAIN, '--data',
            self.path('d.csv'), '--out', self.path('post.csv'))
        self.assertEqual(code, FAILURE)
        self.assertIn('MNB', self.stderr.getvalue())

    def test_bad_sampler_settings(self):
        self.simulate_chain()
        code = self.run_cli('fit', '--model', CHAIN, '--data',
            self.path('d.csv'), '--iters', '10', '--warmup', '10', '--out',
            self.path('post.csv'))
        self.assertEqual(code, FAILURE)
        self.assertIn('warmup', self.stderr.getvalue())

    def test_summary(self):
        self.fit_chain()
        code = self.run_cli('summary', '--model', CHAIN, '--posterior',
            self.path('post.csv'), '--out', self.path('s.csv'))
        self.assertEqual(code, SUCCEED)
        header = self.read('s.csv').decode('utf-8').split('\n')[0]
        self.assertEqual(header, 'parameter,mean,sd,q05,q50,q95,rhat,ess,'
            'mcse')

    def test_diagnose(self):
        model = formats.read_spec(CHAIN)
        rng = np.random.default_rng(0)
        draws = rng.standard_normal((2, 100, model.n_parameters))
        draws[1] += 5.0
        sample = PosteriorSample(model.parameter_names(), draws,
            np.ones((2, model.n_parameters)),
            SamplerConfig(chains=2, iterations=200), fingerprint(model))
        formats.write_posterior(sample,
            formats.posterior_paths(self.path('bad.csv')))
        args = ('diagnose', '--model', CHAIN, '--posterior',
            self.path('bad.csv'))
        self.assertEqual(self.run_cli(*args), FAILURE)
        self.assertEqual(self.run_cli(*(args + ('--rhat-threshold',
            '1000'))), SUCCEED)

    def test_posterior_of_other_model(self):
        self.fit_chain()
        code = self.run_cli('summary', '--model', 'bertha', '--posterior',
            self.path('post.csv'))
        self.assertEqual(code, FAILURE)


class Querying(Command):

    def test_query(self):
        self.fit_chain()
        code = self.run_cli('query', '--model', CHAIN, '--posterior',
            self.path('post.csv'), '--evidence', 'MNB=16.5', '--targets',
            'ML', '--seed', '1', '--out', self.path('q.csv'))
        self.assertEqual(code, SUCCEED, self.stderr.getvalue())
        lines = self.read('q.csv').decode('utf-8').split('\n')
        self.assertEqual(lines[0], 'ML,probability,mc_se,draws_used,'
            'latent_draws,averaging')
        total = sum(float(l.split(',')[1]) for l in lines[1:3])
        self.assertAlmostEqual(total, 1.0, delta=1e-9)
        self.assertIn('probability', self.stdout.getvalue())

    def test_draw_average(self):
        self.fit_chain()
        code = self.run_cli('query', '--model', CHAIN, '--posterior',
            self.path('post.csv'), '--evidence', 'MNB=16.5', '--targets',
            'ML', '--averaging', 'draw-average', '--max-draws', '20',
            '--out', self.path('q.csv'))
        self.assertEqual(code, SUCCEED)
        row = self.read('q.csv').decode('utf-8').split('\n')[1].split(',')
        self.assertEqual(row[3:], ['20', '8', 'draw-average'])

    def test_target_observed(self):
        self.fit_chain()
        code = self.run_cli('query', '--model', CHAIN, '--posterior',
            self.path('post.csv'), '--evidence', 'ML=1', '--targets', 'ML')
        self.assertEqual(code, FAILURE)
        self.assertIn('Target node "ML"', self.stderr.getvalue())

    def test_sweep_threads(self):
        self.fit_chain()
        args = ('sweep', '--model', CHAIN, '--posterior',
            self.path('post.csv'), '--grid', 'MNB=12:20:5', '--targets', 'ML',
            '--seed', '4', '--max-draws', '50')
        self.assertEqual(self.run_cli(*(args + ('--out',
            self.path('a.csv')))), SUCCEED)
        self.assertEqual(self.run_cli(*(args + ('--out', self.path('b.csv'),
            '--threads', '3'))), SUCCEED)
        self.assertEqual(self.read('a.csv'), self.read('b.csv'))
        lines = self.read('a.csv').decode('utf-8').rstrip('\n').split('\n')
        self.assertEqual(lines[0], 'MNB,p_ML0,p_ML1,se_ML0,se_ML1,averaging')
        self.assertEqual(len(lines), 6)

    def test_predict(self):
        self.fit_chain()
        code = self.run_cli('predict', '--model', CHAIN, '--posterior',
            self.path('post.csv'), '--n-per-draw', '2', '--out',
            self.path('p.csv'))
        self.assertEqual(code, SUCCEED, self.stderr.getvalue())
        lines = self.read('p.csv').decode('utf-8').rstrip('\n').split('\n')
        self.assertEqual(lines[0], 'draw,ML,MHR,MNB')
        self.assertEqual(len(lines), 1 + 2 * 200)
        code = self.run_cli('predict', '--model', CHAIN, '--posterior',
            self.path('post.csv'), '--evidence', 'MNB=3')
        self.assertEqual(code, FAILURE)


class Usage(Command):

    def test_bad_grid(self):
        self.assertEqual(self.usage_error('sweep', '--model', 'bertha',
            '--posterior', 'p.csv', '--grid', 'SRT=1:2', '--targets', 'AF',
            '--out', 'o.csv'), USAGE_ERROR)

    def test_bad_evidence(self):
        self.assertEqual(self.usage_error('query', '--model', 'bertha',
            '--posterior', 'p.csv', '--evidence', 'Age=abc', '--targets',
            'AF'), USAGE_ERROR)

    def test_missing_option(self):
        self.assertEqual(self.usage_error('fit', '--model', 'bertha'),
            USAGE_ERROR)
        self.assertEqual(self.usage_error('frobnicate'), USAGE_ERROR)

    def test_seed_resolution(self):
        args = ['query', '--model', 'bertha', '--posterior', 'p.csv',
            '--targets', 'AF']
        with mock.patch.dict(os.environ, {SEED_ENV: '77'}):
            self.assertEqual(ArgsParser(args).resolve_seed(), 77)
            self.assertEqual(ArgsParser(args + ['--seed', '5'])
                .resolve_seed(), 5)
        with mock.patch.dict(os.environ, {SEED_ENV: ''}):
            self.assertEqual(ArgsParser(args).resolve_seed(), 0)

    def test_lookup_before_parsing(self):
        config = ArgsParser(['fit', '--model', 'bertha', '--data', 'd.csv',
            '--out', 'p.csv', '--seed', '5'])
        self.assertEqual(config['command'], 'fit')
        self.assertEqual(config['chains'], '4')
        self.assertEqual(config.get_int('seed'), 5)

    def test_unreadable_config(self):
        out, err = io.StringIO(), io.StringIO()
        with self.assertRaises(SystemExit) as ctx:
            ArgsParser(['query', '--model', 'bertha', '--posterior', 'p.csv',
                '--targets', 'AF', '--config', self.path('missing.cfg')],
                stdout=out, stderr=err)
        self.assertEqual(ctx.exception.code, FAILURE)
        self.assertIn('Unable to read the config file', err.getvalue())


class Session(unittest.TestCase):

    def test_facade(self):
        out, err = io.StringIO(), io.StringIO()
        session = AffectBN(stdout=out, stderr=err, nocolor=True)
        model = session.load_model('bertha')
        self.assertEqual(fingerprint(model), fingerprint(bertha_preset()))
        self.assertIsNone(session.load_model(os.path.join(HERE, 'testfiles',
            'missing.json')))
        errors = session.get_errors()
        self.assertEqual(len(errors), 1)
        self.assertIn('Reading the model failed', errors[0])
        self.assertIn('Reading the model failed', err.getvalue())
        self.assertEqual(session.get_errors(), [])


if __name__ == '__main__':
    filterwarnings('ignore')
    unittest.main()
    resetwarnings()
