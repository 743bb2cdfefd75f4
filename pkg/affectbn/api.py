#!python
# -*- coding: utf-8 -*-
#######################################################################
# AFFECTBN - HYBRID BAYESIAN NETWORKS FOR DRIVER MENTAL STATES
#######################################################################
# Distributed under the terms of the GNU General Public License v2
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#

import numpy as np

from affectbn.config import BareConfig
from affectbn.diagnostics import summarize
from affectbn.driver import bertha_preset, reference_theta, synth_dataset
from affectbn import formats
from affectbn.model import fingerprint
from affectbn.predictive import Evidence, query, sweep, \
    posterior_predictive, summarize_draws
from affectbn.sampler import SamplerConfig, fit

PRESET_NAME = 'bertha'


class AffectAPI(object):
    """class to hold and run an affectbn session for use by API consumer
    apps, scripts and the command line front end.
    """

    def __init__(self, config=None, report_errors=False, output=None):
        """
        @param config: optional BareConfig or ArgsParser config class.
                       default is BareConfig(output=output)
        @param report_errors: optional bool; print errors as they are
                              collected. default is False
        @param output: optional Message class instance created with your
                       settings.
        """

        self.config = config if config is not None else BareConfig(output=output)

        self.output = self.config['output']

        self.report_errors = report_errors

        # add our error recording function to output
        self.output.error_callback = self._error

        self._error_messages = []


    def _run(self, label, func, *args, **kwargs):
        """runs func, recording any input or file error under label.
        Returns None on failure.
        """
        try:
            return func(*args, **kwargs)
        except (ValueError, KeyError, OSError) as error:
            self._error('%s failed:\n%s' % (label, error))
        return None


    ## Loading

    def load_model(self, path):
        """the built-in network for "bertha", else a JSON spec file"""
        if path == PRESET_NAME:
            return bertha_preset()
        return self._run('Reading the model', formats.read_spec, path)


    def load_dataset(self, path, model):
        return self._run('Reading the dataset', formats.read_dataset_file,
            path, model)


    def load_posterior(self, path, model):
        return self._run('Reading the posterior', formats.read_posterior,
            formats.posterior_paths(path), model)


    def load_theta(self, path, model):
        if path is None:
            if fingerprint(model) == fingerprint(bertha_preset()):
                return reference_theta(model)
            self._error('Model "%s" has no reference parameters; pass '
                '--theta' % model)
            return None
        return self._run('Reading the parameters',
            lambda: formats.read_theta(formats.read_text(path), model, path))


    ## Configuration

    def sampler_config(self):
        """SamplerConfig from the current options"""
        def build():
            seed = self.config.resolve_seed()
            return SamplerConfig(
                chains=self.config.get_int('chains'),
                iterations=self.config.get_int('iterations'),
                warmup=self.config.get_int('warmup'),
                thin=self.config.get_int('thin'),
                seed=seed,
                target_acceptance=self.config.get_float('target_acceptance'),
                adapt=self.config['adapt'],
                standardize=self.config['standardize'])
        return self._run('Configuring the sampler', build)


    def threads(self):
        return self._run('Configuring', self.config.get_int, 'threads')


    ## Actions

    def simulate(self, model, params, n, seed, path):
        def run():
            dataset = synth_dataset(params, n, seed)
            formats.write_dataset(dataset, path)
            return dataset
        return self._run('Simulating', run)


    def fit(self, model, data, path):
        config = self.sampler_config()
        threads = self.threads()
        if config is None or threads is None:
            return None
        self.output.info('Fitting %d chains of %d iterations (%d warm-up)'
            % (config.chains, config.iterations, config.warmup), 2)
        def run():
            sample = fit(model, data, config, self.output, threads)
            formats.write_posterior(sample, formats.posterior_paths(path))
            return sample
        return self._run('Fitting', run)


    def summarize(self, sample):
        return summarize(sample)


    def diagnose(self, sample):
        """summary rows and whether every R-hat is within the threshold"""
        threshold = self._run('Configuring', self.config.get_float,
            'rhat_threshold')
        if threshold is None:
            return None, False
        rows = summarize(sample)
        bad = [r['parameter'] for r in rows if r['rhat'] > threshold]
        undefined = [r['parameter'] for r in rows if np.isnan(r['rhat'])]
        if undefined:
            self.output.warn('R-hat undefined for %d parameters (one chain '
                'or constant draws)' % len(undefined), 2)
        for name in bad:
            self.output.warn('R-hat of %s above %g' % (name, threshold), 1)
        return rows, not bad


    def _evidence(self, model, pairs):
        return self._run('Reading the evidence', Evidence.from_pairs,
            model, pairs)


    def _query_options(self):
        def build():
            return dict(
                latent_draws=self.config.get_int('latent_draws'),
                max_draws=self.config.get_int('max_draws'),
                batch_size=self.config.get_int('batch_size'),
                averaging=self.config['averaging'])
        return self._run('Configuring the query', build)


    def query(self, model, sample, pairs, targets):
        evidence = self._evidence(model, pairs)
        options = self._query_options()
        if evidence is None or options is None:
            return None
        seed = self._run('Configuring', self.config.resolve_seed)
        if seed is None:
            return None
        rng = np.random.default_rng(seed)
        return self._run('Querying', query, model, sample, evidence, targets,
            rng=rng, output=self.output, **options)


    def sweep(self, model, sample, pairs, grid, targets):
        evidence = self._evidence(model, pairs)
        options = self._query_options()
        if evidence is None or options is None:
            return None
        seed = self._run('Configuring', self.config.resolve_seed)
        threads = self.threads()
        if seed is None or threads is None:
            return None
        return self._run('Sweeping', sweep, model, sample, evidence, grid,
            targets, seed=seed, threads=threads, output=self.output,
            **options)


    def predict(self, model, sample, pairs):
        """predictive draws and their per-node summary"""
        evidence = self._evidence(model, pairs)
        if evidence is None:
            return None, None
        def run():
            if evidence.observations:
                raise ValueError('predict takes covariate values only, got '
                    'node %s' % sorted(evidence.observations)[0])
            evidence.check(model)
            n = self.config.get_int('n_per_draw')
            max_draws = self.config.get_int('max_draws')
            seed = self.config.resolve_seed()
            draws = posterior_predictive(model, sample, evidence.covariates,
                n, np.random.default_rng(seed), max_draws)
            return draws, summarize_draws(model, draws)
        result = self._run('Predicting', run)
        return result if result is not None else (None, None)


    def export_preset(self, path, theta_path=None):
        def run():
            model = bertha_preset()
            formats.write_spec(model, path)
            if theta_path:
                formats.write_theta(reference_theta(model), theta_path)
            return model
        return self._run('Exporting the preset', run)


    ## Errors

    def _error(self, message):
        """records an error message; prints it too with report_errors"""
        self._error_messages.append(message)
        if self.report_errors:
            self.output.block_callback = True
            self.output.error(message)
            self.output.block_callback = False


    def get_errors(self):
        """returns any warning or fatal messages that occurred during
        an operation and resets it back to None

        @rtype: list of strings
        @return: list of error messages, if any
        """
        if len(self._error_messages):
            messages = self._error_messages[:]
            self._error_messages = []
            return messages
        return []


if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
