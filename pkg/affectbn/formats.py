#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN FILE FORMATS
#################################################################################
# File:       formats.py
#
#             Reads and writes model spec files, datasets, posterior
#             draws and result tables.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Durable formats.

Model specs are JSON documents; datasets, posterior draws and result
tables are comma separated with LF line ends.  Floats are written with
17 significant digits so every binary64 value reads back unchanged.

>>> from affectbn.driver import bertha_preset
>>> text = serialize_spec(bertha_preset())
>>> parse_spec(text) == bertha_preset()
True
>>> serialize_spec(parse_spec(text)) == text
True
'''

__version__ = "0.1"

#===============================================================================
#
# Dependencies
#
#-------------------------------------------------------------------------------

import io
import json
import os
import re

import numpy as np
import pandas as pd

from affectbn.model import Covariate, CovariateSchema, NodeSpec, ModelSpec, \
    NormalPrior, UniformPrior, ParameterVector, Dataset, \
    FingerprintMismatchError, fingerprint
from affectbn.sampler import PosteriorSample, SamplerConfig

FLOAT_FORMAT = '%.17g'

# plain ASCII decimals: no digit separators, no other scripts
_DECIMAL = re.compile(r'^[+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?$')

#===============================================================================
#
# Exceptions
#
#-------------------------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, origin, message, line=None, column=None):
        self.origin = origin
        self.line = line
        self.column = column
        where = ''
        if line is not None:
            where = ' (line %d' % line
            where += ', column %d)' % column if column is not None else ')'
        super(ParseError, self).__init__(
            'Parsing failed for "%s"%s: %s' % (origin, where, message))


class MissingColumnError(ValueError):
    def __init__(self, origin, name):
        self.name = name
        super(MissingColumnError, self).__init__(
            '"%s" has no column "%s"' % (origin, name))


class NonBinaryValueError(ValueError):
    def __init__(self, origin, row, name, value):
        self.row = row
        self.name = name
        super(NonBinaryValueError, self).__init__(
            '"%s" row %d (line %d), column "%s": value %r is not 0 or 1'
            % (origin, row, row + 2, name, value))


class MissingValueError(ValueError):
    def __init__(self, origin, row, name):
        self.row = row
        self.name = name
        super(MissingValueError, self).__init__(
            '"%s" row %d (line %d), column "%s": missing value'
            % (origin, row, row + 2, name))

#===============================================================================
#
# Helpers
#
#-------------------------------------------------------------------------------

def read_text(path):
    with open(path, 'r', encoding='utf-8') as handle:
        return handle.read()


def write_text(path, text):
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(text)


def _emit(frame, path):
    '''CSV text of frame, also written to path when given.'''
    text = frame.to_csv(index=False, float_format=FLOAT_FORMAT,
        lineterminator='\n')
    if path is not None:
        write_text(path, text)
    return text


def _read_frame(text, origin, **kwargs):
    try:
        return pd.read_csv(io.StringIO(text), **kwargs)
    except pd.errors.EmptyDataError:
        raise ParseError(origin, 'no header row', 1)
    except pd.errors.ParserError as error:
        raise ParseError(origin, str(error))


class _Fields(object):
    ''' Strict access to one JSON object of a spec document.'''

    def __init__(self, origin, where, value, required, optional=()):
        self.origin = origin
        self.where = where
        if not isinstance(value, dict):
            self.fail('expected an object')
        unknown = sorted(set(value) - set(required) - set(optional))
        if unknown:
            self.fail('unknown key "%s"' % unknown[0])
        missing = [k for k in required if k not in value]
        if missing:
            self.fail('missing key "%s"' % missing[0])
        self.value = value

    def fail(self, message):
        raise ParseError(self.origin, '%s: %s' % (self.where, message))

    def has(self, key):
        return key in self.value

    def string(self, key):
        v = self.value[key]
        if not isinstance(v, str):
            self.fail('"%s" must be a string' % key)
        return v

    def number(self, key):
        v = self.value[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            self.fail('"%s" must be a number' % key)
        return float(v)

    def strings(self, key):
        v = self.value[key]
        if not isinstance(v, list) or \
                not all(isinstance(s, str) for s in v):
            self.fail('"%s" must be a list of strings' % key)
        return v

    def objects(self, key):
        v = self.value[key]
        if not isinstance(v, list):
            self.fail('"%s" must be a list' % key)
        return v

#===============================================================================
#
# Model specs
#
#-------------------------------------------------------------------------------

def parse_spec(text, origin='<spec>'):
    '''Strictly parses a JSON spec document and validates the model.'''
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(origin, error.msg, error.lineno, error.colno)

    top = _Fields(origin, 'document', document, ('covariates', 'nodes'))
    covariates = []
    for i, item in enumerate(top.objects('covariates')):
        f = _Fields(origin, 'covariates[%d]' % i, item, ('name', 'kind'),
            ('unit', 'range'))
        bounds = None
        if f.has('range'):
            r = f.objects('range')
            if len(r) != 2 or not all(isinstance(x, (int, float))
                    and not isinstance(x, bool) for x in r):
                f.fail('"range" must be a pair of numbers')
            bounds = (float(r[0]), float(r[1]))
        covariates.append(Covariate(f.string('name'), f.string('kind'),
            f.string('unit') if f.has('unit') else '', bounds))

    nodes = []
    for i, item in enumerate(top.objects('nodes')):
        where = 'nodes[%d]' % i
        f = _Fields(origin, where, item, ('name', 'family', 'parents',
            'covariates', 'coefficient_priors'), ('sigma_prior',))
        priors = []
        for j, p in enumerate(f.objects('coefficient_priors')):
            g = _Fields(origin, '%s.coefficient_priors[%d]' % (where, j), p,
                ('mean', 'variance'))
            priors.append(NormalPrior(g.number('mean'), g.number('variance')))
        sigma_prior = None
        if f.has('sigma_prior'):
            g = _Fields(origin, '%s.sigma_prior' % where,
                item['sigma_prior'], ('lo', 'hi'))
            sigma_prior = UniformPrior(g.number('lo'), g.number('hi'))
        nodes.append(NodeSpec(f.string('name'), f.string('family'),
            f.strings('parents'), f.strings('covariates'), priors,
            sigma_prior))

    return ModelSpec(CovariateSchema(covariates), nodes)


def serialize_spec(model):
    '''Canonical JSON: 2-space indent, fixed key order, final newline.'''
    return json.dumps(model.to_dict(), indent=2) + '\n'


def read_spec(path):
    return parse_spec(read_text(path), origin=path)


def write_spec(model, path):
    write_text(path, serialize_spec(model))

#===============================================================================
#
# Datasets
#
#-------------------------------------------------------------------------------

def _column_values(origin, name, raw):
    values = np.empty(len(raw))
    for row, cell in enumerate(raw):
        cell = cell.strip()
        if cell == '' or cell.lower() in ('na', 'nan', 'null'):
            raise MissingValueError(origin, row, name)
        if not _DECIMAL.match(cell):
            raise ParseError(origin, 'column "%s": %r is not a number'
                % (name, cell), row + 2)
        values[row] = float(cell)
        if not np.isfinite(values[row]):
            raise ParseError(origin, 'column "%s": %r is not finite'
                % (name, cell), row + 2)
    return values


def read_dataset(text, model, origin='<dataset>'):
    '''Columns are matched by name; extra columns are ignored.'''
    frame = _read_frame(text, origin, dtype=str, keep_default_na=False,
        na_filter=False)
    columns = {}
    for name in model.columns():
        if name not in frame.columns:
            raise MissingColumnError(origin, name)
        columns[name] = _column_values(origin, name, list(frame[name]))
    for name in model.binary_columns():
        col = columns[name]
        bad = np.flatnonzero((col != 0.0) & (col != 1.0))
        if bad.shape[0]:
            row = int(bad[0])
            raise NonBinaryValueError(origin, row, name, float(col[row]))
    return Dataset(model, columns)


def read_dataset_file(path, model):
    return read_dataset(read_text(path), model, origin=path)


def write_dataset(dataset, path=None):
    names = dataset.model.columns()
    frame = pd.DataFrame(dict((n, dataset.column(n)) for n in names),
        columns=names)
    return _emit(frame, path)

#===============================================================================
#
# Parameter vectors
#
#-------------------------------------------------------------------------------

def read_theta(text, model, origin='<theta>'):
    '''A JSON object of parameter name -> value.'''
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(origin, error.msg, error.lineno, error.colno)
    if not isinstance(mapping, dict):
        raise ParseError(origin, 'expected an object of parameter values')
    return ParameterVector.from_dict(model, mapping)


def write_theta(params, path=None):
    names = params.model.parameter_names()
    mapping = dict(zip(names, [float(v) for v in params.values]))
    text = json.dumps(mapping, indent=2) + '\n'
    if path is not None:
        write_text(path, text)
    return text

#===============================================================================
#
# Posterior draws
#
#-------------------------------------------------------------------------------

def posterior_paths(csv_path):
    '''The draws file and its JSON sidecar.'''
    return csv_path, os.path.splitext(csv_path)[0] + '.json'


def write_posterior(sample, paths):
    csv_path, sidecar_path = paths
    chains, kept, p = sample.draws.shape
    iterations = sample.config.kept_iterations()
    frame = pd.DataFrame(sample.draws.reshape(-1, p),
        columns=sample.parameter_names)
    frame.insert(0, 'iteration', np.tile(iterations, chains))
    frame.insert(0, 'chain', np.repeat(np.arange(1, chains + 1), kept))
    _emit(frame, csv_path)

    sidecar = {
        'model_fingerprint': sample.fingerprint,
        'seed': sample.config.seed,
        'config': sample.config.to_dict(),
        'parameter_names': sample.parameter_names,
        'acceptance': [[float(a) for a in row] for row in sample.acceptance],
        }
    write_text(sidecar_path, json.dumps(sidecar, indent=2) + '\n')


def read_posterior(paths, model):
    csv_path, sidecar_path = paths
    try:
        sidecar = json.loads(read_text(sidecar_path))
    except json.JSONDecodeError as error:
        raise ParseError(sidecar_path, error.msg, error.lineno, error.colno)
    _Fields(sidecar_path, 'sidecar', sidecar, ('model_fingerprint', 'seed',
        'config', 'parameter_names', 'acceptance'))
    expected = fingerprint(model)
    if sidecar['model_fingerprint'] != expected:
        raise FingerprintMismatchError(expected, sidecar['model_fingerprint'])
    config = SamplerConfig.from_dict(sidecar['config'])
    names = model.parameter_names()

    frame = _read_frame(read_text(csv_path), csv_path,
        float_precision='round_trip')
    header = ['chain', 'iteration'] + names
    if list(frame.columns) != header:
        raise ParseError(csv_path, 'header does not match the model '
            'parameters', 1)
    values = frame[names].to_numpy(dtype=float)
    ids = frame[['chain', 'iteration']].to_numpy(dtype=float)
    bad = np.flatnonzero(~np.all(np.isfinite(values), axis=1) |
        ~np.all(np.isfinite(ids), axis=1))
    if bad.shape[0]:
        raise ParseError(csv_path, 'incomplete row', int(bad[0]) + 2)
    expected_rows = config.chains * config.n_kept
    if values.shape[0] != expected_rows:
        raise ParseError(csv_path, 'expected %d draws, found %d'
            % (expected_rows, values.shape[0]), values.shape[0] + 1)
    chain_ids = np.repeat(np.arange(1, config.chains + 1), config.n_kept)
    if not np.array_equal(ids[:, 0], chain_ids):
        row = int(np.flatnonzero(ids[:, 0] != chain_ids)[0])
        raise ParseError(csv_path, 'draws are not grouped by chain', row + 2)

    draws = values.reshape(config.chains, config.n_kept, len(names))
    acceptance = np.asarray(sidecar['acceptance'], dtype=float)
    return PosteriorSample(names, draws, acceptance, config, expected)

#===============================================================================
#
# Result tables
#
#-------------------------------------------------------------------------------

def write_query(result, path=None):
    rows = result.rows()
    for row in rows:
        row['draws_used'] = result.draws_used
        row['latent_draws'] = result.latent_draws_per_state
        row['averaging'] = result.averaging
    columns = result.targets + ['probability', 'mc_se', 'draws_used',
        'latent_draws', 'averaging']
    return _emit(pd.DataFrame(rows, columns=columns), path)


def write_sweep(sweep, path=None):
    '''Grid coordinates, then p_<state> and se_<state> per joint state.'''
    rows = []
    columns = list(sweep.names)
    for point, result in sweep:
        labels = result.state_labels()
        row = dict(zip(sweep.names, point))
        for label, p, se in zip(labels, result.probabilities,
                                result.mc_standard_errors):
            row['p_' + label] = float(p)
            row['se_' + label] = float(se)
        row['averaging'] = result.averaging
        rows.append(row)
    if sweep.results:
        labels = sweep.results[0].state_labels()
        columns += ['p_' + l for l in labels] + ['se_' + l for l in labels]
    columns.append('averaging')
    return _emit(pd.DataFrame(rows, columns=columns), path)


def write_summary(rows, path=None):
    columns = ['parameter', 'mean', 'sd', 'q05', 'q50', 'q95', 'rhat', 'ess',
        'mcse']
    return _emit(pd.DataFrame(rows, columns=columns), path)


def write_predictive(draws, model, path=None):
    frame = pd.DataFrame(dict((n, draws.column(n)) for n in model.topo_order),
        columns=list(model.topo_order))
    frame.insert(0, 'draw', draws.draw_index + 1)
    return _emit(frame, path)


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
