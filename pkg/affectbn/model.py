#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN NETWORK MODEL
#################################################################################
# File:       model.py
#
#             The network data model: covariates, node specifications,
#             the validated DAG, parameter vectors and datasets.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Defines the network data model.

A network is a DAG of nodes.  Every node regresses on an ordered list
of covariates and an ordered list of parent nodes; its coefficient
vector is laid out as (intercept, covariates..., parents...).  Nodes of
the gaussian-linear family carry a noise scale with a uniform prior.

>>> schema = CovariateSchema([Covariate('Sex', 'binary'),
...                           Covariate('Age', 'continuous', 'years')])
>>> a = NodeSpec('A', 'bernoulli-logistic', covariates=['Sex'])
>>> b = NodeSpec('B', 'gaussian-linear', parents=['A'], covariates=['Age'],
...              sigma_prior=UniformPrior(0, 30))
>>> m = ModelSpec(schema, [b, a])
>>> m.topo_order
('A', 'B')
>>> m.parameter_names()
['A.b0', 'A.b.Sex', 'B.b0', 'B.b.Age', 'B.b.A', 'B.sigma']
'''

__version__ = "0.1"

#===============================================================================
#
# Dependencies
#
#-------------------------------------------------------------------------------

import json
import hashlib

import numpy as np
import networkx as nx

from affectbn.constants import BINARY, CONTINUOUS, PRIOR_MEAN, \
    PRIOR_VARIANCE
from affectbn.families import FAMILIES

#===============================================================================
#
# Exceptions
#
#-------------------------------------------------------------------------------

class ValidationError(ValueError):
    '''A model, parameter set or query is malformed.'''


class CycleError(ValidationError):
    def __init__(self, node, cycle=None):
        self.node = node
        self.cycle = cycle or []
        path = ' -> '.join([e[0] for e in self.cycle] + [node]) \
            if self.cycle else node
        super(CycleError, self).__init__(
            'The network is not acyclic: node "%s" lies on the cycle %s'
            % (node, path))


class DanglingReferenceError(ValidationError):
    def __init__(self, name, owner, kind='parent'):
        self.name = name
        self.owner = owner
        super(DanglingReferenceError, self).__init__(
            '%s "%s" referenced by "%s" is not declared'
            % (kind.capitalize(), name, owner))


class MissingInputError(ValueError):
    def __init__(self, name, owner=None):
        self.name = name
        where = ' (needed by "%s")' % owner if owner else ''
        super(MissingInputError, self).__init__(
            'No value given for "%s"%s' % (name, where))


class SchemaMismatchError(ValueError):
    '''A dataset or parameter vector does not match the model.'''


class FingerprintMismatchError(ValueError):
    def __init__(self, expected, found):
        super(FingerprintMismatchError, self).__init__(
            'The posterior was drawn for model %s, not for model %s'
            % (found[:12], expected[:12]))

#===============================================================================
#
# Priors
#
#-------------------------------------------------------------------------------

class NormalPrior(object):
    '''Normal prior given by mean and variance.

    >>> round(NormalPrior(0, 25).log_density(0.0), 7)
    -2.5283764
    '''

    def __init__(self, mean=PRIOR_MEAN, variance=PRIOR_VARIANCE):
        self.mean = float(mean)
        self.variance = float(variance)
        if not self.variance > 0:
            raise ValidationError('Normal prior variance must be > 0, got %r'
                % variance)

    def log_density(self, x):
        d = float(x) - self.mean
        return float(-0.5 * np.log(2.0 * np.pi * self.variance)
            - d * d / (2.0 * self.variance))

    def to_dict(self):
        return {'mean': self.mean, 'variance': self.variance}

    def __eq__(self, other):
        return isinstance(other, NormalPrior) and \
            (self.mean, self.variance) == (other.mean, other.variance)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'NormalPrior(%r, %r)' % (self.mean, self.variance)


class UniformPrior(object):
    '''Uniform prior on the open interval (lo, hi).

    >>> p = UniformPrior(0, 30)
    >>> round(p.log_density(15.0), 7)
    -3.4011974
    >>> p.log_density(30.0), p.log_density(0.0)
    (-inf, -inf)
    '''

    def __init__(self, lo=0.0, hi=30.0):
        self.lo = float(lo)
        self.hi = float(hi)
        if not self.lo >= 0:
            raise ValidationError('Sigma prior lower bound must be >= 0, '
                'got %r' % lo)
        if not self.hi > self.lo:
            raise ValidationError('Sigma prior needs lo < hi, got (%r, %r)'
                % (lo, hi))

    def contains(self, x):
        return self.lo < x < self.hi

    def log_density(self, x):
        if self.contains(x):
            return -float(np.log(self.hi - self.lo))
        return -np.inf

    def clamp(self, x):
        '''Pull x into the inner 98% of the support.'''
        width = self.hi - self.lo
        return min(max(x, self.lo + 0.01 * width), self.lo + 0.99 * width)

    def to_dict(self):
        return {'lo': self.lo, 'hi': self.hi}

    def __eq__(self, other):
        return isinstance(other, UniformPrior) and \
            (self.lo, self.hi) == (other.lo, other.hi)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'UniformPrior(%r, %r)' % (self.lo, self.hi)

#===============================================================================
#
# Covariates
#
#-------------------------------------------------------------------------------

class Covariate(object):

    def __init__(self, name, kind=CONTINUOUS, unit='', range=None):
        self.name = name
        self.kind = kind
        self.unit = unit or ''
        self.range = None if range is None else \
            (float(range[0]), float(range[1]))
        if kind not in (BINARY, CONTINUOUS):
            raise ValidationError('Covariate "%s": unknown kind "%s"'
                % (name, kind))
        if self.range is not None and not self.range[0] < self.range[1]:
            raise ValidationError('Covariate "%s": range needs lo < hi, '
                'got %r' % (name, self.range))

    def to_dict(self):
        result = {'name': self.name, 'kind': self.kind}
        if self.unit:
            result['unit'] = self.unit
        if self.range is not None:
            result['range'] = [self.range[0], self.range[1]]
        return result

    def __eq__(self, other):
        return isinstance(other, Covariate) and \
            self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not self.__eq__(other)


class CovariateSchema(object):
    ''' The ordered list of base covariates.'''

    def __init__(self, entries):
        self.entries = tuple(entries)
        seen = set()
        for entry in self.entries:
            if entry.name in seen:
                raise ValidationError('Covariate "%s" declared twice'
                    % entry.name)
            seen.add(entry.name)
        self.by_name = dict((e.name, e) for e in self.entries)

    def names(self):
        return [e.name for e in self.entries]

    def is_binary(self, name):
        return self.by_name[name].kind == BINARY

    def __contains__(self, name):
        return name in self.by_name

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, CovariateSchema) and \
            self.entries == other.entries

    def __ne__(self, other):
        return not self.__eq__(other)

#===============================================================================
#
# Nodes
#
#-------------------------------------------------------------------------------

class NodeSpec(object):
    ''' One node of the network and the priors on its parameters.

    Without explicit coefficient priors every coefficient gets N(0, 25).
    '''

    def __init__(self, name, family, parents=(), covariates=(),
        coefficient_priors=None, sigma_prior=None
        ):
        self.name = name
        self.family = family
        self.parents = tuple(parents)
        self.covariates = tuple(covariates)
        if coefficient_priors is None:
            coefficient_priors = [NormalPrior()
                for i in range(1 + len(self.covariates) + len(self.parents))]
        self.coefficient_priors = tuple(coefficient_priors)
        self.sigma_prior = sigma_prior
        self._check()

    def _check(self):
        if self.family not in FAMILIES:
            raise ValidationError('Node "%s": unknown family "%s"'
                % (self.name, self.family))
        if self.name in self.parents:
            raise ValidationError('Node "%s" lists itself as a parent'
                % self.name)
        inputs = self.inputs
        if len(set(inputs)) != len(inputs):
            raise ValidationError('Node "%s" lists an input twice'
                % self.name)
        if len(self.coefficient_priors) != 1 + len(inputs):
            raise ValidationError('Node "%s" needs %d coefficient priors '
                '(intercept, %d covariates, %d parents), got %d'
                % (self.name, 1 + len(inputs), len(self.covariates),
                   len(self.parents), len(self.coefficient_priors)))
        if self.family_impl.has_sigma and self.sigma_prior is None:
            raise ValidationError('Node "%s" of family %s needs a sigma '
                'prior' % (self.name, self.family))
        if not self.family_impl.has_sigma and self.sigma_prior is not None:
            raise ValidationError('Node "%s" of family %s takes no sigma '
                'prior' % (self.name, self.family))

    @property
    def family_impl(self):
        return FAMILIES[self.family]

    @property
    def inputs(self):
        '''Regressors in coefficient order: covariates, then parents.'''
        return self.covariates + self.parents

    @property
    def n_coefficients(self):
        return 1 + len(self.covariates) + len(self.parents)

    def coefficient_names(self):
        return ['%s.b0' % self.name] + \
            ['%s.b.%s' % (self.name, i) for i in self.inputs]

    def to_dict(self):
        result = {
            'name': self.name,
            'family': self.family,
            'parents': list(self.parents),
            'covariates': list(self.covariates),
            'coefficient_priors': [p.to_dict()
                for p in self.coefficient_priors],
            }
        if self.sigma_prior is not None:
            result['sigma_prior'] = self.sigma_prior.to_dict()
        return result

    def __eq__(self, other):
        return isinstance(other, NodeSpec) and \
            self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'NodeSpec(%r, %r)' % (self.name, self.family)

#===============================================================================
#
# Network
#
#-------------------------------------------------------------------------------

def validate(model):
    '''Checks names and references and returns the topological order.

    Ties are broken lexicographically by node name, so the order does
    not depend on the order the nodes were declared in.

    >>> schema = CovariateSchema([])
    >>> validate(ModelSpec(schema, [NodeSpec('X', 'bernoulli-logistic')]))
    ('X',)
    >>> ModelSpec(schema, [NodeSpec('A', 'bernoulli-logistic', parents=['B']),
    ...                    NodeSpec('B', 'bernoulli-logistic', parents=['A'])])
    Traceback (most recent call last):
    ...
    affectbn.model.CycleError: The network is not acyclic: node "A" lies on the cycle A -> B -> A
    '''
    nodes = list(model.nodes)
    if not nodes:
        raise ValidationError('The network has no nodes')

    names = [n.name for n in nodes]
    seen = set()
    for name in names:
        if name in seen:
            raise ValidationError('Node "%s" declared twice' % name)
        if name in model.covariates:
            raise ValidationError('"%s" is declared both as a node and as '
                'a covariate' % name)
        seen.add(name)

    graph = nx.DiGraph()
    graph.add_nodes_from(names)
    for node in nodes:
        for cov in node.covariates:
            if cov not in model.covariates:
                raise DanglingReferenceError(cov, node.name, 'covariate')
        for parent in node.parents:
            if parent not in seen:
                raise DanglingReferenceError(parent, node.name)
            graph.add_edge(parent, node.name)

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph, source=sorted(names))
        # report the lexicographically first node on the cycle
        first = min(e[0] for e in cycle)
        start = [e[0] for e in cycle].index(first)
        cycle = cycle[start:] + cycle[:start]
        raise CycleError(first, cycle)

    return tuple(nx.lexicographical_topological_sort(graph))


class ModelSpec(object):
    ''' A validated network: covariate schema plus node specifications.

    Parameters are laid out node by node in topological order
    (intercept, covariates, parents), followed by the sigmas of the
    gaussian-linear nodes in topological order.
    '''

    def __init__(self, covariates, nodes):
        if not isinstance(covariates, CovariateSchema):
            covariates = CovariateSchema(covariates)
        self.covariates = covariates
        self.nodes = tuple(nodes)
        self.topo_order = validate(self)
        self.by_name = dict((n.name, n) for n in self.nodes)

        self.coef_slices = {}
        offset = 0
        for name in self.topo_order:
            k = self.by_name[name].n_coefficients
            self.coef_slices[name] = slice(offset, offset + k)
            offset += k
        self.n_coefficients = offset
        self.sigma_index = {}
        for name in self.topo_order:
            if self.by_name[name].family_impl.has_sigma:
                self.sigma_index[name] = offset
                offset += 1
        self.n_parameters = offset

        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.topo_order)
        for node in self.nodes:
            for parent in node.parents:
                self.graph.add_edge(parent, node.name)

    def node(self, name):
        try:
            return self.by_name[name]
        except KeyError:
            raise DanglingReferenceError(name, 'the query', 'node')

    def ordered_nodes(self):
        return [self.by_name[n] for n in self.topo_order]

    def parameter_names(self):
        names = []
        for node in self.ordered_nodes():
            names.extend(node.coefficient_names())
        for name in self.topo_order:
            if name in self.sigma_index:
                names.append('%s.sigma' % name)
        return names

    def binary_columns(self):
        '''Names of every column restricted to {0, 1}.'''
        cols = [c.name for c in self.covariates if c.kind == BINARY]
        cols += [n for n in self.topo_order
                 if self.by_name[n].family_impl.family_key ==
                    'bernoulli-logistic']
        return cols

    def columns(self):
        return self.covariates.names() + list(self.topo_order)

    def ancestors(self, names):
        result = set()
        for name in names:
            result.update(nx.ancestors(self.graph, name))
        return result

    def to_dict(self):
        return {
            'covariates': [c.to_dict() for c in self.covariates],
            'nodes': [n.to_dict() for n in self.nodes],
            }

    def __eq__(self, other):
        return isinstance(other, ModelSpec) and \
            self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'ModelSpec(%s)' % ', '.join(self.topo_order)


def fingerprint(model):
    '''SHA-256 of the compact canonical JSON form of the model.

    Nodes and covariates are hashed in name order; the parameter layout
    does not depend on the order they were declared in.
    '''
    document = model.to_dict()
    for key in ('covariates', 'nodes'):
        document[key] = sorted(document[key], key=lambda d: d['name'])
    text = json.dumps(document, separators=(',', ':'))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()

#===============================================================================
#
# Parameters
#
#-------------------------------------------------------------------------------

class ParameterVector(object):
    ''' All coefficients and sigmas of a model, addressable per node.

    >>> schema = CovariateSchema([Covariate('Age')])
    >>> m = ModelSpec(schema, [NodeSpec('Y', 'gaussian-linear',
    ...     covariates=['Age'], sigma_prior=UniformPrior(0, 30))])
    >>> p = ParameterVector.from_dict(m, {'Y.b0': 1.0, 'Y.b.Age': 0.5,
    ...                                   'Y.sigma': 2.0})
    >>> p.coefficients('Y').tolist(), p.sigma('Y')
    ([1.0, 0.5], 2.0)
    '''

    def __init__(self, model, values):
        values = np.array(values, dtype=float)
        if values.shape != (model.n_parameters,):
            raise SchemaMismatchError('Expected %d parameter values, got %s'
                % (model.n_parameters, values.shape))
        values.flags.writeable = False
        self.model = model
        self.values = values

    @classmethod
    def from_dict(cls, model, mapping):
        names = model.parameter_names()
        missing = [n for n in names if n not in mapping]
        if missing:
            raise SchemaMismatchError('Missing parameter values: %s'
                % ', '.join(missing))
        extra = sorted(set(mapping) - set(names))
        if extra:
            raise SchemaMismatchError('Unknown parameters: %s'
                % ', '.join(extra))
        return cls(model, [float(mapping[n]) for n in names])

    @classmethod
    def zeros(cls, model, sigma=1.0):
        values = np.zeros(model.n_parameters)
        for index in model.sigma_index.values():
            values[index] = sigma
        return cls(model, values)

    def coefficients(self, name):
        return self.values[self.model.coef_slices[name]]

    def sigma(self, name):
        index = self.model.sigma_index.get(name)
        if index is None:
            return None
        return float(self.values[index])

    def to_dict(self):
        return dict(zip(self.model.parameter_names(),
            [float(v) for v in self.values]))

    def __eq__(self, other):
        return isinstance(other, ParameterVector) and \
            self.model == other.model and \
            np.array_equal(self.values, other.values)

    def __ne__(self, other):
        return not self.__eq__(other)

#===============================================================================
#
# Data
#
#-------------------------------------------------------------------------------

class Dataset(object):
    ''' Complete rows of covariate and node values for a model.

    Columns are stored as read-only float arrays; binary columns hold
    only 0 and 1.
    '''

    def __init__(self, model, columns):
        self.model = model
        self.columns = {}
        n_rows = None
        for name in model.columns():
            if name not in columns:
                raise SchemaMismatchError('Dataset has no column "%s"' % name)
            col = np.array(columns[name], dtype=float).reshape(-1)
            if n_rows is None:
                n_rows = col.shape[0]
            elif col.shape[0] != n_rows:
                raise SchemaMismatchError('Column "%s" has %d rows, expected '
                    '%d' % (name, col.shape[0], n_rows))
            if not np.all(np.isfinite(col)):
                raise SchemaMismatchError('Column "%s" has missing or '
                    'non-finite values' % name)
            col.flags.writeable = False
            self.columns[name] = col
        for name in model.binary_columns():
            col = self.columns[name]
            if np.any((col != 0.0) & (col != 1.0)):
                raise SchemaMismatchError('Binary column "%s" holds values '
                    'other than 0 and 1' % name)
        self.n_rows = n_rows or 0

    def column(self, name):
        return self.columns[name]

    def take(self, indices):
        indices = np.asarray(indices, dtype=int)
        return Dataset(self.model,
            dict((k, v[indices]) for k, v in self.columns.items()))

    def concat(self, other):
        return Dataset(self.model,
            dict((k, np.concatenate([v, other.columns[k]]))
                 for k, v in self.columns.items()))

    def __len__(self):
        return self.n_rows

    def __eq__(self, other):
        return isinstance(other, Dataset) and self.model == other.model and \
            all(np.array_equal(v, other.columns[k])
                for k, v in self.columns.items())

    def __ne__(self, other):
        return not self.__eq__(other)


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
