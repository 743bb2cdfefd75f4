#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN ACTIONS
#################################################################################
# File:       cli.py
#
#             Handles affectbn actions via the command line interface.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
''' Provides the command line actions that can be performed by affectbn.'''

__version__ = "0.1"


import sys

import numpy as np

from affectbn.api import AffectAPI
from affectbn.constants import FAILURE, SUCCEED
from affectbn import formats
from affectbn.utils import pad, terminal_width


def _cell(value, digits=4):
    '''Table text of one value.

    >>> _cell(0.123456), _cell(float('nan')), _cell(3), _cell('AF')
    ('0.1235', 'nan', '3', 'AF')
    '''
    if isinstance(value, (float, np.floating)):
        if np.isnan(value):
            return 'nan'
        return '%.*g' % (digits, value)
    return str(value)


class TablePrinter(object):
    ''' Prints rows of dicts as aligned columns on the standard output.'''

    def __init__(self, config):
        self.config = config
        self.output = self.config['output']
        if not self.config['width']:
            self.width = terminal_width() - 1
        else:
            self.width = self.config['width']

    def format(self, rows, columns):
        '''
        >>> from affectbn.config import BareConfig
        >>> p = TablePrinter(BareConfig(width=40))
        >>> for line in p.format([{'ML': 0, 'probability': 0.25},
        ...                       {'ML': 1, 'probability': 0.75}],
        ...                      ['ML', 'probability']):
        ...     print(line.rstrip())
        ML  probability
        0   0.25
        1   0.75
        '''
        cells = [[_cell(row[c]) for c in columns] for row in rows]
        widths = [max([len(c)] + [len(r[i]) for r in cells])
                  for i, c in enumerate(columns)]
        # squeeze the widest column first when the table is too wide
        while sum(widths) + 2 * len(widths) > self.width and max(widths) > 6:
            widths[widths.index(max(widths))] -= 1
        lines = ['  '.join(pad(c, w) for c, w in zip(columns, widths))]
        for r in cells:
            lines.append('  '.join(pad(v, w) for v, w in zip(r, widths)))
        return lines

    def print_rows(self, rows, columns):
        for line in self.format(rows, columns):
            self.output.notice(line.rstrip())


class Main(object):
    '''Performs the actions the user selected.
    '''

    def __init__(self, config):
        self.config = config
        self.output = config['output']
        self.api = AffectAPI(config,
                             report_errors=False,
                             output=self.output)
        self.printer = TablePrinter(config)
        self.actions = [('simulate',      'Simulate'),
                        ('fit',           'Fit'),
                        ('diagnose',      'Diagnose'),
                        ('summary',       'Summary'),
                        ('query',         'Query'),
                        ('sweep',         'Sweep'),
                        ('predict',       'Predict'),
                        ('export-preset', 'ExportPreset'),]

    def __call__(self):
        try:
            code = self.run()
        except KeyboardInterrupt:
            self.output.die('Interrupted')
        sys.exit(code)

    def run(self):
        '''Runs the selected action and returns the exit code.'''
        self.output.debug("CLI.run(): self.config.keys()"
            " %s" % str(self.config.keys()), 6)

        result = True
        for action, method in self.actions:
            if self.config['command'] != action:
                continue
            self.output.debug('Running action %s' % action, 4)
            try:
                result = getattr(self, method)()
            except (ValueError, KeyError, OSError) as error:
                self.api._error(str(error))
                result = False
            self.output.debug('Completed action %s, result %s'
                % (action, result), 4)

        _errors = self.api.get_errors()
        if _errors:
            self.output.warn("CLI: Errors occurred processing action"
                " %s" % self.config['command'])
            prev_state = self.output.block_callback
            self.output.block_callback = True
            for _error in _errors:
                self.output.error(_error)
            self.output.block_callback = prev_state

        if _errors or not result:
            return FAILURE
        return SUCCEED


    def _model(self):
        return self.api.load_model(self.config['model'])


    def _posterior(self, model):
        return self.api.load_posterior(self.config['posterior'], model)


    def Simulate(self):
        ''' Writes a synthetic dataset.
        '''
        model = self._model()
        if model is None:
            return False
        params = self.api.load_theta(self.config['theta'], model)
        if params is None:
            return False
        seed = self.config.resolve_seed()
        dataset = self.api.simulate(model, params, self.config['n'], seed,
            self.config['out'])
        if dataset is None:
            return False
        self.output.info('Wrote %d rows to %s' % (dataset.n_rows,
            self.config['out']), 2)
        return True


    def Fit(self):
        ''' Samples the posterior and prints its summary.
        '''
        model = self._model()
        if model is None:
            return False
        data = self.api.load_dataset(self.config['data'], model)
        if data is None:
            return False
        sample = self.api.fit(model, data, self.config['out'])
        if sample is None:
            return False
        self.printer.print_rows(self.api.summarize(sample),
            ['parameter', 'mean', 'sd', 'rhat', 'ess'])
        self.output.info('Wrote %d draws to %s' % (sample.n_draws,
            self.config['out']), 2)
        return True


    def Diagnose(self):
        ''' Prints R-hat and ESS; fails above the threshold.
        '''
        model = self._model()
        sample = self._posterior(model) if model is not None else None
        if sample is None:
            return False
        rows, ok = self.api.diagnose(sample)
        if rows is None:
            return False
        self.printer.print_rows(rows, ['parameter', 'rhat', 'ess', 'mcse'])
        if ok:
            self.output.info('All R-hat values within %s'
                % self.config['rhat_threshold'], 2)
        return ok


    def Summary(self):
        ''' Prints the posterior summary table.
        '''
        model = self._model()
        sample = self._posterior(model) if model is not None else None
        if sample is None:
            return False
        rows = self.api.summarize(sample)
        self.printer.print_rows(rows, ['parameter', 'mean', 'sd', 'q05', 'q50',
            'q95', 'rhat', 'ess', 'mcse'])
        if self.config['out']:
            formats.write_summary(rows, self.config['out'])
        return True


    def Query(self):
        ''' Prints the probabilities of the joint target states.
        '''
        model = self._model()
        sample = self._posterior(model) if model is not None else None
        if sample is None:
            return False
        result = self.api.query(model, sample, self.config['evidence'],
            self.config['targets'])
        if result is None:
            return False
        self.printer.print_rows(result.rows(),
            result.targets + ['probability', 'mc_se'])
        self.output.info('%d posterior draws, %d latent draws per state, '
            '%s averaging' % (result.draws_used,
            result.latent_draws_per_state, result.averaging), 3)
        if self.config['out']:
            formats.write_query(result, self.config['out'])
        return True


    def Sweep(self):
        ''' Writes the query results over a grid of evidence values.
        '''
        model = self._model()
        sample = self._posterior(model) if model is not None else None
        if sample is None:
            return False
        result = self.api.sweep(model, sample, self.config['evidence'],
            self.config['grid'], self.config['targets'])
        if result is None:
            return False
        formats.write_sweep(result, self.config['out'])
        self.output.info('Wrote %d grid points to %s' % (len(result),
            self.config['out']), 2)
        return True


    def Predict(self):
        ''' Prints the posterior predictive summary of every node.
        '''
        model = self._model()
        sample = self._posterior(model) if model is not None else None
        if sample is None:
            return False
        draws, rows = self.api.predict(model, sample, self.config['evidence'])
        if draws is None:
            return False
        self.printer.print_rows(rows, ['node', 'mean', 'sd', 'q05', 'q50',
            'q95'])
        if self.config['out']:
            formats.write_predictive(draws, model, self.config['out'])
        return True


    def ExportPreset(self):
        ''' Writes the built-in network spec.
        '''
        model = self.api.export_preset(self.config['out'],
            self.config['theta_out'])
        if model is None:
            return False
        self.output.info('Wrote the %s network to %s'
            % (', '.join(model.topo_order), self.config['out']), 2)
        return True


if __name__ == '__main__':
    import doctest
    doctest.testmod(sys.modules[__name__])
