#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN ARGUMENT PARSER
#################################################################################
# File:       argsparser.py
#
#             Handles affectbn command line interface configuration
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
'''Defines the configuration options and provides parsing functionality.'''


__version__ = "0.1"

#===============================================================================
#
# Dependencies
#
#-------------------------------------------------------------------------------

import sys
import argparse

from affectbn.config import BareConfig
from affectbn.constants import OFF, AVERAGING_SCHEMES
from affectbn.utils import parse_evidence, parse_grid, parse_names
from affectbn.version import VERSION


_DESCRIPTION = """
  affectbn simulate --model M --n N --out data.csv
  affectbn fit      --model M --data data.csv --out draws.csv
  affectbn diagnose --model M --posterior draws.csv
  affectbn query    --model M --posterior draws.csv --evidence E --targets T
  affectbn sweep    --model M --posterior draws.csv --evidence E --grid G \\
                    --targets T --out sweep.csv

  M is a JSON spec file or "bertha" for the built-in driver network."""


def _typed(func, label):
    '''Wraps a parser so argparse reports the offending token.'''
    def convert(text):
        try:
            return func(text)
        except ValueError as error:
            raise argparse.ArgumentTypeError('bad %s: %s' % (label, error))
    convert.__name__ = label
    return convert


class ArgsParser(BareConfig):
    '''Handles the configuration and option parser.'''

    def __init__(self, args=None, stdout=None, stderr=None):
        '''
        Creates and describes all possible affectbn options and creates
        a Message object.

        >>> a = ArgsParser(['query', '--model', 'bertha', '--posterior',
        ...     'p.csv', '--evidence', 'Sex=0,Age=20', '--targets', 'ML'])
        >>> a['command'], a['targets'], a['evidence']
        ('query', ['ML'], [('Sex', 0.0), ('Age', 20.0)])
        >>> a['latent_draws'], a.get_int('latent_draws')
        ('8', 8)
        '''

        BareConfig.__init__(self, stdout=stdout, stderr=stderr)
        if args is None:
            args = sys.argv[1:]

        # lookups fall back to the BareConfig options until parse_args runs
        self.options = None
        self.defaults = self.get_defaults()
        self.output = self._options['output']

        self.parser = argparse.ArgumentParser(prog='affectbn',
            description='Hybrid Bayesian network engine for driver mental '
            'states.', epilog=_DESCRIPTION,
            formatter_class=argparse.RawDescriptionHelpFormatter)
        self.parser.add_argument('-V', '--version', action='version',
            version='%(prog)s ' + VERSION)

        #-----------------------------------------------------------------
        # Options shared by every command

        common = argparse.ArgumentParser(add_help=False)

        group = common.add_argument_group('<Path options>')
        group.add_argument('-c', '--config',
            help='Path to the config file (none is read by default).')

        group = common.add_argument_group('<Output options>')
        group.add_argument('-q', '--quiet', action='store_true', default=None,
            help='Reduce output to errors.')
        group.add_argument('-Q', '--quietness', type=int, choices=range(5),
            help='Output verbosity, 0 (silent) to 4 (all). Default 4.')
        group.add_argument('-N', '--nocolor', action='store_true',
            default=None, help='Remove color codes from the output.')
        group.add_argument('-W', '--width', type=int,
            help='Table width, terminal width by default.')
        group.add_argument('--debug-level', type=int, default=OFF,
            help='Debug verbosity, 0 (off) to 9.')
        group.add_argument('--threads', type=int,
            help='Worker threads for chains and grid points.')

        model = argparse.ArgumentParser(add_help=False)
        model.add_argument('--model', required=True,
            help='JSON spec file, or "bertha".')

        seed = argparse.ArgumentParser(add_help=False)
        seed.add_argument('--seed', type=int,
            help='Master seed; falls back to $AFFECTBN_SEED, then the '
            'config file, then 0.')

        draws = argparse.ArgumentParser(add_help=False)
        draws.add_argument('--posterior', required=True,
            help='Posterior draws CSV (the JSON sidecar sits next to it).')
        draws.add_argument('--max-draws', dest='max_draws', type=int,
            help='Use at most this many evenly spaced posterior draws.')

        conditioning = argparse.ArgumentParser(add_help=False)
        conditioning.add_argument('--evidence', default=[],
            type=_typed(parse_evidence, 'evidence'),
            help='name=value pairs, e.g. Sex=0,Age=20,BMI=22,MNB=20')
        conditioning.add_argument('--targets', required=True,
            type=_typed(parse_names, 'targets'),
            help='Comma separated binary target nodes.')
        conditioning.add_argument('--latent-draws', dest='latent_draws',
            type=int, help='Latent draws per (posterior draw, state).')
        conditioning.add_argument('--averaging', choices=AVERAGING_SCHEMES,
            help='Pool weights over draws, or average per-draw '
            'probabilities.')

        #-----------------------------------------------------------------
        # Commands

        commands = self.parser.add_subparsers(dest='command',
            metavar='<command>')
        commands.required = True

        sub = commands.add_parser('simulate', parents=[common, model, seed],
            help='Write a synthetic dataset.')
        sub.add_argument('--theta',
            help='Parameter JSON; the reference parameters by default for '
            'the built-in network.')
        sub.add_argument('--n', type=int, required=True, help='Row count.')
        sub.add_argument('--out', required=True, help='Dataset CSV to write.')

        sub = commands.add_parser('fit', parents=[common, model, seed],
            help='Sample the posterior of the parameters.')
        sub.add_argument('--data', required=True, help='Dataset CSV.')
        sub.add_argument('--chains', type=int)
        sub.add_argument('--iters', dest='iterations', type=int)
        sub.add_argument('--warmup', type=int)
        sub.add_argument('--thin', type=int)
        sub.add_argument('--target-acceptance', dest='target_acceptance',
            type=float)
        sub.add_argument('--no-adapt', dest='adapt', action='store_const',
            const=False, help='Keep the initial proposal scales.')
        sub.add_argument('--standardize', action='store_const', const=True,
            help='Sample in centred and scaled coefficients.')
        sub.add_argument('--out', required=True,
            help='Posterior draws CSV to write.')

        sub = commands.add_parser('diagnose', parents=[common, model, draws],
            help='Print R-hat and ESS; fail above the R-hat threshold.')
        sub.add_argument('--rhat-threshold', dest='rhat_threshold',
            type=float)

        sub = commands.add_parser('summary', parents=[common, model, draws],
            help='Print the posterior summary table.')
        sub.add_argument('--out', help='Summary CSV to write.')

        sub = commands.add_parser('query',
            parents=[common, model, seed, draws, conditioning],
            help='Probabilities of the joint target states given evidence.')
        sub.add_argument('--out', help='Query CSV to write.')

        sub = commands.add_parser('sweep',
            parents=[common, model, seed, draws, conditioning],
            help='Run the query over a grid of evidence values.')
        sub.add_argument('--grid', required=True,
            type=_typed(parse_grid, 'grid'),
            help='name=lo:hi:count axes, e.g. SRT=19.45:191.76:25')
        sub.add_argument('--out', required=True, help='Sweep CSV to write.')

        sub = commands.add_parser('predict',
            parents=[common, model, seed, draws],
            help='Posterior predictive draws of every node.')
        sub.add_argument('--evidence', default=[],
            type=_typed(parse_evidence, 'evidence'),
            help='Covariate values, e.g. Sex=0,Age=20,BMI=22')
        sub.add_argument('--n-per-draw', dest='n_per_draw', type=int)
        sub.add_argument('--out', help='Predictive draws CSV to write.')

        sub = commands.add_parser('export-preset', parents=[common],
            help='Write the built-in network spec and reference parameters.')
        sub.add_argument('--out', required=True, help='Spec JSON to write.')
        sub.add_argument('--theta-out',
            help='Reference parameter JSON to write.')

        #-----------------------------------------------------------------
        # Parse the command line

        self.options = self.parser.parse_args(args)

        if self.options.config and not self.read_config(self.options.config):
            self.output.die('Unable to read the config file %s'
                % self.options.config)

        self.output.set_debug_level(self.options.debug_level)
        if self['nocolor']:
            self.set_option('nocolor', True)

        # handle quietness
        if self.options.quiet:
            self.set_option('quiet', True)
        elif self.options.quietness is not None:
            self.set_option('quietness', self.options.quietness)


    def given(self, key):
        '''The value set on the command line for key, or None.'''
        if self.options is None:
            return None
        return vars(self.options).get(key)

    def __getitem__(self, key):

        self.output.debug('ARGSPARSER: Retrieving options option: %s' % key, 9)

        if self.given(key) is not None:
            return self.given(key)

        self.output.debug('ARGSPARSER: Retrieving config option: %s' % key, 9)

        if self.config and self.config.has_option('MAIN', key):
            if key in self._defaults['t/f_options']:
                return self.t_f_check(self.config.get('MAIN', key))
            return self.config.get('MAIN', key)

        self.output.debug('ARGSPARSER: Retrieving option: %s' % key, 9)

        if key in self._options.keys() and self._options[key] is not None:
            return self._options[key]

        if key in self._defaults['t/f_options']:
            return self.t_f_check(self.defaults[key])

        if key in self.defaults.keys():
            return self.defaults[key]

        self.output.debug('ARGSPARSER: Retrieving option failed. returning None', 9)

        return None

    _get_ = __getitem__


    def keys(self):
        '''Special handler for the configuration keys.'''

        keys = [i for i in vars(self.options)
                if not vars(self.options)[i] is None]

        if self.config:
            keys += [name for name, _ in self.config.items('MAIN')
                     if not name in keys]

        keys += [i for i in self.defaults.keys()
                 if not i in keys]

        return keys

    def resolve_seed(self):
        if getattr(self.options, 'seed', None) is not None:
            return self.options.seed
        return BareConfig.resolve_seed(self)


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest
    doctest.testmod(sys.modules[__name__])
