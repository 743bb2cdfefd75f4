#!/usr/bin/python
# -*- coding: utf-8 -*-

"""
 AFFECTBN CONFIGURATION

 File:       config.py

             Handles basic affectbn configuration

 Copyright:
             (c) 2026 affectbn developers
             Distributed under the terms of the GNU General Public License v2
"""

'''Defines the configuration options.'''

__version__ = "0.2"



import os
import sys
import configparser

from affectbn.constants import SEED_ENV
from affectbn.output import Message
from affectbn.sampler import ConfigError


def read_affectbn_config(config=None, path=None, output=None):
    """reads the config file at path into the [MAIN] section

    @param config: configparser.ConfigParser instance
    @param path: string
    """
    read_files = config.read(path, encoding='utf-8')
    if read_files == [] and output is not None:
        output.warn("Warning: not able to parse config file: %s" % path)
    return read_files


class BareConfig(object):
    '''Handles the configuration only.'''

    def __init__(self, output=None, stdout=None, stderr=None,
        config=None, read_configfile=False, quiet=False, quietness=4,
        nocolor=False, width=0
        ):
        '''
        Creates a bare config with defaults and a few output options.

        >>> a = BareConfig()
        >>> a['chains']
        '4'
        >>> a.get_int('iterations'), a.get_float('target_acceptance')
        (2000, 0.44)
        >>> a.get_option('adapt'), a.get_option('standardize')
        (True, False)
        >>> sorted(a.keys())
        ['adapt', 'averaging', 'batch_size', 'chains', 'config', 'iterations', 'latent_draws', 'max_draws', 'n_per_draw', 'nocolor', 'output', 'quiet', 'quietness', 'rhat_threshold', 'seed', 'standardize', 'stderr', 'stdout', 't/f_options', 'target_acceptance', 'thin', 'threads', 'warmup', 'width']
        '''

        self._defaults = {
                    'chains'    : '4',
                    'iterations': '2000',
                    'warmup'    : '',
                    'thin'      : '1',
                    'target_acceptance': '0.44',
                    'adapt'     : 'yes',
                    'standardize': 'no',
                    'latent_draws': '8',
                    'max_draws' : '',
                    'batch_size': '512',
                    'threads'   : '1',
                    'averaging' : 'pooled',
                    'rhat_threshold': '1.01',
                    'seed'      : '',
                    'n_per_draw': '1',
                    't/f_options': ['adapt', 'standardize'],
                    }
        self._options = {
                    'config': config,
                    'stdout': stdout if stdout else sys.stdout,
                    'stderr': stderr if stderr else sys.stderr,
                    'output': output if output else Message(out=stdout, err=stderr),
                    'quietness': quietness,
                    'nocolor': nocolor,
                    'width': width,
                    'quiet': quiet,
                    }
        self._set_quietness(quietness)
        self._options['output'].set_colorize(not nocolor)
        self.config = None
        if read_configfile and config:
            self.read_config(config)


    def read_config(self, path):
        self.config = configparser.ConfigParser()
        self.config.add_section('MAIN')
        return read_affectbn_config(self.config, path, self._options['output'])


    def keys(self):
        '''Special handler for the configuration keys.
        '''
        self._options['output'].debug(
            'Retrieving %s options' % self.__class__.__name__, 9)
        keys = [i for i in self._options]
        keys += [i for i in self._defaults
                 if not i in keys]
        return keys


    def get_defaults(self):
        """returns our defaults dictionary"""
        return self._defaults.copy()


    def get_option(self, key):
        """returns the current option's value"""
        return self._get_(key)


    def set_option(self, option, value):
        """Sets an option to the value """
        self._options[option] = value
        # handle quietness
        if option == 'quiet':
            if self._options['quiet']:
                self._set_quietness(1)
                self._options['quietness'] = 1
            else:
                self._set_quietness(4)
        if option == 'quietness':
            self._set_quietness(value)
        if option == 'nocolor':
            self._options['output'].set_colorize(not value)

    def _set_quietness(self, value):
            self._options['output'].set_info_level(value)
            self._options['output'].set_warn_level(value)

    def __getitem__(self, key):
        return self._get_(key)

    def _get_(self, key):
        self._options['output'].debug(
            'Retrieving %s option: %s' % (self.__class__.__name__, key), 9)
        if (key in self._options
            and not self._options[key] is None):
            return self._options[key]
        if self.config and self.config.has_option('MAIN', key):
            if key in self._defaults['t/f_options']:
                return self.t_f_check(self.config.get('MAIN', key))
            return self.config.get('MAIN', key)
        if key in self._defaults['t/f_options']:
            return self.t_f_check(self._defaults[key])
        if key in self._defaults:
            return self._defaults[key]
        return None

    def given(self, key):
        '''The value set explicitly for key, or None.'''
        return self._options.get(key)

    def get_int(self, key):
        '''The option as an integer, None when it is empty.'''
        return self._number(key, int)

    def get_float(self, key):
        '''The option as a float, None when it is empty.'''
        return self._number(key, float)

    def _number(self, key, kind):
        value = self._get_(key)
        if value is None or (isinstance(value, str) and not value.strip()):
            return None
        if isinstance(value, bool):
            raise ConfigError('Option "%s" must be a number, got %r'
                % (key, value))
        try:
            return kind(value)
        except (TypeError, ValueError):
            raise ConfigError('Option "%s" must be %s, got %r'
                % (key, 'an integer' if kind is int else 'a number', value))

    def resolve_seed(self):
        '''--seed, else $AFFECTBN_SEED, else the config file, else 0.'''
        if self.given('seed') is not None:
            return self.get_int('seed')
        env = os.environ.get(SEED_ENV, '').strip()
        if env:
            try:
                return int(env)
            except ValueError:
                raise ConfigError('%s must be an integer, got %r'
                    % (SEED_ENV, env))
        seed = self.get_int('seed')
        return 0 if seed is None else seed

    @staticmethod
    def t_f_check(option):
        """evaluates the option and returns
        True or False
        """
        if isinstance(option, bool):
            return option
        return option.lower() in ['yes', 'true', 'y', 't']


class OptionConfig(BareConfig):
    """This subclasses BareConfig adding functions to make overriding
    or resetting defaults and/or setting options much easier
    by using dictionaries.
    """

    def __init__(self, options=None, defaults=None):
        """
        @param options: dictionary of {'option': value, ...}
        @rtype OptionConfig class instance.

        >>> a = OptionConfig(options={'chains': 2}, defaults={'thin': '5'})
        >>> a.get_int('chains'), a.get_int('thin')
        (2, 5)
        """
        BareConfig.__init__(self)

        self.update_defaults(defaults)

        self.update(options)

        return

    def update(self, options):
        """update the options with new values passed in via options

        @param options
        """
        if options is not None:
            options = dict(options)
            if 'quiet' in options:
                self.set_option('quiet', options.pop('quiet'))
            if 'quietness' in options and not self._options['quiet']:
                self._set_quietness(options['quietness'])
            self._options.update(options)
        return

    def update_defaults(self, new_defaults):
        """update the defaults with new values passed in via new_defaults

        @param new_defaults
        """
        if new_defaults is not None:
            self._defaults.update(new_defaults)
        return

#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest
    doctest.testmod(sys.modules[__name__])
