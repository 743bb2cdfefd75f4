#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN UTILITIES
#################################################################################
# File:       utils.py
#
#             Helpers for the command line: evidence and grid strings,
#             table layout.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#

'''Utility functions for parsing command line values and laying out tables.'''

__version__ = '0.1'

#===============================================================================
#
# Dependencies
#
#-------------------------------------------------------------------------------

import os
import re

import numpy as np

_NAME = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')

#===============================================================================
#
# Helper functions
#
#-------------------------------------------------------------------------------

def pad(string, length):
    '''Pad a string with spaces.

    >>> pad('MHR', 5) + '|'
    'MHR  |'
    >>> pad('averaging', 6)
    'ave...'
    '''
    if len(string) <= length:
        return string + ' ' * (length - len(string))
    else:
        return string[:length - 3] + '...'


def terminal_width():
    '''Determine width of terminal window.'''
    try:
        width = int(os.environ['COLUMNS'])
        if width > 0:
            return width
    except (KeyError, ValueError):
        pass
    try:
        import struct, fcntl, termios
        query = struct.pack('HHHH', 0, 0, 0, 0)
        response = fcntl.ioctl(1, termios.TIOCGWINSZ, query)
        width = struct.unpack('HHHH', response)[1]
        if width > 0:
            return width
    except (ImportError, OSError):
        pass
    return 80


def _check_name(name, token):
    if not _NAME.match(name):
        raise ValueError('bad variable name in %r' % token)


def _number(text, token):
    try:
        value = float(text)
    except ValueError:
        raise ValueError('%r is not a number in %r' % (text, token))
    if not np.isfinite(value):
        raise ValueError('%r is not finite in %r' % (text, token))
    return value


def parse_evidence(text):
    '''Splits "name=value,..." into (name, float) pairs.

    >>> parse_evidence('Sex=0,Age=20,BMI=22,MNB=20')
    [('Sex', 0.0), ('Age', 20.0), ('BMI', 22.0), ('MNB', 20.0)]
    >>> parse_evidence('')
    []
    >>> parse_evidence('Age=abc')
    Traceback (most recent call last):
    ...
    ValueError: 'abc' is not a number in 'Age=abc'
    '''
    pairs = []
    seen = set()
    for token in [t.strip() for t in text.split(',') if t.strip()]:
        if token.count('=') != 1:
            raise ValueError('expected name=value, got %r' % token)
        name, value = [s.strip() for s in token.split('=')]
        _check_name(name, token)
        if name in seen:
            raise ValueError('%r given twice' % name)
        seen.add(name)
        pairs.append((name, _number(value, token)))
    return pairs


def parse_grid(text):
    '''Splits "name=lo:hi:count,..." into (name, values) axes.

    count evenly spaced values are produced, endpoints included.

    >>> parse_grid('A=0:1:2')
    [('A', [0.0, 1.0])]
    >>> parse_grid('A=0:1:3,B=5:5:1')
    [('A', [0.0, 0.5, 1.0]), ('B', [5.0])]
    '''
    axes = []
    seen = set()
    for token in [t.strip() for t in text.split(',') if t.strip()]:
        if token.count('=') != 1:
            raise ValueError('expected name=lo:hi:count, got %r' % token)
        name, spec = [s.strip() for s in token.split('=')]
        _check_name(name, token)
        if name in seen:
            raise ValueError('%r given twice' % name)
        seen.add(name)
        parts = spec.split(':')
        if len(parts) != 3:
            raise ValueError('expected name=lo:hi:count, got %r' % token)
        lo, hi = _number(parts[0], token), _number(parts[1], token)
        try:
            count = int(parts[2])
        except ValueError:
            raise ValueError('%r is not a point count in %r'
                % (parts[2], token))
        if count < 1:
            raise ValueError('point count must be >= 1 in %r' % token)
        if count == 1 and lo != hi:
            raise ValueError('a single point needs lo == hi in %r' % token)
        axes.append((name, [float(v) for v in np.linspace(lo, hi, count)]))
    if not axes:
        raise ValueError('empty grid')
    return axes


def parse_names(text):
    '''Comma separated names.

    >>> parse_names('AF, ML')
    ['AF', 'ML']
    '''
    names = [t.strip() for t in text.split(',') if t.strip()]
    for name in names:
        _check_name(name, text)
    if not names:
        raise ValueError('no names given')
    return names


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest, sys
    doctest.testmod(sys.modules[__name__])
