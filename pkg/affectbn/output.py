#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN OUTPUT
#################################################################################
# File:       output.py
#
#             Levelled message output used by every affectbn module.
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#
''' Levelled, optionally coloured message output.

Sampler chains may run on worker threads and all report through the
same Message, so every write holds a lock and a multi-line message
is never interleaved with another.

>>> import io
>>> out = io.StringIO()
>>> m = Message(out=out, err=out, col=False)
>>> m.info('fitting chain 1')
>>> m.info('hidden detail', 5)
>>> m.warn('R-hat above threshold')
>>> m.set_debug_level(4)
>>> m.debug('Chain 1: done', 4)
>>> m.debug('Chain 1: step scales', 6)
>>> print(out.getvalue(), end='')
 * fitting chain 1
 * R-hat above threshold
DEBUG: Chain 1: done
'''

__version__ = "0.1"


import sys
import threading

from affectbn.constants import codes, INFO_LEVEL, WARN_LEVEL, DEBUG_LEVEL, \
    OFF, FAILURE


class Message(object):
    '''Routes notices, info, warnings and debug lines to `out` and
    errors to `err`.

    Info and warnings show when their level is at most the configured
    one. Debug output is off until set_debug_level() raises it. Every
    error string is also handed to `error_callback` unless
    `block_callback` is set.
    '''

    def __init__(self,
                 out = None,
                 err = None,
                 info_level = INFO_LEVEL,
                 warn_level = WARN_LEVEL,
                 col = True,
                 error_callback = None
                 ):
        out = out if out is not None else sys.stdout
        err = err if err is not None else sys.stderr

        for name, stream in (('out', out), ('err', err)):
            if not hasattr(stream, 'write'):
                raise TypeError("Message: input parameter '%s' must be a "
                    "writable stream" % name)
        self.std_out = out
        self.error_out = err

        self.info_lev = info_level
        self.warn_lev = warn_level
        self.debug_lev = OFF

        self.color_func = None
        self.set_colorize(col)

        self.error_callback = error_callback
        self.block_callback = False

        self._lock = threading.Lock()


    def _color (self, col, text):
        return codes[col] + text + codes['reset']


    def _no_color (self, col, text):
        return text


    def set_colorize(self, state):
        self.color_func = self._color if state else self._no_color


    def set_info_level(self, info_level = INFO_LEVEL):
        self.info_lev = info_level


    def set_warn_level(self, warn_level = WARN_LEVEL):
        self.warn_lev = warn_level


    def set_debug_level(self, debugging_level = DEBUG_LEVEL):
        self.debug_lev = debugging_level


    def _write(self, stream, prefix, text):
        with self._lock:
            # stdout first so the two streams stay in order on a terminal
            self.std_out.flush()
            for line in str(text).split('\n'):
                print(prefix + line, file=stream)
            stream.flush()


    ## Output Functions

    def debug(self, info, level = OFF):
        if level > self.debug_lev:
            return
        self._write(self.std_out, self.color_func('yellow', 'DEBUG: '), info)


    def notice (self, note):
        with self._lock:
            print(note, file=self.std_out)


    def info (self, info, level = INFO_LEVEL):
        if level > self.info_lev:
            return
        self._write(self.std_out, ' %s ' % self.color_func('green', '*'), info)


    def warn (self, warn, level = WARN_LEVEL):
        if level > self.warn_lev:
            return
        self._write(self.std_out, ' %s ' % self.color_func('yellow', '*'),
            warn)


    def error (self, error):
        error = str(error)
        self._write(self.error_out, ' %s ' % self.color_func('red', '*'),
            error)
        if self.error_callback is not None and not self.block_callback:
            self.error_callback(error)


    def die (self, error):
        '''Prints a fatal error and exits with FAILURE.'''
        self.error(self.color_func('red', 'Fatal error: ') + str(error))
        sys.exit(FAILURE)


#===============================================================================
#
# Testing
#
#-------------------------------------------------------------------------------

if __name__ == '__main__':
    import doctest
    doctest.testmod(sys.modules[__name__])
