#!/usr/bin/python
# -*- coding: utf-8 -*-
#################################################################################
# AFFECTBN VERSION
#################################################################################
# File:       version.py
#
#             Current version number
#
# Copyright:
#             (c) 2026 affectbn developers
#             Distributed under the terms of the GNU General Public License v2
#

__version__ = "$Id: version.py 2026-10-17 $"


VERSION = '1.0.0'

if __name__ == '__main__':
    print(VERSION)
