#!/usr/bin/python
# -*- coding: utf-8 -*-

"""affectbn is a library for fitting and querying hybrid Bayesian networks
that relate driver mental states to physiological and behavioural signals.
"""

import sys

try:
    from affectbn.api import AffectAPI
    from affectbn.config import BareConfig
    from affectbn.output import Message
except ImportError:
    sys.stderr.write("!!! affectbn API imports failed.")
    raise

from affectbn.driver import bertha_preset, reference_theta, synth_dataset
from affectbn.model import ModelSpec, NodeSpec, ParameterVector, Dataset, \
    fingerprint
from affectbn.predictive import Evidence, query, sweep
from affectbn.sampler import SamplerConfig, fit


class AffectBN(AffectAPI):
    """A high level session that loads networks, fits them and answers
    queries, reporting errors as they occur."""

    def __init__(self, stdout=sys.stdout, stderr=sys.stderr,
        config=None, read_configfile=True, quiet=False, quietness=4,
        nocolor=False, width=0
        ):
        """Input parameters are optional to override the defaults.
        sets up our AffectAPI with defaults or passed in values
        and returns an instance of it"""
        self.message = Message(out=stdout, err=stderr)
        self.config = BareConfig(
                output=self.message,
                stdout=stdout,
                stderr=stderr,
                config=config,
                read_configfile=read_configfile,
                quiet=quiet,
                quietness=quietness,
                nocolor=nocolor,
                width=width,
            )
        AffectAPI.__init__(self, self.config,
                           report_errors=True,
                           output=self.config['output']
                          )
