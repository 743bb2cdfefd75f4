# -*- coding: utf-8 -*-
''' Node families, keyed by the family name used in spec files.'''

from affectbn.families.family import NodeFamily, DomainError
from affectbn.families.bernoulli import BernoulliLogistic
from affectbn.families.gaussian import GaussianLinear

FAMILIES = dict((e.family_key, e()) for e in (
    BernoulliLogistic,
    GaussianLinear,
))
