"""Counting and uniform random generation of culminating lattice paths
with steps ``+a`` and ``-b``."""
from .core import StepSystem, ValidationError, Word, is_culminating, is_positive, make_system, parse_word
from .counting import count_culminating, count_positive, culminating_counts, positive_counts
from .rng import Rng
from .samplers import SampleRecord, make_sampler

__version__ = "0.1.0"
