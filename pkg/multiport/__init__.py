__version__ = '0.1.0'

from .fock import InputSpec, NumberSuperposition, CatState, Hybrid
from .classifier import Classifier, classify
from .serialize import parse_input_spec
