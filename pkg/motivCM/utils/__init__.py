# flake8: noqa

from ._io import dumps
from ._io import write_json

from .numbers import prime_power
from .numbers import is_prime_power
from .numbers import divisors
from .numbers import mobius
from .numbers import lcm
from .numbers import lcm_range
from .numbers import integer_log

from .rational import parse_rational
from .rational import format_rational

from .names import parse_name
