# flake8: noqa

__appname__ = "motivCM"

# Semantic Versioning 2.0.0: https://semver.org/
# 1. MAJOR version when you make incompatible API changes;
# 2. MINOR version when you add functionality in a backwards-compatible manner;
# 3. PATCH version when you make backwards-compatible bug fixes.
__version__ = "1.0.0"

from motivCM import utils
from motivCM.ff import make_field
from motivCM.kring import RingElement
from motivCM.kring import MeasureCandidate
from motivCM.kring import counting_measure
from motivCM.falsify import classify
