from ._abelcover import *  # noqa: F401,F403
from ._abelcover import __doc__  # noqa: F401
