from circdfm._circdfm import *  # noqa: F401,F403
