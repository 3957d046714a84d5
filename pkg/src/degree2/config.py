import os

#: Largest vertex count for which M(G) / SM(G) are enumerated.
ENUMERATION_BOUND = 7

#: Default cap on the number of elements produced by any closure.
ELEMENT_CAP = 50_000


def element_cap(cap=None):
    """Resolve an element cap: explicit argument, then ``DEGREE2_CAP``, then the default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("DEGREE2_CAP")
    if env:
        return int(env)
    return ELEMENT_CAP
