import os

from utils.errors import InputError

# oracle ball settings
# the element cap can be overridden with the RACG_ELEMENT_CAP environment variable

element_cap = 10**7
oracle_workers = 1
default_radius = 4


def get_element_cap() -> int:
    """
    Return the oracle element cap, honouring ``RACG_ELEMENT_CAP`` when set.

    Raises
    ------
    InputError
        If the override is not a positive integer.
    """
    override = os.environ.get("RACG_ELEMENT_CAP")
    if not override:
        return element_cap
    try:
        cap = int(override)
    except ValueError:
        raise InputError(f"RACG_ELEMENT_CAP must be a positive integer, got '{override}'.") from None
    if cap < 1:
        raise InputError(f"RACG_ELEMENT_CAP must be a positive integer, got '{override}'.")
    return cap


def get_oracle_workers() -> int:
    return oracle_workers
