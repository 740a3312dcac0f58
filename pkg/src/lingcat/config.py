from dataclasses import dataclass


@dataclass
class Limits:
    """Work bounds checked by the enumerating and truncating operations."""

    max_len: int = 16          # enumerate_language word length
    max_order: int = 64        # series expansion order
    max_trunc: int = 12        # truncation degree of modules
    max_work: int = 2_000_000  # hom-set sizes, columns, enumerated words


DEFAULT_LIMITS = Limits()


def limits_or_default(limits):
    return DEFAULT_LIMITS if limits is None else limits
