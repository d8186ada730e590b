from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    vertex_cap: int = 11
    # above this group order only generators are kept, elements are streamed
    materialize_order: int = 40320
    oracle_cap: int = 8
    enumeration_cap: int = 9
    enumeration_long_cap: int = 10
    census_cap: int = 7
    # table runs above this need an explicit long mode
    table_cap: int = 8


LIMITS = Limits()
