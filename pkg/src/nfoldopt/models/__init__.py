"""Application encodings: transportation tables, packing, partitioning, and the line-sum universality reduction."""

from .packing import (
    cutting_stock_rolls,
    encode_cutting_stock,
    encode_packing,
    solve_cutting_stock,
    solve_packing,
)
from .partition import encode_partition, partition_weights, solve_partition
from .tables import count_line_sum_tables, line_sum_tables
from .transport import (
    Range,
    Unique,
    bricks_to_table,
    encode_3way_linesum,
    encode_kway_hierarchical,
    entry_uniqueness,
    line_sum_margins,
    solve_transport,
    table_margins,
    table_to_bricks,
)
from .universality import (
    GadgetInstance,
    UniversalityCertificate,
    gadget_entry_unique,
    subset_sum_gadget,
    table_entry_unique,
    universality_reduce,
)
