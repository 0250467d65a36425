"""Exact k-coloured partition numbers and the inequalities they satisfy."""

from .core import CountTable, convolve, get_table, partition_count_table, sigma_table
from .majorization import PartitionVec, Relation, majorizes, pk_product, rh_chain, robin_hood

__all__ = [
    "CountTable",
    "PartitionVec",
    "Relation",
    "convolve",
    "get_table",
    "majorizes",
    "partition_count_table",
    "pk_product",
    "rh_chain",
    "robin_hood",
    "sigma_table",
]
