"""Bench result aggregation and reporting."""

from .aggregator import BenchAggregator
from .charts import generate_scaling_chart

__all__ = ["BenchAggregator", "generate_scaling_chart"]
