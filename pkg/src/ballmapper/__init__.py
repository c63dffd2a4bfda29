"""Ball-mapper workbench: cover graphs, colorings and comparisons for
tabular point clouds, exposed as a library, CLI and HTTP service."""

from .analysis import (
    BallCentroid,
    BallSummary,
    ComparisonReport,
    ComparisonRow,
    SweepRow,
    ball_summary,
    centroid,
    compare_groups,
    distance_coloring,
    normalized_distance,
    radius_sweep,
    region_flags,
    subgroup_fraction,
)
from .errors import BallMapperError
from .mapper import (
    Ball,
    BallMapperGraph,
    Coloring,
    EpsilonNet,
    build,
    build_graph,
    build_net,
    color_by,
    cycle_rank,
    graph_from_json,
    graph_to_json,
    layout,
)
from .pointcloud import (
    AxisStats,
    LoadReport,
    PointCloud,
    axis_stats,
    load_cloud,
    quartile_split,
)
from .regression import OlsFit, ols_fit, residual_threshold_fractions
from .stats import TTestResult, ttest_two_sample

__all__ = [
    "AxisStats",
    "Ball",
    "BallCentroid",
    "BallMapperError",
    "BallMapperGraph",
    "BallSummary",
    "Coloring",
    "ComparisonReport",
    "ComparisonRow",
    "EpsilonNet",
    "LoadReport",
    "OlsFit",
    "PointCloud",
    "SweepRow",
    "TTestResult",
    "axis_stats",
    "ball_summary",
    "build",
    "build_graph",
    "build_net",
    "centroid",
    "color_by",
    "compare_groups",
    "cycle_rank",
    "distance_coloring",
    "graph_from_json",
    "graph_to_json",
    "layout",
    "load_cloud",
    "normalized_distance",
    "ols_fit",
    "quartile_split",
    "radius_sweep",
    "region_flags",
    "residual_threshold_fractions",
    "subgroup_fraction",
    "ttest_two_sample",
]
