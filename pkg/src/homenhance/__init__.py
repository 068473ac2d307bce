"""Gray-level image enhancement with a generalized homographic transfer curve."""

from ._kernels import BACKEND
from .errors import (
    BadMagic,
    ConstantImage,
    DegenerateNodes,
    EmptyPartition,
    EnhanceMathError,
    GammaUndefined,
    HeaderParse,
    MaxvalOutOfRange,
    Overflow,
    PgmError,
    SampleOutOfRange,
    Truncated,
)
from .image_io import GrayImage, from_unit, read_pgm, to_unit, write_pgm
from .pipeline import EnhanceReport, apply_lut, enhance, report_parse, report_serialize
from .statistics import (
    Histogram,
    IterationConfig,
    IterationTrace,
    NodeSet,
    PartitionStats,
    extrema,
    global_mean,
    histogram,
    interwoven_means,
    ks_uniform_distance,
    partition_stats,
)
from .transfer import (
    EQUALIZING_TARGETS,
    Lut,
    TargetLevels,
    TransferFunction,
    build_lut,
    eval_transfer,
    fit_transfer,
    gamma_zero,
    two_point_homographic,
)

__version__ = "0.1.0"
