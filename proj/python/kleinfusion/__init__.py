"""Exact fusion-ring calculator for Klein-orbifold affine module categories."""

try:
    from ._core import (  # noqa: F401
        FusionTable,
        canonicalize,
        label_count,
        labels,
        qdim_coeffs,
        qdim_float,
        verify,
    )
except ImportError:  # in-tree runs put _core on PYTHONPATH instead
    from _core import (  # noqa: F401
        FusionTable,
        canonicalize,
        label_count,
        labels,
        qdim_coeffs,
        qdim_float,
        verify,
    )

__all__ = [
    "FusionTable",
    "canonicalize",
    "label_count",
    "labels",
    "qdim_coeffs",
    "qdim_float",
    "verify",
]
