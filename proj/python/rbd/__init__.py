"""Greedy reduced-basis matrix compression."""

from ._rbd import (
    Classifier,
    Model,
    RbdError,
    decompose,
    fit,
    gen_grid_matrix,
    gen_labeled_blobs,
    load,
    rbd_error_history,
    svd_error_history,
    truncated_svd,
)

__all__ = [
    "Classifier",
    "Model",
    "RbdError",
    "decompose",
    "fit",
    "gen_grid_matrix",
    "gen_labeled_blobs",
    "load",
    "rbd_error_history",
    "svd_error_history",
    "truncated_svd",
]
