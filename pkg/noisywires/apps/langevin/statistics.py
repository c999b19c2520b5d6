"""Batch-means statistics for correlated time series."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from noisywires.apps.core.exceptions import ValidationException


@dataclass(frozen=True)
class BatchMoments:
    mean: np.ndarray
    stderr: np.ndarray
    n_batches: int


def batch_means(rows: np.ndarray) -> BatchMoments:
    """Grand mean and standard error from equal-length batch means (one row per batch)."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    n = rows.shape[0]
    if n < 2:
        raise ValidationException("batch means need at least two batches", code="too_few_batches")
    mean = rows.mean(axis=0)
    stderr = rows.std(axis=0, ddof=1) / np.sqrt(n)
    return BatchMoments(mean=mean, stderr=stderr, n_batches=n)
