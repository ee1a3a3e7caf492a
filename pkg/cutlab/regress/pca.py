from typing import Sequence, Union

import numpy as np
from sklearn.preprocessing import StandardScaler

from cutlab.types.learning import FeatureVector, PcaProjection, TrainingRecord

Sample = Union[TrainingRecord, FeatureVector]


def _feature_matrix(samples: Sequence[Sample]) -> np.ndarray:
    rows = [s.features.as_array() if isinstance(s, TrainingRecord) else s.as_array() for s in samples]
    return np.array(rows)


def pca_from_matrix(X: np.ndarray, n_components: int = 2) -> PcaProjection:
    """Principal components of the standardized columns of ``X``.

    Each component is flipped so its first nonzero loading is positive. All
    explained variance ratios are kept, in non-increasing order.
    """
    if X.shape[0] < 2:
        raise ValueError("PCA needs at least two samples")
    scaler = StandardScaler().fit(X)
    Z = scaler.transform(X)
    eigvals, eigvecs = np.linalg.eigh(np.cov(Z, rowvar=False))
    order = np.argsort(eigvals)[::-1]
    eigvals = np.clip(eigvals[order], 0.0, None)
    eigvecs = eigvecs[:, order]
    for k in range(eigvecs.shape[1]):
        nz = np.flatnonzero(np.abs(eigvecs[:, k]) > 1e-12)
        if nz.size and eigvecs[nz[0], k] < 0:
            eigvecs[:, k] = -eigvecs[:, k]
    total = eigvals.sum()
    ratios = eigvals / total if total > 0 else np.zeros_like(eigvals)
    components = eigvecs[:, :n_components].T
    return PcaProjection(
        components=components,
        points=Z @ components.T,
        explained_variance_ratio=ratios,
        means=scaler.mean_,
        stds=scaler.scale_,
    )


def pca_project(samples: Sequence[Sample]) -> PcaProjection:
    """Project root features onto their first two principal components."""
    return pca_from_matrix(_feature_matrix(samples))


def to_feature_space(projection: PcaProjection, pcs: np.ndarray) -> np.ndarray:
    """Feature vectors for PC-plane points, with the remaining components at their mean (zero)."""
    pcs = np.atleast_2d(pcs)
    return pcs @ projection.components * projection.stds + projection.means
