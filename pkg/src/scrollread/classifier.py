"""Linear SVM with stratified k-fold cross-validation.

The classifier minimizes L2-regularized hinge loss by dual coordinate
descent (the standard solver for linear SVMs), with a fixed iteration cap,
tolerance 1e-6 and a seeded coordinate order, so training is fully
deterministic given (data, C, seed). Features are standardized per column
inside each training fold; held-out rows are transformed with the training
fold's statistics only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .aggregation import FeatureRow, build_matrix
from .errors import FeatureSelectionError, SingleClassError
from .seeds import child_rng

logger = logging.getLogger(__name__)

TOL = 1e-6
MAX_EPOCHS = 2000


@dataclass(frozen=True)
class Standardization:
    mean: np.ndarray
    std: np.ndarray
    kept: np.ndarray  # boolean mask of retained (non-constant) columns

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (X[:, self.kept] - self.mean) / self.std


def standardize(X: np.ndarray) -> tuple[np.ndarray, Standardization]:
    """Zero-mean unit-variance columns; constant columns dropped with a warning."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("standardize needs a 2-D matrix with at least 2 rows")
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    kept = std > 0.0
    if not kept.any():
        raise FeatureSelectionError("every column is constant; nothing to standardize")
    if not kept.all():
        logger.warning("dropping %d zero-variance columns", int((~kept).sum()))
    params = Standardization(mean=mean[kept], std=std[kept], kept=kept)
    return params.transform(X), params


@dataclass(frozen=True)
class LinearModel:
    """Trained linear SVM: weights over standardized retained columns."""

    weights: np.ndarray
    bias: float
    standardization: Standardization
    classes: tuple[str, str]  # (negative, positive)

    def decision(self, X: np.ndarray) -> np.ndarray:
        return self.standardization.transform(np.asarray(X, dtype=np.float64)) @ self.weights + self.bias

    def predict(self, X: np.ndarray) -> np.ndarray:
        scores = self.decision(X)
        return np.where(scores >= 0.0, self.classes[1], self.classes[0])


def _dual_coordinate_descent(
    Xs: np.ndarray, y_signed: np.ndarray, C: float, rng: np.random.Generator
) -> np.ndarray:
    """L1-loss dual coordinate descent; returns the augmented weight vector."""
    n, d = Xs.shape
    Xa = np.concatenate([Xs, np.ones((n, 1))], axis=1)
    q_diag = np.einsum("ij,ij->i", Xa, Xa)
    alpha = np.zeros(n)
    w = np.zeros(d + 1)
    for _ in range(MAX_EPOCHS):
        worst = 0.0
        for i in rng.permutation(n):
            g = y_signed[i] * (Xa[i] @ w) - 1.0
            if alpha[i] <= 0.0:
                pg = min(g, 0.0)
            elif alpha[i] >= C:
                pg = max(g, 0.0)
            else:
                pg = g
            if pg != 0.0:
                worst = max(worst, abs(pg))
                new_alpha = min(max(alpha[i] - g / q_diag[i], 0.0), C)
                w += (new_alpha - alpha[i]) * y_signed[i] * Xa[i]
                alpha[i] = new_alpha
        if worst < TOL:
            break
    return w


def train_svm(X: np.ndarray, y: np.ndarray, C: float = 1.0, seed: int = 0) -> LinearModel:
    """Train on raw features and labels; standardization is fit internally."""
    if C <= 0:
        raise ValueError(f"C must be positive, got {C}")
    y = np.asarray(y)
    classes = tuple(sorted(set(y.tolist())))
    if len(classes) != 2:
        raise SingleClassError(
            f"need exactly 2 classes, got {len(classes)}: {classes}"
        )
    Xs, params = standardize(X)
    y_signed = np.where(y == classes[1], 1.0, -1.0)
    w = _dual_coordinate_descent(Xs, y_signed, C, child_rng(seed, "svm"))
    return LinearModel(
        weights=w[:-1], bias=float(w[-1]), standardization=params, classes=classes
    )


def stratified_folds(y: np.ndarray, k: int, seed: int) -> np.ndarray:
    """Fold index per sample; per-fold class counts proportional within 1."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    y = np.asarray(y)
    rng = child_rng(seed, "folds")
    assignment = np.full(len(y), -1, dtype=np.int64)
    for cls in sorted(set(y.tolist())):
        idx = np.flatnonzero(y == cls)
        if len(idx) < k:
            raise SingleClassError(
                f"class '{cls}' has {len(idx)} members, fewer than k={k}"
            )
        idx = rng.permutation(idx)
        start = int(rng.integers(k))
        assignment[idx] = (np.arange(len(idx)) + start) % k
    return assignment


def _weighted_prf(y_true: np.ndarray, y_pred: np.ndarray, classes: tuple[str, str]) -> tuple[float, float, float]:
    """Support-weighted precision, recall, f1 over the two classes."""
    precision = recall = f1 = 0.0
    total = len(y_true)
    for cls in classes:
        tp = int(np.sum((y_pred == cls) & (y_true == cls)))
        fp = int(np.sum((y_pred == cls) & (y_true != cls)))
        fn = int(np.sum((y_pred != cls) & (y_true == cls)))
        support = tp + fn
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / support if support else 0.0
        f = 2 * p * r / (p + r) if p + r else 0.0
        weight = support / total
        precision += weight * p
        recall += weight * r
        f1 += weight * f
    return precision, recall, f1


def _macro_prf(y_true: np.ndarray, y_pred: np.ndarray, classes: tuple[str, str]) -> tuple[float, float, float]:
    ps, rs, fs = [], [], []
    for cls in classes:
        tp = int(np.sum((y_pred == cls) & (y_true == cls)))
        fp = int(np.sum((y_pred == cls) & (y_true != cls)))
        fn = int(np.sum((y_pred != cls) & (y_true == cls)))
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        ps.append(p)
        rs.append(r)
        fs.append(2 * p * r / (p + r) if p + r else 0.0)
    return float(np.mean(ps)), float(np.mean(rs)), float(np.mean(fs))


@dataclass(frozen=True)
class FoldMetrics:
    fold: int
    n_test: int
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class CVReport:
    k: int
    seed: int
    C: float
    feature_selection: str
    columns: tuple[str, ...]
    classes: tuple[str, str]
    n_rows: int
    per_fold: tuple[FoldMetrics, ...]
    precision: float
    recall: float
    f1: float
    average: str = "weighted"


def cross_validate(
    X: np.ndarray,
    y: np.ndarray,
    k: int = 10,
    C: float = 1.0,
    seed: int = 0,
    average: str = "weighted",
) -> tuple[np.ndarray, np.ndarray, list[FoldMetrics]]:
    """Held-out predictions for every row plus per-fold metrics."""
    y = np.asarray(y)
    classes = tuple(sorted(set(y.tolist())))
    folds = stratified_folds(y, k, seed)
    predictions = np.empty(len(y), dtype=object)
    metric_fn = _weighted_prf if average == "weighted" else _macro_prf
    per_fold: list[FoldMetrics] = []
    for fold in range(k):
        test = folds == fold
        model = train_svm(X[~test], y[~test], C=C, seed=seed + fold)
        pred = model.predict(X[test])
        predictions[test] = pred
        p, r, f = metric_fn(y[test], pred, classes)
        per_fold.append(FoldMetrics(fold=fold, n_test=int(test.sum()), precision=p, recall=r, f1=f))
    return predictions.astype(str), folds, per_fold


def evaluate(
    rows: list[FeatureRow],
    feature_selection: str,
    k: int = 10,
    C: float = 1.0,
    seed: int = 0,
    average: str = "weighted",
) -> CVReport:
    """Stratified k-fold CV on one feature selection; pooled metrics are
    computed over the concatenated held-out predictions."""
    X, y, columns = build_matrix(rows, feature_selection)
    predictions, _, per_fold = cross_validate(X, y, k=k, C=C, seed=seed, average=average)
    classes = tuple(sorted(set(y.tolist())))
    metric_fn = _weighted_prf if average == "weighted" else _macro_prf
    precision, recall, f1 = metric_fn(y, predictions, classes)
    return CVReport(
        k=k,
        seed=seed,
        C=C,
        feature_selection=feature_selection,
        columns=tuple(columns),
        classes=classes,
        n_rows=len(rows),
        per_fold=tuple(per_fold),
        precision=precision,
        recall=recall,
        f1=f1,
        average=average,
    )
