"""Binary linear SVM trained with sequential minimal optimization.

Records are one-hot encoded; class category 0 maps to +1 and category 1 to -1.
The decision function is ``f(x) = sum_i alpha_i y_i K(sv_i, x) + b``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from ..data import Dataset, Schema
from ..rng import MASK64, SplitMix64

# Hard stop against pathological non-convergence; never reached in practice.
MAX_TOTAL_PASSES = 100_000
SNAP = 1e-12


@dataclass(frozen=True)
class SmoParams:
    C: float = 1.0
    kkt_tol: float = 1e-3
    alpha_eps: float = 1e-8
    max_passes: int = 10
    seed: int = 0

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError("C must be > 0")
        if not (self.kkt_tol > 0 and self.alpha_eps > 0):
            raise ValueError("tolerances must be > 0")
        if self.max_passes < 1:
            raise ValueError("max_passes must be >= 1")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class Encoding:
    """Feature layout: one indicator block per non-class attribute."""

    attributes: tuple[int, ...]
    sizes: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def dim(self) -> int:
        return sum(self.sizes)

    @classmethod
    def for_schema(cls, schema: Schema) -> Encoding:
        attrs = tuple(schema.feature_indices)
        sizes = tuple(len(schema.attributes[a].categories) for a in attrs)
        offsets = tuple(int(x) for x in np.concatenate(([0], np.cumsum(sizes)[:-1])))
        return cls(attrs, sizes, offsets)


@dataclass(frozen=True)
class SvmModel:
    support_vectors: tuple[tuple[float, ...], ...]
    alphas: tuple[float, ...]
    labels: tuple[int, ...]
    bias: float
    encoding: Encoding | None = None
    # Positions of the support vectors in the training set.
    support_indices: tuple[int, ...] = ()

    @cached_property
    def _coef(self) -> np.ndarray:
        return np.asarray(self.alphas, float) * np.asarray(self.labels, float)

    @cached_property
    def _sv(self) -> np.ndarray:
        if not self.alphas:
            return np.zeros((0, self.encoding.dim if self.encoding else 0))
        return np.asarray(self.support_vectors, float).reshape(len(self.alphas), -1)


def one_hot_encode(schema: Schema, record, encoding: Encoding | None = None) -> np.ndarray:
    enc = encoding or Encoding.for_schema(schema)
    x = np.zeros(enc.dim)
    for a, size, off in zip(enc.attributes, enc.sizes, enc.offsets):
        v = record[a]
        if not isinstance(v, (int, np.integer)) or not 0 <= v < size:
            raise ValueError(f"{schema.attributes[a].name}: value {v!r} does not match the schema")
        x[off + v] = 1.0
    return x


def kernel_eval(x, y, kind: str = "linear") -> float:
    if kind.lower() != "linear":
        raise ValueError(f"unsupported kernel {kind!r}")
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.dot(x, y))


def dual_objective(K: np.ndarray, y: np.ndarray, alpha: np.ndarray) -> float:
    v = alpha * y
    return float(alpha.sum() - 0.5 * v @ K @ v)


def smo_train(
    vectors: Sequence[Sequence[float]],
    labels: Sequence[int],
    params: SmoParams | None = None,
    callback: Callable[[int, int, float], None] | None = None,
) -> SvmModel:
    """Train with simplified SMO.

    Every training point bounds the bias from one or both sides. A point
    violates KKT when its bound conflicts with the tightest opposite bound by
    more than ``2 * kkt_tol``; this avoids chasing violations that are only
    an artifact of the running bias. A violator ``i`` is paired first with
    the ``j`` maximising ``|E_i - E_j|``, then with its most violating
    partner, then with every other index from a seeded random offset.
    Full sweeps alternate with sweeps over the non-bound alphas; training
    stops after ``max_passes`` consecutive full sweeps without an alpha
    change above ``alpha_eps``. The bias follows Platt's b1/b2 rule and is
    moved to the middle of the feasible interval at the end only if it
    breaks a KKT case.

    ``callback(i, j, dual_objective)`` is invoked after each accepted step.
    """
    params = params or SmoParams()
    X = np.asarray(vectors, float)
    y = np.asarray(labels, float)
    n = len(y)
    if n == 0:
        raise ValueError("cannot train an SVM on no vectors")
    if X.ndim != 2 or X.shape[0] != n:
        raise ValueError("vectors and labels disagree in length")
    if not set(np.unique(y)) <= {-1.0, 1.0}:
        raise ValueError("labels must be -1 or +1")
    if len(np.unique(y)) < 2:
        raise ValueError("SMO needs both classes present")

    C, tol, eps = params.C, params.kkt_tol, params.alpha_eps
    K = X @ X.T
    alpha = np.zeros(n)
    b = 0.0
    rng = SplitMix64(params.seed)

    def errors() -> np.ndarray:
        # Linear kernel: sum_k a_k y_k K(x_k, x) = x . w, cheaper than K @ (a * y).
        return X @ (X.T @ (alpha * y)) + b - y

    def take_step(i: int, j: int, E: np.ndarray) -> bool:
        nonlocal b
        if i == j:
            return False
        ai, aj, yi, yj = alpha[i], alpha[j], y[i], y[j]
        s = yi * yj
        if yi != yj:
            L, H = max(0.0, aj - ai), min(C, C + aj - ai)
        else:
            L, H = max(0.0, ai + aj - C), min(C, ai + aj)
        if H - L <= 0:
            return False
        kii, kjj, kij = K[i, i], K[j, j], K[i, j]
        eta = kii + kjj - 2.0 * kij
        if eta > 0:
            aj_new = min(max(aj + yj * (E[i] - E[j]) / eta, L), H)
        else:
            # Flat or non-convex direction: move to the better end point.
            def obj_at(a_j):
                trial = alpha.copy()
                trial[j] = a_j
                trial[i] = ai + s * (aj - a_j)
                return dual_objective(K, y, trial)

            here = dual_objective(K, y, alpha)
            lo, hi = obj_at(L), obj_at(H)
            aj_new = aj
            if lo > hi and lo > here + eps:
                aj_new = L
            elif hi >= lo and hi > here + eps:
                aj_new = H
        if L == 0.0 and aj_new < eps:
            aj_new = 0.0
        elif H == C and aj_new > C - eps:
            aj_new = C
        if abs(aj_new - aj) <= eps:
            return False
        ai_new = ai + s * (aj - aj_new)
        # Round-off residue must not leave a point marked as a support vector.
        if ai_new < C * SNAP:
            ai_new = 0.0
        elif ai_new > C * (1.0 - SNAP):
            ai_new = C
        dai, daj = ai_new - ai, aj_new - aj
        b1 = b - E[i] - yi * dai * kii - yj * daj * kij
        b2 = b - E[j] - yi * dai * kij - yj * daj * kjj
        if 0.0 < ai_new < C:
            b = b1
        elif 0.0 < aj_new < C:
            b = b2
        else:
            b = 0.5 * (b1 + b2)
        alpha[i], alpha[j] = ai_new, aj_new
        if callback is not None:
            callback(i, j, dual_objective(K, y, alpha))
        return True

    def bias_bounds(E: np.ndarray):
        # Each point bounds the bias: ``lower`` members need b >= b - E_k,
        # ``upper`` members need b <= b - E_k (equality for free alphas).
        B = b - E
        lower = ((y > 0) & (alpha < C)) | ((y < 0) & (alpha > 0))
        upper = ((y > 0) & (alpha > 0)) | ((y < 0) & (alpha < C))
        lo = np.where(lower, B, -np.inf).max()
        hi = np.where(upper, B, np.inf).min()
        return B, lower, upper, lo, hi

    cache = None

    def examine(i: int) -> bool:
        nonlocal cache
        # Errors are recomputed from scratch, but only after alphas change.
        if cache is None:
            E = errors()
            cache = (E, *bias_bounds(E))
        E, B, lower, upper, lo, hi = cache
        violates = (lower[i] and B[i] - hi > 2 * tol) or (upper[i] and lo - B[i] > 2 * tol)
        if not violates:
            return False
        gap = np.abs(E - E[i])
        gap[i] = -1.0
        first = int(np.argmax(gap))
        if take_step(i, first, E):
            cache = None
            return True
        # The tightest bound on the other side is the most violating partner.
        if lower[i] and B[i] - hi > 2 * tol:
            partner = int(np.flatnonzero(upper)[np.argmin(B[upper])])
        else:
            partner = int(np.flatnonzero(lower)[np.argmax(B[lower])])
        if partner != first and take_step(i, partner, E):
            cache = None
            return True
        start = rng.below(n)
        for t in range(n):
            j = (start + t) % n
            if j not in (i, first, partner) and take_step(i, j, E):
                cache = None
                return True
        return False

    quiet = 0
    total = 0
    while quiet < params.max_passes and total < MAX_TOTAL_PASSES:
        changed = sum(examine(i) for i in range(n))
        quiet = quiet + 1 if changed == 0 else 0
        total += 1
        # Between full sweeps, iterate on the non-bound alphas until they settle.
        while changed and total < MAX_TOTAL_PASSES:
            free = np.flatnonzero((alpha > 0) & (alpha < C))
            changed = sum(examine(int(i)) for i in free)
            total += 1
    if total >= MAX_TOTAL_PASSES:
        warnings.warn("SMO stopped at the pass limit before converging", RuntimeWarning, stacklevel=2)

    # Keep the running bias when it satisfies every KKT case; otherwise
    # move it to the middle of the feasible interval.
    _, _, _, lo, hi = bias_bounds(errors())
    if not lo - tol <= b <= hi + tol:
        if np.isfinite(lo) and np.isfinite(hi):
            b = 0.5 * (lo + hi)
        else:
            b = lo if np.isfinite(lo) else hi

    sv = np.flatnonzero(alpha > 0)
    return SvmModel(
        support_vectors=tuple(tuple(float(v) for v in X[k]) for k in sv),
        alphas=tuple(float(alpha[k]) for k in sv),
        labels=tuple(int(y[k]) for k in sv),
        bias=float(b),
        support_indices=tuple(int(k) for k in sv),
    )


def decision_value(model: SvmModel, x) -> float:
    x = np.asarray(x, float)
    sv = model._sv
    if sv.shape[0] and sv.shape[1] != x.shape[-1]:
        raise ValueError(f"dimension mismatch: model has {sv.shape[1]} features, got {x.shape[-1]}")
    if model.encoding is not None and x.shape[-1] != model.encoding.dim:
        raise ValueError(f"dimension mismatch: model has {model.encoding.dim} features, got {x.shape[-1]}")
    if not sv.shape[0]:
        return model.bias
    return float(model._coef @ (sv @ x) + model.bias)


def kkt_violations(model: SvmModel, vectors, labels, C: float, tol: float) -> list[int]:
    """Training indices whose KKT case fails by more than ``tol``.

    Requires the model returned by ``smo_train`` on the same vectors.
    """
    X = np.asarray(vectors, float)
    y = np.asarray(labels, float)
    alphas = np.zeros(len(y))
    alphas[list(model.support_indices)] = model.alphas
    out = []
    for k, (xk, yk, ak) in enumerate(zip(X, y, alphas)):
        m = yk * decision_value(model, xk)
        if ak == 0 and m < 1 - tol:
            out.append(k)
        elif 0 < ak < C and abs(m - 1) > tol:
            out.append(k)
        elif ak >= C and m > 1 + tol:
            out.append(k)
    return out


def train_svm(dataset: Dataset, params: SmoParams | None = None) -> SvmModel:
    """One-hot encode an all-nominal binary dataset and run SMO.

    A single-class training set yields a constant model (no support vectors,
    bias +1 or -1) since SMO needs both labels.
    """
    params = params or SmoParams()
    schema = dataset.schema
    if not dataset.records:
        raise ValueError("cannot train an SVM on an empty dataset")
    if not schema.all_nominal:
        raise ValueError("SVM training requires an all-nominal dataset")
    if len(schema.class_names) != 2:
        raise ValueError("SVM supports binary class attributes only")
    enc = Encoding.for_schema(schema)
    cls = schema.class_index
    X = np.array([one_hot_encode(schema, r, enc) for r in dataset.records])
    y = np.array([1 if r[cls] == 0 else -1 for r in dataset.records])
    if len(set(y.tolist())) == 1:
        return SvmModel((), (), (), float(y[0]), enc)
    m = smo_train(X, y, params)
    return SvmModel(m.support_vectors, m.alphas, m.labels, m.bias, enc, m.support_indices)


def label_from_decision(value: float) -> int:
    """Class index for a decision value; zero goes to the positive class (0)."""
    return 0 if value >= 0 else 1


def predict_svm(model: SvmModel, schema: Schema, record) -> int:
    x = one_hot_encode(schema, record, model.encoding)
    return label_from_decision(decision_value(model, x))


def svm_to_dict(model: SvmModel) -> dict:
    enc = model.encoding
    return {
        "support_vectors": [list(v) for v in model.support_vectors],
        "alphas": list(model.alphas),
        "labels": list(model.labels),
        "bias": model.bias,
        "encoding": None if enc is None else {
            "attributes": list(enc.attributes),
            "sizes": list(enc.sizes),
            "offsets": list(enc.offsets),
        },
    }


def svm_from_dict(d: dict) -> SvmModel:
    e = d.get("encoding")
    enc = None if e is None else Encoding(tuple(e["attributes"]), tuple(e["sizes"]), tuple(e["offsets"]))
    return SvmModel(
        tuple(tuple(float(v) for v in sv) for sv in d["support_vectors"]),
        tuple(float(a) for a in d["alphas"]),
        tuple(int(l) for l in d["labels"]),
        float(d["bias"]),
        enc,
    )
