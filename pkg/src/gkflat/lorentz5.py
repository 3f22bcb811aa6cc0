"""Linear algebra in the Minkowski space R^5_1.

Vectors are plain numpy arrays of shape ``(5,)`` (or ``(..., 5)``); index 0 is
the timelike coordinate and the metric has signature (-, +, +, +, +).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpan

TOL_ALG = 1e-9

ETA = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])

SPACELIKE = "spacelike"
TIMELIKE = "timelike"
NULL = "null"


def minkowski_inner(a, b):
    """Return ``-a0*b0 + a1*b1 + ... + a4*b4`` (broadcast over leading axes)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.sum(a[..., 1:] * b[..., 1:], axis=-1) - a[..., 0] * b[..., 0]


def minkowski_gram(vs):
    """Gram matrix ``<v_i, v_j>`` of the rows of ``vs``."""
    vs = np.asarray(vs, dtype=float)
    return vs @ ETA @ vs.T


def causal_character(a, tol=TOL_ALG):
    q = float(minkowski_inner(a, a))
    if q > tol:
        return SPACELIKE
    if q < -tol:
        return TIMELIKE
    return NULL


def quadric_tol(x, tol=TOL_ALG):
    # membership tolerances scale with the Euclidean size of the point
    return tol * (1.0 + float(np.dot(x, x)))


def on_hyperbolic_space(x, tol=TOL_ALG):
    x = np.asarray(x, dtype=float)
    return abs(minkowski_inner(x, x) + 1.0) <= quadric_tol(x, tol) and x[0] > 0


def on_de_sitter(x, tol=TOL_ALG):
    x = np.asarray(x, dtype=float)
    return abs(minkowski_inner(x, x) - 1.0) <= quadric_tol(x, tol)


@dataclass(frozen=True)
class LFrame:
    """Orthonormal family in R^5_1: ``vectors[i]`` has squared norm ``tags[i]``."""

    vectors: np.ndarray
    tags: tuple

    def __len__(self):
        return len(self.tags)

    def __getitem__(self, i):
        return self.vectors[i]

    def gram(self):
        return minkowski_gram(self.vectors)

    def gram_defect(self):
        """Largest entry of ``|Gram - diag(tags)|``."""
        return float(np.max(np.abs(self.gram() - np.diag(self.tags))))

    def project_out(self, v):
        """Component of ``v`` Minkowski-orthogonal to the frame."""
        v = np.array(v, dtype=float)
        for f, s in zip(self.vectors, self.tags):
            v = v - s * minkowski_inner(v, f) * f
        return v


def orthonormalize_indefinite(vs, tol=TOL_ALG):
    """Pivoted Gram-Schmidt for the Minkowski product.

    At every step the remaining candidate with the largest ``|<v, v>|`` after
    projection, measured relative to the candidate's original Euclidean size,
    is normalized next; this keeps away from the null cone and is independent
    of how the inputs are scaled. Ties keep the input order.

    Raises
    ------
    DegenerateSpan
        If every remaining candidate is (numerically) null after projection.
    """
    remaining = [np.array(v, dtype=float) for v in vs]
    sizes = [max(float(np.dot(v, v)), np.finfo(float).tiny) for v in remaining]
    frame, tags = [], []
    while remaining:
        norms = [minkowski_inner(v, v) for v in remaining]
        rel = [abs(q) / n for q, n in zip(norms, sizes)]
        k = int(np.argmax(rel))
        q = norms[k]
        if rel[k] <= tol:
            raise DegenerateSpan(
                f"candidate {k} has relative |<v,v>| = {rel[k]:.3e} <= {tol:.1e} after projection")
        v = remaining.pop(k)
        sizes.pop(k)
        f = v / np.sqrt(abs(q))
        s = 1 if q > 0 else -1
        # second projection pass against accumulated rounding
        for g, t in zip(frame, tags):
            f = f - t * minkowski_inner(f, g) * g
        f = f / np.sqrt(abs(minkowski_inner(f, f)))
        frame.append(f)
        tags.append(s)
        remaining = [w - s * minkowski_inner(w, f) * f for w in remaining]
    return LFrame(np.array(frame).reshape(len(frame), 5), tuple(tags))


def normal_complement(span, tol=TOL_ALG):
    """Orthonormal basis (list of vectors) of the Minkowski complement of ``span``."""
    base = orthonormalize_indefinite(span, tol)
    k = len(base)
    candidates = [base.project_out(e) for e in np.eye(5)]
    frame, tags = [], []
    for _ in range(5 - k):
        norms = [minkowski_inner(v, v) for v in candidates]
        j = int(np.argmax(np.abs(norms)))
        q = norms[j]
        if abs(q) <= tol:
            raise DegenerateSpan("complement is degenerate")
        f = candidates.pop(j) / np.sqrt(abs(q))
        s = 1 if q > 0 else -1
        f = base.project_out(f)
        for g, t in zip(frame, tags):
            f = f - t * minkowski_inner(f, g) * g
        f = f / np.sqrt(abs(minkowski_inner(f, f)))
        frame.append(f)
        tags.append(s)
        candidates = [w - s * minkowski_inner(w, f) * f for w in candidates]
    return [f for f in frame]


def normal_complement_frame(span, tol=TOL_ALG):
    """Like :func:`normal_complement` but returns an :class:`LFrame` with tags."""
    vs = normal_complement(span, tol)
    tags = tuple(1 if minkowski_inner(v, v) > 0 else -1 for v in vs)
    return LFrame(np.array(vs).reshape(len(vs), 5), tags)


def normalize(v, tol=TOL_ALG):
    """Scale ``v`` to Minkowski norm +-1, or to Euclidean norm 1 if null."""
    v = np.asarray(v, dtype=float)
    q = minkowski_inner(v, v)
    if abs(q) <= tol * float(np.dot(v, v)):
        return v / np.linalg.norm(v)
    return v / np.sqrt(abs(q))


def det5(vectors):
    """Determinant of the 5x5 matrix whose columns are ``vectors``."""
    return float(np.linalg.det(np.column_stack(vectors)))
