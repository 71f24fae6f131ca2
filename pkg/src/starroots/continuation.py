"""Global k-th roots along sampled paths, and the automorphisms acting on them.

Roots are continued sample by sample: at each point every tracked branch moves
to the nearest of the k*k pointwise roots. A step is ambiguous when the
runner-up candidate is closer than twice the winner; such segments are
bisected (at most ``MAX_BISECT`` levels deep) before giving up.

The automorphism group acts on lifts ``G = u0 + u1 s`` through 2x2 matrices
on ``(u0, u1)``:

* ``xi**a`` scalar, with ``xi = exp(2 pi i / k)``;
* ``A(eta**b)`` with ``A(z) = [[Re z, -Im z], [Im z, Re z]]``;
* ``S = lam A(mu)``, ``lam = mu = exp(i pi / k)``, for even ``k`` only.

``T`` is the reflection ``G(z) -> conj G(conj z)``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .complexified import EPS_STRATUM, StratumTag, as_carray, classify_stratum, stratum_codes
from .errors import (
    AmbiguousTracking,
    AnchorNotInOmega,
    AnchorNotReal,
    MatchingFailure,
    NearReal,
    PathNotSymmetric,
    StratumHit,
)
from .power_map import sigma_k_array, sigma_k_jacobian_det
from .quaternion import quat_kth_roots
from .root_solver import RootBranch, point_star_roots, principal_root, star_roots_array
from .slice_function import StemSampled, stem_values

MAX_BISECT = 12
MATCH_TOL = 1e-7
STEP_FRACTION = 0.25
SEED_TOL = 1e-8
PAIR_TOL = 1e-12


# paths


@dataclass(frozen=True, eq=False)
class DomainPath:
    """Ordered complex samples; ``anchor`` optionally indexes a real sample."""

    points: np.ndarray
    closed: bool = False
    anchor: Optional[int] = None

    def __post_init__(self):
        p = np.array(self.points, dtype=complex).reshape(-1)
        if p.size == 0:
            raise ValueError("a path needs at least one point")
        if self.closed and p[0] != p[-1]:
            raise ValueError("closed paths must repeat the first point at the end")
        if self.anchor is not None:
            if not 0 <= self.anchor < p.size:
                raise ValueError("anchor index out of range")
            if p[self.anchor].imag != 0.0:
                raise AnchorNotReal(f"anchor sample {p[self.anchor]!r} is not real")
        p.setflags(write=False)
        object.__setattr__(self, "points", p)

    def __len__(self):
        return self.points.size

    @classmethod
    def segment(cls, a: complex, b: complex, n: int) -> "DomainPath":
        return cls(np.linspace(complex(a), complex(b), n))

    @classmethod
    def polyline(cls, vertices, n_per_edge: int, closed: bool = False) -> "DomainPath":
        v = [complex(x) for x in vertices]
        pts = [v[0]]
        for a, b in zip(v[:-1], v[1:]):
            pts.extend(np.linspace(a, b, n_per_edge + 1)[1:])
        if closed:
            pts[-1] = pts[0]
        return cls(np.array(pts), closed=closed)

    @classmethod
    def circle(cls, center: complex, radius: float, n: int, phase: float = 0.0) -> "DomainPath":
        """Counter-clockwise loop with ``n`` distinct samples starting at angle ``phase``."""
        ang = phase + 2.0 * np.pi * np.arange(n) / n
        pts = complex(center) + radius * np.exp(1j * ang)
        return cls(np.append(pts, pts[0]), closed=True)

    @classmethod
    def vertical_through(cls, x0: float, half_height: float, n_half: int) -> "DomainPath":
        """Symmetric vertical segment ``x0 + i y``, ``|y| <= half_height``, anchored at ``x0``."""
        y = np.linspace(-half_height, half_height, 2 * n_half + 1)
        pts = float(x0) + 1j * y
        pts[n_half] = float(x0)
        return cls(pts, anchor=n_half)

    @classmethod
    def from_json(cls, data: dict) -> "DomainPath":
        from .complexified import _parse_complex

        if not isinstance(data, dict) or "points" not in data:
            raise ValueError("path JSON must be an object with a points list")
        pts = [_parse_complex(x) for x in data["points"]]
        anchor = data.get("anchor")
        return cls(np.array(pts, dtype=complex), bool(data.get("closed", False)), anchor)

    def to_json(self) -> dict:
        out = {"points": [[z.real, z.imag] for z in self.points], "closed": self.closed}
        if self.anchor is not None:
            out["anchor"] = self.anchor
        return out

    @property
    def max_step(self) -> float:
        if self.points.size < 2:
            return 0.0
        return float(np.abs(np.diff(self.points)).max())

    def reversed(self) -> "DomainPath":
        n = self.points.size
        anchor = None if self.anchor is None else n - 1 - self.anchor
        return DomainPath(self.points[::-1], self.closed, anchor)

    def conjugate(self) -> "DomainPath":
        return DomainPath(self.points.conj(), self.closed, self.anchor)

    def then(self, other: "DomainPath") -> "DomainPath":
        """Concatenate; ``other`` must start where ``self`` ends."""
        if abs(self.points[-1] - other.points[0]) > 0:
            raise ValueError("paths do not join")
        pts = np.concatenate([self.points, other.points[1:]])
        return DomainPath(pts, closed=bool(pts[0] == pts[-1]) and pts.size > 1)

    def conjugate_pairing(self, tol: float = PAIR_TOL) -> np.ndarray:
        """Index ``j`` with ``points[j] == conj(points[i])`` for every ``i``.

        Raises
        ------
        PathNotSymmetric
        """
        pts = self.points
        pair = np.empty(pts.size, dtype=int)
        for i, z in enumerate(pts):
            d = np.abs(pts - z.conjugate())
            j = int(np.argmin(d))
            if d[j] > tol * (1.0 + abs(z)):
                raise PathNotSymmetric(f"no conjugate partner for sample {z!r}")
            pair[i] = j
        return pair


def symmetric_from_upper(upper: DomainPath) -> DomainPath:
    """Upper samples followed by their conjugates, in the same order."""
    if np.any(upper.points.imag <= 0):
        raise ValueError("upper path must stay in the open upper half-plane")
    return DomainPath(np.concatenate([upper.points, upper.points.conj()]))


# global roots


@dataclass(frozen=True, eq=False)
class GlobalRoot:
    """Root values sampled along a path together with the lift direction ``s``.

    ``s`` holds, per sample, the complex imaginary unit of the continuous
    lift of the target stem, so ``branch_values[i] = u0 + u1 s[i]``.
    """

    path: DomainPath
    branch_values: np.ndarray
    label: str
    s: np.ndarray
    t_class: Optional[int] = None
    meta: dict = field(default_factory=dict)

    @property
    def lifts(self) -> np.ndarray:
        """``(N, 2)`` array of ``(u0, u1)``."""
        v = self.branch_values
        u1 = np.sum(v[:, 1:] * self.s[:, 1:], axis=1)
        return np.stack([v[:, 0], u1], axis=1)

    def residuals(self, F, k: int) -> np.ndarray:
        target = stem_values(F, self.path.points)
        return np.abs(sigma_k_array(self.branch_values, k) - target).max(axis=1)

    def with_class(self, k: int) -> "GlobalRoot":
        """Copy with the reflection class filled in; ``None`` off symmetric paths."""
        try:
            c = t_class(self, k)
        except PathNotSymmetric:
            c = None
        return replace(self, t_class=c)


def _continuous_direction(W: np.ndarray, start: int = 0) -> np.ndarray:
    """Unit direction of the vector parts of ``W`` with a continuous square root.

    The square root is principal at ``start`` and continued outwards by
    picking the sign nearest the neighbouring sample.
    """
    ysq = W[:, 1] ** 2 + W[:, 2] ** 2 + W[:, 3] ** 2
    v = principal_root(ysq, 2)
    v = np.atleast_1d(v).copy()
    for i in range(start + 1, v.size):
        if abs(v[i] + v[i - 1]) < abs(v[i] - v[i - 1]):
            v[i] = -v[i]
    for i in range(start - 1, -1, -1):
        if abs(v[i] + v[i + 1]) < abs(v[i] - v[i + 1]):
            v[i] = -v[i]
    s = np.zeros_like(W)
    s[:, 1:] = W[:, 1:] / v[:, None]
    return s


class _Ambiguous(Exception):
    pass


def _match(prev: np.ndarray, cand: np.ndarray) -> np.ndarray:
    """Nearest candidate for each tracked value.

    Raises _Ambiguous on near ties, and when a value moved more than
    ``STEP_FRACTION`` of the gap between its candidate and the nearest other
    candidate: a step that large can hop onto a neighbouring branch.
    """
    d = np.linalg.norm(prev[:, None, :] - cand[None, :, :], axis=-1)
    order = np.argsort(d, axis=1)
    best = order[:, 0]
    rows = np.arange(prev.shape[0])
    d1 = d[rows, best]
    if cand.shape[0] > 1:
        d2 = d[rows, order[:, 1]]
        gaps = np.linalg.norm(cand[:, None, :] - cand[None, :, :], axis=-1)
        np.fill_diagonal(gaps, np.inf)
        sep = gaps.min(axis=1)[best]
    else:
        d2 = sep = np.full(prev.shape[0], np.inf)
    if np.any(d2 < 2.0 * d1) or np.any(d1 > STEP_FRACTION * sep) or np.unique(best).size != best.size:
        raise _Ambiguous
    return cand[best]


class _Tracker:
    """Joint nearest-neighbour continuation of several branches."""

    def __init__(self, F, k: int, tol: float = EPS_STRATUM):
        self.F = F
        self.k = k
        self.tol = tol
        self.refinable = not isinstance(F, StemSampled)

    def candidates(self, z: complex, index) -> np.ndarray:
        w = stem_values(self.F, np.array([z]))
        codes, ridx = stratum_codes(w, self.k, self.tol)
        tag = StratumTag(int(codes[0]))
        if tag in (StratumTag.V_MINUS1, StratumTag.V_INF, StratumTag.V_0):
            st = classify_stratum(w[0], self.k, self.tol)
            raise StratumHit(f"path sample {z!r} maps to stratum {st}", st, index)
        return star_roots_array(w, self.k)[0]

    def advance(self, za, va, zb, index, depth=0):
        cand = self.candidates(zb, index)
        try:
            return _match(va, cand)
        except _Ambiguous:
            if not self.refinable or depth >= MAX_BISECT:
                raise AmbiguousTracking(
                    f"branches too close between samples {za!r} and {zb!r}; refine the path"
                ) from None
        zm = 0.5 * (za + zb)
        vm = self.advance(za, va, zm, index, depth + 1)
        return self.advance(zm, vm, zb, index, depth + 1)

    def run(self, points: np.ndarray, seeds: np.ndarray, offset: int = 0, step: int = 1):
        out = np.empty((points.size, seeds.shape[0], 4), dtype=complex)
        out[0] = seeds
        for i in range(1, points.size):
            out[i] = self.advance(points[i - 1], out[i - 1], points[i], offset + step * i)
        return out


def _snap_seeds(F, z0: complex, seeds: np.ndarray, k: int, tol: float) -> np.ndarray:
    """Check that seeds are roots at ``z0`` and replace them by the solver's values when possible."""
    w = stem_values(F, np.array([z0]))
    res = np.abs(sigma_k_array(seeds, k) - w).max(axis=1)
    scale = 1.0 + np.abs(w).max()
    if np.any(res > SEED_TOL * scale):
        raise ValueError(f"seed does not solve the root equation at {z0!r} (residual {res.max():.3g})")
    st = classify_stratum(w[0], k, tol)
    if not st.in_omega:
        return seeds
    cand = star_roots_array(w, k)[0]
    try:
        return _match(seeds, cand)
    except _Ambiguous:
        return seeds


def _lift_many(F, path: DomainPath, seeds: np.ndarray, k: int, start: int = 0, tol=EPS_STRATUM):
    """Lift seeds given at ``path.points[start]`` along the whole path; ``(N, M, 4)``."""
    pts = path.points
    seeds = _snap_seeds(F, pts[start], np.atleast_2d(as_carray(seeds)), k, tol)
    tr = _Tracker(F, k, tol)
    fwd = tr.run(pts[start:], seeds, offset=start, step=1)
    back = tr.run(pts[start::-1], seeds, offset=start, step=-1)
    return np.concatenate([back[:0:-1], fwd], axis=0)


def _directions(F, path: DomainPath, start: int = 0) -> np.ndarray:
    return _continuous_direction(stem_values(F, path.points), start)


def lift_path(F, path: DomainPath, seed, k: int, start: int = 0, label: str | None = None) -> GlobalRoot:
    """Continue one root along ``path``.

    Parameters
    ----------
    F : StemPoly, StemSampled or callable
        Target stem.
    path : DomainPath
    seed : RootBranch or CQuat-like
        A k-th root of ``F(path.points[start])``.
    k : int
    start : int
        Index of the seed sample; the root is continued in both directions.

    Raises
    ------
    AmbiguousTracking, StratumHit
    """
    if isinstance(seed, RootBranch):
        label = label or seed.label_str
        seed = seed.value
    vals = _lift_many(F, path, np.asarray(seed, dtype=complex).reshape(1, 4), k, start)[:, 0]
    return GlobalRoot(path, vals, label or "seed", _directions(F, path, start))


def monodromy_of_loop(F, loop: DomainPath, k: int) -> dict:
    """Permutation of the k*k root labels at ``loop.points[0]`` induced by going round the loop.

    Returns
    -------
    dict
        ``{label: label}`` with labels ``"m.n"``; ``perm[a] = b`` means the
        branch starting as ``a`` ends as ``b``.
    """
    if not loop.closed:
        raise ValueError("monodromy needs a closed loop")
    w0 = stem_values(F, loop.points[:1])[0]
    branches = point_star_roots(w0, k)
    seeds = np.array([b.value for b in branches], dtype=complex)
    vals = _lift_many(F, loop, seeds, k)
    final = vals[-1]
    labels = [b.label_str for b in branches]
    perm = {}
    for i, v in enumerate(final):
        j = int(np.argmin(np.linalg.norm(seeds - v, axis=1)))
        perm[labels[i]] = labels[j]
    if len(set(perm.values())) != len(perm):
        raise AmbiguousTracking("loop endpoints do not define a permutation")
    return perm


def permutation_cycles(perm: dict) -> list[list[str]]:
    """Non-trivial cycles of a label permutation, each starting at its smallest label."""
    seen, out = set(), []
    for a in sorted(perm, key=_label_key):
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        b = perm[a]
        while b != a:
            cyc.append(b)
            seen.add(b)
            b = perm[b]
        if len(cyc) > 1:
            out.append(cyc)
    return out


def _label_key(label: str):
    try:
        return tuple(int(x) for x in label.split("."))
    except ValueError:
        return (label,)


# automorphisms


@dataclass(frozen=True)
class MonodromyElement:
    """``xi**a A(eta**b) S**delta`` on lifts, followed by ``T`` when ``t_flag``."""

    a: int = 0
    b: int = 0
    delta: int = 0
    t_flag: int = 0

    def matrix(self, k: int) -> np.ndarray:
        if self.delta and k % 2:
            raise ValueError("the S factor exists only for even k")
        xi = np.exp(2j * np.pi * self.a / k)
        M = xi * rotation_matrix(np.exp(2j * np.pi * self.b / k))
        if self.delta:
            M = M @ s_matrix(k)
        return M

    def normalized(self, k: int) -> "MonodromyElement":
        return MonodromyElement(self.a % k, self.b % k, self.delta % 2, self.t_flag % 2)

    def compose(self, other: "MonodromyElement", k: int) -> "MonodromyElement":
        """``self`` after ``other``."""
        a1, b1, d1 = self.a, self.b, self.delta
        if other.t_flag:
            # T M = conj(M) T and conj(xi^a A S^d) = xi^(-a-d) A S^d
            a1 = -a1 - d1
        a, b, d = a1 + other.a, b1 + other.b, d1 + other.delta
        if d >= 2:
            # S^2 = xi A(xi)
            a, b, d = a + 1, b + 1, d - 2
        return MonodromyElement(a, b, d, self.t_flag ^ other.t_flag).normalized(k)


def rotation_matrix(z: complex) -> np.ndarray:
    """``[[Re z, -Im z], [Im z, Re z]]``."""
    z = complex(z)
    return np.array([[z.real, -z.imag], [z.imag, z.real]], dtype=complex)


def s_matrix(k: int) -> np.ndarray:
    if k % 2:
        raise ValueError("the S factor exists only for even k")
    lam = np.exp(1j * np.pi / k)
    return lam * rotation_matrix(lam)


def _act(M: np.ndarray, values: np.ndarray, s: np.ndarray) -> np.ndarray:
    u0 = values[:, 0]
    u1 = np.sum(values[:, 1:] * s[:, 1:], axis=1)
    n0 = M[0, 0] * u0 + M[0, 1] * u1
    n1 = M[1, 0] * u0 + M[1, 1] * u1
    out = np.empty_like(values)
    out[:, 0] = n0
    out[:, 1:] = n1[:, None] * s[:, 1:]
    return out


def apply_aut(g: MonodromyElement, root, k: int, symmetric_path: DomainPath | None = None):
    """Act on a pointwise branch or a global root.

    The matrix part multiplies the lift ``(u0, u1)`` with ``s`` held fixed.
    With ``t_flag`` set, ``T`` follows: for a ``GlobalRoot`` that needs a
    conjugation-symmetric path; for a ``RootBranch`` it conjugates the value
    (meaningful when the target is real).
    """
    M = g.matrix(k)
    if isinstance(root, RootBranch):
        s = np.array(root.lift.s, dtype=complex).reshape(1, 4)
        v = _act(M, np.asarray(root.value, dtype=complex).reshape(1, 4), s)[0]
        if g.t_flag:
            v = v.conj()
        w = sigma_k_array(v, k)
        branches = point_star_roots(w, k, check_outputs=False)
        d = [np.abs(np.asarray(b.value) - v).max() for b in branches]
        return branches[int(np.argmin(d))]
    vals = _act(M, root.branch_values, root.s)
    out = replace(root, branch_values=vals, t_class=None, label=_aut_label(g, root.label))
    if g.t_flag:
        out = t_involution(out, symmetric_path or root.path)
    return out


def _aut_label(g: MonodromyElement, label: str) -> str:
    if (g.a, g.b, g.delta, g.t_flag) == (0, 0, 0, 0):
        return label
    return f"{label}@{g.a},{g.b},{g.delta},{g.t_flag}"


def t_involution(root: GlobalRoot, symmetric_path: DomainPath | None = None) -> GlobalRoot:
    """``TG(z) = conj G(conj z)`` by re-pairing samples.

    Raises
    ------
    PathNotSymmetric
    """
    path = symmetric_path or root.path
    if path.points.size != root.path.points.size or np.any(path.points != root.path.points):
        raise PathNotSymmetric("the root is not sampled on the given path")
    pair = path.conjugate_pairing()
    return replace(
        root,
        branch_values=root.branch_values[pair].conj(),
        s=root.s[pair].conj(),
        t_class=None,
    )


def class_votes(root: GlobalRoot, k: int, tol: float = MATCH_TOL) -> Counter:
    """Per-sample candidates ``c`` with ``TG = xi**c G``."""
    pair = root.path.conjugate_pairing()
    G = root.branch_values
    TG = G[pair].conj()
    scale = np.maximum(np.abs(G).max(axis=1), 1e-300)
    votes = Counter()
    for c in range(k):
        xi = np.exp(2j * np.pi * c / k)
        ok = np.abs(TG - xi * G).max(axis=1) <= tol * scale
        votes[c] = int(ok.sum())
    return votes


def t_class(root: GlobalRoot, k: int, tol: float = MATCH_TOL) -> Optional[int]:
    """The ``c`` with ``conj G(conj z) = xi**c G(z)`` on a majority of samples, else ``None``."""
    votes = class_votes(root, k, tol)
    n = root.path.points.size
    c, count = max(votes.items(), key=lambda kv: (kv[1], -kv[0]))
    return c if count * 2 > n else None


def correction_element(c: int, k: int) -> MonodromyElement:
    """Smallest ``(a, b, delta)`` in lexicographic order sending class ``c`` to class 0.

    The class of the image under ``xi**a A(eta**b) S**delta`` is
    ``c - 2a - delta`` mod ``k``; ``A`` never changes the class.
    """
    deltas = (0, 1) if k % 2 == 0 else (0,)
    for a, b, d in itertools.product(range(k), range(k), deltas):
        if (c - 2 * a - d) % k == 0:
            return MonodromyElement(a, b, d)
    raise ValueError(f"class {c} cannot be corrected for k = {k}")


def stem_correction(root: GlobalRoot, k: int) -> tuple[MonodromyElement, GlobalRoot]:
    """Move a root with known class to a reflection-fixed one.

    Returns the element used and the corrected root (with its class recomputed).
    """
    c = root.t_class if root.t_class is not None else t_class(root, k)
    if c is None:
        raise MatchingFailure(f"root {root.label} has no reflection class")
    g = correction_element(c, k)
    out = apply_aut(g, root, k)
    return g, out.with_class(k)


# the two constructions


def _path_values(F, path):
    return stem_values(F, path.points)


def global_roots_with_real(F, path: DomainPath, k: int, tol: float = EPS_STRATUM) -> list[GlobalRoot]:
    """The k reflection-fixed roots obtained from quaternion roots at a real anchor.

    Raises
    ------
    AnchorNotReal
        Missing anchor, or the stem value there is not real.
    AnchorNotInOmega
        The stem value at the anchor is a real quaternion or the anchor
        seeds sit on the branch locus.
    """
    if path.anchor is None:
        raise AnchorNotReal("path has no real anchor")
    x0 = path.points[path.anchor]
    w0 = _path_values(F, DomainPath(np.array([x0])))[0]
    if np.abs(w0.imag).max() > 1e-12 * (1.0 + np.abs(w0).max()):
        raise AnchorNotReal(f"stem value at the anchor {x0.real!r} is not real")
    try:
        qroots = quat_kth_roots(w0.real, k)
    except NearReal:
        raise AnchorNotInOmega(f"stem value at the anchor {x0.real!r} is a real quaternion") from None
    seeds = np.array(qroots, dtype=complex)
    jac = [abs(sigma_k_jacobian_det(r, k)) for r in seeds]
    scale = (1.0 + np.abs(seeds).max()) ** (2 * k)
    if min(jac) <= tol * scale:
        raise AnchorNotInOmega("anchor seeds sit where the power map is not a local diffeomorphism")
    vals = _lift_many(F, path, seeds, k, start=path.anchor, tol=tol)
    s = _directions(F, path, path.anchor)
    out = []
    for n in range(k):
        r = GlobalRoot(path, vals[:, n], str(n), s, meta={"anchor_value": seeds[n]})
        out.append(r.with_class(k))
    return out


def _match_by_vote(A: np.ndarray, B: np.ndarray, tol: float = MATCH_TOL) -> list[int]:
    """For each branch ``A[:, i]`` the index of ``B[:, j]`` agreeing on most samples.

    Both arrays are ``(N, M, 4)``. A branch needs a strict majority of samples.
    """
    N, M, _ = A.shape
    out = []
    for i in range(M):
        scale = np.maximum(np.abs(A[:, i]).max(axis=1), 1e-300)
        counts = [
            int((np.abs(B[:, j] - A[:, i]).max(axis=1) <= tol * scale).sum()) for j in range(B.shape[1])
        ]
        j = int(np.argmax(counts))
        if counts[j] * 2 <= N:
            raise MatchingFailure(f"conjugated branch {i} matches no branch on a majority of samples")
        out.append(j)
    return out


def global_roots_no_real(F, upper_path: DomainPath, k: int, tol: float = EPS_STRATUM) -> list[GlobalRoot]:
    """The k*k roots on a domain without real points.

    Every root is continued along ``upper_path`` and, independently, along
    its conjugate. Matching ``conj G(conj z)`` against the lower lifts
    defines the pairing ``tau``; root ``mu`` is emitted on the symmetric path
    (upper samples, then their conjugates) with ``G_mu`` above and
    ``G_tau(mu)`` below. ``meta["tau"]`` records the pairing by label.

    Raises
    ------
    MatchingFailure, AmbiguousTracking, StratumHit
    """
    if np.any(upper_path.points.imag <= 0):
        raise ValueError("upper path must stay in the open upper half-plane")
    lower_path = upper_path.conjugate()
    up0 = _path_values(F, DomainPath(upper_path.points[:1]))[0]
    lo0 = _path_values(F, DomainPath(lower_path.points[:1]))[0]
    ub = point_star_roots(up0, k, tol)
    lb = point_star_roots(lo0, k, tol)
    U = _lift_many(F, upper_path, np.array([b.value for b in ub]), k, tol=tol)
    L = _lift_many(F, lower_path, np.array([b.value for b in lb]), k, tol=tol)
    tau = _match_by_vote(U.conj(), L)
    tau_back = _match_by_vote(L.conj(), U)
    sym = symmetric_from_upper(upper_path)
    s = np.concatenate([_directions(F, upper_path), _directions(F, lower_path)])
    labels_u = [b.label_str for b in ub]
    labels_l = [b.label_str for b in lb]
    out = []
    for mu in range(k * k):
        vals = np.concatenate([U[:, mu], L[:, tau[mu]]])
        meta = {
            "tau": labels_l[tau[mu]],
            "tau_inverse_consistent": tau_back[tau[mu]] == mu,
        }
        out.append(GlobalRoot(sym, vals, labels_u[mu], s, meta=meta))
    return [r.with_class(k) for r in out]


def extend_through_axis(F, root: GlobalRoot, sym_path: DomainPath, start: int, k: int) -> GlobalRoot:
    """Continue a root known at ``sym_path.points[start]`` over the whole symmetric path.

    The seed is taken from ``root`` at the sample equal to that point.
    """
    z = sym_path.points[start]
    i = int(np.argmin(np.abs(root.path.points - z)))
    if abs(root.path.points[i] - z) > PAIR_TOL * (1 + abs(z)):
        raise ValueError("the root is not sampled at the requested start point")
    vals = _lift_many(F, sym_path, root.branch_values[i : i + 1], k, start=start)[:, 0]
    anchor = sym_path.anchor if sym_path.anchor is not None else start
    out = GlobalRoot(sym_path, vals, root.label, _directions(F, sym_path, anchor))
    return out.with_class(k)


# group structure


def _dedupe(mats: list[np.ndarray], tol: float = 1e-9) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for M in mats:
        if not any(np.abs(M - N).max() <= tol for N in out):
            out.append(M)
    return out


def _element_order(M: np.ndarray, limit: int, tol: float = 1e-9) -> int:
    P = M.copy()
    for n in range(1, limit + 1):
        if np.abs(P - np.eye(2)).max() <= tol:
            return n
        P = P @ M
    return -1


def _cyclic_product_orders(k: int) -> Counter:
    from math import gcd

    def order(x):
        return k // gcd(x, k)

    return Counter(
        (order(a) * order(b)) // gcd(order(a), order(b)) for a in range(k) for b in range(k)
    )


def dihedral_check(k: int, w=None) -> dict:
    """Scalar rotation and reflection as permutations of the roots of a real target.

    Returns a dict of boolean checks: both maps permute the roots, ``T`` is
    an involution, the rotation has order ``k``, and ``T xi T = xi**-1``.
    """
    if w is None:
        w = np.array([0.3, 1.2, -0.7, 0.5], dtype=complex)
    branches = point_star_roots(w, k)
    V = np.array([b.value for b in branches], dtype=complex)

    def as_perm(f):
        img = f(V)
        perm = []
        for v in img:
            d = np.abs(V - v).max(axis=1)
            j = int(np.argmin(d))
            if d[j] > 1e-9 * (1 + np.abs(v).max()):
                return None
            perm.append(j)
        return tuple(perm) if len(set(perm)) == len(perm) else None

    xi = np.exp(2j * np.pi / k)
    R = as_perm(lambda v: xi * v)
    Rinv = as_perm(lambda v: v / xi)
    T = as_perm(lambda v: v.conj())
    checks = {"rotation_is_permutation": R is not None, "reflection_is_permutation": T is not None}
    if R is None or T is None or Rinv is None:
        checks.update(reflection_involution=False, rotation_order=False, dihedral_relation=False)
        return checks

    def comp(p, q):
        return tuple(p[i] for i in q)

    ident = tuple(range(len(R)))
    P = ident
    order = None
    for n in range(1, k + 1):
        P = comp(R, P)
        if P == ident:
            order = n
            break
    checks["reflection_involution"] = comp(T, T) == ident
    checks["rotation_order"] = order == k
    checks["dihedral_relation"] = comp(T, comp(R, T)) == Rinv
    return checks


def verify_group_table(k: int) -> dict:
    """Exhaustive checks on the automorphism group acting on lifts.

    Returns
    -------
    dict
        ``order``, ``kernel_size``, ``checks`` (name -> bool) and ``passed``.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if k == 1:
        return {"k": 1, "order": 1, "kernel_size": 1, "checks": {"trivial": True}, "passed": True}
    deltas = (0, 1) if k % 2 == 0 else (0,)
    elems = [MonodromyElement(a, b, d) for a in range(k) for b in range(k) for d in deltas]
    mats = [g.matrix(k) for g in elems]
    group = _dedupe(mats)
    eye = np.eye(2)
    kernel = [g for g, M in zip(elems, mats) if g.delta == 0 and np.abs(M - eye).max() <= 1e-9]
    checks = {}
    checks["order"] = len(group) == k * k
    checks["kernel_size"] = len(kernel) == (1 if k % 2 else 2)
    if k % 2 == 0:
        checks["kernel_is_minus_pair"] = {(g.a, g.b) for g in kernel} == {(0, 0), (k // 2, k // 2)}
        S = s_matrix(k)
        xi = np.exp(2j * np.pi / k)
        checks["S_squared"] = np.abs(S @ S - xi * rotation_matrix(xi)).max() <= 1e-12
        checks["S_power_k_identity"] = np.abs(np.linalg.matrix_power(S, k) - eye).max() <= 1e-9
    checks["commutative"] = all(np.abs(A @ B - B @ A).max() <= 1e-12 for A in group for B in group)
    checks["closed"] = all(
        any(np.abs(A @ B - C).max() <= 1e-9 for C in group) for A in group for B in group
    )
    orders = Counter(_element_order(M, k * k) for M in group)
    checks["isomorphic_to_Zk_x_Zk"] = orders == _cyclic_product_orders(k)
    compose_ok = True
    for g, h in itertools.product(elems, repeat=2):
        if np.abs(g.compose(h, k).matrix(k) - g.matrix(k) @ h.matrix(k)).max() > 1e-9:
            compose_ok = False
            break
    checks["composition_matches_matrices"] = compose_ok
    dihedral = dihedral_check(k)
    checks.update({f"dihedral_{name}": ok for name, ok in dihedral.items()})
    return {
        "k": k,
        "order": len(group),
        "kernel_size": len(kernel),
        "checks": {name: bool(v) for name, v in checks.items()},
        "passed": all(bool(v) for v in checks.values()),
    }


def scalar_orbits(values: np.ndarray, k: int, tol: float = 1e-9) -> list[list[int]]:
    """Partition branch values into orbits of multiplication by k-th roots of unity."""
    V = np.asarray(values, dtype=complex)
    xi = np.exp(2j * np.pi / k)
    left = set(range(V.shape[0]))
    orbits = []
    while left:
        i = min(left)
        orb = []
        for a in range(k):
            v = xi ** a * V[i]
            d = np.abs(V - v).max(axis=1)
            j = int(np.argmin(d))
            if d[j] <= tol * (1 + np.abs(v).max()) and j not in orb:
                orb.append(j)
        left -= set(orb)
        orbits.append(sorted(orb))
    return orbits
