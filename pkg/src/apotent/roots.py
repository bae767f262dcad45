"""Multiprecision zeros of ``P_k``, ``B_k``, ``f_k`` and ``g_k``.

Two unrelated solvers are provided so that each can check the other:
simultaneous Aberth-Ehrlich iteration on the coefficients, and shifted
QR on the tridiagonal leading block ``J_k``. Exact coefficients are
rounded once into the working precision; everything after that is
BigComplex arithmetic.

Near-multiple roots (``k = n`` gives ``(z - a)^n``) are grouped into
clusters using Weierstrass inclusion discs: a connected component made
of ``m`` discs contains exactly ``m`` zeros.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import gmpy2

from .exact import RatPoly
from .mpnum import BigComplex, default_precision, is_exact, to_mpc, to_mpfr, working_precision
from .schwarz import SchwarzSpec, build_schwarz, charpoly_k, scale_coeffs

JITTER_SEED = 20240527


class RootFindingError(RuntimeError):
    """Aberth iteration hit its cap; carries the best iterate."""

    def __init__(self, message, roots=(), residuals=()):
        super().__init__(message)
        self.roots = tuple(roots)
        self.residuals = tuple(residuals)


class QRConvergenceError(RuntimeError):
    """Shifted QR failed to deflate; ``dump`` holds the last iterations."""

    def __init__(self, message, dump=()):
        super().__init__(message)
        self.dump = tuple(dump)


@dataclass(frozen=True)
class Cluster:
    center: BigComplex
    multiplicity: int
    radius: object  # mpfr, radius of the union of inclusion discs


@dataclass(frozen=True)
class RootSet:
    roots: tuple
    residuals: tuple
    solver: str
    precision_bits: int
    n: Optional[int] = None
    k: Optional[int] = None
    a: object = None
    clusters: tuple = ()
    iterations: int = 0

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def degree(self) -> int:
        return len(self.roots)

    def max_residual(self):
        return max(self.residuals) if self.residuals else to_mpfr(0)

    def cluster_summary(self) -> list:
        """Clusters as ``(center, multiplicity)`` in canonical order."""
        return [(c.center, c.multiplicity) for c in self.clusters]


# helpers -----------------------------------------------------------------------


@dataclass(frozen=True)
class ScaledPoly:
    """``P_k(z; a)`` kept as the exact ``a = 1`` polynomial plus ``a``.

    Coefficients are produced on demand at the current precision, so a
    complex ``a`` costs exactly one rounding per coefficient at every rung
    of the precision ladder.
    """

    unit: RatPoly
    a: object  # scalar, or a callable giving ``a`` at the current precision

    @property
    def degree(self) -> int:
        return self.unit.degree

    def rounded(self) -> list:
        a = self.a() if callable(self.a) else self.a
        return list(scale_coeffs(self.unit, self.unit.degree, a))


def _round_coeffs(p) -> list:
    """Ascending BigComplex coefficients at the current precision."""
    if isinstance(p, RatPoly):
        return [to_mpc(c) for c in p.coeffs]
    if isinstance(p, ScaledPoly):
        return p.rounded()
    return [to_mpc(c) for c in p]


def _eps():
    return to_mpfr(2) ** (1 - gmpy2.get_context().precision)


def _horner2(cs, z):
    """``p(z)``, ``p'(z)`` and ``sum |c_j| |z|^j`` in one pass."""
    p = cs[-1]
    dp = to_mpc(0)
    az = abs(z)
    bound = abs(cs[-1])
    for c in reversed(cs[:-1]):
        dp = dp * z + p
        p = p * z + c
        bound = bound * az + abs(c)
    return p, dp, bound


def _evaluate(cs, z):
    p = cs[-1]
    for c in reversed(cs[:-1]):
        p = p * z + c
    return p


def scaled_residual(cs, z):
    """``|p(z)| / (sum |c_i| * max(1, |z|)^deg)``."""
    d = len(cs) - 1
    m = max(to_mpfr(1), abs(z))
    return abs(_evaluate(cs, z)) / (sum(abs(c) for c in cs) * m ** d)


def canonical_key(z, digits: int = 24):
    """Sort key: real part quantized to ``10^-digits``, then imaginary part."""
    q = gmpy2.mpz(gmpy2.rint(to_mpc(z).real * gmpy2.mpz(10) ** digits))
    return (q, to_mpc(z).imag)


def canonical_sort(zs) -> list:
    return sorted(zs, key=canonical_key)


def _inclusion_radii(cs, zs):
    """Weierstrass radii ``d |p(z_i)| / |c_d prod_{j != i} (z_i - z_j)|``,
    inflated by the rounding error of evaluating ``p``."""
    d = len(cs) - 1
    eps = _eps()
    radii = []
    for i, zi in enumerate(zs):
        p, _, bound = _horner2(cs, zi)
        num = abs(p) + 4 * d * eps * bound
        den = abs(cs[-1])
        for j, zj in enumerate(zs):
            if j != i:
                den *= abs(zi - zj)
        radii.append(d * num / den if den else gmpy2.inf())
    return radii


def _refine_center(cs, center, m, radius, steps: int = 60):
    """Newton on ``p^(m-1)``, whose zero at an ``m``-fold root is simple.

    The centroid of a cluster of ``m`` computed roots is only accurate to
    about ``eps^(1/m)``; the derivative's simple zero is well conditioned.
    Falls back to the centroid if Newton leaves the cluster.
    """
    d = len(cs) - 1
    der = list(cs)
    for _ in range(m - 1):
        der = [der[j] * j for j in range(1, len(der))]
    if len(der) < 2:
        return center
    eps = _eps()
    z = center
    for _ in range(steps):
        p, dp, _ = _horner2(der, z)
        if not dp:
            break
        w = p / dp
        z = z - w
        if abs(w) <= 4 * eps * max(abs(z), eps):
            break
    if abs(z - center) > radius or d == 0:
        return center
    return z


def find_clusters(cs, zs) -> tuple:
    """Connected components of overlapping inclusion discs."""
    radii = _inclusion_radii(cs, zs)
    parent = list(range(len(zs)))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if abs(zs[i] - zs[j]) <= radii[i] + radii[j]:
                parent[root(i)] = root(j)
    groups = {}
    for i in range(len(zs)):
        groups.setdefault(root(i), []).append(i)
    clusters = []
    for members in groups.values():
        center = sum((zs[i] for i in members), to_mpc(0)) / len(members)
        rad = max(abs(zs[i] - center) + radii[i] for i in members)
        if len(members) > 1:
            center = _refine_center(cs, center, len(members), rad)
        clusters.append(Cluster(center, len(members), rad))
    clusters.sort(key=lambda c: canonical_key(c.center))
    return tuple(clusters)


def _initial_guesses(cs):
    """Jittered circle around the root centroid.

    Radius from the Fujiwara bound of the polynomial recentred at the
    centroid; the jitter comes from a fixed seed so runs are reproducible.
    """
    d = len(cs) - 1
    lead = cs[-1]
    c = -cs[-2] / (d * lead)
    # Taylor shift to the centroid: coefficients of p(z + c)
    t = list(cs)
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            t[j] = t[j] + c * t[j + 1]
    r = to_mpfr(0)
    for j in range(1, d + 1):
        v = abs(t[d - j] / lead)
        if j == d:
            v = v / 2
        if v:
            r = max(r, v ** (to_mpfr(1) / j))
    r = 2 * r
    if not r:
        r = max(abs(c), to_mpfr(1)) * to_mpfr(2) ** -20
    rng = random.Random(JITTER_SEED + d)
    twopi = 2 * gmpy2.const_pi()
    zs = []
    for j in range(d):
        theta = twopi * (j + to_mpfr(rng.random()) * to_mpfr(0.25) + to_mpfr(0.4)) / d
        rho = r * (1 + to_mpfr(rng.random()) * to_mpfr(0.05))
        zs.append(c + rho * gmpy2.mpc(gmpy2.cos(theta), gmpy2.sin(theta)))
    return zs


def _aberth_stage(cs, zs, max_iters, tol=None):
    """Iterate at the current precision until every root is frozen."""
    d = len(cs) - 1
    eps = _eps()
    stop = 8 * d * eps
    frozen = [False] * d
    for it in range(1, max_iters + 1):
        biggest = to_mpfr(0)
        for i in range(d):
            if frozen[i]:
                continue
            zi = zs[i]
            p, dp, bound = _horner2(cs, zi)
            if abs(p) <= stop * bound:
                frozen[i] = True
                continue
            if not dp:
                dp = eps * bound
            ratio = p / dp
            s = to_mpc(0)
            for j in range(d):
                if j != i:
                    s += 1 / (zi - zs[j])
            w = ratio / (1 - ratio * s)
            zs[i] = zi - w
            aw = abs(w)
            biggest = max(biggest, aw)
            if aw <= eps * abs(zs[i]) or (tol is not None and aw < tol):
                frozen[i] = True
        if all(frozen):
            return zs, it, True
    return zs, max_iters, False


def _precision_ladder(target: int) -> list:
    steps = []
    bits = 64
    while bits < target:
        steps.append(bits)
        bits *= 2
    steps.append(target)
    return steps


def _solve_at(src, deg, target, zs, tol, budget):
    """Aberth up the precision ladder to ``target``, starting from ``zs``."""
    used = 0
    start = 64 if zs is None else target
    for bits in _precision_ladder(target):
        if bits < start:
            continue
        with working_precision(bits):
            cs = _round_coeffs(src)
            if deg == 1:
                zs = [-cs[0] / cs[1]]
                continue
            zs = _initial_guesses(cs) if zs is None else [to_mpc(z) for z in zs]
            zs, its, ok = _aberth_stage(cs, zs, max(budget - used, 1), tol)
            used += its
            if not ok and bits == target:
                res = [scaled_residual(cs, z) for z in zs]
                raise RootFindingError(
                    f"Aberth iteration did not converge in {budget} steps", zs, res)
    return zs, used


def _finish(src, zs, bits):
    with working_precision(bits):
        cs = _round_coeffs(src)
        zs = canonical_sort(to_mpc(z) for z in zs)
        res = tuple(scaled_residual(cs, z) for z in zs)
        clusters = find_clusters(cs, zs)
    return tuple(zs), res, clusters


def _same_clusters(c1, c2) -> bool:
    if [c.multiplicity for c in c1] != [c.multiplicity for c in c2]:
        return False
    return all(abs(x.center - y.center) <= x.radius + y.radius for x, y in zip(c1, c2))


def aberth_roots(p, precision_bits: Optional[int] = None, tol=None,
                 max_iters: int = 2000, n=None, k=None, a=None,
                 certify: bool = False, max_precision: int = 8192) -> RootSet:
    """All zeros of ``p`` by Aberth-Ehrlich iteration.

    ``p`` is a :class:`RatPoly`, a :class:`ScaledPoly` or an ascending
    sequence of coefficients. The iteration climbs a precision ladder
    (64, 128, ... bits) up to ``precision_bits``; exact coefficients are
    re-rounded at each rung. A root stops moving once its correction is
    below one ulp, below ``tol``, or its backward error is at rounding level.

    With ``certify=True`` the precision keeps doubling (up to
    ``max_precision``) until every inclusion disc is isolated, or the
    cluster pattern is unchanged between two consecutive precisions.
    Ill-conditioned polynomials need this; true multiple roots stop after
    one doubling. ``RootSet.precision_bits`` records the precision used.
    """
    target = default_precision() if precision_bits is None else int(precision_bits)
    exact_src = p if isinstance(p, (RatPoly, ScaledPoly)) else None
    if exact_src is not None:
        deg = exact_src.degree
    else:
        p = list(p)
        while len(p) > 1 and not p[-1]:
            p.pop()
        deg = len(p) - 1
    if deg < 1:
        raise ValueError("need a polynomial of degree at least 1")
    src = exact_src if exact_src is not None else p
    zs, total = _solve_at(src, deg, target, None, tol, max_iters)
    zs, res, clusters = _finish(src, zs, target)
    bits = target
    while certify and exact_src is not None and any(c.multiplicity > 1 for c in clusters):
        if 2 * bits > max_precision:
            break
        bits *= 2
        zs2, its = _solve_at(src, deg, bits, list(zs), tol, max_iters)
        total += its
        prev = clusters
        zs, res, clusters = _finish(src, zs2, bits)
        if _same_clusters(prev, clusters):
            break
    return RootSet(zs, res, "aberth", bits, n, k, a, clusters, total)


# shifted QR on J_k ---------------------------------------------------------------


def _wilkinson(a, b, c, d):
    """Eigenvalue of ``[[a, b], [c, d]]`` nearer to ``d``."""
    tr = a + d
    det = a * d - b * c
    disc = gmpy2.sqrt(tr * tr / 4 - det)
    l1, l2 = tr / 2 + disc, tr / 2 - disc
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


def _qr_step(H, lo, hi, shift):
    """One explicit shifted QR step on the active block ``H[lo..hi]``.

    Only the block is updated: the deflated parts do not affect its
    eigenvalues.
    """
    for i in range(lo, hi + 1):
        H[i][i] -= shift
    rots = []
    for i in range(lo, hi):
        x, y = H[i][i], H[i + 1][i]
        ax, ay = abs(x), abs(y)
        if not ay:
            rots.append((to_mpc(1), to_mpc(0)))
            continue
        nrm = gmpy2.sqrt(ax * ax + ay * ay)
        c, s = x / nrm, y / nrm
        cc, sc = c.conjugate(), s.conjugate()
        for j in range(i, hi + 1):
            u, v = H[i][j], H[i + 1][j]
            H[i][j] = cc * u + sc * v
            H[i + 1][j] = -s * u + c * v
        H[i + 1][i] = to_mpc(0)
        rots.append((c, s))
    for idx, i in enumerate(range(lo, hi)):
        c, s = rots[idx]
        cc, sc = c.conjugate(), s.conjugate()
        for r in range(lo, i + 2):
            u, v = H[r][i], H[r][i + 1]
            H[r][i] = u * c + v * s
            H[r][i + 1] = -u * sc + v * cc
    for i in range(lo, hi + 1):
        H[i][i] += shift


def balanced_block(spec: SchwarzSpec, k: int) -> list:
    """``J_k`` after a real diagonal similarity making ``|super| = |sub|``."""
    zero = to_mpc(0)
    H = [[zero] * k for _ in range(k)]
    H[0][0] = to_mpc(-spec.b[0])
    for i in range(k - 1):
        b = to_mpc(spec.b[i + 1])
        root = gmpy2.sqrt(abs(b))
        H[i][i + 1] = to_mpc(root)
        H[i + 1][i] = -b / root
    return H


def qr_eigenvalues(H, max_sweeps_per_root: int = 60) -> list:
    """Eigenvalues of an upper Hessenberg matrix by single-shift complex QR."""
    H = [row[:] for row in H]
    size = len(H)
    eps = _eps()
    out = [None] * size
    hi = size - 1
    dump = []
    its_here = 0
    total_cap = max_sweeps_per_root * max(size, 1)
    total = 0
    while hi >= 0:
        if hi == 0:
            out[0] = H[0][0]
            break
        # find the active window
        lo = hi
        while lo > 0:
            sub = abs(H[lo][lo - 1])
            if sub <= eps * (abs(H[lo][lo]) + abs(H[lo - 1][lo - 1])):
                H[lo][lo - 1] = to_mpc(0)
                break
            lo -= 1
        if lo == hi:
            out[hi] = H[hi][hi]
            hi -= 1
            its_here = 0
            continue
        its_here += 1
        total += 1
        if total > total_cap:
            raise QRConvergenceError(
                f"QR did not converge after {total} sweeps (active block {lo}..{hi})", dump[-20:])
        if its_here % 11 == 0:
            # exceptional shift to break cycles
            shift = H[hi][hi] + abs(H[hi][hi - 1]) * to_mpc(complex(0.75, 0.4375))
        else:
            shift = _wilkinson(H[hi - 1][hi - 1], H[hi - 1][hi], H[hi][hi - 1], H[hi][hi])
        _qr_step(H, lo, hi, shift)
        dump.append((total, lo, hi, [gmpy2.mpfr(abs(H[i][i - 1]), 53) for i in range(lo + 1, hi + 1)]))
        if len(dump) > 40:
            del dump[:20]
    return out


def hessenberg_qr_roots(spec: SchwarzSpec, k: int, precision_bits: Optional[int] = None) -> RootSet:
    """Eigenvalues of the leading ``k x k`` block of the Schwarz matrix."""
    if not 1 <= k <= spec.n:
        raise ValueError("need 1 <= k <= n")
    target = precision_bits or spec.precision_bits or default_precision()
    if spec.exact:
        coeffs = charpoly_k(spec, k)
    else:
        unit = charpoly_k(build_schwarz(spec.n, 1), k)
    with working_precision(target):
        if spec.exact:
            cs = _round_coeffs(coeffs)
        else:
            cs = list(scale_coeffs(unit, k, spec.a))
        H = balanced_block(spec if spec.exact else build_schwarz(spec.n, spec.a, target), k)
        zs = canonical_sort(qr_eigenvalues(H))
        res = tuple(scaled_residual(cs, z) for z in zs)
        clusters = find_clusters(cs, zs)
    return RootSet(tuple(zs), res, "hessenberg_qr", target, spec.n, k, spec.a, clusters)


# convenience -------------------------------------------------------------------


def pk_coefficients(n: int, k: int, a):
    """Exact ``P_k`` for rational ``a``; otherwise a :class:`ScaledPoly`
    that rounds from the exact ``a = 1`` polynomial when asked."""
    if is_exact(a):
        return charpoly_k(build_schwarz(n, a), k)
    return ScaledPoly(charpoly_k(build_schwarz(n, 1), k), a)


def pk_roots(n: int, k: int, a, precision_bits: Optional[int] = None,
             solver: str = "aberth") -> RootSet:
    if solver == "aberth":
        return aberth_roots(pk_coefficients(n, k, a), precision_bits, n=n, k=k, a=a)
    if solver == "hessenberg_qr":
        return hessenberg_qr_roots(build_schwarz(n, a, precision_bits), k, precision_bits)
    raise ValueError(f"unknown solver {solver!r}")


def cluster_distance(r1: RootSet, r2: RootSet):
    """Largest gap between matched cluster centres; ``inf`` if the
    multiplicity patterns differ. Matching is greedy nearest-centre."""
    if sorted(c.multiplicity for c in r1.clusters) != sorted(c.multiplicity for c in r2.clusters):
        return gmpy2.inf()
    left = list(r2.clusters)
    worst = to_mpfr(0)
    for c in r1.clusters:
        best = min(range(len(left)),
                   key=lambda j: (left[j].multiplicity != c.multiplicity, abs(left[j].center - c.center)))
        if left[best].multiplicity != c.multiplicity:
            return gmpy2.inf()
        worst = max(worst, abs(left[best].center - c.center))
        left.pop(best)
    return worst


def residual_bound_ok(rs: RootSet, tol) -> bool:
    """Every residual (already scaled by ``sum |c_i| max(1,|r|)^k``) is at most ``tol``."""
    return all(r <= tol for r in rs.residuals)


@dataclass(frozen=True)
class HalfPlaneVerdict:
    ok: bool
    margin: object  # min Re(z/a)

    def __bool__(self):
        return self.ok


def halfplane_verdict(rs: RootSet, a) -> HalfPlaneVerdict:
    """``Re(z/a) > 0`` for every root."""
    if not len(rs):
        raise ValueError("empty root set")
    with working_precision(rs.precision_bits):
        av = to_mpc(a)
        margin = min((to_mpc(z) / av).real for z in rs.roots)
    return HalfPlaneVerdict(margin > 0, margin)


# interlacing of f_k and g_k on the imaginary axis -----------------------------------


def imaginary_axis_poly(p: RatPoly, parity: int) -> RatPoly:
    """Real polynomial ``F`` with ``p(iy) = i^parity F(y)``.

    ``p`` must contain only powers ``z^j`` with ``j = parity (mod 2)``.
    """
    out = []
    for j, c in enumerate(p.coeffs):
        if c and (j - parity) % 2:
            raise ValueError("polynomial does not have the stated parity")
        e = (j - parity) // 2
        out.append(c * (-1 if e % 2 else 1) if (j - parity) % 2 == 0 else Fraction(0))
    return RatPoly(out)


def sturm_real_root_count(p: RatPoly) -> int:
    """Number of distinct real zeros of ``p`` (exact Sturm sequence)."""
    if p.degree < 1:
        return 0
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        _, r = seq[-2].divmod(seq[-1])
        if r.is_zero():
            break
        seq.append(-r)

    def changes(signs):
        signs = [s for s in signs if s]
        return sum(1 for x, y in zip(signs, signs[1:]) if x != y)

    def sign_inf(q, neg):
        lc = q.leading
        s = 1 if lc > 0 else -1
        return -s if (neg and q.degree % 2) else s

    return changes([sign_inf(q, True) for q in seq]) - changes([sign_inf(q, False) for q in seq])


@dataclass(frozen=True)
class InterlacingReport:
    n: int
    k: int
    f_zeros: tuple  # imaginary parts y, ascending
    g_zeros: tuple
    purely_imaginary: bool
    simple: bool
    interlacing: bool
    sturm_ok: Optional[bool] = None
    max_real_part: object = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return (self.purely_imaginary and self.simple and self.interlacing
                and self.sturm_ok is not False)


def interlacing_verdict(n: int, k: int, precision_bits: Optional[int] = None,
                        sturm: bool = True) -> InterlacingReport:
    """Zeros of ``f_k`` and ``g_k`` (``a = 1``) lie on the imaginary axis,
    are simple, and interlace.

    With ``z = iy``, ``f_k(iy) = i^k F(y)`` and ``g_k(iy) = i^(k-1) G(y)``
    for real ``F``, ``G``; their zeros must be real. ``sturm=True`` adds an
    exact count of distinct real zeros.
    """
    from .orthopoly import fg_families

    if not 1 <= k <= n - 1:
        raise ValueError("need 1 <= k <= n - 1")
    bits = default_precision() if precision_bits is None else int(precision_bits)
    fam = fg_families(n)
    F = imaginary_axis_poly(fam.f[k], k)
    G = imaginary_axis_poly(fam.g[k], k - 1)
    digits = int(bits * 0.30103)
    with working_precision(bits):
        tol_im = to_mpfr(10) ** (-(digits - 10))

        def real_zeros(P):
            if P.degree < 1:
                return [], to_mpfr(0)
            rs = aberth_roots(P, bits)
            worst = max(abs(z.imag) / max(to_mpfr(1), abs(z)) for z in rs.roots)
            return sorted(z.real for z in rs.roots), worst

        fy, wf = real_zeros(F)
        gy, wg = real_zeros(G)
        worst = max(wf, wg)
        pure = worst < tol_im
        sep = tol_im * 100
        simple = all(b - a > sep for a, b in zip(fy, fy[1:])) and \
            all(b - a > sep for a, b in zip(gy, gy[1:]))
        inter = len(fy) == len(gy) + 1 and all(
            fy[i] < gy[i] < fy[i + 1] for i in range(len(gy)))
    sturm_ok = None
    if sturm:
        sturm_ok = sturm_real_root_count(F) == F.degree and \
            sturm_real_root_count(G) == max(G.degree, 0)
    detail = "" if (pure and simple and inter) else f"f: {fy}\ng: {gy}"
    return InterlacingReport(n, k, tuple(fy), tuple(gy), pure, simple, inter,
                             sturm_ok, worst, detail)
