# services/tortile.py
"""Tortile structure at one object X: builtin data, axiom checks and reduction."""
import logging
from typing import Callable, List, Optional, Tuple

from core.algebra.linalg import MatrixR, kron, mat_invert, reduce_matrix
from core.algebra.scalars import RATIONALS, BaseField, TruncatedRing, truncated_exp
from core.errors import BaseError, InternalError, NonUnitMatrixError, OrderError, UnsupportedModelError
from domain.entities.tortile import AxiomCheck, AxiomReport, TortileObjectData

logger = logging.getLogger(__name__)


def identity(t: TortileObjectData, strands: int = 1) -> MatrixR:
    return MatrixR.identity(t.ring, t.dim ** strands)


def identity_of(ring: TruncatedRing, size: int) -> MatrixR:
    return MatrixR.identity(ring, size)


def whisker(t: TortileObjectData, matrix: MatrixR, left: int, right: int) -> MatrixR:
    """Id^(x left) (x) matrix (x) Id^(x right)."""
    result = matrix
    if left:
        result = kron(identity(t, left), result)
    if right:
        result = kron(result, identity(t, right))
    return result


def inverse_braiding(t: TortileObjectData) -> MatrixR:
    """c_plus^-1, computed once per datum.

    Raises:
        NonUnitMatrixError: If c_plus is singular mod eps.
    """
    if "c_plus" not in t._inverses:
        t._inverses["c_plus"] = mat_invert(t.c_plus)
    return t._inverses["c_plus"]


def inverse_twist(t: TortileObjectData) -> MatrixR:
    if "theta" not in t._inverses:
        t._inverses["theta"] = mat_invert(t.theta)
    return t._inverses["theta"]


def kauffman_data(order: int, field: BaseField = RATIONALS) -> TortileObjectData:
    """d = 2 bracket data with A = exp(eps) truncated at ``order``.

    Raises:
        UnsupportedModelError: Over a field of positive characteristic.
    """
    if field.characteristic:
        raise UnsupportedModelError(f"Kauffman data is only built over Q, not {field.header}")
    ring = TruncatedRing(field, order)
    a = truncated_exp(1, order, field)
    a_inv = a ** -1
    zero = ring.zero
    pairing = MatrixR.from_scalars(ring, [[zero, a, -a_inv, zero]])
    copairing = MatrixR.from_scalars(ring, [[zero], [-a], [a_inv], [zero]])
    loop = copairing @ pairing
    c_plus = identity_of(ring, 4).scale(a) + loop.scale(a_inv)
    theta = identity_of(ring, 2).scale(-(a ** 3))
    data = TortileObjectData(dim=2, ring=ring, c_plus=c_plus, theta=theta, ev_r=pairing, coev_r=copairing,
                             ev_l=pairing, coev_l=copairing, name=f"kauffman:{order}")
    data._inverses["c_plus"] = identity_of(ring, 4).scale(a_inv) + loop.scale(a)
    data._inverses["theta"] = identity_of(ring, 2).scale(-(a_inv ** 3))
    logger.debug(f"Built Kauffman data at order {order}")
    return data


def symmetric_data(dim: int, ring: TruncatedRing) -> TortileObjectData:
    """Flip braiding, identity twist and the standard pairing sum_i <ii|."""
    one, zero = ring.one, ring.zero
    size = dim * dim
    flip = [[zero] * size for _ in range(size)]
    for i in range(dim):
        for j in range(dim):
            flip[j * dim + i][i * dim + j] = one
    pairing = [one if k in {i * dim + i for i in range(dim)} else zero for k in range(size)]
    ev = MatrixR.from_scalars(ring, [pairing])
    coev = ev.transpose()
    return TortileObjectData(dim=dim, ring=ring, c_plus=MatrixR.from_scalars(ring, flip, size),
                             theta=identity_of(ring, dim), ev_r=ev, coev_r=coev, ev_l=ev, coev_l=coev,
                             name=f"symmetric:{dim}")


def _first_difference(lhs: MatrixR, rhs: MatrixR) -> Optional[Tuple[int, int]]:
    entries = (lhs - rhs).nonzero_entries()
    return entries[0] if entries else None


def _compare(name: str, lhs: MatrixR, rhs: MatrixR) -> AxiomCheck:
    witness = _first_difference(lhs, rhs)
    if witness is not None:
        logger.debug(f"Axiom {name} fails at entry {witness}")
    return AxiomCheck(name=name, passed=witness is None, witness=witness)


def _curl(t: TortileObjectData, braiding: MatrixR) -> MatrixR:
    """(1 (x) ev_r)(c (x) 1)(1 (x) coev_l) on one strand."""
    return whisker(t, t.ev_r, 1, 0) @ whisker(t, braiding, 0, 1) @ whisker(t, t.coev_l, 1, 0)


def check_ybe(t: TortileObjectData) -> AxiomCheck:
    c1, c2 = whisker(t, t.c_plus, 0, 1), whisker(t, t.c_plus, 1, 0)
    return _compare("ybe", c1 @ c2 @ c1, c2 @ c1 @ c2)


def check_zigzags(t: TortileObjectData) -> List[AxiomCheck]:
    checks = []
    for side, ev, coev in (("right", t.ev_r, t.coev_r), ("left", t.ev_l, t.coev_l)):
        checks.append(_compare(f"zigzag_{side}_x", whisker(t, ev, 0, 1) @ whisker(t, coev, 1, 0), identity(t)))
        checks.append(_compare(f"zigzag_{side}_dual", whisker(t, ev, 1, 0) @ whisker(t, coev, 0, 1), identity(t)))
    return checks


def check_twist_curl(t: TortileObjectData) -> List[AxiomCheck]:
    checks = [_compare("twist_curl", _curl(t, t.c_plus), t.theta)]
    checks.append(_compare("twist_curl_inverse", _curl(t, inverse_braiding(t)), inverse_twist(t)))
    return checks


def check_twist_tensor(t: TortileObjectData) -> AxiomCheck:
    """The curl of the doubled strand X (x) X equals c c (theta (x) theta)."""
    w = [whisker(t, t.c_plus, i, 2 - i) for i in range(3)]
    cabled_braiding = w[1] @ w[0] @ w[2] @ w[1]
    coev_pair = whisker(t, t.coev_l, 1, 1) @ t.coev_l
    ev_pair = t.ev_r @ whisker(t, t.ev_r, 1, 1)
    curl = whisker(t, ev_pair, 2, 0) @ whisker(t, cabled_braiding, 0, 2) @ whisker(t, coev_pair, 2, 0)
    return _compare("twist_tensor", curl, t.c_plus @ t.c_plus @ kron(t.theta, t.theta))


def check_dual_twist(t: TortileObjectData) -> AxiomCheck:
    """theta transported to X* through the right pairing equals its transport through the left pairing."""
    right = whisker(t, t.ev_r, 1, 0) @ whisker(t, t.theta, 1, 1) @ whisker(t, t.coev_r, 0, 1)
    left = whisker(t, t.ev_l, 0, 1) @ whisker(t, t.theta, 1, 1) @ whisker(t, t.coev_l, 1, 0)
    return _compare("dual_twist", right, left)


def _vanishes_mod_eps(m: MatrixR) -> bool:
    return reduce_matrix(m, 0).is_zero()


def infinitesimally_symmetric(t: TortileObjectData) -> bool:
    """c - c^-1 and theta - theta^-1 both vanish mod eps.

    Raises:
        NonUnitMatrixError: If c_plus or theta is not invertible.
    """
    return (_vanishes_mod_eps(t.c_plus - inverse_braiding(t))
            and _vanishes_mod_eps(t.theta - inverse_twist(t)))


def _symmetry_check(t: TortileObjectData) -> AxiomCheck:
    for name, m, inverse in (("c_plus", t.c_plus, inverse_braiding(t)), ("theta", t.theta, inverse_twist(t))):
        entries = reduce_matrix(m - inverse, 0).nonzero_entries()
        if entries:
            return AxiomCheck(name="infinitesimal_symmetry", passed=False, witness=entries[0],
                              detail=f"{name} - {name}^-1 is nonzero mod eps")
    return AxiomCheck(name="infinitesimal_symmetry", passed=True)


def _invertibility_check(t: TortileObjectData) -> AxiomCheck:
    for name, invert in (("c_plus", inverse_braiding), ("theta", inverse_twist)):
        try:
            invert(t)
        except NonUnitMatrixError:
            return AxiomCheck(name="invertible", passed=False, detail=f"{name} is singular mod eps")
    return AxiomCheck(name="invertible", passed=True)


def check_axioms(t: TortileObjectData) -> AxiomReport:
    """Exact check of every structure identity on ``t``; failures are reported, not raised."""
    try:
        checks = [check_ybe(t)]
        checks += check_zigzags(t)
        invertible = _invertibility_check(t)
        checks.append(invertible)
        dependent: List[Tuple[str, Callable]] = [
            ("twist_curl", lambda: check_twist_curl(t)),
            ("infinitesimal_symmetry", lambda: [_symmetry_check(t)]),
        ]
        for name, run in dependent:
            if invertible.passed:
                checks += run()
            else:
                checks.append(AxiomCheck(name=name, passed=False, detail="skipped: structure maps not invertible"))
        checks.append(check_twist_tensor(t))
        checks.append(check_dual_twist(t))
        report = AxiomReport(checks=checks)
        logger.info(f"Axiom check for {t.name}: {len(report.failures)} of {len(checks)} checks failed")
        return report
    except BaseError:
        raise
    except Exception as e:
        logger.error(f"Unexpected error in check_axioms: {str(e)}", exc_info=True)
        raise InternalError(f"Axiom check failed: {str(e)}")


def reduce_data(t: TortileObjectData, k: int) -> TortileObjectData:
    """Entrywise reduction of all six structure matrices mod eps^(k+1).

    Raises:
        OrderError: If k exceeds the datum's order.
    """
    if not 0 <= k <= t.order:
        raise OrderError(f"Cannot reduce order {t.order} data to order {k}")
    reduced = {name: reduce_matrix(m, k) for name, m in t.matrices().items()}
    return TortileObjectData(dim=t.dim, ring=TruncatedRing(t.field, k), name=f"{t.name}/eps^{k + 1}", **reduced)
