"""Binary cross-entropy loss."""

import math

from firecast.common.constants import BCE_EPSILON
from firecast.common.errors import DomainError


def bce(y: int, p: float, eps: float = BCE_EPSILON) -> tuple[float, float]:
    """Binary cross-entropy of probability ``p`` against label ``y``.

    ``p`` is clamped to ``[eps, 1 - eps]`` before taking logarithms. The
    returned derivative is ``d loss / d p`` evaluated at the clamped value.

    Args:
        y: Label, 0 or 1.
        p: Predicted probability in [0, 1].
        eps: Clamp margin.

    Returns:
        Tuple of (loss, dloss_dp).

    Raises:
        DomainError: If ``p`` is outside [0, 1] or ``y`` is not a binary label.
    """
    if y not in (0, 1):
        raise DomainError("y", y, "{0, 1}")
    if not (0.0 <= p <= 1.0):
        raise DomainError("p", p, "[0, 1]")
    p_hat = min(max(p, eps), 1.0 - eps)
    if y == 1:
        return -math.log(p_hat), -1.0 / p_hat
    return -math.log(1.0 - p_hat), 1.0 / (1.0 - p_hat)
