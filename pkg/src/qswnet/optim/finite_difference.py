import numpy as np

CENTRAL = "central"
FORWARD = "forward"


def finite_difference_gradient(func, x0, step=1e-6, scheme=CENTRAL, f0=None):
    """
    Gradient of a scalar function by finite differences.
    :param func: scalar function of a 1-D array
    :param x0: evaluation point
    :param step: full width of the central stencil, or forward offset
    :param scheme: ``central`` (O(step²)) or ``forward`` (O(step))
    :param f0: value at x0, reused by the forward scheme when given
    """
    x0 = np.asarray(x0, dtype=float)
    shifts = np.eye(x0.size)
    if scheme == CENTRAL:
        h2 = step / 2.0
        forward = np.array([func(x0 + h2 * e) for e in shifts])
        backward = np.array([func(x0 - h2 * e) for e in shifts])
        return (forward - backward) / step
    if scheme == FORWARD:
        f0 = func(x0) if f0 is None else f0
        forward = np.array([func(x0 + step * e) for e in shifts])
        return (forward - f0) / step
    raise ValueError("Unknown finite-difference scheme %r" % scheme)
