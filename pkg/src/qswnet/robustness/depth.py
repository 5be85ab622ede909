"""P_c of reduced chains 2r-…-2r-2 as intermediate layers are added."""
import logging

import numpy as np
import pandas as pd
from tqdm import tqdm

from qswnet.discrimination.bounds import helstrom_binary, ry_zeroed_helstrom
from qswnet.discrimination.states import StateEnsemble, pure_vs_mixed_pair
from qswnet.errors import ConfigError
from qswnet.network.topology import Topology
from qswnet.optim.optimizer import OptimizerConfig, maximize
from qswnet.utils.const import DEFAULT_GAMMA

logger = logging.getLogger(__name__)

DEPTHS = (1, 2, 4, 8, 16)
TAUS = (0.1, 1.0, 10.0, 100.0)


def depth_model(depth):
    """Model with ``depth`` reduced intermediate layers; depth 1 is 2r-2r-2."""
    depth = int(depth)
    if depth < 1:
        raise ConfigError("Depth must be at least 1, got %r" % depth)
    return "-".join(["2r"] * (depth + 1) + ["2"])


def default_depth_ensemble() -> StateEnsemble:
    return pure_vs_mixed_pair(theta=np.pi / 8, xi=np.pi / 2, radius=0.5)


def run_depth_study(depths=DEPTHS, taus=TAUS, ensemble: StateEnsemble = None, p=0.0,
                    optimizer: OptimizerConfig = None, gamma=DEFAULT_GAMMA, progress=False):
    """
    Optimize every (depth, tau) cell independently.

    :return: DataFrame with columns depth, model, tau, pc, helstrom, ry_zeroed, gap, where gap is
        the distance to the full Helstrom bound
    """
    depths = [int(d) for d in depths]
    taus = [float(t) for t in taus]
    if not depths or not taus:
        raise ConfigError("The depth study needs non-empty depth and tau grids")
    ensemble = default_depth_ensemble() if ensemble is None else ensemble
    if ensemble.size != 2:
        raise ConfigError("The depth study compares against the Helstrom bound and needs two states")
    optimizer = OptimizerConfig() if optimizer is None else optimizer
    rho1, rho2 = ensemble.states
    helstrom = helstrom_binary(rho1, rho2, *ensemble.priors)
    ry_zeroed = ry_zeroed_helstrom(rho1, rho2, *ensemble.priors)

    rows = []
    cells = [(depth, tau) for depth in depths for tau in taus]
    for depth, tau in tqdm(cells, disable=not progress):
        model = depth_model(depth)
        result = maximize(Topology.from_model(model), p, tau, ensemble, optimizer, gamma=gamma)
        logger.debug("depth %i tau=%g: P_c=%.8f", depth, tau, result.best_pc)
        rows.append([depth, model, tau, result.best_pc, helstrom, ry_zeroed, helstrom - result.best_pc])
    return pd.DataFrame(rows, columns=["depth", "model", "tau", "pc", "helstrom", "ry_zeroed", "gap"])
