"""Axis ranges and fixed tunings for the reproduced figures.

Bump :data:`VERSION` whenever a value here changes. ``gatecmp figure``
reports it so outputs from different axis sets can be told apart.
"""

import numpy as np

VERSION = 1

# detuning scan at two fixed intermediate detunings
FIG4A_DELTA_R = np.round(np.arange(1.0, 100.0 + 1e-9, 0.25), 10)
FIG4A_INTERMEDIATE = (6.0, 20.0)

# two-dimensional detuning map (long format)
FIG4B_DELTA_R = np.round(np.arange(1.0, 40.0 + 1e-9, 0.25), 10)
FIG4B_INTERMEDIATE = np.round(np.arange(1.0, 20.0 + 1e-9, 0.25), 10)

# resonator coupling, 32 points per decade from 10 to 1e4
FIG5_EPS_KAPPA = 10.0 ** (1 + np.arange(97) / 32)
FIG5_FIXED_DELTA_R = 6.4

# normalized Rabi frequency, 20 points per decade from 5 to 200
RABI_AXIS = 5.0 * 10.0 ** (np.arange(33) / 20)
FIG6_PHASE_FIXED = {"delta_r": 10.0, "Delta_r": 6.4}
FIG6_ZENO_FIXED = {"eps_kappa": 800.0, "Delta_r": 6.4}
FIG7_GAMMA_R = (0.1, 1.8)

# atom numbers: distinct rounded values of 25 log-spaced points in [1, 1000]
FIG8_N_ATOMS = tuple(int(n) for n in np.unique(np.rint(np.logspace(0, 3, 25))))

# switching profiles
FIGA2_RESIDUALS = (1e-5, 1e-4, 0.1)
FIGA2_SAMPLES = 2001
FIGA2_T_RANGE = (-4.0, 4.0)
