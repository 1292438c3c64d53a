#!/usr/bin/env python
# Created by "Thieu" at 09:12, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import numpy as np


SUPPORTED_LIST = (list, tuple, np.ndarray)
EPSILON = 1e-10

## Linear programming and polyhedral geometry
TOL_LP = 1e-10
TOL_DEDUP = 1e-9
TOL_PROJ = 1e-9
TOL_GEOM = 1e-6
MAX_PROJECTION_HALFSPACES = 12
MAX_SIMPLEX_ITERATIONS = 5000

## Expressions and directional derivatives
TOL_EVAL = 1e-12
TOL_DD = 1e-6
TOL_SUBDIFF_CHECK = 1e-5
DD_STEP0 = 0.1
DD_STEPS = 25               # alpha_k = 0.1 * 2^-k, k = 0..24
DD_WINDOW = 4

## Feasibility, cones and constraint qualifications
TOL_ACTIVE = 1e-9
TOL_FEAS = 1e-9
TOL_NRCQ = 1e-8
TOL_ANGLE = 1e-3
TOL_CONE_INCLUSION = 1e-6
HREP_CONTACT = 0.75
HREP_CONTACT_RADIUS = 0.1   # fraction of the box diameter
CONTINGENT_ALPHAS = tuple(10.0 ** -k for k in range(1, 7))
CONTINGENT_RADIUS = 10.0
CONTINGENT_REFINE = (1.0, 1.0 / 3, 1.0 / 9)
NEAR_CONVEX_STEPS = tuple(2.0 ** -k for k in range(1, 21))
NEAR_CONVEX_TAIL = 10       # t = 2^-10 .. 2^-20 must all be feasible
N_RANDOM_SAMPLES = 32
N_CONVEXITY_PAIRS = 200
N_PROBE_PAIRS = 200
N_DIRS_2D = 360
N_DIRS_3D = 500

## Certificates
TOL_CERT_EXACT = 1e-8
TOL_CERT_SAMPLED = 1e-3

## Oracles
GRID_POINTS = 41
GRID_ROUNDS = 6
GRID_SHRINK = 4
GRID_TOL = 1e-4
TOL_POLAR_REL = 1e-6
N_POLAR_SAMPLES = 2000
MIN_POLAR_SAMPLES = 500
MIN_FEASIBLE_SAMPLES = 50
N_HREP_CHECK = 1000
LOCAL_SHELL_SCALES = tuple(10.0 ** -k for k in range(1, 6))

PROVENANCE_EXACT = "exact"
PROVENANCE_SAMPLED = "sampled"
