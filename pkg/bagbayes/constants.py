"""constants.py

Defaults and numerical tolerances shared across the bagbayes package

LICENSE STATEMENT

Copyright 2026 RadiaSoft LLC

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""

# Bootstrap defaults
DEFAULT_B = 50
ENUMERATION_CAP = 10**5

# Cholesky pivots below this fraction of the largest pivot are rank deficient
PIVOT_TOL = 1e-12

# Tolerances on mixture weights and covariance symmetry
WEIGHT_TOL = 1e-12
SYMMETRY_TOL = 1e-10

# Bisection tolerance for mixture quantiles
QUANTILE_XTOL = 1e-10

# Random-walk Metropolis target acceptance rate
TARGET_ACCEPTANCE = 0.234

# Overlap experiment defaults
DEFAULT_LEVELS = (0.8, 0.9, 0.95)
DEFAULT_TEST_POINTS = 100
DESK_SCALE = {"r": 20, "b": 20}
FULL_SCALE = {"r": 100, "b": 50}
MLPD_CONFIDENCE = 0.99

# Regressor distribution defaults
DEFAULT_H = 10
FIXED_DESIGN_GRID = (-2.0, 2.0)

# Substream tags: second element of a SeedPath, keeps draws of different
# purposes within one replicate independent
STREAM_DATA = 1
STREAM_BOOTSTRAP = 2
STREAM_TEST_POINTS = 3
STREAM_TEST_OUTCOMES = 4
STREAM_INIT = 5
STREAM_CHAIN = 6
STREAM_FIXED_DESIGN = 7
STREAM_PRIOR = 8
