// Copyright 2026 The fequdit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <functional>
#include <limits>

#include "fequdit/types.hpp"

namespace fequdit {

/// Objective returning f(x); fills *gradient when non-null.
using DifferentiableObjective = std::function<double(const RVector& x, RVector* gradient)>;

struct MinimizeOptions {
  int max_iterations = 500;
  double gradient_tolerance = 1e-12;
  /// Stop as soon as f drops below this value.
  double target_value = -std::numeric_limits<double>::infinity();
  double initial_step = 0.1;
  double line_search_tolerance = 0.1;
};

struct MinimizeResult {
  RVector x;
  double value = 0.0;
  int iterations = 0;
};

/// Quasi-Newton (BFGS) local minimization, deterministic for a given x0.
MinimizeResult minimize_bfgs(const DifferentiableObjective& objective, RVector x0,
                             const MinimizeOptions& options = {});

/// Central differences, for checking analytic gradients.
RVector finite_difference_gradient(const DifferentiableObjective& objective, const RVector& x,
                                   double step = 1e-6);

}  // namespace fequdit
