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


#include "fequdit/optimize.hpp"

#include <memory>
#include <mutex>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

namespace fequdit {
namespace {

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fdfminimizer* m) const { gsl_multimin_fdfminimizer_free(m); }
};

RVector to_eigen(const gsl_vector* v) {
  RVector out(v->size);
  for (std::size_t i = 0; i < v->size; ++i) out(i) = gsl_vector_get(v, i);
  return out;
}

void to_gsl(const RVector& in, gsl_vector* v) {
  for (Eigen::Index i = 0; i < in.size(); ++i) gsl_vector_set(v, i, in(i));
}

double eval_f(const gsl_vector* x, void* params) {
  const auto& objective = *static_cast<const DifferentiableObjective*>(params);
  return objective(to_eigen(x), nullptr);
}

void eval_df(const gsl_vector* x, void* params, gsl_vector* df) {
  const auto& objective = *static_cast<const DifferentiableObjective*>(params);
  RVector grad;
  objective(to_eigen(x), &grad);
  to_gsl(grad, df);
}

void eval_fdf(const gsl_vector* x, void* params, double* f, gsl_vector* df) {
  const auto& objective = *static_cast<const DifferentiableObjective*>(params);
  RVector grad;
  *f = objective(to_eigen(x), &grad);
  to_gsl(grad, df);
}

}  // namespace

MinimizeResult minimize_bfgs(const DifferentiableObjective& objective, RVector x0,
                             const MinimizeOptions& options) {
  static std::once_flag quiet;
  // Line-search stalls are reported through status codes, not aborts.
  std::call_once(quiet, [] { gsl_set_error_handler_off(); });

  MinimizeResult result;
  const auto n = static_cast<std::size_t>(x0.size());
  if (n == 0) {
    result.x = x0;
    result.value = objective(x0, nullptr);
    return result;
  }

  gsl_multimin_function_fdf fn;
  fn.n = n;
  fn.f = &eval_f;
  fn.df = &eval_df;
  fn.fdf = &eval_fdf;
  fn.params = const_cast<DifferentiableObjective*>(&objective);

  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
  to_gsl(x0, x.get());
  std::unique_ptr<gsl_multimin_fdfminimizer, MinimizerDeleter> minimizer(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n));
  gsl_multimin_fdfminimizer_set(minimizer.get(), &fn, x.get(), options.initial_step,
                                options.line_search_tolerance);

  int iter = 0;
  while (iter < options.max_iterations) {
    if (minimizer->f < options.target_value) break;
    ++iter;
    if (gsl_multimin_fdfminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_gradient(minimizer->gradient, options.gradient_tolerance) ==
        GSL_SUCCESS) {
      break;
    }
  }
  result.x = to_eigen(minimizer->x);
  result.value = minimizer->f;
  result.iterations = iter;
  return result;
}

RVector finite_difference_gradient(const DifferentiableObjective& objective, const RVector& x,
                                   double step) {
  RVector grad(x.size());
  RVector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + step;
    const double up = objective(probe, nullptr);
    probe(i) = x(i) - step;
    const double down = objective(probe, nullptr);
    probe(i) = x(i);
    grad(i) = (up - down) / (2.0 * step);
  }
  return grad;
}

}  // namespace fequdit
