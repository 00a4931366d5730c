#pragma once

#include <functional>
#include <optional>
#include <string>

#include "conediv/extended_real.hpp"

namespace conediv {

/// A divergence-generating convex function f on (0, inf) together with its
/// endpoint limits. The limits are stored, not recomputed: values like
/// lim t*ln(t) = 0 are analytic knowledge supplied at construction.
///
/// fstar_at_zero is the limit at 0 of the *-adjoint f*(t) = t * f(1/t), which
/// equals lim_{t->inf} f(t)/t.
struct Generator {
  std::string label;
  std::function<double(double)> eval;  // defined for t > 0
  ExtReal f_at_zero;
  ExtReal fstar_at_zero;
  bool is_decreasing = false;

  double operator()(double t) const { return eval(t); }
};

/// Builds a custom generator. Both endpoint limits are required; debug builds
/// cross-check them against a numerical extrapolation of eval toward 0.
Generator make_generator(std::string label, std::function<double(double)> eval,
                         ExtReal f_at_zero, ExtReal fstar_at_zero,
                         bool is_decreasing = false);

/// The *-adjoint g(t) = t * f(1/t). Swaps the endpoint limits; an involution.
Generator adjoint(const Generator& f);

/// Sample-checks midpoint convexity on a log grid over [1e-6, 1e6] and the
/// stored endpoint limits. Returns a diagnostic on failure, nullopt otherwise.
std::optional<std::string> validate_generator(const Generator& f);

namespace generators {

Generator kl();                        // t ln t,   adjoint -ln t
Generator kl_reverse();                // -ln t
Generator power(double alpha);         // t^alpha, requires alpha <= 0 or >= 1
Generator lp_asa(double p, int dim);   // t^{p/(n+p)}, p <= 0, p != -n
Generator lpsi_example();              // 1/t, the Conv(0,inf) sample
Generator linear(double a, double b);  // a t + b

/// Parses "kl", "kl_reverse", "power:2", "lp_asa:-1" (dim supplied by caller),
/// "lpsi", "linear:-1,2". Throws std::invalid_argument on unknown syntax.
Generator parse(const std::string& text, int dim);

}  // namespace generators

}  // namespace conediv
