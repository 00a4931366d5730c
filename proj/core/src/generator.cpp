#include "conediv/generator.hpp"

#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace conediv {

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < count; ++i) {
    g[i] = std::exp(la + (lb - la) * i / double(count - 1));
  }
  return g;
}

bool sampled_decreasing(const std::function<double(double)>& f) {
  const auto grid = log_grid(1e-6, 1e6, 49);
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = f(grid[i]), b = f(grid[i + 1]);
    if (b > a + 1e-12 * (1.0 + std::fabs(a))) return false;
  }
  return true;
}

struct ZeroLimitProbe {
  bool diverges = false;
  double estimate = 0.0;
};

// Samples g at t = 1e-4 .. 1e-12 and classifies the limit t -> 0+.
// Convergent sequences have shrinking successive differences; a limit of +inf
// shows monotone growth with non-vanishing differences (e.g. -ln t).
ZeroLimitProbe probe_limit_at_zero(const std::function<double(double)>& g) {
  std::vector<double> v;
  for (int k = 4; k <= 12; ++k) v.push_back(g(std::pow(10.0, -k)));
  const double first_diff = std::fabs(v[1] - v[0]);
  const double last_diff = std::fabs(v.back() - v[v.size() - 2]);
  const bool growing = v.back() > v.front() + 1.0;
  const bool non_cauchy = last_diff > 0.25 * first_diff + 1e-12;
  if (growing && non_cauchy) return {true, 0.0};
  return {false, v.back()};
}

std::optional<std::string> check_zero_limit(
    const std::function<double(double)>& g, ExtReal stored, const char* name) {
  const auto probe = probe_limit_at_zero(g);
  if (stored.is_infinite()) {
    if (!probe.diverges) {
      std::ostringstream os;
      os << name << " stored as +inf but samples converge near "
         << probe.estimate;
      return os.str();
    }
    return std::nullopt;
  }
  if (probe.diverges) {
    std::ostringstream os;
    os << name << " stored as " << stored.value()
       << " but samples diverge toward +inf";
    return os.str();
  }
  const double want = stored.value();
  if (std::fabs(probe.estimate - want) > 1e-6 * (1.0 + std::fabs(want))) {
    std::ostringstream os;
    os << name << " stored as " << want << " but extrapolates to "
       << probe.estimate;
    return os.str();
  }
  return std::nullopt;
}

}  // namespace

Generator make_generator(std::string label, std::function<double(double)> eval,
                         ExtReal f_at_zero, ExtReal fstar_at_zero,
                         bool is_decreasing) {
  Generator g{std::move(label), std::move(eval), f_at_zero, fstar_at_zero,
              is_decreasing};
#ifndef NDEBUG
  const auto f_check = check_zero_limit(g.eval, g.f_at_zero, "f_at_zero");
  assert(!f_check && "generator endpoint f(0) disagrees with extrapolation");
  const auto star = [&g](double t) { return t * g.eval(1.0 / t); };
  const auto s_check = check_zero_limit(star, g.fstar_at_zero, "fstar_at_zero");
  assert(!s_check && "generator endpoint f*(0) disagrees with extrapolation");
#endif
  return g;
}

Generator adjoint(const Generator& f) {
  auto inner = f.eval;
  auto eval = [inner](double t) { return t * inner(1.0 / t); };
  Generator g;
  g.label = f.label + "*";
  g.eval = eval;
  g.f_at_zero = f.fstar_at_zero;
  g.fstar_at_zero = f.f_at_zero;
  g.is_decreasing = sampled_decreasing(eval);
  return g;
}

std::optional<std::string> validate_generator(const Generator& f) {
  if (!f.eval) return "generator has no eval callable";
  const auto grid = log_grid(1e-6, 1e6, 49);
  for (size_t i = 0; i < grid.size(); ++i) {
    for (size_t j = i + 1; j < grid.size(); ++j) {
      const double s = grid[i], t = grid[j];
      const double mid = f.eval(0.5 * (s + t));
      const double chord = 0.5 * (f.eval(s) + f.eval(t));
      const double slack =
          1e-9 * (1.0 + std::fabs(f.eval(s)) + std::fabs(f.eval(t)));
      if (mid > chord + slack) {
        std::ostringstream os;
        os << "midpoint convexity fails for '" << f.label << "' at s=" << s
           << ", t=" << t << " (f(mid)=" << mid << " > " << chord << ")";
        return os.str();
      }
    }
  }
  if (auto bad = check_zero_limit(f.eval, f.f_at_zero, "f_at_zero")) {
    return "'" + f.label + "': " + *bad;
  }
  const auto star = [&f](double t) { return t * f.eval(1.0 / t); };
  if (auto bad = check_zero_limit(star, f.fstar_at_zero, "fstar_at_zero")) {
    return "'" + f.label + "': " + *bad;
  }
  return std::nullopt;
}

namespace generators {

Generator kl() {
  Generator g;
  g.label = "kl";
  g.eval = [](double t) { return t * std::log(t); };
  g.f_at_zero = 0.0;
  g.fstar_at_zero = ExtReal::infinity();  // f*(t) = -ln t
  g.is_decreasing = false;
  return g;
}

Generator kl_reverse() {
  Generator g;
  g.label = "kl_reverse";
  g.eval = [](double t) { return -std::log(t); };
  g.f_at_zero = ExtReal::infinity();
  g.fstar_at_zero = 0.0;
  g.is_decreasing = true;
  return g;
}

Generator power(double alpha) {
  if (alpha > 0.0 && alpha < 1.0) {
    throw std::invalid_argument(
        "power generator: t^alpha is not convex for alpha in (0,1)");
  }
  Generator g;
  {
    std::ostringstream os;
    os << "power:" << alpha;
    g.label = os.str();
  }
  g.eval = [alpha](double t) { return std::pow(t, alpha); };
  g.f_at_zero = alpha > 0.0   ? ExtReal(0.0)
                : alpha < 0.0 ? ExtReal::infinity()
                              : ExtReal(1.0);
  const double beta = 1.0 - alpha;  // f*(t) = t^{1-alpha}
  g.fstar_at_zero = beta > 0.0   ? ExtReal(0.0)
                    : beta < 0.0 ? ExtReal::infinity()
                                 : ExtReal(1.0);
  g.is_decreasing = alpha <= 0.0;
  return g;
}

Generator lp_asa(double p, int dim) {
  if (p > 0.0) {
    throw std::invalid_argument(
        "lp_asa generator: p > 0 gives a concave power; only p <= 0 is a "
        "convex generator");
  }
  if (p == -double(dim)) {
    throw std::invalid_argument("lp_asa generator: p = -n is excluded");
  }
  Generator g = power(p / (dim + p));
  std::ostringstream os;
  os << "lp_asa:" << p << ":n" << dim;
  g.label = os.str();
  return g;
}

Generator lpsi_example() {
  Generator g = power(-1.0);
  g.label = "lpsi";
  return g;
}

Generator linear(double a, double b) {
  Generator g;
  {
    std::ostringstream os;
    os << "linear:" << a << "," << b;
    g.label = os.str();
  }
  g.eval = [a, b](double t) { return a * t + b; };
  g.f_at_zero = b;
  g.fstar_at_zero = a;  // f*(t) = a + b t
  g.is_decreasing = a <= 0.0;
  return g;
}

Generator parse(const std::string& text, int dim) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string args =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  auto want_one = [&args, &text]() {
    try {
      size_t used = 0;
      const double v = std::stod(args, &used);
      if (used != args.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw std::invalid_argument("generator '" + text +
                                  "': expected one numeric parameter");
    }
  };
  if (name == "kl") return kl();
  if (name == "kl_reverse") return kl_reverse();
  if (name == "power") return power(want_one());
  if (name == "lp_asa") return lp_asa(want_one(), dim);
  if (name == "lpsi") return lpsi_example();
  if (name == "linear") {
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("generator 'linear' needs two parameters");
    }
    try {
      return linear(std::stod(args.substr(0, comma)),
                    std::stod(args.substr(comma + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("generator '" + text +
                                  "': bad numeric parameters");
    }
  }
  throw std::invalid_argument("unknown generator '" + text + "'");
}

}  // namespace generators

}  // namespace conediv
