// Command-line front end: body specs in, divergence tables and check reports
// out. CSV goes to stdout (header row, 17 significant digits, "inf" for
// infinite values); diagnostics go to stderr. Exit codes: 0 success,
// 1 computation error, 2 usage or parse error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conediv/body_io.hpp"
#include "conediv/divergence.hpp"
#include "conediv/surface_body.hpp"
#include "conediv/verify.hpp"

using namespace conediv;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(ExtReal v) { return format_value(v); }
std::string fmt(double v) { return format_value(ExtReal(v)); }
std::string fmt(bool v) { return v ? "1" : "0"; }

Direction parse_direction(const std::string& s) {
  if (s == "pq") return Direction::PQ;
  if (s == "qp") return Direction::QP;
  throw CLI::ValidationError("--direction", "expected pq or qp");
}

Normalization parse_mode(const std::string& s) {
  if (s == "normalized") return Normalization::normalized;
  if (s == "tilde") return Normalization::tilde;
  throw CLI::ValidationError("--mode", "expected normalized or tilde");
}

// Deterministic pipeline: the map stream is fixed, independent of --seed.
struct MapSampler {
  std::mt19937 gen{0x5eedcafe};
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (gen() / 4294967296.0);
  }
  Eigen::Matrix2d rotation(double phi) const {
    Eigen::Matrix2d r;
    r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return r;
  }
  // random GL(2) map with condition number at most cond_max
  Eigen::Matrix2d gl2(double cond_max, bool unit_det) {
    const double cond = uniform(1.0, cond_max);
    double s1 = uniform(0.5, 2.0);
    double s2 = s1 / cond;
    if (unit_det) {
      const double root = std::sqrt(s1 * s2);
      s1 /= root;
      s2 /= root;
    }
    return rotation(uniform(0.0, 2 * kPi)) *
           Eigen::Matrix2d(Eigen::Vector2d(s1, s2).asDiagonal()) *
           rotation(uniform(0.0, 2 * kPi));
  }
};

struct LadderSpec {
  double s0 = 0.2;
  int halvings = 6;
};

LadderSpec parse_ladder(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("--ladder", "expected s0,halvings");
  }
  LadderSpec spec;
  try {
    spec.s0 = std::stod(text.substr(0, comma));
    spec.halvings = std::stoi(text.substr(comma + 1));
  } catch (...) {
    throw CLI::ValidationError("--ladder", "expected s0,halvings");
  }
  if (spec.s0 <= 0.0 || spec.halvings < 2) {
    throw CLI::ValidationError("--ladder", "need s0 > 0 and halvings >= 2");
  }
  return spec;
}

void print_row(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) std::fputc(',', stdout);
    std::fputs(cells[i].c_str(), stdout);
  }
  std::fputc('\n', stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"f-divergences of convex bodies with respect to their cone "
               "measures"};
  app.require_subcommand(1);

  int quadrature_nodes = 4096;
  int sphere_level = 96;
  double tol = 0.0;  // 0: use each check's default
  long long seed = 0;
  app.add_option("--quadrature", quadrature_nodes,
                 "circle rule node count (default 4096)");
  app.add_option("--sphere-level", sphere_level,
                 "product rule level on S^2 (default 96)");
  app.add_option("--tol", tol, "tolerance override for check subcommands");
  app.add_option("--seed", seed,
                 "accepted and ignored; the pipeline is deterministic")
      ->group("");

  std::string body_path, bodies_csv, generator_name, generators_csv;
  std::string direction_s = "pq", mode_s = "normalized", ladder_s = "0.2,6";
  double asa_p = 1.0, renyi_alpha = 0.5;
  int grid_m = 1024, count = 20;
  double cond_max = 10.0, axis_angle = 0.0, t_lo = 0.0, t_hi = 0.0;
  bool explicit_slab = false;
  bool force_quadrature = false;

  CLI::App* divergence_cmd =
      app.add_subcommand("divergence", "f-divergence of one body");
  divergence_cmd->add_option("--body", body_path)->required();
  divergence_cmd->add_option("--generator", generator_name)->required();
  divergence_cmd->add_option("--direction", direction_s);
  divergence_cmd->add_option("--mode", mode_s);
  divergence_cmd->add_flag("--force-quadrature", force_quadrature,
                           "skip the exact ellipsoid branch");

  CLI::App* asa_cmd = app.add_subcommand("asa", "L_p affine surface area");
  asa_cmd->add_option("--body", body_path)->required();
  asa_cmd->add_option("--p", asa_p)->required();

  CLI::App* kl_cmd = app.add_subcommand("kl", "relative entropy");
  kl_cmd->add_option("--body", body_path)->required();
  kl_cmd->add_option("--direction", direction_s);

  CLI::App* renyi_cmd = app.add_subcommand("renyi", "Renyi divergence");
  renyi_cmd->add_option("--body", body_path)->required();
  renyi_cmd->add_option("--alpha", renyi_alpha)->required();

  CLI::App* polar_cmd = app.add_subcommand("polar", "polar body volume");
  polar_cmd->add_option("--body", body_path)->required();

  CLI::App* mixed_cmd =
      app.add_subcommand("mixed", "mixed f-divergence of n bodies");
  mixed_cmd->add_option("--bodies", bodies_csv, "comma-separated body files")
      ->required();
  mixed_cmd->add_option("--generators", generators_csv,
                        "comma-separated generator names")
      ->required();
  mixed_cmd->add_option("--direction", direction_s);

  CLI::App* surface_cmd = app.add_subcommand(
      "surface-limit", "surface-body deficit ladder and extrapolated limit");
  surface_cmd->add_option("--body", body_path)->required();
  surface_cmd->add_option("--generator", generator_name)->required();
  surface_cmd->add_option("--ladder", ladder_s, "s0,halvings (default 0.2,6)");
  surface_cmd->add_option("--grid", grid_m, "direction grid (default 1024)");
  surface_cmd->add_option("--direction", direction_s);

  CLI::App* check_cmd = app.add_subcommand("check", "verification reports");
  check_cmd->require_subcommand(1);
  CLI::App* inv_cmd =
      check_cmd->add_subcommand("invariance", "linear-image invariance");
  inv_cmd->add_option("--body", body_path)->required();
  inv_cmd->add_option("--generator", generator_name)->required();
  inv_cmd->add_option("--mode", mode_s);
  inv_cmd->add_option("--count", count);
  inv_cmd->add_option("--cond-max", cond_max);
  CLI::App* val_cmd =
      check_cmd->add_subcommand("valuation", "additivity over sliced bodies");
  val_cmd->add_option("--body", body_path)->required();
  val_cmd->add_option("--generator", generator_name)->required();
  val_cmd->add_option("--count", count);
  val_cmd->add_option("--axis-angle", axis_angle);
  CLI::Option* opt_tlo = val_cmd->add_option("--tmin", t_lo);
  CLI::Option* opt_thi = val_cmd->add_option("--tmax", t_hi);
  CLI::App* bounds_cmd =
      check_cmd->add_subcommand("bounds", "lower and upper bound slacks");
  bounds_cmd->add_option("--body", body_path)->required();
  bounds_cmd->add_option("--generator", generator_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  QuadratureConfig cfg;
  cfg.circle_nodes = quadrature_nodes;
  cfg.sphere3_level = sphere_level;
  cfg.force_quadrature = force_quadrature;

  try {
    if (*divergence_cmd || *kl_cmd) {
      const BodyPtr K = load_body_file(body_path);
      const Generator f = *kl_cmd ? generators::kl()
                                  : generators::parse(generator_name, K->dim());
      const Normalization mode =
          *kl_cmd ? Normalization::normalized : parse_mode(mode_s);
      const DivergenceResult r =
          f_divergence(f, *K, parse_direction(direction_s), mode, cfg);
      print_row({"value", "error", "branch"});
      print_row({fmt(r.value), fmt(r.error_estimate), to_string(r.branch)});
    } else if (*asa_cmd) {
      const BodyPtr K = load_body_file(body_path);
      const DivergenceResult r = lp_asa(asa_p, *K, cfg);
      print_row({"value", "error", "branch", "family"});
      print_row({fmt(r.value), fmt(r.error_estimate), to_string(r.branch),
                 r.concave_family ? "concave" : "convex"});
    } else if (*renyi_cmd) {
      const BodyPtr K = load_body_file(body_path);
      print_row({"alpha", "hellinger", "renyi"});
      print_row({fmt(renyi_alpha), fmt(hellinger(*K, renyi_alpha, cfg)),
                 fmt(renyi(*K, renyi_alpha, cfg))});
    } else if (*polar_cmd) {
      const BodyPtr K = load_body_file(body_path);
      print_row({"value"});
      print_row({fmt(K->polar_volume())});
    } else if (*mixed_cmd) {
      std::vector<BodyPtr> bodies;
      std::vector<const ConvexBody*> raw;
      for (size_t pos = 0; pos <= bodies_csv.size();) {
        const size_t comma = bodies_csv.find(',', pos);
        const size_t end = comma == std::string::npos ? bodies_csv.size() : comma;
        bodies.push_back(load_body_file(bodies_csv.substr(pos, end - pos)));
        pos = end + 1;
        if (comma == std::string::npos) break;
      }
      for (const auto& b : bodies) raw.push_back(b.get());
      std::vector<Generator> gens;
      for (size_t pos = 0; pos <= generators_csv.size();) {
        const size_t comma = generators_csv.find(',', pos);
        const size_t end =
            comma == std::string::npos ? generators_csv.size() : comma;
        gens.push_back(generators::parse(generators_csv.substr(pos, end - pos),
                                         bodies.front()->dim()));
        pos = end + 1;
        if (comma == std::string::npos) break;
      }
      const ExtReal v =
          mixed_divergence(raw, gens, parse_direction(direction_s), cfg);
      print_row({"value"});
      print_row({fmt(v)});
    } else if (*surface_cmd) {
      const BodyPtr K = load_body_file(body_path);
      const Generator f = generators::parse(generator_name, K->dim());
      const Direction dir = parse_direction(direction_s);
      const LadderSpec spec = parse_ladder(ladder_s);
      LadderConfig ladder;
      ladder.s0 = spec.s0;
      ladder.halvings = spec.halvings;
      ladder.grid_m = grid_m;
      const LimitEstimate est = divergence_via_limit(*K, f, dir, ladder);
      const ExtReal direct =
          f_divergence(f, *K, dir, Normalization::normalized, cfg).value;
      print_row({"s", "deficit", "deficit_over_s2"});
      for (const auto& [s, deficit] : est.ladder) {
        print_row({fmt(s), fmt(deficit), fmt(deficit / (s * s))});
      }
      print_row({"limit_estimate", "uncertainty", "direct_divergence",
                 "rel_gap"});
      const double gap = direct.is_finite()
                             ? std::fabs(est.value - direct.value()) /
                                   (1.0 + std::fabs(direct.value()))
                             : std::numeric_limits<double>::infinity();
      print_row({fmt(est.value), fmt(est.uncertainty), fmt(direct), fmt(gap)});
    } else if (*inv_cmd) {
      const BodyPtr K = load_body_file(body_path);
      const Generator f = generators::parse(generator_name, K->dim());
      const Normalization mode = parse_mode(mode_s);
      const double use_tol = tol > 0.0 ? tol : 1e-6;
      if (K->dim() != 2) {
        throw std::invalid_argument(
            "check invariance samples random planar maps; body must be 2D");
      }
      MapSampler sampler;
      print_row({"index", "mode", "base_pq", "mapped_pq", "base_qp",
                 "mapped_qp", "max_gap", "pass"});
      for (int i = 0; i < count; ++i) {
        const Eigen::Matrix2d T =
            sampler.gl2(cond_max, mode == Normalization::tilde);
        const InvarianceReport rep =
            check_gl_invariance(*K, f, T, use_tol, mode, cfg);
        print_row({fmt(double(i)), to_string(mode), fmt(rep.base_pq),
                   fmt(rep.mapped_pq), fmt(rep.base_qp), fmt(rep.mapped_qp),
                   fmt(rep.max_gap), fmt(rep.pass)});
      }
    } else if (*val_cmd) {
      const BodyPtr K = load_body_file(body_path);
      const Generator f = generators::parse(generator_name, K->dim());
      const double use_tol = tol > 0.0 ? tol : 1e-4;
      explicit_slab = opt_tlo->count() > 0 && opt_thi->count() > 0;
      MapSampler sampler;
      print_row({"index", "axis_angle", "t_lo", "t_hi", "whole", "intersection",
                 "left", "right", "defect_rel", "pass"});
      const int reps = explicit_slab ? 1 : count;
      for (int i = 0; i < reps; ++i) {
        double angle = axis_angle, lo = t_lo, hi = t_hi;
        if (!explicit_slab) {
          angle = sampler.uniform(0.0, 2 * kPi);
          const Eigen::Vector2d e(std::cos(angle), std::sin(angle));
          Eigen::VectorXd eplus(2), eminus(2);
          eplus << e.x(), e.y();
          eminus << -e.x(), -e.y();
          hi = sampler.uniform(0.05, 0.6) * K->support(eplus);
          lo = -sampler.uniform(0.05, 0.6) * K->support(eminus);
        }
        const ValuationReport rep = check_valuation(
            *K, Eigen::Vector2d(std::cos(angle), std::sin(angle)), lo, hi, f,
            use_tol);
        print_row({fmt(double(i)), fmt(angle), fmt(lo), fmt(hi), fmt(rep.whole),
                   fmt(rep.intersection), fmt(rep.left), fmt(rep.right),
                   fmt(rep.defect_rel), fmt(rep.pass)});
      }
    } else if (*bounds_cmd) {
      const BodyPtr K = load_body_file(body_path);
      const Generator f = generators::parse(generator_name, K->dim());
      const BoundsReport rep = check_bounds(*K, f, cfg);
      print_row({"divergence", "jensen_applicable", "jensen_rhs",
                 "jensen_slack", "jensen_pass", "f1_applicable", "f1_slack",
                 "f1_pass", "upper_applicable", "upper_rhs", "upper_slack",
                 "upper_pass", "equality_expected", "equality_gap", "pass"});
      print_row({fmt(rep.divergence), fmt(rep.jensen_applicable),
                 fmt(rep.jensen_rhs), fmt(rep.jensen_slack),
                 fmt(rep.jensen_pass), fmt(rep.f1_applicable),
                 fmt(rep.f1_slack), fmt(rep.f1_pass), fmt(rep.upper_applicable),
                 fmt(rep.upper_rhs), fmt(rep.upper_slack), fmt(rep.upper_pass),
                 fmt(rep.equality_expected), fmt(rep.equality_gap),
                 fmt(rep.pass)});
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
