#include "conediv/body_io.hpp"

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace conediv {

namespace {

using nlohmann::json;

Eigen::VectorXd parse_vector(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("body spec: expected a numeric array");
  }
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

BodyPtr parse(const json& j) {
  if (!j.contains("kind")) {
    throw std::invalid_argument("body spec: missing \"kind\" discriminator");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ellipsoid") {
    const json& rows = j.at("matrix");
    const int n = int(rows.size());
    Eigen::MatrixXd m(n, n);
    for (int r = 0; r < n; ++r) {
      if (int(rows[r].size()) != n) {
        throw std::invalid_argument("body spec: ellipsoid matrix not square");
      }
      for (int c = 0; c < n; ++c) m(r, c) = rows[r][c].get<double>();
    }
    return std::make_shared<Ellipsoid>(std::move(m));
  }
  if (kind == "polytope") {
    std::vector<Eigen::VectorXd> verts;
    std::vector<Halfspace> hs;
    if (j.contains("vertices")) {
      for (const auto& row : j.at("vertices")) verts.push_back(parse_vector(row));
    }
    if (j.contains("halfspaces")) {
      for (const auto& entry : j.at("halfspaces")) {
        hs.push_back(
            {parse_vector(entry.at("normal")), entry.at("offset").get<double>()});
      }
    }
    if (!verts.empty() && !hs.empty()) {
      return std::make_shared<Polytope>(std::move(hs), std::move(verts));
    }
    if (!verts.empty()) {
      return std::make_shared<Polytope>(Polytope::from_vertices(std::move(verts)));
    }
    if (!hs.empty()) {
      return std::make_shared<Polytope>(Polytope::from_halfspaces(std::move(hs)));
    }
    throw std::invalid_argument(
        "body spec: polytope needs \"vertices\" or \"halfspaces\"");
  }
  if (kind == "smooth2d") {
    std::vector<double> cos_c, sin_c;
    for (const auto& c : j.at("cos")) cos_c.push_back(c.get<double>());
    if (j.contains("sin")) {
      for (const auto& c : j.at("sin")) sin_c.push_back(c.get<double>());
    }
    return std::make_shared<SmoothBody2D>(
        SmoothBody2D::from_trig(std::move(cos_c), std::move(sin_c)));
  }
  if (kind == "rounded_polygon") {
    std::vector<Eigen::Vector2d> base;
    for (const auto& row : j.at("base")) {
      const Eigen::VectorXd v = parse_vector(row);
      if (v.size() != 2) {
        throw std::invalid_argument("body spec: rounded polygon base is planar");
      }
      base.emplace_back(v(0), v(1));
    }
    return std::make_shared<RoundedPolygon>(std::move(base),
                                            j.at("radius").get<double>());
  }
  throw std::invalid_argument("body spec: unknown kind \"" + kind + "\"");
}

}  // namespace

BodyPtr parse_body_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("body spec: invalid JSON: ") +
                                e.what());
  }
  try {
    return parse(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("body spec: malformed document: ") +
                                e.what());
  }
}

BodyPtr load_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("body spec: cannot open file " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_body_json(buffer.str());
}

}  // namespace conediv
