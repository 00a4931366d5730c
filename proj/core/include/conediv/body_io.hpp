#pragma once

#include <string>

#include "conediv/body.hpp"

namespace conediv {

/// Parses a JSON body document. Schema, discriminated by "kind":
///   {"kind":"ellipsoid","matrix":[[4,0],[0,1]]}
///   {"kind":"polytope","vertices":[[1,1],[-1,1],...]}        (and/or
///    "halfspaces":[{"normal":[1,0],"offset":1},...])
///   {"kind":"smooth2d","cos":[1,0,0,0.1],"sin":[0,0,0,0]}    (h(t) =
///    sum cos[k] cos(kt) + sin[k] sin(kt))
///   {"kind":"rounded_polygon","base":[[1,1],...],"radius":0.1}
/// Invalid documents throw std::invalid_argument naming the violated
/// invariant.
BodyPtr parse_body_json(const std::string& text);

/// parse_body_json over the contents of a file.
BodyPtr load_body_file(const std::string& path);

}  // namespace conediv
