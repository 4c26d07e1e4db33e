#ifndef PKIT_JSON_IO_HPP
#define PKIT_JSON_IO_HPP

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pkit/protoperad.hpp"
#include "pkit/quadalg.hpp"
#include "pkit/walls.hpp"

namespace pkit::io {

using nlohmann::json;

// Parse errors carry a field path for diagnostics (e.g.
// "relations3[0].terms[1].coeff").
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Strict parsing: unknown fields and unknown schema versions are rejected.
proto::BinaryQuadraticProtoperad parse_protoperad(const json& j);
proto::BinaryQuadraticProtoperad load_protoperad(const std::string& path);

quad::QuadraticAlgebra parse_algebra(const json& j);
quad::QuadraticAlgebra load_algebra(const std::string& path);

json protoperad_json(const proto::BinaryQuadraticProtoperad& p);
json algebra_json(const quad::QuadraticAlgebra& a);

json wall_json(const walls::Wall& w);
json partition_json(const walls::Partition& p);
json certificate_json(const quad::Certificate& cert,
                      const std::vector<std::string>& gen_names);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace pkit::io

#endif
