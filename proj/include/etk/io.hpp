#ifndef ETK_IO_HPP
#define ETK_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "etk/entropy.hpp"
#include "etk/geometry.hpp"
#include "etk/inequality.hpp"
#include "etk/search.hpp"

// Readers throw etk::ParseError on malformed input and std::runtime_error
// when a file cannot be opened.
namespace etk::io {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

// {"labels": [...], "values": {"": 0, "i": ..., "ij": ..., ...}}
json to_json(const SetFunction& h);
SetFunction set_function_from_json(const json& j);
SetFunction load_set_function(const std::filesystem::path& path);

// Header x_<label>...,prob; one row per atom.
void write_distribution_csv(std::ostream& out, const JointDistribution& d);
/// Alphabet sizes are one more than the largest symbol seen per variable.
JointDistribution read_distribution_csv(std::istream& in);
// {"labels": [...], "alphabet_sizes": [...], "atoms": [{"x": [...], "prob": p}, ...]}
json to_json(const JointDistribution& d);
JointDistribution distribution_from_json(const json& j);
/// CSV or JSON, chosen by the file extension.
JointDistribution load_distribution(const std::filesystem::path& path);

// alpha,beta,gamma,delta,source with full double precision.
void write_points_csv(std::ostream& out, const std::vector<CrossSectionPoint>& points);
std::vector<CrossSectionPoint> read_points_csv(std::istream& in);

// {"name": ..., "coefficients": {"ik": 1.0, ...}} or {"name": ..., "abcd": [a, b, c, d]}.
// A file holds one object or an array of them; coefficient forms are mapped
// through to_halfspace with the given frame.
std::vector<CrossSectionHalfspace> halfspaces_from_json(const json& j, const GroundSet& ground,
                                                        const IngletonFrame& fr);
json to_json(const LinearInequality& ineq);
json to_json(const CrossSectionHalfspace& hs);

json to_json(const SearchConfig& cfg);
/// Missing keys keep their defaults.
SearchConfig search_config_from_json(const json& j);

/// "v beta gamma delta" lines, then 1-based "f a b c" lines.
void write_obj(std::ostream& out, const Polytope3& poly);
json region_to_json(const Polytope3& poly);

}  // namespace etk::io

#endif  // ETK_IO_HPP
