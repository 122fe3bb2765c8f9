#pragma once

#include <string>

#include <json.hpp>

#include "taco/algebra.hpp"
#include "taco/guidance.hpp"
#include "taco/layout.hpp"
#include "taco/mesh.hpp"
#include "taco/table.hpp"

namespace taco {

using Json = nlohmann::ordered_json;

Json to_json(const Table& t);
Json to_json(const Mesh& m);
Json to_json(const LayoutParams& p);
Json to_json(const LayoutResult& r);  // mesh fields plus convergence diagnostics
Json to_json(const ProbeConfig& c);
Json to_json(const ProbeReport& r);
Json to_json(const SuiteReport& s);   // reports, skipped alphas and the verdict summary
Json to_json(const GuidanceReport& g);

/// `{"hallucinators": [...], "confusers": [...], "commutes": [...], "inconclusive": [...]}`
Json suite_summary(const SuiteReport& s);

/// Reads the mesh format written by to_json(Mesh); throws Parse.
Mesh mesh_from_json(const Json& j);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace taco
