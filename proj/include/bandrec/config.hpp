#pragma once

#include "bandrec/experiments.hpp"

#include <json.hpp>

#include <string>

namespace bandrec::config {

using json = nlohmann::json;

// Reads and parses a JSON file; ConfigError on I/O or syntax problems.
json load_file(const std::string& path);

// Rejects objects with keys outside `allowed`; silent typos in geometry
// parameters would invalidate rate experiments.
void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& context);

ConvexBody parse_body(const json& j);
// Kernel with its own shape parameter ({"family","dim","alpha"|("nu","c")|("p","alpha")}).
Kernel parse_kernel_instance(const json& j);
// Family spec without the swept parameter (it comes from alpha_grid).
KernelSpec parse_kernel_spec(const json& j);
FunctionSpec parse_function(const json& j);
NodeSpec parse_nodes(const json& j);
SweepConfig parse_sweep(const json& j);

json body_to_json(const ConvexBody& body);
json kernel_spec_to_json(const KernelSpec& spec);
json function_to_json(const FunctionSpec& spec);
json nodes_to_json(const NodeSpec& spec);
json sweep_to_json(const SweepConfig& config);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace bandrec::config
