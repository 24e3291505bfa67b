#include "bandrec/config.hpp"

#include <fstream>
#include <sstream>

namespace bandrec::config {

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError("config parse error in " + path + ": " + err.what());
    }
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& context) {
    if (!obj.is_object()) throw ConfigError(context + " must be a JSON object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + context);
    }
}

namespace {

double get_number(const json& obj, const char* key, const std::string& context) {
    if (!obj.contains(key)) throw ConfigError(context + " is missing key '" + key + "'");
    if (!obj[key].is_number()) throw ConfigError(context + " key '" + key + "' must be a number");
    return obj[key].get<double>();
}

long get_integer(const json& obj, const char* key, const std::string& context) {
    if (!obj.contains(key)) throw ConfigError(context + " is missing key '" + key + "'");
    if (!obj[key].is_number_integer())
        throw ConfigError(context + " key '" + key + "' must be an integer");
    return obj[key].get<long>();
}

std::string get_string(const json& obj, const char* key, const std::string& context) {
    if (!obj.contains(key)) throw ConfigError(context + " is missing key '" + key + "'");
    if (!obj[key].is_string()) throw ConfigError(context + " key '" + key + "' must be a string");
    return obj[key].get<std::string>();
}

}  // namespace

ConvexBody parse_body(const json& j) {
    require_keys(j, {"kind", "dim", "size"}, "body");
    const std::string kind = get_string(j, "kind", "body");
    const int dim = static_cast<int>(get_integer(j, "dim", "body"));
    const double size = get_number(j, "size", "body");
    if (kind == "ball") return ConvexBody::ball(dim, size);
    if (kind == "box") return ConvexBody::box(dim, size);
    throw ConfigError("body kind must be 'ball' or 'box', got '" + kind + "'");
}

namespace {

KernelFamily parse_family(const std::string& name) {
    if (name == "gaussian") return KernelFamily::Gaussian;
    if (name == "imq") return KernelFamily::Imq;
    if (name == "pexp") return KernelFamily::PExp;
    throw ConfigError("kernel family must be 'gaussian', 'imq', or 'pexp', got '" + name + "'");
}

}  // namespace

Kernel parse_kernel_instance(const json& j) {
    const std::string name = get_string(j, "family", "kernel");
    const KernelFamily family = parse_family(name);
    const int dim = static_cast<int>(get_integer(j, "dim", "kernel"));
    switch (family) {
        case KernelFamily::Gaussian:
            require_keys(j, {"family", "dim", "alpha"}, "gaussian kernel");
            return Kernel::gaussian(dim, get_number(j, "alpha", "kernel"));
        case KernelFamily::Imq:
            require_keys(j, {"family", "dim", "nu", "c"}, "imq kernel");
            return Kernel::imq(dim, get_number(j, "nu", "kernel"), get_number(j, "c", "kernel"));
        case KernelFamily::PExp: {
            require_keys(j, {"family", "dim", "p", "alpha", "rmax"}, "pexp kernel");
            const double rmax = j.contains("rmax") ? get_number(j, "rmax", "kernel") : 160.0;
            return Kernel::pexp(dim, get_number(j, "p", "kernel"),
                                get_number(j, "alpha", "kernel"), rmax);
        }
    }
    throw ConfigError("unknown kernel family");
}

KernelSpec parse_kernel_spec(const json& j) {
    KernelSpec spec;
    spec.family = parse_family(get_string(j, "family", "kernel"));
    spec.dim = static_cast<int>(get_integer(j, "dim", "kernel"));
    switch (spec.family) {
        case KernelFamily::Gaussian:
            require_keys(j, {"family", "dim"}, "gaussian kernel spec");
            break;
        case KernelFamily::Imq:
            require_keys(j, {"family", "dim", "nu"}, "imq kernel spec");
            spec.nu = get_number(j, "nu", "kernel");
            break;
        case KernelFamily::PExp:
            require_keys(j, {"family", "dim", "p", "rmax"}, "pexp kernel spec");
            spec.p = get_number(j, "p", "kernel");
            if (j.contains("rmax")) spec.table_rmax = get_number(j, "rmax", "kernel");
            break;
    }
    return spec;
}

FunctionSpec parse_function(const json& j) {
    require_keys(j, {"preset", "beta", "seed", "scale", "quad_order"}, "function");
    FunctionSpec spec;
    spec.preset = parse_preset(get_string(j, "preset", "function"));
    spec.beta = get_number(j, "beta", "function");
    if (j.contains("seed"))
        spec.seed = static_cast<std::uint64_t>(get_integer(j, "seed", "function"));
    if (j.contains("scale")) spec.scale = get_number(j, "scale", "function");
    if (j.contains("quad_order"))
        spec.quad_order = static_cast<int>(get_integer(j, "quad_order", "function"));
    return spec;
}

namespace {

AxisSpec parse_axis(const json& j, const std::string& context) {
    require_keys(j, {"h", "jmin", "jmax", "L", "seed"}, context);
    AxisSpec axis;
    axis.h = get_number(j, "h", context);
    axis.jmin = get_integer(j, "jmin", context);
    axis.jmax = get_integer(j, "jmax", context);
    axis.kadec_bound = get_number(j, "L", context);
    axis.seed = static_cast<std::uint64_t>(get_integer(j, "seed", context));
    return axis;
}

}  // namespace

NodeSpec parse_nodes(const json& j) {
    const std::string generator = get_string(j, "generator", "nodes");
    if (generator != "kadec")
        throw ConfigError("nodes generator must be 'kadec', got '" + generator + "'");
    NodeSpec spec;
    if (j.contains("axes")) {
        require_keys(j, {"generator", "axes"}, "nodes");
        if (!j["axes"].is_array() || j["axes"].empty())
            throw ConfigError("nodes 'axes' must be a nonempty array");
        int i = 0;
        for (const json& axis : j["axes"])
            spec.axes.push_back(parse_axis(axis, "nodes axis " + std::to_string(++i)));
    } else {
        require_keys(j, {"generator", "h", "jmin", "jmax", "L", "seed"}, "nodes");
        spec.axes.push_back(parse_axis(json{{"h", j.value("h", 0.0)},
                                            {"jmin", j.value("jmin", 0L)},
                                            {"jmax", j.value("jmax", 0L)},
                                            {"L", j.value("L", 0.0)},
                                            {"seed", j.value("seed", 0L)}},
                                       "nodes"));
    }
    return spec;
}

SweepConfig parse_sweep(const json& j) {
    require_keys(j,
                 {"body", "kernel", "function", "nodes", "alpha_grid", "eval_window_fraction",
                  "eval_grid", "l2_quad_order", "limiting_case"},
                 "sweep config");
    SweepConfig cfg;
    if (!j.contains("body")) throw ConfigError("sweep config is missing 'body'");
    cfg.body = parse_body(j["body"]);
    if (!j.contains("kernel")) throw ConfigError("sweep config is missing 'kernel'");
    cfg.kernel = parse_kernel_spec(j["kernel"]);
    if (!j.contains("function")) throw ConfigError("sweep config is missing 'function'");
    cfg.function = parse_function(j["function"]);
    if (!j.contains("nodes")) throw ConfigError("sweep config is missing 'nodes'");
    cfg.nodes = parse_nodes(j["nodes"]);
    if (!j.contains("alpha_grid") || !j["alpha_grid"].is_array())
        throw ConfigError("sweep config needs an 'alpha_grid' array");
    for (const json& v : j["alpha_grid"]) {
        if (!v.is_number()) throw ConfigError("alpha_grid entries must be numbers");
        cfg.param_grid.push_back(v.get<double>());
    }
    if (j.contains("eval_window_fraction"))
        cfg.eval_window_fraction = get_number(j, "eval_window_fraction", "sweep config");
    if (j.contains("eval_grid"))
        cfg.eval_grid = static_cast<int>(get_integer(j, "eval_grid", "sweep config"));
    if (j.contains("l2_quad_order"))
        cfg.l2_quad_order = static_cast<int>(get_integer(j, "l2_quad_order", "sweep config"));
    if (j.contains("limiting_case")) {
        if (!j["limiting_case"].is_boolean())
            throw ConfigError("limiting_case must be a boolean");
        cfg.limiting_case = j["limiting_case"].get<bool>();
    }
    return cfg;
}

json body_to_json(const ConvexBody& body) {
    return {{"kind", body.kind() == ConvexBody::Kind::Ball ? "ball" : "box"},
            {"dim", body.dim()},
            {"size", body.size()}};
}

json kernel_spec_to_json(const KernelSpec& spec) {
    json j{{"dim", spec.dim}};
    switch (spec.family) {
        case KernelFamily::Gaussian:
            j["family"] = "gaussian";
            break;
        case KernelFamily::Imq:
            j["family"] = "imq";
            j["nu"] = spec.nu;
            break;
        case KernelFamily::PExp:
            j["family"] = "pexp";
            j["p"] = spec.p;
            j["rmax"] = spec.table_rmax;
            break;
    }
    return j;
}

json function_to_json(const FunctionSpec& spec) {
    return {{"preset", preset_name(spec.preset)},
            {"beta", spec.beta},
            {"seed", spec.seed},
            {"scale", spec.scale},
            {"quad_order", spec.quad_order}};
}

json nodes_to_json(const NodeSpec& spec) {
    json axes = json::array();
    for (const AxisSpec& a : spec.axes)
        axes.push_back({{"h", a.h},
                        {"jmin", a.jmin},
                        {"jmax", a.jmax},
                        {"L", a.kadec_bound},
                        {"seed", a.seed}});
    return {{"generator", "kadec"}, {"axes", axes}};
}

json sweep_to_json(const SweepConfig& config) {
    return {{"body", body_to_json(config.body)},
            {"kernel", kernel_spec_to_json(config.kernel)},
            {"function", function_to_json(config.function)},
            {"nodes", nodes_to_json(config.nodes)},
            {"alpha_grid", config.param_grid},
            {"eval_window_fraction", config.eval_window_fraction},
            {"eval_grid", config.eval_grid},
            {"l2_quad_order", config.l2_quad_order},
            {"limiting_case", config.limiting_case}};
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace bandrec::config

namespace bandrec {

std::string canonical_config_json(const SweepConfig& cfg) {
    return config::sweep_to_json(cfg).dump();
}

std::string config_hash(const SweepConfig& cfg) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%012llx",
                  static_cast<unsigned long long>(config::fnv1a64(canonical_config_json(cfg)) &
                                                  0xffffffffffffULL));
    return buf;
}

SweepConfig parse_sweep_config_json(const std::string& text) {
    try {
        return config::parse_sweep(config::json::parse(text));
    } catch (const config::json::parse_error& err) {
        throw ConfigError(std::string("embedded config parse error: ") + err.what());
    }
}

}  // namespace bandrec
