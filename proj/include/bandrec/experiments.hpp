#pragma once

#include "bandrec/bandlimited.hpp"
#include "bandrec/conditions.hpp"
#include "bandrec/geometry.hpp"
#include "bandrec/interpolation.hpp"
#include "bandrec/kernels.hpp"
#include "bandrec/nodes.hpp"
#include "bandrec/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bandrec {

inline constexpr const char* kVersion = "0.1.0";

// Kernel family description with the sweep parameter left open.
struct KernelSpec {
    KernelFamily family = KernelFamily::Gaussian;
    int dim = 1;
    double nu = 1.5;         // imq
    double p = 1.0;          // pexp
    double table_rmax = 160.0;  // pexp spatial table extent

    Kernel build(double param) const;
};

struct FunctionSpec {
    SpectrumPreset preset = SpectrumPreset::RandomSmooth;
    double beta = 0.5;
    std::uint64_t seed = 0;
    double scale = 1.0;
    int quad_order = 64;

    BandlimitedFunction build(int dim) const;
};

struct NodeSpec {
    std::vector<AxisSpec> axes;  // one entry per dimension

    NodeSet build() const;
    int dim() const { return static_cast<int>(axes.size()); }
};

struct SweepConfig {
    ConvexBody body = ConvexBody::ball(1, 0.95);
    KernelSpec kernel;
    FunctionSpec function;
    NodeSpec nodes;
    std::vector<double> param_grid;
    double eval_window_fraction = 0.5;
    int eval_grid = 0;       // per-axis points; 0 picks 2048 (d=1) or 128 (d=2)
    int l2_quad_order = 0;   // per-axis order; 0 picks 200 (d=1) or 64 (d=2)
    bool limiting_case = false;

    int eval_grid_resolved() const;
    int l2_quad_order_resolved() const;
    void validate() const;
};

struct SweepRow {
    double param = 0.0;
    double sup_error = 0.0;
    double l2_error = 0.0;
    double node_residual = 0.0;
    double jitter = 0.0;
    double condition_estimate = 0.0;
    double ratio_r2 = 0.0;
    bool failed = false;
    std::string message;
};

struct SweepReport {
    SweepConfig config;
    std::string config_json;  // canonical single-line echo
    std::string timestamp;
    std::string version = kVersion;
    std::vector<SweepRow> rows;
};

SweepReport run_sweep(const SweepConfig& config);

enum class FitStatus { Ok, TooFewUsableRows };

struct FitResult {
    FitStatus status = FitStatus::TooFewUsableRows;
    double slope = 0.0;
    double intercept = 0.0;
    int usable_rows = 0;
    double param_lo = 0.0, param_hi = 0.0;  // usable parameter range
    double theoretical_exponent = 0.0;
    bool feasible = false;
    bool rate_exempt = false;  // infeasible (delta, beta): no rate gate applies
    bool pass = false;
    std::string message;
};

// Least-squares slope of ln(sup error) against the sweep parameter over the
// rows above the error floor; passes when the slope is at most the
// theoretical exponent plus 0.05.
FitResult fit_rate(const SweepReport& report);

void write_report(const SweepReport& report, const std::string& path);
SweepReport read_report(const std::string& path);

// Canonical JSON echo used for config hashing and report metadata.
std::string canonical_config_json(const SweepConfig& config);
std::string config_hash(const SweepConfig& config);
SweepConfig parse_sweep_config_json(const std::string& text);

}  // namespace bandrec
