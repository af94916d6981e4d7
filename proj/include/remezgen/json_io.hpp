#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "remezgen/constraints.hpp"
#include "remezgen/solver.hpp"

namespace remez {

struct SpecParseError : std::runtime_error {
    explicit SpecParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A fully materialized problem: system + target + optional constraints +
// solver options, plus the canonical JSON form for lossless re-emission.
struct ProblemSpec {
    SystemPtr system;
    TargetFn target;
    std::shared_ptr<ConstraintSet> constraints;
    SolverOptions options;
    nlohmann::json normalized;
};

// Strict parser: unknown fields are rejected, every descriptor comes from the
// closed catalog of basis families / target terms / constraint kinds.
ProblemSpec parse_problem(const nlohmann::json& j);
ProblemSpec load_problem(const std::string& path);

nlohmann::json result_to_json(const ApproxResult& res);

std::string trace_csv(const std::vector<TraceRow>& trace);
std::string samples_csv(const Poly& p, const TargetFn& f, double lo, double hi, int count);

const char* mode_name(StepMode mode);

}  // namespace remez
