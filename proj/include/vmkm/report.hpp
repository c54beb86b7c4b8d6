#ifndef VMKM_REPORT_HPP
#define VMKM_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cluster_state.hpp"
#include "params.hpp"

namespace vmkm {

enum class TerminationReason { ConditionMet, MaxIterations, Stalled };

inline std::string_view to_string(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::ConditionMet: return "condition_met";
        case TerminationReason::MaxIterations: return "max_iterations";
        case TerminationReason::Stalled: return "stalled";
    }
    return "max_iterations";
}

inline std::optional<TerminationReason> parse_termination_reason(std::string_view text) {
    if (text == "condition_met") return TerminationReason::ConditionMet;
    if (text == "max_iterations") return TerminationReason::MaxIterations;
    if (text == "stalled") return TerminationReason::Stalled;
    return std::nullopt;
}

/// Outcome of one clustering run, shared by VMKM and every baseline.
struct RunReport {
    std::string algorithm;
    ClusterState final_state;
    double mse = 0.0;
    std::vector<double> fitness_per_cluster;
    std::size_t main_iterations = 0;
    std::size_t nested_iterations_total = 0;
    /// Nested-loop iteration count of each main iteration (empty for baselines).
    std::vector<std::size_t> nested_iterations_per_main;
    TerminationReason termination_reason = TerminationReason::MaxIterations;
    /// One entry per main iteration.
    std::vector<std::size_t> transfers_per_iteration;
    std::uint64_t seed_used = 0;
    /// Thresholds when the run ended (VMKM and MKM only).
    AlphaState final_alphas;

    bool operator==(const RunReport&) const = default;
};

}  // namespace vmkm

#endif  // VMKM_REPORT_HPP
