#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "demandcast/metrics.hpp"

namespace demandcast {

/// Variance of the loss differentials: population (divisor n) or sample
/// (divisor n-1).
enum class DmVariance { Population, Sample };

enum class DmVerdict {
    AWins,        // significant, statistic negative
    BWins,        // significant, statistic positive
    Inconclusive, // not significant
    Tie,          // every loss differential is zero
    Degenerate,   // constant nonzero differential; sign of mean_d names the winner
};

struct DmResult {
    std::optional<double> statistic; // absent when variance_d is zero
    std::optional<double> p_value;
    double mean_d = 0.0;
    double variance_d = 0.0;
    std::size_t n = 0;
    DmVerdict verdict = DmVerdict::Inconclusive;
};

/// Squared-error loss comparison of two forecasters from their error
/// sequences (actual minus forecast). Negative statistics favor model a.
DmResult dm_statistic(const std::vector<double>& errors_a, const std::vector<double>& errors_b,
                      double significance = 0.05, DmVariance variance = DmVariance::Population);

/// Which model the result significantly favors: -1 for a, +1 for b, 0 for
/// neither. Degenerate results count as decisive by the sign of mean_d.
int dm_favored(const DmResult& result);

const char* dm_verdict_name(DmVerdict verdict);

/// Per-series winner, shaped for tabular reporting.
struct ModelDecision {
    std::string best_model;
    std::string result; // "<model>_wins" or "tie"
    std::string source; // "statistical", "fallback", or "tie"
    std::string competitor; // best non-proposed model by direction accuracy
    std::optional<double> dm_statistic; // proposed model slotted as side a
    std::optional<double> p_value;
};

/// Decision rule: take the model with the highest direction accuracy
/// (proposed-first, then id, on exact ties); it wins when the squared-error
/// test against the runner-up significantly favors it, otherwise the
/// proposed model wins by fallback. Identical losses against the leading
/// competitor are labeled a tie. The emitted statistic always compares the
/// proposed model (side a, so negative means it outperformed) against the
/// strongest other model.
ModelDecision best_model_per_series(const std::map<std::string, MetricReport>& reports,
                                    const std::map<std::pair<std::string, std::string>, DmResult>& dm_matrix,
                                    const std::string& proposed_id);

} // namespace demandcast
