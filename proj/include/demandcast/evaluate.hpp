#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demandcast/baselines.hpp"
#include "demandcast/dm.hpp"
#include "demandcast/forecaster.hpp"
#include "demandcast/metrics.hpp"
#include "demandcast/series.hpp"

namespace demandcast {

struct EvaluateOptions {
    ForecasterConfig forecaster;
    double train_fraction = 0.8;
    PocidDivisor pocid_divisor = PocidDivisor::N;
    DmVariance dm_variance = DmVariance::Population;
    double significance = 0.05; // pairwise comparison test level
    double lag_level = 0.05;    // autoregression lag selection level
    std::uint64_t seed = 0;     // echoed into the report for provenance
    unsigned threads = 0;       // 0 picks the hardware concurrency
};

struct ModelRun {
    std::string model;
    std::vector<ForecastRecord> records; // warmup rows included where they exist
    MetricReport metrics;                // computed over the test window only
};

struct SeriesEvaluation {
    std::string series_id;
    std::vector<std::chrono::sys_days> dates;
    std::size_t n_total = 0;
    std::size_t t_train = 0;
    std::vector<ModelRun> models; // proposed, base, naive, ar
    ARModel ar_model;
    ModelDecision decision;
};

struct EvaluationReport {
    EvaluateOptions options;
    std::vector<SeriesEvaluation> series; // sorted by series id
};

/// Run the boosted model, its uncorrected base (ablation), the last-value
/// forecaster and the autoregression on one series over a shared test window.
SeriesEvaluation evaluate_series(const CountSeries& series, const EvaluateOptions& options);

/// Evaluate every series, concurrently when asked; results are keyed and
/// ordered by series id so the report does not depend on scheduling.
EvaluationReport evaluate_corpus(const std::vector<CountSeries>& corpus,
                                 const EvaluateOptions& options);

/// Canonical machine-readable report (schema in docs/report-schema.md).
/// Identical inputs and options serialize to identical bytes.
std::string report_json(const EvaluationReport& report);

/// Per-step forecast trail for every model, warmup rows tagged.
std::string forecasts_csv(const EvaluationReport& report);

/// Per-series direction accuracy by model, one row per pair.
std::string pocid_csv(const EvaluationReport& report);

std::string version_string();

} // namespace demandcast
