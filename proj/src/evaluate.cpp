#include "demandcast/evaluate.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iterator>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

namespace demandcast {

namespace {

using json = nlohmann::json;

const char* const kProposed = "proposed";
const char* const kBase = "base";
const char* const kNaive = "naive";
const char* const kAr = "ar";

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<ForecastRecord> test_window(const std::vector<ForecastRecord>& records)
{
    std::vector<ForecastRecord> out;
    for (const ForecastRecord& r : records)
        if (!r.warmup)
            out.push_back(r);
    return out;
}

std::vector<double> forecast_values(const std::vector<ForecastRecord>& test_records)
{
    std::vector<double> out;
    out.reserve(test_records.size());
    for (const ForecastRecord& r : test_records)
        out.push_back(r.x_hat);
    return out;
}

void validate_options(const EvaluateOptions& options)
{
    // Constructing a prior state validates kappa, delta, eta.
    NormalGammaState probe(options.forecaster.m, options.forecaster.kappa,
                           options.forecaster.delta, options.forecaster.eta);
    (void)probe;
    if (!(options.train_fraction > 0.0) || !(options.train_fraction < 1.0))
        throw std::invalid_argument("train fraction must lie in (0, 1)");
    if (!(options.significance > 0.0) || !(options.significance < 1.0))
        throw std::invalid_argument("significance must lie in (0, 1)");
    if (!(options.lag_level > 0.0) || !(options.lag_level < 1.0))
        throw std::invalid_argument("lag selection level must lie in (0, 1)");
}

json metrics_json(const MetricReport& m)
{
    json j;
    j["pocid"] = m.pocid;
    j["mse"] = m.mse;
    j["mape"] = m.mape ? json(*m.mape) : json(nullptr);
    j["mape_skipped"] = m.mape_skipped;
    j["theil_u"] = m.theil_u ? json(*m.theil_u) : json(nullptr);
    j["n_effective"] = m.n_effective;
    return j;
}

json record_json(const ForecastRecord& r, const std::vector<std::chrono::sys_days>& dates)
{
    json j;
    j["time_index"] = r.time_index;
    j["date"] = format_date(dates.at(r.time_index - 1));
    j["lambda_hat"] = r.lambda_hat;
    j["mu_hat"] = r.mu_hat;
    j["x_hat"] = r.x_hat;
    j["observed"] = r.observed ? json(*r.observed) : json(nullptr);
    j["residual"] = r.residual ? json(*r.residual) : json(nullptr);
    return j;
}

} // namespace

SeriesEvaluation evaluate_series(const CountSeries& series, const EvaluateOptions& options)
{
    validate_series(series);
    const std::vector<std::int64_t>& counts = series.counts;
    std::size_t n = counts.size();
    std::size_t t_train = train_size(n, options.train_fraction);

    SeriesEvaluation eval;
    eval.series_id = series.id;
    eval.dates = series.dates;
    eval.n_total = n;
    eval.t_train = t_train;

    std::vector<ForecastRecord> proposed = run_series(counts, options.train_fraction,
                                                      options.forecaster);

    // Ablation: the same run read without its correction.
    std::vector<ForecastRecord> base = proposed;
    for (ForecastRecord& r : base) {
        r.x_hat = r.lambda_hat;
        r.mu_hat = 0.0;
    }

    eval.ar_model = fit_ar_auto(counts, t_train, options.lag_level);

    std::vector<std::pair<std::string, std::vector<ForecastRecord>>> runs;
    runs.emplace_back(kProposed, std::move(proposed));
    runs.emplace_back(kBase, std::move(base));
    runs.emplace_back(kNaive, naive_run(counts, options.train_fraction));
    runs.emplace_back(kAr, ar_run(counts, options.train_fraction, eval.ar_model));

    std::vector<double> actual_with_prev;
    actual_with_prev.reserve(n - t_train + 1);
    for (std::size_t i = t_train - 1; i < n; ++i)
        actual_with_prev.push_back(static_cast<double>(counts[i]));

    std::map<std::string, MetricReport> reports;
    std::map<std::string, std::vector<double>> errors;
    for (auto& [name, records] : runs) {
        std::vector<ForecastRecord> test = test_window(records);
        std::vector<double> forecasts = forecast_values(test);
        MetricReport metrics = compute_metrics(actual_with_prev, forecasts,
                                               options.pocid_divisor);
        std::vector<double> errs(forecasts.size());
        for (std::size_t i = 0; i < forecasts.size(); ++i)
            errs[i] = actual_with_prev[i + 1] - forecasts[i];
        reports[name] = metrics;
        errors[name] = std::move(errs);
        eval.models.push_back(ModelRun{name, std::move(records), metrics});
    }

    std::size_t test_len = n - t_train;
    if (test_len >= 2) {
        std::map<std::pair<std::string, std::string>, DmResult> dm_matrix;
        for (auto a = errors.begin(); a != errors.end(); ++a)
            for (auto b = std::next(a); b != errors.end(); ++b)
                dm_matrix[{a->first, b->first}] = dm_statistic(
                    a->second, b->second, options.significance, options.dm_variance);
        eval.decision = best_model_per_series(reports, dm_matrix, kProposed);
    } else {
        // A single scored step cannot carry a variance; the fallback rule
        // decides and no statistic is emitted.
        eval.decision.best_model = kProposed;
        eval.decision.result = std::string(kProposed) + "_wins";
        eval.decision.source = "fallback";
        for (const auto& [name, report] : reports)
            if (name != kProposed
                && (eval.decision.competitor.empty()
                    || report.pocid > reports.at(eval.decision.competitor).pocid))
                eval.decision.competitor = name;
    }
    return eval;
}

EvaluationReport evaluate_corpus(const std::vector<CountSeries>& corpus,
                                 const EvaluateOptions& options)
{
    validate_options(options);
    if (corpus.empty())
        throw ParseError("no series to evaluate");
    std::set<std::string> ids;
    for (const CountSeries& s : corpus)
        if (!ids.insert(s.id).second)
            throw ParseError("duplicate series id " + s.id);

    std::vector<const CountSeries*> ordered;
    ordered.reserve(corpus.size());
    for (const CountSeries& s : corpus)
        ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(),
              [](const CountSeries* a, const CountSeries* b) { return a->id < b->id; });

    EvaluationReport report;
    report.options = options;
    report.series.resize(ordered.size());

    unsigned threads = options.threads != 0 ? options.threads
                                            : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(ordered.size()));

    if (threads <= 1) {
        for (std::size_t i = 0; i < ordered.size(); ++i)
            report.series[i] = evaluate_series(*ordered[i], options);
        return report;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_lock;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ordered.size())
                return;
            try {
                report.series[i] = evaluate_series(*ordered[i], options);
            } catch (...) {
                std::lock_guard<std::mutex> hold(error_lock);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
    return report;
}

std::string report_json(const EvaluationReport& report)
{
    json root;
    json options;
    options["kappa"] = report.options.forecaster.kappa;
    options["m"] = report.options.forecaster.m;
    options["delta"] = report.options.forecaster.delta;
    options["eta"] = report.options.forecaster.eta;
    options["warmup"] = report.options.forecaster.warmup;
    options["train_fraction"] = report.options.train_fraction;
    options["pocid_divisor"] = report.options.pocid_divisor == PocidDivisor::N ? "n" : "n-1";
    options["dm_variance"] =
        report.options.dm_variance == DmVariance::Population ? "n" : "n-1";
    options["significance"] = report.options.significance;
    options["lag_level"] = report.options.lag_level;
    options["seed"] = report.options.seed;
    root["meta"] = json{{"tool", "demandcast"},
                        {"version", version_string()},
                        {"options", options}};

    json series_array = json::array();
    for (const SeriesEvaluation& s : report.series) {
        json js;
        js["id"] = s.series_id;
        js["n_total"] = s.n_total;
        js["t_train"] = s.t_train;

        json models;
        for (const ModelRun& run : s.models) {
            json jm;
            jm["metrics"] = metrics_json(run.metrics);
            json trail = json::array();
            for (const ForecastRecord& r : run.records)
                if (!r.warmup)
                    trail.push_back(record_json(r, s.dates));
            jm["forecasts"] = trail;
            models[run.model] = jm;
        }
        js["models"] = models;

        json ar;
        ar["intercept"] = s.ar_model.intercept;
        ar["ridged"] = s.ar_model.ridged;
        json lags;
        for (const auto& [lag, coef] : s.ar_model.coefficients)
            lags[std::to_string(lag)] = coef;
        ar["coefficients"] = lags;
        js["ar_model"] = ar;

        json decision;
        decision["series"] = s.series_id;
        decision["result"] = s.decision.result;
        decision["dm_statistic"] =
            s.decision.dm_statistic ? json(*s.decision.dm_statistic) : json(nullptr);
        decision["p_value"] = s.decision.p_value ? json(*s.decision.p_value) : json(nullptr);
        decision["best_model"] = s.decision.best_model;
        decision["competitor"] = s.decision.competitor;
        decision["source"] = s.decision.source;
        js["decision"] = decision;

        series_array.push_back(js);
    }
    root["series"] = series_array;
    return root.dump(2) + "\n";
}

std::string forecasts_csv(const EvaluationReport& report)
{
    std::string out = "series_id,model,time_index,date,phase,lambda_hat,mu_hat,x_hat,"
                      "observed,residual\n";
    for (const SeriesEvaluation& s : report.series) {
        for (const ModelRun& run : s.models) {
            for (const ForecastRecord& r : run.records) {
                out += s.series_id;
                out += ',';
                out += run.model;
                out += ',';
                out += std::to_string(r.time_index);
                out += ',';
                out += format_date(s.dates.at(r.time_index - 1));
                out += ',';
                out += r.warmup ? "warmup" : "test";
                out += ',';
                out += fmt_double(r.lambda_hat);
                out += ',';
                out += fmt_double(r.mu_hat);
                out += ',';
                out += fmt_double(r.x_hat);
                out += ',';
                out += r.observed ? std::to_string(*r.observed) : std::string();
                out += ',';
                out += r.residual ? fmt_double(*r.residual) : std::string();
                out += '\n';
            }
        }
    }
    return out;
}

std::string pocid_csv(const EvaluationReport& report)
{
    std::string out = "series_id,model,pocid\n";
    for (const SeriesEvaluation& s : report.series) {
        for (const ModelRun& run : s.models) {
            out += s.series_id;
            out += ',';
            out += run.model;
            out += ',';
            out += fmt_double(run.metrics.pocid);
            out += '\n';
        }
    }
    return out;
}

std::string version_string()
{
    return "0.1.0";
}

} // namespace demandcast
