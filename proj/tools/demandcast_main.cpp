#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "demandcast/evaluate.hpp"
#include "demandcast/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw demandcast::ParseError("cannot write " + path);
    out << content;
    if (!out)
        throw demandcast::ParseError("short write to " + path);
}

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CommonFlags {
    demandcast::EvaluateOptions options;
    std::string pocid_divisor = "n";
    std::string dm_variance = "n";

    void attach(CLI::App& cmd, bool with_eval)
    {
        cmd.add_option("--kappa", options.forecaster.kappa,
                       "Residual-mean prior pseudo-count (positive)");
        cmd.add_option("--m", options.forecaster.m, "Residual-mean prior value");
        cmd.add_option("--delta", options.forecaster.delta,
                       "Residual-precision prior shape (positive)");
        cmd.add_option("--eta", options.forecaster.eta,
                       "Residual-precision prior rate (positive)");
        if (with_eval) {
            cmd.add_option("--train-fraction", options.train_fraction,
                           "Training share of each series, in (0, 1)");
            cmd.add_flag_callback(
                "--no-warmup", [this] { options.forecaster.warmup = false; },
                "Skip the training window instead of replaying updates over it");
            cmd.add_option("--pocid-divisor", pocid_divisor,
                           "Direction-accuracy divisor: n (published form) or n-1")
                ->check(CLI::IsMember({"n", "n-1"}));
            cmd.add_option("--dm-variance", dm_variance,
                           "Loss-differential variance divisor: n or n-1")
                ->check(CLI::IsMember({"n", "n-1"}));
            cmd.add_option("--significance", options.significance,
                           "Two-tailed significance level for the comparison test");
            cmd.add_option("--lag-level", options.lag_level,
                           "Significance level for autoregression lag selection");
            cmd.add_option("--seed", options.seed, "Run seed echoed into the report");
            cmd.add_option("--threads", options.threads,
                           "Worker threads (0 = hardware concurrency)");
        }
    }

    demandcast::EvaluateOptions finish() const
    {
        demandcast::EvaluateOptions out = options;
        out.pocid_divisor = pocid_divisor == "n" ? demandcast::PocidDivisor::N
                                                 : demandcast::PocidDivisor::NMinus1;
        out.dm_variance = dm_variance == "n" ? demandcast::DmVariance::Population
                                             : demandcast::DmVariance::Sample;
        return out;
    }
};

int run_evaluate(const std::string& input, const std::string& report_path,
                 const std::string& forecasts_path, const std::string& pocid_path,
                 const demandcast::EvaluateOptions& options)
{
    std::vector<demandcast::CountSeries> corpus = demandcast::load_series_file(input);
    demandcast::EvaluationReport report = demandcast::evaluate_corpus(corpus, options);
    write_file(report_path, demandcast::report_json(report));
    write_file(forecasts_path, demandcast::forecasts_csv(report));
    write_file(pocid_path, demandcast::pocid_csv(report));

    for (const demandcast::SeriesEvaluation& s : report.series) {
        std::cout << s.series_id << ": " << s.decision.result;
        if (s.decision.dm_statistic)
            std::cout << " (dm " << fmt_double(*s.decision.dm_statistic) << " vs "
                      << s.decision.competitor << ")";
        std::cout << "\n";
    }
    std::cout << "report: " << report_path << "\n";
    return kExitOk;
}

int run_forecast(const std::string& input, const demandcast::EvaluateOptions& options)
{
    std::vector<demandcast::CountSeries> corpus = demandcast::load_series_file(input);
    for (const demandcast::CountSeries& series : corpus) {
        demandcast::ForecasterState state =
            demandcast::forecaster_new(series.counts.front(), options.forecaster);
        for (std::size_t i = 1; i < series.counts.size(); ++i)
            state = demandcast::forecaster_observe(state, series.counts[i]);
        demandcast::ForecastRecord next = demandcast::forecaster_predict(state);

        nlohmann::json line;
        line["series"] = series.id;
        line["time_index"] = series.counts.size() + 1;
        line["date"] = demandcast::format_date(series.dates.back() + std::chrono::days{7});
        line["lambda_hat"] = next.lambda_hat;
        line["mu_hat"] = next.mu_hat;
        line["x_hat"] = next.x_hat;
        std::cout << line.dump() << "\n";
    }
    return kExitOk;
}

struct SimulateFlags {
    std::string output;
    std::string id = "S1";
    std::size_t length = 100;
    double base_rate = 20.0;
    double drift = 1.0;
    std::vector<std::string> changepoints; // index:rate
    std::uint64_t seed = 0;
    bool append = false;
};

demandcast::SyntheticSpec to_spec(const SimulateFlags& flags)
{
    demandcast::SyntheticSpec spec;
    spec.length = flags.length;
    spec.base_rate = flags.base_rate;
    spec.drift = flags.drift;
    spec.seed = flags.seed;
    for (const std::string& text : flags.changepoints) {
        auto colon = text.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("changepoint must be index:rate, got '" + text + "'");
        demandcast::Changepoint cp;
        try {
            cp.index = std::stoull(text.substr(0, colon));
            cp.new_rate = std::stod(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("changepoint must be index:rate, got '" + text + "'");
        }
        spec.changepoints.push_back(cp);
    }
    return spec;
}

int run_simulate(const SimulateFlags& flags)
{
    demandcast::CountSeries series = demandcast::generate_synthetic(to_spec(flags), flags.id);

    std::string csv = demandcast::serialize_series_csv({series});
    if (flags.append) {
        std::ifstream existing(flags.output, std::ios::binary);
        if (existing) {
            std::string prior((std::istreambuf_iterator<char>(existing)),
                              std::istreambuf_iterator<char>());
            // Drop the new header; the existing file already carries one.
            csv = prior + csv.substr(csv.find('\n') + 1);
        }
    }
    write_file(flags.output, csv);

    double mean = 0.0;
    std::int64_t max = series.counts.front();
    std::int64_t min = series.counts.front();
    for (std::int64_t c : series.counts) {
        mean += static_cast<double>(c);
        max = std::max(max, c);
        min = std::min(min, c);
    }
    mean /= static_cast<double>(series.counts.size());
    double var = 0.0;
    for (std::int64_t c : series.counts) {
        double d = static_cast<double>(c) - mean;
        var += d * d;
    }
    var /= static_cast<double>(series.counts.size());

    std::cout << "series,size,max,min,mean,std_dev\n";
    std::cout << series.id << "," << series.counts.size() << "," << max << "," << min << ","
              << fmt_double(mean) << "," << fmt_double(std::sqrt(var)) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Sequential boosted count forecasting"};
    app.require_subcommand(1);
    app.set_version_flag("--version", demandcast::version_string());

    auto* eval_cmd = app.add_subcommand("evaluate",
                                        "Backtest all models over a series corpus");
    std::string eval_input;
    std::string report_path = "report.json";
    std::string forecasts_path = "forecasts.csv";
    std::string pocid_path = "pocid.csv";
    CommonFlags eval_flags;
    eval_cmd->add_option("--input", eval_input, "Corpus CSV (series_id,date,count)")
        ->required();
    eval_cmd->add_option("--report", report_path, "JSON report path");
    eval_cmd->add_option("--forecasts-csv", forecasts_path, "Per-step forecast CSV path");
    eval_cmd->add_option("--pocid-csv", pocid_path, "Per-series direction accuracy CSV path");
    eval_flags.attach(*eval_cmd, true);

    auto* forecast_cmd = app.add_subcommand("forecast",
                                            "Next-step forecast from full history");
    std::string forecast_input;
    CommonFlags forecast_flags;
    forecast_cmd->add_option("--input", forecast_input, "Corpus CSV (series_id,date,count)")
        ->required();
    forecast_flags.attach(*forecast_cmd, false);

    auto* sim_cmd = app.add_subcommand("simulate", "Generate a seeded synthetic series");
    SimulateFlags sim_flags;
    sim_cmd->add_option("--output", sim_flags.output, "CSV path to write")->required();
    sim_cmd->add_option("--id", sim_flags.id, "Series id");
    sim_cmd->add_option("--length", sim_flags.length, "Number of weekly observations");
    sim_cmd->add_option("--base-rate", sim_flags.base_rate, "Initial Poisson rate");
    sim_cmd->add_option("--drift", sim_flags.drift, "Multiplicative per-step rate factor");
    sim_cmd->add_option("--changepoint", sim_flags.changepoints,
                        "index:rate pair, repeatable; rate restarts there");
    sim_cmd->add_option("--seed", sim_flags.seed, "Generator seed");
    sim_cmd->add_flag("--append", sim_flags.append, "Append to an existing corpus file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (app.got_subcommand(eval_cmd))
            return run_evaluate(eval_input, report_path, forecasts_path, pocid_path,
                                eval_flags.finish());
        if (app.got_subcommand(forecast_cmd))
            return run_forecast(forecast_input, forecast_flags.finish());
        return run_simulate(sim_flags);
    } catch (const demandcast::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
