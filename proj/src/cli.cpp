#include "diana/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "diana/errors.hpp"
#include "diana/metrics.hpp"
#include "diana/scenario.hpp"
#include "diana/simulation.hpp"

namespace diana::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::io: return exit_io;
        case ErrorKind::usage: return exit_usage;
        case ErrorKind::validation:
        case ErrorKind::invalid_link:
        case ErrorKind::invalid_site: return exit_validation;
        default: return exit_simulation;
    }
}

void print_diags(const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const Diagnostic& d : diags) err << "error: " << d.path << ": " << d.message << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorKind::io, "cannot open scenario file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) raise(ErrorKind::io, "cannot read scenario file " + path);
    return buffer.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) raise(ErrorKind::io, "cannot create output directory " + dir.string() + ": " +
                                     ec.message());
}

std::ofstream open_out(const fs::path& path, bool overwrite) {
    if (!overwrite && fs::exists(path))
        raise(ErrorKind::io, "refusing to overwrite " + path.string() + "; pass --overwrite");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::io, "cannot write " + path.string());
    return out;
}

json summary_json(const MetricsSummary& m) {
    json j;
    j["submitted"] = m.submitted;
    j["completed"] = m.completed;
    j["throughput"] = m.throughput;
    j["mean_turnaround"] = m.mean_turnaround;
    j["median_turnaround"] = m.median_turnaround;
    j["p95_turnaround"] = m.p95_turnaround;
    j["mean_waiting"] = m.mean_waiting;
    j["mean_response"] = m.mean_response;
    j["jobs_local"] = m.jobs_local;
    j["jobs_migrated"] = m.jobs_migrated;
    j["littles_residual"] = m.littles_residual;
    j["makespan"] = m.makespan;
    json util = json::object();
    for (const auto& [site, value] : m.cpu_utilization) util[site] = value;
    j["cpu_utilization"] = std::move(util);
    return j;
}

json table_json(const SeriesTable& table) {
    json j;
    j["columns"] = table.columns;
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r = json::array();
        for (double v : row) {
            if (std::isnan(v))
                r.push_back(nullptr);
            else
                r.push_back(v);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

void write_summary_csv(const MetricsSummary& m, std::ostream& os) {
    os << "metric,value\n";
    os << "submitted," << m.submitted << '\n';
    os << "completed," << m.completed << '\n';
    os << "throughput," << format_double(m.throughput) << '\n';
    os << "mean_turnaround," << format_double(m.mean_turnaround) << '\n';
    os << "median_turnaround," << format_double(m.median_turnaround) << '\n';
    os << "p95_turnaround," << format_double(m.p95_turnaround) << '\n';
    os << "mean_waiting," << format_double(m.mean_waiting) << '\n';
    os << "mean_response," << format_double(m.mean_response) << '\n';
    os << "jobs_local," << m.jobs_local << '\n';
    os << "jobs_migrated," << m.jobs_migrated << '\n';
    os << "littles_residual," << format_double(m.littles_residual) << '\n';
    os << "makespan," << format_double(m.makespan) << '\n';
    for (const auto& [site, value] : m.cpu_utilization)
        os << "cpu_utilization." << site << ',' << format_double(value) << '\n';
}

void print_summary(const MetricsSummary& m, const std::string& digest, std::ostream& out) {
    out << "scenario digest   " << digest << "\n";
    out << "jobs              " << m.completed << " completed / " << m.submitted << " submitted ("
        << m.jobs_migrated << " migrated)\n";
    out << "makespan          " << format_double(m.makespan) << " s\n";
    out << "throughput        " << format_double(m.throughput) << " jobs/s\n";
    out << "turnaround        mean " << format_double(m.mean_turnaround) << " s, median "
        << format_double(m.median_turnaround) << " s, p95 " << format_double(m.p95_turnaround)
        << " s\n";
    out << "waiting           mean " << format_double(m.mean_waiting) << " s\n";
    out << "response          mean " << format_double(m.mean_response) << " s\n";
    out << "littles residual  " << format_double(m.littles_residual) << "\n";
    for (const auto& [site, value] : m.cpu_utilization)
        out << "utilization." << site << "  " << format_double(value) << "\n";
}

struct RunArtifacts {
    std::string digest;
    MetricsSummary summary;
    SeriesTable fig4;
};

RunArtifacts run_and_write(const Scenario& sc, const Options& opt, const fs::path& dir,
                           std::ostream& err) {
    std::string digest = scenario_digest(sc);
    EventLog log = run(sc);
    if (opt.verbosity >= 2)
        for (const std::string& note : sc.warnings) err << "warning: " << note << "\n";

    MetricsSummary summary = compute_metrics(log);
    double span = log.end_time - log.start_time;
    double bucket = opt.bucket > 0.0 ? opt.bucket : (span > 0.0 ? span / 40.0 : 1.0);
    SeriesTable fig4 = series(log, SeriesKind::local_vs_migrated_over_time, bucket);

    ensure_dir(dir);
    if (opt.write_csv) {
        {
            auto os = open_out(dir / "events.csv", opt.overwrite);
            write_events_csv(log, os);
        }
        {
            auto os = open_out(dir / "summary.csv", opt.overwrite);
            write_summary_csv(summary, os);
        }
        {
            auto os = open_out(dir / "local_vs_migrated.csv", opt.overwrite);
            write_series_csv(fig4, os);
        }
    }
    if (opt.write_json) {
        {
            auto os = open_out(dir / "events.json", opt.overwrite);
            write_events_json(log, digest, os);
        }
        {
            auto os = open_out(dir / "results.json", opt.overwrite);
            json root;
            root["scenario_digest"] = digest;
            root["summary"] = summary_json(summary);
            root["series"]["local_vs_migrated"] = table_json(fig4);
            os << root.dump(2) << '\n';
        }
    }
    return RunArtifacts{std::move(digest), std::move(summary), std::move(fig4)};
}

std::string sanitize(const std::string& raw) {
    std::string out;
    for (char c : raw) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                  c == '.' || c == '_' || c == '-' || c == '=';
        out += ok ? c : '_';
    }
    return out;
}

}  // namespace

SweepSpec parse_sweep(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        raise(ErrorKind::usage, "sweep must look like param.path=value1,value2,...");
    SweepSpec spec;
    spec.param = text.substr(0, eq);
    std::string rest = text.substr(eq + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
        std::size_t comma = rest.find(',', start);
        std::string value = rest.substr(start, comma - start);
        if (value.empty()) raise(ErrorKind::usage, "sweep has an empty value");
        spec.values.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (spec.values.empty()) raise(ErrorKind::usage, "sweep needs at least one value");
    return spec;
}

std::string resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("DIANA_SCHED_OUT"); env && *env) return env;
    return "out";
}

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
    try {
        std::vector<Diagnostic> diags;
        Scenario sc = load_scenario(opt.scenario_path, diags);
        if (!diags.empty()) {
            print_diags(diags, err);
            err << opt.scenario_path << ": " << diags.size() << " problem"
                << (diags.size() == 1 ? "" : "s") << " found\n";
            return exit_validation;
        }
        for (const std::string& note : sc.warnings) err << "warning: " << note << "\n";
        if (opt.verbosity >= 1)
            out << opt.scenario_path << ": OK (digest " << scenario_digest(sc) << ")\n";
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return code_for(e.kind());
    }
}

int cmd_run(const Options& opt, std::ostream& out, std::ostream& err) {
    try {
        std::vector<Diagnostic> diags;
        Scenario sc = load_scenario(opt.scenario_path, diags);
        if (!diags.empty()) {
            print_diags(diags, err);
            return exit_validation;
        }
        if (opt.seed) sc.seed = *opt.seed;
        RunArtifacts result = run_and_write(sc, opt, opt.out_dir, err);
        if (opt.verbosity >= 1) {
            print_summary(result.summary, result.digest, out);
            out << "outputs in " << opt.out_dir << "\n";
        }
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return code_for(e.kind());
    }
}

int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err) {
    try {
        if (!opt.sweep) raise(ErrorKind::usage, "compare needs --sweep param.path=v1,v2,...");
        const SweepSpec& sweep = *opt.sweep;
        std::string base_text = slurp(opt.scenario_path);

        std::vector<std::pair<std::string, MetricsSummary>> rows;
        json variants = json::array();
        for (const std::string& value : sweep.values) {
            std::string label = value;
            Scenario sc;
            try {
                std::string text = apply_override_text(base_text, sweep.param, value);
                std::vector<Diagnostic> diags;
                sc = scenario_from_json_text(text, diags);
                if (!diags.empty()) {
                    err << "variant " << sweep.param << "=" << label << ":\n";
                    print_diags(diags, err);
                    return exit_validation;
                }
                if (opt.seed) sc.seed = *opt.seed;
                fs::path dir = fs::path(opt.out_dir) / sanitize(sweep.param + "=" + label);
                RunArtifacts result = run_and_write(sc, opt, dir, err);
                json v;
                v["label"] = label;
                v["scenario_digest"] = result.digest;
                v["summary"] = summary_json(result.summary);
                variants.push_back(std::move(v));
                rows.emplace_back(label, result.summary);
            } catch (const Error& e) {
                raise(e.kind(),
                      "variant " + sweep.param + "=" + label + ": " + std::string(e.what()));
            }
        }

        SeriesTable table = exec_time_table(rows);
        ensure_dir(opt.out_dir);
        if (opt.write_csv) {
            auto os = open_out(fs::path(opt.out_dir) / "exec_time_vs_jobs.csv", opt.overwrite);
            write_series_csv(table, os);
        }
        if (opt.write_json) {
            auto os = open_out(fs::path(opt.out_dir) / "comparison.json", opt.overwrite);
            json root;
            root["sweep"] = sweep.param;
            root["variants"] = std::move(variants);
            root["exec_time_vs_jobs"] = table_json(table);
            os << root.dump(2) << '\n';
        }
        if (opt.verbosity >= 1) {
            for (std::size_t i = 0; i < table.columns.size(); ++i)
                out << (i ? "," : "") << table.columns[i];
            out << "\n";
            for (const auto& row : table.rows) {
                for (std::size_t i = 0; i < row.size(); ++i)
                    out << (i ? "," : "") << format_double(row[i]);
                out << "\n";
            }
            out << "outputs in " << opt.out_dir << "\n";
        }
        return exit_ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return code_for(e.kind());
    }
}

}  // namespace diana::cli
