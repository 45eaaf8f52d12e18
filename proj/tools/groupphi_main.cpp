// Command-line front end: encoders -> sampling -> phi -> sweeps/statistics.
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "groupphi/ingestion.hpp"
#include "groupphi/phi_engine.hpp"
#include "groupphi/stats.hpp"
#include "groupphi/svg_plot.hpp"
#include "groupphi/sweeps.hpp"

using json = nlohmann::json;
using namespace groupphi;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Opts {
    std::vector<std::string> inputs;
    std::string output;
    std::string method;
    std::vector<int> taus;
    std::vector<double> deltas_ms;
    std::size_t goal = 100;
    std::size_t replicates = 100;
    std::uint64_t seed = 0;
    double threshold = 1.0;
    double merge_gap_ms = 400.0;
    int window_days = 30;
    std::size_t max_edits = 0; // 0 disables the outlier filter
    double break_date = 0.0;
    bool deterministic = false;
};

std::string now_iso_utc() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json config_echo(const Opts& o) {
    json c;
    c["inputs"] = o.inputs;
    c["output"] = o.output;
    if (!o.method.empty()) c["method"] = o.method;
    if (!o.taus.empty()) c["tau"] = o.taus;
    if (!o.deltas_ms.empty()) c["delta_ms"] = o.deltas_ms;
    c["goal"] = o.goal;
    c["replicates"] = o.replicates;
    c["seed"] = o.seed;
    c["threshold"] = o.threshold;
    c["merge_gap_ms"] = o.merge_gap_ms;
    c["window_days"] = o.window_days;
    if (o.max_edits) c["max_edits"] = o.max_edits;
    if (o.break_date != 0.0) c["break_date"] = o.break_date;
    return c;
}

json meta(const Opts& o, const std::string& command) {
    json m;
    m["tool"] = "groupphi";
    m["version"] = kVersion;
    m["command"] = command;
    m["seed"] = o.seed;
    m["config"] = config_echo(o);
    if (!o.deterministic) m["generated_at"] = now_iso_utc();
    return m;
}

// Comment preamble carrying version, command, and seed; the CSV readers
// skip '#' lines on the way back in.
std::string csv_preamble(const Opts& o, const std::string& command) {
    std::ostringstream s;
    s << "# groupphi " << kVersion << "\n# command=" << command
      << "\n# seed=" << o.seed << "\n# config=" << config_echo(o).dump()
      << "\n";
    if (!o.deterministic) s << "# generated_at=" << now_iso_utc() << "\n";
    return s.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open for writing: " + path);
    return out;
}

void emit_json(const Opts& o, const json& j) {
    if (o.output.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        open_out(o.output) << j.dump(2) << '\n';
    }
}

std::string require_input(const Opts& o) {
    if (o.inputs.empty()) fail(Errc::IoError, "no --input given");
    return o.inputs.front();
}

std::string with_suffix(const std::string& path, const std::string& insert,
                        const std::string& new_ext = "") {
    const std::filesystem::path p(path);
    auto stem = (p.parent_path() / p.stem()).string();
    return stem + insert + (new_ext.empty() ? p.extension().string() : new_ext);
}

// Simple numeric table: header row of column names, double cells.
std::map<std::string, std::vector<double>> read_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open for reading: " + path);
    std::string line;
    do {
        if (!std::getline(in, line))
            fail(Errc::ParseError, "table CSV is empty: " + path);
    } while (!line.empty() && line[0] == '#');
    std::vector<std::string> names;
    {
        std::stringstream h(line);
        std::string f;
        while (std::getline(h, f, ',')) {
            if (!f.empty() && f.back() == '\r') f.pop_back();
            names.push_back(f);
        }
    }
    std::map<std::string, std::vector<double>> cols;
    std::vector<std::vector<double>*> order;
    for (const auto& n : names) order.push_back(&cols[n]);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream row(line);
        std::string f;
        std::size_t i = 0;
        while (std::getline(row, f, ',')) {
            if (i >= order.size())
                fail(Errc::ParseError, "ragged table row: " + line);
            try {
                order[i]->push_back(std::stod(f));
            } catch (const std::exception&) {
                fail(Errc::ParseError, "non-numeric cell '" + f + "' in " + path);
            }
            ++i;
        }
        if (i != order.size()) fail(Errc::ParseError, "ragged table row: " + line);
    }
    return cols;
}

const std::vector<double>& table_column(
    const std::map<std::string, std::vector<double>>& t, const std::string& n,
    const std::string& path) {
    const auto it = t.find(n);
    if (it == t.end())
        fail(Errc::ParseError, "missing column '" + n + "' in " + path);
    return it->second;
}

PhiMethod parse_phi_method(const std::string& name) {
    if (name == "empirical") return PhiMethod::empirical;
    if (name == "ar" || name == "autoregressive")
        return PhiMethod::autoregressive;
    if (name == "atomic") return PhiMethod::atomic;
    fail(Errc::ParseError, "unknown phi method: " + name);
}

int first_tau(const Opts& o) { return o.taus.empty() ? 1 : o.taus.front(); }

void write_state_with_meta(const StateMatrix& m, const Opts& o,
                           const std::string& command,
                           const std::string& path) {
    auto out = open_out(path);
    out << csv_preamble(o, command);
    write_state_csv(m, out);
}

// --- encode ----------------------------------------------------------------

void run_encode_turns(const Opts& o) {
    const auto tracks = read_volume_csv_file(require_input(o));
    TurnEncodingConfig cfg;
    cfg.threshold = o.threshold;
    cfg.merge_gap_ms = o.merge_gap_ms;
    const auto m = encode_turns(tracks, cfg);
    write_state_with_meta(m, o, "encode turns", o.output);
}

void run_encode_chat(const Opts& o) {
    std::vector<std::string> roster;
    const auto lines = read_chat_csv_file(require_input(o), &roster);
    const auto m = encode_chat(lines, roster);
    write_state_with_meta(m, o, "encode chat", o.output);
}

void run_encode_edits(const Opts& o) {
    const auto edits = read_edit_csv_file(require_input(o));
    std::map<std::string, std::vector<EditRecord>> by_article;
    for (const auto& e : edits) by_article[e.article].push_back(e);

    json files = json::array();
    std::size_t k = 0;
    for (const auto& [article, rec] : by_article) {
        for (const auto& w : extract_quality_windows(rec, o.window_days)) {
            if (o.max_edits && w.edits.size() > o.max_edits) continue;
            const auto m = encode_edits(w);
            const auto path = with_suffix(o.output, "_w" + std::to_string(k));
            write_state_with_meta(m, o, "encode edits", path);
            files.push_back({{"file", path},
                             {"article", article},
                             {"quality", quality_name(w.new_quality)},
                             {"editors", w.editors.size()},
                             {"edits", w.edits.size()}});
            ++k;
        }
    }
    json j;
    j["meta"] = meta(o, "encode edits");
    j["windows"] = files;
    std::cout << j.dump(2) << '\n';
}

void run_encode_packets(const Opts& o) {
    auto packets = read_packet_csv_file(require_input(o));
    if (packets.empty()) fail(Errc::ParseError, "no packets in input");
    std::int64_t lo = packets.front().timestamp_us;
    std::int64_t hi = lo;
    for (const auto& p : packets) {
        lo = std::min(lo, p.timestamp_us);
        hi = std::max(hi, p.timestamp_us);
    }
    for (auto& p : packets) p.timestamp_us -= lo;
    const double span_ms = static_cast<double>(hi - lo) / 1000.0 + 1.0;
    const auto graph = build_packet_graph(packets);
    const double delta = o.deltas_ms.empty() ? 100.0 : o.deltas_ms.front();
    const auto m = encode_packets(packets, graph.labels(), delta, span_ms);
    write_state_with_meta(m, o, "encode packets", o.output);
}

// --- phi -------------------------------------------------------------------

void run_phi(const Opts& o, PhiMethod method, const std::string& command) {
    const auto states = read_state_csv_file(require_input(o));
    const auto r = stabilized_phi(states, first_tau(o), method);
    json j;
    j["meta"] = meta(o, command);
    j["value"] = r.value;
    j["method"] = phi_method_name(r.method);
    j["partition"] = r.partition.to_string();
    j["tau"] = r.tau;
    j["dropped_nodes"] = r.dropped_nodes;
    j["retries"] = r.retries;
    j["valid"] = r.valid;
    emit_json(o, j);
}

// --- sample ----------------------------------------------------------------

void run_sample(const Opts& o) {
    const auto packets = read_packet_csv_file(require_input(o));
    const auto graph = build_packet_graph(packets);
    SampleConfig cfg;
    cfg.method =
        o.method.empty() ? SampleMethod::random_walk : parse_sample_method(o.method);
    cfg.goal = o.goal;
    cfg.seed = o.seed;
    const auto reps = replicate_samples(graph, cfg, o.replicates);
    json files = json::array();
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto path =
            with_suffix(o.output, "_r" + std::to_string(i), ".txt");
        auto out = open_out(path);
        out << csv_preamble(o, "sample");
        for (std::size_t node : reps[i]) out << graph.labels()[node] << '\n';
        files.push_back(path);
    }
    json j;
    j["meta"] = meta(o, "sample");
    j["replicates"] = files;
    std::cout << j.dump(2) << '\n';
}

// --- sweep -----------------------------------------------------------------

void write_sweep_outputs(const Opts& o, const std::string& command,
                         const SweepResult& sweep, const ChartLabels& labels) {
    {
        auto out = open_out(o.output);
        out << csv_preamble(o, command);
        write_sweep_csv(sweep, out);
    }
    write_line_chart_svg(with_suffix(o.output, "", ".svg"), labels,
                         sweep.parameter_values, sweep.mean_phi,
                         sweep.stderr_phi);
    json j;
    j["meta"] = meta(o, command);
    j["argmax"] = sweep.argmax;
    std::cout << j.dump(2) << '\n';
}

void run_sweep_tau(const Opts& o) {
    std::vector<StateMatrix> groups;
    if (o.inputs.empty()) fail(Errc::IoError, "no --input given");
    for (const auto& path : o.inputs)
        groups.push_back(read_state_csv_file(path));
    std::vector<int> taus = o.taus;
    if (taus.empty())
        for (int t = 1; t <= 30; ++t) taus.push_back(t);
    const auto method =
        o.method.empty() ? PhiMethod::empirical : parse_phi_method(o.method);
    const auto sweep = sweep_time_delay(groups, taus, method);
    write_sweep_outputs(o, "sweep tau", sweep,
                        {"phi vs time delay", "tau (steps)", "phi (bits)"});
}

void run_sweep_delta(const Opts& o) {
    const auto packets = read_packet_csv_file(require_input(o));
    SampleConfig cfg;
    cfg.method =
        o.method.empty() ? SampleMethod::random_walk : parse_sample_method(o.method);
    cfg.goal = o.goal;
    cfg.seed = o.seed;
    std::vector<double> deltas = o.deltas_ms;
    if (deltas.empty()) deltas = {25.0, 50.0, 100.0, 200.0, 400.0};
    const auto sweep = sweep_step_size(packets, cfg, deltas, o.replicates);
    write_sweep_outputs(o, "sweep delta", sweep,
                        {"phi vs bin width", "delta (ms)", "phi (bits)"});
}

// --- stats -----------------------------------------------------------------

void run_stats_corr(const Opts& o, bool kendall) {
    const auto path = require_input(o);
    const auto table = read_table(path);
    const auto& x = table_column(table, "x", path);
    const auto& y = table_column(table, "y", path);
    json j;
    j["meta"] = meta(o, kendall ? "stats tau" : "stats corr");
    if (kendall)
        j["tau"] = kendall_tau(x, y);
    else
        j["r"] = pearson_r(x, y);
    j["n"] = x.size();
    emit_json(o, j);
}

void run_stats_wilcoxon(const Opts& o) {
    // two columns a and b; unequal lengths supported via NaN padding
    const auto path = require_input(o);
    const auto table = read_table(path);
    auto strip = [](const std::vector<double>& v) {
        std::vector<double> out;
        for (double x : v)
            if (std::isfinite(x)) out.push_back(x);
        return out;
    };
    const auto a = strip(table_column(table, "a", path));
    const auto b = strip(table_column(table, "b", path));
    json j;
    j["meta"] = meta(o, "stats wilcoxon");
    j["z"] = wilcoxon_z(a, b);
    j["n_a"] = a.size();
    j["n_b"] = b.size();
    emit_json(o, j);
}

void run_stats_ols(const Opts& o) {
    // column y is the response; every other column is a predictor, with an
    // intercept prepended automatically
    const auto path = require_input(o);
    const auto table = read_table(path);
    const auto& yv = table_column(table, "y", path);
    const auto n = static_cast<Eigen::Index>(yv.size());
    std::vector<std::string> predictors;
    for (const auto& [name, col] : table)
        if (name != "y") predictors.push_back(name);
    Eigen::MatrixXd design(n, 1 + static_cast<Eigen::Index>(predictors.size()));
    design.col(0).setOnes();
    for (std::size_t p = 0; p < predictors.size(); ++p) {
        const auto& col = table.at(predictors[p]);
        for (Eigen::Index i = 0; i < n; ++i)
            design(i, static_cast<Eigen::Index>(p) + 1) = col[i];
    }
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = yv[i];
    const auto fit = ols_fit(design, y);
    json j;
    j["meta"] = meta(o, "stats ols");
    json coeffs, ses;
    coeffs["intercept"] = fit.coefficients(0);
    ses["intercept"] = fit.standard_errors(0);
    for (std::size_t p = 0; p < predictors.size(); ++p) {
        coeffs[predictors[p]] = fit.coefficients(static_cast<Eigen::Index>(p) + 1);
        ses[predictors[p]] =
            fit.standard_errors(static_cast<Eigen::Index>(p) + 1);
    }
    j["coefficients"] = coeffs;
    j["standard_errors"] = ses;
    j["r_squared_adjusted"] = fit.r_squared_adjusted;
    emit_json(o, j);
}

void run_stats_adjust(const Opts& o) {
    const auto path = require_input(o);
    const auto table = read_table(path);
    const auto& dates = table_column(table, "date", path);
    const auto& phis = table_column(table, "phi", path);
    const auto adj = hardware_adjust(dates, phis, o.break_date);
    json j;
    j["meta"] = meta(o, "stats adjust");
    j["step_coefficient"] = adj.step_coefficient;
    j["trend_coefficient"] = adj.fit.coefficients(1);
    j["adjusted"] = adj.adjusted;
    emit_json(o, j);
}

// --- pipelines -------------------------------------------------------------

std::string in_dir(const Opts& o, const std::string& name) {
    std::filesystem::create_directories(o.output);
    return (std::filesystem::path(o.output) / name).string();
}

void run_pipeline_study1(const Opts& o) {
    const auto tracks = read_volume_csv_file(require_input(o));
    TurnEncodingConfig cfg;
    cfg.threshold = o.threshold;
    cfg.merge_gap_ms = o.merge_gap_ms;
    const auto m = encode_turns(tracks, cfg);
    write_state_with_meta(m, o, "pipeline study1", in_dir(o, "turns.csv"));

    std::vector<int> taus = o.taus;
    if (taus.empty())
        for (int t = 1; t <= 30; ++t) taus.push_back(t);
    const std::vector<StateMatrix> groups{m};
    const auto sweep = sweep_time_delay(groups, taus, PhiMethod::empirical);
    {
        auto out = open_out(in_dir(o, "tau_sweep.csv"));
        out << csv_preamble(o, "pipeline study1");
        write_sweep_csv(sweep, out);
    }
    write_line_chart_svg(in_dir(o, "tau_sweep.svg"),
                         {"phi vs time delay", "tau (steps)", "phi (bits)"},
                         sweep.parameter_values, sweep.mean_phi,
                         sweep.stderr_phi);
    json j;
    j["meta"] = meta(o, "pipeline study1");
    j["argmax_tau"] = sweep.argmax;
    open_out(in_dir(o, "summary.json")) << j.dump(2) << '\n';
}

void run_pipeline_study2(const Opts& o) {
    const auto edits = read_edit_csv_file(require_input(o));
    std::map<std::string, std::vector<EditRecord>> by_article;
    for (const auto& e : edits) by_article[e.article].push_back(e);

    std::vector<double> atomic_phi, bipartition_phi, quality_rank;
    json rows = json::array();
    for (const auto& [article, rec] : by_article) {
        for (const auto& w : extract_quality_windows(rec, o.window_days)) {
            if (o.max_edits && w.edits.size() > o.max_edits) continue;
            const auto m = encode_edits(w);
            double atom = 0.0, bip = 0.0;
            try {
                atom = stabilized_phi(m, first_tau(o), PhiMethod::atomic).value;
                bip = stabilized_phi(m, first_tau(o),
                                     PhiMethod::autoregressive).value;
            } catch (const Error&) {
                continue; // window too degenerate to stabilize
            }
            atomic_phi.push_back(atom);
            bipartition_phi.push_back(bip);
            quality_rank.push_back(static_cast<double>(w.new_quality));
            rows.push_back({{"article", article},
                            {"quality", quality_name(w.new_quality)},
                            {"atomic_phi", atom},
                            {"bipartition_phi", bip},
                            {"editors", w.editors.size()}});
        }
    }
    json j;
    j["meta"] = meta(o, "pipeline study2");
    j["windows"] = rows;
    if (atomic_phi.size() >= 3) {
        j["atomic_vs_bipartition_r"] = pearson_r(atomic_phi, bipartition_phi);
        j["quality_kendall_tau"] = kendall_tau(atomic_phi, quality_rank);
    }
    open_out(in_dir(o, "study2.json")) << j.dump(2) << '\n';
}

void run_pipeline_study3(const Opts& o) {
    const auto packets = read_packet_csv_file(require_input(o));
    SampleConfig cfg;
    cfg.method =
        o.method.empty() ? SampleMethod::random_walk : parse_sample_method(o.method);
    cfg.goal = o.goal;
    cfg.seed = o.seed;
    std::vector<double> deltas = o.deltas_ms;
    if (deltas.empty()) deltas = {25.0, 50.0, 100.0, 200.0, 400.0};
    const auto sweep = sweep_step_size(packets, cfg, deltas, o.replicates);
    {
        auto out = open_out(in_dir(o, "delta_sweep.csv"));
        out << csv_preamble(o, "pipeline study3");
        write_sweep_csv(sweep, out);
    }
    write_line_chart_svg(in_dir(o, "delta_sweep.svg"),
                         {"phi vs bin width", "delta (ms)", "phi (bits)"},
                         sweep.parameter_values, sweep.mean_phi,
                         sweep.stderr_phi);
    json j;
    j["meta"] = meta(o, "pipeline study3");
    j["argmax_delta_ms"] = sweep.argmax;
    open_out(in_dir(o, "summary.json")) << j.dump(2) << '\n';
}

// --- config file and dispatch ----------------------------------------------

// Flat key=value file applied as defaults; command-line flags override.
void apply_config_file(const std::string& path, Opts& o) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open config file: " + path);
    std::string line;
    auto split_list = [](const std::string& v) {
        std::vector<std::string> out;
        std::stringstream s(v);
        std::string f;
        while (std::getline(s, f, ',')) out.push_back(f);
        return out;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(Errc::ParseError, "config line is not key=value: " + line);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "input") {
                o.inputs = split_list(value);
            } else if (key == "output") {
                o.output = value;
            } else if (key == "method") {
                o.method = value;
            } else if (key == "tau") {
                o.taus.clear();
                for (const auto& v : split_list(value))
                    o.taus.push_back(std::stoi(v));
            } else if (key == "delta-ms") {
                o.deltas_ms.clear();
                for (const auto& v : split_list(value))
                    o.deltas_ms.push_back(std::stod(v));
            } else if (key == "goal") {
                o.goal = std::stoul(value);
            } else if (key == "replicates") {
                o.replicates = std::stoul(value);
            } else if (key == "seed") {
                o.seed = std::stoull(value);
            } else if (key == "threshold") {
                o.threshold = std::stod(value);
            } else if (key == "merge-gap-ms") {
                o.merge_gap_ms = std::stod(value);
            } else if (key == "window-days") {
                o.window_days = std::stoi(value);
            } else if (key == "max-edits") {
                o.max_edits = std::stoul(value);
            } else if (key == "break-date") {
                o.break_date = std::stod(value);
            } else if (key == "deterministic") {
                o.deterministic = value == "1" || value == "true";
            } else {
                fail(Errc::ParseError, "unknown config key: " + key);
            }
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(Errc::ParseError, "bad config value for " + key + ": " + value);
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    Opts opts;
    std::string config_path;

    // the config file must be applied before CLI11 assigns flag values, so
    // it is located with a pre-scan
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    try {
        if (!config_path.empty()) apply_config_file(config_path, opts);
    } catch (const Error& e) {
        json j;
        j["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
        std::cout << j.dump(2) << '\n';
        return e.code() == Errc::IoError || e.code() == Errc::ParseError ? 2 : 1;
    }

    CLI::App app{"integrated-information analysis of group interaction logs"};
    app.set_version_flag("--version", kVersion);
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--input", opts.inputs, "input file(s)");
    app.add_option("--output", opts.output, "output file or directory");
    app.add_option("--method", opts.method, "phi or sampling method");
    app.add_option("--tau", opts.taus, "time delay grid (steps)");
    app.add_option("--delta-ms", opts.deltas_ms, "bin width grid (ms)");
    app.add_option("--goal", opts.goal, "subsample size");
    app.add_option("--replicates", opts.replicates, "replicate count");
    app.add_option("--seed", opts.seed, "random seed");
    app.add_option("--threshold", opts.threshold, "speaking volume threshold");
    app.add_option("--merge-gap-ms", opts.merge_gap_ms, "turn merge gap (ms)");
    app.add_option("--window-days", opts.window_days, "edit window length");
    app.add_option("--max-edits", opts.max_edits,
                   "discard windows with more edits than this (0 = keep all)");
    app.add_option("--break-date", opts.break_date, "hardware change date");
    app.add_flag("--deterministic", opts.deterministic,
                 "suppress timestamps for byte-identical outputs");

    struct Leaf {
        CLI::App* cmd;
        void (*run)(const Opts&);
    };
    std::vector<Leaf> leaves;
    auto add_group = [&](const std::string& name, const std::string& desc) {
        auto* g = app.add_subcommand(name, desc);
        g->require_subcommand(1);
        g->fallthrough();
        return g;
    };
    auto add_leaf = [&](CLI::App* group, const std::string& name,
                        const std::string& desc, void (*run)(const Opts&)) {
        auto* c = group->add_subcommand(name, desc);
        c->fallthrough();
        leaves.push_back({c, run});
    };

    auto* encode = add_group("encode", "event logs to binary state matrices");
    add_leaf(encode, "turns", "speaking-turn volumes", run_encode_turns);
    add_leaf(encode, "chat", "chat transcript", run_encode_chat);
    add_leaf(encode, "edits", "article edit history", run_encode_edits);
    add_leaf(encode, "packets", "packet trace", run_encode_packets);

    auto* phi = add_group("phi", "integrated information of a state matrix");
    add_leaf(phi, "empirical", "discrete phi at the minimum bipartition",
             [](const Opts& o) { run_phi(o, PhiMethod::empirical, "phi empirical"); });
    add_leaf(phi, "ar", "auto-regressive phi at the minimum bipartition",
             [](const Opts& o) {
                 run_phi(o, PhiMethod::autoregressive, "phi ar");
             });
    add_leaf(phi, "atomic", "auto-regressive phi over singleton parts",
             [](const Opts& o) { run_phi(o, PhiMethod::atomic, "phi atomic"); });

    {
        auto* c = app.add_subcommand("sample", "node subsamples of a packet graph");
        c->fallthrough();
        leaves.push_back({c, run_sample});
    }

    auto* sweep = add_group("sweep", "parameter sweeps");
    add_leaf(sweep, "tau", "time delay sweep", run_sweep_tau);
    add_leaf(sweep, "delta", "bin width sweep", run_sweep_delta);

    auto* stats = add_group("stats", "supporting statistics");
    add_leaf(stats, "corr", "Pearson correlation of columns x,y",
             [](const Opts& o) { run_stats_corr(o, false); });
    add_leaf(stats, "tau", "Kendall tau of columns x,y",
             [](const Opts& o) { run_stats_corr(o, true); });
    add_leaf(stats, "wilcoxon", "rank-sum z of columns a,b", run_stats_wilcoxon);
    add_leaf(stats, "ols", "least squares of y on the remaining columns",
             run_stats_ols);
    add_leaf(stats, "adjust", "hardware step adjustment of date,phi",
             run_stats_adjust);

    auto* pipeline = add_group("pipeline", "end-to-end study runs");
    add_leaf(pipeline, "study1", "speaking turns to tau sweep",
             run_pipeline_study1);
    add_leaf(pipeline, "study2", "edit windows to phi and quality stats",
             run_pipeline_study2);
    add_leaf(pipeline, "study3", "packet trace to delta sweep",
             run_pipeline_study3);

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        for (const auto& leaf : leaves)
            if (leaf.cmd->parsed()) {
                leaf.run(opts);
                return 0;
            }
        std::cerr << "no command selected\n";
        return 1;
    } catch (const Error& e) {
        json j;
        j["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
        std::cout << j.dump(2) << '\n';
        return e.code() == Errc::IoError || e.code() == Errc::ParseError ? 2 : 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = {{"code", "Unexpected"}, {"message", e.what()}};
        std::cout << j.dump(2) << '\n';
        return 1;
    }
}
