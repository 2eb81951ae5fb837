// Command-line surface for the MIDI dependence-index library.
//
// Subcommands: compute, generate, power, screen, bench.
// Exit codes: 0 ok, 2 input error, 3 degenerate data.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/resource.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "midi/midi.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr std::size_t kDcorGuardLimit = 20000;

using nlohmann::json;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------
// helpers

std::vector<std::string> split_list(const std::string& csv)
{
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::size_t column_index(const midi::NumericTable& table, const std::string& ref)
{
    for (std::size_t c = 0; c < table.names.size(); ++c)
        if (table.names[c] == ref)
            return c;
    // fall back to a 1-based numeric index
    try {
        const long idx = std::stol(ref);
        if (idx >= 1 && static_cast<std::size_t>(idx) <= table.column_count())
            return static_cast<std::size_t>(idx - 1);
    } catch (...) {
    }
    throw InputError("column '" + ref + "' not found");
}

void require_no_missing(const std::vector<double>& column, const std::string& name)
{
    for (std::size_t i = 0; i < column.size(); ++i)
        if (std::isnan(column[i]))
            throw InputError("missing value in column '" + name + "' at data row "
                             + std::to_string(i + 1));
}

std::ostream& open_output(std::ofstream& file, const std::string& path)
{
    if (path.empty() || path == "-")
        return std::cout;
    file.open(path);
    if (!file)
        throw InputError("cannot open '" + path + "' for writing");
    return file;
}

double peak_rss_mb()
{
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<double>(usage.ru_maxrss) / 1024.0; // Linux: KiB
}

json report_to_json(const midi::EstimateReport& r)
{
    return json{{"mi_hat", r.mi_hat},
                {"hx_hat", r.hx_hat},
                {"hy_hat", r.hy_hat},
                {"midi_x", r.midi_x},
                {"midi_y", r.midi_y},
                {"midi", r.midi},
                {"degenerate_x", r.degenerate_x},
                {"degenerate_y", r.degenerate_y},
                {"c", r.config_used.c}};
}

// ---------------------------------------------------------------------
// compute

int cmd_compute(const std::string& input, const std::string& x_col,
                const std::string& y_col, const std::string& measures_csv,
                double c, const std::string& out_format, const std::string& out_path)
{
    const auto table = midi::read_numeric_csv_file(input);
    if (table.column_count() < 2)
        throw InputError("need at least two numeric columns");
    const std::size_t xi = x_col.empty() ? 0 : column_index(table, x_col);
    const std::size_t yi = y_col.empty() ? 1 : column_index(table, y_col);
    const auto& xs = table.columns[xi];
    const auto& ys = table.columns[yi];
    require_no_missing(xs, table.names[xi]);
    require_no_missing(ys, table.names[yi]);

    json out{{"schema", 1},
             {"input", input},
             {"n", xs.size()},
             {"x_col", table.names[xi]},
             {"y_col", table.names[yi]},
             {"measures", json::object()}};

    for (const auto& m : split_list(measures_csv)) {
        if (m == "midi") {
            out["measures"]["midi"] = report_to_json(midi::estimate(xs, ys, {c}));
        } else if (m == "dcor") {
            const auto r = midi::distance_correlation(xs, ys);
            out["measures"]["dcor"] = json{{"dcor", r.dcor},
                                           {"dcov_sq", r.dcov_sq},
                                           {"dvar_x", r.dvar_x},
                                           {"dvar_y", r.dvar_y}};
        } else if (m == "pearson") {
            out["measures"]["pearson"] = json{{"r", midi::pearson(xs, ys)}};
        } else if (m == "spearman") {
            out["measures"]["spearman"] = json{{"rho", midi::spearman(xs, ys)}};
        } else {
            throw InputError("unknown measure '" + m + "'");
        }
    }

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    if (out_format == "json") {
        os << out.dump(2) << '\n';
    } else {
        os << "n: " << xs.size() << "\n";
        if (out["measures"].contains("midi")) {
            const auto& mj = out["measures"]["midi"];
            os << "midi:     " << mj["midi"].get<double>()
               << (mj["degenerate_x"].get<bool>() && mj["degenerate_y"].get<bool>()
                       ? "  (degenerate)"
                       : "")
               << "\n"
               << "  midi_x: " << mj["midi_x"].get<double>()
               << "  midi_y: " << mj["midi_y"].get<double>() << "\n"
               << "  I:      " << mj["mi_hat"].get<double>()
               << "  Hx: " << mj["hx_hat"].get<double>()
               << "  Hy: " << mj["hy_hat"].get<double>() << "  (nats)\n";
        }
        if (out["measures"].contains("dcor"))
            os << "dcor:     " << out["measures"]["dcor"]["dcor"].get<double>() << "\n";
        if (out["measures"].contains("pearson"))
            os << "pearson:  " << out["measures"]["pearson"]["r"].get<double>() << "\n";
        if (out["measures"].contains("spearman"))
            os << "spearman: " << out["measures"]["spearman"]["rho"].get<double>() << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------
// generate

int cmd_generate(const std::string& kind_name, std::size_t n, std::uint64_t seed,
                 double rho, std::optional<double> noise_uniform_var,
                 std::optional<double> noise_gaussian_sigma, const std::string& out_path)
{
    const auto kind = midi::function_from_string(kind_name);
    if (!kind)
        throw InputError("unknown function '" + kind_name + "'");

    midi::SampleSet sample = *kind == midi::FunctionKind::normal_uncorrelated && rho != 0.0
                                 ? midi::generate_bivariate_normal(n, rho, seed)
                                 : midi::generate(*kind, n, seed);
    if (noise_uniform_var)
        sample.ys = midi::add_noise(
            sample.ys, {midi::NoiseSpec::Kind::uniform_variance, *noise_uniform_var, seed});
    else if (noise_gaussian_sigma)
        sample.ys = midi::add_noise(
            sample.ys, {midi::NoiseSpec::Kind::gaussian_sigma, *noise_gaussian_sigma, seed});

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    midi::write_xy_csv(os, sample.xs, sample.ys);
    return kExitOk;
}

// ---------------------------------------------------------------------
// power

int cmd_power(const std::string& measure_name, const std::string& function_name,
              std::size_t reps, std::size_t n, std::uint64_t seed, double c,
              unsigned jobs, const std::string& out_path, const std::string& json_path)
{
    const auto measure = midi::measure_from_string(measure_name);
    if (!measure)
        throw InputError("unknown measure '" + measure_name + "'");
    const auto function = midi::function_from_string(function_name);
    if (!function)
        throw InputError("unknown function '" + function_name + "'");
    if (!midi::power_noise_scale(*function))
        throw InputError("function '" + function_name + "' has no benchmark noise scale");

    const auto curve = midi::power_curve(*measure, *function, reps, n, seed, {c}, jobs);

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    midi::write_csv(curve, os);

    if (!json_path.empty()) {
        json levels = json::array();
        for (const auto& level : curve.levels)
            levels.push_back(json{{"sigma", level.sigma}, {"power", level.power}});
        const json doc{{"schema", 1},
                       {"measure", midi::to_string(curve.measure)},
                       {"function", midi::to_string(curve.function)},
                       {"noise_scale", curve.noise_scale},
                       {"cutoff", curve.cutoff},
                       {"reps", curve.reps},
                       {"n_points", curve.n_points},
                       {"base_seed", curve.base_seed},
                       {"levels", levels}};
        std::ofstream jf(json_path);
        if (!jf)
            throw InputError("cannot open '" + json_path + "' for writing");
        jf << doc.dump(2) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------
// screen

struct ScreenResult {
    std::string column_id;
    double midi_value = 0.0;
    std::optional<double> dcor;
    std::optional<double> pearson_r;
    bool degenerate = false;
    std::size_t order = 0; // original column order, for stable output
};

int cmd_screen(const std::string& input, const std::string& ref,
               const std::string& measures_csv, double c, unsigned jobs,
               const std::string& out_path)
{
    const auto table = midi::read_numeric_csv_file(input);
    if (table.column_count() < 2)
        throw InputError("need a reference column and at least one target column");
    std::size_t ref_idx;
    try {
        ref_idx = column_index(table, ref);
    } catch (const InputError&) {
        std::cerr << "error: reference column '" << ref << "' not found\n";
        return kExitDegenerate;
    }

    const auto measures = split_list(measures_csv);
    const bool want_dcor = std::find(measures.begin(), measures.end(), "dcor") != measures.end();
    const bool want_pearson =
        std::find(measures.begin(), measures.end(), "pearson") != measures.end();

    const auto& refcol = table.columns[ref_idx];
    {
        // the reference must have a usable range over non-missing rows
        std::vector<double> present;
        for (double v : refcol)
            if (!std::isnan(v))
                present.push_back(v);
        if (present.size() < 2
            || *std::max_element(present.begin(), present.end())
                   == *std::min_element(present.begin(), present.end())) {
            std::cerr << "error: reference column '" << ref << "' is constant or empty\n";
            return kExitDegenerate;
        }
    }

    std::vector<std::size_t> targets;
    for (std::size_t ci = 0; ci < table.column_count(); ++ci)
        if (ci != ref_idx)
            targets.push_back(ci);

    std::vector<ScreenResult> results(targets.size());
    midi::parallel_for(targets.size(), jobs, [&](std::size_t t) {
        const std::size_t ci = targets[t];
        ScreenResult res;
        res.column_id = table.names[ci];
        res.order = t;
        // pairwise deletion of rows with missing values
        std::vector<double> xs, ys;
        for (std::size_t row = 0; row < refcol.size(); ++row) {
            if (std::isnan(refcol[row]) || std::isnan(table.columns[ci][row]))
                continue;
            xs.push_back(refcol[row]);
            ys.push_back(table.columns[ci][row]);
        }
        try {
            res.midi_value = midi::estimate(xs, ys, {c}).midi;
        } catch (const midi::DegenerateAxis&) {
            res.midi_value = 0.0;
            res.degenerate = true;
        } catch (const std::invalid_argument&) {
            res.midi_value = 0.0;
            res.degenerate = true;
        }
        if (want_dcor)
            res.dcor = xs.size() >= 2 ? midi::distance_correlation(xs, ys).dcor : 0.0;
        if (want_pearson) {
            try {
                res.pearson_r = midi::pearson(xs, ys);
            } catch (const std::exception&) {
                res.pearson_r = 0.0;
            }
        }
        results[t] = std::move(res);
    });

    std::stable_sort(results.begin(), results.end(),
                     [](const ScreenResult& a, const ScreenResult& b) {
                         if (a.degenerate != b.degenerate)
                             return !a.degenerate; // degenerate columns last
                         if (a.midi_value != b.midi_value)
                             return a.midi_value > b.midi_value;
                         return a.order < b.order;
                     });

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    os << "column_id,midi";
    if (want_dcor)
        os << ",dcor";
    if (want_pearson)
        os << ",pearson";
    os << ",degenerate\n";
    for (const auto& r : results) {
        os << r.column_id << ',' << midi::format_double(r.midi_value);
        if (want_dcor)
            os << ',' << midi::format_double(r.dcor.value_or(0.0));
        if (want_pearson)
            os << ',' << midi::format_double(r.pearson_r.value_or(0.0));
        os << ',' << (r.degenerate ? 1 : 0) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------
// bench

int cmd_bench(const std::string& sizes_csv, const std::string& measures_csv,
              std::uint64_t seed, double c, bool force, const std::string& out_path)
{
    std::vector<std::size_t> sizes;
    for (const auto& tok : split_list(sizes_csv)) {
        const double v = std::strtod(tok.c_str(), nullptr);
        if (!(v >= 2.0))
            throw InputError("bad size '" + tok + "'");
        sizes.push_back(static_cast<std::size_t>(v));
    }
    const auto measures = split_list(measures_csv);
    if (sizes.empty() || measures.empty())
        throw InputError("bench needs --sizes and --measures");

    for (const auto& name : measures) {
        if (!midi::measure_from_string(name))
            throw InputError("unknown measure '" + name + "'");
        if (name == "dcor" && !force)
            for (std::size_t n : sizes)
                if (n > kDcorGuardLimit)
                    throw InputError("dcor on n=" + std::to_string(n)
                                     + " exceeds the quadratic-memory guard (limit "
                                     + std::to_string(kDcorGuardLimit)
                                     + "); rerun with --force to override");
    }

    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    os << "n,measure,seconds,peak_rss_mb\n";
    for (std::size_t n : sizes) {
        const auto data = midi::generate(midi::FunctionKind::line, n, seed);
        for (const auto& name : measures) {
            const auto measure = *midi::measure_from_string(name);
            const auto start = std::chrono::steady_clock::now();
            const double value = midi::evaluate_measure(measure, data.xs, data.ys, {c});
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - start;
            (void)value;
            os << n << ',' << name << ',' << midi::format_double(elapsed.count()) << ','
               << midi::format_double(peak_rss_mb()) << '\n';
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"MIDI: mutual-information dependence index toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // let subcommands use the global --seed/--jobs
    app.set_config("--config", "", "flat key=value config file");

    std::uint64_t seed = 0;
    unsigned jobs = 0;
    app.add_option("--seed", seed, "base random seed")
        ->envname("MIDI_SEED")
        ->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads (0 = auto)")
        ->envname("MIDI_JOBS")
        ->capture_default_str();

    // compute
    auto* compute = app.add_subcommand("compute", "estimate dependence measures on a CSV");
    std::string in_path, x_col, y_col, measures = "midi", out_format = "json", out_path;
    double c = 0.1;
    compute->add_option("input", in_path, "CSV file with numeric columns")->required();
    compute->add_option("--x-col", x_col, "x column (name or 1-based index)");
    compute->add_option("--y-col", y_col, "y column (name or 1-based index)");
    compute->add_option("--measure", measures, "comma list: midi,dcor,pearson,spearman");
    compute->add_option("--c", c, "bin-length exponent in (0,1)");
    compute->add_option("--out", out_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    compute->add_option("-o,--output", out_path, "output file (default stdout)");

    // generate
    auto* generate = app.add_subcommand("generate", "emit a synthetic dataset as CSV");
    std::string gen_kind;
    std::size_t gen_n = 1000;
    double rho = 0.0;
    std::optional<double> noise_uvar, noise_gsigma;
    std::string gen_out;
    generate->add_option("kind", gen_kind, "dataset kind (e.g. line, circle, uniform)")
        ->required();
    generate->add_option("-n,--points", gen_n, "number of points")->capture_default_str();
    generate->add_option("--rho", rho, "correlation coefficient for kind 'normal'");
    auto* opt_uvar =
        generate->add_option("--noise-uniform-var", noise_uvar, "uniform noise variance");
    generate->add_option("--noise-gaussian-sigma", noise_gsigma, "gaussian noise sigma")
        ->excludes(opt_uvar);
    generate->add_option("-o,--output", gen_out, "output file (default stdout)");

    // power
    auto* power = app.add_subcommand("power", "power curve across 30 noise levels");
    std::string pw_measure = "midi", pw_function = "line", pw_out, pw_json;
    std::size_t pw_reps = 500, pw_n = 1000;
    double pw_c = 0.1;
    power->add_option("--measure", pw_measure, "midi, dcor, pearson or spearman")
        ->capture_default_str();
    power->add_option("--function", pw_function, "benchmark function")->capture_default_str();
    power->add_option("--reps", pw_reps, "replicates per level")->capture_default_str();
    power->add_option("-n,--points", pw_n, "points per dataset")->capture_default_str();
    power->add_option("--c", pw_c, "bin-length exponent in (0,1)");
    power->add_option("-o,--output", pw_out, "CSV output (default stdout)");
    power->add_option("--json-out", pw_json, "also write a JSON report");

    // screen
    auto* screen = app.add_subcommand("screen", "rank matrix columns by MIDI against a reference");
    std::string sc_in, sc_ref, sc_measures = "midi", sc_out;
    double sc_c = 0.1;
    screen->add_option("input", sc_in, "matrix CSV")->required();
    screen->add_option("--ref", sc_ref, "reference column (name or 1-based index)")->required();
    screen->add_option("--measures", sc_measures, "comma list: midi[,dcor][,pearson]");
    screen->add_option("--c", sc_c, "bin-length exponent in (0,1)");
    screen->add_option("-o,--output", sc_out, "output file (default stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "wall-time and memory per measure and size");
    std::string be_sizes = "1e4,1e5", be_measures = "midi", be_out;
    double be_c = 0.1;
    bool force = false;
    bench->add_option("--sizes", be_sizes, "comma list of sizes, e.g. 1e4,1e5,1e6")
        ->capture_default_str();
    bench->add_option("--measures", be_measures, "comma list of measures")
        ->capture_default_str();
    bench->add_option("--c", be_c, "bin-length exponent in (0,1)");
    bench->add_flag("--force", force, "lift the dcor size guard");
    bench->add_option("-o,--output", be_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        app.exit(e);
        return kExitInput;
    }

    try {
        if (compute->parsed())
            return cmd_compute(in_path, x_col, y_col, measures, c, out_format, out_path);
        if (generate->parsed())
            return cmd_generate(gen_kind, gen_n, seed, rho, noise_uvar, noise_gsigma, gen_out);
        if (power->parsed())
            return cmd_power(pw_measure, pw_function, pw_reps, pw_n, seed, pw_c, jobs,
                             pw_out, pw_json);
        if (screen->parsed())
            return cmd_screen(sc_in, sc_ref, sc_measures, sc_c, jobs, sc_out);
        if (bench->parsed())
            return cmd_bench(be_sizes, be_measures, seed, be_c, force, be_out);
    } catch (const midi::DegenerateAxis& e) {
        std::cerr << "error: degenerate data: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const midi::CsvError& e) {
        std::cerr << "error: malformed CSV: " << e.what() << '\n';
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
