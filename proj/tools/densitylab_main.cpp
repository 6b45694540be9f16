// SPDX-License-Identifier: Apache-2.0
//
// densitylab command line front end.
//
// Subcommands: classify, kleppner, finite-wh, gabor, bergman, sweep.
// Configuration comes from an optional JSON file (--config); command line
// flags override config values. Reports are written atomically (temp file +
// rename) as RunReport JSON or RFC-4180 CSV. Exit codes: 0 success, 2
// validation error, 3 numerical failure. Wall time goes to stderr so report
// bytes depend only on (config, seed).

#include "densitylab/bergman.hpp"
#include "densitylab/density.hpp"
#include "densitylab/errors.hpp"
#include "densitylab/finite_wh.hpp"
#include "densitylab/gabor.hpp"
#include "densitylab/prng.hpp"
#include "densitylab/report_json.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using densitylab::Json;

constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// small parsing helpers

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

// "a,b;c,d" with exact-scalar entries.
densitylab::density::SymplecticLattice parse_basis(const std::string& text) {
    std::vector<densitylab::ExactScalar> entries;
    const auto rows = split(text, ';');
    const std::size_t dim = rows.size();
    for (const auto& row : rows) {
        const auto cols = split(row, ',');
        if (cols.size() != dim)
            throw densitylab::ConfigInvalid("basis must be square: '" + text + "'");
        for (const auto& cell : cols)
            entries.push_back(densitylab::parse_exact_scalar(cell));
    }
    return densitylab::density::SymplecticLattice(dim, std::move(entries));
}

// "x+yi" (also "yi", "x").
densitylab::cdouble parse_complex_point(std::string text) {
    text.erase(std::remove_if(text.begin(), text.end(), ::isspace), text.end());
    if (text.empty())
        throw densitylab::ConfigInvalid("empty complex literal");
    double re = 0.0, im = 0.0;
    if (text.back() == 'i') {
        std::string body = text.substr(0, text.size() - 1);
        std::size_t pos = body.find_last_of("+-");
        if (pos == std::string::npos || pos == 0) {
            im = body.empty() || body == "+" || body == "-"
                     ? (body == "-" ? -1.0 : 1.0)
                     : std::stod(body);
        } else {
            re = std::stod(body.substr(0, pos));
            std::string imtxt = body.substr(pos);
            im = (imtxt == "+" ? 1.0 : imtxt == "-" ? -1.0 : std::stod(imtxt));
        }
    } else {
        re = std::stod(text);
    }
    return {re, im};
}

std::vector<densitylab::cdouble> parse_window_samples(const std::string& text) {
    std::vector<densitylab::cdouble> out;
    for (const auto& cell : split(text, ',')) {
        const auto parts = split(cell, ':');
        if (parts.size() == 1)
            out.emplace_back(std::stod(parts[0]), 0.0);
        else if (parts.size() == 2)
            out.emplace_back(std::stod(parts[0]), std::stod(parts[1]));
        else
            throw densitylab::ConfigInvalid("window entries are re or re:im");
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// config plumbing: JSON file first, flags win

struct ParamBag {
    Json values = Json::object();

    bool has(const std::string& key) const { return values.contains(key); }

    std::string str(const std::string& key, const std::string& fallback = "") const {
        if (!has(key))
            return fallback;
        const auto& v = values.at(key);
        if (v.is_string())
            return v.get<std::string>();
        return v.dump();
    }

    long integer(const std::string& key, long fallback) const {
        if (!has(key))
            return fallback;
        const auto& v = values.at(key);
        if (v.is_number_integer() || v.is_number_unsigned())
            return v.get<long>();
        if (v.is_string())
            return std::stol(v.get<std::string>());
        throw densitylab::ConfigInvalid("parameter '" + key + "' must be an integer");
    }

    double real(const std::string& key, double fallback) const {
        if (!has(key))
            return fallback;
        const auto& v = values.at(key);
        if (v.is_number())
            return v.get<double>();
        if (v.is_string())
            return std::stod(v.get<std::string>());
        throw densitylab::ConfigInvalid("parameter '" + key + "' must be a number");
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key))
            return fallback;
        const auto& v = values.at(key);
        if (v.is_boolean())
            return v.get<bool>();
        if (v.is_string())
            return v.get<std::string>() == "true" || v.get<std::string>() == "1";
        throw densitylab::ConfigInvalid("parameter '" + key + "' must be a boolean");
    }
};

struct RunContext {
    std::string command;
    ParamBag params;
    std::string output_path;   // empty: stdout
    std::string output_format; // json | csv
    std::uint64_t seed = 0;
};

struct CommandResult {
    Json payload;
    // Ordered summary scalars for CSV emission (sweep rows and csv format).
    std::vector<std::pair<std::string, std::string>> summary;
};

// ---------------------------------------------------------------------------
// command implementations

CommandResult run_classify(const ParamBag& p) {
    using namespace densitylab;
    density::Invariant inv;
    if (p.has("invariant")) {
        inv = density::Invariant::from_exact(parse_exact_scalar(p.str("invariant")));
    } else if (p.has("invariant_value")) {
        inv = density::Invariant::from_float(p.real("invariant_value", 0.0),
                                             p.real("invariant_error", 0.0));
    } else {
        throw ConfigInvalid("classify needs --invariant or --invariant-value");
    }

    const std::string mode = p.str("kleppner", "auto");
    density::KleppnerStatus status;
    std::optional<density::KleppnerResult> checked;
    if (mode == "holds") {
        status = density::KleppnerStatus::Holds;
    } else if (mode == "fails") {
        status = density::KleppnerStatus::Fails;
    } else if (mode == "unknown") {
        status = density::KleppnerStatus::Unknown;
    } else if (mode == "auto") {
        if (!p.has("basis"))
            throw ConfigInvalid("classify --kleppner auto needs --basis");
        checked = density::kleppner_check(parse_basis(p.str("basis")));
        status = checked->status;
    } else {
        throw ConfigInvalid("kleppner must be auto|holds|fails|unknown");
    }

    density::ClassifyFlags flags;
    flags.central_extension = p.boolean("central_extension", false);
    const auto verdict = density::classify(inv, status, flags);

    CommandResult out;
    out.payload = verdict_to_json(verdict);
    if (checked)
        out.payload["kleppner_detail"] = kleppner_to_json(*checked);
    std::string claims;
    for (const auto& c : verdict.claims)
        claims += (claims.empty() ? "" : "|") + density::to_string(c);
    out.summary = {{"invariant", format_double(inv.value)},
                   {"regime", out.payload.at("regime").get<std::string>()},
                   {"claims", claims}};
    return out;
}

CommandResult run_kleppner(const ParamBag& p) {
    using namespace densitylab;
    if (!p.has("basis"))
        throw ConfigInvalid("kleppner needs --basis \"a,b;c,d\"");
    const auto lat = parse_basis(p.str("basis"));
    const auto exact = density::kleppner_check(lat);
    CommandResult out;
    out.payload = Json{{"basis", p.str("basis")},
                       {"covolume", covolume(lat).str()},
                       {"check", kleppner_to_json(exact)}};
    const long brute_radius = p.integer("brute_radius", 0);
    if (brute_radius > 0) {
        const auto brute = density::kleppner_brute(lat, brute_radius);
        out.payload["brute"] = kleppner_to_json(brute);
        out.payload["agreement"] = exact.status == brute.status;
    }
    out.summary = {{"status", density::to_string(exact.status)}};
    return out;
}

CommandResult run_finite_wh(const ParamBag& p, std::uint64_t seed) {
    using namespace densitylab;
    const long n = p.integer("N", 0);
    const long a = p.integer("a", 1);
    const long b = p.integer("b", 1);
    if (n <= 0 || a <= 0 || b <= 0)
        throw ConfigInvalid("finite-wh needs positive --N, --a, --b");
    if (n % a != 0 || n % b != 0)
        throw ConfigInvalid("finite-wh: a and b must divide N");

    wh::FiniteWHRep rep(static_cast<std::size_t>(n));
    wh::FiniteLattice lat(static_cast<std::size_t>(n), static_cast<std::size_t>(a),
                          static_cast<std::size_t>(b));

    std::vector<cdouble> window;
    const std::string wtext = p.str("window", "random");
    if (wtext == "random") {
        SplitMix64 rng(seed);
        window.resize(static_cast<std::size_t>(n));
        for (auto& e : window)
            e = rng.next_complex_gaussian();
    } else {
        window = parse_window_samples(wtext);
    }
    if (window.size() != static_cast<std::size_t>(n))
        throw ConfigInvalid("finite-wh: window length must equal N");
    if (p.boolean("normalize", true)) {
        const double nn = std::sqrt(norm_sq(window));
        if (nn == 0.0)
            throw ConfigInvalid("finite-wh: window must be nonzero");
        for (auto& e : window)
            e /= nn;
    }

    const auto report = wh::wh_report(rep, lat, window);
    CommandResult out;
    out.payload = wh_report_to_json(report);
    out.payload["N"] = n;
    out.payload["a"] = a;
    out.payload["b"] = b;
    out.summary = {{"invariant", to_string(report.invariant)},
                   {"invariant_value", format_double(to_double(report.invariant))},
                   {"A", format_double(report.frame_bounds.min_nonzero)},
                   {"B", format_double(report.frame_bounds.max)},
                   {"parseval", report.parseval ? "true" : "false"},
                   {"onb", report.onb ? "true" : "false"}};
    return out;
}

CommandResult run_gabor(const ParamBag& p) {
    using namespace densitylab;
    const std::string window_name = p.str("window", "gaussian");
    gabor::Window window;
    if (window_name == "gaussian")
        window = gabor::Window::gaussian();
    else if (window_name == "box")
        window = gabor::Window::box();
    else
        throw ConfigInvalid("gabor window must be gaussian or box");

    const std::string lattice_text = p.str("lattice", "1,0;0,1");
    const auto exact_lat = parse_basis(lattice_text);
    if (exact_lat.dim2 != 2)
        throw ConfigInvalid("gabor lattice must be 2x2");
    gabor::PlaneLattice lat = gabor::PlaneLattice::from_exact(
        {exact_lat.at(0, 0), exact_lat.at(0, 1), exact_lat.at(1, 0), exact_lat.at(1, 1)});

    const std::string method = p.str("method", "zz");
    CommandResult out;
    if (method == "zz") {
        if (window.kind != gabor::Window::Kind::Gaussian)
            throw ConfigInvalid("zz bounds are implemented for the Gaussian window");
        const auto steps = lat.separable_steps();
        if (!steps)
            throw InvalidDensity("zz needs a separable lattice");
        // Exact rational covolume alpha * beta.
        const ExactScalar vol_exact =
            (exact_lat.at(0, 0) * exact_lat.at(1, 1)).abs();
        if (!vol_exact.is_rational())
            throw InvalidDensity("zz needs a rational covolume; use --method gram");
        const Rational vol = vol_exact.rational_part();
        const long pp = static_cast<long>(boost::multiprecision::numerator(vol));
        const long qq = static_cast<long>(boost::multiprecision::denominator(vol));
        const double lambda = steps->first * steps->first;
        const auto report =
            gabor::zz_frame_bounds(pp, qq, static_cast<int>(p.integer("grid", 256)),
                                   static_cast<int>(p.integer("trunc", 16)), lambda);
        const auto sandwich = gabor::sandwich_check(report, lat, window);
        out.payload = gabor_bounds_to_json(report);
        out.payload["covolume"] = lat.covolume();
        out.payload["sandwich"] = Json{{"ok", sandwich.ok},
                                       {"lower_slack", sandwich.lower_slack},
                                       {"upper_slack", sandwich.upper_slack}};
        out.summary = {{"A", format_double(report.lower)},
                       {"B", format_double(report.upper)}};
    } else if (method == "gram") {
        const int radius = static_cast<int>(p.integer("radius", 2));
        QuadOptions opts;
        opts.abs_tol = p.real("quad_tol", 1e-10);
        opts.rel_tol = opts.abs_tol;
        const auto gg = gabor::gabor_gram(window, lat, radius, opts,
                                          p.boolean("force_quadrature", false));
        out.payload = Json{{"method", "truncated-gram"},
                           {"covolume", lat.covolume()},
                           {"radius", radius},
                           {"size", gg.gram.rows},
                           {"spectrum", spectral_report_to_json(gg.spectrum)},
                           {"certified", false},
                           {"note", "finite-section evidence; lower bounds are not certified"}};
        out.summary = {{"A", format_double(gg.spectrum.eigenvalues.empty()
                                               ? 0.0
                                               : gg.spectrum.eigenvalues.front())},
                       {"B", format_double(gg.spectrum.max)}};
    } else {
        throw ConfigInvalid("gabor method must be zz or gram");
    }
    return out;
}

CommandResult run_bergman(const ParamBag& p) {
    using namespace densitylab;
    if (!p.has("alpha"))
        throw ConfigInvalid("bergman needs --alpha");
    const std::string alpha_text = p.str("alpha");
    std::optional<Rational> alpha_exact;
    double alpha = 0.0;
    try {
        const auto parsed = parse_exact_scalar(alpha_text);
        if (parsed.is_rational()) {
            alpha_exact = parsed.rational_part();
            alpha = parsed.to_double();
        } else {
            alpha = parsed.to_double();
        }
    } catch (const ConfigInvalid&) {
        alpha = std::stod(alpha_text);
    }

    bergman::FuchsianGroup group;
    const std::string group_name = p.str("group", "psl2z");
    if (group_name == "psl2z") {
        group = bergman::psl2z();
    } else {
        // Group file: JSON {generators: [[a,b,c,d], ...], covolume, ...}.
        std::ifstream in(group_name);
        if (!in)
            throw ConfigInvalid("cannot open group file '" + group_name + "'");
        Json g = Json::parse(in, nullptr, true, true);
        if (!g.contains("generators") || !g.contains("covolume"))
            throw ConfigInvalid("group file needs 'generators' and 'covolume'");
        group.name = g.value("name", group_name);
        for (const auto& quad : g.at("generators")) {
            if (!quad.is_array() || quad.size() != 4)
                throw ConfigInvalid("group generators are [a,b,c,d] rows");
            group.generators.emplace_back(quad[0].get<double>(), quad[1].get<double>(),
                                          quad[2].get<double>(), quad[3].get<double>());
        }
        group.covolume = g.at("covolume").get<double>();
        group.co_compact = g.value("co_compact", false);
        group.central_extension = g.value("central_extension", false);
    }

    const auto base = parse_complex_point(p.str("base", "2i"));
    const bergman::UHPoint w{base};
    const int radius = static_cast<int>(p.integer("radius", 4));

    const auto verdict = bergman_classification(alpha, alpha_exact, group, w, radius);
    CommandResult out;
    out.payload = bergman_verdict_to_json(verdict);
    out.payload["group"] = group.name;

    const int gram_radius = static_cast<int>(p.integer("gram_radius", -1));
    if (gram_radius >= 0) {
        QuadOptions opts{1e-8, 1e-8, 40};
        const auto gram =
            bergman::kernel_orbit_gram(alpha, group, w, gram_radius, opts, true);
        out.payload["kernel_gram"] = Json{{"size", gram.gram.rows},
                                          {"spectrum", spectral_report_to_json(gram.spectrum)}};
    }
    out.summary = {
        {"invariant",
         verdict.invariant.exact ? verdict.invariant.exact->str()
                                 : format_double(verdict.invariant.value)},
        {"invariant_value", format_double(verdict.invariant.value)},
        {"regime", out.payload.at("trichotomy").at("regime").get<std::string>()},
        {"stabilizer", std::to_string(verdict.stabilizer)}};
    return out;
}

CommandResult run_command(const RunContext& ctx);

CommandResult run_sweep(const ParamBag& p, std::uint64_t seed) {
    using namespace densitylab;
    const std::string target = p.str("command");
    if (target.empty() || target == "sweep")
        throw ConfigInvalid("sweep needs --command <classify|kleppner|finite-wh|gabor|bergman>");
    if (!p.has("param") || !p.has("values"))
        throw ConfigInvalid("sweep needs --param and --values");
    const std::string param = p.str("param");
    const auto values = split(p.str("values"), ',');
    if (values.empty())
        throw ConfigInvalid("sweep: empty value list");

    CommandResult out;
    Json rows = Json::array();
    std::vector<std::string> header;
    for (const auto& value : values) {
        RunContext sub;
        sub.command = target;
        sub.params.values = p.values;
        sub.params.values.erase("command");
        sub.params.values.erase("param");
        sub.params.values.erase("values");
        sub.params.values[param] = value;
        sub.seed = seed;
        const auto res = run_command(sub);
        Json row = Json::object();
        row[param] = value;
        std::vector<std::string> h{param};
        for (const auto& [k, v] : res.summary) {
            row[k] = v;
            h.push_back(k);
        }
        if (header.empty())
            header = h;
        rows.push_back(row);
        out.summary = res.summary;
    }
    out.payload = Json{{"command", target}, {"param", param}, {"rows", rows},
                       {"columns", header}};
    return out;
}

CommandResult run_command(const RunContext& ctx) {
    if (ctx.command == "classify")
        return run_classify(ctx.params);
    if (ctx.command == "kleppner")
        return run_kleppner(ctx.params);
    if (ctx.command == "finite-wh")
        return run_finite_wh(ctx.params, ctx.seed);
    if (ctx.command == "gabor")
        return run_gabor(ctx.params);
    if (ctx.command == "bergman")
        return run_bergman(ctx.params);
    if (ctx.command == "sweep")
        return run_sweep(ctx.params, ctx.seed);
    throw densitylab::ConfigInvalid("unknown command '" + ctx.command + "'");
}

// ---------------------------------------------------------------------------
// output

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"')
            out += "\"\"";
        else
            out.push_back(ch);
    }
    out += "\"";
    return out;
}

std::string render_csv(const CommandResult& result) {
    std::ostringstream os;
    if (result.payload.contains("rows") && result.payload.contains("columns")) {
        const auto& columns = result.payload.at("columns");
        std::string head;
        for (const auto& c : columns)
            head += (head.empty() ? "" : ",") + csv_escape(c.get<std::string>());
        os << head << "\r\n";
        for (const auto& row : result.payload.at("rows")) {
            std::string line;
            for (const auto& c : columns) {
                const auto key = c.get<std::string>();
                std::string cell;
                if (row.contains(key)) {
                    const auto& v = row.at(key);
                    cell = v.is_string() ? v.get<std::string>() : v.dump();
                }
                line += (line.empty() ? "" : ",") + csv_escape(cell);
            }
            os << line << "\r\n";
        }
    } else {
        std::string head, line;
        for (const auto& [k, v] : result.summary) {
            head += (head.empty() ? "" : ",") + csv_escape(k);
            line += (line.empty() ? "" : ",") + csv_escape(v);
        }
        os << head << "\r\n" << line << "\r\n";
    }
    return os.str();
}

void write_atomic(const std::string& path, const std::string& bytes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw densitylab::ComputeFailed("cannot open output file '" + tmp + "'");
        out << bytes;
        if (!out.good())
            throw densitylab::ComputeFailed("failed writing '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw densitylab::ComputeFailed("failed renaming '" + tmp + "' to '" + path + "'");
}

int dispatch(const RunContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    const CommandResult result = run_command(ctx);

    std::string bytes;
    if (ctx.output_format == "csv") {
        bytes = render_csv(result);
    } else {
        Json report;
        report["command"] = ctx.command;
        Json config = ctx.params.values;
        config["command"] = ctx.command;
        config["seed"] = ctx.seed;
        report["config"] = config;
        report["versions"] = Json{{"densitylab", kVersion}};
        report["results"] = result.payload;
        report["determinism_hash"] = densitylab::fnv1a64_hex(result.payload.dump());
        bytes = report.dump(2);
        bytes += "\n";
    }

    if (ctx.output_path.empty())
        std::cout << bytes;
    else
        write_atomic(ctx.output_path, bytes);

    const auto t1 = std::chrono::steady_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    std::cerr << "densitylab " << ctx.command << ": " << ms << " ms\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"densitylab: lattice-orbit density classification toolkit"};
    app.require_subcommand(0, 1);

    std::string config_path, output_path, output_format = "json";
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "JSON config file; flags override it");
    app.add_option("--output", output_path, "output path (default stdout)");
    app.add_option("--format", output_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed, "seed for randomized inputs");

    // Per-command flags land in one key-value bag so config merging stays
    // uniform. Every value is kept as a string; commands coerce as needed.
    std::map<std::string, std::string> flag_values;
    auto add_str = [&flag_values](CLI::App* cmd, const std::string& name,
                                  const std::string& help) {
        cmd->add_option_function<std::string>(
            "--" + name,
            [&flag_values, name](const std::string& v) { flag_values[name] = v; }, help);
    };

    CLI::App* classify = app.add_subcommand("classify", "trichotomy verdict from invariant");
    add_str(classify, "invariant", "exact invariant, e.g. 1/2 or 1+1/2*sqrt(2)");
    add_str(classify, "invariant-value", "float invariant");
    add_str(classify, "invariant-error", "error bar for the float invariant");
    add_str(classify, "kleppner", "auto|holds|fails|unknown");
    add_str(classify, "basis", "lattice basis for --kleppner auto");
    add_str(classify, "central-extension", "true: apply the halved-threshold caveat");

    CLI::App* kleppner = app.add_subcommand("kleppner", "decide Kleppner's condition");
    add_str(kleppner, "basis", "lattice basis \"a,b;c,d\" (exact entries)");
    add_str(kleppner, "brute-radius", "also run the exhaustive oracle to this radius");

    CLI::App* finite = app.add_subcommand("finite-wh", "finite Weyl-Heisenberg report");
    add_str(finite, "N", "dimension");
    add_str(finite, "a", "time step (divides N)");
    add_str(finite, "b", "frequency step (divides N)");
    add_str(finite, "window", "comma samples (re or re:im), or 'random'");
    add_str(finite, "normalize", "normalize the window (default true)");

    CLI::App* gaborc = app.add_subcommand("gabor", "Gabor frame bounds");
    add_str(gaborc, "window", "gaussian | box");
    add_str(gaborc, "lattice", "basis \"a,b;c,d\"");
    add_str(gaborc, "method", "zz | gram");
    add_str(gaborc, "radius", "gram truncation radius");
    add_str(gaborc, "grid", "zz grid (default 256)");
    add_str(gaborc, "trunc", "zak series truncation (default 16)");
    add_str(gaborc, "quad_tol", "gram quadrature tolerance");
    add_str(gaborc, "force_quadrature", "compute gram entries by quadrature");

    CLI::App* bergmanc = app.add_subcommand("bergman", "Bergman space classification");
    add_str(bergmanc, "alpha", "weight (> 1); rational enables the symbolic path");
    add_str(bergmanc, "group", "psl2z or a group JSON file");
    add_str(bergmanc, "base", "base point, e.g. 2i or 0.5+2i");
    add_str(bergmanc, "radius", "stabilizer search word radius");
    add_str(bergmanc, "gram-radius", "also emit the kernel Gram spectrum");

    CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter, CSV rows");
    add_str(sweep, "command", "target command");
    add_str(sweep, "param", "ranged parameter name");
    add_str(sweep, "values", "comma-separated values");
    for (const auto& extra :
         {"invariant", "kleppner", "basis", "N", "a", "b", "window", "lattice", "method",
          "radius", "grid", "trunc", "alpha", "group", "base", "normalize"})
        add_str(sweep, extra, "forwarded to the target command");

    CLI11_PARSE(app, argc, argv);

    try {
        RunContext ctx;
        // Environment cap on worker threads; evaluation is sequential, so the
        // cap is validated and recorded only.
        if (const char* threads = std::getenv("DENSITYLAB_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(threads, &end, 10);
            if (end == threads || v <= 0)
                throw densitylab::ConfigInvalid("DENSITYLAB_THREADS must be a positive integer");
        }

        // Config file first.
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in)
                throw densitylab::ConfigInvalid("cannot open config '" + config_path + "'");
            Json cfg = Json::parse(in, nullptr, true, true);
            if (cfg.contains("command"))
                ctx.command = cfg.at("command").get<std::string>();
            if (cfg.contains("params"))
                ctx.params.values = cfg.at("params");
            if (cfg.contains("seed"))
                ctx.seed = cfg.at("seed").get<std::uint64_t>();
            if (cfg.contains("output")) {
                const auto& o = cfg.at("output");
                if (o.contains("path"))
                    ctx.output_path = o.at("path").get<std::string>();
                if (o.contains("format"))
                    output_format = o.at("format").get<std::string>();
            }
        }

        // Flags win.
        for (auto* sub : {classify, kleppner, finite, gaborc, bergmanc, sweep})
            if (sub->parsed())
                ctx.command = sub->get_name();
        for (const auto& [k, v] : flag_values) {
            std::string key = k;
            std::replace(key.begin(), key.end(), '-', '_');
            ctx.params.values[key] = v;
        }
        if (app.count("--seed") > 0)
            ctx.seed = seed;
        if (app.count("--output") > 0)
            ctx.output_path = output_path;
        ctx.output_format = output_format;

        if (ctx.command.empty())
            throw densitylab::ConfigInvalid("no command given (config or subcommand)");
        return dispatch(ctx);
    } catch (const densitylab::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const densitylab::DimensionMismatch& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const densitylab::UnsupportedField& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const densitylab::SingularBasis& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const densitylab::InvalidDensity& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const densitylab::AlphaOutOfRange& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const densitylab::InvalidInvariant& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const densitylab::Error& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
