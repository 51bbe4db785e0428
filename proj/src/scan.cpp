#include "xychain/scan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

#include "xychain/errors.hpp"
#include "xychain/oracle.hpp"
#include "xychain/polar.hpp"

namespace xychain {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

// ---- enum <-> string ------------------------------------------------------

const std::map<std::string, ScanAxis> kAxisNames = {
    {"mean_field", ScanAxis::MeanField},
    {"mean_anisotropy", ScanAxis::MeanAnisotropy}};

const std::map<std::string, Direction> kDirectionNames = {
    {"field", Direction::Field}, {"anisotropy", Direction::Anisotropy}};

const std::map<std::string, Product> kProductNames = {
    {"chi_summary", Product::ChiSummary},
    {"gap_histogram", Product::GapHistogram},
    {"chi_histogram", Product::ChiHistogram},
    {"scaling_fit", Product::ScalingFit},
    {"self_averaging", Product::SelfAveraging},
    {"collapse", Product::Collapse},
    {"griffiths_extent", Product::GriffithsExtent}};

template <typename T>
std::string name_of(const std::map<std::string, T>& names, T v) {
    for (const auto& [k, t] : names)
        if (t == v) return k;
    return "?";
}

template <typename T>
T parse_name(const std::map<std::string, T>& names, const std::string& s,
             const char* field) {
    auto it = names.find(s);
    if (it == names.end())
        throw ConfigError(std::string("config: invalid value '") + s +
                          "' for field '" + field + "'");
    return it->second;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& context) {
    for (const auto& [key, _] : obj.items())
        if (!known.count(key))
            throw ConfigError("config: unknown key '" + key + "' in " +
                              context);
}

// ---- CSV helpers ----------------------------------------------------------

struct CsvWriter {
    std::ofstream out;
    explicit CsvWriter(const fs::path& p) : out(p) {
        if (!out) throw NumericError("cannot open " + p.string());
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
        if (!out) throw NumericError("write failure");
    }
};

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw AnalysisError("cannot open " + p.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string ecdf_tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);  // compact: tags, not data
    std::string s(buf);
    for (char& c : s)
        if (c == '-') c = 'm';
    return s;
}

}  // namespace

// ---- config ---------------------------------------------------------------

ScanConfig validate_config(const json& raw) {
    if (!raw.is_object()) throw ConfigError("config: document must be an object");
    reject_unknown_keys(raw,
                        {"scan_axis", "axis_values", "fixed_field",
                         "fixed_anisotropy", "sigma_list", "size_list",
                         "ensemble", "outputs", "histogram_bins"},
                        "top level");

    ScanConfig cfg;
    if (!raw.contains("scan_axis"))
        throw ConfigError("config: missing field 'scan_axis'");
    cfg.scan_axis = parse_name(kAxisNames, raw.at("scan_axis").get<std::string>(),
                               "scan_axis");

    if (!raw.contains("axis_values") || !raw.at("axis_values").is_array() ||
        raw.at("axis_values").empty())
        throw ConfigError("config: 'axis_values' must be a non-empty array");
    cfg.axis_values = raw.at("axis_values").get<std::vector<double>>();
    for (std::size_t i = 1; i < cfg.axis_values.size(); ++i)
        if (!(cfg.axis_values[i] > cfg.axis_values[i - 1]))
            throw ConfigError("config: 'axis_values' must be strictly increasing");

    const char* fixed_key = cfg.scan_axis == ScanAxis::MeanField
                                ? "fixed_anisotropy"
                                : "fixed_field";
    const char* wrong_key = cfg.scan_axis == ScanAxis::MeanField
                                ? "fixed_field"
                                : "fixed_anisotropy";
    if (raw.contains(wrong_key))
        throw ConfigError(std::string("config: '") + wrong_key +
                          "' conflicts with the scan axis");
    if (!raw.contains(fixed_key))
        throw ConfigError(std::string("config: missing field '") + fixed_key +
                          "'");
    cfg.fixed_value = raw.at(fixed_key).get<double>();

    if (raw.contains("sigma_list")) {
        cfg.sigma_list = raw.at("sigma_list").get<std::vector<double>>();
        if (cfg.sigma_list.empty())
            throw ConfigError("config: 'sigma_list' must be non-empty");
        for (double s : cfg.sigma_list)
            if (s < 0.0)
                throw ConfigError("config: 'sigma_list' entries must be >= 0");
    } else {
        cfg.sigma_list = {0.1, 0.2, 0.3, 0.4};
    }

    if (!raw.contains("size_list") || !raw.at("size_list").is_array() ||
        raw.at("size_list").empty())
        throw ConfigError("config: 'size_list' must be a non-empty array");
    cfg.size_list = raw.at("size_list").get<std::vector<int>>();
    for (std::size_t i = 0; i < cfg.size_list.size(); ++i) {
        if (cfg.size_list[i] < 3)
            throw ConfigError("config: 'size_list' entries must be >= 3");
        if (i > 0 && cfg.size_list[i] <= cfg.size_list[i - 1])
            throw ConfigError("config: 'size_list' must be strictly increasing");
    }

    if (raw.contains("outputs")) {
        for (const auto& o : raw.at("outputs"))
            cfg.outputs.push_back(
                parse_name(kProductNames, o.get<std::string>(), "outputs"));
    } else {
        cfg.outputs = {Product::ChiSummary};
    }

    auto wants = [&](Product p) {
        return std::find(cfg.outputs.begin(), cfg.outputs.end(), p) !=
               cfg.outputs.end();
    };
    if ((wants(Product::ScalingFit) || wants(Product::SelfAveraging) ||
         wants(Product::Collapse)) &&
        cfg.size_list.size() < 3)
        throw ConfigError(
            "config: 'size_list' needs >= 3 entries for "
            "scaling_fit/self_averaging/collapse outputs");

    if (raw.contains("ensemble")) {
        const json& e = raw.at("ensemble");
        reject_unknown_keys(e,
                            {"n_realizations", "master_seed", "direction",
                             "record_gap", "compute_chi", "frobenius_step"},
                            "'ensemble'");
        if (e.contains("n_realizations"))
            cfg.ensemble.n_realizations = e.at("n_realizations").get<int>();
        if (e.contains("master_seed"))
            cfg.ensemble.master_seed = e.at("master_seed").get<std::uint64_t>();
        if (e.contains("direction"))
            cfg.ensemble.direction = parse_name(
                kDirectionNames, e.at("direction").get<std::string>(),
                "ensemble.direction");
        else
            cfg.ensemble.direction = cfg.scan_axis == ScanAxis::MeanField
                                         ? Direction::Field
                                         : Direction::Anisotropy;
        if (e.contains("record_gap"))
            cfg.ensemble.record_gap = e.at("record_gap").get<bool>();
        if (e.contains("compute_chi"))
            cfg.ensemble.compute_chi = e.at("compute_chi").get<bool>();
        if (e.contains("frobenius_step")) {
            const double h = e.at("frobenius_step").get<double>();
            if (!(h > 0.0))
                throw ConfigError("config: 'ensemble.frobenius_step' must be > 0");
            cfg.ensemble.frobenius_step = h;
        }
    } else {
        cfg.ensemble.direction = cfg.scan_axis == ScanAxis::MeanField
                                     ? Direction::Field
                                     : Direction::Anisotropy;
    }
    if (cfg.ensemble.n_realizations < 1)
        throw ConfigError("config: 'ensemble.n_realizations' must be >= 1");

    // gap-based products need gap samples
    if (wants(Product::GapHistogram) || wants(Product::GriffithsExtent))
        cfg.ensemble.record_gap = true;
    if (!cfg.ensemble.compute_chi &&
        (wants(Product::ChiSummary) || wants(Product::ChiHistogram) ||
         wants(Product::ScalingFit) || wants(Product::SelfAveraging) ||
         wants(Product::Collapse)))
        throw ConfigError(
            "config: 'ensemble.compute_chi' = false conflicts with the "
            "requested chi outputs");

    if (raw.contains("histogram_bins")) {
        cfg.histogram_bins = raw.at("histogram_bins").get<int>();
        if (cfg.histogram_bins < 2)
            throw ConfigError("config: 'histogram_bins' must be >= 2");
    }
    return cfg;
}

ScanConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file " + file.string());
    json raw;
    try {
        in >> raw;
    } catch (const json::parse_error& e) {
        throw ConfigError("config: JSON parse error: " + std::string(e.what()));
    }
    return validate_config(raw);
}

json config_to_json(const ScanConfig& cfg) {
    json e{{"n_realizations", cfg.ensemble.n_realizations},
           {"master_seed", cfg.ensemble.master_seed},
           {"direction", name_of(kDirectionNames, cfg.ensemble.direction)},
           {"record_gap", cfg.ensemble.record_gap},
           {"compute_chi", cfg.ensemble.compute_chi}};
    if (cfg.ensemble.frobenius_step)
        e["frobenius_step"] = *cfg.ensemble.frobenius_step;

    json out{{"scan_axis", name_of(kAxisNames, cfg.scan_axis)},
             {"axis_values", cfg.axis_values},
             {"sigma_list", cfg.sigma_list},
             {"size_list", cfg.size_list},
             {"ensemble", e},
             {"histogram_bins", cfg.histogram_bins}};
    out[cfg.scan_axis == ScanAxis::MeanField ? "fixed_anisotropy"
                                             : "fixed_field"] = cfg.fixed_value;
    json prods = json::array();
    for (Product p : cfg.outputs) prods.push_back(name_of(kProductNames, p));
    out["outputs"] = prods;
    return out;
}

json RunManifest::to_json() const {
    json pts = json::array();
    for (const auto& p : points)
        pts.push_back({{"sigma", p.sigma},
                       {"axis_value", p.axis_value},
                       {"L", p.size},
                       {"n_samples", p.n_samples},
                       {"n_flagged", p.n_flagged}});
    return json{{"config", config_echo},
                {"master_seed", master_seed},
                {"version", version},
                {"points", pts},
                {"wall_clock_seconds", wall_clock_seconds}};
}

// ---- scan execution -------------------------------------------------------

namespace {

struct PointKey {
    double sigma;
    double axis_value;
    int size;
    bool operator<(const PointKey& o) const {
        return std::tie(sigma, axis_value, size) <
               std::tie(o.sigma, o.axis_value, o.size);
    }
};

ChainSpec point_spec(const ScanConfig& cfg, double sigma, double axis_value,
                     int L) {
    ChainSpec spec;
    spec.length = L;
    spec.disorder_sigma = sigma;
    if (cfg.scan_axis == ScanAxis::MeanField) {
        spec.mean_field = axis_value;
        spec.mean_anisotropy = cfg.fixed_value;
    } else {
        spec.mean_field = cfg.fixed_value;
        spec.mean_anisotropy = axis_value;
    }
    return spec;
}

void write_products(const ScanConfig& cfg,
                    const std::map<PointKey, SampleSet>& results,
                    const fs::path& out_dir) {
    auto wants = [&](Product p) {
        return std::find(cfg.outputs.begin(), cfg.outputs.end(), p) !=
               cfg.outputs.end();
    };

    if (wants(Product::ChiSummary)) {
        CsvWriter w(out_dir / "chi_summary.csv");
        w.row({"axis_value", "sigma", "L", "chi_ave", "chi_typ", "chi_var",
               "R", "n_samples", "n_flagged"});
        for (const auto& [k, s] : results) {
            const EnsembleSummary sm = summarize(s);
            w.row({format_double(k.axis_value), format_double(k.sigma),
                   std::to_string(k.size), format_double(sm.ave),
                   format_double(sm.typ), format_double(sm.var),
                   format_double(sm.R),
                   std::to_string(static_cast<int>(s.chi_samples.size())),
                   std::to_string(s.n_flagged)});
        }
    }

    if (wants(Product::GapHistogram) || wants(Product::GriffithsExtent)) {
        // shared zero-anchored binning across the axis scan per (sigma, L)
        std::map<std::pair<double, int>, double> max_gap;
        for (const auto& [k, s] : results)
            for (double g : s.gap_samples) {
                auto& m = max_gap[{k.sigma, k.size}];
                m = std::max(m, g);
            }

        std::map<std::pair<double, int>,
                 std::vector<std::pair<double, Histogram>>>
            scans;
        for (const auto& [k, s] : results) {
            const double hi = max_gap[{k.sigma, k.size}];
            Histogram h = make_histogram(s.gap_samples, cfg.histogram_bins,
                                         {{0.0, hi}},
                                         HistogramNormalization::Density);
            scans[{k.sigma, k.size}].emplace_back(k.axis_value, std::move(h));
        }

        if (wants(Product::GapHistogram)) {
            CsvWriter w(out_dir / "gap_histogram.csv");
            w.row({"axis_value", "sigma", "L", "bin_lo", "bin_hi", "count",
                   "density"});
            for (const auto& [key, scan] : scans)
                for (const auto& [axis_value, h] : scan) {
                    const auto d = h.densities();
                    for (std::size_t b = 0; b < h.counts.size(); ++b)
                        w.row({format_double(axis_value),
                               format_double(key.first),
                               std::to_string(key.second),
                               format_double(h.bin_edges[b]),
                               format_double(h.bin_edges[b + 1]),
                               std::to_string(h.counts[b]),
                               format_double(d[b])});
                }
        }

        if (wants(Product::GriffithsExtent)) {
            CsvWriter w(out_dir / "griffiths_extent.csv");
            w.row({"sigma", "L", "lo", "hi", "empty"});
            for (const auto& [key, scan] : scans) {
                const ParameterInterval iv = griffiths_extent(scan);
                w.row({format_double(key.first), std::to_string(key.second),
                       format_double(iv.lo), format_double(iv.hi),
                       iv.empty ? "1" : "0"});
            }
        }
    }

    if (wants(Product::ChiHistogram)) {
        CsvWriter w(out_dir / "chi_histogram.csv");
        w.row({"axis_value", "sigma", "L", "bin_lo", "bin_hi", "count",
               "density"});
        for (const auto& [k, s] : results) {
            std::vector<double> ln_chi;
            ln_chi.reserve(s.chi_samples.size());
            for (double c : s.chi_samples) ln_chi.push_back(std::log(c));
            const Histogram h =
                make_histogram(ln_chi, cfg.histogram_bins, {},
                               HistogramNormalization::Density);
            const auto d = h.densities();
            for (std::size_t b = 0; b < h.counts.size(); ++b)
                w.row({format_double(k.axis_value), format_double(k.sigma),
                       std::to_string(k.size), format_double(h.bin_edges[b]),
                       format_double(h.bin_edges[b + 1]),
                       std::to_string(h.counts[b]), format_double(d[b])});
        }
    }

    if (wants(Product::ScalingFit)) {
        CsvWriter w(out_dir / "scaling_fit.csv");
        w.row({"axis_value", "sigma", "use", "exponent", "exponent_stderr",
               "intercept", "r_squared"});
        for (double sigma : cfg.sigma_list)
            for (double x : cfg.axis_values) {
                std::vector<std::pair<double, EnsembleSummary>> per_size;
                for (int L : cfg.size_list)
                    per_size.emplace_back(
                        L, summarize(results.at({sigma, x, L})));
                for (Use use : {Use::Average, Use::Typical}) {
                    const PowerLawFit f = scaling_dimension(per_size, use);
                    w.row({format_double(x), format_double(sigma),
                           use == Use::Average ? "average" : "typical",
                           format_double(f.exponent),
                           format_double(f.exponent_stderr),
                           format_double(f.intercept),
                           format_double(f.r_squared)});
                }
            }
    }

    if (wants(Product::SelfAveraging)) {
        CsvWriter w(out_dir / "self_averaging.csv");
        w.row({"axis_value", "sigma", "b", "b_stderr", "class"});
        for (double sigma : cfg.sigma_list)
            for (double x : cfg.axis_values) {
                std::map<double, double> R_per_size;
                for (int L : cfg.size_list)
                    R_per_size[L] = summarize(results.at({sigma, x, L})).R;
                const SelfAveragingClass c =
                    self_averaging_classify(R_per_size);
                const char* cls =
                    c.kind == SelfAveragingKind::SelfAveraging
                        ? "self_averaging"
                        : (c.kind == SelfAveragingKind::WeaklySelfAveraging
                               ? "weakly_self_averaging"
                               : "non_self_averaging");
                w.row({format_double(x), format_double(sigma),
                       format_double(c.b), format_double(c.b_stderr), cls});
            }
    }

    if (wants(Product::Collapse)) {
        {
            CsvWriter w(out_dir / "chi_samples.csv");
            w.row({"axis_value", "sigma", "L", "chi"});
            for (const auto& [k, s] : results)
                for (double c : s.chi_samples)
                    w.row({format_double(k.axis_value),
                           format_double(k.sigma), std::to_string(k.size),
                           format_double(c)});
        }
        CsvWriter w(out_dir / "collapse.csv");
        w.row({"axis_value", "sigma", "form", "alpha", "beta", "quality"});
        for (double sigma : cfg.sigma_list)
            for (double x : cfg.axis_values) {
                std::vector<std::pair<int, std::vector<double>>> per_size;
                for (int L : cfg.size_list) {
                    std::vector<double> ln_chi;
                    for (double c : results.at({sigma, x, L}).chi_samples)
                        ln_chi.push_back(std::log(c));
                    per_size.emplace_back(L, std::move(ln_chi));
                }
                for (auto [kind, nm] :
                     {std::pair{CollapseKind::PowerLaw, "power_law"},
                      {CollapseKind::StretchedExp, "stretched_exp"},
                      {CollapseKind::Mixed, "mixed"},
                      {CollapseKind::Extensive, "extensive"}}) {
                    const CollapseFit f = fit_collapse(per_size, kind);
                    w.row({format_double(x), format_double(sigma), nm,
                           format_double(f.form.alpha),
                           format_double(f.form.beta),
                           format_double(f.quality)});
                }
            }
    }
}

}  // namespace

RunManifest run_scan(const ScanConfig& cfg, const fs::path& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);

    try {
        std::map<PointKey, SampleSet> results;
        RunManifest manifest;
        manifest.config_echo = config_to_json(cfg);
        manifest.master_seed = cfg.ensemble.master_seed;
        manifest.version = kToolVersion;

        for (double sigma : cfg.sigma_list)
            for (double x : cfg.axis_values)
                for (int L : cfg.size_list) {
                    const ChainSpec spec = point_spec(cfg, sigma, x, L);
                    SampleSet s = run_ensemble(spec, cfg.ensemble);
                    manifest.points.push_back(
                        {sigma, x, L,
                         static_cast<int>(s.chi_samples.size()),
                         s.n_flagged});
                    results.emplace(PointKey{sigma, x, L}, std::move(s));
                }

        write_products(cfg, results, out_dir);

        manifest.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        std::ofstream mf(out_dir / "manifest.json");
        mf << manifest.to_json().dump(2) << '\n';
        if (!mf) throw NumericError("cannot write manifest.json");
        return manifest;
    } catch (...) {
        std::ofstream marker(out_dir / "PARTIAL_OUTPUT");
        marker << "run aborted before completion\n";
        throw;
    }
}

// ---- plot emission --------------------------------------------------------

std::vector<fs::path> emit_plot_data(const fs::path& products_dir,
                                     const fs::path& out_dir) {
    fs::create_directories(out_dir);
    std::vector<fs::path> written;

    bool any = false;

    if (fs::exists(products_dir / "chi_summary.csv")) {
        any = true;
        const auto rows = read_csv(products_dir / "chi_summary.csv");
        const fs::path p = out_dir / "plot_chi_summary.csv";
        CsvWriter w(p);
        w.row({"axis_value", "sigma", "L", "chi_ave", "chi_typ", "R"});
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& r = rows[i];
            w.row({r[0], r[1], r[2], r[3], r[4], r[6]});
        }
        written.push_back(p);
    }

    for (const char* hist : {"gap_histogram.csv", "chi_histogram.csv"}) {
        if (!fs::exists(products_dir / hist)) continue;
        any = true;
        const auto rows = read_csv(products_dir / hist);
        const std::string stem =
            std::string(hist) == "gap_histogram.csv" ? "plot_gap_hist"
                                                     : "plot_chi_hist";
        std::map<std::string, std::vector<std::pair<double, double>>> series;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& r = rows[i];
            const std::string key = stem + "_s" + ecdf_tag(std::stod(r[1])) +
                                    "_L" + r[2] + "_x" +
                                    ecdf_tag(std::stod(r[0])) + ".csv";
            const double center =
                0.5 * (std::stod(r[3]) + std::stod(r[4]));
            series[key].emplace_back(center, std::stod(r[6]));
        }
        for (const auto& [name, pts] : series) {
            const fs::path p = out_dir / name;
            CsvWriter w(p);
            w.row({"bin_center", "density"});
            for (const auto& [c, d] : pts)
                w.row({format_double(c), format_double(d)});
            written.push_back(p);
        }
    }

    if (fs::exists(products_dir / "collapse.csv") &&
        fs::exists(products_dir / "chi_samples.csv")) {
        any = true;
        const auto rows = read_csv(products_dir / "collapse.csv");
        const ChiSamplesTable samples =
            read_chi_samples(products_dir / "chi_samples.csv");

        // best form per (sigma, axis value)
        std::map<std::pair<double, double>,
                 std::tuple<std::string, double, double, double>>
            best;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& r = rows[i];
            const std::pair<double, double> key{std::stod(r[1]),
                                                std::stod(r[0])};
            const double q = std::stod(r[5]);
            auto it = best.find(key);
            if (it == best.end() || q < std::get<3>(it->second))
                best[key] = {r[2], std::stod(r[3]), std::stod(r[4]), q};
        }

        const fs::path sp = out_dir / "plot_collapse_summary.csv";
        CsvWriter ws(sp);
        ws.row({"axis_value", "sigma", "form", "alpha", "beta", "quality"});
        for (const auto& [key, val] : best) {
            const auto& [nm, alpha, beta, q] = val;
            ws.row({format_double(key.second), format_double(key.first), nm,
                    format_double(alpha), format_double(beta),
                    format_double(q)});

            CollapseKind kind = CollapseKind::PowerLaw;
            if (nm == "stretched_exp") kind = CollapseKind::StretchedExp;
            else if (nm == "mixed") kind = CollapseKind::Mixed;
            else if (nm == "extensive") kind = CollapseKind::Extensive;

            for (const auto& [skey, chi] : samples) {
                const auto& [sigma, axis_value, L] = skey;
                if (sigma != key.first || axis_value != key.second) continue;
                std::vector<double> ln_chi;
                for (double c : chi) ln_chi.push_back(std::log(c));
                std::vector<double> resc = rescale_distribution(
                    ln_chi, L, CollapseForm{kind, alpha, beta});
                std::sort(resc.begin(), resc.end());
                const fs::path p =
                    out_dir / ("plot_collapse_ecdf_s" + ecdf_tag(sigma) +
                               "_x" + ecdf_tag(axis_value) + "_L" +
                               std::to_string(L) + ".csv");
                CsvWriter w(p);
                w.row({"value", "cdf"});
                for (std::size_t i = 0; i < resc.size(); ++i)
                    w.row({format_double(resc[i]),
                           format_double(static_cast<double>(i + 1) /
                                         static_cast<double>(resc.size()))});
                written.push_back(p);
            }
        }
        written.push_back(sp);
    }

    if (!any)
        throw AnalysisError("emit_plot_data: no product files found in " +
                            products_dir.string());
    return written;
}

ChiSamplesTable read_chi_samples(const fs::path& file) {
    const auto rows = read_csv(file);
    ChiSamplesTable t;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 4) throw AnalysisError("chi_samples.csv: bad row");
        t[{std::stod(r[1]), std::stod(r[0]), std::stoi(r[2])}].push_back(
            std::stod(r[3]));
    }
    return t;
}

std::vector<fs::path> run_collapse(const fs::path& samples_file, double sigma,
                                   double axis_value,
                                   const std::vector<CollapseKind>& kinds,
                                   const fs::path& out_dir) {
    fs::create_directories(out_dir);
    const ChiSamplesTable table = read_chi_samples(samples_file);

    std::vector<std::pair<int, std::vector<double>>> per_size;
    for (const auto& [key, chi] : table) {
        const auto& [s, x, L] = key;
        if (s != sigma || x != axis_value) continue;
        std::vector<double> ln_chi;
        for (double c : chi) ln_chi.push_back(std::log(c));
        per_size.emplace_back(L, std::move(ln_chi));
    }
    if (per_size.size() < 3)
        throw AnalysisError(
            "run_collapse: need samples at >= 3 sizes for the requested "
            "point");

    std::vector<fs::path> written;
    const fs::path sp = out_dir / "collapse_fit.csv";
    CsvWriter w(sp);
    w.row({"axis_value", "sigma", "form", "alpha", "beta", "quality"});

    CollapseFit best;
    best.quality = std::numeric_limits<double>::infinity();
    for (CollapseKind kind : kinds) {
        const CollapseFit f = fit_collapse(per_size, kind);
        const char* nm = kind == CollapseKind::PowerLaw ? "power_law"
                         : kind == CollapseKind::StretchedExp
                             ? "stretched_exp"
                         : kind == CollapseKind::Mixed ? "mixed"
                                                       : "extensive";
        w.row({format_double(axis_value), format_double(sigma), nm,
               format_double(f.form.alpha), format_double(f.form.beta),
               format_double(f.quality)});
        if (f.quality < best.quality) best = f;
    }
    written.push_back(sp);

    for (const auto& [L, ln_chi] : per_size) {
        std::vector<double> resc = rescale_distribution(ln_chi, L, best.form);
        std::sort(resc.begin(), resc.end());
        const fs::path p =
            out_dir / ("collapse_ecdf_L" + std::to_string(L) + ".csv");
        CsvWriter wf(p);
        wf.row({"value", "cdf"});
        for (std::size_t i = 0; i < resc.size(); ++i)
            wf.row({format_double(resc[i]),
                    format_double(static_cast<double>(i + 1) /
                                  static_cast<double>(resc.size()))});
        written.push_back(p);
    }
    return written;
}

OracleCheckResult run_oracle_check(int n_per_combo, std::uint64_t master_seed,
                                   const fs::path& out_dir) {
    OracleCheckResult res;
    std::unique_ptr<CsvWriter> w;
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        w = std::make_unique<CsvWriter>(out_dir / "oracle_check.csv");
        w->row({"L", "sigma", "direction", "index", "exact", "determinant",
                "abs_diff"});
    }

    const double dx = 0.05;
    for (int L : {4, 6, 8})
        for (double sigma : {0.1, 0.3})
            for (Direction dir : {Direction::Field, Direction::Anisotropy})
                for (int i = 0; i < n_per_combo; ++i) {
                    ChainSpec spec{L, 0.8, 0.6, sigma};
                    const DisorderRealization r =
                        sample_realization(spec, master_seed, i);
                    ++res.n_total;
                    double fe;
                    try {
                        fe = exact_fidelity(r, dir, dx);
                    } catch (const AnalysisError&) {
                        ++res.n_degenerate;
                        continue;
                    }
                    const double fd = fidelity(build_matrices(r).Z,
                                               build_z_shifted(r, dir, dx));
                    const double d = std::abs(fe - fd);
                    res.max_abs_diff = std::max(res.max_abs_diff, d);
                    ++res.n_compared;
                    if (w)
                        w->row({std::to_string(L), format_double(sigma),
                                dir == Direction::Field ? "field"
                                                        : "anisotropy",
                                std::to_string(i), format_double(fe),
                                format_double(fd), format_double(d)});
                }
    return res;
}

}  // namespace xychain
