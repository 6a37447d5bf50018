// mrpca command-line front end: synthetic scene generation, decomposition,
// evaluation and convergence diagnostics. Built entirely on the C API in
// mrpca.h; every run writes a manifest sufficient to reproduce it with
// --from-manifest.
//
// Exit codes: 0 success, 1 usage/config error, 2 I/O error,
// 3 solver did not converge (outputs still written), 4 internal error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mrpca.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitInternal = 4;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& message) { throw CliError{code, message}; }

int exit_code_for(mrpca_status st) {
    switch (st) {
        case MRPCA_OK:
            return kExitOk;
        case MRPCA_ERR_IO:
            return kExitIo;
        case MRPCA_ERR_PARSE:
        case MRPCA_ERR_INVALID_ARG:
            return kExitUsage;
        default:
            return kExitInternal;
    }
}

void check(mrpca_status st, const std::string& what) {
    if (st != MRPCA_OK) die(exit_code_for(st), what + ": " + mrpca_last_error());
}

using VolumePtr = std::unique_ptr<mrpca_volume, decltype(&mrpca_volume_free)>;
using ScenePtr = std::unique_ptr<mrpca_scene, decltype(&mrpca_scene_free)>;
using ResultPtr = std::unique_ptr<mrpca_result, decltype(&mrpca_result_free)>;

VolumePtr load_volume(const std::string& path) {
    mrpca_volume* v = nullptr;
    check(mrpca_volume_load(path.c_str(), &v), "loading " + path);
    return VolumePtr(v, &mrpca_volume_free);
}

double volume_norm(const mrpca_volume* v) {
    mrpca_index m = 0, n = 0, k = 0;
    mrpca_volume_dims(v, &m, &n, &k);
    const double* data = mrpca_volume_data(v);
    double acc = 0.0;
    for (mrpca_index i = 0; i < m * n * k; ++i) acc += data[i] * data[i];
    return std::sqrt(acc);
}

// ---- plain key=value files -------------------------------------------------

using KvList = std::vector<std::pair<std::string, std::string>>;

void write_kv_file(const std::string& path, const KvList& kv) {
    std::ofstream out(path, std::ios::binary);
    if (!out) die(kExitIo, "cannot write " + path);
    for (const auto& [key, value] : kv) out << key << "=" << value << "\n";
}

KvList read_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) die(kExitIo, "cannot read " + path);
    KvList kv;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) die(kExitUsage, "malformed manifest line: " + line);
        kv.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return kv;
}

std::optional<std::string> kv_get(const KvList& kv, const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return v;
    return std::nullopt;
}

std::string kv_require(const KvList& kv, const std::string& key, const std::string& where) {
    auto v = kv_get(kv, key);
    if (!v) die(kExitUsage, "manifest missing key '" + key + "' in " + where);
    return *v;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- synth ------------------------------------------------------------------

struct SynthArgs {
    std::string spec_path;
    std::string manifest_path;
    std::string out_dir;
};

int run_synth(const SynthArgs& args) {
    std::string spec_text;
    if (!args.manifest_path.empty()) {
        const KvList manifest = read_kv_file(args.manifest_path);
        if (kv_require(manifest, "command", args.manifest_path) != "synth")
            die(kExitUsage, "manifest is not a synth manifest: " + args.manifest_path);
        std::ostringstream ss;
        for (const auto& [k, v] : manifest)
            if (k.rfind("scene.", 0) == 0) ss << k.substr(6) << "=" << v << "\n";
        spec_text = ss.str();
    } else {
        std::ifstream in(args.spec_path);
        if (!in) die(kExitIo, "cannot read scene spec: " + args.spec_path);
        std::stringstream ss;
        ss << in.rdbuf();
        spec_text = ss.str();
    }

    mrpca_scene* raw_scene = nullptr;
    check(mrpca_scene_generate_text(spec_text.c_str(), &raw_scene), "generating scene");
    ScenePtr scene(raw_scene, &mrpca_scene_free);

    fs::create_directories(args.out_dir);
    const fs::path out(args.out_dir);
    check(mrpca_volume_save_raw(mrpca_scene_observed(scene.get()), (out / "X.raw").c_str()),
          "saving X.raw");
    check(mrpca_volume_save_raw(mrpca_scene_clean(scene.get()), (out / "X_clean.raw").c_str()),
          "saving X_clean.raw");
    check(mrpca_volume_save_raw(mrpca_scene_background(scene.get()),
                                (out / "L_true.raw").c_str()),
          "saving L_true.raw");
    check(mrpca_volume_save_raw(mrpca_scene_mask(scene.get()), (out / "W_true.raw").c_str()),
          "saving W_true.raw");
    check(mrpca_volume_save_raw(mrpca_scene_perturbation(scene.get()),
                                (out / "E_true.raw").c_str()),
          "saving E_true.raw");
    check(mrpca_volume_save_pgm_frames(mrpca_scene_observed(scene.get()), out.c_str(), "X"),
          "saving PGM frames");

    char* resolved = nullptr;
    check(mrpca_scene_spec_text(scene.get(), &resolved), "formatting scene spec");
    const std::string resolved_spec(resolved);
    mrpca_string_free(resolved);

    KvList manifest;
    manifest.emplace_back("command", "synth");
    manifest.emplace_back("version", mrpca_version());
    std::istringstream lines(resolved_spec);
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) {
            const auto eq = line.find('=');
            manifest.emplace_back("scene." + line.substr(0, eq), line.substr(eq + 1));
        }
    const double snr = mrpca_scene_snr_db(scene.get());
    if (!std::isnan(snr)) manifest.emplace_back("snr_realized_db", fmt(snr));
    manifest.emplace_back("outputs", "X.raw,X_clean.raw,L_true.raw,W_true.raw,E_true.raw,X_*.pgm");
    write_kv_file((out / "manifest.txt").string(), manifest);

    std::cout << "scene written to " << args.out_dir;
    if (!std::isnan(snr)) std::cout << " (realized SNR " << snr << " dB)";
    std::cout << "\n";
    return kExitOk;
}

// ---- decompose ----------------------------------------------------------------

struct DecomposeArgs {
    std::string method;
    std::string input;
    std::string out_dir;
    std::string manifest_path;
    bool trace = false;

    // masked / extended
    double lambda_w = -1.0;
    double lambda_z = -1.0;
    double lambda_e = -1.0;
    double rho_x = 1.0;
    double rho_z = 1.0;
    double tau_l = 0.5;
    double tau_w = 0.5;
    // pcp
    double lambda_s = 0.0;
    double mu = 0.0;
    double mu_growth = 1.6;
    std::string threshold;  // fixed value or "otsu"

    long long max_iters = -1;
    double tol_gap = 1e-4;
    double tol_change = 1e-5;
};

void save_result_volume(const mrpca_volume* v, const fs::path& out, const std::string& stem,
                        bool pgm) {
    if (!v) return;
    check(mrpca_volume_save_raw(v, (out / (stem + ".raw")).c_str()), "saving " + stem + ".raw");
    if (pgm)
        check(mrpca_volume_save_pgm_frames(v, out.c_str(), stem.c_str()),
              "saving " + stem + " frames");
}

int run_decompose(DecomposeArgs args) {
    if (!args.manifest_path.empty()) {
        const KvList m = read_kv_file(args.manifest_path);
        if (kv_require(m, "command", args.manifest_path) != "decompose")
            die(kExitUsage, "manifest is not a decompose manifest: " + args.manifest_path);
        args.method = kv_require(m, "method", args.manifest_path);
        args.input = kv_require(m, "input", args.manifest_path);
        args.trace = kv_get(m, "trace").value_or("0") == "1";
        auto num = [&](const char* key, double fallback) {
            auto v = kv_get(m, std::string("param.") + key);
            return v ? std::stod(*v) : fallback;
        };
        args.lambda_w = num("lambda_w", args.lambda_w);
        args.lambda_z = num("lambda_z", args.lambda_z);
        args.lambda_e = num("lambda_e", args.lambda_e);
        args.rho_x = num("rho_x", args.rho_x);
        args.rho_z = num("rho_z", args.rho_z);
        args.tau_l = num("tau_l", args.tau_l);
        args.tau_w = num("tau_w", args.tau_w);
        args.lambda_s = num("lambda_s", args.lambda_s);
        args.mu = num("mu", args.mu);
        args.mu_growth = num("mu_growth", args.mu_growth);
        args.max_iters = static_cast<long long>(num("max_iters", -1.0));
        args.tol_gap = num("tol_gap", args.tol_gap);
        args.tol_change = num("tol_change", args.tol_change);
        if (auto t = kv_get(m, "param.threshold")) args.threshold = *t;
    }

    const bool masked = args.method == "mrpca";
    const bool extended = args.method == "emrpca";
    const bool pcp = args.method == "rpca";
    if (!masked && !extended && !pcp)
        die(kExitUsage, "unknown method '" + args.method + "' (want mrpca|emrpca|rpca)");
    if ((masked || extended) && args.lambda_w <= 0)
        die(kExitUsage, "--lambda-w is required for method " + args.method);
    if (extended && args.lambda_z <= 0)
        die(kExitUsage, "--lambda-z is required for method emrpca");
    if (extended && args.lambda_e <= 0)
        die(kExitUsage, "--lambda-e is required for method emrpca");
    if (pcp && args.threshold.empty())
        die(kExitUsage, "--threshold (value or 'otsu') is required for method rpca");

    VolumePtr x = load_volume(args.input);
    fs::create_directories(args.out_dir);
    const fs::path out(args.out_dir);

    KvList manifest;
    manifest.emplace_back("command", "decompose");
    manifest.emplace_back("version", mrpca_version());
    manifest.emplace_back("method", args.method);
    manifest.emplace_back("input", args.input);
    manifest.emplace_back("trace", args.trace ? "1" : "0");
    auto param = [&manifest](const char* key, const std::string& value) {
        manifest.emplace_back(std::string("param.") + key, value);
    };

    ResultPtr result(nullptr, &mrpca_result_free);
    std::string outputs = "L.raw";

    if (masked) {
        mrpca_masked_config cfg;
        mrpca_masked_config_init(&cfg);
        cfg.lambda_w = args.lambda_w;
        cfg.rho_x = args.rho_x;
        cfg.tau_l = args.tau_l;
        cfg.tau_w = args.tau_w;
        if (args.max_iters > 0) cfg.max_iters = args.max_iters;
        cfg.tol_gap = args.tol_gap;
        cfg.tol_change = args.tol_change;
        param("lambda_w", fmt(cfg.lambda_w));
        param("rho_x", fmt(cfg.rho_x));
        param("tau_l", fmt(cfg.tau_l));
        param("tau_w", fmt(cfg.tau_w));
        param("max_iters", std::to_string(cfg.max_iters));
        param("tol_gap", fmt(cfg.tol_gap));
        param("tol_change", fmt(cfg.tol_change));

        mrpca_result* r = nullptr;
        check(mrpca_solve_masked(x.get(), &cfg, &r), "masked decomposition");
        result.reset(r);
        outputs += ",W.raw";
    } else if (extended) {
        mrpca_extended_config cfg;
        mrpca_extended_config_init(&cfg);
        cfg.lambda_w = args.lambda_w;
        cfg.lambda_z = args.lambda_z;
        cfg.lambda_e = args.lambda_e;
        cfg.rho_x = args.rho_x;
        cfg.rho_z = args.rho_z;
        cfg.tau_l = args.tau_l;
        cfg.tau_w = args.tau_w;
        if (args.max_iters > 0) cfg.max_iters = args.max_iters;
        cfg.tol_gap = args.tol_gap;
        cfg.tol_change = args.tol_change;
        param("lambda_w", fmt(cfg.lambda_w));
        param("lambda_z", fmt(cfg.lambda_z));
        param("lambda_e", fmt(cfg.lambda_e));
        param("rho_x", fmt(cfg.rho_x));
        param("rho_z", fmt(cfg.rho_z));
        param("tau_l", fmt(cfg.tau_l));
        param("tau_w", fmt(cfg.tau_w));
        param("max_iters", std::to_string(cfg.max_iters));
        param("tol_gap", fmt(cfg.tol_gap));
        param("tol_change", fmt(cfg.tol_change));

        mrpca_result* r = nullptr;
        check(mrpca_solve_extended(x.get(), &cfg, &r), "extended decomposition");
        result.reset(r);
        outputs += ",W.raw,E.raw";
    } else {
        mrpca_pcp_config cfg;
        mrpca_pcp_config_init(&cfg);
        cfg.lambda_s = args.lambda_s;
        cfg.mu = args.mu;
        cfg.mu_growth = args.mu_growth;
        if (args.max_iters > 0) cfg.max_iters = args.max_iters;
        if (args.tol_gap > 0) cfg.tol = args.tol_gap;
        param("lambda_s", fmt(cfg.lambda_s));
        param("mu", fmt(cfg.mu));
        param("mu_growth", fmt(cfg.mu_growth));
        param("max_iters", std::to_string(cfg.max_iters));
        param("tol_gap", fmt(cfg.tol));
        param("threshold", args.threshold);

        mrpca_result* r = nullptr;
        check(mrpca_solve_pcp(x.get(), &cfg, &r), "pcp decomposition");
        result.reset(r);
        outputs += ",S.raw,W.raw";
    }

    save_result_volume(mrpca_result_low_rank(result.get()), out, "L", true);
    if (pcp) {
        const mrpca_volume* s = mrpca_result_sparse(result.get());
        save_result_volume(s, out, "S", false);
        const bool otsu = args.threshold == "otsu";
        double fixed = 0.0;
        if (!otsu) {
            try {
                fixed = std::stod(args.threshold);
            } catch (const std::exception&) {
                die(kExitUsage, "--threshold must be a number in [0,1] or 'otsu'");
            }
        }
        mrpca_volume* mask = nullptr;
        double thr = 0.0;
        check(mrpca_mask_from_sparse(s, otsu ? 1 : 0, fixed, &thr, &mask), "mask extraction");
        VolumePtr mask_owner(mask, &mrpca_volume_free);
        save_result_volume(mask, out, "W", true);
        manifest.emplace_back("threshold_applied", fmt(thr));
    } else {
        save_result_volume(mrpca_result_mask(result.get()), out, "W", true);
        save_result_volume(mrpca_result_sparse(result.get()), out, "E", false);
    }
    if (args.trace) {
        check(mrpca_result_write_trace_csv(result.get(), (out / "trace.csv").c_str()),
              "writing trace");
        outputs += ",trace.csv";
    }

    const bool converged = mrpca_result_converged(result.get()) != 0;
    manifest.emplace_back("x_norm", fmt(volume_norm(x.get())));
    manifest.emplace_back("converged", converged ? "1" : "0");
    manifest.emplace_back("iterations", std::to_string(mrpca_result_iterations(result.get())));
    manifest.emplace_back("final_gap_rel", fmt(mrpca_result_final_gap(result.get())));
    manifest.emplace_back("outputs", outputs);
    write_kv_file((out / "manifest.txt").string(), manifest);

    std::cout << args.method << ": " << (converged ? "converged" : "did not converge") << " after "
              << mrpca_result_iterations(result.get())
              << " iterations, relative gap " << mrpca_result_final_gap(result.get()) << "\n";
    return converged ? kExitOk : kExitNotConverged;
}

// ---- eval ---------------------------------------------------------------------

struct EvalArgs {
    std::string mask_path;       // binary mask
    std::string soft_mask_path;  // soft mask, also drives histogram + roc
    std::string truth_path;
    std::string ignore_path;
    std::string recovered_l;
    std::string true_l;
    std::string observed;  // --snr mode
    std::string clean;
    bool roc = false;
    double threshold = 0.5;
    std::string out_dir = ".";
};

int run_eval(const EvalArgs& args) {
    fs::create_directories(args.out_dir);
    const fs::path out(args.out_dir);
    KvList report;
    KvList manifest;
    manifest.emplace_back("command", "eval");
    manifest.emplace_back("version", mrpca_version());

    if (!args.observed.empty() || !args.clean.empty()) {
        if (args.observed.empty() || args.clean.empty())
            die(kExitUsage, "--snr needs both --input and --clean");
        VolumePtr obs = load_volume(args.observed);
        VolumePtr clean = load_volume(args.clean);
        double snr = 0.0;
        check(mrpca_eval_snr(obs.get(), clean.get(), &snr), "snr");
        report.emplace_back("snr_db", fmt(snr));
        manifest.emplace_back("input", args.observed);
        manifest.emplace_back("clean", args.clean);
        std::cout << "snr_db=" << snr << "\n";
    }

    if (!args.mask_path.empty() || !args.soft_mask_path.empty()) {
        if (args.truth_path.empty()) die(kExitUsage, "--truth is required to score a mask");
        const std::string mask_path =
            args.mask_path.empty() ? args.soft_mask_path : args.mask_path;
        VolumePtr mask = load_volume(mask_path);
        VolumePtr truth = load_volume(args.truth_path);
        VolumePtr ignore(nullptr, &mrpca_volume_free);
        if (!args.ignore_path.empty()) ignore = load_volume(args.ignore_path);

        mrpca_eval_report r{};
        check(mrpca_eval_mask(mask.get(), truth.get(), ignore.get(), args.threshold, &r),
              "scoring mask");
        report.emplace_back("re", fmt(r.re));
        report.emplace_back("re_defined", r.re_defined ? "1" : "0");
        report.emplace_back("pre", fmt(r.pre));
        report.emplace_back("pre_defined", r.pre_defined ? "1" : "0");
        report.emplace_back("f1", fmt(r.f1));
        report.emplace_back("f1_defined", r.f1_defined ? "1" : "0");
        report.emplace_back("tp", std::to_string(r.tp));
        report.emplace_back("tn", std::to_string(r.tn));
        report.emplace_back("fp", std::to_string(r.fp));
        report.emplace_back("fn", std::to_string(r.fn));
        manifest.emplace_back("mask", mask_path);
        manifest.emplace_back("truth", args.truth_path);
        manifest.emplace_back("threshold", fmt(args.threshold));
        std::cout << "re=" << r.re << " pre=" << r.pre << " f1=" << r.f1 << "\n";

        if (args.roc) {
            double auc = 0.0;
            check(mrpca_eval_roc(mask.get(), truth.get(), ignore.get(),
                                 (out / "roc.csv").c_str(), &auc),
                  "roc");
            report.emplace_back("auc", fmt(auc));
            std::cout << "auc=" << auc << "\n";
        }
        if (!args.soft_mask_path.empty()) {
            double counts[50];
            check(mrpca_eval_histogram(mask.get(), 50, counts), "histogram");
            std::ofstream hist((out / "whist.csv").string(), std::ios::binary);
            if (!hist) die(kExitIo, "cannot write whist.csv");
            hist << "bin_lo,bin_hi,count\n";
            for (int i = 0; i < 50; ++i)
                hist << i / 50.0 << "," << (i + 1) / 50.0 << "," << counts[i] << "\n";
            double binarity = 0.0;
            check(mrpca_eval_binarity(mask.get(), 0.05, &binarity), "binarity");
            report.emplace_back("binarity", fmt(binarity));
        }
    }

    if (!args.recovered_l.empty() || !args.true_l.empty()) {
        if (args.recovered_l.empty() || args.true_l.empty())
            die(kExitUsage, "psnr needs both --recovered-l and --true-l");
        VolumePtr rec = load_volume(args.recovered_l);
        VolumePtr truth = load_volume(args.true_l);
        double v = 0.0;
        check(mrpca_eval_psnr(rec.get(), truth.get(), &v), "psnr");
        report.emplace_back("psnr_db", std::isinf(v) ? "inf" : fmt(v));
        manifest.emplace_back("recovered_l", args.recovered_l);
        manifest.emplace_back("true_l", args.true_l);
        std::cout << "psnr_db=" << v << "\n";
    }

    if (report.empty())
        die(kExitUsage, "nothing to evaluate: pass --mask/--soft-mask, --recovered-l or --snr");

    write_kv_file((out / "report.txt").string(), report);
    {
        std::ofstream csv((out / "report.csv").string(), std::ios::binary);
        if (!csv) die(kExitIo, "cannot write report.csv");
        for (std::size_t i = 0; i < report.size(); ++i)
            csv << report[i].first << (i + 1 < report.size() ? "," : "\n");
        for (std::size_t i = 0; i < report.size(); ++i)
            csv << report[i].second << (i + 1 < report.size() ? "," : "\n");
    }
    manifest.emplace_back("outputs", "report.txt,report.csv");
    write_kv_file((out / "manifest.txt").string(), manifest);
    return kExitOk;
}

// ---- convergence -----------------------------------------------------------------

struct ConvergenceArgs {
    std::string dir;
    std::string trace_path;
    std::string w_path;
    std::string plot_path;
    double tol_gap = 1e-4;
    double tol_change = 1e-5;
    double x_norm = 0.0;
};

int run_convergence(ConvergenceArgs args) {
    if (!args.dir.empty()) {
        const fs::path d(args.dir);
        args.trace_path = (d / "trace.csv").string();
        const KvList manifest = read_kv_file((d / "manifest.txt").string());
        args.x_norm = std::stod(kv_require(manifest, "x_norm", args.dir));
        if (auto v = kv_get(manifest, "param.tol_gap")) args.tol_gap = std::stod(*v);
        if (auto v = kv_get(manifest, "param.tol_change")) args.tol_change = std::stod(*v);
        if (args.w_path.empty() && fs::exists(d / "W.raw")) args.w_path = (d / "W.raw").string();
    }
    if (args.trace_path.empty()) die(kExitUsage, "pass --dir or --trace");

    std::ifstream in(args.trace_path);
    if (!in) die(kExitIo, "cannot read trace: " + args.trace_path);
    std::string header;
    if (!std::getline(in, header)) die(kExitIo, "empty trace: " + args.trace_path);

    std::vector<double> gap, dL, dW;
    std::vector<int> iters;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 7) die(kExitIo, "malformed trace row: " + line);
        iters.push_back(std::stoi(cells[0]));
        gap.push_back(std::stod(cells[2]));
        dL.push_back(std::stod(cells[3]));
        dW.push_back(std::stod(cells[4]));
    }
    if (iters.empty()) die(kExitIo, "trace has no rows: " + args.trace_path);

    const double x_norm = args.x_norm > 0 ? args.x_norm : 1.0;
    const double final_gap_rel = gap.back() / x_norm;
    const double final_change_rel = std::max(dL.back(), dW.back()) / x_norm;
    const bool converged =
        args.x_norm > 0 && final_gap_rel < args.tol_gap && final_change_rel < args.tol_change;

    std::cout << (converged ? "converged" : "not converged") << "\n";
    std::cout << "iterations=" << iters.back() << "\n";
    std::cout << "final_gap=" << gap.back() << "\n";
    if (args.x_norm > 0) {
        std::cout << "final_gap_rel=" << final_gap_rel << "\n";
        std::cout << "tol_gap=" << args.tol_gap << "\n";
    }

    if (!args.w_path.empty()) {
        VolumePtr w = load_volume(args.w_path);
        double binarity = 0.0;
        check(mrpca_eval_binarity(w.get(), 0.05, &binarity), "binarity");
        std::cout << "binarity=" << binarity << "\n";
    }

    if (!args.plot_path.empty()) {
        std::ofstream plot(args.plot_path, std::ios::binary);
        if (!plot) die(kExitIo, "cannot write plot data: " + args.plot_path);
        plot << "iter,gap,gap_rel\n";
        for (std::size_t i = 0; i < iters.size(); ++i)
            plot << iters[i] << "," << gap[i] << "," << gap[i] / x_norm << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse/low-rank video decomposition under an overlaying model"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "generate a synthetic scene with ground truth");
    synth->add_option("--spec", synth_args.spec_path, "scene spec file (key=value)");
    synth->add_option("--from-manifest", synth_args.manifest_path,
                      "reproduce a previous run from its manifest");
    synth->add_option("--out", synth_args.out_dir, "output directory")->required();

    DecomposeArgs dec;
    auto* decompose = app.add_subcommand("decompose", "run a decomposition method");
    decompose->add_option("--method", dec.method, "mrpca | emrpca | rpca");
    decompose->add_option("--input", dec.input, "input volume (.raw file or PGM directory)");
    decompose->add_option("--from-manifest", dec.manifest_path,
                          "reproduce a previous run from its manifest");
    decompose->add_option("--out", dec.out_dir, "output directory")->required();
    decompose->add_flag("--trace", dec.trace, "write per-iteration trace.csv");
    decompose->add_option("--lambda-w", dec.lambda_w, "mask weight (mrpca, emrpca)");
    decompose->add_option("--lambda-z", dec.lambda_z, "TV weight (emrpca)");
    decompose->add_option("--lambda-e", dec.lambda_e, "perturbation sparsity weight (emrpca)");
    decompose->add_option("--rho-x", dec.rho_x, "overlay penalty parameter");
    decompose->add_option("--rho-z", dec.rho_z, "gradient-split penalty parameter (emrpca)");
    decompose->add_option("--tau-l", dec.tau_l, "proximal step for L");
    decompose->add_option("--tau-w", dec.tau_w, "proximal step for W");
    decompose->add_option("--lambda-s", dec.lambda_s, "sparsity weight (rpca; <=0 auto)");
    decompose->add_option("--mu", dec.mu, "initial penalty (rpca; <=0 auto)");
    decompose->add_option("--mu-growth", dec.mu_growth, "penalty growth factor (rpca)");
    decompose->add_option("--threshold", dec.threshold, "mask threshold for rpca: value or 'otsu'");
    decompose->add_option("--max-iters", dec.max_iters, "iteration cap");
    decompose->add_option("--tol-gap", dec.tol_gap, "relative feasibility tolerance");
    decompose->add_option("--tol-change", dec.tol_change, "relative change tolerance");

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "score masks / backgrounds against ground truth");
    eval->add_option("--mask", ev.mask_path, "binary mask volume");
    eval->add_option("--soft-mask", ev.soft_mask_path, "soft mask volume (adds histogram)");
    eval->add_option("--truth", ev.truth_path, "ground-truth mask volume");
    eval->add_option("--ignore", ev.ignore_path, "pixels to exclude (nonzero = ignored)");
    eval->add_option("--recovered-l", ev.recovered_l, "recovered background volume");
    eval->add_option("--true-l", ev.true_l, "ground-truth background volume");
    eval->add_option("--input", ev.observed, "observed volume (with --clean computes SNR)");
    eval->add_option("--clean", ev.clean, "clean volume (with --input computes SNR)");
    eval->add_flag("--roc", ev.roc, "write roc.csv and report AUC");
    eval->add_option("--threshold", ev.threshold, "binarization threshold for scoring");
    eval->add_option("--out", ev.out_dir, "output directory");

    ConvergenceArgs conv;
    auto* convergence = app.add_subcommand("convergence", "summarize a solver trace");
    convergence->add_option("--dir", conv.dir, "decompose output directory");
    convergence->add_option("--trace", conv.trace_path, "trace.csv path (standalone mode)");
    convergence->add_option("--w", conv.w_path, "mask volume for the binarity figure");
    convergence->add_option("--plot", conv.plot_path, "write gap-vs-iteration plot data CSV");
    convergence->add_option("--tol-gap", conv.tol_gap, "relative gap tolerance");
    convergence->add_option("--tol-change", conv.tol_change, "relative change tolerance");
    convergence->add_option("--x-norm", conv.x_norm, "input volume norm (standalone mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (synth->parsed()) {
            if (synth_args.spec_path.empty() && synth_args.manifest_path.empty())
                die(kExitUsage, "synth needs --spec or --from-manifest");
            return run_synth(synth_args);
        }
        if (decompose->parsed()) {
            if (dec.manifest_path.empty()) {
                if (dec.method.empty()) die(kExitUsage, "--method is required");
                if (dec.input.empty()) die(kExitUsage, "--input is required");
            }
            return run_decompose(dec);
        }
        if (eval->parsed()) return run_eval(ev);
        if (convergence->parsed()) return run_convergence(conv);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
