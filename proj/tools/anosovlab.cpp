// Command-line front end: constructions and verification scans with JSON/CSV output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "anosovlab/parallel.hpp"
#include "anosovlab/report_io.hpp"
#include "anosovlab/sopq.hpp"
#include "anosovlab/verification.hpp"

using namespace anosov;

namespace {

enum Exit { kPass = 0, kFail = 1, kAmbiguous = 2, kUsage = 3, kRuntime = 4 };

struct RepSpec {
    std::string family = "fg";
    double x = 1;
    std::string partition = "2";
    std::string reference = "torus";
    double lambda = 5;
    std::string path;
};

struct Common {
    RepSpec rep;
    int k = 1;
    int L = 3;
    int L_cap = 7;
    double accept = Thresholds{}.accept;
    double reject = Thresholds{}.reject;
    std::string out;
    std::string csv;
    unsigned threads = 0;
    std::optional<std::uint64_t> seed;
};

void add_rep_options(CLI::App* app, RepSpec& r) {
    app->add_option("--family", r.family, "fg | fuchsian | json")
        ->check(CLI::IsMember({"fg", "fuchsian", "json"}));
    app->add_option("--x", r.x, "fg family parameter")->check(CLI::PositiveNumber);
    app->add_option("--partition", r.partition, "block sizes, e.g. 5,1");
    app->add_option("--reference", r.reference, "torus | schottky")->check(CLI::IsMember({"torus", "schottky"}));
    app->add_option("--lambda", r.lambda, "schottky reference eigenvalue");
    app->add_option("--rep", r.path, "representation JSON (with --family json)");
}

void add_scan_options(CLI::App* app, Common& c) {
    add_rep_options(app, c.rep);
    app->add_option("--k", c.k, "index k");
    app->add_option("--L", c.L, "word-ball radius");
    app->add_option("--L-cap", c.L_cap, "largest accepted radius");
    app->add_option("--accept", c.accept, "defect above this passes")->check(CLI::PositiveNumber);
    app->add_option("--reject", c.reject, "defect below this fails")->check(CLI::PositiveNumber);
    app->add_option("--out", c.out, "JSON report path (stdout if absent)");
    app->add_option("--threads", c.threads, "worker threads (0: ANOSOVLAB_THREADS or hardware)");
}

std::vector<int> parse_partition(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (...) {
            throw InputError("bad partition entry '" + item + "'");
        }
    }
    return out;
}

Representation build(const RepSpec& r) {
    auto ref = r.reference == "schottky" ? schottky_reference(r.lambda) : punctured_torus_reference();
    if (r.family == "fg") return fg_rep(r.x);
    if (r.family == "fuchsian") return fuchsian_locus(parse_partition(r.partition), ref);
    if (r.path.empty()) throw InputError("--family json needs --rep");
    std::ifstream f(r.path);
    if (!f) throw InputError("cannot read " + r.path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return representation_from_json(j);
}

void validate(const Common& c) {
    if (c.L < 1) throw InputError("--L must be positive");
    if (c.L > c.L_cap) throw InputError("--L exceeds the cap " + std::to_string(c.L_cap));
    if (!(c.reject < c.accept)) throw InputError("--reject must be below --accept");
    set_thread_count(c.threads);
}

void emit(const json& j, const std::string& path) {
    if (path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_report(path, j, "anosovlab report");
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::Pass: return kPass;
        case Verdict::Fail: return kFail;
        case Verdict::Ambiguous: return kAmbiguous;
    }
    return kRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anosovlab: representations of free groups into SL(d,R) and their boundary checks"};
    app.require_subcommand(1);
    Common c;

    auto* construct = app.add_subcommand("construct", "emit a representation as JSON");
    add_rep_options(construct, c.rep);
    construct->add_option("--out", c.out, "output path (stdout if absent)");

    auto* gap = app.add_subcommand("gap-scan", "per-length minima of log sigma_k/sigma_(k+1)");
    add_scan_options(gap, c);
    GapScanOptions gap_opt;
    gap->add_option("--slope-accept", gap_opt.slope_accept, "slope needed for anosov-like");
    gap->add_option("--slope-flat", gap_opt.slope_flat, "slope below which the scan is flat");
    gap->add_option("--csv", c.csv, "per-length table");

    auto* check = app.add_subcommand("check", "boundary-map conditions");
    std::string what;
    check->add_option("condition", what, "Hk | Ck | hyperconvex | pos-ratioed | eigen-identities")
        ->required()
        ->check(CLI::IsMember({"Hk", "Ck", "hyperconvex", "pos-ratioed", "eigen-identities"}));
    add_scan_options(check, c);
    int gap_L = 0;
    bool keep = false;
    std::string base = "a", gword = "a", xword = "b";
    check->add_option("--gap-L", gap_L, "radius of the gap scans certifying the needed indices (0: skip)");
    check->add_flag("--entries", keep, "list every triple");
    check->add_option("--base", base, "base word for hyperconvex");
    check->add_option("--g", gword, "element for eigen-identities");
    check->add_option("--point", xword, "word whose fixed point is the auxiliary point for eigen-identities");

    auto* collar = app.add_subcommand("collar", "collar inequality over linked pairs");
    add_scan_options(collar, c);
    collar->add_option("--csv", c.csv, "one row per linked pair");

    auto* fgscan = app.add_subcommand("fg-scan", "lambda_1/lambda_2 along the fg family");
    double x_min = 1e-6, x_max = 1;
    int points = 25;
    bool log_grid_flag = false;
    fgscan->add_option("--x-min", x_min)->check(CLI::PositiveNumber);
    fgscan->add_option("--x-max", x_max)->check(CLI::PositiveNumber);
    fgscan->add_option("--points", points)->check(CLI::Range(2, 100000));
    fgscan->add_flag("--log-grid", log_grid_flag, "geometric spacing (default linear)");
    fgscan->add_option("--csv", c.csv, "CSV path (stdout if absent)");
    fgscan->add_option("--threads", c.threads);

    auto* sopq = app.add_subcommand("sopq", "positive elements of SO(p,q) and their coefficients");
    int p = 4, q = 5, samples = 0;
    sopq->add_option("--p", p)->required();
    sopq->add_option("--q", q)->required();
    sopq->add_option("--samples", samples, "random positive elements (needs --seed); 0 uses unit entries");
    sopq->add_option("--seed", c.seed, "RNG seed");
    sopq->add_option("--out", c.out);
    bool as_printed = false;
    sopq->add_flag("--as-printed", as_printed, "use the J v column convention without the parity sign");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : int(kUsage);
    }

    try {
        if (*construct) {
            emit(to_json(build(c.rep)), c.out);
            return kPass;
        }
        if (*fgscan) {
            set_thread_count(c.threads);
            if (!(x_min < x_max)) throw InputError("--x-min must be below --x-max");
            std::vector<double> grid;
            if (log_grid_flag) {
                grid = log_grid(x_min, x_max, points);
            } else {
                for (int i = 0; i < points; ++i) grid.push_back(x_min + (x_max - x_min) * i / (points - 1));
            }
            const auto rows = counterexample_scan(grid);
            const auto table = counterexample_table(rows);
            if (c.csv.empty())
                std::cout << to_csv(table);
            else
                write_csv(c.csv, table);
            bool ok = true;
            for (const auto& r : rows)
                if (std::abs(r.ratio_gamma - r.ratio_delta) > 1e-8 * r.ratio_delta) ok = false;
            return ok ? kPass : kFail;
        }
        if (*sopq) {
            if (samples > 0 && !c.seed) throw InputError("--samples needs --seed");
            const auto data = sopq_form(p, q);
            const auto conv = as_printed ? EConvention::AsPrinted : EConvention::SignCorrected;
            std::mt19937_64 rng(c.seed.value_or(0));
            json runs = json::array();
            bool ok = true;
            const int n = samples > 0 ? samples : 1;
            for (int s = 0; s < n; ++s) {
                std::vector<ThetaVector> v;
                for (int i = 0; i < p - 1; ++i) v.push_back(samples > 0 ? random_theta(data, rng) : unit_theta(data));
                const Matd P = sopq_positive(data, v, conv);
                json run{{"residual", sopq_residual(data, P)}};
                json ks = json::array();
                for (int k = 1; k <= p - 3; ++k) {
                    const auto pc = sopq_positivity_coeffs(P, data, k);
                    const double defect = sopq_model_triple_defect(P, data, k);
                    ok = ok && pc.of_p > 0 && pc.of_inverse > 0 && defect > 1e-6;
                    ks.push_back({{"k", k}, {"coeff", pc.of_p}, {"coeff_inverse", pc.of_inverse}, {"model_defect", defect}});
                }
                run["indices"] = ks;
                if (samples == 0) run["matrix"] = matrix_to_json(P);
                runs.push_back(run);
            }
            emit({{"p", p}, {"q", q}, {"form", matrix_to_json(data.Q)}, {"runs", runs}, {"verdict", ok ? "pass" : "fail"}},
                 c.out);
            return ok ? kPass : kFail;
        }

        validate(c);
        const Representation rep = build(c.rep);
        const Thresholds th{c.accept, c.reject};

        if (*gap) {
            const auto r = anosov_gap_scan(rep, c.k, c.L, gap_opt);
            if (!c.csv.empty()) write_csv(c.csv, gap_table(r));
            emit(to_json(r), c.out);
            return r.verdict == GapVerdict::AnosovLike ? kPass : r.verdict == GapVerdict::Flat ? kFail : kAmbiguous;
        }
        if (*collar) {
            const auto r = collar_scan(rep, c.k, c.L, !c.csv.empty());
            if (!c.csv.empty()) write_csv(c.csv, collar_table(r));
            json j = to_json(r);
            if (rep.rank() >= 2 && is_linked({1}, {2}, rep.ref())) j["generator_pair"] = to_json(collar_check(rep, c.k, {1}, {2}));
            emit(j, c.out);
            return r.violations == 0 && r.weight_chain_violations == 0 ? kPass : kFail;
        }
        if (*check) {
            if (what == "Hk" || what == "Ck") {
                TripleScanOptions opt;
                opt.thresholds = th;
                opt.keep_entries = keep;
                opt.gap_scan_L = gap_L;
                const auto r = triple_scan(rep, what == "Hk" ? TripleCondition::H : TripleCondition::C, c.k, c.L, opt);
                emit(to_json(r), c.out);
                if (!r.certifiable) return r.verdict == Verdict::Fail ? kFail : kAmbiguous;
                return exit_for(r.verdict);
            }
            if (what == "hyperconvex") {
                const auto r = check_projection_hyperconvexity(rep, c.k, parse_word(base), words_of_length(rep.rank(), c.L), th);
                emit(to_json(r), c.out);
                return exit_for(r.verdict);
            }
            if (what == "pos-ratioed") {
                const auto r = check_positively_ratioed(rep, c.k, c.L);
                emit(to_json(r), c.out);
                return r.pass ? kPass : kFail;
            }
            const auto r = check_eigen_identities(rep, c.k, parse_word(gword), parse_word(xword));
            emit(to_json(r), c.out);
            return r.pcr_rel_error <= 1e-7 && r.gcr_rel_error <= 1e-7 && r.gcr_value > 1 ? kPass : kFail;
        }
    } catch (const InputError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::cout << json{{"error", e.kind()}, {"message", e.what()}}.dump(2) << "\n";
        return kUsage;
    } catch (const AmbiguityError& e) {
        std::cout << json{{"error", e.kind()}, {"message", e.what()}, {"angles", e.angles()}}.dump(2) << "\n";
        return kRuntime;
    } catch (const Error& e) {
        std::cerr << e.kind() << " error: " << e.what() << "\n";
        std::cout << json{{"error", e.kind()}, {"message", e.what()}}.dump(2) << "\n";
        return kRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << json{{"error", "internal"}, {"message", e.what()}}.dump(2) << "\n";
        return kRuntime;
    }
    return kUsage;
}
