// Command-line front end: ring tables, series checks, the decomposition
// oracle (with an on-disk report cache), punctual Hilbert counts, the
// witness pipeline and the verify-all suite.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "splitk/acceptance.hpp"
#include "splitk/elliptic.hpp"
#include "splitk/json_io.hpp"

namespace {

using namespace splitk;

struct GlobalOpts {
    uint64_t seed = 0;
    long dim_budget = 512;
    std::string format = "json";
    std::string cache_dir;  // empty = caching disabled
};

std::string cache_path(const GlobalOpts& g) { return g.cache_dir + "/oracle-cache-v1.json"; }

Json load_cache(const GlobalOpts& g) {
    std::ifstream in(cache_path(g));
    if (!in) return Json{{"schema_version", 1}, {"entries", Json::object()}};
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("entries") || j.value("schema_version", 0) != 1)
        return Json{{"schema_version", 1}, {"entries", Json::object()}};
    return j;
}

void store_cache(const GlobalOpts& g, const Json& cache) {
    std::error_code ec;
    std::filesystem::create_directories(g.cache_dir, ec);
    std::ofstream out(cache_path(g));
    out << cache.dump(2) << "\n";
}

void emit(const GlobalOpts& g, const Json& j, const std::string& csv) {
    if (g.format == "csv")
        std::cout << csv;
    else
        std::cout << j.dump(2) << "\n";
}

long require_ell(long ell) {
    if (ell < 5 || !is_odd_prime(ell))
        throw CLI::ValidationError("--ell", "must be an odd prime >= 5");
    return ell;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact split-Grothendieck-ring and punctual-Hilbert-scheme toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("SPLITK_CACHE_DIR")) g.cache_dir = env;
    app.add_option("--seed", g.seed, "PRNG seed for the decomposition oracle")->capture_default_str();
    app.add_option("--budget-dim", g.dim_budget, "decomposition dimension budget")
        ->capture_default_str();
    app.add_option("--format", g.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--cache-dir", g.cache_dir,
                   "oracle report cache directory (env SPLITK_CACHE_DIR)");

    // ---- witness ----
    long w_ell = 7;
    bool w_full = false;
    auto* sub_witness = app.add_subcommand("witness", "run the non-effectivity pipeline at one ell");
    sub_witness->add_option("--ell", w_ell, "characteristic")->required();
    sub_witness->add_flag("--full", w_full, "include the full forced coefficient sequence");

    // ---- cg-table ----
    long cg_ell = 5;
    auto* sub_cg = app.add_subcommand("cg-table", "tensor decomposition table for one ell");
    sub_cg->add_option("--ell", cg_ell, "characteristic")->required();

    // ---- sym-table ----
    long sy_ell = 7, sy_max = 6;
    auto* sub_sym = app.add_subcommand("sym-table", "symmetric powers of the box class");
    sub_sym->add_option("--ell", sy_ell, "characteristic")->required();
    sub_sym->add_option("--max-n", sy_max, "largest exponent")->required();

    // ---- verify-recur ----
    long vr_ell = 31;
    auto* sub_recur = app.add_subcommand("verify-recur", "check the annihilator identity at one ell");
    sub_recur->add_option("--ell", vr_ell, "characteristic")->required();

    // ---- hilb-count / hilb-cells ----
    long h_n = 4;
    long h_q = 2;
    bool h_dump = false;
    auto* sub_hc = app.add_subcommand("hilb-count", "per-cell ideal counts");
    sub_hc->add_option("--n", h_n, "colength")->required();
    sub_hc->add_option("--q", h_q, "field size (prime)")->required();
    auto* sub_cells = app.add_subcommand("hilb-cells", "cell charts and ideal lists");
    sub_cells->add_option("--n", h_n, "colength")->required();
    sub_cells->add_option("--q", h_q, "field size (prime)")->required();
    sub_cells->add_flag("--dump-ideals", h_dump, "include echelonized ideal bases");

    // ---- oracle-decompose ----
    long od_ell = 5;
    std::string od_expr;
    auto* sub_od = app.add_subcommand("oracle-decompose", "decompose a constructed representation");
    sub_od->add_option("--ell", od_ell, "characteristic")->required();
    sub_od->add_option("--expr", od_expr,
                       "expression: V<i> | W | box(e,e) | tensor(e,e) | sym(e,n) | symc(e,n) | "
                       "ext(e,n) | dsum(e,...)")
        ->required();

    // ---- cross-check ----
    long cc_ell = 5;
    auto* sub_cc = app.add_subcommand(
        "cross-check", "oracle Sym^ell of the box class vs the forced coefficient");
    sub_cc->add_option("--ell", cc_ell, "characteristic (5 or 7)")->required();

    // ---- ap ----
    std::string ap_curve = "11a1";
    long ap_p = 5;
    std::string ap_coeffs;
    auto* sub_ap = app.add_subcommand("ap", "trace of Frobenius by point counting");
    sub_ap->add_option("--curve", ap_curve, "curve label (11a1, 33a1)");
    sub_ap->add_option("--coeffs", ap_coeffs, "explicit a1,a2,a3,a4,a6 (overrides --curve)");
    sub_ap->add_option("--p", ap_p, "prime")->required();

    // ---- verify-all ----
    std::vector<long> va_ells;
    std::vector<std::string> va_hilb;
    bool va_skip_over_budget = false;
    auto* sub_va = app.add_subcommand("verify-all", "run the full verification suite");
    sub_va->add_option("--ell-list", va_ells, "override the characteristic list");
    sub_va->add_option("--hilb-cases", va_hilb, "override colength cases as n:q pairs");
    sub_va->add_flag("--skip-over-budget", va_skip_over_budget,
                     "report over-budget checks as skipped instead of failed");

    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sub_witness) {
            require_ell(w_ell);
            WitnessReport report = run_witness(w_ell);
            Json j = witness_report_to_json(report);
            std::string csv = witness_report_to_csv(report);
            if (w_full) {
                Json seq = Json::array();
                for (const auto& a : report.a) seq.push_back(ring_element_to_json(a));
                j["a_sequence"] = std::move(seq);
                TruncatedSeries s(w_ell, w_ell);
                for (long i = 0; i <= w_ell; ++i) s[i] = report.a[static_cast<size_t>(i)];
                csv += series_to_csv(s);
            }
            emit(g, j, csv);
            return 0;
        }
        if (*sub_cg) {
            require_ell(cg_ell);
            Json rows = Json::array();
            std::ostringstream csv;
            csv << "i,j,decomposition\n";
            for (long i = 0; i <= cg_ell - 1; ++i)
                for (long j = i; j <= cg_ell - 1 && i + j <= cg_ell; ++j) {
                    auto labels = tensor_h(cg_ell, i, j);
                    std::string text;
                    for (size_t k = 0; k < labels.size(); ++k)
                        text += (k ? " " : "") + labels[k].to_string();
                    rows.push_back(Json{{"i", i}, {"j", j}, {"summands", text}});
                    csv << i << "," << j << "," << text << "\n";
                }
            emit(g, Json{{"schema_version", 1}, {"ell", cg_ell}, {"rows", rows}}, csv.str());
            return 0;
        }
        if (*sub_sym) {
            require_ell(sy_ell);
            if (sy_max > sy_ell - 1)
                throw OutOfRangeError("sym-table: max-n must be <= ell-1");
            Json rows = Json::array();
            std::ostringstream csv;
            csv << "n,label,coefficient\n";
            for (long n = 0; n <= sy_max; ++n) {
                RingElement e = sym_power_box(sy_ell, n);
                rows.push_back(Json{{"n", n}, {"value", ring_element_to_json(e)}});
                for (const auto& [label, c] : e.terms())
                    csv << n << "," << label.to_string() << "," << c.to_string() << "\n";
            }
            emit(g, Json{{"schema_version", 1}, {"ell", sy_ell}, {"rows", rows}}, csv.str());
            return 0;
        }
        if (*sub_recur) {
            require_ell(vr_ell);
            TruncatedSeries zeta(vr_ell, vr_ell - 1);
            for (long i = 0; i <= vr_ell - 1; ++i) zeta[i] = sym_power_box(vr_ell, i);
            TruncatedSeries lam(vr_ell, vr_ell - 1);
            auto coeffs = lambda_box(vr_ell);
            for (long i = 0; i < static_cast<long>(coeffs.size()) && i <= vr_ell - 1; ++i)
                lam[i] = coeffs[static_cast<size_t>(i)];
            bool ok = mul_series(lam, zeta) == TruncatedSeries::unit(vr_ell, vr_ell - 1);
            emit(g, Json{{"schema_version", 1}, {"ell", vr_ell}, {"identity_holds", ok}},
                 "ell,identity_holds\n" + std::to_string(vr_ell) + "," + (ok ? "true" : "false") +
                     "\n");
            return ok ? 0 : 1;
        }
        if (*sub_hc || *sub_cells) {
            CellReport report = verify_cell_decomposition(h_n, static_cast<uint32_t>(h_q));
            Json j = cell_report_to_json(report);
            if (*sub_cells && h_dump) {
                Json dumps = Json::array();
                for (const auto& ideal : enumerate_ideals(h_n, static_cast<uint32_t>(h_q))) {
                    Json rows = Json::array();
                    for (const auto& row : ideal.rows) rows.push_back(row);
                    dumps.push_back(Json{{"profile", colon_profile(ideal).to_string()},
                                         {"rows", std::move(rows)}});
                }
                j["ideals"] = std::move(dumps);
            }
            emit(g, j, cell_report_to_csv(report));
            return 0;
        }
        if (*sub_od) {
            require_ell(od_ell);
            Oracle oracle(od_ell, {g.dim_budget, g.seed});
            auto [rep, canonical] = build_rep_expr(oracle, od_expr);
            std::string key = "ell=" + std::to_string(od_ell) + ";seed=" + std::to_string(g.seed) +
                              ";expr=" + canonical;
            Json cache;
            if (!g.cache_dir.empty()) {
                cache = load_cache(g);
                if (cache["entries"].contains(key)) {
                    Json j = cache["entries"][key];
                    j["cache"] = "hit";
                    emit(g, j, j.dump(2) + "\n");
                    return 0;
                }
            }
            Json j = decomposition_report_to_json(oracle.decompose(rep));
            j["expr"] = canonical;
            if (!g.cache_dir.empty()) {
                cache["entries"][key] = j;
                store_cache(g, cache);
                j["cache"] = "miss";
            }
            std::ostringstream csv;
            csv << "label,multiplicity,dim,dim_end,dim_rad\n";
            for (const auto& s : j["summands"])
                csv << (s["label"].is_string()
                            ? s["label"].get<std::string>()
                            : s["label"]["left"].get<std::string>() + "#" +
                                  s["label"]["right"].get<std::string>())
                    << "," << s["multiplicity"] << "," << s["dim"] << "," << s["dim_end"] << ","
                    << s["dim_rad"] << "\n";
            emit(g, j, csv.str());
            return 0;
        }
        if (*sub_cc) {
            Oracle oracle(cc_ell, {g.dim_budget, g.seed});
            CrossCheckReport report = cross_check_actual_sym_ell(oracle);
            Json j = cross_check_report_to_json(report);
            emit(g, j, j.dump(2) + "\n");
            return 0;
        }
        if (*sub_ap) {
            EllipticCurve curve;
            if (!ap_coeffs.empty()) {
                std::istringstream in(ap_coeffs);
                std::string tok;
                std::vector<long> vals;
                while (std::getline(in, tok, ',')) vals.push_back(std::stol(tok));
                if (vals.size() != 5)
                    throw std::invalid_argument("--coeffs needs exactly a1,a2,a3,a4,a6");
                curve = EllipticCurve{"custom", vals[0], vals[1], vals[2], vals[3], vals[4]};
            } else {
                curve = curve_by_label(ap_curve);
            }
            long ap = elliptic_ap(curve, ap_p);
            emit(g,
                 Json{{"schema_version", 1},
                      {"curve", curve.label},
                      {"p", ap_p},
                      {"ap", ap},
                      {"supersingular", ap % ap_p == 0}},
                 "curve,p,ap\n" + curve.label + "," + std::to_string(ap_p) + "," +
                     std::to_string(ap) + "\n");
            return 0;
        }
        if (*sub_va) {
            RunConfig cfg;
            cfg.seed = g.seed;
            cfg.dim_budget = g.dim_budget;
            cfg.skip_over_budget = va_skip_over_budget;
            if (!va_ells.empty()) cfg.ells = va_ells;
            if (!va_hilb.empty()) {
                cfg.hilb_cases.clear();
                for (const auto& item : va_hilb) {
                    auto colon = item.find(':');
                    if (colon == std::string::npos)
                        throw std::invalid_argument("--hilb-cases entries must look like n:q");
                    cfg.hilb_cases.push_back({std::stol(item.substr(0, colon)),
                                              static_cast<uint32_t>(std::stoul(item.substr(colon + 1)))});
                }
            }
            validate_config(cfg);
            auto results = run_acceptance_checks(cfg);
            results.push_back(run_determinism_check(cfg, results));
            for (const auto& r : results)
                std::cerr << "[" << r.status << "] check " << r.id << " (" << r.name << ") "
                          << r.seconds << "s\n";
            std::cout << render_report(cfg, results);
            bool ok = true;
            for (const auto& r : results) ok = ok && (r.passed() || r.status == "skip");
            return ok ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        const char* kind = "error";
        if (dynamic_cast<const OutOfRangeError*>(&e)) kind = "OutOfRange";
        else if (dynamic_cast<const BudgetExceededError*>(&e)) kind = "BudgetExceeded";
        else if (dynamic_cast<const BadReductionError*>(&e)) kind = "BadReduction";
        else if (dynamic_cast<const SeedInconsistentError*>(&e)) kind = "SeedInconsistent";
        else if (dynamic_cast<const CertificateError*>(&e)) kind = "CertificateFailed";
        else if (dynamic_cast<const InternalCheckError*>(&e)) kind = "InternalCheckFailed";
        else if (dynamic_cast<const std::invalid_argument*>(&e)) kind = "InvalidArgument";
        Json err{{"error", kind}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 0;
}
