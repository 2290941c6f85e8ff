// Command-line surface for the Diophantine tuple toolkit. Subcommands emit
// machine-readable JSON; exit codes are 0 on success, 1 when a mathematical
// property fails, 2 on usage errors.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dioph/charsum.hpp"
#include "dioph/checks.hpp"
#include "dioph/constructions.hpp"
#include "dioph/cyclotomic.hpp"
#include "dioph/diophantine.hpp"
#include "dioph/ffcore.hpp"
#include "dioph/oracle.hpp"
#include "dioph/parallel.hpp"
#include "dioph/report_json.hpp"

using namespace dioph;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 1;
constexpr int kExitUsage = 2;

std::vector<std::int64_t> parse_i64_list(const std::string& csv, const char* what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        size_t pos = 0;
        std::int64_t v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(std::string("bad ") + what + ": " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
    return out;
}

std::vector<int> parse_signs(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "+" || tok == "+1" || tok == "1") out.push_back(1);
        else if (tok == "-" || tok == "-1") out.push_back(-1);
        else throw std::invalid_argument("signs must be + or -: " + tok);
    }
    if (out.empty()) throw std::invalid_argument("empty sign list");
    return out;
}

int cmd_field_info(const std::string& field_spec) {
    Field F = parse_field(field_spec);
    json j;
    j["p"] = F.p();
    j["n"] = F.n();
    j["q"] = F.q();
    j["modulus_code"] = F.modulus_code();
    j["modulus_coeffs"] = F.modulus().c;
    j["id"] = F.id();
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_cyclo(std::int64_t n, std::int64_t mod_p, bool as_json) {
    std::vector<std::int64_t> coeffs = mod_p > 0 ? cyclo_mod(mod_p, n).c : cyclo_int(n).c;
    if (as_json) {
        json j{{"n", n}, {"coefficients", coeffs}};
        if (mod_p > 0) j["mod"] = mod_p;
        std::cout << j.dump() << "\n";
    } else {
        for (size_t i = 0; i < coeffs.size(); ++i) {
            std::cout << coeffs[i] << (i + 1 < coeffs.size() ? " " : "");
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& field_spec, const std::string& elements_csv) {
    Field F = parse_field(field_spec);
    auto elements = parse_i64_list(elements_csv, "element");
    auto rep = verify_tuple(F, elements);
    std::sort(elements.begin(), elements.end());
    json j;
    j["field"] = F.id();
    j["elements"] = elements;
    j["ok"] = rep.ok;
    if (rep.ok) {
        j["certificate"] = certificate_json(rep.certificate);
        std::cout << j.dump() << "\n";
        return kExitOk;
    }
    auto [i, k] = *rep.violating_pair;
    j["violating_pair"] = json::array({i, k});
    j["violating_values"] = json::array({elements[i], elements[k]});
    std::cout << j.dump() << "\n";
    return kExitMathFailure;
}

int construct_exit_code(const ConstructionReport& rep) {
    if (!rep.verified) return kExitMathFailure;
    if ((rep.basis == BoundBasis::thm1 || rep.basis == BoundBasis::thm35) && !rep.bound_satisfied) {
        return kExitMathFailure;  // would falsify the bound at this q
    }
    return kExitOk;
}

int cmd_construct(const std::string& field_spec, const std::string& method, std::int64_t m_override,
                  const std::string& variant, std::uint64_t seed) {
    Field F = parse_field(field_spec);
    ConstructionReport rep;
    if (method == "auto") {
        rep = construct_auto(F, seed, variant_from_flag(variant));
    } else {
        rep = construct_with_method(F, method_from_flag(method), m_override, seed,
                                    variant_from_flag(variant));
    }
    std::cout << construction_report_json(rep).dump() << "\n";
    return construct_exit_code(rep);
}

int cmd_exact_m(const std::string& field_spec, std::int64_t max_q, const std::string& cache_path) {
    Field F = parse_field(field_spec);
    MCache cache;
    if (!cache_path.empty()) cache.load(cache_path);
    CliqueResult r = exact_M(F, max_q, cache_path.empty() ? nullptr : &cache);
    if (!cache_path.empty()) cache.save(cache_path);
    std::cout << clique_result_json(F, r).dump() << "\n";
    return kExitOk;
}

int cmd_scan(const std::string& p_csv, int n_min, int n_max, std::int64_t q_max,
             const std::string& residues_csv, const std::string& variant_name,
             const std::string& out_path, std::uint64_t seed, int workers, bool resume) {
    auto p_list = parse_i64_list(p_csv, "prime");
    std::sort(p_list.begin(), p_list.end());
    p_list.erase(std::unique(p_list.begin(), p_list.end()), p_list.end());
    for (std::int64_t p : p_list) {
        if (!is_prime_i64(p) || p == 2) throw std::invalid_argument("scan primes must be odd primes");
    }
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("bad degree range");
    auto residues = parse_i64_list(residues_csv, "residue");
    std::set<std::int64_t> residue_set(residues.begin(), residues.end());
    for (std::int64_t r : residue_set) {
        if (r != 1 && r != 3 && r != 5 && r != 7) {
            throw std::invalid_argument("residues must lie in {1,3,5,7}");
        }
    }
    const QVariant variant = variant_from_flag(variant_name);

    struct Job {
        std::int64_t p;
        int n;
        std::int64_t q;
    };
    std::vector<Job> jobs;
    for (std::int64_t p : p_list) {
        std::int64_t q = 1;
        for (int n = 1; n <= n_max; ++n) {
            if (q > q_max / p) break;
            q *= p;
            if (n < n_min || q <= 7 || q > q_max) continue;
            if (!residue_set.count(q % 8)) continue;
            jobs.push_back({p, n, q});
        }
    }
    std::sort(jobs.begin(), jobs.end(),
              [](const Job& a, const Job& b) { return a.q < b.q || (a.q == b.q && a.p < b.p); });

    // resume contract: a completed run ends with a summary line; an
    // interrupted one is an ordered prefix of report lines
    std::size_t done = 0;
    std::vector<json> reports(jobs.size());
    if (resume) {
        std::ifstream in(out_path);
        std::string line;
        while (in && std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded()) continue;
            if (j.contains("summary")) return kExitOk;  // already complete
            if (j.contains("field") && done < jobs.size()) reports[done++] = std::move(j);
        }
    }

    std::ofstream out(out_path, resume && done > 0 ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    // stream in deterministic order, chunk by chunk, so an interrupted run
    // leaves a usable prefix behind
    constexpr std::size_t kChunk = 32;
    for (std::size_t base = done; base < jobs.size(); base += kChunk) {
        const std::size_t count = std::min(kChunk, jobs.size() - base);
        parallel_for(count, workers, [&](std::size_t i) {
            const Job& job = jobs[base + i];
            Field F(job.p, job.n);
            reports[base + i] = construction_report_json(construct_auto(F, seed, variant));
        });
        for (std::size_t i = 0; i < count; ++i) out << reports[base + i].dump() << "\n";
        out.flush();
    }

    std::int64_t bound_satisfied = 0, vacuous = 0, remark36 = 0, failures = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const json& j = reports[i];
        const std::string basis = j["bound_basis"].get<std::string>();
        const bool sat = j["bound_satisfied"].get<bool>();
        const bool verified = j["verified"].get<bool>();
        if (basis == "vacuous") ++vacuous;
        else if (basis == "remark-3.6") ++remark36;
        else if (sat) ++bound_satisfied;
        if (!verified || ((basis == "thm1" || basis == "thm35") && !sat)) ++failures;
    }
    json summary{{"summary",
                  {{"total", static_cast<std::int64_t>(jobs.size())},
                   {"bound_satisfied", bound_satisfied},
                   {"vacuous", vacuous},
                   {"remark36", remark36},
                   {"failures", failures},
                   {"seed", seed},
                   {"variant", variant_name}}}};
    out << summary.dump() << "\n";
    out.flush();
    std::cerr << "scan: " << jobs.size() << " fields, " << failures << " failures\n";
    return failures == 0 ? kExitOk : kExitMathFailure;
}

int cmd_check(const std::string& suite, std::uint64_t seed, int workers) {
    CheckScales s;
    s.seed = seed;
    s.workers = workers;
    std::vector<PropertyResult> results;
    auto add = [&](const std::string& name) {
        std::vector<PropertyResult> r;
        if (name == "cyclo") r = check_cyclo(s);
        else if (name == "weil") r = check_weil(s);
        else if (name == "pattern") r = check_pattern(s);
        else if (name == "bounds") r = check_bounds(s);
        else if (name == "maximal") r = check_maximal(s);
        else if (name == "ncount") r = check_ncount(s);
        else throw std::invalid_argument("unknown suite: " + name);
        results.insert(results.end(), r.begin(), r.end());
    };
    if (suite == "all") {
        for (const char* name : {"cyclo", "weil", "pattern", "bounds", "maximal", "ncount"}) add(name);
    } else {
        add(suite);
    }
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitOk : kExitMathFailure;
}

int cmd_charsum_weil(const std::string& field_spec, const std::string& poly_csv, int trials,
                     int degmax, std::uint64_t seed) {
    Field F = parse_field(field_spec);
    json out = json::array();
    bool all_ok = true;
    if (!poly_csv.empty()) {
        FpPoly f(parse_i64_list(poly_csv, "coefficient"));
        auto r = weil_check(F, f);
        out.push_back({{"sum", r.sum},
                       {"degree", r.degree},
                       {"distinct_roots", r.distinct_roots},
                       {"bound", r.bound},
                       {"within_bound", r.within_bound}});
        all_ok = r.within_bound;
    } else {
        std::mt19937_64 rng(seed);
        for (int t = 0; t < trials; ++t) {
            FpPoly f;
            while (true) {
                int deg = 1 + static_cast<int>(rng() % degmax);
                f.c.assign(deg + 1, 0);
                for (int i = 0; i < deg; ++i) f.c[i] = static_cast<std::int64_t>(rng() % F.p());
                f.c[deg] = 1;
                FpPoly d = poly_derivative(f, F.p());
                if (!d.is_zero() && poly_gcd(f, d, F.p()).deg() == 0) break;
            }
            auto r = weil_check(F, f);
            out.push_back({{"poly", f.c},
                           {"sum", r.sum},
                           {"distinct_roots", r.distinct_roots},
                           {"within_bound", r.within_bound}});
            all_ok = all_ok && r.within_bound;
        }
    }
    std::cout << json{{"field", F.id()}, {"results", out}, {"all_within_bound", all_ok}}.dump() << "\n";
    return all_ok ? kExitOk : kExitMathFailure;
}

int cmd_charsum_pattern(const std::string& field_spec, const std::string& shifts_csv,
                        const std::string& signs_csv) {
    Field F = parse_field(field_spec);
    auto shifts = parse_i64_list(shifts_csv, "shift");
    auto signs = parse_signs(signs_csv);
    auto r = pattern_count(F, shifts, signs);
    json j{{"field", F.id()},
           {"shifts", shifts},
           {"signs", signs},
           {"count", r.count},
           {"bound", r.bound},
           {"bound_ok", r.bound_ok}};
    std::cout << j.dump() << "\n";
    return r.bound_ok ? kExitOk : kExitMathFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diophantine tuples over finite fields: construction, verification, exact bounds"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 0;
    int workers = 0;
    bool json_flag = false;
    app.add_option("--seed", seed, "seed for all randomized paths");
    app.add_option("--workers", workers, "worker threads (0 = hardware)");
    app.add_flag("--json", json_flag, "JSON output for text-default commands");

    std::string field_spec, elements_csv, method = "auto", variant = "thm1";
    std::int64_t m_override = 0;

    auto* info = app.add_subcommand("field-info", "show the canonical description of a field");
    info->add_option("--field", field_spec, "field as p^n or p^n/modcode")->required();

    auto* cyclo = app.add_subcommand("cyclo", "print cyclotomic polynomial coefficients (low to high)");
    std::int64_t cyclo_n = 0, cyclo_mod_p = 0;
    cyclo->add_option("--n", cyclo_n, "index of the cyclotomic polynomial")->required();
    cyclo->add_option("--mod", cyclo_mod_p, "reduce modulo this odd prime");

    auto* verify = app.add_subcommand("verify", "verify a tuple and emit a certificate");
    verify->add_option("--field", field_spec, "field as p^n or p^n/modcode")->required();
    verify->add_option("--elements", elements_csv, "comma-separated element codes")->required();

    auto* construct = app.add_subcommand("construct", "construct a certified tuple");
    construct->add_option("--field", field_spec, "field as p^n or p^n/modcode")->required();
    construct->add_option("--method", method, "auto|case1|case2|mod8-3|subfield|greedy");
    construct->add_option("--m", m_override, "force the construction parameter m (even)");
    construct->add_option("--variant", variant, "thm1|thm35 Q-variant");

    auto* exactm = app.add_subcommand("exact-m", "exact M(q) by branch-and-bound clique search");
    std::int64_t max_q = kOracleDefaultMaxQ;
    std::string cache_path;
    exactm->add_option("--field", field_spec, "field as p^n or p^n/modcode")->required();
    exactm->add_option("--max-q", max_q, "size policy for the oracle");
    exactm->add_option("--cache", cache_path, "JSON-lines cache file");

    auto* scan = app.add_subcommand("scan", "construct across a family of fields (JSON lines)");
    std::string p_csv, residues_csv = "1,3,5,7", out_path;
    int n_min = 1, n_max = 1;
    std::int64_t q_max = 100000;
    bool resume = false;
    scan->add_option("--p", p_csv, "comma-separated odd primes")->required();
    scan->add_option("--n-min", n_min, "minimum extension degree");
    scan->add_option("--n-max", n_max, "maximum extension degree");
    scan->add_option("--q-max", q_max, "field size cap");
    scan->add_option("--residues", residues_csv, "keep q with q mod 8 in this set");
    scan->add_option("--variant", variant, "thm1|thm35 Q-variant");
    scan->add_option("--out", out_path, "output file (JSON lines)")->required();
    scan->add_flag("--resume", resume, "continue an interrupted run");

    auto* check = app.add_subcommand("check", "run a lemma property suite");
    std::string suite;
    check->add_option("suite", suite, "cyclo|weil|pattern|bounds|maximal|ncount|all")->required();

    auto* charsum_cmd = app.add_subcommand("charsum", "character sum checks");
    charsum_cmd->require_subcommand(1);
    auto* weil = charsum_cmd->add_subcommand("weil", "complete-sum bound for the quadratic character");
    std::string poly_csv;
    int trials = 0, degmax = 8;
    weil->add_option("--field", field_spec, "field as p^n or p^n/modcode")->required();
    weil->add_option("--poly", poly_csv, "polynomial coefficients c0,c1,...");
    weil->add_option("--trials", trials, "random square-free trials instead of --poly");
    weil->add_option("--max-deg", degmax, "degree cap for random trials");
    auto* pattern = charsum_cmd->add_subcommand("pattern", "count sign patterns of shifted characters");
    std::string shifts_csv, signs_csv;
    pattern->add_option("--field", field_spec, "field as p^n or p^n/modcode")->required();
    pattern->add_option("--shifts", shifts_csv, "comma-separated shifts")->required();
    pattern->add_option("--signs", signs_csv, "comma-separated signs (+ or -)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_field_info(field_spec);
        if (cyclo->parsed()) return cmd_cyclo(cyclo_n, cyclo_mod_p, json_flag);
        if (verify->parsed()) return cmd_verify(field_spec, elements_csv);
        if (construct->parsed()) return cmd_construct(field_spec, method, m_override, variant, seed);
        if (exactm->parsed()) return cmd_exact_m(field_spec, max_q, cache_path);
        if (scan->parsed()) {
            return cmd_scan(p_csv, n_min, n_max, q_max, residues_csv, variant, out_path, seed,
                            workers, resume);
        }
        if (check->parsed()) return cmd_check(suite, seed, workers);
        if (weil->parsed()) {
            if (poly_csv.empty() && trials <= 0) {
                throw std::invalid_argument("provide --poly or a positive --trials");
            }
            return cmd_charsum_weil(field_spec, poly_csv, trials, degmax, seed);
        }
        if (pattern->parsed()) return cmd_charsum_pattern(field_spec, shifts_csv, signs_csv);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const construction_unavailable& e) {
        std::cout << json{{"error", e.what()}}.dump() << "\n";
        return kExitMathFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        // an internal invariant broke: a test alarm, not a usage problem
        std::cerr << "property failure: " << e.what() << "\n";
        return kExitMathFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
