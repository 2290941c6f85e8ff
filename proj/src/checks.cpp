#include "dioph/checks.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "dioph/charsum.hpp"
#include "dioph/constructions.hpp"
#include "dioph/cyclotomic.hpp"
#include "dioph/diophantine.hpp"
#include "dioph/ffcore.hpp"
#include "dioph/oracle.hpp"
#include "dioph/parallel.hpp"

namespace dioph {

std::vector<std::int64_t> primes_upto(std::int64_t limit) {
    std::vector<std::int64_t> out;
    if (limit < 2) return out;
    std::vector<bool> sieve(limit + 1, true);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i) sieve[j] = false;
    }
    return out;
}

std::vector<std::pair<std::int64_t, int>> odd_prime_powers_upto(std::int64_t qmax) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p : primes_upto(qmax)) {
        if (p == 2) continue;
        std::int64_t q = p;
        int n = 1;
        while (q <= qmax) {
            out.emplace_back(p, n);
            if (q > qmax / p) break;
            q *= p;
            ++n;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        auto value = [](const auto& pn) {
            std::int64_t q = 1;
            for (int i = 0; i < pn.second; ++i) q *= pn.first;
            return q;
        };
        return value(a) < value(b);
    });
    return out;
}

namespace {

PropertyResult make_result(std::string name, bool pass, std::string detail) {
    return {std::move(name), pass, std::move(detail)};
}

}  // namespace

std::vector<PropertyResult> check_cyclo(const CheckScales& s) {
    std::vector<PropertyResult> out;

    // product identity over Z
    {
        bool ok = true;
        std::string detail;
        for (std::int64_t n = 1; n <= s.cyclo_product_nmax && ok; ++n) {
            IntPoly prod = IntPoly::one();
            for (std::int64_t d = 1; d <= n; ++d) {
                if (n % d == 0) prod = ipoly_mul(prod, cyclo_int(d));
            }
            IntPoly target;
            target.c.assign(n + 1, 0);
            target.c[0] = -1;
            target.c[n] = 1;
            if (!(prod == target)) {
                ok = false;
                detail = "mismatch at n = " + std::to_string(n);
            }
            if (cyclo_int(n).deg() != euler_phi(n)) {
                ok = false;
                detail = "degree != phi at n = " + std::to_string(n);
            }
        }
        out.push_back(make_result("cyclo.product-identity-Z",
                                  ok, ok ? "n <= " + std::to_string(s.cyclo_product_nmax) : detail));
    }

    // product identity and degree over each F_p
    for (std::int64_t p : s.cyclo_primes) {
        bool ok = true;
        std::string detail;
        for (std::int64_t n = 1; n <= s.cyclo_product_nmax && ok; ++n) {
            FpPoly prod = FpPoly::one();
            for (std::int64_t d = 1; d <= n; ++d) {
                if (n % d == 0) prod = poly_mul(prod, cyclo_mod(p, d), p);
            }
            FpPoly target;
            target.c.assign(n + 1, 0);
            target.c[0] = p - 1;
            target.c[n] = 1;
            if (!(prod == target)) {
                ok = false;
                detail = "mismatch at n = " + std::to_string(n);
            }
            if (cyclo_mod(p, n).deg() != euler_phi(n)) {
                ok = false;
                detail = "degree != phi at n = " + std::to_string(n);
            }
        }
        out.push_back(make_result("cyclo.product-identity-mod-" + std::to_string(p), ok,
                                  ok ? "n <= " + std::to_string(s.cyclo_product_nmax) : detail));
    }

    // closed form for p | n: with n = p^a r, Phi_n = Phi_r^((p-1) p^(a-1)) mod p
    for (std::int64_t p : s.cyclo_primes) {
        bool ok = true;
        std::string detail;
        for (std::int64_t n = p; n <= s.cyclo_product_nmax && ok; n += p) {
            std::int64_t r = n, pa = 1;
            while (r % p == 0) {
                r /= p;
                pa *= p;
            }
            FpPoly expect = poly_pow(cyclo_mod(p, r), (p - 1) * (pa / p), p);
            if (!(expect == cyclo_mod(p, n))) {
                ok = false;
                detail = "closed form failed at n = " + std::to_string(n);
            }
        }
        out.push_back(make_result("cyclo.p-power-closed-form-mod-" + std::to_string(p), ok,
                                  ok ? "n <= " + std::to_string(s.cyclo_product_nmax) : detail));
    }

    // clauses: squares for p | n, square-freeness for p coprime, pairwise coprimality
    for (std::int64_t p : s.cyclo_primes) {
        bool ok = true;
        std::string detail;
        for (std::int64_t n = 1; n <= s.cyclo_clause_nmax && ok; ++n) {
            auto rep = phi_properties_check(p, n, std::nullopt);
            if (!rep.all()) {
                ok = false;
                detail = "clause failed at n = " + std::to_string(n);
            }
        }
        std::mutex mu;
        parallel_for(ok ? s.cyclo_clause_nmax : 0, s.workers, [&](std::size_t idx) {
            std::int64_t n = static_cast<std::int64_t>(idx) + 1;
            if (n % p == 0) return;
            for (std::int64_t n2 = n + 1; n2 <= s.cyclo_clause_nmax; ++n2) {
                if (n2 % p == 0) continue;
                if (poly_gcd(cyclo_mod(p, n), cyclo_mod(p, n2), p).deg() != 0) {
                    std::lock_guard<std::mutex> lock(mu);
                    ok = false;
                    detail = "not coprime: " + std::to_string(n) + ", " + std::to_string(n2);
                    return;
                }
            }
        });
        out.push_back(make_result("cyclo.lemma-clauses-mod-" + std::to_string(p), ok,
                                  ok ? "n, n' <= " + std::to_string(s.cyclo_clause_nmax) : detail));
    }
    return out;
}

namespace {

// shared pool of fields for the randomized suites
class FieldPool {
public:
    explicit FieldPool(std::int64_t qmax) : specs_(odd_prime_powers_upto(qmax)) {
        fields_.resize(specs_.size());
    }

    std::size_t size() const { return specs_.size(); }

    const Field& at(std::size_t i) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!fields_[i]) fields_[i] = std::make_unique<Field>(specs_[i].first, specs_[i].second);
        return *fields_[i];
    }

    std::int64_t value(std::size_t i) const {
        std::int64_t q = 1;
        for (int k = 0; k < specs_[i].second; ++k) q *= specs_[i].first;
        return q;
    }

private:
    std::vector<std::pair<std::int64_t, int>> specs_;
    std::vector<std::unique_ptr<Field>> fields_;
    std::mutex mu_;
};

FpPoly random_squarefree_monic(std::mt19937_64& rng, std::int64_t p, int degmax) {
    while (true) {
        int deg = 1 + static_cast<int>(rng() % degmax);
        FpPoly f;
        f.c.assign(deg + 1, 0);
        for (int i = 0; i < deg; ++i) f.c[i] = static_cast<std::int64_t>(rng() % p);
        f.c[deg] = 1;
        FpPoly d = poly_derivative(f, p);
        if (d.is_zero()) continue;
        if (poly_gcd(f, d, p).deg() == 0) return f;
    }
}

}  // namespace

std::vector<PropertyResult> check_weil(const CheckScales& s) {
    FieldPool pool(s.weil_qmax);
    std::mt19937_64 rng(s.seed * 0x9e3779b97f4a7c15ULL + 0xb5297a4d3549df28ULL);
    struct Trial {
        std::size_t field_idx;
        FpPoly f;
    };
    std::vector<Trial> trials;
    trials.reserve(s.weil_trials);
    for (int t = 0; t < s.weil_trials; ++t) {
        std::size_t fi = rng() % pool.size();
        trials.push_back({fi, random_squarefree_monic(rng, pool.at(fi).p(), s.weil_degmax)});
    }
    std::mutex mu;
    bool ok = true;
    bool roots_ok = true;
    std::string detail;
    parallel_for(trials.size(), s.workers, [&](std::size_t i) {
        const Field& F = pool.at(trials[i].field_idx);
        auto res = weil_check(F, trials[i].f);
        bool within = res.within_bound;
        bool droots = res.distinct_roots == trials[i].f.deg();
        if (!within || !droots) {
            std::lock_guard<std::mutex> lock(mu);
            if (!within) {
                ok = false;
                detail = "bound violated over " + F.id() + " (sum " + std::to_string(res.sum) + ")";
            }
            if (!droots) roots_ok = false;
        }
    });
    std::vector<PropertyResult> out;
    out.push_back(make_result("weil.random-squarefree-within-bound", ok,
                              ok ? std::to_string(s.weil_trials) + " trials, q <= " +
                                       std::to_string(s.weil_qmax)
                                 : detail));
    out.push_back(make_result("weil.squarefree-distinct-roots-equal-degree", roots_ok,
                              roots_ok ? "radical degree matches" : "mismatch observed"));
    return out;
}

std::vector<PropertyResult> check_pattern(const CheckScales& s) {
    // deterministic spread of fields across (0, pattern_qmax]
    std::vector<std::pair<std::int64_t, int>> specs;
    for (auto& [p, n] : odd_prime_powers_upto(s.pattern_qmax)) {
        std::int64_t q = 1;
        for (int i = 0; i < n; ++i) q *= p;
        if (n > 1 || q <= 50 || specs.size() % 7 == 0) specs.emplace_back(p, n);
    }
    bool bound_ok = true, partition_ok = true;
    std::string detail;
    std::mutex mu;
    parallel_for(specs.size(), s.workers, [&](std::size_t idx) {
        Field F(specs[idx].first, specs[idx].second);
        std::mt19937_64 rng(s.seed ^ (0x123456789abcdefULL + idx));
        for (int k = 1; k <= 3; ++k) {
            for (int set = 0; set < s.pattern_shift_sets; ++set) {
                std::vector<std::int64_t> shifts;
                std::set<std::int64_t> used;
                while (static_cast<int>(shifts.size()) < k) {
                    std::int64_t a = static_cast<std::int64_t>(rng() % F.q());
                    if (used.insert(a).second) shifts.push_back(a);
                }
                std::int64_t total = 0;
                for (int mask = 0; mask < (1 << k); ++mask) {
                    std::vector<int> signs(k);
                    for (int b = 0; b < k; ++b) signs[b] = (mask >> b) & 1 ? 1 : -1;
                    auto pc = pattern_count(F, shifts, signs);
                    total += pc.count;
                    if (!pc.bound_ok) {
                        std::lock_guard<std::mutex> lock(mu);
                        bound_ok = false;
                        detail = "bound violated over " + F.id();
                    }
                }
                if (total != F.q() - k) {
                    std::lock_guard<std::mutex> lock(mu);
                    partition_ok = false;
                    detail = "partition mismatch over " + F.id();
                }
            }
        }
    });
    std::vector<PropertyResult> out;
    out.push_back(make_result("pattern.sign-pattern-bound", bound_ok,
                              bound_ok ? "k <= 3, all sign patterns, q <= " +
                                             std::to_string(s.pattern_qmax)
                                       : detail));
    out.push_back(make_result("pattern.partition-identity", partition_ok,
                              partition_ok ? "sum over patterns = q - k" : detail));
    return out;
}

std::vector<PropertyResult> check_bounds(const CheckScales& s) {
    bool ok = true;
    std::string detail;
    for (std::int64_t p : primes_upto(s.bounds_pmax)) {
        if (p == 2) continue;
        for (std::int64_t m = 2; m <= s.bounds_mmax; ++m) {
            BoundTerms bt = bound_terms(p, m);  // throws if the inequality fails
            if (bt.S * (p - 1) >= p * bt.T * bt.T || bt.T != static_cast<std::int64_t>(bt.I.size()) ||
                bt.S > 2 * bt.s_small) {
                ok = false;
                detail = "failed at p = " + std::to_string(p) + ", m = " + std::to_string(m);
            }
        }
    }
    return {make_result("bounds.totient-sum-inequality", ok,
                        ok ? "p <= " + std::to_string(s.bounds_pmax) + ", m <= " +
                                 std::to_string(s.bounds_mmax)
                           : detail)};
}

std::vector<PropertyResult> check_maximal(const CheckScales& s) {
    auto specs = odd_prime_powers_upto(s.maximal_qmax);
    bool bound_ok = true, closure_ok = true, enumeration_ok = true;
    std::string detail;
    std::mutex mu;
    parallel_for(specs.size(), s.workers, [&](std::size_t idx) {
        Field F(specs[idx].first, specs[idx].second);
        const std::int64_t q = F.q();
        std::set<std::vector<std::int64_t>> sampled;
        std::mt19937_64 rng(s.seed ^ (0xabcdef12ULL * (idx + 1)));
        for (int t = 0; t < s.maximal_samples; ++t) {
            std::int64_t x = 1 + static_cast<std::int64_t>(rng() % (q - 1));
            auto tuple = greedy_maximal(F, {x}, s.seed + t);
            if (!maximal_bound_check(q, static_cast<std::int64_t>(tuple.size()))) {
                std::lock_guard<std::mutex> lock(mu);
                bound_ok = false;
                detail = "q = " + std::to_string(q) + ", maximal size " + std::to_string(tuple.size());
            }
            sampled.insert(std::move(tuple));
        }
        if (q <= s.maximal_exhaustive_qmax) {
            std::set<std::vector<std::int64_t>> enumerated;
            auto graph = build_graph(F);
            enumerate_maximal_cliques(graph, [&](const std::vector<std::int64_t>& clique) {
                if (!maximal_bound_check(q, static_cast<std::int64_t>(clique.size()))) {
                    std::lock_guard<std::mutex> lock(mu);
                    enumeration_ok = false;
                    detail = "enumerated maximal tuple violates the bound at q = " + std::to_string(q);
                }
                enumerated.insert(clique);
            });
            for (const auto& t : sampled) {
                if (!enumerated.count(t)) {
                    std::lock_guard<std::mutex> lock(mu);
                    closure_ok = false;
                    detail = "greedy sample missing from enumeration at q = " + std::to_string(q);
                }
            }
        }
    });
    std::vector<PropertyResult> out;
    out.push_back(make_result("maximal.sampled-tuples-satisfy-bound", bound_ok,
                              bound_ok ? std::to_string(s.maximal_samples) + " samples per q <= " +
                                             std::to_string(s.maximal_qmax)
                                       : detail));
    out.push_back(make_result("maximal.exhaustive-enumeration-bound", enumeration_ok,
                              enumeration_ok ? "all maximal tuples, q <= " +
                                                   std::to_string(s.maximal_exhaustive_qmax)
                                             : detail));
    out.push_back(make_result("maximal.greedy-closure-agreement", closure_ok,
                              closure_ok ? "samples appear in the exhaustive enumeration" : detail));
    return out;
}

std::vector<PropertyResult> check_ncount(const CheckScales& s) {
    // grid: all powers of the small primes up to the cap, plus a prime spread
    std::vector<std::pair<std::int64_t, int>> specs;
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        std::int64_t q = p;
        int n = 1;
        while (q <= s.ncount_qmax) {
            specs.emplace_back(p, n);
            if (q > s.ncount_qmax / p) break;
            q *= p;
            ++n;
        }
    }
    for (std::int64_t p : {23, 101, 1009, 10007, 99991}) {
        if (p <= s.ncount_qmax) specs.emplace_back(p, 1);
    }
    struct Violation {
        std::string field;
        std::int64_t m;
        std::int64_t exact;
        double bound;
    };
    std::vector<Violation> violations;
    bool recon_ok = true;
    std::int64_t comparisons = 0;
    std::string detail;
    std::mutex mu;
    parallel_for(specs.size(), s.workers, [&](std::size_t idx) {
        Field F(specs[idx].first, specs[idx].second);
        for (std::int64_t m = 2; m <= s.ncount_mmax; ++m) {
            auto nc = count_N(F, m);
            {
                std::lock_guard<std::mutex> lock(mu);
                ++comparisons;
                if (!nc.exact_ge_bound) {
                    violations.push_back({F.id(), m, nc.exact, nc.analytic_lower_bound});
                }
            }
            if (F.q() <= s.ncount_recon_qmax) {
                auto scan = nt_product_scan(F, m);
                bool match = scan.product_sum - scan.vanishing_sum ==
                             (nc.exact << scan.T);
                if (!match) {
                    std::lock_guard<std::mutex> lock(mu);
                    recon_ok = false;
                    detail = "product form mismatch at " + F.id() + ", m = " + std::to_string(m);
                }
            }
        }
    });
    std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        return a.field < b.field || (a.field == b.field && a.m < b.m);
    });
    std::vector<PropertyResult> out;
    {
        bool ok = violations.empty();
        std::ostringstream ss;
        if (ok) {
            ss << comparisons << " grid points, q <= " << s.ncount_qmax;
        } else {
            ss << violations.size() << "/" << comparisons
               << " grid points fall below the closed-form bound; e.g. ";
            for (std::size_t i = 0; i < std::min<std::size_t>(3, violations.size()); ++i) {
                const auto& v = violations[i];
                ss << v.field << " m=" << v.m << " exact=" << v.exact << " bound=" << v.bound << "; ";
            }
            ss << "the displayed bound overshoots by ~sqrt(q)/2 at small m";
        }
        out.push_back(make_result("ncount.exact-ge-analytic-bound", ok, ss.str()));
    }
    out.push_back(make_result("ncount.product-form-reconciliation", recon_ok,
                              recon_ok ? "literal product scan matches the predicate count (q <= " +
                                             std::to_string(s.ncount_recon_qmax) + ")"
                                       : detail));
    return out;
}

}  // namespace dioph
