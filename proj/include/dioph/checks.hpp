#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dioph {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Scales for the lemma suites; the defaults are the tested contract, unit
// tests may shrink them.
struct CheckScales {
    std::vector<std::int64_t> cyclo_primes{3, 5, 7, 11, 13};
    std::int64_t cyclo_product_nmax = 300;
    std::int64_t cyclo_clause_nmax = 200;

    int weil_trials = 1000;
    std::int64_t weil_qmax = 2003;
    int weil_degmax = 8;

    std::int64_t pattern_qmax = 1009;
    int pattern_shift_sets = 20;

    std::int64_t bounds_pmax = 97;
    std::int64_t bounds_mmax = 500;

    std::int64_t maximal_qmax = 200;
    int maximal_samples = 100;
    std::int64_t maximal_exhaustive_qmax = 100;

    std::int64_t ncount_qmax = 100000;
    std::int64_t ncount_mmax = 12;
    std::int64_t ncount_recon_qmax = 2000;

    std::uint64_t seed = 0;
    int workers = 0;  // 0 = hardware
};

std::vector<PropertyResult> check_cyclo(const CheckScales& s = {});
std::vector<PropertyResult> check_weil(const CheckScales& s = {});
std::vector<PropertyResult> check_pattern(const CheckScales& s = {});
std::vector<PropertyResult> check_bounds(const CheckScales& s = {});
std::vector<PropertyResult> check_maximal(const CheckScales& s = {});
std::vector<PropertyResult> check_ncount(const CheckScales& s = {});

// all odd prime powers p^n <= qmax as (p, n), ascending by value
std::vector<std::pair<std::int64_t, int>> odd_prime_powers_upto(std::int64_t qmax);
std::vector<std::int64_t> primes_upto(std::int64_t limit);

}  // namespace dioph
