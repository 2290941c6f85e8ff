#pragma once

#include <cstdint>
#include <vector>

#include "dioph/ffcore.hpp"

namespace dioph {

struct CharSumResult {
    std::int64_t sum = 0;
    int degree = 0;
    int distinct_roots = 0;  // over the splitting field: degree of the radical
    double bound = 0.0;      // (distinct_roots - 1) * sqrt(q)
    bool within_bound = false;
};

// Exact sum of chi(f(x)) over all x in F_q by full scan. f is nonzero over F_p.
std::int64_t char_sum(const Field& F, const FpPoly& f);

// Complete-sum bound check for the quadratic character: f must be monic of
// positive degree and not a perfect square of a polynomial (the hypothesis is
// enforced; violations raise invalid_argument and char_sum remains available
// for the raw value). The bound comparison is exact: sum^2 <= (n-1)^2 q.
CharSumResult weil_check(const Field& F, const FpPoly& f);

struct PatternCount {
    std::int64_t count = 0;
    double bound = 0.0;
    bool bound_ok = false;
};

// N = #{x : chi(x + shifts[i]) = signs[i] for all i}, with the order-2 sign
// pattern bound |N - q/2^k| <= (k - 1 - k/2 + 1/2^k) sqrt(q) + k/2 evaluated
// in exact integer arithmetic.
PatternCount pattern_count(const Field& F, const std::vector<std::int64_t>& shifts,
                           const std::vector<int>& signs);

// All 2^T - 1 non-constant products prod Phi_{2i}^{k_i} over i in
// I(m) = {0} + {1 <= i <= m-1 : p coprime to i}, with Phi_0(x) = x and
// k_i in {0, 1}. Binary counting order over the exponent vector, i ascending
// on the low bits. Every product is monic and not a perfect square.
std::vector<FpPoly> enum_construction_polys(std::int64_t p, std::int64_t m);

// Literal product-form scan: sum over y with ord(y) >= m of
// prod_{i in I(m)} (1 + chi(Phi_{2i}(y))), plus the sub-sum contributed by y
// where some factor vanishes (chi = 0). The non-vanishing part equals
// 2^T times the direct predicate count.
struct NtScan {
    std::int64_t product_sum = 0;
    std::int64_t vanishing_sum = 0;
    std::int64_t T = 0;
};
NtScan nt_product_scan(const Field& F, std::int64_t m);

}  // namespace dioph
