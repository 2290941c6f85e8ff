#include "dioph/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dioph/constructions.hpp"
#include "dioph/cyclotomic.hpp"

namespace dioph {

std::int64_t char_sum(const Field& F, const FpPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("char_sum requires a nonzero polynomial");
    std::int64_t sum = 0;
    for (std::int64_t x = 0; x < F.q(); ++x) sum += F.chi(F.eval(f, x));
    return sum;
}

CharSumResult weil_check(const Field& F, const FpPoly& f) {
    if (!f.is_monic() || f.deg() < 1) {
        throw std::invalid_argument("weil_check requires a monic polynomial of positive degree");
    }
    if (poly_is_perfect_square(f, F.p())) {
        throw std::invalid_argument("weil_check hypothesis violated: polynomial is a perfect square");
    }
    CharSumResult r;
    r.degree = f.deg();
    r.distinct_roots = poly_radical(f, F.p()).deg();
    r.sum = char_sum(F, f);
    r.bound = (r.distinct_roots - 1) * std::sqrt(static_cast<double>(F.q()));
    // |sum| <= (n-1) sqrt(q), exactly
    __int128 lhs = static_cast<__int128>(r.sum) * r.sum;
    __int128 rhs = static_cast<__int128>(r.distinct_roots - 1) * (r.distinct_roots - 1) * F.q();
    r.within_bound = r.distinct_roots >= 1 && lhs <= rhs;
    return r;
}

PatternCount pattern_count(const Field& F, const std::vector<std::int64_t>& shifts,
                           const std::vector<int>& signs) {
    const size_t k = shifts.size();
    if (k < 1 || k > 40) throw std::invalid_argument("pattern_count requires 1 <= k <= 40 shifts");
    if (signs.size() != k) throw std::invalid_argument("one sign per shift required");
    for (int s : signs) {
        if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
    }
    auto sorted = shifts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("shifts must be distinct");
    }
    PatternCount out;
    for (std::int64_t x = 0; x < F.q(); ++x) {
        bool match = true;
        for (size_t i = 0; i < k; ++i) {
            if (F.chi(F.add(x, shifts[i])) != signs[i]) {
                match = false;
                break;
            }
        }
        if (match) ++out.count;
    }
    // |N - q/2^k| <= (k - 1 - k/2 + 1/2^k) sqrt(q) + k/2, scaled by 2^k:
    // |2^k N - q| <= B sqrt(q) + C with B = 2^k (k-1) - 2^(k-1) k + 1 >= 0
    // and C = 2^(k-1) k.
    const __int128 two_k = __int128(1) << k;
    __int128 A = two_k * out.count - F.q();
    if (A < 0) A = -A;
    const __int128 B = two_k * (static_cast<std::int64_t>(k) - 1) -
                       (two_k / 2) * static_cast<std::int64_t>(k) + 1;
    const __int128 C = (two_k / 2) * static_cast<std::int64_t>(k);
    const __int128 gap = A - C;
    out.bound_ok = gap <= 0 || gap * gap <= B * B * F.q();
    out.bound = (static_cast<double>(B) * std::sqrt(static_cast<double>(F.q())) +
                 static_cast<double>(C)) /
                static_cast<double>(two_k);
    return out;
}

std::vector<FpPoly> enum_construction_polys(std::int64_t p, std::int64_t m) {
    BoundTerms bt = bound_terms(p, m);
    if (bt.T > 20) throw std::invalid_argument("enumeration too large (T > 20)");
    std::vector<FpPoly> factors;
    factors.reserve(bt.I.size());
    for (std::int64_t i : bt.I) {
        factors.push_back(i == 0 ? FpPoly::x() : cyclo_mod(p, 2 * i));
    }
    std::vector<FpPoly> out;
    const std::uint64_t total = std::uint64_t(1) << bt.T;
    out.reserve(total - 1);
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        FpPoly f = FpPoly::one();
        for (std::int64_t b = 0; b < bt.T; ++b) {
            if (mask & (std::uint64_t(1) << b)) f = poly_mul(f, factors[b], p);
        }
        if (!f.is_monic()) throw std::logic_error("construction polynomial is not monic");
        if (poly_is_perfect_square(f, p)) {
            throw std::logic_error("construction polynomial is a perfect square");
        }
        out.push_back(std::move(f));
    }
    return out;
}

NtScan nt_product_scan(const Field& F, std::int64_t m) {
    BoundTerms bt = bound_terms(F.p(), m);
    std::vector<FpPoly> phis;  // positive indices only; i = 0 stands for y itself
    for (std::int64_t i : bt.I) {
        if (i > 0) phis.push_back(cyclo_mod(F.p(), 2 * i));
    }
    NtScan out;
    out.T = bt.T;
    for (std::int64_t y = 1; y < F.q(); ++y) {
        // ord(y) >= m means y^k != 1 for 1 <= k < m
        bool ord_ok = true;
        std::int64_t pw = y;
        for (std::int64_t k = 1; k < m; ++k) {
            if (pw == 1) {
                ord_ok = false;
                break;
            }
            pw = F.mul(pw, y);
        }
        if (!ord_ok) continue;
        std::int64_t prod = 1 + F.chi(y);
        bool vanish = false;
        if (prod != 0) {
            for (const FpPoly& phi : phis) {
                std::int64_t v = F.eval(phi, y);
                int c = F.chi(v);
                if (c < 0) {
                    prod = 0;
                    break;
                }
                if (c == 0) vanish = true;
                else prod *= 2;
            }
        }
        out.product_sum += prod;
        if (vanish && prod != 0) out.vanishing_sum += prod;
    }
    return out;
}

}  // namespace dioph
