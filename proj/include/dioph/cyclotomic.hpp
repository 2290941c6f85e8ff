#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "dioph/ffcore.hpp"

namespace dioph {

// Polynomial over Z, lowest degree first, canonical (no trailing zeros).
// Arithmetic is overflow-checked: a coefficient that would leave int64
// raises std::overflow_error instead of wrapping.
struct IntPoly {
    std::vector<std::int64_t> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<std::int64_t> coeffs) : c(std::move(coeffs)) { trim(); }

    static IntPoly one() { return IntPoly{{1}}; }

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool operator==(const IntPoly&) const = default;
};

IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_sub(const IntPoly& a, const IntPoly& b);
// divisor must be monic; exact integer long division
std::pair<IntPoly, IntPoly> ipoly_divrem(const IntPoly& a, const IntPoly& b);
FpPoly ipoly_reduce(const IntPoly& a, std::int64_t p);

std::int64_t euler_phi(std::int64_t n);

// Memoized cyclotomic polynomials over Z. Safe for concurrent use; a cache
// hit returns a polynomial identical to a fresh computation.
class CycloCache {
public:
    IntPoly get(std::int64_t n);

private:
    std::map<std::int64_t, IntPoly> memo_;
    std::mutex mu_;
};

// n-th cyclotomic polynomial over Z, by exact division of x^n - 1 by the
// product of the lower-index cyclotomics. n <= 3000 (coefficient safety).
IntPoly cyclo_int(std::int64_t n);
IntPoly cyclo_int(std::int64_t n, CycloCache& cache);

// Same computation carried out natively over F_p; no index cap beyond sanity.
FpPoly cyclo_mod(std::int64_t p, std::int64_t n);

// Structural checks over F_p: (1) p | n implies Phi_n is a perfect square,
// (2) p coprime to the index implies Phi is square-free, (3) distinct indices
// coprime to p give coprime polynomials. Clauses whose hypothesis does not
// apply report true.
struct PhiPropertyReport {
    bool is_square_when_p_divides = true;
    bool is_squarefree_when_p_coprime = true;
    bool coprime_pair = true;
    bool all() const { return is_square_when_p_divides && is_squarefree_when_p_coprime && coprime_pair; }
};
PhiPropertyReport phi_properties_check(std::int64_t p, std::int64_t n,
                                       std::optional<std::int64_t> n_prime);

}  // namespace dioph
