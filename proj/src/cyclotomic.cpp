#include "dioph/cyclotomic.hpp"

#include <stdexcept>
#include <utility>

namespace dioph {

namespace {

constexpr std::int64_t kCycloIntCap = 3000;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer polynomial coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer polynomial coefficient overflow");
    return r;
}

}  // namespace

IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly{};
    IntPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            r.c[i + j] = checked_add(r.c[i + j], checked_mul(a.c[i], b.c[j]));
        }
    }
    r.trim();
    return r;
}

IntPoly ipoly_sub(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        std::int64_t av = i < a.c.size() ? a.c[i] : 0;
        std::int64_t bv = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = checked_add(av, -bv);
    }
    r.trim();
    return r;
}

std::pair<IntPoly, IntPoly> ipoly_divrem(const IntPoly& a, const IntPoly& b) {
    if (!b.is_monic()) throw std::invalid_argument("integer polynomial division requires a monic divisor");
    if (a.deg() < b.deg()) return {IntPoly{}, a};
    IntPoly rem = a;
    IntPoly quo;
    quo.c.assign(a.deg() - b.deg() + 1, 0);
    for (int k = a.deg() - b.deg(); k >= 0; --k) {
        std::int64_t coef = rem.c[k + b.deg()];
        if (coef == 0) continue;
        quo.c[k] = coef;
        for (int j = 0; j <= b.deg(); ++j) {
            rem.c[k + j] = checked_add(rem.c[k + j], -checked_mul(coef, b.c[j]));
        }
    }
    quo.trim();
    rem.trim();
    return {quo, rem};
}

FpPoly ipoly_reduce(const IntPoly& a, std::int64_t p) {
    FpPoly r;
    r.c.resize(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) {
        std::int64_t v = a.c[i] % p;
        r.c[i] = v < 0 ? v + p : v;
    }
    r.trim();
    return r;
}

std::int64_t euler_phi(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("euler_phi requires n >= 1");
    std::int64_t phi = 1;
    for (auto& [p, e] : prime_factorization(n)) {
        phi *= p - 1;
        for (int i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

IntPoly CycloCache::get(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
    if (n > kCycloIntCap) throw std::invalid_argument("cyclotomic index beyond the integer-coefficient cap");
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    }
    // x^n - 1 divided by the product of all lower-index divisors' cyclotomics
    IntPoly num;
    num.c.assign(n + 1, 0);
    num.c[0] = -1;
    num.c[n] = 1;
    IntPoly den = IntPoly::one();
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        if (d != n) den = ipoly_mul(den, get(d));
        std::int64_t other = n / d;
        if (other != d && other != n) den = ipoly_mul(den, get(other));
    }
    auto [quo, rem] = ipoly_divrem(num, den);
    if (!rem.is_zero()) throw std::logic_error("cyclotomic division left a remainder");
    if (quo.deg() != euler_phi(n)) throw std::logic_error("cyclotomic degree mismatch");
    {
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(n, quo);
    }
    return quo;
}

namespace {

CycloCache& global_int_cache() {
    static CycloCache cache;
    return cache;
}

class FpCycloCache {
public:
    FpPoly get(std::int64_t p, std::int64_t n) {
        const auto key = std::make_pair(p, n);
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        }
        FpPoly num;
        num.c.assign(n + 1, 0);
        num.c[0] = p - 1;
        num.c[n] = 1;
        FpPoly den = FpPoly::one();
        for (std::int64_t d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            if (d != n) den = poly_mul(den, get(p, d), p);
            std::int64_t other = n / d;
            if (other != d && other != n) den = poly_mul(den, get(p, other), p);
        }
        auto [quo, rem] = poly_divrem(num, den, p);
        if (!rem.is_zero()) throw std::logic_error("cyclotomic division left a remainder");
        if (quo.deg() != euler_phi(n)) throw std::logic_error("cyclotomic degree mismatch");
        {
            std::lock_guard<std::mutex> lock(mu_);
            memo_.emplace(key, quo);
        }
        return quo;
    }

private:
    std::map<std::pair<std::int64_t, std::int64_t>, FpPoly> memo_;
    std::mutex mu_;
};

FpCycloCache& global_mod_cache() {
    static FpCycloCache cache;
    return cache;
}

}  // namespace

IntPoly cyclo_int(std::int64_t n) { return global_int_cache().get(n); }

IntPoly cyclo_int(std::int64_t n, CycloCache& cache) { return cache.get(n); }

FpPoly cyclo_mod(std::int64_t p, std::int64_t n) {
    if (!is_prime_i64(p) || p == 2) throw std::invalid_argument("p must be an odd prime");
    if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
    if (n > 1000000) throw std::invalid_argument("cyclotomic index beyond sanity limit");
    return global_mod_cache().get(p, n);
}

PhiPropertyReport phi_properties_check(std::int64_t p, std::int64_t n,
                                       std::optional<std::int64_t> n_prime) {
    PhiPropertyReport rep;
    auto check_one = [&](std::int64_t k) {
        FpPoly phi = cyclo_mod(p, k);
        if (k % p == 0) {
            rep.is_square_when_p_divides = rep.is_square_when_p_divides && poly_is_perfect_square(phi, p);
        } else {
            FpPoly g = poly_gcd(phi, poly_derivative(phi, p), p);
            rep.is_squarefree_when_p_coprime = rep.is_squarefree_when_p_coprime && g.deg() == 0;
        }
    };
    check_one(n);
    if (n_prime) {
        check_one(*n_prime);
        if (*n_prime != n && n % p != 0 && *n_prime % p != 0) {
            FpPoly g = poly_gcd(cyclo_mod(p, n), cyclo_mod(p, *n_prime), p);
            rep.coprime_pair = g.deg() == 0;
        }
    }
    return rep;
}

}  // namespace dioph
