#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dioph {

// Dense polynomial over F_p: coefficients in [0, p), lowest degree first,
// no trailing zeros (canonical form). The zero polynomial has an empty
// coefficient vector and degree -1.
struct FpPoly {
    std::vector<std::int64_t> c;

    FpPoly() = default;
    explicit FpPoly(std::vector<std::int64_t> coeffs) : c(std::move(coeffs)) { trim(); }

    static FpPoly zero() { return FpPoly{}; }
    static FpPoly one() { return FpPoly{{1}}; }
    static FpPoly x() { return FpPoly{{0, 1}}; }

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    std::int64_t lead() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool operator==(const FpPoly&) const = default;
};

// F_p[x] arithmetic. All inputs must be canonical with coefficients in [0, p).
FpPoly poly_add(const FpPoly& a, const FpPoly& b, std::int64_t p);
FpPoly poly_sub(const FpPoly& a, const FpPoly& b, std::int64_t p);
FpPoly poly_mul(const FpPoly& a, const FpPoly& b, std::int64_t p);
std::pair<FpPoly, FpPoly> poly_divrem(const FpPoly& a, const FpPoly& b, std::int64_t p);
FpPoly poly_mod(const FpPoly& a, const FpPoly& b, std::int64_t p);
FpPoly poly_divexact(const FpPoly& a, const FpPoly& b, std::int64_t p);
FpPoly poly_gcd(FpPoly a, FpPoly b, std::int64_t p);  // monic result
FpPoly poly_derivative(const FpPoly& a, std::int64_t p);
FpPoly poly_make_monic(FpPoly a, std::int64_t p);
FpPoly poly_pow(const FpPoly& base, std::int64_t e, std::int64_t p);
FpPoly poly_powmod(const FpPoly& base, std::int64_t e, const FpPoly& mod, std::int64_t p);

// Square-multiplicity structure of f over F_p: f = unit * prod factor^multiplicity
// with the factors squarefree and pairwise coprime. Handles the f' = 0 case by
// p-th root extraction, so multiplicities divisible by p are reported exactly.
struct SquarefreeFactor {
    FpPoly factor;
    std::int64_t multiplicity;
};
std::vector<SquarefreeFactor> squarefree_decomposition(const FpPoly& f, std::int64_t p);
bool poly_is_perfect_square(const FpPoly& f, std::int64_t p);
FpPoly poly_radical(const FpPoly& f, std::int64_t p);  // product of distinct irreducible factors

bool is_prime_i64(std::int64_t v);
std::vector<std::pair<std::int64_t, int>> prime_factorization(std::int64_t v);
std::vector<std::int64_t> prime_factors(std::int64_t v);  // distinct, ascending

// Rabin criterion: t^(p^n) = t mod f and gcd(t^(p^(n/r)) - t, f) = 1 for every
// prime r | n. f must be monic of positive degree.
bool poly_is_irreducible(const FpPoly& f, std::int64_t p);

// Smallest monic irreducible of degree n over F_p, ordered by the base-p integer
// encoding of the non-leading coefficients. Deterministic.
FpPoly find_irreducible(std::int64_t p, int n);

// F_{p^n} with p an odd prime and q = p^n <= 2^31. Elements are integer codes
// in [0, q): code = sum c_i p^i encodes the residue sum c_i t^i mod modulus.
// Immutable after construction and safe to share across threads; every
// operation is a pure function of its inputs.
class Field {
public:
    static constexpr std::int64_t max_q = std::int64_t(1) << 31;
    // fields up to this size carry precomputed character and square-root tables
    static constexpr std::int64_t table_limit = std::int64_t(1) << 22;

    Field(std::int64_t p, int n);
    Field(std::int64_t p, int n, FpPoly modulus);

    std::int64_t p() const { return p_; }
    int n() const { return n_; }
    std::int64_t q() const { return q_; }
    const FpPoly& modulus() const { return modulus_; }
    std::int64_t modulus_code() const;  // base-p encoding of the non-leading coefficients
    std::string id() const;             // "p^n/modulus-code"

    std::int64_t add(std::int64_t a, std::int64_t b) const;
    std::int64_t sub(std::int64_t a, std::int64_t b) const;
    std::int64_t neg(std::int64_t a) const;
    std::int64_t mul(std::int64_t a, std::int64_t b) const;
    std::int64_t inv(std::int64_t a) const;                 // domain_error on 0
    std::int64_t pow(std::int64_t a, std::int64_t e) const; // e < 0 means pow(inv(a), -e)

    // quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise
    int chi(std::int64_t a) const;
    // zero counts as a square
    bool is_square(std::int64_t a) const { return chi(a) >= 0; }
    // smallest-code square root; domain_error if a is not a square
    std::int64_t sqrt(std::int64_t a) const;
    std::int64_t mult_order(std::int64_t a) const;

    // evaluate an F_p polynomial at a field element (coefficients embed as
    // prime-subfield constants)
    std::int64_t eval(const FpPoly& f, std::int64_t x) const;

    std::vector<std::int64_t> decode(std::int64_t code) const;
    std::int64_t encode(const std::vector<std::int64_t>& coeffs) const;

    const std::vector<std::int64_t>& unit_factors() const { return qm1_factors_; }
    bool has_tables() const { return !chi_table_.empty(); }

private:
    std::int64_t p_ = 0;
    int n_ = 0;
    std::int64_t q_ = 0;
    FpPoly modulus_;
    std::vector<std::int64_t> qm1_factors_;
    std::vector<std::int8_t> chi_table_;
    std::vector<std::uint32_t> root_table_;

    void init(std::int64_t p, int n, FpPoly modulus, bool modulus_given);
    void build_tables();
    void check_code(std::int64_t a) const;
    std::int64_t sqrt_by_exponentiation(std::int64_t a) const;
};

// "p^n", "p^n/modcode" or bare "p"; modcode pins a nonstandard modulus
Field parse_field(const std::string& spec);

}  // namespace dioph
