#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dioph/diophantine.hpp"
#include "dioph/ffcore.hpp"

namespace dioph {

// Combinatorial terms behind the y-count: I = {0} + {1 <= i <= m-1 : p
// coprime to i}, T = m - floor((m-1)/p) = |I|, S = sum of phi(2i) over the
// positive members of I, s_small the same sum with phi(i).
struct BoundTerms {
    std::int64_t p = 0;
    std::int64_t m = 0;
    std::vector<std::int64_t> I;
    std::int64_t T = 0;
    std::int64_t S = 0;
    std::int64_t s_small = 0;
};
BoundTerms bound_terms(std::int64_t p, std::int64_t m);

enum class QVariant { thm1, thm35 };

struct QBound {
    double value = 0.0;
    std::int64_t floor_value = 0;
};

// Q = (p/(p-1)) * ((log(q)/2 - 2 log log q)/log 2 + c) with c = 1 (thm1) or
// c = 2 (thm35), natural logarithms. Requires q > 7. Flooring is guarded:
// values within 1e-9 of an integer are recomputed in extended precision.
QBound compute_Q(std::int64_t q, std::int64_t p, QVariant variant);

// Smallest-code y with chi(y) = +1, order at least m+1, and y^i - 1 a square
// for 1 <= i <= m. Requires q = 1 mod 4 and even m >= 2.
std::optional<std::int64_t> find_y_case1(const Field& F, std::int64_t m);

// Smallest-code y with chi(y) = +1, order at least m+1, and Phi_{2i}(y) a
// square for every positive i in I(m). Requires 2 to be a square in F.
std::optional<std::int64_t> find_y_case2(const Field& F, std::int64_t m);

// Smallest-code y with order at least m/2+1 and the Phi conditions of case 2;
// neither 2 nor -1 needs to be a square. Requires q = 3 mod 8 and even m >= 2.
std::optional<std::int64_t> find_y_3mod8(const Field& F, std::int64_t m);

// Smallest-code r with r^2 = -1; requires q = 1 mod 4.
std::int64_t sqrt_minus_one(const Field& F);

struct BuiltTuple {
    std::vector<std::int64_t> elements;
    Certificate certificate;
};

// {r y^k : -m/2 <= k <= m/2}, m+1 elements. Aborts with domain_error if the
// generated elements are not distinct, and re-verifies before returning.
BuiltTuple build_case1(const Field& F, std::int64_t y, std::int64_t m);

// {y^k : -m/2 <= k <= m/2}; always contains 1.
BuiltTuple build_case2(const Field& F, std::int64_t y, std::int64_t m);

// {y^k : 0 <= k <= m/2}, the nonnegative-exponent half; size m/2 + 1.
BuiltTuple build_3mod8(const Field& F, std::int64_t y, std::int64_t m);

// F_{sqrt(q)}^* as a tuple in F_q; requires even extension degree.
BuiltTuple build_subfield_tuple(const Field& F);

// exact: number of y with ord(y) >= m, chi(y) = +1 and chi(Phi_{2i}(y)) = +1
// for every positive i in I(m) (a vanishing Phi value does not count).
// analytic_lower_bound: 2^-T (q - (2^(T-1) S - (2^T - 1)) sqrt(q)) - S.
// exact_ge_bound is the comparison carried out in exact integer arithmetic.
struct NCount {
    std::int64_t exact = 0;
    double analytic_lower_bound = 0.0;
    bool exact_ge_bound = false;
};
NCount count_N(const Field& F, std::int64_t m);

enum class Method { case1, case2, mod8_3, subfield, greedy_fallback };
enum class BoundBasis { thm1, thm35, vacuous, remark36 };

const char* method_name(Method m);
const char* basis_name(BoundBasis b);

struct ConstructionReport {
    std::string field_id;
    std::int64_t q = 0;
    Method method = Method::greedy_fallback;
    std::int64_t m = 0;  // construction parameter; 0 for subfield/greedy
    double Q_value = 0.0;
    std::int64_t Q_floor = 0;
    std::optional<std::int64_t> y;
    std::optional<std::int64_t> r;
    std::vector<std::int64_t> elements;
    Certificate certificate;
    bool verified = false;
    bool bound_satisfied = false;
    BoundBasis basis = BoundBasis::vacuous;
    QVariant variant = QVariant::thm1;
    std::uint64_t seed = 0;
};

// Dispatch per residue class: q = 1 mod 4 tries case 1 (falling back to
// case 2 when q = 1 mod 8), q = 7 mod 8 uses case 2, q = 3 mod 8 uses the
// half construction with the largest feasible m. When the Q-derived m is
// below 2 or no qualifying y exists, falls back to a seeded greedy maximal
// tuple from the best single-element seed. The result always verifies.
ConstructionReport construct_auto(const Field& F, std::uint64_t seed = 0,
                                  QVariant variant = QVariant::thm1);

// Forced-method variant; m_override of 0 means "derive from Q, at least 2".
ConstructionReport construct_with_method(const Field& F, Method method, std::int64_t m_override,
                                         std::uint64_t seed = 0, QVariant variant = QVariant::thm1);

// Raised when a forced construction has no qualifying witness at the
// requested parameters (possible at small q).
struct construction_unavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dioph
