#include "dioph/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dioph/cyclotomic.hpp"

namespace dioph {

BoundTerms bound_terms(std::int64_t p, std::int64_t m) {
    if (!is_prime_i64(p)) throw std::invalid_argument("bound_terms requires a prime p");
    if (m < 2) throw std::invalid_argument("bound_terms requires m >= 2");
    BoundTerms bt;
    bt.p = p;
    bt.m = m;
    bt.I.push_back(0);
    for (std::int64_t i = 1; i <= m - 1; ++i) {
        if (i % p == 0) continue;
        bt.I.push_back(i);
        bt.S += euler_phi(2 * i);
        bt.s_small += euler_phi(i);
    }
    bt.T = m - (m - 1) / p;
    if (bt.T != static_cast<std::int64_t>(bt.I.size())) {
        throw std::logic_error("T does not match |I|");
    }
    // S < (p/(p-1)) T^2, exactly
    if (bt.S * (p - 1) >= p * bt.T * bt.T) {
        throw std::logic_error("S < p/(p-1) T^2 violated");
    }
    return bt;
}

QBound compute_Q(std::int64_t q, std::int64_t p, QVariant variant) {
    if (q <= 7) throw std::invalid_argument("the bound requires q > 7");
    if (!is_prime_i64(p) || p == 2) throw std::invalid_argument("p must be an odd prime");
    std::int64_t t = q;
    while (t % p == 0) t /= p;
    if (t != 1) throw std::invalid_argument("q must be a power of p");
    const double c = variant == QVariant::thm1 ? 1.0 : 2.0;
    auto eval = [&](auto scale) {
        using T = decltype(scale);
        T lq = std::log(static_cast<T>(q));
        return (static_cast<T>(p) / static_cast<T>(p - 1)) *
               ((lq / 2 - 2 * std::log(lq)) / std::log(static_cast<T>(2)) + static_cast<T>(c));
    };
    QBound out;
    out.value = eval(1.0);
    double nearest = std::nearbyint(out.value);
    if (std::fabs(out.value - nearest) < 1e-9) {
        // representability boundary: refine before flooring
        long double refined = eval(1.0L);
        out.floor_value = static_cast<std::int64_t>(std::floor(refined));
    } else {
        out.floor_value = static_cast<std::int64_t>(std::floor(out.value));
    }
    return out;
}

namespace {

void require_even_m(std::int64_t m) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("m must be an even integer >= 2");
}

std::vector<FpPoly> case2_phis(std::int64_t p, std::int64_t m) {
    std::vector<FpPoly> phis;
    for (std::int64_t i = 1; i <= m - 1; ++i) {
        if (i % p == 0) continue;  // Phi_{2i} is automatically a square
        phis.push_back(cyclo_mod(p, 2 * i));
    }
    return phis;
}

BuiltTuple verified_build(const Field& F, std::vector<std::int64_t> elems, const char* what) {
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) {
        throw std::domain_error(std::string(what) + ": generated elements are not distinct");
    }
    auto rep = verify_tuple(F, elems);
    if (!rep.ok) {
        throw std::logic_error(std::string(what) + ": constructed set failed verification in " + F.id());
    }
    return {std::move(elems), std::move(rep.certificate)};
}

}  // namespace

std::optional<std::int64_t> find_y_case1(const Field& F, std::int64_t m) {
    if (F.q() % 4 != 1) throw std::invalid_argument("case 1 requires q = 1 mod 4");
    require_even_m(m);
    for (std::int64_t y = 1; y < F.q(); ++y) {
        if (F.chi(y) != 1) continue;
        bool ok = true;
        std::int64_t pw = 1;
        for (std::int64_t i = 1; i <= m; ++i) {
            pw = F.mul(pw, y);
            if (pw == 1) {  // order <= m
                ok = false;
                break;
            }
            if (!F.is_square(F.sub(pw, 1))) {
                ok = false;
                break;
            }
        }
        if (ok) return y;
    }
    return std::nullopt;
}

std::optional<std::int64_t> find_y_case2(const Field& F, std::int64_t m) {
    if (!F.is_square(2 % F.q())) throw std::invalid_argument("case 2 requires 2 to be a square");
    require_even_m(m);
    const auto phis = case2_phis(F.p(), m);
    for (std::int64_t y = 1; y < F.q(); ++y) {
        if (F.chi(y) != 1) continue;
        bool ok = true;
        std::int64_t pw = 1;
        for (std::int64_t i = 1; i <= m; ++i) {
            pw = F.mul(pw, y);
            if (pw == 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (const FpPoly& phi : phis) {
            if (!F.is_square(F.eval(phi, y))) {
                ok = false;
                break;
            }
        }
        if (ok) return y;
    }
    return std::nullopt;
}

std::optional<std::int64_t> find_y_3mod8(const Field& F, std::int64_t m) {
    if (F.q() % 8 != 3) throw std::invalid_argument("half construction requires q = 3 mod 8");
    require_even_m(m);
    const auto phis = case2_phis(F.p(), m);
    for (std::int64_t y = 1; y < F.q(); ++y) {
        // only m/2 + 1 distinct nonnegative powers are needed
        bool ok = true;
        std::int64_t pw = 1;
        for (std::int64_t i = 1; i <= m / 2; ++i) {
            pw = F.mul(pw, y);
            if (pw == 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (const FpPoly& phi : phis) {
            if (!F.is_square(F.eval(phi, y))) {
                ok = false;
                break;
            }
        }
        if (ok) return y;
    }
    return std::nullopt;
}

std::int64_t sqrt_minus_one(const Field& F) {
    if (F.q() % 4 != 1) throw std::invalid_argument("-1 is not a square unless q = 1 mod 4");
    return F.sqrt(F.neg(1));
}

BuiltTuple build_case1(const Field& F, std::int64_t y, std::int64_t m) {
    require_even_m(m);
    const std::int64_t r = sqrt_minus_one(F);
    std::vector<std::int64_t> elems{r};
    std::int64_t up = r, down = r;
    const std::int64_t yinv = F.inv(y);
    for (std::int64_t k = 1; k <= m / 2; ++k) {
        up = F.mul(up, y);
        down = F.mul(down, yinv);
        elems.push_back(up);
        elems.push_back(down);
    }
    return verified_build(F, std::move(elems), "build_case1");
}

BuiltTuple build_case2(const Field& F, std::int64_t y, std::int64_t m) {
    require_even_m(m);
    std::vector<std::int64_t> elems{1};
    std::int64_t up = 1, down = 1;
    const std::int64_t yinv = F.inv(y);
    for (std::int64_t k = 1; k <= m / 2; ++k) {
        up = F.mul(up, y);
        down = F.mul(down, yinv);
        elems.push_back(up);
        elems.push_back(down);
    }
    return verified_build(F, std::move(elems), "build_case2");
}

BuiltTuple build_3mod8(const Field& F, std::int64_t y, std::int64_t m) {
    if (F.q() % 8 != 3) throw std::invalid_argument("half construction requires q = 3 mod 8");
    require_even_m(m);
    std::vector<std::int64_t> elems{1};
    std::int64_t up = 1;
    for (std::int64_t k = 1; k <= m / 2; ++k) {
        up = F.mul(up, y);
        elems.push_back(up);
    }
    return verified_build(F, std::move(elems), "build_3mod8");
}

BuiltTuple build_subfield_tuple(const Field& F) {
    if (F.n() % 2 != 0) throw std::invalid_argument("subfield tuple requires an even extension degree");
    std::int64_t root = 1;
    for (int i = 0; i < F.n() / 2; ++i) root *= F.p();
    std::vector<std::int64_t> elems;
    elems.reserve(root - 1);
    for (std::int64_t x = 1; x < F.q(); ++x) {
        if (F.pow(x, root) == x) elems.push_back(x);
    }
    if (static_cast<std::int64_t>(elems.size()) != root - 1) {
        throw std::logic_error("subfield has unexpected size");
    }
    return verified_build(F, std::move(elems), "build_subfield_tuple");
}

NCount count_N(const Field& F, std::int64_t m) {
    if (m < 2 || m > 24) throw std::invalid_argument("count_N requires 2 <= m <= 24");
    const BoundTerms bt = bound_terms(F.p(), m);
    std::vector<FpPoly> phis = case2_phis(F.p(), m);
    NCount out;
    for (std::int64_t y = 1; y < F.q(); ++y) {
        if (F.chi(y) != 1) continue;
        bool ok = true;
        std::int64_t pw = y;
        for (std::int64_t k = 1; k < m; ++k) {
            if (pw == 1) {  // ord(y) < m
                ok = false;
                break;
            }
            pw = F.mul(pw, y);
        }
        if (!ok) continue;
        for (const FpPoly& phi : phis) {
            if (F.chi(F.eval(phi, y)) != 1) {
                ok = false;
                break;
            }
        }
        if (ok) ++out.exact;
    }
    const double sq = std::sqrt(static_cast<double>(F.q()));
    const double two_T = std::ldexp(1.0, static_cast<int>(bt.T));
    const double D = std::ldexp(static_cast<double>(bt.S), static_cast<int>(bt.T - 1)) - (two_T - 1);
    out.analytic_lower_bound = (F.q() - D * sq) / two_T - static_cast<double>(bt.S);
    // exact >= 2^-T (q - D sqrt(q)) - S  <=>  L >= -D sqrt(q)
    // with L = 2^T (exact + S) - q, everything in exact integers
    const __int128 L = (__int128(1) << bt.T) * (out.exact + bt.S) - F.q();
    const __int128 Di = (__int128(1) << (bt.T - 1)) * bt.S - (__int128(1) << bt.T) + 1;
    if (Di >= 0) {
        out.exact_ge_bound = L >= 0 || L * L <= Di * Di * F.q();
    } else {
        out.exact_ge_bound = L >= 0 && L * L >= Di * Di * F.q();
    }
    return out;
}

const char* method_name(Method m) {
    switch (m) {
        case Method::case1: return "case1";
        case Method::case2: return "case2";
        case Method::mod8_3: return "mod8_3";
        case Method::subfield: return "subfield";
        case Method::greedy_fallback: return "greedy_fallback";
    }
    return "?";
}

const char* basis_name(BoundBasis b) {
    switch (b) {
        case BoundBasis::thm1: return "thm1";
        case BoundBasis::thm35: return "thm35";
        case BoundBasis::vacuous: return "vacuous";
        case BoundBasis::remark36: return "remark-3.6";
    }
    return "?";
}

namespace {

// Deterministic fallback: the single-element seed with the largest extension
// set among the 16 smallest codes, then greedy completion.
BuiltTuple greedy_fallback_tuple(const Field& F, std::uint64_t seed) {
    std::int64_t best_seed = 1;
    std::size_t best_size = 0;
    const std::int64_t window = std::min<std::int64_t>(16, F.q() - 1);
    for (std::int64_t x = 1; x <= window; ++x) {
        std::size_t s = extension_set(F, {x}).size();
        if (s > best_size) {
            best_size = s;
            best_seed = x;
        }
    }
    auto tuple = greedy_maximal(F, {best_seed}, seed);
    auto rep = verify_tuple(F, tuple);
    if (!rep.ok) throw std::logic_error("greedy fallback produced an invalid tuple");
    return {std::move(tuple), std::move(rep.certificate)};
}

void finalize_bound(ConstructionReport& rep, const Field& F) {
    const std::int64_t size = static_cast<std::int64_t>(rep.elements.size());
    if (rep.Q_floor < 1) {
        rep.basis = BoundBasis::vacuous;
        rep.bound_satisfied = size >= 1;
    } else if (F.q() % 8 == 3) {
        rep.basis = BoundBasis::remark36;
        rep.bound_satisfied = rep.method == Method::mod8_3 && size == rep.m / 2 + 1;
    } else {
        rep.basis = rep.variant == QVariant::thm1 ? BoundBasis::thm1 : BoundBasis::thm35;
        rep.bound_satisfied = size >= rep.Q_floor;
    }
}

}  // namespace

ConstructionReport construct_auto(const Field& F, std::uint64_t seed, QVariant variant) {
    if (F.q() <= 7) throw std::invalid_argument("construct_auto requires q > 7");
    ConstructionReport rep;
    rep.field_id = F.id();
    rep.q = F.q();
    rep.variant = variant;
    rep.seed = seed;
    const QBound qb = compute_Q(F.q(), F.p(), variant);
    rep.Q_value = qb.value;
    rep.Q_floor = qb.floor_value;
    const std::int64_t m0 = qb.floor_value;
    const std::int64_t m = m0 % 2 == 0 ? m0 : m0 - 1;
    const std::int64_t res8 = F.q() % 8;

    bool built = false;
    if (res8 == 3) {
        // feasibility is downward-closed in m, so scan even m upward
        std::int64_t m_best = 0, y_best = 0;
        for (std::int64_t mt = 2;; mt += 2) {
            auto y = find_y_3mod8(F, mt);
            if (!y) break;
            m_best = mt;
            y_best = *y;
        }
        if (m_best >= 2) {
            auto bt = build_3mod8(F, y_best, m_best);
            rep.method = Method::mod8_3;
            rep.m = m_best;
            rep.y = y_best;
            rep.elements = std::move(bt.elements);
            rep.certificate = std::move(bt.certificate);
            built = true;
        }
    } else if (F.q() % 4 == 1 && m >= 2) {
        if (auto y = find_y_case1(F, m)) {
            auto bt = build_case1(F, *y, m);
            rep.method = Method::case1;
            rep.m = m;
            rep.y = *y;
            rep.r = sqrt_minus_one(F);
            rep.elements = std::move(bt.elements);
            rep.certificate = std::move(bt.certificate);
            built = true;
        } else if (res8 == 1) {
            if (auto y2 = find_y_case2(F, m)) {
                auto bt = build_case2(F, *y2, m);
                rep.method = Method::case2;
                rep.m = m;
                rep.y = *y2;
                rep.elements = std::move(bt.elements);
                rep.certificate = std::move(bt.certificate);
                built = true;
            }
        }
    } else if (res8 == 7 && m >= 2) {
        if (auto y = find_y_case2(F, m)) {
            auto bt = build_case2(F, *y, m);
            rep.method = Method::case2;
            rep.m = m;
            rep.y = *y;
            rep.elements = std::move(bt.elements);
            rep.certificate = std::move(bt.certificate);
            built = true;
        }
    }
    if (!built) {
        auto bt = greedy_fallback_tuple(F, seed);
        rep.method = Method::greedy_fallback;
        rep.m = 0;
        rep.elements = std::move(bt.elements);
        rep.certificate = std::move(bt.certificate);
    }
    rep.verified = true;
    finalize_bound(rep, F);
    return rep;
}

ConstructionReport construct_with_method(const Field& F, Method method, std::int64_t m_override,
                                         std::uint64_t seed, QVariant variant) {
    if (method == Method::greedy_fallback && m_override != 0) {
        throw std::invalid_argument("greedy fallback takes no m parameter");
    }
    ConstructionReport rep;
    rep.field_id = F.id();
    rep.q = F.q();
    rep.variant = variant;
    rep.seed = seed;
    if (F.q() > 7) {
        const QBound qb = compute_Q(F.q(), F.p(), variant);
        rep.Q_value = qb.value;
        rep.Q_floor = qb.floor_value;
    } else if (method == Method::subfield || method == Method::greedy_fallback) {
        rep.Q_value = 0.0;
        rep.Q_floor = 0;
    } else {
        throw std::invalid_argument("constructions require q > 7");
    }
    std::int64_t m = m_override;
    if (m == 0) {
        std::int64_t derived = rep.Q_floor % 2 == 0 ? rep.Q_floor : rep.Q_floor - 1;
        m = std::max<std::int64_t>(2, derived);
    }
    rep.method = method;
    switch (method) {
        case Method::case1: {
            auto y = find_y_case1(F, m);
            if (!y) throw construction_unavailable("no qualifying y for case 1 at m = " + std::to_string(m));
            auto bt = build_case1(F, *y, m);
            rep.m = m;
            rep.y = *y;
            rep.r = sqrt_minus_one(F);
            rep.elements = std::move(bt.elements);
            rep.certificate = std::move(bt.certificate);
            break;
        }
        case Method::case2: {
            auto y = find_y_case2(F, m);
            if (!y) throw construction_unavailable("no qualifying y for case 2 at m = " + std::to_string(m));
            auto bt = build_case2(F, *y, m);
            rep.m = m;
            rep.y = *y;
            rep.elements = std::move(bt.elements);
            rep.certificate = std::move(bt.certificate);
            break;
        }
        case Method::mod8_3: {
            std::int64_t m_best = 0, y_best = 0;
            if (m_override != 0) {
                auto y = find_y_3mod8(F, m);
                if (!y) throw construction_unavailable("no qualifying y for the half construction at m = " +
                                                       std::to_string(m));
                m_best = m;
                y_best = *y;
            } else {
                for (std::int64_t mt = 2;; mt += 2) {
                    auto y = find_y_3mod8(F, mt);
                    if (!y) break;
                    m_best = mt;
                    y_best = *y;
                }
                if (m_best < 2) throw construction_unavailable("no qualifying y for the half construction");
            }
            auto bt = build_3mod8(F, y_best, m_best);
            rep.m = m_best;
            rep.y = y_best;
            rep.elements = std::move(bt.elements);
            rep.certificate = std::move(bt.certificate);
            break;
        }
        case Method::subfield: {
            auto bt = build_subfield_tuple(F);
            rep.m = 0;
            rep.elements = std::move(bt.elements);
            rep.certificate = std::move(bt.certificate);
            break;
        }
        case Method::greedy_fallback: {
            auto bt = greedy_fallback_tuple(F, seed);
            rep.m = 0;
            rep.elements = std::move(bt.elements);
            rep.certificate = std::move(bt.certificate);
            break;
        }
    }
    rep.verified = true;
    finalize_bound(rep, F);
    return rep;
}

}  // namespace dioph
