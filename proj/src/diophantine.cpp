#include "dioph/diophantine.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dioph {

namespace {

std::vector<std::int64_t> canonicalize(const Field& F, std::vector<std::int64_t> elements) {
    for (std::int64_t a : elements) {
        if (a <= 0 || a >= F.q()) {
            throw std::invalid_argument("tuple elements must be nonzero field elements");
        }
    }
    std::sort(elements.begin(), elements.end());
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
        throw std::invalid_argument("tuple elements must be distinct");
    }
    return elements;
}

}  // namespace

VerificationReport verify_tuple(const Field& F, std::vector<std::int64_t> elements) {
    VerificationReport rep;
    auto elems = canonicalize(F, std::move(elements));
    for (size_t i = 0; i + 1 < elems.size(); ++i) {
        for (size_t j = i + 1; j < elems.size(); ++j) {
            std::int64_t t = F.add(F.mul(elems[i], elems[j]), 1);
            if (F.chi(t) < 0) {
                rep.ok = false;
                rep.violating_pair = {static_cast<int>(i), static_cast<int>(j)};
                rep.certificate.pairs.clear();
                return rep;
            }
            rep.certificate.pairs.push_back(
                {static_cast<int>(i), static_cast<int>(j), F.sqrt(t)});
        }
    }
    rep.ok = true;
    return rep;
}

bool recheck_certificate(const Field& F, const std::vector<std::int64_t>& elements,
                         const Certificate& cert) {
    const size_t n = elements.size();
    const size_t expected = n >= 2 ? n * (n - 1) / 2 : 0;
    if (cert.pairs.size() != expected) return false;
    for (const auto& w : cert.pairs) {
        if (w.i < 0 || w.j <= w.i || w.j >= static_cast<int>(n)) return false;
        std::int64_t t = F.add(F.mul(elements[w.i], elements[w.j]), 1);
        if (F.mul(w.root, w.root) != t) return false;
    }
    // coverage: pairs must be exactly the (i, j) lexicographic sequence
    size_t k = 0;
    for (size_t i = 0; i + 1 < n; ++i) {
        for (size_t j = i + 1; j < n; ++j, ++k) {
            if (cert.pairs[k].i != static_cast<int>(i) || cert.pairs[k].j != static_cast<int>(j)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::int64_t> extension_set(const Field& F, const std::vector<std::int64_t>& elements) {
    auto elems = elements;
    std::sort(elems.begin(), elems.end());
    std::vector<std::int64_t> out;
    for (std::int64_t x = 1; x < F.q(); ++x) {
        if (std::binary_search(elems.begin(), elems.end(), x)) continue;
        bool ok = true;
        for (std::int64_t a : elems) {
            if (!F.is_square(F.add(F.mul(a, x), 1))) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

bool is_maximal(const Field& F, const std::vector<std::int64_t>& elements) {
    return extension_set(F, elements).empty();
}

std::vector<std::int64_t> greedy_maximal(const Field& F, std::vector<std::int64_t> seed,
                                         std::uint64_t rng_seed) {
    auto rep = verify_tuple(F, seed);
    if (!rep.ok) throw std::invalid_argument("greedy seed is not a Diophantine tuple");
    auto tuple = canonicalize(F, std::move(seed));
    auto candidates = extension_set(F, tuple);
    std::mt19937_64 rng(rng_seed);
    while (!candidates.empty()) {
        std::int64_t x = candidates[rng() % candidates.size()];
        tuple.insert(std::upper_bound(tuple.begin(), tuple.end(), x), x);
        std::vector<std::int64_t> next;
        next.reserve(candidates.size());
        for (std::int64_t w : candidates) {
            if (w != x && F.is_square(F.add(F.mul(w, x), 1))) next.push_back(w);
        }
        candidates = std::move(next);
    }
    return tuple;
}

bool maximal_bound_check(std::int64_t q, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("maximal_bound_check requires m >= 1");
    if (q < 1) throw std::invalid_argument("maximal_bound_check requires q >= 1");
    if (m >= 33) return true;  // 2^(2m-2) alone exceeds any int64 q
    __int128 bound = (__int128(1) << (2 * m - 2)) * m * m;
    return static_cast<__int128>(q) < bound;
}

}  // namespace dioph
