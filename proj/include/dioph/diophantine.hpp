#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dioph/ffcore.hpp"

namespace dioph {

// For each unordered pair (i, j) of positions in the element list, a witness
// root with root^2 = a_i * a_j + 1. Makes "is a square" independently
// checkable without redoing character computations.
struct PairWitness {
    int i = 0;
    int j = 0;
    std::int64_t root = 0;
};

struct Certificate {
    std::vector<PairWitness> pairs;
};

struct VerificationReport {
    bool ok = false;
    std::optional<std::pair<int, int>> violating_pair;  // positions in the sorted element list
    Certificate certificate;
};

// Checks the defining property pair by pair in lexicographic position order.
// Elements are canonicalized (sorted ascending); zero or repeated elements are
// rejected with invalid_argument before any pair is examined.
VerificationReport verify_tuple(const Field& F, std::vector<std::int64_t> elements);

// Re-squares every witness; true iff the certificate covers each pair exactly
// once and reproduces a_i * a_j + 1.
bool recheck_certificate(const Field& F, const std::vector<std::int64_t>& elements,
                         const Certificate& cert);

// All x in F_q^* \ A such that A + {x} is again a Diophantine tuple (full scan).
std::vector<std::int64_t> extension_set(const Field& F, const std::vector<std::int64_t>& elements);

bool is_maximal(const Field& F, const std::vector<std::int64_t>& elements);

// Repeatedly adjoins a random member of the current extension set until none
// remains. Deterministic for a fixed rng_seed (mt19937_64 with modulo pick).
std::vector<std::int64_t> greedy_maximal(const Field& F, std::vector<std::int64_t> seed,
                                         std::uint64_t rng_seed);

// Exact integer test of q < 2^(2m-2) * m^2.
bool maximal_bound_check(std::int64_t q, std::int64_t m);

}  // namespace dioph
