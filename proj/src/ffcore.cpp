#include "dioph/ffcore.hpp"

#include <algorithm>
#include <stdexcept>

namespace dioph {

namespace {

constexpr int kMaxDeg = 40;  // extension degree is at most 19 under the q <= 2^31 policy

std::int64_t mod_pow_i64(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

std::int64_t mod_inv_i64(std::int64_t a, std::int64_t p) {
    // p prime, a != 0 mod p
    return mod_pow_i64(a % p, p - 2, p);
}

}  // namespace

FpPoly poly_add(const FpPoly& a, const FpPoly& b, std::int64_t p) {
    FpPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        std::int64_t s = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
        r.c[i] = s >= p ? s - p : s;
    }
    r.trim();
    return r;
}

FpPoly poly_sub(const FpPoly& a, const FpPoly& b, std::int64_t p) {
    FpPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        std::int64_t s = (i < a.c.size() ? a.c[i] : 0) - (i < b.c.size() ? b.c[i] : 0);
        r.c[i] = s < 0 ? s + p : s;
    }
    r.trim();
    return r;
}

FpPoly poly_mul(const FpPoly& a, const FpPoly& b, std::int64_t p) {
    if (a.is_zero() || b.is_zero()) return FpPoly::zero();
    FpPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % p;
        }
    }
    r.trim();
    return r;
}

std::pair<FpPoly, FpPoly> poly_divrem(const FpPoly& a, const FpPoly& b, std::int64_t p) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    if (a.deg() < b.deg()) return {FpPoly::zero(), a};
    FpPoly rem = a;
    FpPoly quo;
    quo.c.assign(a.deg() - b.deg() + 1, 0);
    const std::int64_t lead_inv = b.lead() == 1 ? 1 : mod_inv_i64(b.lead(), p);
    for (int k = a.deg() - b.deg(); k >= 0; --k) {
        int top = k + b.deg();
        if (top >= static_cast<int>(rem.c.size())) continue;
        std::int64_t coef = (rem.c[top] * lead_inv) % p;
        if (coef == 0) continue;
        quo.c[k] = coef;
        for (int j = 0; j <= b.deg(); ++j) {
            std::int64_t v = rem.c[k + j] - coef * b.c[j] % p;
            rem.c[k + j] = v < 0 ? v + p : v;
        }
    }
    quo.trim();
    rem.trim();
    return {quo, rem};
}

FpPoly poly_mod(const FpPoly& a, const FpPoly& b, std::int64_t p) {
    return poly_divrem(a, b, p).second;
}

FpPoly poly_divexact(const FpPoly& a, const FpPoly& b, std::int64_t p) {
    auto [q, r] = poly_divrem(a, b, p);
    if (!r.is_zero()) throw std::logic_error("polynomial division expected to be exact");
    return q;
}

FpPoly poly_make_monic(FpPoly a, std::int64_t p) {
    if (a.is_zero() || a.is_monic()) return a;
    std::int64_t s = mod_inv_i64(a.lead(), p);
    for (auto& v : a.c) v = (v * s) % p;
    return a;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, std::int64_t p) {
    while (!b.is_zero()) {
        FpPoly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(std::move(a), p);
}

FpPoly poly_derivative(const FpPoly& a, std::int64_t p) {
    FpPoly r;
    if (a.deg() < 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) {
        r.c[i - 1] = (static_cast<std::int64_t>(i % p) * a.c[i]) % p;
    }
    r.trim();
    return r;
}

FpPoly poly_pow(const FpPoly& base, std::int64_t e, std::int64_t p) {
    if (e < 0) throw std::invalid_argument("negative polynomial exponent");
    FpPoly r = FpPoly::one();
    FpPoly b = base;
    while (e > 0) {
        if (e & 1) r = poly_mul(r, b, p);
        e >>= 1;
        if (e > 0) b = poly_mul(b, b, p);
    }
    return r;
}

FpPoly poly_powmod(const FpPoly& base, std::int64_t e, const FpPoly& mod, std::int64_t p) {
    if (e < 0) throw std::invalid_argument("negative polynomial exponent");
    FpPoly r = poly_mod(FpPoly::one(), mod, p);
    FpPoly b = poly_mod(base, mod, p);
    while (e > 0) {
        if (e & 1) r = poly_mod(poly_mul(r, b, p), mod, p);
        e >>= 1;
        if (e > 0) b = poly_mod(poly_mul(b, b, p), mod, p);
    }
    return r;
}

namespace {

// f has f' = 0, hence f(x) = g(x^p) = g(x)^p over F_p
FpPoly pth_root(const FpPoly& f, std::int64_t p) {
    FpPoly g;
    g.c.assign(f.deg() / p + 1, 0);
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (f.c[i] == 0) continue;
        if (i % p != 0) throw std::logic_error("pth_root: polynomial is not a p-th power");
        g.c[i / p] = f.c[i];
    }
    g.trim();
    return g;
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_decomposition(const FpPoly& f, std::int64_t p) {
    if (f.is_zero()) throw std::invalid_argument("squarefree decomposition of zero polynomial");
    std::vector<SquarefreeFactor> out;
    FpPoly g = poly_make_monic(f, p);
    if (g.deg() == 0) return out;
    FpPoly gp = poly_derivative(g, p);
    if (gp.is_zero()) {
        for (auto& sf : squarefree_decomposition(pth_root(g, p), p)) {
            out.push_back({std::move(sf.factor), sf.multiplicity * p});
        }
        return out;
    }
    FpPoly c = poly_gcd(g, gp, p);
    FpPoly w = poly_divexact(g, c, p);
    std::int64_t i = 1;
    while (w.deg() > 0) {
        FpPoly y = poly_gcd(w, c, p);
        FpPoly z = poly_divexact(w, y, p);
        if (z.deg() > 0) out.push_back({std::move(z), i});
        ++i;
        w = std::move(y);
        c = poly_divexact(c, w, p);
    }
    if (c.deg() > 0) {
        for (auto& sf : squarefree_decomposition(pth_root(c, p), p)) {
            out.push_back({std::move(sf.factor), sf.multiplicity * p});
        }
    }
    return out;
}

bool poly_is_perfect_square(const FpPoly& f, std::int64_t p) {
    if (f.is_zero()) return true;
    if (f.deg() == 0) {
        // constant: square iff a quadratic residue mod p
        return f.c[0] == 0 || mod_pow_i64(f.c[0], (p - 1) / 2, p) == 1;
    }
    if (mod_pow_i64(f.lead(), (p - 1) / 2, p) != 1) return false;
    for (const auto& sf : squarefree_decomposition(f, p)) {
        if (sf.multiplicity % 2 != 0) return false;
    }
    return true;
}

FpPoly poly_radical(const FpPoly& f, std::int64_t p) {
    FpPoly r = FpPoly::one();
    for (const auto& sf : squarefree_decomposition(f, p)) {
        r = poly_mul(r, sf.factor, p);
    }
    return r;
}

bool is_prime_i64(std::int64_t v) {
    if (v < 2) return false;
    if (v % 2 == 0) return v == 2;
    for (std::int64_t d = 3; d * d <= v; d += 2) {
        if (v % d == 0) return false;
    }
    return true;
}

std::vector<std::pair<std::int64_t, int>> prime_factorization(std::int64_t v) {
    if (v < 1) throw std::invalid_argument("factorization requires a positive integer");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= v; d += (d == 2 ? 1 : 2)) {
        if (v % d != 0) continue;
        int e = 0;
        while (v % d == 0) {
            v /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (v > 1) out.emplace_back(v, 1);
    return out;
}

std::vector<std::int64_t> prime_factors(std::int64_t v) {
    std::vector<std::int64_t> out;
    for (auto& [p, e] : prime_factorization(v)) out.push_back(p);
    return out;
}

bool poly_is_irreducible(const FpPoly& f, std::int64_t p) {
    if (!f.is_monic() || f.deg() < 1) {
        throw std::invalid_argument("irreducibility test requires a monic polynomial of positive degree");
    }
    const int n = f.deg();
    if (n == 1) return true;
    const FpPoly x = poly_mod(FpPoly::x(), f, p);
    std::vector<FpPoly> frob(n + 1);  // frob[k] = t^(p^k) mod f
    frob[0] = x;
    for (int k = 1; k <= n; ++k) frob[k] = poly_powmod(frob[k - 1], p, f, p);
    if (frob[n] != x) return false;
    for (std::int64_t r : prime_factors(n)) {
        FpPoly h = poly_sub(frob[n / r], x, p);
        if (poly_gcd(h, f, p).deg() != 0) return false;
    }
    return true;
}

FpPoly find_irreducible(std::int64_t p, int n) {
    if (!is_prime_i64(p) || p == 2) throw std::invalid_argument("p must be an odd prime");
    if (n < 1) throw std::invalid_argument("degree must be at least 1");
    std::int64_t q = 1;
    for (int i = 0; i < n; ++i) {
        if (q > Field::max_q / p) throw std::invalid_argument("p^n exceeds the size policy");
        q *= p;
    }
    for (std::int64_t code = 0; code < q; ++code) {
        FpPoly f;
        f.c.assign(n + 1, 0);
        std::int64_t rest = code;
        for (int i = 0; i < n; ++i) {
            f.c[i] = rest % p;
            rest /= p;
        }
        f.c[n] = 1;
        if (poly_is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

void Field::init(std::int64_t p, int n, FpPoly modulus, bool modulus_given) {
    if (!is_prime_i64(p) || p == 2) throw std::invalid_argument("field characteristic must be an odd prime");
    if (n < 1) throw std::invalid_argument("extension degree must be at least 1");
    if (n > kMaxDeg) throw std::invalid_argument("extension degree beyond the size policy");
    p_ = p;
    n_ = n;
    q_ = 1;
    for (int i = 0; i < n; ++i) {
        if (q_ > max_q / p) throw std::invalid_argument("p^n exceeds the size policy (q <= 2^31)");
        q_ *= p;
    }
    if (modulus_given) {
        if (modulus.deg() != n || !modulus.is_monic()) {
            throw std::invalid_argument("modulus must be monic of degree n");
        }
        for (std::int64_t v : modulus.c) {
            if (v < 0 || v >= p) throw std::invalid_argument("modulus coefficients out of range");
        }
        if (!poly_is_irreducible(modulus, p)) {
            throw std::invalid_argument("modulus is not irreducible over F_p");
        }
        modulus_ = std::move(modulus);
    } else {
        modulus_ = find_irreducible(p, n);
    }
    qm1_factors_ = prime_factors(q_ - 1);
    if (q_ <= table_limit) build_tables();
}

Field::Field(std::int64_t p, int n) { init(p, n, FpPoly{}, false); }

Field::Field(std::int64_t p, int n, FpPoly modulus) { init(p, n, std::move(modulus), true); }

void Field::build_tables() {
    chi_table_.assign(q_, -1);
    root_table_.assign(q_, UINT32_MAX);
    chi_table_[0] = 0;
    root_table_[0] = 0;
    for (std::int64_t x = 1; x < q_; ++x) {
        std::int64_t s = mul(x, x);
        chi_table_[s] = 1;
        if (root_table_[s] == UINT32_MAX) root_table_[s] = static_cast<std::uint32_t>(x);
    }
}

void Field::check_code(std::int64_t a) const {
    if (a < 0 || a >= q_) throw std::invalid_argument("element code out of range for " + id());
}

std::int64_t Field::modulus_code() const {
    std::int64_t code = 0, pw = 1;
    for (int i = 0; i < n_; ++i) {
        code += modulus_.c[i] * pw;
        pw *= p_;
    }
    return code;
}

std::string Field::id() const {
    return std::to_string(p_) + "^" + std::to_string(n_) + "/" + std::to_string(modulus_code());
}

std::vector<std::int64_t> Field::decode(std::int64_t code) const {
    check_code(code);
    std::vector<std::int64_t> d(n_);
    for (int i = 0; i < n_; ++i) {
        d[i] = code % p_;
        code /= p_;
    }
    return d;
}

std::int64_t Field::encode(const std::vector<std::int64_t>& coeffs) const {
    if (static_cast<int>(coeffs.size()) > n_) throw std::invalid_argument("too many coefficients");
    std::int64_t code = 0, pw = 1;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] < 0 || coeffs[i] >= p_) throw std::invalid_argument("coefficient out of range");
        code += coeffs[i] * pw;
        pw *= p_;
    }
    return code;
}

std::int64_t Field::add(std::int64_t a, std::int64_t b) const {
    check_code(a);
    check_code(b);
    if (n_ == 1) {
        std::int64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::int64_t code = 0, pw = 1;
    for (int i = 0; i < n_; ++i) {
        std::int64_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        code += s * pw;
        pw *= p_;
        a /= p_;
        b /= p_;
    }
    return code;
}

std::int64_t Field::neg(std::int64_t a) const {
    check_code(a);
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    std::int64_t code = 0, pw = 1;
    for (int i = 0; i < n_; ++i) {
        std::int64_t d = a % p_;
        code += (d == 0 ? 0 : p_ - d) * pw;
        pw *= p_;
        a /= p_;
    }
    return code;
}

std::int64_t Field::sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }

std::int64_t Field::mul(std::int64_t a, std::int64_t b) const {
    check_code(a);
    check_code(b);
    if (n_ == 1) return (a * b) % p_;
    std::int64_t da[kMaxDeg], db[kMaxDeg], acc[2 * kMaxDeg];
    std::int64_t ta = a, tb = b;
    for (int i = 0; i < n_; ++i) {
        da[i] = ta % p_;
        ta /= p_;
        db[i] = tb % p_;
        tb /= p_;
    }
    const int top = 2 * n_ - 1;
    for (int i = 0; i < top; ++i) acc[i] = 0;
    for (int i = 0; i < n_; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < n_; ++j) acc[i + j] += da[i] * db[j];
    }
    // reduce by the monic modulus
    for (int k = top - 1; k >= n_; --k) {
        std::int64_t t = acc[k] % p_;
        if (t < 0) t += p_;
        if (t == 0) continue;
        for (int j = 0; j < n_; ++j) acc[k - n_ + j] -= t * modulus_.c[j];
    }
    std::int64_t code = 0, pw = 1;
    for (int i = 0; i < n_; ++i) {
        std::int64_t v = acc[i] % p_;
        if (v < 0) v += p_;
        code += v * pw;
        pw *= p_;
    }
    return code;
}

std::int64_t Field::pow(std::int64_t a, std::int64_t e) const {
    check_code(a);
    if (e < 0) {
        return pow(inv(a), -e);
    }
    std::int64_t r = 1, b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e > 0) b = mul(b, b);
    }
    return r;
}

std::int64_t Field::inv(std::int64_t a) const {
    check_code(a);
    if (a == 0) throw std::domain_error("inversion of zero");
    std::int64_t r = pow(a, q_ - 2);
    if (mul(a, r) != 1) throw std::logic_error("inverse computation failed");
    return r;
}

int Field::chi(std::int64_t a) const {
    check_code(a);
    if (!chi_table_.empty()) return chi_table_[a];
    if (a == 0) return 0;
    return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
}

std::int64_t Field::sqrt_by_exponentiation(std::int64_t a) const {
    if (q_ % 4 == 3) {
        std::int64_t r = pow(a, (q_ + 1) / 4);
        if (mul(r, r) != a) throw std::logic_error("sqrt exponentiation failed");
        return r;
    }
    // Tonelli-Shanks in the cyclic group F_q^*
    std::int64_t s = q_ - 1;
    int e = 0;
    while (s % 2 == 0) {
        s /= 2;
        ++e;
    }
    std::int64_t z = 2;
    while (chi(z) != -1) ++z;
    std::int64_t c = pow(z, s);
    std::int64_t t = pow(a, s);
    std::int64_t r = pow(a, (s + 1) / 2);
    int m = e;
    while (t != 1) {
        int i = 0;
        std::int64_t u = t;
        while (u != 1) {
            u = mul(u, u);
            ++i;
        }
        std::int64_t b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
        r = mul(r, b);
        c = mul(b, b);
        t = mul(t, c);
        m = i;
    }
    if (mul(r, r) != a) throw std::logic_error("Tonelli-Shanks failed");
    return r;
}

std::int64_t Field::sqrt(std::int64_t a) const {
    check_code(a);
    if (a == 0) return 0;
    if (!root_table_.empty()) {
        std::uint32_t r = root_table_[a];
        if (r == UINT32_MAX) throw std::domain_error("element is not a square");
        return static_cast<std::int64_t>(r);
    }
    if (chi(a) == -1) throw std::domain_error("element is not a square");
    std::int64_t r = sqrt_by_exponentiation(a);
    return std::min(r, neg(r));
}

std::int64_t Field::mult_order(std::int64_t a) const {
    check_code(a);
    if (a == 0) throw std::domain_error("multiplicative order of zero");
    std::int64_t e = q_ - 1;
    for (std::int64_t r : qm1_factors_) {
        while (e % r == 0 && pow(a, e / r) == 1) e /= r;
    }
    return e;
}

std::int64_t Field::eval(const FpPoly& f, std::int64_t x) const {
    check_code(x);
    std::int64_t r = 0;
    for (int i = f.deg(); i >= 0; --i) {
        if (f.c[i] < 0 || f.c[i] >= p_) throw std::invalid_argument("polynomial coefficient out of range");
        r = add(mul(r, x), f.c[i]);
    }
    return r;
}

Field parse_field(const std::string& spec) {
    auto parse_i64 = [](const std::string& s, const char* what) {
        if (s.empty()) throw std::invalid_argument(std::string("empty ") + what);
        size_t pos = 0;
        std::int64_t v;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("bad ") + what + ": " + s);
        }
        if (pos != s.size() || v < 0) throw std::invalid_argument(std::string("bad ") + what + ": " + s);
        return v;
    };
    std::string body = spec;
    std::string modpart;
    if (auto slash = spec.find('/'); slash != std::string::npos) {
        body = spec.substr(0, slash);
        modpart = spec.substr(slash + 1);
    }
    std::int64_t p;
    int n = 1;
    if (auto caret = body.find('^'); caret != std::string::npos) {
        p = parse_i64(body.substr(0, caret), "field characteristic");
        std::int64_t nn = parse_i64(body.substr(caret + 1), "extension degree");
        if (nn < 1 || nn > kMaxDeg) throw std::invalid_argument("extension degree out of range");
        n = static_cast<int>(nn);
    } else {
        p = parse_i64(body, "field characteristic");
    }
    if (modpart.empty()) return Field(p, n);
    std::int64_t code = parse_i64(modpart, "modulus code");
    FpPoly modulus;
    modulus.c.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        modulus.c[i] = code % p;
        code /= p;
    }
    if (code != 0) throw std::invalid_argument("modulus code out of range");
    modulus.c[n] = 1;
    return Field(p, n, std::move(modulus));
}

}  // namespace dioph
