#include "ff/finite_field.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>

#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::ff {

namespace {

using Poly = std::vector<std::uint32_t>;

constexpr std::array<char, 8> kCacheMagic = {'G', 'J', 'S', 'U', 'M', 'F', 'F', '\0'};
constexpr std::uint32_t kCacheVersion = 1;

// Remainder of a modulo the monic polynomial m, in place; a keeps its length.
void reduce_in_place(Poly& a, const Poly& m, std::uint32_t p) {
    const std::size_t dm = m.size() - 1;
    for (std::size_t i = a.size(); i-- > dm;) {
        std::uint32_t lead = a[i] % p;
        if (lead == 0) continue;
        for (std::size_t j = 0; j <= dm; ++j) {
            std::uint64_t t = a[i - dm + j] + std::uint64_t{p - lead} * m[j];
            a[i - dm + j] = static_cast<std::uint32_t>(t % p);
        }
    }
}

Poly mul_mod_poly(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    const std::size_t f = m.size() - 1;
    Poly prod(2 * f, 0);
    for (std::size_t i = 0; i < f; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < f; ++j) {
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    reduce_in_place(prod, m, p);
    prod.resize(f);
    return prod;
}

Poly pow_mod_poly(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly result(m.size() - 1, 0);
    result[0] = 1 % p;
    while (e > 0) {
        if (e & 1) result = mul_mod_poly(result, base, m, p);
        base = mul_mod_poly(base, base, m, p);
        e >>= 1;
    }
    return result;
}

Poly digits_of(std::uint64_t code, std::uint32_t p, int f) {
    Poly out(f);
    for (int i = 0; i < f; ++i) {
        out[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return out;
}

bool has_monic_factor_of_degree(const Poly& m, std::uint32_t p, int k) {
    const std::uint64_t count = *nt::checked_pow(p, k);
    Poly divisor(k + 1);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly low = digits_of(idx, p, k);
        std::copy(low.begin(), low.end(), divisor.begin());
        divisor[k] = 1;
        Poly rem = m;
        reduce_in_place(rem, divisor, p);
        if (std::all_of(rem.begin(), rem.begin() + k, [](std::uint32_t c) { return c == 0; })) return true;
    }
    return false;
}

bool is_irreducible(const Poly& m, std::uint32_t p) {
    const int f = static_cast<int>(m.size()) - 1;
    if (f == 1) return true;
    for (int k = 1; k <= f / 2; ++k) {
        if (has_monic_factor_of_degree(m, p, k)) return false;
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree f, comparing
// coefficients constant term first.
Poly smallest_irreducible(std::uint32_t p, int f) {
    const std::uint64_t count = *nt::checked_pow(p, f);
    Poly m(f + 1);
    m[f] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t rest = idx;
        for (int i = f - 1; i >= 0; --i) {
            m[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        if (f > 1 && m[0] == 0) continue;
        if (is_irreducible(m, p)) return m;
    }
    fail(ErrorCode::Internal, "no irreducible polynomial found");
}

Elem smallest_generator(const Poly& m, std::uint32_t p, std::uint64_t q) {
    const int f = static_cast<int>(m.size()) - 1;
    const auto primes = nt::distinct_prime_factors(q - 1);
    for (std::uint64_t code = 1; code < q; ++code) {
        Poly x = digits_of(code, p, f);
        bool primitive = true;
        for (std::uint64_t ell : primes) {
            Poly y = pow_mod_poly(x, (q - 1) / ell, m, p);
            if (y[0] == 1 % p && std::all_of(y.begin() + 1, y.end(), [](std::uint32_t c) { return c == 0; })) {
                primitive = false;
                break;
            }
        }
        if (primitive) return static_cast<Elem>(code);
    }
    fail(ErrorCode::Internal, "no primitive element found");
}

std::vector<Elem> build_exp_table(const Poly& m, std::uint32_t p, std::uint64_t q, Elem g) {
    const int f = static_cast<int>(m.size()) - 1;
    const Poly gd = digits_of(g, p, f);
    int gdeg = f - 1;
    while (gdeg > 0 && gd[gdeg] == 0) --gdeg;
    std::vector<std::uint64_t> pw(f);
    for (int i = 0; i < f; ++i) pw[i] = (i == 0) ? 1 : pw[i - 1] * p;

    std::vector<Elem> table(q - 1);
    Poly cur(f, 0), shifted(f), next(f);
    cur[0] = 1;
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
        std::uint64_t code = 0;
        for (int i = 0; i < f; ++i) code += cur[i] * pw[i];
        table[k] = static_cast<Elem>(code);
        // next = g * cur, accumulating g_j * x^j * cur.
        std::fill(next.begin(), next.end(), 0);
        shifted = cur;
        for (int j = 0; j <= gdeg; ++j) {
            if (j > 0) {
                std::uint32_t top = shifted[f - 1];
                for (int i = f - 1; i > 0; --i) shifted[i] = shifted[i - 1];
                shifted[0] = 0;
                if (top != 0) {
                    for (int i = 0; i < f; ++i) {
                        shifted[i] = static_cast<std::uint32_t>((shifted[i] + std::uint64_t{p - top} * m[i]) % p);
                    }
                }
            }
            if (gd[j] == 0) continue;
            for (int i = 0; i < f; ++i) {
                next[i] = static_cast<std::uint32_t>((next[i] + std::uint64_t{gd[j]} * shifted[i]) % p);
            }
        }
        cur.swap(next);
    }
    return table;
}

std::filesystem::path cache_path(const FieldOptions& options, std::uint64_t p, int f) {
    return options.cache_dir / cache_file_name(p, f);
}

template <typename T>
bool read_pod(std::istream& in, T& value) {
    return static_cast<bool>(in.read(reinterpret_cast<char*>(&value), sizeof(T)));
}

template <typename T>
void write_pod(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

// Loads a cached exp table if it matches the deterministic modulus and generator.
bool load_cached(const std::filesystem::path& path, std::uint32_t p, int f, const Poly& modulus, Elem g,
                 std::vector<Elem>& exp_table) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kCacheMagic) return false;
    std::uint32_t version = 0, fp = 0, ff = 0, fg = 0;
    if (!read_pod(in, version) || version != kCacheVersion) return false;
    if (!read_pod(in, fp) || !read_pod(in, ff) || fp != p || static_cast<int>(ff) != f) return false;
    for (std::uint32_t c : modulus) {
        std::uint32_t stored = 0;
        if (!read_pod(in, stored) || stored != c) return false;
    }
    if (!read_pod(in, fg) || fg != g) return false;
    std::uint64_t count = 0;
    if (!read_pod(in, count) || count != exp_table.size()) return false;
    if (!in.read(reinterpret_cast<char*>(exp_table.data()), static_cast<std::streamsize>(count * sizeof(Elem)))) {
        return false;
    }
    // Spot-check g^(k+1) = g^k * g with polynomial arithmetic.
    const Poly gp = digits_of(g, p, f);
    const std::uint64_t stride = std::max<std::uint64_t>(1, count / 256);
    for (std::uint64_t k = 0; k + 1 < count; k += stride) {
        Poly next = mul_mod_poly(digits_of(exp_table[k], p, f), gp, modulus, p);
        if (next != digits_of(exp_table[k + 1], p, f)) return false;
    }
    return true;
}

void store_cached(const std::filesystem::path& path, std::uint32_t p, int f, const Poly& modulus, Elem g,
                  const std::vector<Elem>& exp_table) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out.write(kCacheMagic.data(), kCacheMagic.size());
        write_pod(out, kCacheVersion);
        write_pod(out, p);
        write_pod(out, static_cast<std::uint32_t>(f));
        for (std::uint32_t c : modulus) write_pod(out, c);
        write_pod(out, g);
        write_pod(out, static_cast<std::uint64_t>(exp_table.size()));
        out.write(reinterpret_cast<const char*>(exp_table.data()),
                  static_cast<std::streamsize>(exp_table.size() * sizeof(Elem)));
        if (!out) return;
    }
    std::filesystem::rename(tmp, path, ec);
}

}  // namespace

std::string cache_file_name(std::uint64_t p, int f) {
    return "ff-v" + std::to_string(kCacheVersion) + "-p" + std::to_string(p) + "-f" + std::to_string(f) + ".bin";
}

FieldPtr make_field(std::uint64_t p, int f, const FieldOptions& options) {
    if (p > std::numeric_limits<std::uint32_t>::max() || !nt::is_prime(p)) {
        fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    }
    if (f < 1) fail(ErrorCode::DegreeOutOfRange, "extension degree must be at least 1");
    const std::uint64_t bound = std::min<std::uint64_t>(options.max_order, std::numeric_limits<Elem>::max());
    auto q = nt::checked_pow(p, static_cast<unsigned>(f), bound);
    if (!q) {
        fail(ErrorCode::FieldTooLarge,
             std::to_string(p) + "^" + std::to_string(f) + " exceeds the field bound " + std::to_string(bound));
    }
    const auto pp = static_cast<std::uint32_t>(p);
    Poly modulus = smallest_irreducible(pp, f);
    Elem g = smallest_generator(modulus, pp, *q);

    std::vector<Elem> exp_table(*q - 1);
    bool cached = false;
    if (!options.cache_dir.empty()) cached = load_cached(cache_path(options, p, f), pp, f, modulus, g, exp_table);
    if (cached) {
        try {
            return std::make_shared<const FiniteField>(FiniteField::Parts{pp, f, modulus, g, std::move(exp_table)});
        } catch (const Error&) {
            exp_table.assign(*q - 1, 0);  // corrupt cache entry; rebuild below
        }
    }
    exp_table = build_exp_table(modulus, pp, *q, g);
    if (!options.cache_dir.empty()) store_cached(cache_path(options, p, f), pp, f, modulus, g, exp_table);
    return std::make_shared<const FiniteField>(FiniteField::Parts{pp, f, std::move(modulus), g, std::move(exp_table)});
}

FiniteField::FiniteField(Parts parts)
    : p_(parts.p),
      f_(parts.f),
      q_(parts.exp_table.size() + 1),
      modulus_(std::move(parts.modulus)),
      generator_(parts.generator),
      exp_(std::move(parts.exp_table)) {
    pow_p_.resize(f_ + 1);
    pow_p_[0] = 1;
    for (int i = 1; i <= f_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;
    if (pow_p_[f_] != q_ || exp_.empty() || exp_[0] != 1 || (q_ > 2 && exp_[1] != generator_)) {
        fail(ErrorCode::Internal, "inconsistent field tables");
    }
    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    log_.assign(q_, unset);
    for (std::uint64_t k = 0; k + 1 < q_; ++k) {
        Elem x = exp_[k];
        if (x == 0 || x >= q_ || log_[x] != unset) fail(ErrorCode::Internal, "exp table is not a permutation");
        log_[x] = static_cast<std::uint32_t>(k);
    }
    // Tr(x^i) for the power basis; the trace is Z/p-linear in the coefficients.
    trace_basis_.resize(f_);
    for (int i = 0; i < f_; ++i) {
        Elem xi = static_cast<Elem>(pow_p_[i]);
        Elem acc = 0, y = xi;
        for (int k = 0; k < f_; ++k) {
            acc = add(acc, y);
            y = frobenius(y);
        }
        trace_basis_[i] = acc;
    }
}

Elem FiniteField::add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (f_ == 1) {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem out = 0;
    for (int i = 0; i < f_; ++i) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        out += static_cast<Elem>(s * pow_p_[i]);
        a /= p_;
        b /= p_;
    }
    return out;
}

Elem FiniteField::neg(Elem a) const noexcept {
    if (p_ == 2) return a;
    if (f_ == 1) return a == 0 ? 0 : p_ - a;
    Elem out = 0;
    for (int i = 0; i < f_; ++i) {
        std::uint32_t c = a % p_;
        if (c != 0) out += static_cast<Elem>((p_ - c) * pow_p_[i]);
        a /= p_;
    }
    return out;
}

Elem FiniteField::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem FiniteField::inv(Elem a) const {
    if (a == 0) fail(ErrorCode::ZeroArgument, "inverse of zero");
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Elem FiniteField::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem FiniteField::pow(Elem a, std::int64_t e) const {
    if (a == 0) {
        if (e < 0) fail(ErrorCode::ZeroArgument, "negative power of zero");
        return e == 0 ? 1 : 0;
    }
    const auto n = static_cast<std::int64_t>(q_ - 1);
    std::int64_t k = static_cast<std::int64_t>((static_cast<__int128>(log_[a]) * nt::mod(e, n)) % n);
    return exp_[k];
}

std::uint64_t FiniteField::dlog(Elem x) const {
    if (x == 0) fail(ErrorCode::ZeroArgument, "discrete logarithm of zero");
    if (x >= q_) fail(ErrorCode::FieldMismatch, "element out of range");
    return log_[x];
}

Elem FiniteField::from_integer(std::int64_t n) const noexcept {
    return static_cast<Elem>(nt::mod(n, static_cast<std::int64_t>(p_)));
}

Elem FiniteField::trace_to_prime(Elem x) const noexcept {
    std::uint64_t acc = 0;
    for (int i = 0; i < f_; ++i) {
        acc += std::uint64_t{x % p_} * trace_basis_[i];
        x /= p_;
    }
    return static_cast<Elem>(acc % p_);
}

Elem FiniteField::relative_trace(Elem x, std::uint64_t sub_order) const {
    int r = 0;
    std::uint64_t power = 1;
    while (sub_order > 1 && power < q_) {
        power *= sub_order;
        ++r;
    }
    if (power != q_) fail(ErrorCode::NotASubfield, "no subfield of order " + std::to_string(sub_order));
    Elem acc = 0, y = x;
    for (int i = 0; i < r; ++i) {
        acc = add(acc, y);
        y = pow(y, static_cast<std::int64_t>(sub_order));
    }
    return acc;
}

std::uint64_t FiniteField::multiplicative_order(Elem x) const {
    const std::uint64_t n = q_ - 1;
    return n / std::gcd<std::uint64_t, std::uint64_t>(dlog(x), n);
}

std::vector<std::uint32_t> FiniteField::coefficients(Elem x) const { return digits_of(x, p_, f_); }

Elem FiniteField::from_coefficients(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() > static_cast<std::size_t>(f_)) fail(ErrorCode::InvalidArgument, "too many coefficients");
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) code += std::uint64_t{coeffs[i] % p_} * pow_p_[i];
    return static_cast<Elem>(code);
}

FieldEmbedding::FieldEmbedding(FieldPtr sub, FieldPtr ext) : sub_(std::move(sub)), ext_(std::move(ext)) {
    if (sub_->p() != ext_->p() || ext_->degree() % sub_->degree() != 0) {
        fail(ErrorCode::NotASubfield, "GF(" + std::to_string(sub_->order()) + ") is not a subfield of GF(" +
                                          std::to_string(ext_->order()) + ")");
    }
    // Roots of sub's modulus lie in the subfield: zero or a power of g^((Q-1)/(q-1)).
    const std::uint64_t step = (ext_->order() - 1) / (sub_->order() - 1);
    const auto& m = sub_->modulus();
    auto is_root = [&](Elem y) {
        Elem acc = 0;
        for (std::size_t i = m.size(); i-- > 0;) acc = ext_->add(ext_->mul(acc, y), ext_->from_integer(m[i]));
        return acc == 0;
    };
    std::vector<Elem> candidates{0};
    for (std::uint64_t k = 0; k + 1 < sub_->order(); ++k) candidates.push_back(ext_->exp(k * step));
    bool found = false;
    root_ = 0;
    for (Elem y : candidates) {
        if (is_root(y) && (!found || y < root_)) {
            root_ = y;
            found = true;
        }
    }
    if (!found) fail(ErrorCode::Internal, "subfield modulus has no root in the extension");

    image_.resize(sub_->order());
    std::vector<Elem> root_powers(sub_->degree());
    Elem y = 1;
    for (int i = 0; i < sub_->degree(); ++i) {
        root_powers[i] = y;
        y = ext_->mul(y, root_);
    }
    for (Elem x = 0; x < sub_->order(); ++x) {
        auto c = sub_->coefficients(x);
        Elem acc = 0;
        for (int i = 0; i < sub_->degree(); ++i) acc = ext_->add(acc, ext_->mul(ext_->from_integer(c[i]), root_powers[i]));
        image_[x] = acc;
        preimage_.emplace(acc, x);
    }
}

Elem FieldEmbedding::preimage(Elem y) const {
    auto it = preimage_.find(y);
    if (it == preimage_.end()) fail(ErrorCode::NotInSubfield, "element is not in the embedded subfield");
    return it->second;
}

FieldEmbedding subfield_embedding(const FieldPtr& sub, const FieldPtr& ext) { return FieldEmbedding(sub, ext); }

}  // namespace gjsum::ff
