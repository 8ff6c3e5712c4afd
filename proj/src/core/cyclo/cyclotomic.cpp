#include "cyclo/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::cyclo {

namespace {

int moebius(std::uint64_t n) {
    int sign = 1;
    for (auto [p, e] : nt::factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::vector<std::int64_t> cyclotomic_polynomial(int n) {
    std::vector<std::int64_t> poly{1};
    std::vector<int> dividers;
    for (auto dv : nt::divisors(n)) {
        int d = static_cast<int>(dv);
        int mu = moebius(n / d);
        if (mu == 1) {
            std::vector<std::int64_t> next(poly.size() + d, 0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + d] += poly[i];
                next[i] -= poly[i];
            }
            poly.swap(next);
        } else if (mu == -1) {
            dividers.push_back(d);
        }
    }
    for (int d : dividers) {
        // poly = quot * (x^d - 1)  =>  quot_i = quot_{i-d} - poly_i
        std::vector<std::int64_t> quot(poly.size() - d, 0);
        for (std::size_t i = 0; i < quot.size(); ++i) {
            quot[i] = (i >= static_cast<std::size_t>(d) ? quot[i - d] : 0) - poly[i];
        }
        poly.swap(quot);
    }
    return poly;
}

// Solves A y = b over Q for an m x k matrix (row-major); empty if inconsistent.
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                                                    int k) {
    const int m = static_cast<int>(a.size());
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < k && row < m; ++col) {
        int sel = -1;
        for (int r = row; r < m; ++r) {
            if (sgn(a[r][col]) != 0) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(a[sel], a[row]);
        std::swap(b[sel], b[row]);
        Rational inv = 1 / a[row][col];
        for (int c = col; c < k; ++c) a[row][c] *= inv;
        b[row] *= inv;
        for (int r = 0; r < m; ++r) {
            if (r == row || sgn(a[r][col]) == 0) continue;
            Rational factor = a[r][col];
            for (int c = col; c < k; ++c) a[r][c] -= factor * a[row][c];
            b[r] -= factor * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int r = row; r < m; ++r) {
        if (sgn(b[r]) != 0) return std::nullopt;
    }
    std::vector<Rational> y(k, 0);
    for (int r = 0; r < row; ++r) y[pivot_col[r]] = b[r];
    return y;
}

Integer pow_integer(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

}  // namespace

CycloContext::CycloContext(int n) : n_(n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "conductor must be positive");
    poly_ = cyclotomic_polynomial(n);
    phi_ = static_cast<int>(poly_.size()) - 1;
    power_count_ = std::max(n, 2 * phi_ - 1);
    powers_.assign(static_cast<std::size_t>(power_count_) * phi_, 0);
    for (int e = 0; e < power_count_; ++e) {
        std::int64_t* row = powers_.data() + static_cast<std::size_t>(e) * phi_;
        if (e < phi_) {
            row[e] = 1;
            continue;
        }
        const std::int64_t* prev = row - phi_;
        std::int64_t top = prev[phi_ - 1];
        for (int i = phi_ - 1; i > 0; --i) row[i] = prev[i - 1];
        row[0] = 0;
        for (int i = 0; i < phi_; ++i) row[i] -= top * poly_[i];
    }
}

const CycloContext& context(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CycloContext>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<CycloContext>(n);
    return *slot;
}

int common_conductor(int n, int m) { return std::lcm(n, m); }

CyclotomicNumber::CyclotomicNumber() : CyclotomicNumber(1) {}

CyclotomicNumber::CyclotomicNumber(int conductor) : n_(conductor), num_(context(conductor).degree()), den_(1) {}

CyclotomicNumber CyclotomicNumber::from_integer(int conductor, const Integer& value) {
    CyclotomicNumber out(conductor);
    out.num_[0] = value;
    return out;
}

CyclotomicNumber CyclotomicNumber::from_rational(int conductor, const Rational& value) {
    CyclotomicNumber out(conductor);
    out.num_[0] = value.get_num();
    out.den_ = value.get_den();
    return out;
}

CyclotomicNumber CyclotomicNumber::zeta_power(int conductor, std::int64_t e) {
    const auto& ctx = context(conductor);
    CyclotomicNumber out(conductor);
    auto row = ctx.power(static_cast<int>(nt::mod(e, conductor)));
    for (int i = 0; i < ctx.degree(); ++i) out.num_[i] = static_cast<long>(row[i]);
    return out;
}

CyclotomicNumber CyclotomicNumber::from_histogram(int conductor, std::span<const std::int64_t> hist) {
    if (hist.size() != static_cast<std::size_t>(conductor)) fail(ErrorCode::InvalidArgument, "histogram length");
    const auto& ctx = context(conductor);
    const int phi = ctx.degree();
    std::vector<__int128> acc(phi, 0);
    for (int e = 0; e < conductor; ++e) {
        if (hist[e] == 0) continue;
        auto row = ctx.power(e);
        for (int i = 0; i < phi; ++i) acc[i] += static_cast<__int128>(hist[e]) * row[i];
    }
    CyclotomicNumber out(conductor);
    for (int i = 0; i < phi; ++i) {
        __int128 v = acc[i];
        bool negative = v < 0;
        unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        Integer value = static_cast<unsigned long>(mag >> 64);
        value <<= 64;
        value += static_cast<unsigned long>(mag & ~std::uint64_t{0});
        out.num_[i] = negative ? Integer(-value) : value;
    }
    return out;
}

CyclotomicNumber CyclotomicNumber::from_coefficients(int conductor, std::span<const Rational> coeffs) {
    CyclotomicNumber out(conductor);
    if (coeffs.size() != out.num_.size()) fail(ErrorCode::InvalidArgument, "coefficient count must equal phi(n)");
    Integer den = 1;
    for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.num_[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    out.den_ = den;
    out.normalize();
    return out;
}

CyclotomicNumber CyclotomicNumber::from_numerators(int conductor, std::vector<Integer> nums, Integer den) {
    CyclotomicNumber out(conductor);
    if (nums.size() != out.num_.size()) fail(ErrorCode::InvalidArgument, "coefficient count must equal phi(n)");
    if (sgn(den) == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
    out.num_ = std::move(nums);
    out.den_ = std::move(den);
    out.normalize();
    return out;
}

CyclotomicNumber CyclotomicNumber::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos || text.size() < colon + 3 || text[colon + 1] != '[' || text.back() != ']') {
        fail(ErrorCode::InvalidArgument, "malformed cyclotomic literal: " + std::string(text));
    }
    int n = 0;
    try {
        n = std::stoi(std::string(text.substr(0, colon)));
    } catch (const std::exception&) {
        fail(ErrorCode::InvalidArgument, "malformed conductor: " + std::string(text));
    }
    if (n < 1) fail(ErrorCode::InvalidArgument, "conductor must be positive");
    std::vector<Rational> coeffs;
    std::string body(text.substr(colon + 2, text.size() - colon - 3));
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Rational r;
        if (r.set_str(item, 10) != 0) fail(ErrorCode::InvalidArgument, "malformed rational: " + item);
        r.canonicalize();
        coeffs.push_back(r);
    }
    return from_coefficients(n, coeffs);
}

std::vector<Rational> CyclotomicNumber::coefficients() const {
    std::vector<Rational> out;
    out.reserve(num_.size());
    for (const auto& c : num_) {
        Rational r(c, den_);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& c : num_) {
        if (sgn(c) != 0) return false;
    }
    return true;
}

bool CyclotomicNumber::is_rational() const {
    for (std::size_t i = 1; i < num_.size(); ++i) {
        if (sgn(num_[i]) != 0) return false;
    }
    return true;
}

bool CyclotomicNumber::is_one() const { return is_rational() && num_[0] == den_; }

Rational CyclotomicNumber::rational_value() const {
    if (!is_rational()) fail(ErrorCode::NotInSubfield, "value is not rational: " + to_string());
    Rational r(num_[0], den_);
    r.canonicalize();
    return r;
}

std::string CyclotomicNumber::to_string() const {
    std::string out = std::to_string(n_) + ":[";
    auto coeffs = coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) out += ',';
        out += coeffs[i].get_str();
    }
    out += ']';
    return out;
}

void CyclotomicNumber::normalize() {
    if (sgn(den_) < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    Integer g = den_;
    for (const auto& c : num_) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (is_zero()) {
        den_ = 1;
        return;
    }
    if (g != 1) {
        for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber out = *this;
    for (auto& c : out.num_) c = -c;
    return out;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& other) {
    if (n_ != other.n_) {
        int m = common_conductor(n_, other.n_);
        *this = cast_conductor(*this, m);
        return *this += cast_conductor(other, m);
    }
    if (den_ == other.den_) {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += other.num_[i];
    } else {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * other.den_ + other.num_[i] * den_;
        den_ *= other.den_;
    }
    normalize();
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& other) { return *this += -other; }

CyclotomicNumber CyclotomicNumber::multiply_same(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    const auto& ctx = context(a.n_);
    const int phi = ctx.degree();
    std::vector<Integer> prod(2 * phi - 1);
    for (int i = 0; i < phi; ++i) {
        if (sgn(a.num_[i]) == 0) continue;
        for (int j = 0; j < phi; ++j) {
            if (sgn(b.num_[j]) == 0) continue;
            mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
        }
    }
    CyclotomicNumber out(a.n_);
    for (int i = 0; i < phi; ++i) out.num_[i] = prod[i];
    for (int e = phi; e < 2 * phi - 1; ++e) {
        if (sgn(prod[e]) == 0) continue;
        auto row = ctx.power(e);
        for (int i = 0; i < phi; ++i) {
            if (row[i] != 0) out.num_[i] += prod[e] * static_cast<long>(row[i]);
        }
    }
    out.den_ = a.den_ * b.den_;
    out.normalize();
    return out;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& other) {
    if (n_ != other.n_) {
        int m = common_conductor(n_, other.n_);
        *this = multiply_same(cast_conductor(*this, m), cast_conductor(other, m));
    } else {
        *this = multiply_same(*this, other);
    }
    return *this;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
    return CyclotomicNumber::from_integer(n_, 1) / *this;
}

CyclotomicNumber& CyclotomicNumber::operator/=(const CyclotomicNumber& other) {
    if (n_ != other.n_) {
        int m = common_conductor(n_, other.n_);
        *this = cast_conductor(*this, m);
        return *this /= cast_conductor(other, m);
    }
    if (other.is_zero()) fail(ErrorCode::ZeroArgument, "division by zero");
    const auto& ctx = context(n_);
    const int phi = ctx.degree();
    // Column j of the multiplication-by-other matrix is other * zeta^j.
    std::vector<std::vector<Rational>> mat(phi, std::vector<Rational>(phi));
    for (int j = 0; j < phi; ++j) {
        std::vector<Integer> col(phi);
        for (int i = 0; i < phi; ++i) {
            if (sgn(other.num_[i]) == 0) continue;
            auto row = ctx.power(i + j);
            for (int t = 0; t < phi; ++t) {
                if (row[t] != 0) col[t] += other.num_[i] * static_cast<long>(row[t]);
            }
        }
        for (int t = 0; t < phi; ++t) mat[t][j] = col[t];
    }
    std::vector<Rational> rhs(num_.begin(), num_.end());
    auto y = solve_rational(std::move(mat), std::move(rhs), phi);
    if (!y) fail(ErrorCode::Internal, "singular multiplication matrix");
    Rational scale(other.den_, den_);
    scale.canonicalize();
    for (auto& v : *y) v *= scale;
    *this = from_coefficients(n_, *y);
    return *this;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.n_ != b.n_) {
        int m = common_conductor(a.n_, b.n_);
        return cast_conductor(a, m) == cast_conductor(b, m);
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

CyclotomicNumber CyclotomicNumber::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    CyclotomicNumber result = from_integer(n_, 1), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

CyclotomicNumber CyclotomicNumber::conj() const { return galois(-1); }

CyclotomicNumber CyclotomicNumber::scaled(const Rational& r) const {
    CyclotomicNumber out = *this;
    for (auto& c : out.num_) c *= r.get_num();
    out.den_ *= r.get_den();
    out.normalize();
    return out;
}

CyclotomicNumber CyclotomicNumber::galois(std::int64_t h) const {
    const std::int64_t hn = nt::mod(h, n_);
    if (std::gcd<std::int64_t, std::int64_t>(hn, n_) != 1 && n_ != 1) {
        fail(ErrorCode::NotCoprime, std::to_string(h) + " is not a unit modulo " + std::to_string(n_));
    }
    const auto& ctx = context(n_);
    CyclotomicNumber out(n_);
    for (int i = 0; i < degree(); ++i) {
        if (sgn(num_[i]) == 0) continue;
        auto row = ctx.power(static_cast<int>((i * hn) % n_));
        for (int t = 0; t < degree(); ++t) {
            if (row[t] != 0) out.num_[t] += num_[i] * static_cast<long>(row[t]);
        }
    }
    out.den_ = den_;
    out.normalize();
    return out;
}

Rational CyclotomicNumber::norm() const {
    CyclotomicNumber prod = from_integer(n_, 1);
    for (int h : nt::units_mod(n_)) prod *= galois(h);
    return prod.rational_value();
}

std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& alpha) { return os << alpha.to_string(); }

CyclotomicNumber galois_apply(std::int64_t h, const CyclotomicNumber& alpha) { return alpha.galois(h); }

CyclotomicNumber cast_conductor(const CyclotomicNumber& alpha, int m) {
    const int n = alpha.conductor();
    if (m < 1) fail(ErrorCode::InvalidArgument, "conductor must be positive");
    if (n == m) return alpha;
    if (m % n == 0) {
        const auto& ctx = context(m);
        const int step = m / n;
        std::vector<Integer> out(ctx.degree());
        for (int i = 0; i < alpha.degree(); ++i) {
            const auto& c = alpha.numerators()[i];
            if (sgn(c) == 0) continue;
            auto row = ctx.power(i * step);
            for (int t = 0; t < ctx.degree(); ++t) {
                if (row[t] != 0) out[t] += c * static_cast<long>(row[t]);
            }
        }
        return CyclotomicNumber::from_numerators(m, std::move(out), alpha.denominator());
    }
    const int t = std::gcd(n, m);
    if (t != m) return cast_conductor(cast_conductor(alpha, t), m);
    // Down-cast: write alpha in the basis zeta_m^j = zeta_n^{j n/m}.
    const auto& big = context(n);
    const int phi_m = context(m).degree();
    const int step = n / m;
    std::vector<std::vector<Rational>> mat(big.degree(), std::vector<Rational>(phi_m));
    for (int j = 0; j < phi_m; ++j) {
        auto row = big.power(j * step);
        for (int i = 0; i < big.degree(); ++i) mat[i][j] = static_cast<long>(row[i]);
    }
    std::vector<Rational> rhs(alpha.numerators().begin(), alpha.numerators().end());
    auto y = solve_rational(std::move(mat), std::move(rhs), phi_m);
    if (!y) {
        fail(ErrorCode::NotInSubfield,
             alpha.to_string() + " does not lie in the cyclotomic field of conductor " + std::to_string(m));
    }
    Rational inv_den(1, alpha.denominator());
    for (auto& v : *y) v *= inv_den;
    return CyclotomicNumber::from_coefficients(m, *y);
}

std::optional<int> is_root_of_unity(const CyclotomicNumber& alpha) {
    if (alpha.is_zero()) return std::nullopt;
    const int bound = 2 * alpha.conductor();
    if (!alpha.pow(bound).is_one()) return std::nullopt;
    for (auto e : nt::divisors(bound)) {
        if (alpha.pow(static_cast<std::int64_t>(e)).is_one()) return static_cast<int>(e);
    }
    return bound;
}

std::optional<int> weil_weight(const CyclotomicNumber& alpha, const Integer& q) {
    if (alpha.is_zero()) fail(ErrorCode::ZeroArgument, "weight of zero");
    if (q < 2) fail(ErrorCode::InvalidArgument, "q must be at least 2");
    // The power basis is an integral basis, so integrality up to q^m means the
    // denominator only involves primes dividing q.
    Integer den = alpha.denominator();
    for (Integer g; (g = gcd(den, q)) != 1;) den /= g;
    if (den != 1) return std::nullopt;

    const CyclotomicNumber abs2 = alpha * alpha.conj();
    if (!abs2.is_rational()) return std::nullopt;
    Rational r = abs2.rational_value();
    if (sgn(r) <= 0) return std::nullopt;
    int w = 0;
    Integer top = r.get_num(), bottom = r.get_den();
    if (bottom != 1 && top != 1) return std::nullopt;
    Integer& grow = (bottom == 1) ? top : bottom;
    while (grow != 1) {
        if (grow % q != 0) return std::nullopt;
        grow /= q;
        ++w;
    }
    if (r.get_den() != 1) w = -w;
    const Rational target = w >= 0 ? Rational(pow_integer(q, w)) : Rational(1, pow_integer(q, -w));
    const int n = alpha.conductor();
    for (int h : nt::units_mod(n)) {
        CyclotomicNumber prod = alpha.galois(h) * alpha.galois(-h);
        if (!prod.is_rational() || prod.rational_value() != target) return std::nullopt;
    }
    return w;
}

}  // namespace gjsum::cyclo
