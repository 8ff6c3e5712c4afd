#include "relations/suite.hpp"

#include "chars/characters.hpp"
#include "cyclo/dense_ring.hpp"
#include "report/report_sink.hpp"
#include "sums/group_ring.hpp"
#include "sums/jacobi_table.hpp"
#include "sums/sums.hpp"
#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::relations {

using cyclo::CyclotomicNumber;
using cyclo::DenseRing;
using ff::Elem;
using Vec = std::vector<std::int64_t>;
using Json = nlohmann::ordered_json;

namespace {

// Enumerates (Z/d)^n in index order.
template <class Visit>
void for_each_tuple(int d, int n, Visit&& visit) {
    const auto size = *nt::checked_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n));
    std::vector<int> keys(static_cast<std::size_t>(n), 0);
    for (std::uint64_t i = 0; i < size; ++i) {
        visit(i, std::span<const int>(keys));
        for (int j = n - 1; j >= 0; --j) {
            if (++keys[j] < d) break;
            keys[j] = 0;
        }
    }
}

std::vector<int> to_vector(std::span<const int> keys) { return {keys.begin(), keys.end()}; }

class FieldSuite {
public:
    FieldSuite(const ff::FieldPtr& field, int d, const SuiteOptions& options, std::vector<CheckReport>& out)
        : k_(field),
          d_(d),
          q_(field->order()),
          p_(field->p()),
          options_(options),
          mu_(field, d),
          ring_pd_(static_cast<int>(p_ * d)),
          ring_d_(d),
          phi_pd_(static_cast<std::size_t>(ring_pd_.degree())),
          phi_d_(static_cast<std::size_t>(ring_d_.degree())),
          sink_(out, options.granularity) {
        minus_one_key_ = mu_.power_index(k_->neg(1));
        compute_gauss();
        compute_jacobi();
    }

    void run() {
        gauss_reflection();
        gauss_conjugate();
        for (int n = 2; n <= options_.max_arity; ++n) quotient(n);
        for (int n = 2; n <= options_.max_arity; ++n) jacobi_reflection(n);
        for (int n = 3; n <= options_.max_arity; ++n) induction(n);
        for (int r = 1; r <= options_.max_degree; ++r) base_change(r);
        multiplication();
        eigen_gauss();
        for (int n = 2; n <= options_.max_arity; ++n) eigen_jacobi(n);
    }

private:
    Json params() const { return {{"p", p_}, {"f", k_->degree()}, {"d", d_}}; }

    std::span<const std::int64_t> gauss(Elem c, std::int64_t a) const {
        const auto i = (static_cast<std::size_t>(c) * d_ + static_cast<std::size_t>(nt::mod(a, d_))) * phi_pd_;
        return {gauss_.data() + i, phi_pd_};
    }

    std::span<const std::int64_t> jacobi(int n, std::span<const int> keys) const {
        const auto i = sums::tuple_index(keys, d_) * phi_d_;
        return {jacobi_[n].data() + i, phi_d_};
    }

    std::vector<int> normalized(std::span<const int> keys) const {
        std::vector<int> out;
        for (int a : keys) out.push_back(static_cast<int>(nt::mod(a, d_)));
        return out;
    }

    Vec mul_pd(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const {
        Vec out(phi_pd_);
        ring_pd_.multiply(a, b, out);
        return out;
    }

    Vec mul_d(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const {
        Vec out(phi_d_);
        ring_d_.multiply(a, b, out);
        return out;
    }

    std::string show_pd(std::span<const std::int64_t> a) const { return ring_pd_.to_number(a).to_string(); }
    std::string show_d(std::span<const std::int64_t> a) const { return ring_d_.to_number(a).to_string(); }

    Vec constant(const DenseRing& ring, std::int64_t value) const {
        Vec out(static_cast<std::size_t>(ring.degree()), 0);
        out[0] = value;
        return out;
    }

    void compute_gauss() {
        // gauss_[c][a]: one pass over the field per c covers every a
        gauss_.assign(q_ * d_ * phi_pd_, 0);
        const std::int64_t n = p_ * d_;
        std::vector<std::int64_t> hist(static_cast<std::size_t>(n) * d_);
        std::vector<int> keys(q_);
        for (Elem m = 1; m < q_; ++m) keys[m] = mu_.power_index(m);
        for (Elem c = 1; c < q_; ++c) {
            std::fill(hist.begin(), hist.end(), 0);
            const auto psi = chars::additive_character(k_, c);
            for (Elem m = 1; m < q_; ++m) {
                const std::int64_t x = psi.exponent(m);
                for (int a = 0; a < d_; ++a) {
                    const std::int64_t y = static_cast<std::int64_t>(a) * keys[m] % d_;
                    hist[static_cast<std::size_t>(a) * n + static_cast<std::size_t>((x * d_ + y * p_) % n)] -= 1;
                }
            }
            for (int a = 0; a < d_; ++a) {
                ring_pd_.from_histogram(std::span<const std::int64_t>(hist).subspan(static_cast<std::size_t>(a) * n, n),
                                        std::span<std::int64_t>(gauss_).subspan((static_cast<std::size_t>(c) * d_ + a) * phi_pd_, phi_pd_));
            }
        }
    }

    void compute_jacobi() {
        // jacobi_[n] from direct enumeration of the tuples with sum 1
        jacobi_.resize(static_cast<std::size_t>(options_.max_arity) + 1);
        for (int n = 1; n <= options_.max_arity; ++n) {
            const auto counts = sums::tuple_counts(mu_, n, 1);
            jacobi_[n] = sums::exponent_transform(d_, n, counts, n % 2 == 0);
        }
    }

    void gauss_reflection() {
        sink_.begin("gauss_reflection", params());
        const auto q = constant(ring_pd_, static_cast<std::int64_t>(q_));
        for (Elem c = 1; c < q_; ++c) {
            for (int a = 1; a < d_; ++a) {
                const auto lhs = mul_pd(gauss(c, a), gauss(k_->neg(c), -a));
                sink_.record(lhs == q, {{"c", c}, {"a", a}}, [&] { return std::pair{show_pd(lhs), show_pd(q)}; });
            }
        }
        sink_.end();
    }

    void gauss_conjugate() {
        sink_.begin("gauss_conjugate", params());
        Vec rhs(phi_pd_);
        for (Elem c = 1; c < q_; ++c) {
            for (int a = 0; a < d_; ++a) {
                // chi_a((-1)^((q-1)/d)) = zeta_d^(a key(-1)) = zeta_pd^(p a key(-1))
                ring_pd_.multiply_zeta(gauss(c, a), p_ * a * minus_one_key_, rhs);
                const auto lhs = gauss(k_->neg(c), a);
                const bool pass = std::equal(lhs.begin(), lhs.end(), rhs.begin());
                sink_.record(pass, {{"c", c}, {"a", a}}, [&] { return std::pair{show_pd(lhs), show_pd(rhs)}; });
            }
        }
        sink_.end();
    }

    void quotient(int n) {
        auto batch = params();
        batch["n"] = n;
        sink_.begin("gauss_jacobi_quotient", batch);
        // j lifted to conductor pd, per tuple
        const auto size = *nt::checked_pow(static_cast<std::uint64_t>(d_), static_cast<unsigned>(n));
        Vec lifted(size * phi_pd_, 0);
        for (std::uint64_t i = 0; i < size; ++i) {
            ring_pd_.lift_from(ring_d_, std::span<const std::int64_t>(jacobi_[n]).subspan(i * phi_d_, phi_d_),
                               std::span<std::int64_t>(lifted).subspan(i * phi_pd_, phi_pd_));
        }
        Vec pairs(static_cast<std::size_t>(d_) * d_ * phi_pd_);
        auto pair = [&](int a, int b) {
            return std::span<const std::int64_t>(pairs).subspan((static_cast<std::size_t>(a) * d_ + b) * phi_pd_, phi_pd_);
        };
        for (Elem c = 1; c < q_; ++c) {
            for (int a = 0; a < d_; ++a) {
                for (int b = 0; b < d_; ++b) {
                    ring_pd_.multiply(gauss(c, a), gauss(c, b),
                                      std::span<std::int64_t>(pairs).subspan((static_cast<std::size_t>(a) * d_ + b) * phi_pd_, phi_pd_));
                }
            }
            for_each_tuple(d_, n, [&](std::uint64_t i, std::span<const int> keys) {
                if (!chars::admissible(keys, d_)) return;
                Vec product;
                if (n == 2) {
                    product.assign(pair(keys[0], keys[1]).begin(), pair(keys[0], keys[1]).end());
                } else if (n == 3) {
                    product = mul_pd(pair(keys[0], keys[1]), gauss(c, keys[2]));
                } else {
                    product = mul_pd(pair(keys[0], keys[1]), pair(keys[2], keys[3]));
                    for (int t = 4; t < n; ++t) product = mul_pd(product, gauss(c, keys[t]));
                }
                std::int64_t total = 0;
                for (int a : keys) total += a;
                const auto rhs = mul_pd(gauss(c, total), std::span<const std::int64_t>(lifted).subspan(i * phi_pd_, phi_pd_));
                sink_.record(product == rhs, {{"c", c}, {"a", to_vector(keys)}}, [&] {
                    const auto j = ring_d_.to_number(jacobi(n, keys));
                    const auto quotient = ring_pd_.to_number(product) / ring_pd_.to_number(gauss(c, total));
                    std::string shown;
                    try {
                        shown = cyclo::cast_conductor(quotient, d_).to_string();
                    } catch (const Error&) {
                        shown = quotient.to_string();
                    }
                    return std::pair{j.to_string(), shown};
                });
            });
        }
        sink_.end();
    }

    void jacobi_reflection(int n) {
        auto batch = params();
        batch["n"] = n;
        sink_.begin("jacobi_reflection", batch);
        cyclo::Integer power;
        mpz_ui_pow_ui(power.get_mpz_t(), q_, static_cast<unsigned long>(n - 1));
        const auto expected = constant(ring_d_, power.get_si());
        for_each_tuple(d_, n, [&](std::uint64_t, std::span<const int> keys) {
            if (!chars::admissible(keys, d_)) return;
            std::vector<int> conj;
            for (int a : keys) conj.push_back(static_cast<int>(nt::mod(-a, d_)));
            const auto lhs = mul_d(jacobi(n, keys), jacobi(n, conj));
            sink_.record(lhs == expected, {{"a", to_vector(keys)}},
                         [&] { return std::pair{show_d(lhs), show_d(expected)}; });
        });
        sink_.end();
    }

    void induction(int n) {
        auto batch = params();
        batch["n"] = n;
        sink_.begin("jacobi_induction", batch);
        const auto q = static_cast<std::int64_t>(q_);
        for_each_tuple(d_, n, [&](std::uint64_t, std::span<const int> keys) {
            if (!chars::admissible(keys, d_)) return;
            std::vector<int> head(keys.begin(), keys.end() - 2);
            const int tail = static_cast<int>((keys[n - 2] + keys[n - 1]) % d_);
            Vec rhs(phi_d_);
            int branch;
            if (tail != 0) {
                head.push_back(tail);
                const std::vector<int> pair = {keys[n - 2], keys[n - 1]};
                rhs = mul_d(jacobi(n - 1, head), jacobi(2, pair));
                branch = 1;
            } else {
                Vec scaled(jacobi(n - 2, head).begin(), jacobi(n - 2, head).end());
                for (auto& v : scaled) v *= q;
                ring_d_.multiply_zeta(scaled, static_cast<std::int64_t>(keys[n - 2]) * minus_one_key_, rhs);
                branch = 2;
            }
            const auto lhs = jacobi(n, keys);
            const bool pass = std::equal(lhs.begin(), lhs.end(), rhs.begin());
            sink_.record(pass, {{"a", to_vector(keys)}, {"branch", branch}},
                         [&] { return std::pair{show_d(lhs), show_d(rhs)}; });
        });
        sink_.end();
    }

    static Vec power(const DenseRing& ring, std::span<const std::int64_t> a, int r) {
        Vec out(a.begin(), a.end()), next(a.size());
        for (int i = 1; i < r; ++i) {
            ring.multiply(out, a, next);
            out.swap(next);
        }
        return out;
    }

    void base_change(int r) {
        const auto lifted = chars::lift_characters(chars::additive_character(k_, 1),
                                                   chars::multiplicative_character(k_, d_, 1), r, options_.field_options);
        const auto& big = lifted.chi.field;
        const auto& emb = *lifted.embedding;
        chars::RootsOfUnity mu_big(big, d_, lifted.chi.omega);
        auto batch = params();
        batch["r"] = r;
        sink_.begin("base_change_gauss", batch);
        {
            const std::int64_t n = p_ * d_;
            std::vector<std::int64_t> hist(static_cast<std::size_t>(n) * d_);
            std::vector<int> keys(big->order());
            for (Elem m = 1; m < big->order(); ++m) keys[m] = mu_big.power_index(m);
            Vec lhs(phi_pd_);
            for (Elem c = 1; c < q_; ++c) {
                std::fill(hist.begin(), hist.end(), 0);
                const chars::AdditiveCharacter psi_big{big, emb(c)};
                for (Elem m = 1; m < big->order(); ++m) {
                    const std::int64_t x = psi_big.exponent(m);
                    for (int a = 0; a < d_; ++a) {
                        const std::int64_t y = static_cast<std::int64_t>(a) * keys[m] % d_;
                        hist[static_cast<std::size_t>(a) * n + static_cast<std::size_t>((x * d_ + y * p_) % n)] -= 1;
                    }
                }
                for (int a = 0; a < d_; ++a) {
                    ring_pd_.from_histogram(std::span<const std::int64_t>(hist).subspan(static_cast<std::size_t>(a) * n, n), lhs);
                    const auto rhs = power(ring_pd_, gauss(c, a), r);
                    sink_.record(lhs == rhs, {{"c", c}, {"a", a}}, [&] { return std::pair{show_pd(lhs), show_pd(rhs)}; });
                }
            }
        }
        sink_.end();
        sums::JacobiTable table(mu_big);
        for (int n = 2; n <= options_.max_arity; ++n) {
            auto jb = params();
            jb["n"] = n;
            jb["r"] = r;
            sink_.begin("base_change_jacobi", jb);
            const auto& values = table.values(n);
            for_each_tuple(d_, n, [&](std::uint64_t i, std::span<const int> keys) {
                if (i == 0) return;  // all characters trivial
                const std::span<const std::int64_t> lhs(values.data() + i * phi_d_, phi_d_);
                const auto rhs = power(ring_d_, jacobi(n, keys), r);
                const bool pass = std::equal(lhs.begin(), lhs.end(), rhs.begin());
                sink_.record(pass, {{"a", to_vector(keys)}}, [&] { return std::pair{show_d(lhs), show_d(rhs)}; });
            });
            sink_.end();
        }
    }

    void multiplication() {
        sums::JacobiTable table(mu_);
        std::vector<CyclotomicNumber> gauss_numbers(q_ * d_);
        for (Elem c = 1; c < q_; ++c) {
            for (int a = 0; a < d_; ++a) gauss_numbers[c * d_ + a] = ring_pd_.to_number(gauss(c, a));
        }
        auto g = [&](Elem c, std::int64_t a) -> const CyclotomicNumber& { return gauss_numbers[c * d_ + nt::mod(a, d_)]; };
        for (int n = 1; n <= d_; ++n) {
            if (d_ % n != 0) continue;
            const Elem n_elem = k_->from_integer(n);
            auto batch = params();
            batch["n"] = n;
            sink_.begin("multiplication_gauss", batch);
            for (Elem c = 1; c < q_; ++c) {
                for (int a = 0; a < d_; ++a) {
                    const auto an = static_cast<std::int64_t>(a) * n;
                    const auto factor = CyclotomicNumber::zeta_power(d_, an * mu_.power_index(n_elem));
                    // g(a^n) prod g(chi) = a^n(n) prod g(a chi)
                    auto lhs = g(c, an);
                    auto rhs = factor;
                    for (int j = 0; j < n; ++j) {
                        lhs *= g(c, j * (d_ / n));
                        rhs *= g(c, a + j * (d_ / n));
                    }
                    sink_.record(lhs == rhs, {{"c", c}, {"a", a}}, [&] {
                        auto quotient = factor;
                        for (int j = 0; j < n; ++j) quotient *= g(c, a + j * (d_ / n)) / g(c, j * (d_ / n));
                        return std::pair{g(c, an).to_string(), quotient.to_string()};
                    });
                }
            }
            sink_.end();
            sink_.begin("multiplication_jacobi", batch);
            for (int a = 0; a < d_; ++a) {
                const auto an = static_cast<std::int64_t>(a) * n;
                if (an % d_ == 0) {
                    sink_.skip({{"a", a}}, "a^n = 1");
                    continue;
                }
                const auto factor = CyclotomicNumber::zeta_power(d_, an * mu_.power_index(n_elem));
                const auto lhs = factor * (n == 1 ? CyclotomicNumber::from_integer(d_, 1) : table.diagonal_jacobi(a, n));
                auto rhs = CyclotomicNumber::from_integer(d_, 1);
                for (int j = 1; j < n; ++j) {
                    const std::vector<int> pair = {a, j * (d_ / n)};
                    rhs *= ring_d_.to_number(jacobi(2, pair));
                }
                sink_.record(lhs == rhs, {{"a", a}}, [&] { return std::pair{lhs.to_string(), rhs.to_string()}; });
            }
            sink_.end();
        }
    }

    void eigen_gauss() {
        sink_.begin("eigen_gauss", params());
        for (Elem c = 1; c < q_; ++c) {
            for (int a = 0; a < d_; ++a) {
                const auto report = sums::eigen_check(k_, d_, c, a);
                sink_.record(report.pass(), {{"c", c}, {"a", a}}, [&] { return std::pair{report.lhs, report.rhs}; });
            }
        }
        sink_.end();
    }

    void eigen_jacobi(int n) {
        auto batch = params();
        batch["n"] = n;
        sink_.begin("eigen_jacobi", batch);
        const auto order = *nt::checked_pow(static_cast<std::uint64_t>(d_), static_cast<unsigned>(n));
        const bool literal = order <= kLiteralGroupOrder;
        for (Elem c = 1; c < q_; ++c) {
            const auto key = mu_.power_index(c);
            if (literal) {
                for_each_tuple(d_, n, [&](std::uint64_t, std::span<const int> keys) {
                    const auto report = sums::eigen_check_jacobi(k_, d_, n, c, keys);
                    sink_.record(report.pass(), {{"c", c}, {"a", to_vector(keys)}},
                                 [&] { return std::pair{report.lhs, report.rhs}; });
                });
                continue;
            }
            // A e^chi = (sum_g A[g] chi(g)) e^chi for every chi at once
            const auto counts = sums::tuple_counts(mu_, n, c);
            const auto scalars = sums::exponent_transform(d_, n, counts, n % 2 == 0);
            Vec rhs(phi_d_);
            for_each_tuple(d_, n, [&](std::uint64_t i, std::span<const int> keys) {
                std::int64_t total = 0;
                for (int a : keys) total += a;
                ring_d_.multiply_zeta(jacobi(n, keys), total * key, rhs);
                const std::span<const std::int64_t> lhs(scalars.data() + i * phi_d_, phi_d_);
                const bool pass = std::equal(lhs.begin(), lhs.end(), rhs.begin());
                sink_.record(pass, {{"c", c}, {"a", to_vector(keys)}}, [&] { return std::pair{show_d(lhs), show_d(rhs)}; });
            });
        }
        sink_.end();
    }

    static constexpr std::uint64_t kLiteralGroupOrder = 64;

    ff::FieldPtr k_;
    int d_;
    std::uint64_t q_;
    std::int64_t p_;
    SuiteOptions options_;
    chars::RootsOfUnity mu_;
    DenseRing ring_pd_;
    DenseRing ring_d_;
    std::size_t phi_pd_;
    std::size_t phi_d_;
    ReportSink sink_;
    int minus_one_key_ = 0;
    Vec gauss_;
    std::vector<Vec> jacobi_;
};

}  // namespace

std::vector<CheckReport> run_full_suite(const ff::FieldPtr& field, int d, const SuiteOptions& options) {
    if (options.max_arity < 2) fail(ErrorCode::ArityTooSmall, "arity cap must be at least 2");
    if (options.max_degree < 1) fail(ErrorCode::InvalidArgument, "extension cap must be at least 1");
    std::vector<CheckReport> out;
    FieldSuite suite(field, d, options, out);
    suite.run();
    return out;
}

}  // namespace gjsum::relations
