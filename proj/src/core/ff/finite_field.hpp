#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace gjsum::ff {

// Field elements are encoded as the base-p integer sum c_i p^i of their
// coefficient vector c_0 + c_1 x + ... + c_{f-1} x^{f-1}.
using Elem = std::uint32_t;

struct FieldOptions {
    std::uint64_t max_order = std::uint64_t{1} << 20;
    std::filesystem::path cache_dir;  // empty disables the on-disk cache
};

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

FieldPtr make_field(std::uint64_t p, int f, const FieldOptions& options = {});

class FiniteField {
public:
    struct Parts {
        std::uint32_t p;
        int f;
        std::vector<std::uint32_t> modulus;
        Elem generator;
        std::vector<Elem> exp_table;
    };

    explicit FiniteField(Parts parts);

    std::uint32_t p() const noexcept { return p_; }
    int degree() const noexcept { return f_; }
    std::uint64_t order() const noexcept { return q_; }
    // Monic modulus, f + 1 coefficients, constant term first.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    Elem generator() const noexcept { return generator_; }

    bool contains(Elem x) const noexcept { return x < q_; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        std::uint64_t e = std::uint64_t{log_[a]} + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    Elem pow(Elem a, std::int64_t e) const;
    Elem frobenius(Elem a) const { return pow(a, p_); }

    // Exponent k in [0, q-2] with g^k = x.
    std::uint64_t dlog(Elem x) const;
    // Unchecked variant for hot loops; x must be nonzero.
    std::uint32_t log_unchecked(Elem x) const noexcept { return log_[x]; }
    Elem exp(std::uint64_t k) const noexcept { return exp_[k % (q_ - 1)]; }

    Elem from_integer(std::int64_t n) const noexcept;
    Elem trace_to_prime(Elem x) const noexcept;
    // Tr from this field down to the subfield of order sub_order: sum of x^{sub_order^i}.
    Elem relative_trace(Elem x, std::uint64_t sub_order) const;
    std::uint64_t multiplicative_order(Elem x) const;

    std::vector<std::uint32_t> coefficients(Elem x) const;
    Elem from_coefficients(std::span<const std::uint32_t> coeffs) const;

    std::span<const Elem> exp_table() const noexcept { return exp_; }

private:
    std::uint32_t p_;
    int f_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    Elem generator_;
    std::vector<std::uint64_t> pow_p_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> trace_basis_;
};

// Injective homomorphism sub -> ext sending the generator x of sub to the
// smallest-encoding root of sub's modulus in ext.
class FieldEmbedding {
public:
    FieldEmbedding(FieldPtr sub, FieldPtr ext);

    const FieldPtr& sub() const noexcept { return sub_; }
    const FieldPtr& ext() const noexcept { return ext_; }
    Elem operator()(Elem x) const { return image_.at(x); }
    bool in_image(Elem y) const { return preimage_.count(y) != 0; }
    Elem preimage(Elem y) const;
    Elem root() const noexcept { return root_; }

private:
    FieldPtr sub_;
    FieldPtr ext_;
    Elem root_;
    std::vector<Elem> image_;
    std::unordered_map<Elem, Elem> preimage_;
};

FieldEmbedding subfield_embedding(const FieldPtr& sub, const FieldPtr& ext);

// Cache file name for (p, f) under the current format version.
std::string cache_file_name(std::uint64_t p, int f);

}  // namespace gjsum::ff
