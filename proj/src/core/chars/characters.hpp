#pragma once

#include <json.hpp>
#include <span>
#include <utility>
#include <vector>

#include "cyclo/cyclotomic.hpp"
#include "cyclo/prime_splitting.hpp"
#include "ff/finite_field.hpp"

namespace gjsum::chars {

using ff::Elem;
using ff::FieldPtr;

// psi_c(x) = zeta_p^{Tr(c x)}.
struct AdditiveCharacter {
    FieldPtr field;
    Elem c = 0;

    bool trivial() const noexcept { return c == 0; }
    // Exponent e in [0, p) with psi_c(x) = zeta_p^e.
    std::uint32_t exponent(Elem x) const;
    AdditiveCharacter conjugate() const;
};

// Identification of mu_d in a field with Z/d through a primitive d-th root omega.
class RootsOfUnity {
public:
    RootsOfUnity(FieldPtr field, int d, Elem omega);
    // omega = g^((q-1)/d)
    RootsOfUnity(FieldPtr field, int d);

    const FieldPtr& field() const noexcept { return field_; }
    int d() const noexcept { return d_; }
    Elem omega() const noexcept { return omega_; }

    // k with m = omega^k, for m in mu_d.
    int index(Elem m) const;
    // k with m^((q-1)/d) = omega^k, for nonzero m.
    int power_index(Elem m) const {
        return static_cast<int>(static_cast<std::int64_t>(field_->log_unchecked(m) % d_) * scale_ % d_);
    }

private:
    FieldPtr field_;
    int d_;
    Elem omega_;
    std::int64_t scale_;  // g^((q-1)/d) = omega^scale
};

// chi_a(omega^k) = zeta_d^{a k}.
struct MultiplicativeCharacter {
    FieldPtr field;
    int d = 1;
    int a = 0;
    Elem omega = 1;

    bool trivial() const noexcept { return a % d == 0; }
    RootsOfUnity roots() const { return RootsOfUnity(field, d, omega); }
    MultiplicativeCharacter conjugate() const;
};

AdditiveCharacter additive_character(const FieldPtr& field, Elem c);
MultiplicativeCharacter multiplicative_character(const FieldPtr& field, int d, std::int64_t a);

cyclo::CyclotomicNumber eval_additive(const AdditiveCharacter& psi, Elem x);
cyclo::CyclotomicNumber eval_mult(const MultiplicativeCharacter& chi, Elem m);
// chi(m^((q-1)/d)) for nonzero m.
cyclo::CyclotomicNumber eval_mult_power(const MultiplicativeCharacter& chi, Elem m);

cyclo::CyclotomicNumber power_residue(const cyclo::PrimeSplitting& split, Elem x, std::int64_t a);

struct LiftedCharacters {
    AdditiveCharacter psi;
    MultiplicativeCharacter chi;
    std::shared_ptr<const ff::FieldEmbedding> embedding;
};

LiftedCharacters lift_characters(const AdditiveCharacter& psi, const MultiplicativeCharacter& chi, int r,
                                 const ff::FieldOptions& options = {});

// All entries and their sum nonzero modulo d.
bool admissible(std::span<const int> avec, int d);

nlohmann::json to_json(const AdditiveCharacter& psi);
nlohmann::json to_json(const MultiplicativeCharacter& chi);

}  // namespace gjsum::chars
