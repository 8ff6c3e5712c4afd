#include "chars/characters.hpp"

#include <numeric>

#include "util/error.hpp"
#include "util/numtheory.hpp"

namespace gjsum::chars {

std::uint32_t AdditiveCharacter::exponent(Elem x) const { return field->trace_to_prime(field->mul(c, x)); }

AdditiveCharacter AdditiveCharacter::conjugate() const { return {field, field->neg(c)}; }

RootsOfUnity::RootsOfUnity(FieldPtr field, int d, Elem omega) : field_(std::move(field)), d_(d), omega_(omega) {
    const std::uint64_t n = field_->order() - 1;
    if (d_ < 1 || n % d_ != 0) fail(ErrorCode::BadDivisor, std::to_string(d_) + " does not divide q-1");
    if (omega_ == 0 || field_->multiplicative_order(omega_) != static_cast<std::uint64_t>(d_)) {
        fail(ErrorCode::InvalidArgument, "omega is not a primitive d-th root of unity");
    }
    // omega = g^((q-1)/d * t) with t a unit mod d; scale = t^-1.
    const std::int64_t t = static_cast<std::int64_t>(field_->dlog(omega_) / (n / d_));
    scale_ = d_ == 1 ? 0 : *nt::inverse_mod(t, d_);
}

namespace {

Elem default_omega(const FieldPtr& field, int d) {
    if (d < 1 || (field->order() - 1) % d != 0) fail(ErrorCode::BadDivisor, std::to_string(d) + " does not divide q-1");
    return field->exp((field->order() - 1) / d);
}

}  // namespace

RootsOfUnity::RootsOfUnity(FieldPtr field, int d) : RootsOfUnity(field, d, default_omega(field, d)) {}

int RootsOfUnity::index(Elem m) const {
    if (m == 0 || !field_->contains(m) || field_->pow(m, d_) != 1) {
        fail(ErrorCode::NotInMuD, std::to_string(m) + " is not a " + std::to_string(d_) + "-th root of unity");
    }
    const std::uint64_t n = field_->order() - 1;
    const auto j = static_cast<std::int64_t>(field_->dlog(m) / (n / d_));
    return static_cast<int>(j * scale_ % d_);
}

MultiplicativeCharacter MultiplicativeCharacter::conjugate() const {
    return {field, d, static_cast<int>(nt::mod(-a, d)), omega};
}

AdditiveCharacter additive_character(const FieldPtr& field, Elem c) {
    if (!field->contains(c)) fail(ErrorCode::FieldMismatch, "twist is not a field element");
    return {field, c};
}

MultiplicativeCharacter multiplicative_character(const FieldPtr& field, int d, std::int64_t a) {
    RootsOfUnity mu(field, d);
    return {field, d, static_cast<int>(nt::mod(a, d)), mu.omega()};
}

cyclo::CyclotomicNumber eval_additive(const AdditiveCharacter& psi, Elem x) {
    if (!psi.field->contains(x)) fail(ErrorCode::FieldMismatch, "element is not in the character's field");
    return cyclo::CyclotomicNumber::zeta_power(static_cast<int>(psi.field->p()), psi.exponent(x));
}

cyclo::CyclotomicNumber eval_mult(const MultiplicativeCharacter& chi, Elem m) {
    const int k = chi.roots().index(m);
    return cyclo::CyclotomicNumber::zeta_power(chi.d, static_cast<std::int64_t>(chi.a) * k);
}

cyclo::CyclotomicNumber eval_mult_power(const MultiplicativeCharacter& chi, Elem m) {
    if (m == 0) fail(ErrorCode::ZeroArgument, "character of zero");
    const int k = chi.roots().power_index(m);
    return cyclo::CyclotomicNumber::zeta_power(chi.d, static_cast<std::int64_t>(chi.a) * k);
}

cyclo::CyclotomicNumber power_residue(const cyclo::PrimeSplitting& split, Elem x, std::int64_t a) {
    if (x == 0) fail(ErrorCode::ZeroArgument, "power residue of zero");
    RootsOfUnity mu(split.residue_field(), split.d(), split.omega());
    return cyclo::CyclotomicNumber::zeta_power(split.d(), a * mu.power_index(x));
}

LiftedCharacters lift_characters(const AdditiveCharacter& psi, const MultiplicativeCharacter& chi, int r,
                                 const ff::FieldOptions& options) {
    if (psi.field != chi.field && (psi.field->p() != chi.field->p() || psi.field->degree() != chi.field->degree())) {
        fail(ErrorCode::FieldMismatch, "characters live on different fields");
    }
    if (r < 1) fail(ErrorCode::InvalidArgument, "extension degree must be at least 1");
    const auto& k = psi.field;
    auto big = r == 1 ? k : ff::make_field(k->p(), k->degree() * r, options);
    auto emb = std::make_shared<const ff::FieldEmbedding>(k, big);
    // psi o Tr_{K/k} = psi_{c} on K by transitivity of the trace.
    AdditiveCharacter psi_k{big, (*emb)(psi.c)};
    MultiplicativeCharacter chi_k{big, chi.d, chi.a, (*emb)(chi.omega)};
    return {psi_k, chi_k, emb};
}

bool admissible(std::span<const int> avec, int d) {
    std::int64_t sum = 0;
    for (int a : avec) {
        if (nt::mod(a, d) == 0) return false;
        sum += a;
    }
    return nt::mod(sum, d) != 0;
}

nlohmann::json to_json(const AdditiveCharacter& psi) {
    return {{"p", psi.field->p()}, {"f", psi.field->degree()}, {"kind", "add"}, {"c", psi.c}};
}

nlohmann::json to_json(const MultiplicativeCharacter& chi) {
    return {{"p", chi.field->p()}, {"f", chi.field->degree()}, {"kind", "mult"}, {"d", chi.d}, {"a", chi.a}};
}

}  // namespace gjsum::chars
