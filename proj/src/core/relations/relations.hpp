#pragma once

#include <span>

#include "ff/finite_field.hpp"
#include "report/check_report.hpp"

namespace gjsum::relations {

using ff::Elem;
using ff::FieldPtr;

// g(psi, chi) g(conj psi, conj chi) = q
CheckReport check_gauss_reflection(const FieldPtr& field, int d, Elem c, int a);
// g(conj psi, chi) = chi((-1)^((q-1)/d)) g(psi, chi)
CheckReport check_gauss_conjugate(const FieldPtr& field, int d, Elem c, int a);
// j(chi_1, ..., chi_n) = prod g(psi, chi_i) / g(psi, prod chi_i)
CheckReport check_gauss_jacobi_quotient(const FieldPtr& field, int d, Elem c, std::span<const int> avec);
// j(chi) j(conj chi) = q^(n-1)
CheckReport check_jacobi_reflection(const FieldPtr& field, int d, std::span<const int> avec);
// j(chi_1..chi_n) = j(chi_1..chi_{n-2}, chi_{n-1} chi_n) j(chi_{n-1}, chi_n) when chi_{n-1} chi_n != 1,
// and j(chi_1..chi_{n-2}) chi_{n-1}((-1)^((q-1)/d)) q otherwise
CheckReport check_jacobi_induction(const FieldPtr& field, int d, std::span<const int> avec);
// One exponent: g_K(psi o Tr, chi) = g(psi, chi)^r. Several: j_K(chi) = j(chi)^r.
CheckReport check_base_change(const FieldPtr& field, int d, Elem c, std::span<const int> avec, int r,
                              const ff::FieldOptions& options = {});

enum class MultiplicationForm { Gauss, Jacobi };
// Gauss: g(psi, a^n) = a^n(n) prod_{chi^n = 1} g(psi, a chi) / g(psi, chi).
// Jacobi: a^n(n) j(a, ..., a) = prod_{chi^n = 1, chi != 1} j(a, chi); skipped when a^n = 1.
CheckReport check_multiplication(const FieldPtr& field, int d, int n, int a, MultiplicationForm form, Elem c = 1);

// j with n >= 1 entries straight from the defining sum; the one-entry value is 1.
cyclo::CyclotomicNumber jacobi_any(const FieldPtr& field, int d, std::span<const int> avec);

}  // namespace gjsum::relations
