#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coxl2/core_model.hpp"

namespace coxl2 {

enum class FiniteFamily { A, B, D, E, F, H, I };

/// One irreducible finite Coxeter group. Low-rank coincidences are reported
/// under a single name: I2(3) as A2, I2(4) as B2, D3 as A3, H2 as I2(5).
struct FiniteTypeComponent {
    FiniteFamily family;
    std::uint32_t rank;
    std::uint32_t dihedral_m = 0; // only for family I
    mpz_class order;
    IndexSet vertices;

    std::string name() const;
};

struct SphericalVerdict {
    bool spherical = false;
    std::vector<FiniteTypeComponent> components; // empty unless spherical
    mpz_class order = 1;                          // 1 unless spherical

    std::string type_name() const; // "A1 x I2(5)", "" for the empty set
};

/// Connected components of the Coxeter diagram on T. Diagram edges are the
/// pairs with m >= 3 or m = infinity. Components are sorted by least vertex.
std::vector<IndexSet> diagram_components(const CoxeterSpec& spec, const IndexSet& T);

/// Decides whether W_T is finite by matching each diagram component against
/// the finite-type templates. T = {} is spherical of order 1.
SphericalVerdict classify(const CoxeterSpec& spec, const IndexSet& T);
SphericalVerdict classify(const CoxeterSpec& spec, const std::vector<VertexId>& T);

/// Order table for the irreducible finite types.
mpz_class finite_type_order(FiniteFamily family, std::uint32_t rank, std::uint32_t dihedral_m = 0);

inline constexpr std::size_t kCosineTestDefaultBound = 12;
inline constexpr double kCosineMinorTolerance = 1e-9;

/// Numeric cross-check: the cosine matrix c_st = -cos(pi/m_st), c_ss = 1
/// (infinity contributes -1) is positive definite. Tests every leading
/// principal minor. Throws Error(IndeterminateNumeric) when a minor lies
/// within kCosineMinorTolerance of zero, Error(TooLarge) when |T| > bound.
bool cosine_matrix_test(const CoxeterSpec& spec, const IndexSet& T,
                        std::size_t bound = kCosineTestDefaultBound);

/// cosine_matrix_test with indeterminate cases resolved exactly: an infinite
/// label means not spherical, otherwise the template classifier decides.
bool cosine_matrix_verdict(const CoxeterSpec& spec, const IndexSet& T,
                           std::size_t bound = kCosineTestDefaultBound);

} // namespace coxl2
