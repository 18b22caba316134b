#pragma once

#include <cstdint>
#include <vector>

#include "coxl2/core_model.hpp"
#include "coxl2/exec.hpp"

namespace coxl2 {

/// Geometric representation of W_T: generator s sends e_s to -e_s and e_t
/// to e_t + 2cos(pi/m_st) e_s. Matrices are dense, row-major, rank x rank.
class ReflectionMatrixGroup {
public:
    /// Throws Error(TooLarge) for |T| > 8 and Error(NumericCollision) if the
    /// generators fail the involution or braid-order checks.
    ReflectionMatrixGroup(const CoxeterSpec& spec, const IndexSet& T);

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<double>& generator(std::size_t s) const { return gens_[s]; }
    /// Row s of generator s; every other row is the identity.
    const std::vector<double>& reflection_row(std::size_t s) const { return rows_[s]; }

    /// s * g, touching only row s.
    void left_multiply(std::size_t s, const double* g, double* out) const;

private:
    std::size_t rank_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::vector<double>> gens_;
};

inline constexpr std::uint64_t kMaxEnumerationCap = 1'000'000;
inline constexpr std::size_t kMaxEnumerationRank = 8;
inline constexpr double kGridStep = 1e-8;
inline constexpr double kMatchTolerance = 1e-6;

struct EnumerationResult {
    bool exceeds_cap = false;
    std::uint64_t order = 0; // valid when !exceeds_cap
};

/// Breadth-first closure of {identity} under left multiplication by the
/// generators. Entries are rounded to a 1e-8 grid; two matrices are the same
/// element when all rounded entries agree within 1e-6. The count is re-run
/// on a grid shifted by half a cell; disagreement throws
/// Error(NumericCollision). An infinite label inside T short-circuits to
/// ExceedsCap.
EnumerationResult enumerate_order(const CoxeterSpec& spec, const IndexSet& T, std::uint64_t cap = kMaxEnumerationCap,
                                  Exec exec = Exec::Parallel);

/// classify and enumerate_order agree: spherical T closes with the table
/// order under a cap of twice that order; non-spherical T exceeds the cap.
bool verify_classification(const CoxeterSpec& spec, const IndexSet& T, Exec exec = Exec::Parallel);

} // namespace coxl2
