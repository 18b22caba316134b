#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coxl2/embedding.hpp"
#include "coxl2/exec.hpp"
#include "coxl2/nerve.hpp"

namespace coxl2 {

/// Exact rational in canonical form (reduced, positive denominator).
using Rational = mpq_class;

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// Orbihedral Euler characteristic of K = |S|, collapsed to a sum over the
/// spherical subsets: sum over T of (-1)^|T| / |W_T|, with T = {} giving 1.
Rational chi_orb(const Nerve& nerve, Exec exec = Exec::Parallel);

inline constexpr std::uint64_t kDefaultChainCap = 10'000'000;

/// The same number from its literal definition: the sum over every chain
/// T0 < T1 < ... < Tk of spherical subsets (T0 may be empty) of
/// (-1)^k / |W_T0|. Independent oracle for chi_orb. Throws
/// Error(CapExceeded) past `cap` chains.
Rational chi_orb_chain_sum(const Nerve& nerve, std::uint64_t cap = kDefaultChainCap, Exec exec = Exec::Parallel);

struct BettiEntry {
    std::optional<Rational> value; // nullopt = Unknown
    std::string rule;
    std::string witness;
};

/// l2-Betti numbers b_0 .. b_{dim L + 1}, each exact or Unknown, with the
/// rule that produced it. A rule may extend the vector with known zeros.
struct BettiVector {
    std::vector<BettiEntry> entries;

    bool fully_known() const;
    /// "(0, 1/2, ?)"
    std::string to_string() const;
    /// Compares known values, treating missing trailing entries as 0.
    bool equals(const std::vector<Rational>& values) const;
    std::vector<Rational> values() const; // precondition: fully_known()
    nlohmann::json to_json() const;
};

/// Hypotheses under which the vanishing results apply to the target nerve.
struct RuleContext {
    /// Nerve of which the target is a full subcomplex (sub-circle or
    /// 2-sphere rules).
    std::optional<Nerve> ambient;
    /// Rotation system embedding the target's 1-skeleton in the sphere with
    /// every 2-simplex bounding a face.
    std::optional<RotationSystem> embedding;
    /// Explicit right-angled join factorization (vertex names per factor).
    std::optional<std::vector<std::vector<VertexId>>> join_factors;
};

/// Rule ids, applied in this order.
namespace rule {
inline constexpr const char* kFinite = "R-fin";
inline constexpr const char* kBeta0 = "R-beta0";
inline constexpr const char* kLowSphere = "R-S0/S1";
inline constexpr const char* kTwoSphere = "R-S2";
inline constexpr const char* kSubCircle = "R-sub1";
inline constexpr const char* kSubTwoSphere = "R-sub2";
inline constexpr const char* kPlanar = "R-planar";
inline constexpr const char* kJoin = "R-join";
inline constexpr const char* kAtiyah = "Atiyah";
} // namespace rule

/// Evaluates the l2-Betti numbers through the rule engine. Entries no rule
/// reaches stay Unknown. Throws Error(ContradictoryRules) if two rules
/// disagree, a value is negative, or a complete vector violates Atiyah's
/// formula; Error(InvalidWitness) if the context does not fit the target.
BettiVector betti(const Nerve& nerve, const RuleContext& ctx = {});

/// chi_orb == sum (-1)^i b_i. Throws Error(UnknownEntries).
bool atiyah_check(const Nerve& nerve, const BettiVector& b);

struct Beta2Bound {
    Rational value;
    std::string provenance;          // "chi-orb", "R-join" or "trivial"
    Rational chi;
    std::optional<Rational> join_beta2;
    std::vector<std::vector<VertexId>> join_factors;
    std::vector<BettiVector> factor_betti;
};

/// For dim L <= 2 and W infinite, chi_orb = -b1 + b2 - b3 <= b2, so
/// max(chi_orb, 0, exact join b2) bounds b2 from below. Throws
/// Error(FiniteGroup) or Error(DimensionTooHigh).
Beta2Bound betti_lower_bound_dim2(const Nerve& nerve);

} // namespace coxl2
