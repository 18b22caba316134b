#include "coxl2/word_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "coxl2/error.hpp"
#include "coxl2/spherical.hpp"

namespace coxl2 {

namespace {

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b, std::size_t n)
{
    std::vector<double> c(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] += a[i * n + k] * b[k * n + j];
    return c;
}

bool near_identity(const std::vector<double>& a, std::size_t n, double tol)
{
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(a[i * n + j] - (i == j ? 1.0 : 0.0)) > tol)
                return false;
    return true;
}

} // namespace

ReflectionMatrixGroup::ReflectionMatrixGroup(const CoxeterSpec& spec, const IndexSet& T) : rank_(T.size())
{
    if (rank_ > kMaxEnumerationRank)
        throw Error(ErrorCode::TooLarge, "enumeration limited to rank " + std::to_string(kMaxEnumerationRank));
    const std::size_t n = rank_;
    rows_.assign(n, std::vector<double>(n, 0.0));
    gens_.assign(n, std::vector<double>(n * n, 0.0));
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t) {
                rows_[s][t] = -1.0;
                continue;
            }
            Label l = spec.label(T[s], T[t]);
            rows_[s][t] = l.is_infinite() ? 2.0 : 2.0 * std::cos(std::numbers::pi / l.value());
        }
        auto& g = gens_[s];
        for (std::size_t i = 0; i < n; ++i)
            g[i * n + i] = 1.0;
        for (std::size_t t = 0; t < n; ++t)
            g[s * n + t] = rows_[s][t];
    }

    constexpr double tol = 1e-9;
    for (std::size_t s = 0; s < n; ++s) {
        if (!near_identity(multiply(gens_[s], gens_[s], n), n, tol))
            throw Error(ErrorCode::NumericCollision, "generator " + std::to_string(s) + " is not an involution");
        for (std::size_t t = s + 1; t < n; ++t) {
            Label l = spec.label(T[s], T[t]);
            if (l.is_infinite())
                continue;
            const auto st = multiply(gens_[s], gens_[t], n);
            std::vector<double> p = st;
            for (std::uint32_t k = 1; k < l.value(); ++k) {
                if (near_identity(p, n, tol))
                    throw Error(ErrorCode::NumericCollision, "braid relation has order below the label");
                p = multiply(p, st, n);
            }
            if (!near_identity(p, n, tol))
                throw Error(ErrorCode::NumericCollision, "braid relation of order " + l.to_string() + " fails");
        }
    }
}

void ReflectionMatrixGroup::left_multiply(std::size_t s, const double* g, double* out) const
{
    const std::size_t n = rank_;
    std::copy(g, g + n * n, out);
    double* row = out + s * n;
    std::fill(row, row + n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const double c = rows_[s][t];
        if (c == 0.0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            row[j] += c * g[t * n + j];
    }
}

namespace {

// Set of group elements keyed by their rounded entries. Lookups hash a
// random linear form of the rounded entries (mod 2^64) into wide buckets and
// compare the neighbouring buckets entry by entry. Entries within the match
// tolerance move the form by less than one bucket, so values sitting on a
// grid boundary still match.
class ElementStore {
public:
    ElementStore(std::size_t entries, double offset) : entries_(entries), offset_(offset), key_(entries)
    {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<std::uint64_t> weight(1, kMaxWeight);
        weights_.resize(entries);
        for (auto& w : weights_)
            w = weight(rng);
    }

    std::size_t size() const noexcept { return count_; }

    /// Inserts if absent; returns true when the element is new.
    bool insert(const double* m)
    {
        std::uint64_t h = 0;
        for (std::size_t i = 0; i < entries_; ++i) {
            key_[i] = static_cast<std::int64_t>(std::floor(m[i] / kGridStep + offset_ + 0.5));
            h += weights_[i] * static_cast<std::uint64_t>(key_[i]);
        }
        const std::uint64_t bucket = h >> kBucketBits;
        for (std::uint64_t d : {kBucketMask, std::uint64_t{0}, std::uint64_t{1}}) {
            auto it = heads_.find((bucket + d) & kBucketMask);
            if (it == heads_.end())
                continue;
            for (std::size_t idx = it->second; idx != kNone; idx = next_[idx])
                if (matches(idx))
                    return false;
        }
        auto [it, fresh] = heads_.try_emplace(bucket, count_);
        next_.push_back(fresh ? kNone : it->second);
        it->second = count_;
        keys_.insert(keys_.end(), key_.begin(), key_.end());
        ++count_;
        return true;
    }

private:
    static constexpr std::int64_t kMaxCellGap = static_cast<std::int64_t>(kMatchTolerance / kGridStep + 0.5);
    static constexpr std::uint64_t kMaxWeight = std::uint64_t{1} << 20;
    // 64 entries * 2^20 * 100 cells < 2^33: a tolerated difference shifts
    // the form by less than one bucket.
    static constexpr unsigned kBucketBits = 34;
    static constexpr std::uint64_t kBucketMask = (std::uint64_t{1} << (64 - kBucketBits)) - 1;

    bool matches(std::size_t idx) const
    {
        const std::int64_t* stored = keys_.data() + idx * entries_;
        for (std::size_t i = 0; i < entries_; ++i)
            if (std::llabs(stored[i] - key_[i]) > kMaxCellGap)
                return false;
        return true;
    }

    std::size_t entries_;
    double offset_;
    std::vector<std::uint64_t> weights_;
    std::vector<std::int64_t> key_;
    std::vector<std::int64_t> keys_;
    static constexpr std::size_t kNone = ~std::size_t{0};
    std::unordered_map<std::uint64_t, std::size_t> heads_; // bucket -> newest element
    std::vector<std::size_t> next_;                        // element -> older element in its bucket
    std::size_t count_ = 0;
};

constexpr double kRootBound = 1e6;

EnumerationResult closure(const ReflectionMatrixGroup& group, std::uint64_t cap, double offset, Exec exec)
{
    const std::size_t n = group.rank();
    const std::size_t sz = n * n;
    ElementStore store(sz, offset);

    std::vector<double> frontier(sz, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        frontier[i * n + i] = 1.0;
    store.insert(frontier.data());

    while (!frontier.empty()) {
        const std::size_t count = frontier.size() / sz;
        std::vector<double> products(count * n * sz);
        const auto total = static_cast<std::ptrdiff_t>(count * n);
        if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t k = 0; k < total; ++k) {
                const auto e = static_cast<std::size_t>(k) / n;
                const auto s = static_cast<std::size_t>(k) % n;
                group.left_multiply(s, frontier.data() + e * sz, products.data() + static_cast<std::size_t>(k) * sz);
            }
        } else {
            for (std::ptrdiff_t k = 0; k < total; ++k) {
                const auto e = static_cast<std::size_t>(k) / n;
                const auto s = static_cast<std::size_t>(k) % n;
                group.left_multiply(s, frontier.data() + e * sz, products.data() + static_cast<std::size_t>(k) * sz);
            }
        }

        std::vector<double> next;
        for (std::size_t k = 0; k < count * n; ++k) {
            const double* m = products.data() + k * sz;
            // Columns are roots; in a finite group their coefficients stay
            // below 10, so a large entry means W_T is infinite.
            if (std::any_of(m, m + sz, [](double x) { return std::fabs(x) > kRootBound; }))
                return {true, 0};
            if (store.insert(m)) {
                if (store.size() > cap)
                    return {true, 0};
                next.insert(next.end(), m, m + sz);
            }
        }
        frontier = std::move(next);
    }
    return {false, store.size()};
}

} // namespace

EnumerationResult enumerate_order(const CoxeterSpec& spec, const IndexSet& T, std::uint64_t cap, Exec exec)
{
    if (cap > kMaxEnumerationCap)
        throw Error(ErrorCode::TooLarge, "cap above " + std::to_string(kMaxEnumerationCap));
    if (T.empty())
        return {cap < 1, cap < 1 ? 0u : 1u};
    for (std::size_t a = 0; a < T.size(); ++a)
        for (std::size_t b = a + 1; b < T.size(); ++b)
            if (spec.label(T[a], T[b]).is_infinite())
                return {true, 0}; // contains an infinite dihedral group

    const ReflectionMatrixGroup group(spec, T);
    const EnumerationResult first = closure(group, cap, 0.0, exec);
    const EnumerationResult shifted = closure(group, cap, 0.5, exec);
    if (first.exceeds_cap != shifted.exceeds_cap || first.order != shifted.order)
        throw Error(ErrorCode::NumericCollision, "closure size depends on the rounding grid");
    return first;
}

bool verify_classification(const CoxeterSpec& spec, const IndexSet& T, Exec exec)
{
    const SphericalVerdict v = classify(spec, T);
    if (v.spherical) {
        if (v.order > kMaxEnumerationCap)
            throw Error(ErrorCode::TooLarge, "claimed order " + v.order.get_str() + " above the enumeration cap");
        const std::uint64_t claimed = v.order.get_ui();
        const auto r = enumerate_order(spec, T, std::min<std::uint64_t>(2 * claimed, kMaxEnumerationCap), exec);
        return !r.exceeds_cap && r.order == claimed;
    }
    return enumerate_order(spec, T, kMaxEnumerationCap, exec).exceeds_cap;
}

} // namespace coxl2
