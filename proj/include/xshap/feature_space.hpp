#pragma once

#include "xshap/value.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace xshap {

// Default ceiling on the number of feature-space points any single
// enumeration may touch. Overridable per space; exceeding it is an error,
// never a silent subsample.
inline constexpr std::uint64_t kDefaultPointCap = std::uint64_t{1} << 22;

// Features are indexed 0..m-1 internally; file formats and reports use
// 1-based indices.
inline constexpr int kMaxFeatures = 30;

// Subset of features as a bitmask, bit i = feature i.
using FeatureMask = std::uint32_t;

inline FeatureMask full_mask(int m) {
    return m == 0 ? 0u : (FeatureMask{1} << m) - 1u;
}
inline bool mask_has(FeatureMask s, int i) { return (s >> i) & 1u; }
inline int mask_size(FeatureMask s) { return std::popcount(s); }

std::vector<int> mask_to_features(FeatureMask s);

// Finite product of per-feature domains.
struct FeatureSpace {
    std::vector<std::vector<Value>> domains;
    std::uint64_t point_cap = kDefaultPointCap;

    int size() const { return static_cast<int>(domains.size()); }

    // Throws capacity_error once the running product exceeds point_cap.
    std::uint64_t total_points() const;

    // Non-empty distinct-valued domains, m <= kMaxFeatures, count within cap.
    void validate() const;
};

// A point stored as per-feature domain indices; the values live in the space.
struct Point {
    std::vector<int> vi;

    int size() const { return static_cast<int>(vi.size()); }
    friend bool operator==(const Point& a, const Point& b) { return a.vi == b.vi; }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

// Throws domain_violation unless every index is in range for `space`.
void check_point(const FeatureSpace& space, const Point& p);

const Value& point_value(const FeatureSpace& space, const Point& p, int feature);

std::string point_str(const FeatureSpace& space, const Point& p);

// Mixed-radix rank of a point; the last feature varies fastest, so ranks
// enumerate feature space in lexicographic order.
std::uint64_t point_rank(const FeatureSpace& space, const Point& p);
Point point_from_rank(const FeatureSpace& space, std::uint64_t rank);

// |Upsilon(S; v)|: number of points agreeing with v on S.
std::uint64_t slice_size(const FeatureSpace& space, FeatureMask fixed);

// Visits the points x with x_S = v_S in lexicographic order. The visitor
// returns false to stop early.
void for_each_consistent(const FeatureSpace& space, FeatureMask fixed, const Point& v,
                         const std::function<bool(const Point&)>& visit);

// Materialized slice; throws capacity_error if it exceeds the space's cap.
std::vector<Point> enumerate_consistent(const FeatureSpace& space, FeatureMask fixed,
                                        const Point& v);

} // namespace xshap
