#include "xshap/feature_space.hpp"

#include "xshap/errors.hpp"

#include <string>

namespace xshap {

std::vector<int> mask_to_features(FeatureMask s) {
    std::vector<int> out;
    for (int i = 0; s >> i; ++i) {
        if (mask_has(s, i)) out.push_back(i);
    }
    return out;
}

std::uint64_t FeatureSpace::total_points() const {
    std::uint64_t count = 1;
    for (const auto& d : domains) {
        std::uint64_t n = d.size();
        if (n == 0) throw argument_error("empty feature domain");
        if (count > point_cap / n) {
            throw capacity_error("feature space exceeds point cap of " +
                                 std::to_string(point_cap) + " points");
        }
        count *= n;
    }
    return count;
}

void FeatureSpace::validate() const {
    if (domains.empty()) throw argument_error("feature space has no features");
    if (size() > kMaxFeatures) {
        throw argument_error("feature count " + std::to_string(size()) + " exceeds limit of " +
                             std::to_string(kMaxFeatures));
    }
    for (int i = 0; i < size(); ++i) {
        const auto& d = domains[i];
        if (d.empty()) {
            throw argument_error("domain of feature " + std::to_string(i + 1) + " is empty");
        }
        for (size_t a = 0; a < d.size(); ++a) {
            for (size_t b = a + 1; b < d.size(); ++b) {
                if (d[a] == d[b]) {
                    throw argument_error("domain of feature " + std::to_string(i + 1) +
                                         " repeats value " + d[a].str());
                }
            }
        }
    }
    total_points();
}

void check_point(const FeatureSpace& space, const Point& p) {
    if (p.size() != space.size()) {
        throw domain_violation("point has " + std::to_string(p.size()) + " coordinates, expected " +
                               std::to_string(space.size()));
    }
    for (int i = 0; i < p.size(); ++i) {
        if (p.vi[i] < 0 || p.vi[i] >= static_cast<int>(space.domains[i].size())) {
            throw domain_violation("coordinate " + std::to_string(i + 1) +
                                   " outside its domain");
        }
    }
}

const Value& point_value(const FeatureSpace& space, const Point& p, int feature) {
    return space.domains[feature][p.vi[feature]];
}

std::string point_str(const FeatureSpace& space, const Point& p) {
    std::string out = "(";
    for (int i = 0; i < p.size(); ++i) {
        if (i) out += ",";
        out += point_value(space, p, i).str();
    }
    out += ")";
    return out;
}

std::uint64_t point_rank(const FeatureSpace& space, const Point& p) {
    std::uint64_t rank = 0;
    for (int i = 0; i < space.size(); ++i) {
        rank = rank * space.domains[i].size() + p.vi[i];
    }
    return rank;
}

Point point_from_rank(const FeatureSpace& space, std::uint64_t rank) {
    Point p;
    p.vi.assign(space.size(), 0);
    for (int i = space.size() - 1; i >= 0; --i) {
        std::uint64_t n = space.domains[i].size();
        p.vi[i] = static_cast<int>(rank % n);
        rank /= n;
    }
    return p;
}

std::uint64_t slice_size(const FeatureSpace& space, FeatureMask fixed) {
    std::uint64_t count = 1;
    for (int i = 0; i < space.size(); ++i) {
        if (mask_has(fixed, i)) continue;
        std::uint64_t n = space.domains[i].size();
        if (count > space.point_cap / n) {
            throw capacity_error("slice exceeds point cap of " +
                                 std::to_string(space.point_cap) + " points");
        }
        count *= n;
    }
    return count;
}

void for_each_consistent(const FeatureSpace& space, FeatureMask fixed, const Point& v,
                         const std::function<bool(const Point&)>& visit) {
    check_point(space, v);
    const int m = space.size();
    std::vector<int> free;
    for (int i = 0; i < m; ++i) {
        if (!mask_has(fixed, i)) free.push_back(i);
    }
    Point x = v;
    for (int f : free) x.vi[f] = 0;
    // mixed-radix counter over the free features, last one fastest
    while (true) {
        if (!visit(x)) return;
        int pos = static_cast<int>(free.size()) - 1;
        while (pos >= 0) {
            int f = free[pos];
            if (++x.vi[f] < static_cast<int>(space.domains[f].size())) break;
            x.vi[f] = 0;
            --pos;
        }
        if (pos < 0) return;
    }
}

std::vector<Point> enumerate_consistent(const FeatureSpace& space, FeatureMask fixed,
                                        const Point& v) {
    std::uint64_t n = slice_size(space, fixed);
    std::vector<Point> out;
    out.reserve(n);
    for_each_consistent(space, fixed, v, [&](const Point& x) {
        out.push_back(x);
        return true;
    });
    return out;
}

} // namespace xshap
