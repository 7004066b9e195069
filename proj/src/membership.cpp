// SPDX-License-Identifier: Apache-2.0

#include "flbra/membership.hpp"

#include "flbra/errors.hpp"

#include <algorithm>
#include <cmath>

namespace flbra::fuzzy {

MembershipFunction::MembershipFunction(std::string label, std::vector<Breakpoint> points)
    : label_(std::move(label)), points_(std::move(points)) {
    if (label_.empty()) {
        throw ConfigError("membership function needs a label");
    }
    if (points_.size() < 2) {
        throw ConfigError("membership function '" + label_ + "' needs at least two breakpoints");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.degree)) {
            throw ConfigError("membership function '" + label_ + "' has a non-finite breakpoint");
        }
        if (p.degree < 0.0 || p.degree > 1.0) {
            throw ConfigError("membership function '" + label_ + "' has a degree outside [0,1]");
        }
        if (i > 0 && !(points_[i - 1].x < p.x)) {
            throw ConfigError("membership function '" + label_ + "' breakpoints must strictly increase in x");
        }
    }
}

MembershipFunction MembershipFunction::trapezoid(std::string label, double a, double b, double c,
                                                 double d) {
    if (!(a <= b && b <= c && c <= d) || !(a < d)) {
        throw ConfigError("trapezoid '" + label + "' needs a <= b <= c <= d with a < d");
    }
    const Breakpoint raw[] = {{a, 0.0}, {b, 1.0}, {c, 1.0}, {d, 0.0}};
    std::vector<Breakpoint> pts;
    for (const auto& p : raw) {
        if (!pts.empty() && pts.back().x == p.x) {
            // A vertical edge becomes a shoulder: keep the full-membership side.
            pts.back().degree = std::max(pts.back().degree, p.degree);
        } else {
            pts.push_back(p);
        }
    }
    return MembershipFunction(std::move(label), std::move(pts));
}

double MembershipFunction::degree_at(double x) const {
    if (x <= points_.front().x) return points_.front().degree;
    if (x >= points_.back().x) return points_.back().degree;
    const auto it = std::upper_bound(points_.begin(), points_.end(), x,
                                     [](double v, const Breakpoint& p) { return v < p.x; });
    const Breakpoint& hi = *it;
    const Breakpoint& lo = *(it - 1);
    const double t = (x - lo.x) / (hi.x - lo.x);
    return lo.degree + t * (hi.degree - lo.degree);
}

namespace {

// Coverage holds iff max-degree > 0 at every union breakpoint inside the
// universe and at the universe ends: between consecutive checked points every
// set is linear, and a linear function positive at both segment ends stays
// positive inside.
void check_coverage(const std::string& name, double lo, double hi,
                    const std::vector<MembershipFunction>& sets) {
    std::vector<double> xs{lo, hi};
    for (const auto& mf : sets) {
        for (const auto& p : mf.points()) {
            if (p.x > lo && p.x < hi) xs.push_back(p.x);
        }
    }
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
        double best = 0.0;
        for (const auto& mf : sets) best = std::max(best, mf.degree_at(x));
        if (!(best > 0.0)) {
            throw ConfigError("variable '" + name + "' has a coverage gap at x=" + std::to_string(x));
        }
    }
}

} // namespace

FuzzyVariable::FuzzyVariable(std::string name, double lo, double hi,
                             std::vector<MembershipFunction> sets)
    : name_(std::move(name)), lo_(lo), hi_(hi), sets_(std::move(sets)) {
    if (name_.empty()) {
        throw ConfigError("fuzzy variable needs a name");
    }
    if (!std::isfinite(lo_) || !std::isfinite(hi_) || !(lo_ < hi_)) {
        throw ConfigError("variable '" + name_ + "' needs a finite universe with lo < hi");
    }
    if (sets_.size() != 3) {
        throw ConfigError("variable '" + name_ + "' needs exactly three sets");
    }
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        for (std::size_t j = i + 1; j < sets_.size(); ++j) {
            if (sets_[i].label() == sets_[j].label()) {
                throw ConfigError("variable '" + name_ + "' has duplicate set label '" +
                                  sets_[i].label() + "'");
            }
        }
    }
    check_coverage(name_, lo_, hi_, sets_);
}

std::array<double, 3> FuzzyVariable::fuzzify(double x) const {
    if (!std::isfinite(x)) {
        throw InvalidMeasurementError("non-finite measurement for variable '" + name_ + "'");
    }
    return {sets_[0].degree_at(x), sets_[1].degree_at(x), sets_[2].degree_at(x)};
}

int FuzzyVariable::set_index(const std::string& label) const {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (sets_[i].label() == label) return int(i);
    }
    return -1;
}

double FuzzyVariable::clamp(double x) const {
    return std::min(hi_, std::max(lo_, x));
}

} // namespace flbra::fuzzy
