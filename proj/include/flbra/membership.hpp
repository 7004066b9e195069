// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

namespace flbra::fuzzy {

struct Breakpoint {
    double x;
    double degree;
};

// Piecewise-linear membership function. Outside the breakpoint span the
// degree is held at the nearest endpoint's value (shoulder behavior), which
// is how the trapezoid factory encodes left/right shoulders.
class MembershipFunction {
public:
    MembershipFunction(std::string label, std::vector<Breakpoint> points);

    // (a,b,c,d) with a <= b <= c <= d and a < d. a==b or c==d collapses the
    // vertical edge into a shoulder held at degree 1.
    static MembershipFunction trapezoid(std::string label, double a, double b, double c, double d);

    double degree_at(double x) const;

    const std::string& label() const { return label_; }
    const std::vector<Breakpoint>& points() const { return points_; }

private:
    std::string label_;
    std::vector<Breakpoint> points_;
};

// A named universe of discourse carrying exactly three membership sets.
class FuzzyVariable {
public:
    FuzzyVariable(std::string name, double lo, double hi, std::vector<MembershipFunction> sets);

    // Degrees for all three sets, in set order. Throws InvalidMeasurementError
    // on a non-finite input.
    std::array<double, 3> fuzzify(double x) const;

    const std::string& name() const { return name_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::vector<MembershipFunction>& sets() const { return sets_; }
    int set_index(const std::string& label) const; // -1 when absent

    double clamp(double x) const;

private:
    std::string name_;
    double lo_;
    double hi_;
    std::vector<MembershipFunction> sets_;
};

} // namespace flbra::fuzzy
