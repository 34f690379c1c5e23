#pragma once

#include <span>
#include <vector>

#include "asym/errors.hpp"

namespace asym {

/// A box domain in R^n: either an open box U or a closed cube-like box.
/// dim 0 is the one-point space R^0 (scalar nets live there).
class BoxDomain {
public:
    static BoxDomain open_box(std::vector<double> lower, std::vector<double> upper);
    static BoxDomain closed_box(std::vector<double> lower, std::vector<double> upper);
    /// R^0, the domain of asymptotic numbers viewed as nets.
    static BoxDomain point();
    /// The closed unit cube I^n.
    static BoxDomain unit_cube(int dim);

    int dim() const { return static_cast<int>(lower_.size()); }
    bool is_open() const { return open_; }
    double lower(int i) const { return lower_[static_cast<size_t>(i)]; }
    double upper(int i) const { return upper_[static_cast<size_t>(i)]; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    std::vector<double> center() const;

    /// Open boxes test strictly, closed boxes inclusively.
    bool contains(std::span<const double> x) const;

    bool same_box(const BoxDomain& other) const;

private:
    BoxDomain(std::vector<double> lo, std::vector<double> hi, bool open);

    std::vector<double> lower_, upper_;
    bool open_ = false;
};

/// A compact box K used for sup estimates; must sit inside the ambient
/// domain, strictly so in open directions (the K of "K compact in U").
class CompactBox {
public:
    CompactBox(std::vector<double> lower, std::vector<double> upper);
    static CompactBox interval(double a, double b) { return CompactBox({a}, {b}); }
    static CompactBox point() { return CompactBox({}, {}); }

    int dim() const { return static_cast<int>(lower_.size()); }
    double lower(int i) const { return lower_[static_cast<size_t>(i)]; }
    double upper(int i) const { return upper_[static_cast<size_t>(i)]; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }

    bool inside(const BoxDomain& domain) const;

private:
    std::vector<double> lower_, upper_;
};

}  // namespace asym
