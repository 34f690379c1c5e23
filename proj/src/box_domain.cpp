#include "asym/box_domain.hpp"

namespace asym {

BoxDomain::BoxDomain(std::vector<double> lo, std::vector<double> hi, bool open)
    : lower_(std::move(lo)), upper_(std::move(hi)), open_(open) {
    if (lower_.size() != upper_.size()) throw ShapeError("box bounds length mismatch");
    for (size_t i = 0; i < lower_.size(); ++i) {
        if (!(lower_[i] < upper_[i])) throw ShapeError("box requires lower < upper in every axis");
    }
}

BoxDomain BoxDomain::open_box(std::vector<double> lower, std::vector<double> upper) {
    return BoxDomain(std::move(lower), std::move(upper), true);
}

BoxDomain BoxDomain::closed_box(std::vector<double> lower, std::vector<double> upper) {
    return BoxDomain(std::move(lower), std::move(upper), false);
}

BoxDomain BoxDomain::point() { return BoxDomain({}, {}, false); }

BoxDomain BoxDomain::unit_cube(int dim) {
    return BoxDomain(std::vector<double>(static_cast<size_t>(dim), 0.0),
                     std::vector<double>(static_cast<size_t>(dim), 1.0), false);
}

std::vector<double> BoxDomain::center() const {
    std::vector<double> c(lower_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (lower_[i] + upper_[i]);
    return c;
}

bool BoxDomain::contains(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (size_t i = 0; i < lower_.size(); ++i) {
        if (open_) {
            if (!(x[i] > lower_[i] && x[i] < upper_[i])) return false;
        } else {
            if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
        }
    }
    return true;
}

bool BoxDomain::same_box(const BoxDomain& other) const {
    return open_ == other.open_ && lower_ == other.lower_ && upper_ == other.upper_;
}

CompactBox::CompactBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size()) throw ShapeError("compact box bounds length mismatch");
    for (size_t i = 0; i < lower_.size(); ++i) {
        if (!(lower_[i] <= upper_[i])) throw ShapeError("compact box requires lower <= upper");
    }
}

bool CompactBox::inside(const BoxDomain& domain) const {
    if (dim() != domain.dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        if (domain.is_open()) {
            if (!(lower(i) > domain.lower(i) && upper(i) < domain.upper(i))) return false;
        } else {
            if (!(lower(i) >= domain.lower(i) && upper(i) <= domain.upper(i))) return false;
        }
    }
    return true;
}

}  // namespace asym
