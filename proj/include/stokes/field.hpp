#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stokes/grid.hpp"

namespace stokes {

/// M x M values of one variable, stored with i (x index) running fastest.
class ScalarField {
public:
    ScalarField(GridSpec spec, VariableRole role)
        : spec_(spec), role_(role), values_(spec.nodes(), 0.0)
    {
    }

    ScalarField(GridSpec spec, VariableRole role, std::vector<double> values)
        : spec_(spec), role_(role), values_(std::move(values))
    {
        if (values_.size() != spec_.nodes())
            throw std::invalid_argument("field value count does not match grid");
    }

    const GridSpec& spec() const { return spec_; }
    VariableRole role() const { return role_; }
    int M() const { return spec_.M(); }

    double operator()(int i, int j) const { return values_[offset(i, j)]; }
    double& operator()(int i, int j) { return values_[offset(i, j)]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    Point coords(int i, int j) const { return node_coords(spec_, role_, i, j); }

    /// Samples fn at every node of this field's lattice.
    static ScalarField sample(const GridSpec& spec, VariableRole role,
                              const std::function<double(double, double)>& fn)
    {
        ScalarField f(spec, role);
        for (int j = 0; j < spec.M(); ++j)
            for (int i = 0; i < spec.M(); ++i) {
                const Point q = spec.lattice_point(role, i, j);
                f(i, j) = fn(q.x, q.y);
            }
        return f;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (double v : values_)
            m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::size_t offset(int i, int j) const
    {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(spec_.M()) +
               static_cast<std::size_t>(i);
    }

    GridSpec spec_;
    VariableRole role_;
    std::vector<double> values_;
};

}  // namespace stokes
